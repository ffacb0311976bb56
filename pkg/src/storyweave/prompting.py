"""Prompt template compilation and strict parsing of provider output.

Three template kinds exist: root direction generation, sub-direction
generation, and variation synthesis. Compilation is pure and deterministic:
equal inputs produce byte-identical prompt text.

Parsers never raise anything but the typed errors below, regardless of
input; arbitrary byte strings yield a value or a typed error.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import (
    EmptyVariation,
    InvalidLabel,
    MalformedDirections,
    MissingVariable,
    WrongKindArguments,
)

KIND_ROOT = "root_directions"
KIND_SUB = "sub_directions"
KIND_SYNTHESIS = "synthesis"
KINDS = (KIND_ROOT, KIND_SUB, KIND_SYNTHESIS)

PLACEHOLDER_STORY = "${entire story}"
PLACEHOLDER_SELECTED = "${selected part}"
PLACEHOLDER_DIRECTION = "${direction}"
PLACEHOLDER_COUNT = "${count}"
PLACEHOLDERS = (
    PLACEHOLDER_STORY,
    PLACEHOLDER_SELECTED,
    PLACEHOLDER_DIRECTION,
    PLACEHOLDER_COUNT,
)

MAX_LABEL_LEN = 64
EMPHASIS_DELIMITER = "**"

_PLACEHOLDER_RE = re.compile(r"\$\{[^}]*\}")
_NUMBERED_LINE_RE = re.compile(r"^\s*(\d+)[.)]\s+(.*\S)\s*$")


@dataclass(frozen=True)
class PromptTemplate:
    kind: str
    body: str
    requirement_clauses: tuple[str, ...] = ()


@dataclass(frozen=True)
class CompiledPrompt:
    kind: str
    text: str
    variable_digest: dict[str, str] = field(compare=False)
    count: int | None = None


@dataclass(frozen=True)
class ParsedDirections:
    labels: tuple[str, ...]


@dataclass(frozen=True)
class ParsedVariation:
    text: str
    emphasized: tuple[tuple[int, int], ...]
    lenient_notice: bool = False


@dataclass(frozen=True)
class ValidationReport:
    too_long: bool = False
    no_emphasis: bool = False

    @property
    def clean(self) -> bool:
        return not (self.too_long or self.no_emphasis)


def _load_template(kind: str) -> PromptTemplate:
    raw = (
        resources.files("storyweave.templates").joinpath(f"{kind}.txt").read_text("utf-8")
    )
    body = "\n".join(
        line for line in raw.splitlines() if not line.startswith("#")
    ).strip("\n")
    for match in _PLACEHOLDER_RE.findall(body):
        if match not in PLACEHOLDERS:
            raise ValueError(f"template {kind} uses unknown placeholder {match}")
    clauses: list[str] = []
    in_requirements = False
    for line in body.splitlines():
        if line.strip() == "Requirements:":
            in_requirements = True
            continue
        if in_requirements:
            m = re.match(r"^\d+\.\s+(.*)$", line.strip())
            if m:
                clauses.append(m.group(1))
            else:
                in_requirements = False
    return PromptTemplate(kind=kind, body=body, requirement_clauses=tuple(clauses))


_TEMPLATE_CACHE: dict[str, PromptTemplate] = {}


def get_template(kind: str) -> PromptTemplate:
    if kind not in KINDS:
        raise WrongKindArguments(f"unknown prompt kind {kind!r}")
    if kind not in _TEMPLATE_CACHE:
        _TEMPLATE_CACHE[kind] = _load_template(kind)
    return _TEMPLATE_CACHE[kind]


def _digest(value: str) -> str:
    return hashlib.sha256(value.encode("utf-8")).hexdigest()


def compile(
    kind: str,
    entire_story: str,
    selected_part: str,
    directions: list[str],
    count: int,
) -> CompiledPrompt:
    """Substitute all placeholders of the kind's template.

    Root prompts take no directions; sub prompts exactly one qualified path;
    synthesis prompts at least one, enumerated one per line.
    """
    template = get_template(kind)
    if not entire_story:
        raise MissingVariable("entire story is required in every prompt")
    if not selected_part:
        raise MissingVariable("selected part is required in every prompt")
    if kind == KIND_ROOT and directions:
        raise WrongKindArguments("root direction prompts take no directions")
    if kind == KIND_SUB and len(directions) != 1:
        raise WrongKindArguments("sub-direction prompts take exactly one direction path")
    if kind == KIND_SYNTHESIS and not directions:
        raise WrongKindArguments("synthesis prompts need at least one direction path")

    direction_value = "\n".join(f"- {d}" for d in directions)
    substitutions = {
        PLACEHOLDER_STORY: entire_story,
        PLACEHOLDER_SELECTED: selected_part,
        PLACEHOLDER_DIRECTION: direction_value,
        PLACEHOLDER_COUNT: str(count),
    }
    text = template.body
    digest: dict[str, str] = {}
    for placeholder, value in substitutions.items():
        if placeholder in text:
            text = text.replace(placeholder, value)
            digest[placeholder] = _digest(value)
    residual = _PLACEHOLDER_RE.findall(text)
    if residual:
        raise MissingVariable(f"unsubstituted placeholders remain: {residual}")
    return CompiledPrompt(kind=kind, text=text, variable_digest=digest, count=count)


def check_label(label: str) -> str:
    """Validate a direction label, returning it stripped."""
    label = label.strip()
    if not label:
        raise InvalidLabel("label is empty")
    if len(label) > MAX_LABEL_LEN:
        raise InvalidLabel(f"label exceeds {MAX_LABEL_LEN} characters")
    if "\n" in label or "\r" in label:
        raise InvalidLabel("label contains a line break")
    return label


def parse_directions(raw: str, expected_count: int) -> ParsedDirections:
    """Extract the first maximal run of consecutively numbered lines.

    Surrounding prose is tolerated; the run must contain exactly
    ``expected_count`` entries with valid labels.
    """
    if not isinstance(raw, str):
        raise MalformedDirections("response is not text")
    best: list[str] = []
    run: list[str] = []
    prev_index: int | None = None
    for line in raw.splitlines():
        m = _NUMBERED_LINE_RE.match(line)
        if m and (prev_index is None or int(m.group(1)) == prev_index + 1):
            run.append(m.group(2))
            prev_index = int(m.group(1))
        else:
            if len(run) > len(best):
                best = run
            run = []
            prev_index = None
            # a numbered line may restart a run immediately
            if m:
                run = [m.group(2)]
                prev_index = int(m.group(1))
    if len(run) > len(best):
        best = run
    if not best:
        raise MalformedDirections("no numbered direction list found")
    if len(best) != expected_count:
        raise MalformedDirections(
            f"expected {expected_count} directions, found {len(best)}"
        )
    labels = []
    for label in best:
        try:
            labels.append(check_label(label))
        except InvalidLabel as exc:
            raise MalformedDirections(str(exc)) from exc
    return ParsedDirections(labels=tuple(labels))


def parse_variation(raw: str) -> ParsedVariation:
    """Split emphasis markup into plain text plus emphasized spans.

    Regions wrapped in ``**`` pairs become spans over the stripped text. An
    unpaired trailing delimiter leaves the remainder as plain text and sets
    the lenient-parse notice.
    """
    if not isinstance(raw, str):
        raise EmptyVariation("response is not text")
    raw = raw.strip()
    pieces: list[str] = []
    spans: list[tuple[int, int]] = []
    lenient = False
    pos = 0
    length = 0
    while True:
        open_at = raw.find(EMPHASIS_DELIMITER, pos)
        if open_at == -1:
            pieces.append(raw[pos:])
            length += len(raw) - pos
            break
        close_at = raw.find(EMPHASIS_DELIMITER, open_at + 2)
        if close_at == -1:
            # unpaired delimiter: keep the rest verbatim, note the leniency
            pieces.append(raw[pos:])
            length += len(raw) - pos
            lenient = True
            break
        pieces.append(raw[pos:open_at])
        length += open_at - pos
        inner = raw[open_at + 2 : close_at]
        spans.append((length, length + len(inner)))
        pieces.append(inner)
        length += len(inner)
        pos = close_at + 2
    text = "".join(pieces)
    if not text.strip():
        raise EmptyVariation("variation has no visible text")
    return ParsedVariation(text=text, emphasized=tuple(spans), lenient_notice=lenient)


def reinsert_emphasis(v: ParsedVariation) -> str:
    """Inverse of ``parse_variation`` for well-formed input (test oracle aid)."""
    out: list[str] = []
    pos = 0
    for start, end in v.emphasized:
        out.append(v.text[pos:start])
        out.append(EMPHASIS_DELIMITER + v.text[start:end] + EMPHASIS_DELIMITER)
        pos = end
    out.append(v.text[pos:])
    return "".join(out)


def _word_count(text: str) -> int:
    return len(text.split())


def validate_variation(
    v: ParsedVariation, selected_part: str, max_length_ratio: float = 2.0
) -> ValidationReport:
    """Advisory checks; flagged variations are still stored and surfaced."""
    if max_length_ratio <= 0:
        raise ValueError("max_length_ratio must be positive")
    too_long = _word_count(v.text) > max_length_ratio * _word_count(selected_part)
    return ValidationReport(too_long=too_long, no_emphasis=not v.emphasized)
