from __future__ import annotations

import random
import re
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from storyweave import prompting
from storyweave.errors import (
    EmptyVariation,
    MalformedDirections,
    MissingVariable,
    WrongKindArguments,
)

SNAPSHOT_DIR = Path(__file__).parent / "snapshots"

STORY = "A story about a fox.\nIt ran through the woods."
PART = "It ran through the woods."


def oracle_numbered_run(raw: str) -> list[str]:
    """Hand-built tokenizer: collect the first maximal consecutively numbered
    run, scanning lines independently of the production regex."""
    lines = raw.splitlines()
    runs = []
    i = 0
    while i < len(lines):
        run = []
        expect = None
        j = i
        while j < len(lines):
            m = re.match(r"^\s*(\d+)[.)]\s+(\S.*?)\s*$", lines[j])
            if not m or (expect is not None and int(m.group(1)) != expect):
                break
            run.append(m.group(2))
            expect = int(m.group(1)) + 1
            j += 1
        if run:
            runs.append(run)
            i = j
        else:
            i += 1
    if not runs:
        return []
    return max(runs, key=len)


class TestCompile:
    def test_root_contains_part_and_count(self):
        prompt = prompting.compile(prompting.KIND_ROOT, STORY, PART, [], 8)
        assert PART in prompt.text
        assert STORY in prompt.text
        assert "8" in prompt.text
        assert "${" not in prompt.text

    def test_sub_contains_direction_path(self):
        prompt = prompting.compile(
            prompting.KIND_SUB, STORY, PART, ["Settings > Location"], 4
        )
        assert "Settings > Location" in prompt.text

    def test_synthesis_enumerates_paths_per_line(self):
        prompt = prompting.compile(
            prompting.KIND_SYNTHESIS, STORY, PART, ["a > b", "c"], 2
        )
        assert "- a > b\n- c" in prompt.text

    def test_synthesis_without_directions_rejected(self):
        with pytest.raises(WrongKindArguments):
            prompting.compile(prompting.KIND_SYNTHESIS, STORY, PART, [], 0)

    def test_root_with_directions_rejected(self):
        with pytest.raises(WrongKindArguments):
            prompting.compile(prompting.KIND_ROOT, STORY, PART, ["x"], 8)

    def test_missing_story_rejected(self):
        with pytest.raises(MissingVariable):
            prompting.compile(prompting.KIND_ROOT, "", PART, [], 8)

    def test_deterministic(self):
        a = prompting.compile(prompting.KIND_ROOT, STORY, PART, [], 8)
        b = prompting.compile(prompting.KIND_ROOT, STORY, PART, [], 8)
        assert a.text == b.text
        assert a.variable_digest == b.variable_digest

    @pytest.mark.parametrize(
        "kind,directions,count",
        [
            (prompting.KIND_ROOT, [], 8),
            (prompting.KIND_SUB, ["Settings > Location"], 4),
            (prompting.KIND_SYNTHESIS, ["humorous > slapstick", "setting > location"], 2),
        ],
    )
    def test_snapshots(self, kind, directions, count):
        prompt = prompting.compile(kind, STORY, PART, directions, count)
        snapshot = (SNAPSHOT_DIR / f"{kind}.txt").read_text("utf-8")
        assert prompt.text == snapshot

    def test_synthesis_template_has_required_clauses(self):
        template = prompting.get_template(prompting.KIND_SYNTHESIS)
        joined = " ".join(template.requirement_clauses).lower()
        assert "asterisk" in joined or "mark" in joined or "indicate" in joined
        assert "length" in joined or "long" in joined
        assert "complex" in joined


class TestParseDirections:
    def test_eight_plain_lines(self):
        raw = "\n".join(
            f"{i + 1}. {x}"
            for i, x in enumerate(
                ["Characters", "Theme", "Plot", "Settings", "Romance", "Emotions",
                 "Humor", "Military"]
            )
        )
        parsed = prompting.parse_directions(raw, 8)
        assert parsed.labels[0] == "Characters"
        assert parsed.labels[-1] == "Military"

    def test_prose_tolerance_matches_oracle(self):
        raw = (
            "Here are ideas:\n1. Passion\n2. Intimacy\n3. Commitment\n"
            "4. Affection\nHope this helps!"
        )
        parsed = prompting.parse_directions(raw, 4)
        assert list(parsed.labels) == ["Passion", "Intimacy", "Commitment", "Affection"]
        assert list(parsed.labels) == oracle_numbered_run(raw)

    def test_no_list(self):
        with pytest.raises(MalformedDirections):
            prompting.parse_directions("no list here", 8)

    def test_wrong_count(self):
        with pytest.raises(MalformedDirections):
            prompting.parse_directions("1. a\n2. b", 4)

    def test_restarted_numbering_breaks_run(self):
        raw = "1. a\n2. b\n1. c\n2. d\n3. e"
        parsed = prompting.parse_directions(raw, 3)
        assert list(parsed.labels) == ["c", "d", "e"]

    def test_label_rules_enforced(self):
        raw = "1. " + "x" * 80 + "\n2. ok\n3. ok2\n4. ok3"
        with pytest.raises(MalformedDirections):
            prompting.parse_directions(raw, 4)

    def test_agreement_with_oracle_on_random_noise(self):
        rng = random.Random(17)
        words = ["alpha", "beta", "Theme", "1.", "prose here", ""]
        for _ in range(300):
            lines = []
            for _ in range(rng.randint(1, 12)):
                if rng.random() < 0.5:
                    lines.append(f"{rng.randint(1, 4)}. {rng.choice(words[:3])}")
                else:
                    lines.append(rng.choice(words))
            raw = "\n".join(lines)
            expected = oracle_numbered_run(raw)
            if expected:
                parsed = prompting.parse_directions(raw, len(expected))
                assert list(parsed.labels) == expected
            else:
                with pytest.raises(MalformedDirections):
                    prompting.parse_directions(raw, 1)


class TestParseVariation:
    def test_single_emphasis(self):
        v = prompting.parse_variation("Look at the **little maid**")
        assert v.text == "Look at the little maid"
        start, end = v.emphasized[0]
        assert v.text[start:end] == "little maid"

    def test_no_markers(self):
        v = prompting.parse_variation("plain text, no markers")
        assert v.text == "plain text, no markers"
        assert v.emphasized == ()

    def test_two_spans_sorted(self):
        v = prompting.parse_variation("**a** and **b**")
        assert v.text == "a and b"
        assert list(v.emphasized) == [(0, 1), (6, 7)]

    def test_unpaired_delimiter_is_lenient(self):
        v = prompting.parse_variation("half **open marker")
        assert v.text == "half **open marker"
        assert v.lenient_notice

    def test_empty_after_stripping(self):
        with pytest.raises(EmptyVariation):
            prompting.parse_variation("  ** **  ")

    @settings(max_examples=300)
    @given(
        st.lists(
            st.tuples(
                st.text(alphabet=st.characters(blacklist_characters="*"), min_size=1, max_size=8),
                st.booleans(),
            ),
            min_size=1,
            max_size=8,
        )
    )
    def test_round_trip_well_formed(self, pieces):
        raw = "".join(
            f"**{text}**" if emphasized else text for text, emphasized in pieces
        )
        raw = raw.strip()
        try:
            v = prompting.parse_variation(raw)
        except EmptyVariation:
            return
        assert prompting.reinsert_emphasis(v) == raw

    @settings(max_examples=300)
    @given(st.binary(max_size=200))
    def test_never_aborts_on_fuzz(self, data):
        raw = data.decode("utf-8", errors="replace")
        try:
            prompting.parse_variation(raw)
        except EmptyVariation:
            pass
        try:
            prompting.parse_directions(raw, 4)
        except MalformedDirections:
            pass


class TestValidate:
    def test_too_long(self):
        part = " ".join(["word"] * 100)
        text = " ".join(["word"] * 260)
        v = prompting.ParsedVariation(text=text, emphasized=((0, 4),))
        report = prompting.validate_variation(v, part, 2.0)
        assert report.too_long
        assert not report.no_emphasis

    def test_clean(self):
        v = prompting.ParsedVariation(text="short text", emphasized=((0, 5), (6, 10)))
        report = prompting.validate_variation(v, "a somewhat longer selected part here")
        assert report.clean

    def test_no_emphasis_flag(self):
        v = prompting.ParsedVariation(text="short text", emphasized=())
        report = prompting.validate_variation(v, "selected part")
        assert report.no_emphasis
