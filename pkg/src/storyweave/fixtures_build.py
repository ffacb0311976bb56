"""Builds the mock provider's fixture corpus from the declarative tables in
``content``. Files are named <kind>-<digest>-<ordinal>.txt and indexed by a
manifest; ``verify_fixtures`` cross-checks the two.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import content
from .gateway import DEFAULT_FIXTURES_DIR, FIXTURE_DIGEST_LEN, MANIFEST_NAME
from .prompting import KIND_ROOT, KIND_SUB, KIND_SYNTHESIS


def key_digest(kind: str, *, selected_part: str = "", directions: list[str] | None = None) -> str:
    """Digest of the fixture key material, matching the gateway's lookup.

    Root prompts are keyed by the selected passage; sub and synthesis prompts
    by the substituted direction block (one '- path' line per direction).
    """
    if kind == KIND_ROOT:
        value = selected_part
    else:
        value = "\n".join(f"- {d}" for d in (directions or []))
    return hashlib.sha256(value.encode("utf-8")).hexdigest()[:FIXTURE_DIGEST_LEN]


def _numbered(labels: list[str]) -> str:
    return "\n".join(f"{i + 1}. {label}" for i, label in enumerate(labels)) + "\n"


def corpus_entries() -> list[dict]:
    """All (kind, digest, texts, note) entries of the default corpus."""
    entries: list[dict] = []

    def add(kind: str, digest: str, texts: list[str], note: str) -> None:
        entries.append({"kind": kind, "digest": digest, "texts": texts, "note": note})

    add(
        KIND_ROOT,
        key_digest(KIND_ROOT, selected_part=content.CINDERELLA_PROBE_PART),
        [_numbered(content.CINDERELLA_ROOTS)],
        "roots for the Cinderella opening passage",
    )
    add(
        KIND_ROOT,
        key_digest(KIND_ROOT, selected_part=content.SERVANT_DIALOGUE),
        [_numbered(content.CINDERELLA_ROOTS)],
        "roots for the servant dialogue passage",
    )
    add(
        KIND_ROOT,
        key_digest(KIND_ROOT, selected_part=content.ALICE_PROBE_PART),
        [_numbered(content.ALICE_ROOTS)],
        "roots for the Alice opening passage",
    )
    for path, labels in content.SUB_DIRECTIONS.items():
        add(
            KIND_SUB,
            key_digest(KIND_SUB, directions=[path]),
            [_numbered(labels)],
            f"sub-directions of {path!r}",
        )
    for paths, texts in content.SYNTHESIS_FIXTURES.items():
        add(
            KIND_SYNTHESIS,
            key_digest(KIND_SYNTHESIS, directions=list(paths)),
            [t + "\n" for t in texts],
            "synthesis of " + " + ".join(paths),
        )
    return entries


def build_corpus(target_dir: str | Path = DEFAULT_FIXTURES_DIR) -> list[Path]:
    target_dir = Path(target_dir)
    target_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    manifest: list[dict] = []
    for entry in corpus_entries():
        for ordinal, text in enumerate(entry["texts"], start=1):
            path = target_dir / f"{entry['kind']}-{entry['digest']}-{ordinal}.txt"
            path.write_text(text, encoding="utf-8")
            written.append(path)
        manifest.append(
            {
                "kind": entry["kind"],
                "digest": entry["digest"],
                "count": len(entry["texts"]),
                "note": entry["note"],
            }
        )
    manifest_path = target_dir / MANIFEST_NAME
    manifest_path.write_text(
        json.dumps({"format_version": 1, "entries": manifest}, indent=2) + "\n",
        encoding="utf-8",
    )
    written.append(manifest_path)
    return written
