"""Provider abstraction: deterministic mock backend and a live HTTP client.

The mock provider serves fixture files keyed by (prompt kind, variable
digest, seed, call ordinal), so repeated synthesis calls over the same
direction set return different texts deterministically. The HTTP provider
speaks a minimal chat-completion wire format with retry and backoff.
"""

from __future__ import annotations

import json
import os
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from .errors import (
    FixtureMissing,
    MalformedProviderEnvelope,
    ProviderRejected,
    ProviderTimeout,
)
from .prompting import (
    KIND_ROOT,
    KIND_SUB,
    KIND_SYNTHESIS,
    PLACEHOLDER_DIRECTION,
    PLACEHOLDER_SELECTED,
    CompiledPrompt,
)

FIXTURE_DIGEST_LEN = 12
MANIFEST_NAME = "manifest.json"
DEFAULT_FIXTURES_DIR = Path(__file__).parent / "fixtures"

# Which substituted placeholder keys a fixture lookup. Root prompts are keyed
# by the selected passage; sub/synthesis prompts by the direction path(s), so
# one corpus serves any surrounding story.
_KEY_PLACEHOLDER = {
    KIND_ROOT: PLACEHOLDER_SELECTED,
    KIND_SUB: PLACEHOLDER_DIRECTION,
    KIND_SYNTHESIS: PLACEHOLDER_DIRECTION,
}


def fixture_digest(prompt: CompiledPrompt) -> str:
    placeholder = _KEY_PLACEHOLDER[prompt.kind]
    return prompt.variable_digest[placeholder][:FIXTURE_DIGEST_LEN]


@dataclass(frozen=True)
class ProviderConfig:
    endpoint: str = ""
    model: str = ""
    api_key_env: str = ""
    timeout: float = 60.0
    max_retries: int = 2
    seed: int = 0
    fixtures_dir: str = str(DEFAULT_FIXTURES_DIR)
    strict: bool = True
    # dotted path into the response JSON where the generated text lives
    response_path: str = "content.0.text"
    concurrency: int = 4

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be non-negative")


@dataclass(frozen=True)
class GenerationResult:
    text: str
    latency: float
    attempt: int


class MockProvider:
    """Fixture-backed provider; deterministic given (fixtures, seed, sequence).

    Ordinal counters are per instance (one instance per session) and updated
    under a lock.
    """

    kind = "mock"

    def __init__(self, config: ProviderConfig | None = None):
        self.config = config or ProviderConfig()
        self._fixtures_dir = Path(self.config.fixtures_dir)
        self._ordinals: dict[tuple[str, str], int] = {}
        self._cache: dict[str, str] = {}
        self._lock = threading.Lock()

    def _fixture_files(self, kind: str, digest: str) -> list[Path]:
        pattern = f"{kind}-{digest}-*.txt"
        return sorted(self._fixtures_dir.glob(pattern))

    def _placeholder(self, prompt: CompiledPrompt, digest: str, ordinal: int) -> str:
        rng = random.Random(f"{self.config.seed}:{digest}:{ordinal}")
        tag = f"{digest[:4]}-{ordinal}"
        if prompt.kind in (KIND_ROOT, KIND_SUB):
            count = prompt.count or 1
            words = [
                "angle", "tone", "pace", "mood", "stakes", "voice", "focus",
                "scale", "twist", "lens", "frame", "thread",
            ]
            picks = rng.sample(words, k=min(count, len(words)))
            lines = [
                f"{i + 1}. placeholder {picks[i % len(picks)]} {tag}"
                for i in range(count)
            ]
            return "\n".join(lines)
        return (
            f"Placeholder variation {tag}: the selected passage rewritten with a "
            f"**{rng.choice(['new', 'shifted', 'altered'])} emphasis**."
        )

    def generate(self, prompt: CompiledPrompt) -> GenerationResult:
        started = time.monotonic()
        digest = fixture_digest(prompt)
        with self._lock:
            key = (prompt.kind, digest)
            ordinal = self._ordinals.get(key, 0) + 1
            self._ordinals[key] = ordinal
        files = self._fixture_files(prompt.kind, digest)
        if files:
            path = files[(ordinal - 1) % len(files)]
            with self._lock:
                if str(path) not in self._cache:
                    self._cache[str(path)] = path.read_text("utf-8")
            text = self._cache[str(path)]
        elif self.config.strict:
            raise FixtureMissing(
                f"no fixture for kind={prompt.kind} digest={digest}"
            )
        else:
            text = self._placeholder(prompt, digest, ordinal)
        return GenerationResult(
            text=text, latency=time.monotonic() - started, attempt=1
        )

    def health_check(self) -> str:
        return "healthy"


class HttpProvider:
    """Minimal chat-completion client with retry on timeout/5xx."""

    kind = "http"

    def __init__(self, config: ProviderConfig, backoff_base: float = 0.25):
        if not config.endpoint or not config.model:
            raise ValueError("http provider requires endpoint and model")
        self.config = config
        self._backoff_base = backoff_base
        self._semaphore = threading.Semaphore(config.concurrency)

    def _headers(self) -> dict[str, str]:
        headers = {"content-type": "application/json"}
        if self.config.api_key_env:
            key = os.environ.get(self.config.api_key_env, "")
            if key:
                headers["authorization"] = f"Bearer {key}"
        return headers

    def _extract_text(self, payload) -> str:
        node = payload
        for part in self.config.response_path.split("."):
            try:
                node = node[int(part)] if part.isdigit() else node[part]
            except (KeyError, IndexError, TypeError) as exc:
                raise MalformedProviderEnvelope(
                    f"response missing {self.config.response_path!r}"
                ) from exc
        if not isinstance(node, str):
            raise MalformedProviderEnvelope("response text field is not a string")
        return node

    def _request(self, body: dict) -> httpx.Response:
        with httpx.Client(timeout=self.config.timeout) as client:
            return client.post(self.config.endpoint, json=body, headers=self._headers())

    def generate(self, prompt: CompiledPrompt) -> GenerationResult:
        body = {
            "model": self.config.model,
            "messages": [{"role": "user", "content": prompt.text}],
        }
        started = time.monotonic()
        last_exc: Exception | None = None
        with self._semaphore:
            for attempt in range(1, self.config.max_retries + 2):
                try:
                    response = self._request(body)
                except httpx.TimeoutException as exc:
                    last_exc = ProviderTimeout(f"attempt {attempt} timed out")
                    last_exc.__cause__ = exc
                else:
                    if response.status_code >= 500:
                        last_exc = ProviderRejected(
                            f"server error {response.status_code}"
                        )
                    elif response.status_code >= 400:
                        raise ProviderRejected(f"rejected: {response.status_code}")
                    else:
                        try:
                            payload = response.json()
                        except (json.JSONDecodeError, ValueError) as exc:
                            raise MalformedProviderEnvelope(
                                "response body is not JSON"
                            ) from exc
                        return GenerationResult(
                            text=self._extract_text(payload),
                            latency=time.monotonic() - started,
                            attempt=attempt,
                        )
                if attempt <= self.config.max_retries:
                    time.sleep(self._backoff_base * (2 ** (attempt - 1)))
        raise last_exc if last_exc else ProviderTimeout("exhausted retries")

    def health_check(self) -> str:
        try:
            response = self._request(
                {
                    "model": self.config.model,
                    "messages": [{"role": "user", "content": "ping"}],
                }
            )
        except httpx.TimeoutException as exc:
            raise ProviderTimeout("health check timed out") from exc
        if response.status_code >= 400:
            raise ProviderRejected(f"health check rejected: {response.status_code}")
        return "healthy"


Provider = MockProvider | HttpProvider


def make_provider(
    kind: str = "mock", config: ProviderConfig | None = None
) -> Provider:
    if kind == "mock":
        return MockProvider(config)
    if kind == "http":
        if config is None:
            raise ValueError("http provider requires a config")
        return HttpProvider(config)
    raise ValueError(f"unknown provider kind {kind!r}")


def provider_from_env(env: dict[str, str] | None = None) -> Provider:
    env = env if env is not None else dict(os.environ)
    kind = env.get("PROVIDER_KIND", "mock")
    timeout_ms = env.get("PROVIDER_TIMEOUT_MS")
    config = ProviderConfig(
        endpoint=env.get("PROVIDER_ENDPOINT", ""),
        model=env.get("PROVIDER_MODEL", ""),
        api_key_env=env.get("PROVIDER_API_KEY_ENV", ""),
        timeout=float(timeout_ms) / 1000.0 if timeout_ms else 60.0,
    )
    return make_provider(kind, config)


# --- fixture corpus manifest -------------------------------------------------

def load_manifest(fixtures_dir: str | Path) -> dict:
    path = Path(fixtures_dir) / MANIFEST_NAME
    return json.loads(path.read_text("utf-8"))


def verify_fixtures(fixtures_dir: str | Path) -> list[str]:
    """Cross-check manifest entries against the files on disk."""
    fixtures_dir = Path(fixtures_dir)
    problems: list[str] = []
    try:
        manifest = load_manifest(fixtures_dir)
    except FileNotFoundError:
        return [f"missing {MANIFEST_NAME} in {fixtures_dir}"]
    listed: set[str] = set()
    for entry in manifest.get("entries", []):
        kind, digest, count = entry["kind"], entry["digest"], entry["count"]
        for ordinal in range(1, count + 1):
            name = f"{kind}-{digest}-{ordinal}.txt"
            listed.add(name)
            if not (fixtures_dir / name).is_file():
                problems.append(f"manifest lists {name} but the file is absent")
    for path in fixtures_dir.glob("*.txt"):
        if path.name not in listed:
            problems.append(f"{path.name} on disk but not in the manifest")
    return problems
