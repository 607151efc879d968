"""Model gateway: caching, retries, and pluggable completion backends.

The gateway sits between the experiment runner and whatever produces
completions.  Three backends cover the lifecycle of an experiment:

* ``LiveBackend`` talks to an OpenAI-compatible chat endpoint over HTTP.
* ``ReplayBackend`` serves completions from a recorded transcript, so a
  finished run can be reproduced byte for byte without network access.
* ``MockBackend`` produces deterministic synthetic completions for tests.

Every completion is keyed by a content hash of (model, prompt, sampling
parameters) and appended to a JSONL cache, which doubles as a replay
transcript for later runs.
"""

from __future__ import annotations

import hashlib
import json
import logging
import re
import threading
import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

logger = logging.getLogger(__name__)

# Fixed timestamp used by deterministic backends so records never vary
# between runs.
_EPOCH_ISO = "1970-01-01T00:00:00Z"


class GatewayError(Exception):
    """Base class for completion failures."""


class AuthError(GatewayError):
    """Credentials rejected.  Never retried."""


class RateLimited(GatewayError):
    """Backend asked us to slow down.  Retried with backoff."""


class TransportError(GatewayError):
    """Network failure or server-side error.  Retried with backoff."""


class ReplayMiss(GatewayError):
    """A replay transcript has no record for the requested cache key."""


@dataclass(frozen=True)
class SamplingParams:
    temperature: float = 0.0
    top_p: float = 1.0
    max_tokens: int = 1024
    seed: int | None = None

    def as_dict(self) -> dict:
        return {
            "max_tokens": self.max_tokens,
            "seed": self.seed,
            "temperature": self.temperature,
            "top_p": self.top_p,
        }


@dataclass(frozen=True)
class CompletionRequest:
    model_id: str
    prompt: str
    sampling: SamplingParams = SamplingParams()

    @property
    def cache_key(self) -> str:
        payload = json.dumps(
            {
                "model_id": self.model_id,
                "prompt": self.prompt,
                "sampling": self.sampling.as_dict(),
            },
            sort_keys=True,
            ensure_ascii=False,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CompletionRecord:
    cache_key: str
    model_id: str
    prompt: str
    sampling: dict
    text: str
    usage: dict
    latency_s: float
    backend: str
    created_at: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "cache_key": self.cache_key,
                "model_id": self.model_id,
                "prompt": self.prompt,
                "sampling": self.sampling,
                "text": self.text,
                "usage": self.usage,
                "latency_s": self.latency_s,
                "backend": self.backend,
                "created_at": self.created_at,
            },
            sort_keys=True,
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "CompletionRecord":
        raw = json.loads(line)
        return cls(
            cache_key=raw["cache_key"],
            model_id=raw["model_id"],
            prompt=raw["prompt"],
            sampling=raw["sampling"],
            text=raw["text"],
            usage=raw["usage"],
            latency_s=raw["latency_s"],
            backend=raw["backend"],
            created_at=raw["created_at"],
        )


# A backend returns the completion fields the gateway cannot know itself.
@dataclass(frozen=True)
class BackendResult:
    text: str
    usage: dict
    latency_s: float
    created_at: str


class LiveBackend:
    """OpenAI-compatible chat completions over HTTP."""

    name = "live"

    def __init__(
        self,
        base_url: str,
        api_key: str,
        timeout: float = 120.0,
        session=None,
    ):
        if session is None:
            import requests

            session = requests.Session()
        self._session = session
        self._base_url = base_url.rstrip("/")
        self._api_key = api_key
        self._timeout = timeout

    def complete(self, request: CompletionRequest) -> BackendResult:
        import requests

        body = {
            "model": request.model_id,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.sampling.temperature,
            "top_p": request.sampling.top_p,
            "max_tokens": request.sampling.max_tokens,
        }
        if request.sampling.seed is not None:
            body["seed"] = request.sampling.seed
        started = time.monotonic()
        try:
            response = self._session.post(
                f"{self._base_url}/chat/completions",
                json=body,
                headers={"Authorization": f"Bearer {self._api_key}"},
                timeout=self._timeout,
            )
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        latency = time.monotonic() - started
        if response.status_code in (401, 403):
            raise AuthError(f"authentication failed ({response.status_code})")
        if response.status_code == 429:
            raise RateLimited("rate limited by backend")
        if response.status_code >= 500:
            raise TransportError(f"server error ({response.status_code})")
        if response.status_code != 200:
            raise GatewayError(
                f"unexpected status {response.status_code}: {response.text[:200]}"
            )
        payload = response.json()
        try:
            text = payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise GatewayError(f"malformed completion payload: {exc}") from exc
        usage = payload.get("usage", {})
        created = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        return BackendResult(
            text=text, usage=usage, latency_s=latency, created_at=created
        )


class ReplayBackend:
    """Serves completions verbatim from a recorded transcript."""

    name = "replay"

    def __init__(self, transcript_path: str | Path):
        self._records: dict[str, CompletionRecord] = {}
        path = Path(transcript_path)
        with path.open(encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                record = CompletionRecord.from_json(line)
                self._records[record.cache_key] = record

    def __len__(self) -> int:
        return len(self._records)

    def complete(self, request: CompletionRequest) -> BackendResult:
        record = self._records.get(request.cache_key)
        if record is None:
            head = request.prompt.splitlines()[0] if request.prompt else ""
            raise ReplayMiss(
                f"no transcript record for key {request.cache_key[:12]} "
                f"(prompt starts: {head[:60]!r})"
            )
        # Recorded latency and timestamp are returned as-is so a replayed
        # run is byte-identical to the original.
        return BackendResult(
            text=record.text,
            usage=record.usage,
            latency_s=record.latency_s,
            created_at=record.created_at,
        )


# Matches the body of an "Input:" block up to the next "Output:" label,
# the next "Input:" label, or the end of the prompt.
_INPUT_BLOCK = re.compile(
    r"^Input:\s*\n+(.*?)(?=^\s*Output:|^Input:|\Z)", re.M | re.S
)

_MOCK_POLICIES = (
    "echo-input",
    "fixed-string",
    "copy-named-entities",
    "lexicon-gloss",
    "lookup",
)


def extract_input_block(prompt: str) -> str:
    """Return the body of the last ``Input:`` block, or the whole prompt."""
    blocks = _INPUT_BLOCK.findall(prompt)
    if blocks:
        return blocks[-1].strip()
    return prompt.strip()


class MockBackend:
    """Deterministic synthetic completions for tests and dry runs.

    Policies:

    * ``echo-input`` repeats the last ``Input:`` block of the prompt.
    * ``fixed-string`` always returns ``fixed_text``.
    * ``copy-named-entities`` returns the capitalized words of the input.
    * ``lexicon-gloss`` maps each input token through an exact-match
      lexicon, keeping unmatched tokens.
    * ``lookup`` scans a needle->answer table against the prompt and
      returns the first hit (echoing the input when nothing matches).
    """

    name = "mock"

    def __init__(
        self,
        policy: str = "echo-input",
        fixed_text: str = "",
        lexicon=None,
        lookup: dict[str, str] | None = None,
        latency_s: float = 0.0,
    ):
        if policy not in _MOCK_POLICIES:
            raise ValueError(f"unknown mock policy: {policy!r}")
        if policy == "lexicon-gloss" and lexicon is None:
            raise ValueError("lexicon-gloss policy requires a lexicon")
        if policy == "lookup" and lookup is None:
            raise ValueError("lookup policy requires a lookup table")
        self._policy = policy
        self._fixed_text = fixed_text
        self._lexicon = lexicon
        self._lookup = dict(lookup or {})
        self._latency_s = latency_s

    def _gloss(self, text: str) -> str:
        from .lexicon import lookup

        out = []
        for token in text.split():
            core = token.strip("\"'.,;:!?()[]{}«»¿¡")
            matches = lookup(self._lexicon, core, threshold=0.0, k=1) if core else []
            if matches:
                start = token.find(core)
                prefix, suffix = token[:start], token[start + len(core):]
                out.append(prefix + matches[0].targets[0] + suffix)
            else:
                out.append(token)
        return " ".join(out)

    def complete(self, request: CompletionRequest) -> BackendResult:
        prompt = request.prompt
        if self._policy == "fixed-string":
            text = self._fixed_text
        elif self._policy == "echo-input":
            text = extract_input_block(prompt)
        elif self._policy == "copy-named-entities":
            words = extract_input_block(prompt).split()
            caps = [
                w.strip("\"'.,;:!?()[]{}«»¿¡")
                for w in words
                if w and w[0].isupper()
            ]
            text = " ".join(c for c in caps if c)
        elif self._policy == "lexicon-gloss":
            text = self._gloss(extract_input_block(prompt))
        else:  # lookup
            text = ""
            for needle, answer in self._lookup.items():
                if needle in prompt:
                    text = answer
                    break
            else:
                text = extract_input_block(prompt)
        usage = {
            "prompt_tokens": len(prompt.split()),
            "completion_tokens": len(text.split()),
        }
        return BackendResult(
            text=text,
            usage=usage,
            latency_s=self._latency_s,
            created_at=_EPOCH_ISO,
        )


class Gateway:
    """Caching, retrying front door for a completion backend.

    The cache is an append-only JSONL file of ``CompletionRecord`` rows.
    ``complete`` is idempotent: a request whose key is already cached is
    answered without touching the backend, and a fresh completion is
    appended exactly once.
    """

    def __init__(
        self,
        backend,
        cache_path: str | Path | None = None,
        parallelism: int = 4,
        max_retries: int = 3,
        backoff_base: float = 0.5,
        sleeper: Callable[[float], None] = time.sleep,
    ):
        if parallelism < 1:
            raise ValueError("parallelism must be >= 1")
        self._backend = backend
        self._cache_path = Path(cache_path) if cache_path else None
        self._parallelism = parallelism
        self._max_retries = max_retries
        self._backoff_base = backoff_base
        self._sleep = sleeper
        self._cache: dict[str, CompletionRecord] = {}
        self._lock = threading.Lock()
        self._in_flight = 0
        self.backend_calls = 0
        self.cache_hits = 0
        self.peak_in_flight = 0
        if self._cache_path and self._cache_path.exists():
            with self._cache_path.open(encoding="utf-8") as handle:
                for line in handle:
                    line = line.strip()
                    if not line:
                        continue
                    record = CompletionRecord.from_json(line)
                    self._cache[record.cache_key] = record

    def _call_backend(self, request: CompletionRequest) -> BackendResult:
        last_error: GatewayError | None = None
        for attempt in range(self._max_retries + 1):
            if attempt:
                delay = self._backoff_base * (2 ** (attempt - 1))
                self._sleep(delay)
            with self._lock:
                self._in_flight += 1
                self.backend_calls += 1
                self.peak_in_flight = max(self.peak_in_flight, self._in_flight)
            try:
                return self._backend.complete(request)
            except (RateLimited, TransportError) as exc:
                last_error = exc
                logger.warning(
                    "backend attempt %d/%d failed: %s",
                    attempt + 1,
                    self._max_retries + 1,
                    exc,
                )
            finally:
                with self._lock:
                    self._in_flight -= 1
        assert last_error is not None
        raise last_error

    def complete(self, request: CompletionRequest) -> CompletionRecord:
        key = request.cache_key
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            with self._lock:
                self.cache_hits += 1
            return cached
        result = self._call_backend(request)
        record = CompletionRecord(
            cache_key=key,
            model_id=request.model_id,
            prompt=request.prompt,
            sampling=request.sampling.as_dict(),
            text=result.text,
            usage=result.usage,
            latency_s=result.latency_s,
            backend=self._backend.name,
            created_at=result.created_at,
        )
        with self._lock:
            # Another thread may have raced us to the same key; keep the
            # first record so the cache file stays free of duplicates.
            existing = self._cache.get(key)
            if existing is not None:
                return existing
            self._cache[key] = record
            if self._cache_path:
                with self._cache_path.open("a", encoding="utf-8") as handle:
                    handle.write(record.to_json() + "\n")
        return record

    def complete_many(
        self, requests: Sequence[CompletionRequest]
    ) -> list[CompletionRecord]:
        """Complete a batch, at most ``parallelism`` backend calls in flight."""
        if not requests:
            return []
        with ThreadPoolExecutor(max_workers=self._parallelism) as pool:
            return list(pool.map(self.complete, requests))

    def records(self) -> Iterable[CompletionRecord]:
        with self._lock:
            return list(self._cache.values())
