"""Experiment orchestration: configs, sampling, runs, records, scoring.

A run starts from a YAML config naming the language, direction, materials
directory and backend. ``prepare_materials`` builds the cipher map and the
ciphered bundle; ``run_mt``, ``run_task`` and ``run_probe`` drive prompts
through a gateway and emit flat, timestamp-free records so replayed runs
are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import re
from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from .cipher import (
    DIRECTIONS,
    FROM_ENGLISH,
    TO_ENGLISH,
    CipherMap,
    MaterialBundle,
    build_map,
    cipher_bundle,
    load_map,
)
from .gateway import (
    CompletionRequest,
    Gateway,
    LiveBackend,
    MockBackend,
    ReplayBackend,
    SamplingParams,
)
from .materials import Sample, load_bundle, load_samples
from .metrics import ScoredSample, sentence_bleu, sentence_chrf
from .probe import build_probe_prompt, leakage_check, parse_probe_response
from .strategies import (
    LADDER,
    PromptFactory,
    strategy,
    word_for_word,
)

BACKENDS = ("live", "replay", "mock")
TASK_GOLD_KEY = {"nli": "label", "mmlu": "answer", "storycloze": "answer"}
TASK_MODES = ("direct", "cascade")

_INT_RE = re.compile(r"-?\d+")


class ConfigError(ValueError):
    """The experiment config is malformed."""


# ---------------------------------------------------------------------------
# Config


@dataclass(frozen=True)
class ExperimentConfig:
    language: str
    materials: Path
    direction: str = TO_ENGLISH
    seed: int = 0
    cl_name: str = ""
    workdir: Path = Path("runs")
    model: str = "mock-model"
    backend: str = "mock"
    base_url: str = ""
    api_key_env: str = "CIPHERLANG_API_KEY"
    transcript: Path | None = None
    cache: Path | None = None
    parallelism: int = 4
    max_retries: int = 3
    strategies: tuple[str, ...] = ("only-input",)
    samples: int | None = None
    e: int = 3
    temperature: float = 0.0
    top_p: float = 1.0
    max_tokens: int = 1024
    sampling_seed: int | None = None
    pivot_language: str | None = None
    mock_policy: str = "echo-input"
    mock_fixed_text: str = ""
    mock_lookup: Path | None = None
    probe_samples: int = 10
    probe_materials: bool = True

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ConfigError(f"direction must be one of {DIRECTIONS}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"backend must be one of {BACKENDS}")
        for name in self.strategies:
            if name not in LADDER:
                raise ConfigError(
                    f"unknown strategy {name!r}; expected one of {sorted(LADDER)}"
                )
        if self.backend == "replay" and self.transcript is None:
            raise ConfigError("replay backend needs a transcript path")

    @property
    def sampling(self) -> SamplingParams:
        return SamplingParams(
            temperature=self.temperature,
            top_p=self.top_p,
            max_tokens=self.max_tokens,
            seed=self.sampling_seed,
        )


_TOP_KEYS = {
    "language", "materials", "direction", "seed", "cl_name", "workdir",
    "model", "backend", "base_url", "api_key_env", "transcript", "cache",
    "parallelism", "max_retries", "strategies", "samples", "e",
    "pivot_language", "sampling", "mock", "probe",
}
_SAMPLING_KEYS = {"temperature", "top_p", "max_tokens", "seed"}
_MOCK_KEYS = {"policy", "fixed_text", "lookup"}
_PROBE_KEYS = {"samples", "materials"}


def load_config(path: Path | str, **overrides) -> ExperimentConfig:
    """Parse a YAML experiment config; keyword overrides win.

    Unknown keys are rejected so typos fail loudly instead of silently
    running with defaults.
    """
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    unknown = set(raw) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {sorted(unknown)}")

    kwargs: dict = {}
    for key in ("language", "direction", "cl_name", "model", "backend",
                "base_url", "api_key_env", "mock_policy"):
        if key in raw:
            kwargs[key] = str(raw[key])
    for key in ("seed", "parallelism", "max_retries", "e"):
        if key in raw:
            kwargs[key] = int(raw[key])
    if "samples" in raw and raw["samples"] is not None:
        kwargs["samples"] = int(raw["samples"])
    for key in ("materials", "workdir", "transcript", "cache"):
        if key in raw and raw[key] is not None:
            kwargs[key] = Path(raw[key])
    if "strategies" in raw:
        names = raw["strategies"]
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        kwargs["strategies"] = tuple(names)
    if "pivot_language" in raw and raw["pivot_language"] is not None:
        kwargs["pivot_language"] = str(raw["pivot_language"])

    sampling = raw.get("sampling") or {}
    unknown = set(sampling) - _SAMPLING_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown sampling keys {sorted(unknown)}")
    if "temperature" in sampling:
        kwargs["temperature"] = float(sampling["temperature"])
    if "top_p" in sampling:
        kwargs["top_p"] = float(sampling["top_p"])
    if "max_tokens" in sampling:
        kwargs["max_tokens"] = int(sampling["max_tokens"])
    if sampling.get("seed") is not None:
        kwargs["sampling_seed"] = int(sampling["seed"])

    mock = raw.get("mock") or {}
    unknown = set(mock) - _MOCK_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown mock keys {sorted(unknown)}")
    if "policy" in mock:
        kwargs["mock_policy"] = str(mock["policy"])
    if "fixed_text" in mock:
        kwargs["mock_fixed_text"] = str(mock["fixed_text"])
    if mock.get("lookup") is not None:
        kwargs["mock_lookup"] = Path(mock["lookup"])

    probe = raw.get("probe") or {}
    unknown = set(probe) - _PROBE_KEYS
    if unknown:
        raise ConfigError(f"{path}: unknown probe keys {sorted(unknown)}")
    if "samples" in probe:
        kwargs["probe_samples"] = int(probe["samples"])
    if "materials" in probe:
        kwargs["probe_materials"] = bool(probe["materials"])

    kwargs.update(overrides)
    if "language" not in kwargs or "materials" not in kwargs:
        raise ConfigError(f"{path}: language and materials are required")
    try:
        return ExperimentConfig(**kwargs)
    except TypeError as exc:
        raise ConfigError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# Sampling


def derived_seed(seed: int, *parts: str) -> int:
    """Stable sub-seed for a named purpose, independent of call order."""
    digest = hashlib.sha256("|".join([str(seed), *parts]).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def balanced_sample(samples: list[Sample], n: int | None, seed: int) -> list[Sample]:
    """Domain-balanced deterministic subset.

    Samples are grouped by domain, each group is shuffled with its own
    derived seed, then groups are drained round-robin so every domain is
    represented as evenly as the quota allows. The final order is shuffled
    once more to avoid domain striping.
    """
    if n is None or n >= len(samples):
        return list(samples)
    if n < 0:
        raise ValueError("sample count must be non-negative")
    groups: dict[str, list[Sample]] = {}
    for sample in samples:
        groups.setdefault(sample.domain, []).append(sample)
    for domain, members in groups.items():
        random.Random(derived_seed(seed, "domain", domain)).shuffle(members)
    picked: list[Sample] = []
    domains = sorted(groups)
    while len(picked) < n:
        progressed = False
        for domain in domains:
            if groups[domain] and len(picked) < n:
                picked.append(groups[domain].pop())
                progressed = True
        if not progressed:
            break
    random.Random(derived_seed(seed, "order")).shuffle(picked)
    return picked


# ---------------------------------------------------------------------------
# Preparation


@dataclass
class PreparedRun:
    config: ExperimentConfig
    map: CipherMap
    bundle: MaterialBundle
    factory: PromptFactory
    samples: list[Sample]


def _write_if_changed(path: Path, content: str) -> bool:
    """Write only when content differs; returns True when written."""
    if path.exists() and path.read_text(encoding="utf-8") == content:
        return False
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    return True


def _materials_manifest(cfg: ExperimentConfig, map_: CipherMap) -> str:
    files = {}
    root = Path(cfg.materials)
    for path in sorted(root.rglob("*")):
        if path.is_file():
            digest = hashlib.sha256(path.read_bytes()).hexdigest()
            files[str(path.relative_to(root))] = digest
    manifest = {
        "language": cfg.language,
        "direction": cfg.direction,
        "seed": cfg.seed,
        "cl_name": map_.cl_name,
        "map_sha256": map_.content_hash,
        "materials": files,
    }
    return json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def map_path(cfg: ExperimentConfig) -> Path:
    return Path(cfg.workdir) / f"map_{cfg.language}_seed{cfg.seed}.txt"


def prepare_materials(cfg: ExperimentConfig) -> PreparedRun:
    """Build (or reload) the cipher map and assemble the ciphered bundle.

    The map and a manifest of material hashes are persisted under the
    workdir; rewrites are skipped when content is unchanged so repeated
    preparation is a no-op.
    """
    path = map_path(cfg)
    if path.exists():
        map_ = load_map(path)
        if map_.language != cfg.language or map_.seed != cfg.seed:
            raise ConfigError(
                f"{path} holds a map for {map_.language}/seed={map_.seed}, "
                f"config wants {cfg.language}/seed={cfg.seed}"
            )
    else:
        map_ = build_map(cfg.language, cfg.seed, cl_name=cfg.cl_name or None)
    _write_if_changed(path, map_.serialize())
    _write_if_changed(
        Path(cfg.workdir) / "manifest.json", _materials_manifest(cfg, map_)
    )

    plain = load_bundle(
        cfg.materials, cfg.language, cfg.direction, pivot_language=cfg.pivot_language
    )
    bundle = cipher_bundle(map_, plain)
    samples = load_samples(Path(cfg.materials) / "testset.jsonl")
    return PreparedRun(
        config=cfg,
        map=map_,
        bundle=bundle,
        factory=PromptFactory(bundle, e=cfg.e),
        samples=samples,
    )


def build_gateway(cfg: ExperimentConfig, bundle: MaterialBundle | None = None) -> Gateway:
    if cfg.backend == "live":
        base_url = cfg.base_url or os.environ.get("CIPHERLANG_BASE_URL", "")
        if not base_url:
            raise ConfigError("live backend needs base_url (or CIPHERLANG_BASE_URL)")
        api_key = os.environ.get(cfg.api_key_env, "")
        if not api_key:
            raise ConfigError(f"live backend needs the {cfg.api_key_env} env var")
        backend = LiveBackend(base_url=base_url, api_key=api_key)
        cache = cfg.cache if cfg.cache is not None else Path(cfg.workdir) / "cache.jsonl"
    elif cfg.backend == "replay":
        backend = ReplayBackend(cfg.transcript)
        cache = cfg.cache
    else:
        kwargs = {}
        if cfg.mock_policy == "lexicon-gloss":
            if bundle is None or bundle.lexicon is None:
                raise ConfigError("lexicon-gloss mock needs a bundle with a lexicon")
            kwargs["lexicon"] = bundle.lexicon
        if cfg.mock_policy == "lookup":
            if cfg.mock_lookup is None:
                raise ConfigError("lookup mock needs mock.lookup (a JSON file)")
            kwargs["lookup"] = json.loads(
                Path(cfg.mock_lookup).read_text(encoding="utf-8")
            )
        backend = MockBackend(
            policy=cfg.mock_policy, fixed_text=cfg.mock_fixed_text, **kwargs
        )
        cache = cfg.cache
    return Gateway(
        backend,
        cache_path=cache,
        parallelism=cfg.parallelism,
        max_retries=cfg.max_retries,
    )


# ---------------------------------------------------------------------------
# Records


def _sha256(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunRecord:
    """One (sample, strategy) outcome of a translation run."""

    record_id: str
    sample_id: str
    language: str
    direction: str
    strategy: str
    domain: str
    input_text: str
    reference: str
    raw_output: str
    output_text: str
    prompt_sha256: str = ""
    cache_key: str = ""
    exemplar_ids: tuple[int, ...] = ()
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        obj = asdict(self)
        obj["exemplar_ids"] = list(self.exemplar_ids)
        return json.dumps(obj, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "RunRecord":
        obj = json.loads(line)
        obj["exemplar_ids"] = tuple(obj.get("exemplar_ids", ()))
        return cls(**obj)


@dataclass(frozen=True)
class TaskRecord:
    """One task item outcome, direct or cascade."""

    record_id: str
    item_id: str
    task: str
    language: str
    strategy: str
    mode: str
    item_text: str
    gold: int
    predicted: int | None
    correct: bool
    raw_output: str
    prompt_sha256: str = ""
    cache_key: str = ""
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "TaskRecord":
        return cls(**json.loads(line))


@dataclass(frozen=True)
class ProbeRecord:
    """One decipherment probe outcome."""

    record_id: str
    sample_id: str
    language: str
    input_text: str
    plain_source: str
    reference: str
    language_guess: str
    cipher_guess: str
    deciphered: str
    translation: str
    parse_ok: bool
    raw_output: str
    prompt_sha256: str = ""
    cache_key: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "ProbeRecord":
        return cls(**json.loads(line))


def write_records(path: Path | str, records: list) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(record.to_json() + "\n")


def read_records(path: Path | str, cls) -> list:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(cls.from_json(line))
    return out


# ---------------------------------------------------------------------------
# Translation runs


def _mt_io(prepared: PreparedRun, sample: Sample, ciphered: bool) -> tuple[str, str, str]:
    """(plain input, shown input, reference) for one sample."""
    cfg = prepared.config
    if cfg.direction == TO_ENGLISH:
        plain_in, reference = sample.source, sample.target
        shown = prepared.map.apply(plain_in) if ciphered else plain_in
    else:
        plain_in, reference = sample.target, sample.source
        # English input is never ciphered
        shown = plain_in
    return plain_in, shown, reference


def _finalize_output(prepared: PreparedRun, raw: str, ciphered: bool) -> str:
    """Model output mapped back to plain text for scoring."""
    if prepared.config.direction == FROM_ENGLISH and ciphered:
        return prepared.map.invert(raw).strip()
    return raw.strip()


def _run_plain_strategies(
    prepared: PreparedRun,
    names: list[str],
    samples: list[Sample],
    gateway: Gateway | None,
) -> list[RunRecord]:
    cfg = prepared.config
    records: list[RunRecord] = []
    for name in names:
        cfg_s = strategy(name)
        if cfg_s.pivot:
            records.extend(_run_pivot(prepared, cfg_s, samples, gateway))
            continue
        if not cfg_s.llm:
            records.extend(_run_word_for_word(prepared, cfg_s, samples))
            continue

        prompts = []
        for sample in samples:
            _, shown, _ = _mt_io(prepared, sample, cfg_s.ciphered)
            prompts.append(
                prepared.factory.render(cfg_s, shown, sample_id=sample.sample_id)
            )
        requests = [
            CompletionRequest(model_id=cfg.model, prompt=p.full_prompt, sampling=cfg.sampling)
            for p in prompts
        ]
        results = gateway.complete_many(requests)
        for sample, prompt, request, result in zip(samples, prompts, requests, results):
            _, shown, reference = _mt_io(prepared, sample, cfg_s.ciphered)
            metadata = {}
            if "oracle_misses" in prompt.metadata:
                metadata["oracle_misses"] = prompt.metadata["oracle_misses"]
            records.append(RunRecord(
                record_id=f"{sample.sample_id}|{cfg.direction}|{name}",
                sample_id=sample.sample_id,
                language=cfg.language,
                direction=cfg.direction,
                strategy=name,
                domain=sample.domain,
                input_text=shown,
                reference=reference,
                raw_output=result.text,
                output_text=_finalize_output(prepared, result.text, cfg_s.ciphered),
                prompt_sha256=_sha256(prompt.full_prompt),
                cache_key=request.cache_key,
                exemplar_ids=tuple(prompt.metadata.get("exemplar_ids", ())),
                metadata=metadata,
            ))
    return records


def _run_word_for_word(
    prepared: PreparedRun, cfg_s, samples: list[Sample]
) -> list[RunRecord]:
    cfg = prepared.config
    if prepared.bundle.lexicon is None:
        raise ConfigError("word-for-word strategy needs a lexicon")
    records = []
    for sample in samples:
        _, shown, reference = _mt_io(prepared, sample, cfg_s.ciphered)
        glossed = word_for_word(shown, prepared.bundle.lexicon)
        records.append(RunRecord(
            record_id=f"{sample.sample_id}|{cfg.direction}|{cfg_s.name}",
            sample_id=sample.sample_id,
            language=cfg.language,
            direction=cfg.direction,
            strategy=cfg_s.name,
            domain=sample.domain,
            input_text=shown,
            reference=reference,
            raw_output=glossed,
            output_text=_finalize_output(prepared, glossed, cfg_s.ciphered),
        ))
    return records


def _run_pivot(
    prepared: PreparedRun, cfg_s, samples: list[Sample], gateway: Gateway
) -> list[RunRecord]:
    cfg = prepared.config
    plans = []
    for sample in samples:
        _, shown, _ = _mt_io(prepared, sample, cfg_s.ciphered)
        plans.append(
            prepared.factory.pivot_plan(cfg_s, shown, sample_id=sample.sample_id)
        )
    stage1_requests = [
        CompletionRequest(
            model_id=cfg.model, prompt=p.stage1_prompt.full_prompt, sampling=cfg.sampling
        )
        for p in plans
    ]
    stage1_results = gateway.complete_many(stage1_requests)

    stage2_prompts = [
        plan.build_stage2(result.text.strip())
        for plan, result in zip(plans, stage1_results)
    ]
    stage2_requests = [
        CompletionRequest(model_id=cfg.model, prompt=p.full_prompt, sampling=cfg.sampling)
        for p in stage2_prompts
    ]
    stage2_results = gateway.complete_many(stage2_requests)

    records = []
    for sample, plan, req1, res1, prompt2, req2, res2 in zip(
        samples, plans, stage1_requests, stage1_results,
        stage2_prompts, stage2_requests, stage2_results,
    ):
        _, shown, reference = _mt_io(prepared, sample, cfg_s.ciphered)
        records.append(RunRecord(
            record_id=f"{sample.sample_id}|{cfg.direction}|{cfg_s.name}",
            sample_id=sample.sample_id,
            language=cfg.language,
            direction=cfg.direction,
            strategy=cfg_s.name,
            domain=sample.domain,
            input_text=shown,
            reference=reference,
            raw_output=res2.text,
            output_text=_finalize_output(prepared, res2.text, ciphered=True),
            prompt_sha256=_sha256(prompt2.full_prompt),
            cache_key=req2.cache_key,
            exemplar_ids=tuple(prompt2.metadata.get("exemplar_ids", ())),
            metadata={
                "pivot_text": res1.text.strip(),
                "stage1_cache_key": req1.cache_key,
                "stage1_prompt_sha256": _sha256(plan.stage1_prompt.full_prompt),
            },
        ))
    return records


def run_mt(
    cfg: ExperimentConfig,
    gateway: Gateway | None = None,
    prepared: PreparedRun | None = None,
) -> list[RunRecord]:
    """Run every configured strategy over the (balanced) sample subset."""
    prepared = prepared or prepare_materials(cfg)
    samples = balanced_sample(prepared.samples, cfg.samples, cfg.seed)
    needs_llm = any(strategy(n).llm for n in cfg.strategies)
    if gateway is None and needs_llm:
        gateway = build_gateway(cfg, prepared.bundle)
    return _run_plain_strategies(prepared, list(cfg.strategies), samples, gateway)


# ---------------------------------------------------------------------------
# Task runs


def format_task_item(task: str, item: dict, map_: CipherMap | None = None) -> str:
    """Render one task item, ciphering the language fields when a map is given.

    Scaffolding (labels, option numbers) stays plain; only language text is
    ciphered.
    """
    c = map_.apply if map_ is not None else (lambda s: s)
    if task == "nli":
        return f"Premise: {c(item['premise'])}\nHypothesis: {c(item['hypothesis'])}"
    if task == "mmlu":
        lines = [c(item["question"])]
        lines += [f"{i}. {c(option)}" for i, option in enumerate(item["options"])]
        return "\n".join(lines)
    if task == "storycloze":
        lines = [c(item["story"])]
        lines += [f"{i}. {c(option)}" for i, option in enumerate(item["continuations"])]
        return "\n".join(lines)
    raise ValueError(f"unknown task {task!r}")


def load_task_items(materials: Path | str, task: str) -> list[dict]:
    path = Path(materials) / "tasks" / f"{task}.jsonl"
    items = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            items.append(json.loads(line))
    return items


def parse_label(text: str) -> int | None:
    m = _INT_RE.search(text)
    return int(m.group()) if m else None


def run_task(
    cfg: ExperimentConfig,
    task: str,
    mode: str = "direct",
    limit: int | None = None,
    gateway: Gateway | None = None,
    prepared: PreparedRun | None = None,
) -> list[TaskRecord]:
    """Run one task over its items.

    Direct mode asks for the label in the constructed language. Cascade
    mode costs exactly two calls per item: translate the item to English,
    then answer in English.
    """
    if task not in TASK_GOLD_KEY:
        raise ConfigError(f"unknown task {task!r}")
    if mode not in TASK_MODES:
        raise ConfigError(f"mode must be one of {TASK_MODES}")
    prepared = prepared or prepare_materials(cfg)
    if gateway is None:
        gateway = build_gateway(cfg, prepared.bundle)
    items = load_task_items(cfg.materials, task)
    if limit is not None:
        rng = random.Random(derived_seed(cfg.seed, "task", task))
        rng.shuffle(items)
        items = items[:limit]

    name = cfg.strategies[0] if cfg.strategies else "only-input"
    cfg_s = strategy(name)
    if cfg_s.pivot or not cfg_s.llm:
        raise ConfigError(f"strategy {name} cannot drive a task run")
    gold_key = TASK_GOLD_KEY[task]

    records = []
    if mode == "direct":
        texts = [
            format_task_item(task, item, prepared.map if cfg_s.ciphered else None)
            for item in items
        ]
        prompts = [
            prepared.factory.render_task(cfg_s, task, text, item_id=str(item["id"]))
            for item, text in zip(items, texts)
        ]
        requests = [
            CompletionRequest(model_id=cfg.model, prompt=p.full_prompt, sampling=cfg.sampling)
            for p in prompts
        ]
        results = gateway.complete_many(requests)
        for item, text, prompt, request, result in zip(
            items, texts, prompts, requests, results
        ):
            gold = int(item[gold_key])
            predicted = parse_label(result.text)
            records.append(TaskRecord(
                record_id=f"{item['id']}|{task}|{name}|direct",
                item_id=str(item["id"]),
                task=task,
                language=cfg.language,
                strategy=name,
                mode=mode,
                item_text=text,
                gold=gold,
                predicted=predicted,
                correct=predicted == gold,
                raw_output=result.text,
                prompt_sha256=_sha256(prompt.full_prompt),
                cache_key=request.cache_key,
            ))
        return records

    # Cascade: translate, then answer in English.
    texts = [format_task_item(task, item, prepared.map) for item in items]
    translate_prompts = [
        prepared.factory.render(strategy("only-input"), text) for text in texts
    ]
    translate_requests = [
        CompletionRequest(model_id=cfg.model, prompt=p.full_prompt, sampling=cfg.sampling)
        for p in translate_prompts
    ]
    translations = gateway.complete_many(translate_requests)

    answer_prompts = [
        prepared.factory.render_task(
            strategy("topline"), task, result.text.strip(), language_label="English"
        )
        for result in translations
    ]
    answer_requests = [
        CompletionRequest(model_id=cfg.model, prompt=p.full_prompt, sampling=cfg.sampling)
        for p in answer_prompts
    ]
    answers = gateway.complete_many(answer_requests)

    for item, text, req1, res1, prompt2, req2, res2 in zip(
        items, texts, translate_requests, translations,
        answer_prompts, answer_requests, answers,
    ):
        gold = int(item[gold_key])
        predicted = parse_label(res2.text)
        records.append(TaskRecord(
            record_id=f"{item['id']}|{task}|{name}|cascade",
            item_id=str(item["id"]),
            task=task,
            language=cfg.language,
            strategy=name,
            mode=mode,
            item_text=text,
            gold=gold,
            predicted=predicted,
            correct=predicted == gold,
            raw_output=res2.text,
            prompt_sha256=_sha256(prompt2.full_prompt),
            cache_key=req2.cache_key,
            metadata={
                "translation": res1.text.strip(),
                "stage1_cache_key": req1.cache_key,
            },
        ))
    return records


# ---------------------------------------------------------------------------
# Probe runs


class LeakageError(RuntimeError):
    """A probe prompt contained plain-source text."""


def run_probe(
    cfg: ExperimentConfig,
    gateway: Gateway | None = None,
    prepared: PreparedRun | None = None,
) -> list[ProbeRecord]:
    """Probe decipherment on a sample subset; prompts are leak-checked."""
    prepared = prepared or prepare_materials(cfg)
    if cfg.direction != TO_ENGLISH:
        raise ConfigError("the probe runs on to-English bundles")
    if gateway is None:
        gateway = build_gateway(cfg, prepared.bundle)
    samples = balanced_sample(prepared.samples, cfg.probe_samples, cfg.seed)

    allow = tuple(prepared.bundle.ne_glossary.values())
    prompts = []
    for sample in samples:
        ciphered = prepared.map.apply(sample.source)
        prompt = build_probe_prompt(
            prepared.bundle, ciphered, include_materials=cfg.probe_materials, e=cfg.e
        )
        leaks = leakage_check(prompt.full_prompt, sample.source, allow)
        if leaks:
            raise LeakageError(
                f"probe prompt for {sample.sample_id} leaks plain source: {leaks}"
            )
        prompts.append((sample, ciphered, prompt))

    requests = [
        CompletionRequest(model_id=cfg.model, prompt=p.full_prompt, sampling=cfg.sampling)
        for _, _, p in prompts
    ]
    results = gateway.complete_many(requests)

    records = []
    for (sample, ciphered, prompt), request, result in zip(prompts, requests, results):
        parsed = parse_probe_response(result.text)
        records.append(ProbeRecord(
            record_id=f"{sample.sample_id}|probe",
            sample_id=sample.sample_id,
            language=cfg.language,
            input_text=ciphered,
            plain_source=sample.source,
            reference=sample.target,
            language_guess=parsed.language,
            cipher_guess=parsed.cipher,
            deciphered=parsed.deciphered,
            translation=parsed.translation,
            parse_ok=parsed.parse_ok,
            raw_output=result.text,
            prompt_sha256=_sha256(prompt.full_prompt),
            cache_key=request.cache_key,
        ))
    return records


# ---------------------------------------------------------------------------
# Scoring


def score_mt(records: list[RunRecord]) -> list[ScoredSample]:
    return [
        ScoredSample(
            sample_id=r.sample_id,
            hypothesis=r.output_text,
            reference=r.reference,
            language=r.language,
            strategy=r.strategy,
            direction=r.direction,
            domain=r.domain,
            scores={
                "chrf": sentence_chrf(r.output_text, r.reference),
                "bleu": sentence_bleu(r.output_text, r.reference),
            },
        )
        for r in records
    ]


def score_tasks(records: list[TaskRecord]) -> list[ScoredSample]:
    return [
        ScoredSample(
            sample_id=r.item_id,
            hypothesis="" if r.predicted is None else str(r.predicted),
            reference=str(r.gold),
            language=r.language,
            strategy=f"{r.strategy}:{r.task}:{r.mode}",
            scores={"accuracy": 1.0 if r.correct else 0.0},
        )
        for r in records
    ]


def score_probe(records: list[ProbeRecord]) -> list[ScoredSample]:
    """Decipherment overlap with the plain source (low is good) plus
    translation quality of the final step."""
    return [
        ScoredSample(
            sample_id=r.sample_id,
            hypothesis=r.deciphered,
            reference=r.plain_source,
            language=r.language,
            strategy="probe",
            scores={
                "decipher_bleu": sentence_bleu(r.deciphered, r.plain_source),
                "translation_chrf": sentence_chrf(r.translation, r.reference),
            },
        )
        for r in records
    ]
