"""Quality scores for source/hypothesis/reference triples.

The neural metric runs when its package is installed; otherwise a
deterministic character n-gram scorer stands in. Both emit the external
score record format: sample_id, metric, value in [0, 1], one row per
triple.
"""

from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

NGRAM_ORDERS = 6
BETA = 2.0
DEFAULT_METRIC = "xcomet"


class TriplesError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class Triple:
    sample_id: str
    hypothesis: str
    reference: str
    source: str = ""


def read_triples(path: Path) -> list[Triple]:
    """Triples from JSONL rows.

    Field aliases match the run-record schema, so a records file from the
    main pipeline scores directly: hypothesis/output_text, source/input_text.
    """
    triples: list[Triple] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(),
                                  start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise TriplesError(f"bad JSON: {exc.msg}", lineno) from None
        sample_id = obj.get("sample_id")
        hypothesis = obj.get("hypothesis", obj.get("output_text"))
        reference = obj.get("reference")
        if sample_id is None or hypothesis is None or reference is None:
            raise TriplesError(
                "need sample_id, hypothesis/output_text and reference fields",
                lineno,
            )
        triples.append(Triple(
            sample_id=str(sample_id),
            hypothesis=str(hypothesis),
            reference=str(reference),
            source=str(obj.get("source", obj.get("input_text", ""))),
        ))
    if not triples:
        raise TriplesError(f"no triples in {path}")
    return triples


def _ngrams(text: str, n: int) -> Counter:
    return Counter(text[i: i + n] for i in range(len(text) - n + 1))


def chargram_score(hypothesis: str, reference: str) -> float:
    """Character n-gram F-score in [0, 1], recall-weighted.

    Averages F over orders 1..6 wherever either side has n-grams of that
    order. Identical strings score 1.0; an empty hypothesis scores 0.0.
    """
    if hypothesis == reference:
        return 1.0
    scores = []
    for n in range(1, NGRAM_ORDERS + 1):
        hyp = _ngrams(hypothesis, n)
        ref = _ngrams(reference, n)
        if not hyp and not ref:
            continue
        overlap = sum((hyp & ref).values())
        precision = overlap / sum(hyp.values()) if hyp else 0.0
        recall = overlap / sum(ref.values()) if ref else 0.0
        if precision + recall == 0.0:
            scores.append(0.0)
            continue
        b2 = BETA * BETA
        scores.append((1 + b2) * precision * recall / (b2 * precision + recall))
    return sum(scores) / len(scores) if scores else 0.0


class ProxyScorer:
    """Deterministic offline stand-in for the neural metric."""

    name = "chargram-proxy"

    def score(self, triples: list[Triple]) -> list[float]:
        return [chargram_score(t.hypothesis, t.reference) for t in triples]


class XCometScorer:
    """Neural quality estimation, when the comet package is installed."""

    name = "xcomet"
    DEFAULT_CHECKPOINT = "Unbabel/XCOMET-XL"

    def __init__(self, model: str | None = None):
        from comet import download_model, load_from_checkpoint  # optional extra

        path = model or os.environ.get("NLPSIDECAR_COMET_MODEL")
        if path is None:
            path = download_model(self.DEFAULT_CHECKPOINT)
        self._model = load_from_checkpoint(path)

    def score(self, triples: list[Triple]) -> list[float]:
        data = [
            {"src": t.source, "mt": t.hypothesis, "ref": t.reference}
            for t in triples
        ]
        out = self._model.predict(data, batch_size=8, gpus=0)
        return [min(1.0, max(0.0, float(v))) for v in out.scores]


def build_scorer(engine: str = "auto", model: str | None = None):
    if engine == "proxy":
        return ProxyScorer()
    if engine == "xcomet":
        return XCometScorer(model)
    if engine == "auto":
        try:
            return XCometScorer(model)
        except ImportError:
            return ProxyScorer()
    raise ValueError(f"unknown scoring engine {engine!r}")


def render_records(triples: list[Triple], values: list[float],
                   metric: str = DEFAULT_METRIC) -> str:
    lines = [
        f"{t.sample_id}\t{metric}\t{value:.6f}"
        for t, value in zip(triples, values)
    ]
    return "\n".join(lines) + "\n"


def run(input_path: Path, output_path: Path, engine: str = "auto",
        metric: str = DEFAULT_METRIC, model: str | None = None) -> dict:
    """Score a triples file into external score records."""
    scorer = build_scorer(engine, model)
    triples = read_triples(input_path)
    values = scorer.score(triples)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text(render_records(triples, values, metric),
                           encoding="utf-8")
    return {"engine": scorer.name, "triples": len(triples)}
