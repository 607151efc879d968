"""Translation metrics and score aggregation.

chrF: character n-grams of order 1..6 with beta=2, whitespace removed
before n-gram extraction; identical nonempty strings score 100, no overlap
scores 0, empty-vs-empty is defined as 100 and empty-vs-nonempty as 0.

BLEU: corpus-level clipped n-gram precision up to order 4 over whitespace
tokens with the exponential brevity penalty; the sentence-level variant
restricts the order to the n-grams the pair can support.

MQM judgments carry per-error severities; the headline penalty is
min(25, 5*minor + 10*major), forced to exactly 25 by any critical error.
Per-category totals stay uncapped.
"""

from __future__ import annotations

import logging
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

CHRF_MAX_ORDER = 6
CHRF_BETA = 2.0
BLEU_MAX_ORDER = 4

SEVERITY_COST = {"minor": 5, "major": 10, "critical": 25}
MQM_CAP = 25.0


class UnknownSeverity(ValueError):
    pass


def _strip_whitespace(text: str) -> str:
    return "".join(text.split())


def _char_ngram_counts(text: str, n: int) -> Counter:
    return Counter(text[i:i + n] for i in range(len(text) - n + 1))


@dataclass
class _ChrfTotals:
    hyp: list[int] = field(default_factory=lambda: [0] * CHRF_MAX_ORDER)
    ref: list[int] = field(default_factory=lambda: [0] * CHRF_MAX_ORDER)
    match: list[int] = field(default_factory=lambda: [0] * CHRF_MAX_ORDER)

    def add_pair(self, hyp: str, ref: str) -> None:
        hyp = _strip_whitespace(hyp)
        ref = _strip_whitespace(ref)
        for i in range(CHRF_MAX_ORDER):
            h = _char_ngram_counts(hyp, i + 1)
            r = _char_ngram_counts(ref, i + 1)
            self.hyp[i] += sum(h.values())
            self.ref[i] += sum(r.values())
            self.match[i] += sum((h & r).values())

    def f_score(self, beta: float = CHRF_BETA) -> float:
        precisions = []
        recalls = []
        for i in range(CHRF_MAX_ORDER):
            if self.hyp[i] > 0 and self.ref[i] > 0:
                precisions.append(self.match[i] / self.hyp[i])
                recalls.append(self.match[i] / self.ref[i])
        if not precisions:
            return 0.0
        p = sum(precisions) / len(precisions)
        r = sum(recalls) / len(recalls)
        if p + r == 0.0:
            return 0.0
        b2 = beta * beta
        return 100.0 * (1.0 + b2) * p * r / (b2 * p + r)


def sentence_chrf(hypothesis: str, reference: str) -> float:
    hyp_empty = not hypothesis.strip()
    ref_empty = not reference.strip()
    if hyp_empty and ref_empty:
        return 100.0
    if hyp_empty or ref_empty:
        return 0.0
    totals = _ChrfTotals()
    totals.add_pair(hypothesis, reference)
    return totals.f_score()


def corpus_chrf(hypotheses: list[str], references: list[str]) -> float:
    if len(hypotheses) != len(references):
        raise ValueError("hypotheses and references differ in length")
    if all(not h.strip() for h in hypotheses) and all(not r.strip() for r in references):
        return 100.0
    totals = _ChrfTotals()
    for hyp, ref in zip(hypotheses, references):
        totals.add_pair(hyp, ref)
    return totals.f_score()


@dataclass
class _BleuTotals:
    correct: list[int] = field(default_factory=lambda: [0] * BLEU_MAX_ORDER)
    total: list[int] = field(default_factory=lambda: [0] * BLEU_MAX_ORDER)
    sys_len: int = 0
    ref_len: int = 0

    def add_pair(self, hyp: str, ref: str) -> None:
        h_tokens = hyp.split()
        r_tokens = ref.split()
        self.sys_len += len(h_tokens)
        self.ref_len += len(r_tokens)
        for i in range(BLEU_MAX_ORDER):
            n = i + 1
            h = Counter(tuple(h_tokens[j:j + n]) for j in range(len(h_tokens) - n + 1))
            r = Counter(tuple(r_tokens[j:j + n]) for j in range(len(r_tokens) - n + 1))
            self.total[i] += sum(h.values())
            self.correct[i] += sum((h & r).values())

    def score(self, effective_order: bool) -> float:
        if self.sys_len == 0:
            return 100.0 if self.ref_len == 0 else 0.0
        orders = BLEU_MAX_ORDER
        if effective_order:
            supported = [i + 1 for i in range(BLEU_MAX_ORDER) if self.total[i] > 0]
            if not supported:
                return 0.0
            orders = supported[-1]
        log_sum = 0.0
        for i in range(orders):
            if self.correct[i] == 0 or self.total[i] == 0:
                return 0.0
            log_sum += math.log(self.correct[i] / self.total[i])
        bp = 1.0
        if self.sys_len < self.ref_len:
            bp = math.exp(1.0 - self.ref_len / self.sys_len)
        return 100.0 * bp * math.exp(log_sum / orders)


def corpus_bleu(hypotheses: list[str], references: list[str]) -> float:
    if len(hypotheses) != len(references):
        raise ValueError("hypotheses and references differ in length")
    totals = _BleuTotals()
    for hyp, ref in zip(hypotheses, references):
        totals.add_pair(hyp, ref)
    return totals.score(effective_order=False)


def sentence_bleu(hypothesis: str, reference: str) -> float:
    totals = _BleuTotals()
    totals.add_pair(hypothesis, reference)
    return totals.score(effective_order=True)


@dataclass(frozen=True)
class MQMError:
    severity: str
    category: str
    span: str = ""

    def __post_init__(self):
        if self.severity not in SEVERITY_COST:
            raise UnknownSeverity(
                f"severity {self.severity!r} not one of {sorted(SEVERITY_COST)}"
            )


def mqm_penalty(errors: list[MQMError]) -> float:
    """Capped headline penalty; any critical error forces the cap."""
    if any(e.severity == "critical" for e in errors):
        return MQM_CAP
    raw = sum(SEVERITY_COST[e.severity] for e in errors)
    return float(min(MQM_CAP, raw))


def mqm_by_category(errors: list[MQMError]) -> dict[str, float]:
    """Uncapped severity-cost totals per error category."""
    totals: dict[str, float] = defaultdict(float)
    for e in errors:
        totals[e.category] += SEVERITY_COST[e.severity]
    return dict(totals)


@dataclass
class ScoredSample:
    sample_id: str
    hypothesis: str
    reference: str
    language: str = ""
    strategy: str = ""
    direction: str = ""
    domain: str = ""
    scores: dict[str, float] = field(default_factory=dict)
    external_scores: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class AggregateRow:
    language: str
    strategy: str
    domain: str
    count: int
    means: dict[str, float]
    usable_fraction: float | None


def aggregate(samples: list[ScoredSample]) -> list[AggregateRow]:
    """Mean scores and counts grouped by (language, strategy, domain).

    Domain "" rows aggregate over all domains of a (language, strategy)
    pair. The usable fraction is the share of samples whose MQM penalty is
    under the cap; it is None when no sample carries an MQM score.
    """
    groups: dict[tuple[str, str, str], list[ScoredSample]] = defaultdict(list)
    for s in samples:
        groups[(s.language, s.strategy, s.domain)].append(s)
        if s.domain:  # domain-less samples already live in the "" group
            groups[(s.language, s.strategy, "")].append(s)
    rows = []
    for (language, strategy, domain), members in sorted(groups.items()):
        metric_values: dict[str, list[float]] = defaultdict(list)
        for s in members:
            for metric, value in {**s.scores, **s.external_scores}.items():
                metric_values[metric].append(value)
        means = {m: sum(v) / len(v) for m, v in sorted(metric_values.items())}
        mqm_values = metric_values.get("mqm")
        usable = None
        if mqm_values:
            usable = sum(1 for v in mqm_values if v < MQM_CAP) / len(mqm_values)
        rows.append(AggregateRow(
            language=language,
            strategy=strategy,
            domain=domain,
            count=len(members),
            means=means,
            usable_fraction=usable,
        ))
    return rows


def format_report(rows: list[AggregateRow]) -> str:
    metrics = sorted({m for row in rows for m in row.means})
    header = ["language", "strategy", "domain", "n"] + metrics + ["usable"]
    lines = ["\t".join(header)]
    for row in rows:
        cells = [row.language, row.strategy, row.domain or "(all)", str(row.count)]
        for m in metrics:
            cells.append(f"{row.means[m]:.2f}" if m in row.means else "-")
        cells.append(f"{row.usable_fraction:.2f}" if row.usable_fraction is not None else "-")
        lines.append("\t".join(cells))
    return "\n".join(lines) + "\n"


def ingest_external_scores(samples: list[ScoredSample], report_text: str) -> list[str]:
    """Attach sample_id/metric/value records; returns ids with no sample.

    Duplicate (sample_id, metric) records keep the last value and log a
    warning.
    """
    by_id = {s.sample_id: s for s in samples}
    unmatched: list[str] = []
    for lineno, line in enumerate(report_text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected sample_id<TAB>metric<TAB>value")
        sample_id, metric, raw = parts
        sample = by_id.get(sample_id)
        if sample is None:
            unmatched.append(sample_id)
            continue
        value = float(raw)
        if metric in sample.external_scores:
            log.warning("duplicate external score %s/%s: keeping last", sample_id, metric)
        sample.external_scores[metric] = value
    return unmatched
