"""Exemplar pool and BM25 retrieval.

Exemplars are (source, target) sentence pairs tagged with a domain. The
index ranks pool entries against an input text with BM25 (k1=1.5, b=0.75)
over lowercased word tokens; ties and zero scores fall back to ascending
exemplar id so retrieval is fully deterministic.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field

K1 = 1.5
B = 0.75
DEFAULT_E = 3

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; whitespace and punctuation are separators."""
    return _TOKEN.findall(text.lower())


@dataclass(frozen=True)
class Exemplar:
    exemplar_id: int
    source: str
    target: str
    domain: str = ""


def load_exemplars(text: str) -> list[Exemplar]:
    """Parse the exemplar pool file (one JSON object per line)."""
    pool = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        pool.append(Exemplar(
            exemplar_id=int(obj["id"]),
            source=obj["source"],
            target=obj["target"],
            domain=obj.get("domain", ""),
        ))
    return pool


def dump_exemplars(pool: list[Exemplar]) -> str:
    lines = [
        json.dumps(
            {"id": ex.exemplar_id, "source": ex.source, "target": ex.target, "domain": ex.domain},
            ensure_ascii=False,
        )
        for ex in pool
    ]
    return "\n".join(lines) + "\n"


@dataclass
class Bm25Index:
    exemplars: list[Exemplar]
    side: str = "source"
    k1: float = K1
    b: float = B
    _docs: list[Counter] = field(repr=False, default_factory=list)
    _doc_lens: list[int] = field(repr=False, default_factory=list)
    _idf: dict[str, float] = field(repr=False, default_factory=dict)
    _avgdl: float = field(repr=False, default=0.0)

    def __post_init__(self):
        if self.side not in ("source", "target"):
            raise ValueError("side must be 'source' or 'target'")
        texts = [getattr(ex, self.side) for ex in self.exemplars]
        self._docs = [Counter(tokenize(t)) for t in texts]
        self._doc_lens = [sum(c.values()) for c in self._docs]
        n = len(self._docs)
        self._avgdl = (sum(self._doc_lens) / n) if n else 0.0
        df = Counter()
        for doc in self._docs:
            df.update(doc.keys())
        # Non-negative idf variant: ln(1 + (N - df + 0.5) / (df + 0.5)).
        self._idf = {
            term: math.log(1.0 + (n - count + 0.5) / (count + 0.5))
            for term, count in df.items()
        }

    def score(self, query: str) -> list[float]:
        """BM25 score of every indexed exemplar against the query text."""
        terms = tokenize(query)
        scores = []
        for doc, dl in zip(self._docs, self._doc_lens):
            s = 0.0
            if self._avgdl > 0:
                norm = self.k1 * (1.0 - self.b + self.b * dl / self._avgdl)
                for term in terms:
                    tf = doc.get(term, 0)
                    if tf:
                        s += self._idf[term] * tf * (self.k1 + 1.0) / (tf + norm)
            scores.append(s)
        return scores


def build_index(pool: list[Exemplar], side: str = "source") -> Bm25Index:
    return Bm25Index(exemplars=list(pool), side=side)


def top_e(index: Bm25Index, query: str, e: int = DEFAULT_E) -> list[Exemplar]:
    """Best e exemplars for the query.

    Zero-score entries stay eligible and rank last; all ties break on
    ascending exemplar id. Fewer than e come back only when the pool is
    smaller than e.
    """
    scores = index.score(query)
    order = sorted(
        range(len(scores)),
        key=lambda i: (-scores[i], index.exemplars[i].exemplar_id),
    )
    return [index.exemplars[i] for i in order[:e]]
