"""Bilingual lexicons with fuzzy lookup.

Lexicon files are TSV (word, comma-separated translations) with a
``# provenance:`` header. Lookup is case-insensitive and tolerates
inflection through a normalized-edit-distance threshold; an oracle store
wraps a coverage lexicon with exact match plus miss logging.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

FUZZY_THRESHOLD = 0.5
TOP_K = 2
PER_MATCH_CAP = 2


def levenshtein(a: str, b: str) -> int:
    """Plain edit distance, two-row DP."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (ca != cb),
            ))
        prev = cur
    return prev[-1]


def normalized_edit_distance(a: str, b: str) -> float:
    """Levenshtein distance divided by the longer length; 0 for two empties."""
    if not a and not b:
        return 0.0
    return levenshtein(a, b) / max(len(a), len(b))


@dataclass(frozen=True)
class LexMatch:
    query: str
    matched_key: str
    distance: float
    targets: tuple[str, ...]
    via_lemma: bool = False


@dataclass
class Lexicon:
    """Ordered word -> translations table."""

    entries: dict[str, list[str]] = field(default_factory=dict)
    provenance: str = "unknown"
    _lower_index: dict[str, list[str]] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        index: dict[str, list[str]] = {}
        for key in self.entries:
            index.setdefault(key.lower(), []).append(key)
        self._lower_index = index

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, word: str, translations: list[str]) -> None:
        bucket = self.entries.setdefault(word, [])
        for t in translations:
            if t and t not in bucket:
                bucket.append(t)
        self._lower_index.setdefault(word.lower(), [])
        if word not in self._lower_index[word.lower()]:
            self._lower_index[word.lower()].append(word)

    @classmethod
    def from_tsv(cls, text: str, provenance: str | None = None) -> "Lexicon":
        lex = cls(provenance=provenance or "unknown")
        for line in text.splitlines():
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                tag = line[1:].strip()
                if tag.lower().startswith("provenance:") and provenance is None:
                    lex.provenance = tag.split(":", 1)[1].strip()
                continue
            if "\t" not in line:
                continue
            word, _, rest = line.partition("\t")
            lex.add(word, [t.strip() for t in rest.split(",") if t.strip()])
        return lex

    def to_tsv(self) -> str:
        lines = [f"# provenance: {self.provenance}"]
        for word, targets in self.entries.items():
            lines.append(f"{word}\t{','.join(targets)}")
        return "\n".join(lines) + "\n"


def lookup(
    lexicon: Lexicon,
    word: str,
    k: int = TOP_K,
    threshold: float = FUZZY_THRESHOLD,
    per_match_cap: int = PER_MATCH_CAP,
) -> list[LexMatch]:
    """Top-k fuzzy matches for a word.

    Distances are computed on lowercased forms; candidates above the
    threshold are dropped, exact matches rank first, and ties break
    lexicographically on the matched key.
    """
    query = word.lower()
    scored: list[tuple[float, str, str]] = []
    qlen = len(query)
    for key_lower, originals in lexicon._lower_index.items():
        # A length gap alone can push the distance over the threshold.
        longest = max(qlen, len(key_lower))
        if longest and abs(qlen - len(key_lower)) / longest > threshold:
            continue
        dist = normalized_edit_distance(query, key_lower)
        if dist > threshold:
            continue
        for original in originals:
            scored.append((dist, original.lower(), original))
    scored.sort(key=lambda item: (item[0], item[1]))
    matches = []
    for dist, _, original in scored[:k]:
        targets = tuple(lexicon.entries[original][:per_match_cap])
        matches.append(LexMatch(query=word, matched_key=original, distance=dist, targets=targets))
    return matches


def lookup_with_lemma(
    lexicon: Lexicon,
    word: str,
    lemma: str | None,
    k: int = TOP_K,
    threshold: float = FUZZY_THRESHOLD,
    per_match_cap: int = PER_MATCH_CAP,
) -> list[LexMatch]:
    """Surface-form matches plus lemma-keyed matches, deduplicated by key."""
    matches = lookup(lexicon, word, k=k, threshold=threshold, per_match_cap=per_match_cap)
    if lemma and lemma.lower() != word.lower():
        seen = {m.matched_key for m in matches}
        for m in lookup(lexicon, lemma, k=k, threshold=threshold, per_match_cap=per_match_cap):
            if m.matched_key not in seen:
                seen.add(m.matched_key)
                matches.append(LexMatch(
                    query=word,
                    matched_key=m.matched_key,
                    distance=m.distance,
                    targets=m.targets,
                    via_lemma=True,
                ))
    return matches


@dataclass
class OracleStore:
    """Coverage lexicon with exact lookup and recorded misses."""

    lexicon: Lexicon
    misses: list[str] = field(default_factory=list)

    def lookup(self, word: str) -> list[str] | None:
        hits = self.lexicon._lower_index.get(word.lower())
        if not hits:
            self.misses.append(word)
            log.info("oracle lexicon miss: %r", word)
            return None
        return list(self.lexicon.entries[hits[0]])


def oracle_lookup(store: OracleStore, word: str) -> list[str] | None:
    return store.lookup(word)
