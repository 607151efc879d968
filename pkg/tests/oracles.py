"""Independent reference implementations used to freeze expected values.

These are deliberately written with a different organization than the
package code (full-matrix DP, dict-based n-gram tallies, direct formula
transcription) so the two routes can cross-check each other. Tolerances in
the tests are pinned against these.
"""

import math
import re


def edit_distance_ref(a: str, b: str) -> int:
    """Wagner-Fischer with a full matrix."""
    rows, cols = len(a) + 1, len(b) + 1
    m = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        m[i][0] = i
    for j in range(cols):
        m[0][j] = j
    for i in range(1, rows):
        for j in range(1, cols):
            cost = 0 if a[i - 1] == b[j - 1] else 1
            m[i][j] = min(m[i - 1][j] + 1, m[i][j - 1] + 1, m[i - 1][j - 1] + cost)
    return m[-1][-1]


def normalized_edit_distance_ref(a: str, b: str) -> float:
    if len(a) == 0 and len(b) == 0:
        return 0.0
    return edit_distance_ref(a, b) / max(len(a), len(b))


def _char_ngrams(text: str, n: int) -> dict:
    grams = {}
    for i in range(len(text) - n + 1):
        g = text[i:i + n]
        grams[g] = grams.get(g, 0) + 1
    return grams


def _chrf_stats(hyp: str, ref: str, max_order: int) -> list:
    hyp = re.sub(r"\s+", "", hyp)
    ref = re.sub(r"\s+", "", ref)
    stats = []
    for n in range(1, max_order + 1):
        hgrams = _char_ngrams(hyp, n)
        rgrams = _char_ngrams(ref, n)
        overlap = 0
        for g, hcount in hgrams.items():
            if g in rgrams:
                overlap += min(hcount, rgrams[g])
        stats.append((sum(hgrams.values()), sum(rgrams.values()), overlap))
    return stats


def _chrf_from_stats(stats: list, beta: float) -> float:
    precision_sum = 0.0
    recall_sum = 0.0
    effective = 0
    for hyp_total, ref_total, overlap in stats:
        if hyp_total > 0 and ref_total > 0:
            precision_sum += overlap / hyp_total
            recall_sum += overlap / ref_total
            effective += 1
    if effective == 0:
        return 0.0
    p = precision_sum / effective
    r = recall_sum / effective
    if p + r == 0.0:
        return 0.0
    b2 = beta * beta
    return 100.0 * (1 + b2) * p * r / (b2 * p + r)


def sentence_chrf_ref(hyp: str, ref: str, max_order: int = 6, beta: float = 2.0) -> float:
    if not hyp.strip() and not ref.strip():
        return 100.0
    if not hyp.strip() or not ref.strip():
        return 0.0
    return _chrf_from_stats(_chrf_stats(hyp, ref, max_order), beta)


def corpus_chrf_ref(hyps: list, refs: list, max_order: int = 6, beta: float = 2.0) -> float:
    if all(not h.strip() for h in hyps) and all(not r.strip() for r in refs):
        return 100.0
    totals = [(0, 0, 0)] * max_order
    for hyp, ref in zip(hyps, refs):
        for i, stat in enumerate(_chrf_stats(hyp, ref, max_order)):
            totals[i] = tuple(x + y for x, y in zip(totals[i], stat))
    return _chrf_from_stats(totals, beta)


def _word_ngrams(tokens: list, n: int) -> dict:
    grams = {}
    for i in range(len(tokens) - n + 1):
        g = tuple(tokens[i:i + n])
        grams[g] = grams.get(g, 0) + 1
    return grams


def bleu_ref(hyps: list, refs: list, max_order: int = 4, effective_order: bool = False) -> float:
    """Corpus BLEU: clipped n-gram precision, whitespace tokens, BP."""
    correct = [0] * max_order
    total = [0] * max_order
    sys_len = 0
    ref_len = 0
    for hyp, ref in zip(hyps, refs):
        h_tokens = hyp.split()
        r_tokens = ref.split()
        sys_len += len(h_tokens)
        ref_len += len(r_tokens)
        for n in range(1, max_order + 1):
            hgrams = _word_ngrams(h_tokens, n)
            rgrams = _word_ngrams(r_tokens, n)
            total[n - 1] += sum(hgrams.values())
            for g, c in hgrams.items():
                if g in rgrams:
                    correct[n - 1] += min(c, rgrams[g])
    if sys_len == 0:
        return 100.0 if ref_len == 0 else 0.0
    orders = max_order
    if effective_order:
        orders = 0
        for n in range(max_order):
            if total[n] > 0:
                orders = n + 1
        if orders == 0:
            return 0.0
    log_sum = 0.0
    for n in range(orders):
        if total[n] == 0 or correct[n] == 0:
            return 0.0
        log_sum += math.log(correct[n] / total[n])
    bp = 1.0
    if sys_len < ref_len:
        bp = math.exp(1.0 - ref_len / sys_len)
    return 100.0 * bp * math.exp(log_sum / orders)


def sentence_bleu_ref(hyp: str, ref: str) -> float:
    return bleu_ref([hyp], [ref], effective_order=True)


def bm25_ref(doc_tokens: list, query_tokens: list, k1: float = 1.5, b: float = 0.75) -> list:
    """Direct transcription of the BM25 formula over tokenized docs."""
    n = len(doc_tokens)
    avgdl = sum(len(d) for d in doc_tokens) / n if n else 0.0
    scores = []
    for doc in doc_tokens:
        score = 0.0
        for term in query_tokens:
            tf = doc.count(term)
            if tf == 0:
                continue
            df = sum(1 for d in doc_tokens if term in d)
            idf = math.log(1.0 + (n - df + 0.5) / (df + 0.5))
            score += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * len(doc) / avgdl))
        scores.append(score)
    return scores


def mqm_ref(minor: int, major: int, critical: int) -> float:
    if critical > 0:
        return 25.0
    return float(min(25, 5 * minor + 10 * major))
