import json
import itertools

import pytest

from cipherlang.metrics import (
    MQMError,
    ScoredSample,
    UnknownSeverity,
    aggregate,
    corpus_bleu,
    corpus_chrf,
    format_report,
    ingest_external_scores,
    mqm_by_category,
    mqm_penalty,
    sentence_bleu,
    sentence_chrf,
)

import oracles


@pytest.fixture(scope="module")
def fixture(goldens_dir):
    raw = json.loads((goldens_dir / "metric_fixture.json").read_text(encoding="utf-8"))
    raw["pairs"] = [(p["hyp"], p["ref"]) for p in raw["pairs"]]
    return raw


def test_sentence_chrf_matches_frozen_reference(fixture):
    for (hyp, ref), expected in zip(fixture["pairs"], fixture["sentence_chrf"]):
        assert sentence_chrf(hyp, ref) == pytest.approx(expected, abs=1e-3)
        # the frozen values themselves came from the oracle; re-derive
        assert oracles.sentence_chrf_ref(hyp, ref) == pytest.approx(expected, abs=1e-6)


def test_sentence_bleu_matches_frozen_reference(fixture):
    for (hyp, ref), expected in zip(fixture["pairs"], fixture["sentence_bleu"]):
        assert sentence_bleu(hyp, ref) == pytest.approx(expected, abs=1e-3)
        assert oracles.sentence_bleu_ref(hyp, ref) == pytest.approx(expected, abs=1e-6)


def test_corpus_scores_match_frozen_reference(fixture):
    hyps = [h for h, _ in fixture["pairs"]]
    refs = [r for _, r in fixture["pairs"]]
    assert corpus_chrf(hyps, refs) == pytest.approx(fixture["corpus_chrf"], abs=1e-3)
    assert corpus_bleu(hyps, refs) == pytest.approx(fixture["corpus_bleu"], abs=1e-3)


def test_chrf_pinned_edge_cases():
    assert sentence_chrf("abc", "abc") == 100.0
    assert sentence_chrf("wxyz", "abcd") == 0.0
    assert sentence_chrf("", "") == 100.0
    assert sentence_chrf("", "text") == 0.0
    assert sentence_chrf("text", "") == 0.0
    # Whitespace differences are invisible to chrF.
    assert sentence_chrf("a b c", "abc") == 100.0


def test_bleu_pinned_edge_cases():
    assert corpus_bleu(["the cat sat on the mat"], ["the cat sat on the mat"]) == 100.0
    assert corpus_bleu(["x y z w"], ["a b c d"]) == 0.0
    assert corpus_bleu([""], [""]) == 100.0
    assert corpus_bleu([""], ["a b c"]) == 0.0
    # Shorter hypothesis pays a brevity penalty.
    full = corpus_bleu(["the cat sat on the mat"], ["the cat sat on the mat"])
    short = corpus_bleu(["the cat sat on the"], ["the cat sat on the mat"])
    assert short < full


def test_metric_ranges(fixture):
    for hyp, ref in fixture["pairs"]:
        assert 0.0 <= sentence_chrf(hyp, ref) <= 100.0
        assert 0.0 <= sentence_bleu(hyp, ref) <= 100.0


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        corpus_chrf(["a"], ["a", "b"])
    with pytest.raises(ValueError):
        corpus_bleu(["a"], [])


def test_mqm_grid_exhaustive():
    for minor, major, critical in itertools.product(range(6), repeat=3):
        errors = (
            [MQMError("minor", "fluency")] * minor
            + [MQMError("major", "accuracy")] * major
            + [MQMError("critical", "accuracy")] * critical
        )
        assert mqm_penalty(errors) == oracles.mqm_ref(minor, major, critical)


def test_mqm_pinned_examples():
    two_minor_one_major = [
        MQMError("minor", "fluency"),
        MQMError("minor", "style"),
        MQMError("major", "accuracy"),
    ]
    assert mqm_penalty(two_minor_one_major) == 20.0
    assert mqm_penalty([MQMError("critical", "accuracy")]) == 25.0
    assert mqm_penalty([MQMError("major", "accuracy")] * 3) == 25.0
    assert mqm_penalty([]) == 0.0


def test_mqm_by_category_uncapped():
    errors = [
        MQMError("major", "accuracy"),
        MQMError("major", "accuracy"),
        MQMError("major", "accuracy"),
        MQMError("minor", "fluency"),
        MQMError("critical", "terminology"),
    ]
    assert mqm_by_category(errors) == {
        "accuracy": 30.0,
        "fluency": 5.0,
        "terminology": 25.0,
    }


def test_unknown_severity_rejected():
    with pytest.raises(UnknownSeverity):
        MQMError("catastrophic", "accuracy")


def _samples():
    return [
        ScoredSample("a", "h", "r", language="spa", strategy="L", domain="news",
                     scores={"chrf": 40.0, "mqm": 10.0}),
        ScoredSample("b", "h", "r", language="spa", strategy="L", domain="social",
                     scores={"chrf": 60.0, "mqm": 25.0}),
        ScoredSample("c", "h", "r", language="spa", strategy="LE", domain="news",
                     scores={"chrf": 80.0}),
    ]


def test_aggregate_groups_and_usable_fraction():
    rows = aggregate(_samples())
    overall_l = next(r for r in rows if r.strategy == "L" and r.domain == "")
    assert overall_l.count == 2
    assert overall_l.means["chrf"] == pytest.approx(50.0)
    assert overall_l.usable_fraction == pytest.approx(0.5)
    news_l = next(r for r in rows if r.strategy == "L" and r.domain == "news")
    assert news_l.count == 1
    assert news_l.means["chrf"] == pytest.approx(40.0)
    le = next(r for r in rows if r.strategy == "LE" and r.domain == "")
    assert le.usable_fraction is None


def test_aggregate_counts_domainless_samples_once():
    samples = [
        ScoredSample("a", "h", "r", language="spa", strategy="LE:nli:direct",
                     scores={"accuracy": 1.0}),
        ScoredSample("b", "h", "r", language="spa", strategy="LE:nli:direct",
                     scores={"accuracy": 0.0}),
    ]
    rows = aggregate(samples)
    assert len(rows) == 1
    assert rows[0].domain == ""
    assert rows[0].count == 2
    assert rows[0].means["accuracy"] == pytest.approx(0.5)


def test_format_report_renders_table():
    text = format_report(aggregate(_samples()))
    assert text.startswith("language\tstrategy\tdomain")
    assert "(all)" in text


def test_ingest_external_scores():
    samples = _samples()
    unmatched = ingest_external_scores(
        samples,
        "a\txcomet\t0.91\nmissing\txcomet\t0.5\nb\txcomet\t0.7\na\txcomet\t0.95\n",
    )
    assert unmatched == ["missing"]
    assert samples[0].external_scores["xcomet"] == pytest.approx(0.95)
    assert samples[1].external_scores["xcomet"] == pytest.approx(0.7)
    with pytest.raises(ValueError):
        ingest_external_scores(samples, "only two\tfields\n")
    rows = aggregate(samples)
    overall_l = next(r for r in rows if r.strategy == "L" and r.domain == "")
    assert overall_l.means["xcomet"] == pytest.approx((0.95 + 0.7) / 2)
