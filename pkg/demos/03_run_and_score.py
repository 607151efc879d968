"""
Running a desk-scale experiment against a mock backend
======================================================

"""

# An experiment is a config: language, direction, materials, strategies,
# backend. The mock backend makes the whole loop runnable offline; the
# lexicon-gloss policy answers each prompt with a word-by-word gloss of
# its input block, which is a fair stand-in for a weak translator.
import tempfile
from pathlib import Path

from cipherlang.metrics import aggregate, format_report
from cipherlang.runner import ExperimentConfig, run_mt, score_mt

fixtures = Path(__file__).resolve().parent.parent / "fixtures" / "spa-eng"
workdir = Path(tempfile.mkdtemp(prefix="cipherlang-demo-"))

config = ExperimentConfig(
    language="spa",
    materials=fixtures,
    seed=7,
    cl_name="Velsora",
    workdir=workdir,
    backend="mock",
    mock_policy="lexicon-gloss",
    strategies=("topline", "only-input", "L-str", "LE"),
    samples=12,
)

# run_mt prepares the map and bundle, draws a domain-balanced sample, and
# runs every strategy over the same subset. The word-for-word rung (L-str)
# never touches the backend at all.
records = run_mt(config)
print(f"{len(records)} records ({len(config.strategies)} strategies x 12 samples)")

# Each record keeps the prompt hash and cache key, so a run can be
# replayed from its transcript byte for byte.
example = next(r for r in records if r.strategy == "LE")
print(f"example output: {example.output_text!r}")

# Scoring attaches chrF and BLEU per record; aggregation averages by
# (language, strategy, domain) with an all-domains row per strategy.
scored = score_mt(records)
rows = [row for row in aggregate(scored) if row.domain == ""]
print()
print(format_report(rows))

# Read the table as plumbing, not findings: the gloss mock collapses every
# material-carrying rung onto word-for-word output and cannot translate the
# plain-Spanish topline at all. Swap backend="live" (or a recorded replay
# transcript) into the config and the same loop measures real models.
