"""Freeze the metric-parity fixture.

Computes chrF and BLEU over the 20-pair fixture with the reference
implementations in tests/oracles.py and writes the expected values next to
the pairs. The package implementation is held to these numbers; regenerate
only when the fixture pairs themselves change.
"""

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

PAIRS = [
    ("The cat sat on the mat.", "The cat sat on the mat."),
    ("The cat sat on a mat.", "The cat sat on the mat."),
    ("On the mat the cat sat.", "The cat sat on the mat."),
    ("A dog barked loudly at night.", "The dog barked at night."),
    ("Completely unrelated words here.", "Nothing matches this reference."),
    ("wxyz", "abcd"),
    ("abc", "abc"),
    ("a", "a"),
    ("ab", "ba"),
    ("Hello, world!", "Hello world"),
    ("  spaced   out   text  ", "spaced out text"),
    ("Mein Bruder kam und zerlegte alles.", "Mein Bruder kam und zerlegte fast alles."),
    ("gato negro corre", "el gato negro corre rápido"),
    ("उदाहरण वाक्य है", "यह उदाहरण वाक्य है"),
    ("", "non-empty reference"),
    ("non-empty hypothesis", ""),
    ("", ""),
    ("the the the the", "the cat"),
    ("A long sentence with many common words appears in both strings today.",
     "A long sentence with several common words appears in both strings today."),
    ("punctuation ; only , differs !", "punctuation : only . differs ?"),
]


def main() -> None:
    hyps = [h for h, _ in PAIRS]
    refs = [r for _, r in PAIRS]
    fixture = {
        "pairs": [{"hyp": h, "ref": r} for h, r in PAIRS],
        "sentence_chrf": [round(oracles.sentence_chrf_ref(h, r), 6) for h, r in PAIRS],
        "sentence_bleu": [round(oracles.sentence_bleu_ref(h, r), 6) for h, r in PAIRS],
        "corpus_chrf": round(oracles.corpus_chrf_ref(hyps, refs), 6),
        "corpus_bleu": round(oracles.bleu_ref(hyps, refs), 6),
    }
    out = ROOT / "tests" / "goldens" / "metric_fixture.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(fixture, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
