"""Record golden files: the fixture cipher map and one prompt per strategy.

Regenerate deliberately; tests compare byte-for-byte.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from cipherlang import cipher  # noqa: E402
from cipherlang.materials import load_bundle, load_samples  # noqa: E402
from cipherlang.strategies import PromptFactory, strategy, word_for_word  # noqa: E402

GOLDENS = ROOT / "tests" / "goldens"
FIXTURES = ROOT / "fixtures" / "spa-eng"
FIXTURE_SEED = 7
FIXTURE_CL_NAME = "Velsora"
GOLDEN_ID = "mt-0001"

TO_ENG_STRATEGIES = (
    "topline", "only-input", "L", "LE", "LELem",
    "LELemM", "LELemMS", "LELemMSI", "Lcov-ELemMS",
)
PIVOT_TEXT = "Le ministre a annoncé un nouveau plan."


def freeze_map() -> None:
    m = cipher.build_map("spa", FIXTURE_SEED, cl_name=FIXTURE_CL_NAME)
    path = GOLDENS / "map_spa_seed7.txt"
    path.write_text(m.serialize(), encoding="utf-8")
    print(f"wrote {path}")


def freeze_prompts() -> None:
    out_dir = GOLDENS / "prompts"
    out_dir.mkdir(parents=True, exist_ok=True)
    m = cipher.build_map("spa", FIXTURE_SEED, cl_name=FIXTURE_CL_NAME)
    sample = load_samples(FIXTURES / "testset.jsonl")[0]
    assert sample.sample_id == GOLDEN_ID

    bundle = cipher.cipher_bundle(m, load_bundle(FIXTURES, "spa", cipher.TO_ENGLISH))
    factory = PromptFactory(bundle)
    for name in TO_ENG_STRATEGIES:
        cfg = strategy(name)
        text = sample.source if not cfg.ciphered else m.apply(sample.source)
        prompt = factory.render(cfg, text, sample_id=GOLDEN_ID)
        path = out_dir / f"{name}.txt"
        path.write_text(prompt.full_prompt, encoding="utf-8")
        print(f"wrote {path}")

    from_bundle = cipher.cipher_bundle(
        m, load_bundle(FIXTURES, "spa", cipher.FROM_ENGLISH, pivot_language="fra")
    )
    from_factory = PromptFactory(from_bundle)
    prompt = from_factory.render(strategy("LELemMS"), sample.target, sample_id=GOLDEN_ID)
    path = out_dir / "LELemMS.from-eng.txt"
    path.write_text(prompt.full_prompt, encoding="utf-8")
    print(f"wrote {path}")

    plan = from_factory.pivot_plan(
        strategy("CLcov-ELemMS"), sample.target, sample_id=GOLDEN_ID
    )
    path = out_dir / "CLcov-ELemMS.stage1.txt"
    path.write_text(plan.stage1_prompt.full_prompt, encoding="utf-8")
    print(f"wrote {path}")
    path = out_dir / "CLcov-ELemMS.stage2.txt"
    path.write_text(plan.build_stage2(PIVOT_TEXT).full_prompt, encoding="utf-8")
    print(f"wrote {path}")

    # The word-for-word rung produces output, not a prompt; freeze that.
    glossed = word_for_word(m.apply(sample.source), bundle.lexicon)
    path = out_dir / "L-str.out.txt"
    path.write_text(glossed + "\n", encoding="utf-8")
    print(f"wrote {path}")


def main() -> None:
    GOLDENS.mkdir(parents=True, exist_ok=True)
    freeze_map()
    freeze_prompts()


if __name__ == "__main__":
    main()
