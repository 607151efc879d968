"""
The strategy ladder: from bare input to full grammar lessons
============================================================

"""

# Prompts are assembled from a bundle of ciphered materials: a lexicon,
# translation exemplars, morphological annotations, a syntax profile and
# inflection paradigms. Each strategy on the ladder unlocks more of them.
from pathlib import Path

from cipherlang.cipher import TO_ENGLISH, build_map, cipher_bundle
from cipherlang.materials import load_bundle, load_samples
from cipherlang.strategies import LADDER, PromptFactory, strategy

fixtures = Path(__file__).resolve().parent.parent / "fixtures" / "spa-eng"

velsora = build_map("spa", seed=7, cl_name="Velsora")
bundle = cipher_bundle(velsora, load_bundle(fixtures, "spa", TO_ENGLISH))
factory = PromptFactory(bundle)

sample = load_samples(fixtures / "testset.jsonl")[0]
ciphered = velsora.apply(sample.source)

# The ladder names encode the materials: L adds the lexicon, E exemplars,
# Lem lemma lookups, M morphology, S syntax, I inflection tables.
for name in ("only-input", "L", "LE", "LELemM", "LELemMSI"):
    prompt = factory.render(strategy(name), ciphered, sample_id=sample.sample_id)
    print(f"{name:12s} -> sections: {', '.join(prompt.section_names)}")

# The richest rung reads like a small language lesson. Here is its word
# meanings section for our sentence.
prompt = factory.render(strategy("LELemMSI"), ciphered, sample_id=sample.sample_id)
print()
print(prompt.section("word_meanings"))

# Every strategy keeps the same closing convention: the input is repeated
# and the prompt ends with an output slot for the model to fill.
print()
print(prompt.section("final"))
