"""Probe prompt construction, response parsing, leakage scanning."""

import pytest

from cipherlang.probe import (
    ProbeResponse,
    build_probe_prompt,
    leakage_check,
    parse_probe_response,
)
from cipherlang.strategies import SECTION_EXEMPLARS, SECTION_WORD_MEANINGS


class TestPromptShape:
    def test_sections_with_materials(self, spa_bundle_to_eng, spa_map, spa_samples):
        text = spa_map.apply(spa_samples[0].source)
        prompt = build_probe_prompt(spa_bundle_to_eng, text)
        assert prompt.strategy == "probe"
        assert prompt.section_names == ("header", "exemplars", "word_meanings", "final")
        assert prompt.full_prompt.startswith("You are given a text in an unfamiliar language")
        assert prompt.full_prompt.endswith(f"Input:\n\n{text}")

    def test_bare_variant(self, spa_bundle_to_eng, spa_map, spa_samples):
        text = spa_map.apply(spa_samples[0].source)
        prompt = build_probe_prompt(spa_bundle_to_eng, text, include_materials=False)
        assert prompt.strategy == "probe-bare"
        assert SECTION_EXEMPLARS not in prompt.section_names
        assert SECTION_WORD_MEANINGS not in prompt.section_names

    def test_rejects_plain_bundle(self, fixtures_dir, spa_samples):
        from cipherlang.cipher import TO_ENGLISH
        from cipherlang.materials import load_bundle

        plain = load_bundle(fixtures_dir / "spa-eng", "spa", TO_ENGLISH)
        with pytest.raises(ValueError, match="ciphered"):
            build_probe_prompt(plain, spa_samples[0].source)

    def test_prompt_is_leak_free(self, spa_bundle_to_eng, spa_map, spa_samples):
        for sample in spa_samples[:10]:
            text = spa_map.apply(sample.source)
            prompt = build_probe_prompt(spa_bundle_to_eng, text)
            allow = tuple(spa_bundle_to_eng.ne_glossary.values())
            assert leakage_check(prompt.full_prompt, sample.source, allow) == []


class TestParsing:
    RESPONSE = (
        "Language: Spanish\n"
        "Cipher: letter substitution\n"
        "Deciphered: El ministro anunció un plan nuevo.\n"
        "Translation: The minister announced a new plan.\n"
    )

    def test_clean_response(self):
        parsed = parse_probe_response(self.RESPONSE)
        assert parsed.parse_ok
        assert parsed.language == "Spanish"
        assert parsed.cipher == "letter substitution"
        assert parsed.deciphered == "El ministro anunció un plan nuevo."
        assert parsed.translation == "The minister announced a new plan."

    def test_markdown_clutter_and_casing(self):
        text = (
            "**Language**: spanish\n"
            "- CIPHER: a one-to-one letter swap\n"
            "  deciphered: hola mundo\n"
            "> Translation: hello world\n"
        )
        parsed = parse_probe_response(text)
        assert parsed.parse_ok
        assert parsed.language == "spanish"
        assert parsed.deciphered == "hola mundo"

    def test_multiline_answers(self):
        text = (
            "Language: French\n"
            "Cipher: unknown\n"
            "Deciphered: line one\nline two\n"
            "Translation: final answer"
        )
        parsed = parse_probe_response(text)
        assert parsed.deciphered == "line one\nline two"
        assert parsed.translation == "final answer"

    def test_partial_labels(self):
        parsed = parse_probe_response("Translation: just a guess")
        assert not parsed.parse_ok
        assert parsed.missing == ("language", "cipher", "deciphered")
        assert parsed.translation == "just a guess"

    def test_no_labels_fallback(self):
        parsed = parse_probe_response("  The model just rambles here.  ")
        assert not parsed.parse_ok
        assert parsed.missing == ("language", "cipher", "deciphered", "translation")
        assert parsed.translation == "The model just rambles here."

    def test_duplicate_labels_keep_first(self):
        text = "Language: A\nLanguage: B\nCipher: c\nDeciphered: d\nTranslation: t"
        assert parse_probe_response(text).language == "A"


class TestLeakage:
    def test_detects_leaked_word(self):
        assert leakage_check("the prompt mentions ministro", "El ministro llegó.") == [
            "ministro"
        ]

    def test_short_words_ignored(self):
        assert leakage_check("un plan y el mar", "Un plan en el mar.") == []

    def test_allowlist(self):
        plain = "La señora Darvel llegó."
        prompt = "glossary: Darvel - Darvel"
        assert leakage_check(prompt, plain, allowlist=("Darvel",)) == []
        assert leakage_check(prompt, plain) == ["Darvel"]

    def test_case_insensitive(self):
        assert leakage_check("MINISTRO appears", "el ministro") == ["ministro"]
