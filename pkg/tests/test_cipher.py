import string

import pytest
from hypothesis import given, settings, strategies as st

from cipherlang import cipher, scripts
from cipherlang.annotations import AnnotatedSentence, AnnotatedToken
from cipherlang.cipher import (
    FROM_ENGLISH,
    TO_ENGLISH,
    AlreadyCiphered,
    MapFormatError,
    MaterialBundle,
    build_map,
    load_map,
    save_map,
)
from cipherlang.lexicon import Lexicon
from cipherlang.retrieval import Exemplar

from conftest import FIXTURE_CL_NAME, FIXTURE_SEED

SENTENCES = {
    "spa": "Esta es una frase de ejemplo.",
    "hin": "यह एक उदाहरण वाक्य है।",
    "tel": "ఇది ఒక ఉదాహరణ వాక్యం.",
}


def class_counts(language: str, text: str) -> dict:
    inv = scripts.inventory_for(language)
    counts: dict = {}
    for ch in text:
        counts[inv.classify(ch)] = counts.get(inv.classify(ch), 0) + 1
    return counts


def test_same_inputs_same_map():
    a = build_map("spa", 123)
    b = build_map("spa", 123)
    assert a.forward == b.forward
    assert a.cl_name == b.cl_name
    assert build_map("spa", 124).forward != a.forward


def test_map_preserves_class():
    for language in ("spa", "hin", "tel", "vie", "pol"):
        inv = scripts.inventory_for(language)
        m = build_map(language, FIXTURE_SEED)
        for src, dst in m.forward.items():
            assert inv.classify(src) == inv.classify(dst), (language, src, dst)


def test_apply_preserves_shape_and_roundtrips():
    for language, sentence in SENTENCES.items():
        m = build_map(language, FIXTURE_SEED)
        out = m.apply(sentence)
        assert len(out) == len(sentence)
        # Spaces and punctuation stay in place.
        for i, ch in enumerate(sentence):
            if not ch.isalpha() and ch not in scripts.inventory_for(language).members("VowelDiacritic"):
                assert out[i] == ch
        assert class_counts(language, out) == class_counts(language, sentence)
        assert m.invert(out) == sentence


def test_case_pairing():
    m = build_map("spa", FIXTURE_SEED)
    plain = "Esta Es eSTA"
    out = m.apply(plain)
    assert out.lower() == m.apply(plain.lower())
    assert m.invert(out) == plain
    # An uppercase source letter maps to the uppercase of its pair's image.
    assert out[0] == m.forward["e"].upper()


def test_neutral_passthrough():
    m = build_map("hin", FIXTURE_SEED)
    for ch in ("।", "्", " ", "0", "?", "‍"):
        assert m.apply(ch) == ch


def test_out_of_inventory_letters_pass_through(caplog):
    m = build_map("spa", FIXTURE_SEED)
    with caplog.at_level("WARNING"):
        assert m.apply("ω") == "ω"
    assert any("outside inventory" in r.message for r in caplog.records)


def test_golden_map_snapshot(goldens_dir, spa_map):
    golden = (goldens_dir / "map_spa_seed7.txt").read_text(encoding="utf-8")
    assert spa_map.serialize() == golden


def test_save_load_roundtrip(tmp_path, spa_map):
    path = tmp_path / "map.txt"
    save_map(spa_map, path)
    loaded = load_map(path)
    assert loaded.serialize() == spa_map.serialize()
    assert loaded.forward == spa_map.forward
    assert loaded.cl_name == FIXTURE_CL_NAME
    # Byte-identical through a second save.
    save_map(loaded, tmp_path / "map2.txt")
    assert (tmp_path / "map2.txt").read_bytes() == path.read_bytes()


def test_load_map_errors(tmp_path):
    bad_header = tmp_path / "a.txt"
    bad_header.write_text("not a map\n")
    with pytest.raises(MapFormatError):
        load_map(bad_header)
    bad_pair = tmp_path / "b.txt"
    bad_pair.write_text(f"{cipher.MAP_FILE_HEADER}\nlanguage=spa\nscript=latin_ext\nseed=1\ncl_name=X\n0061 00zz\n")
    with pytest.raises(MapFormatError):
        load_map(bad_pair)
    missing = tmp_path / "c.txt"
    missing.write_text(f"{cipher.MAP_FILE_HEADER}\nlanguage=spa\n0061 0062\n")
    with pytest.raises(MapFormatError):
        load_map(missing)


def test_content_hash_stable(spa_map):
    assert spa_map.content_hash == build_map("spa", FIXTURE_SEED, cl_name=FIXTURE_CL_NAME).content_hash
    assert spa_map.content_hash != build_map("spa", 8, cl_name=FIXTURE_CL_NAME).content_hash


def test_default_cl_name_deterministic():
    assert cipher.default_cl_name("spa", 1) == cipher.default_cl_name("spa", 1)
    assert cipher.default_cl_name("spa", 1)[0].isupper()


def _bundle(direction: str) -> MaterialBundle:
    return MaterialBundle(
        language="spa",
        direction=direction,
        lexicon=Lexicon(entries={"casa": ["house", "home"], "perro": ["dog"]}),
        exemplars=[Exemplar(exemplar_id=1, source="una casa", target="a house", domain="news")],
        annotations={
            "s1": AnnotatedSentence(
                sent_id="s1",
                tokens=(AnnotatedToken(surface="casa", lemma="casa", upos="NOUN"),),
            )
        },
        ne_glossary={"Borges": "Borges"},
        inflection_paradigms="Verbs ending in <ar> inflect like <hablar>.",
    )


def test_cipher_bundle_to_english(spa_map):
    out = cipher.cipher_bundle(spa_map, _bundle(TO_ENGLISH))
    assert out.ciphered
    # Source-language sides ciphered, English untouched.
    assert spa_map.apply("casa") in out.lexicon.entries
    assert out.lexicon.entries[spa_map.apply("casa")] == ["house", "home"]
    assert out.exemplars[0].source == spa_map.apply("una casa")
    assert out.exemplars[0].target == "a house"
    sent = out.annotations["s1"]
    assert sent.tokens[0].surface == spa_map.apply("casa")
    assert sent.tokens[0].lemma == spa_map.apply("casa")
    assert list(out.ne_glossary) == [spa_map.apply("Borges")]
    assert out.ne_glossary[spa_map.apply("Borges")] == "Borges"
    # Paradigm snippets ciphered, markers dropped.
    assert "<" not in out.inflection_paradigms
    assert spa_map.apply("hablar") in out.inflection_paradigms
    assert "Verbs ending in" in out.inflection_paradigms


def test_cipher_bundle_from_english(spa_map):
    bundle = _bundle(FROM_ENGLISH)
    bundle.lexicon = Lexicon(entries={"house": ["casa", "hogar"]})
    out = cipher.cipher_bundle(spa_map, bundle)
    # English keys untouched, constructed-language values ciphered.
    assert list(out.lexicon.entries) == ["house"]
    assert out.lexicon.entries["house"] == [spa_map.apply("casa"), spa_map.apply("hogar")]
    assert out.exemplars[0].source == "una casa"
    assert out.exemplars[0].target == spa_map.apply("a house")
    # Annotations describe the English input and stay plain.
    assert out.annotations["s1"].tokens[0].surface == "casa"
    assert out.ne_glossary == {"Borges": spa_map.apply("Borges")}


def test_cipher_bundle_rejects_double_application(spa_map):
    out = cipher.cipher_bundle(spa_map, _bundle(TO_ENGLISH))
    with pytest.raises(AlreadyCiphered):
        cipher.cipher_bundle(spa_map, out)


def test_direction_validated():
    with pytest.raises(ValueError):
        MaterialBundle(language="spa", direction="sideways")


_MIXED_ALPHABET = (
    string.ascii_letters + "áéíóúüñÁÉÍÓÚ" + " .,;:!?0123456789'\"-" + "ωΔ漢"
)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet=_MIXED_ALPHABET, max_size=60))
def test_roundtrip_property_latin(text):
    m = build_map("spa", FIXTURE_SEED)
    out = m.apply(text)
    assert len(out) == len(text)
    assert m.invert(out) == text


_HIN_ALPHABET = "यहएकउदाहरणवक्य।ि ीुूेैोौंः़ अआइईटठडढتें?0123456789"


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet=_HIN_ALPHABET, max_size=60))
def test_roundtrip_property_devanagari(text):
    m = build_map("hin", FIXTURE_SEED)
    out = m.apply(text)
    assert len(out) == len(text)
    assert m.invert(out) == text
