"""Class-preserving substitution ciphers over script inventories.

A cipher map is built per (language, seed): every substitutable class of the
language's inventory is shuffled independently with a seeded RNG, and the
resulting permutation is extended character-wise over text. Letters keep
their class (consonants map to consonants, vowels to vowels, vowel
diacritics to vowel diacritics), casing is preserved through case pairs, and
Neutral codepoints (punctuation, digits, spacing, and the pinned Indic
signs) pass through untouched, so sentence shape survives ciphering.

Maps are persisted as plain text files and are addressable by content hash.
"""

from __future__ import annotations

import hashlib
import logging
import random
import re
from dataclasses import dataclass, field, replace

from . import scripts
from .annotations import AnnotatedSentence, AnnotatedToken
from .lexicon import Lexicon
from .retrieval import Exemplar

log = logging.getLogger(__name__)

MAP_FILE_HEADER = "# cipherlang map v1"

TO_ENGLISH = "to-eng"
FROM_ENGLISH = "from-eng"
DIRECTIONS = (TO_ENGLISH, FROM_ENGLISH)


class AlreadyCiphered(RuntimeError):
    """Raised when cipher_bundle is applied to an already-ciphered bundle."""


class MapFormatError(ValueError):
    pass


# Readable pseudo-name syllable pools (ASCII only, independent of the
# per-class permutations).
_NAME_ONSETS = "b d f g k l m n p r s t v z br dr gr kr tr st sk".split()
_NAME_VOWELS = "a e i o u ai ia".split()


def _class_rng(language: str, seed: int, label: str) -> random.Random:
    digest = hashlib.sha256(f"{language}:{seed}:{label}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def default_cl_name(language: str, seed: int) -> str:
    """Deterministic invented name for the constructed language."""
    rng = _class_rng(language, seed, "cl-name")
    syllables = rng.randint(2, 3)
    name = ""
    for _ in range(syllables):
        name += rng.choice(_NAME_ONSETS) + rng.choice(_NAME_VOWELS)
    if rng.random() < 0.5:
        name += rng.choice("nrlst")
    return name.capitalize()


@dataclass(frozen=True)
class CipherMap:
    """A fixed substitution over one language's inventory."""

    language: str
    script: str
    seed: int
    cl_name: str
    forward: dict[str, str]
    inverse: dict[str, str] = field(repr=False, default_factory=dict)
    _fwd_table: dict[int, int] = field(repr=False, default_factory=dict)
    _inv_table: dict[int, int] = field(repr=False, default_factory=dict)
    _warned: set[str] = field(repr=False, default_factory=set)

    def __post_init__(self):
        values = list(self.forward.values())
        if len(set(values)) != len(values):
            raise MapFormatError("forward table is not injective")
        inverse = {v: k for k, v in self.forward.items()}
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(
            self, "_fwd_table", {ord(k): ord(v) for k, v in self.forward.items()}
        )
        object.__setattr__(
            self, "_inv_table", {ord(k): ord(v) for k, v in inverse.items()}
        )

    def apply(self, text: str) -> str:
        """Cipher text character-wise; unmapped codepoints pass through."""
        self._warn_unmapped(text, self.forward)
        return text.translate(self._fwd_table)

    def invert(self, text: str) -> str:
        """Decipher text character-wise; unmapped codepoints pass through."""
        return text.translate(self._inv_table)

    def _warn_unmapped(self, text: str, table: dict[str, str]) -> None:
        for ch in set(text):
            if ch.isalpha() and ch not in table and ch not in self._warned:
                low = ch.lower()
                if len(low) == 1 and low in table:
                    continue
                self._warned.add(ch)
                log.warning(
                    "%s map: letter %r (U+%04X) outside inventory passes through",
                    self.language, ch, ord(ch),
                )

    def serialize(self) -> str:
        lines = [
            MAP_FILE_HEADER,
            f"language={self.language}",
            f"script={self.script}",
            f"seed={self.seed}",
            f"cl_name={self.cl_name}",
        ]
        for src in sorted(self.forward, key=ord):
            lines.append(f"{ord(src):04X} {ord(self.forward[src]):04X}")
        return "\n".join(lines) + "\n"

    @property
    def content_hash(self) -> str:
        return hashlib.sha256(self.serialize().encode("utf-8")).hexdigest()


def _expand_case(core: dict[str, str]) -> dict[str, str]:
    """Add uppercase pairs so cased text ciphers without a lowercasing pass.

    A pair is added only when both sides have a well-behaved single-codepoint
    uppercase form (Turkish dotless-i and German eszett fail this and keep
    their lowercase-only entries).
    """
    table = dict(core)
    for low, image in core.items():
        up = low.upper()
        if len(up) != 1 or up == low or up.lower() != low or up in table:
            continue
        image_up = image.upper()
        if len(image_up) != 1 or image_up in table.values():
            continue
        table[up] = image_up
    return table


def _case_expandable(ch: str) -> bool:
    """True when the letter has a clean single-codepoint uppercase pair."""
    up = ch.upper()
    return len(up) == 1 and up != ch and up.lower() == ch


def build_map(language: str, seed: int, cl_name: str | None = None) -> CipherMap:
    """Build the substitution map for (language, seed).

    Each substitutable class of the language's inventory is permuted by an
    independent seeded shuffle; fixed points are allowed. Letters with a
    clean uppercase pair are shuffled separately from caseless ones (eszett,
    dotless i), otherwise a cased letter could map to an image whose
    uppercase form does not exist and uppercase input would not round-trip.
    The same inputs always produce the same map.
    """
    inventory = scripts.inventory_for(language)
    core: dict[str, str] = {}
    for cls in inventory.substitutable_classes:
        domain = list(inventory.members(cls))
        rng = _class_rng(language, seed, cls)
        cased = [ch for ch in domain if _case_expandable(ch)]
        caseless = [ch for ch in domain if not _case_expandable(ch)]
        for group in (cased, caseless):
            image = list(group)
            rng.shuffle(image)
            core.update(zip(group, image))
    return CipherMap(
        language=language,
        script=inventory.script,
        seed=seed,
        cl_name=cl_name or default_cl_name(language, seed),
        forward=_expand_case(core),
    )


def save_map(map_: CipherMap, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(map_.serialize())


def load_map(path) -> CipherMap:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != MAP_FILE_HEADER:
        raise MapFormatError(f"{path}: missing map header")
    meta: dict[str, str] = {}
    forward: dict[str, str] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if "=" in line and " " not in line:
            key, _, value = line.partition("=")
            meta[key] = value
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MapFormatError(f"{path}:{lineno}: expected 'SRC DST' hex pair")
        try:
            src, dst = (chr(int(p, 16)) for p in parts)
        except ValueError:
            raise MapFormatError(f"{path}:{lineno}: bad hex codepoint") from None
        forward[src] = dst
    missing = {"language", "script", "seed", "cl_name"} - set(meta)
    if missing:
        raise MapFormatError(f"{path}: missing header fields {sorted(missing)}")
    return CipherMap(
        language=meta["language"],
        script=meta["script"],
        seed=int(meta["seed"]),
        cl_name=meta["cl_name"],
        forward=forward,
    )


@dataclass
class MaterialBundle:
    """Everything a prompt can draw on for one (language, direction) run.

    Text fields live in plain form until cipher_bundle transforms them; the
    `ciphered` flag guards against double application.
    """

    language: str
    direction: str
    cl_name: str = ""
    lexicon: Lexicon | None = None
    oracle_lexicon: Lexicon | None = None
    pivot_language: str | None = None
    pivot_lexicon: Lexicon | None = None
    pivot_exemplars: list[Exemplar] = field(default_factory=list)
    pivot_annotations: dict[str, AnnotatedSentence] = field(default_factory=dict)
    exemplars: list[Exemplar] = field(default_factory=list)
    annotations: dict[str, AnnotatedSentence] = field(default_factory=dict)
    ne_glossary: dict[str, str] = field(default_factory=dict)
    syntax_profile: dict | None = None
    inflection_paradigms: str | None = None
    transliterations: dict[str, str] = field(default_factory=dict)
    ciphered: bool = False

    def __post_init__(self):
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}")


_PARADIGM_SNIPPET = re.compile(r"<([^<>]*)>")


def _cipher_lexicon(map_: CipherMap, lex: Lexicon, cipher_keys: bool) -> Lexicon:
    entries: dict[str, list[str]] = {}
    for key, targets in lex.entries.items():
        if cipher_keys:
            entries[map_.apply(key)] = list(targets)
        else:
            entries[key] = [map_.apply(t) for t in targets]
    return Lexicon(entries=entries, provenance=lex.provenance)


def _cipher_sentence(map_: CipherMap, sent: AnnotatedSentence) -> AnnotatedSentence:
    tokens = [
        replace(tok, surface=map_.apply(tok.surface), lemma=map_.apply(tok.lemma))
        for tok in sent.tokens
    ]
    text = map_.apply(sent.text) if sent.text else sent.text
    return replace(sent, tokens=tokens, text=text)


def cipher_bundle(map_: CipherMap, bundle: MaterialBundle) -> MaterialBundle:
    """Apply one map to every language-side text field of a bundle.

    For to-English runs the constructed language is the source: lexicon keys,
    exemplar sources, annotation surfaces/lemmas and glossary keys are
    ciphered. For from-English runs it is the target: lexicon targets,
    exemplar targets and glossary values are ciphered, while annotations
    (which describe the English input) stay plain. Paradigm documents cipher
    only their angle-bracket snippets; the markers are authoring syntax and
    are dropped from the output.
    """
    if bundle.ciphered:
        raise AlreadyCiphered("bundle is already ciphered")
    to_english = bundle.direction == TO_ENGLISH

    lexicon = bundle.lexicon and _cipher_lexicon(map_, bundle.lexicon, cipher_keys=to_english)
    oracle = bundle.oracle_lexicon and _cipher_lexicon(
        map_, bundle.oracle_lexicon, cipher_keys=to_english
    )
    # Pivot materials map pivot-language text to constructed-language text,
    # so only their target side is ever ciphered; pivot annotations describe
    # pivot-language text and stay plain.
    pivot = bundle.pivot_lexicon and _cipher_lexicon(map_, bundle.pivot_lexicon, cipher_keys=False)
    pivot_exemplars = [
        replace(ex, target=map_.apply(ex.target)) for ex in bundle.pivot_exemplars
    ]

    exemplars = [
        replace(
            ex,
            source=map_.apply(ex.source) if to_english else ex.source,
            target=ex.target if to_english else map_.apply(ex.target),
        )
        for ex in bundle.exemplars
    ]

    if to_english:
        annotations = {k: _cipher_sentence(map_, s) for k, s in bundle.annotations.items()}
        glossary = {map_.apply(k): v for k, v in bundle.ne_glossary.items()}
    else:
        annotations = dict(bundle.annotations)
        glossary = {k: map_.apply(v) for k, v in bundle.ne_glossary.items()}

    paradigms = bundle.inflection_paradigms
    if paradigms is not None:
        paradigms = _PARADIGM_SNIPPET.sub(lambda m: map_.apply(m.group(1)), paradigms)

    return replace(
        bundle,
        cl_name=bundle.cl_name or map_.cl_name,
        lexicon=lexicon,
        oracle_lexicon=oracle,
        pivot_lexicon=pivot,
        pivot_exemplars=pivot_exemplars,
        exemplars=exemplars,
        annotations=annotations,
        ne_glossary=glossary,
        inflection_paradigms=paradigms,
        ciphered=True,
    )
