"""Corpus annotation: CoNLL-U, named-entity spans, transliteration rows.

Engines share one contract: annotate_sentence(text) -> (tokens, spans).
The rule engine is deterministic and dependency-free; the stanza engine
wraps the neural pipeline when the package is installed. Both feed the
same emitters, so the files consumed downstream never depend on which
engine produced them.
"""

from __future__ import annotations

import json
import logging
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

log = logging.getLogger(__name__)

SUPPORTED = ("ces", "deu", "eng", "fra", "hin", "mar", "pol", "spa", "tel", "tur", "vie")

STANZA_LANG = {
    "ces": "cs", "deu": "de", "eng": "en", "fra": "fr", "hin": "hi",
    "mar": "mr", "pol": "pl", "spa": "es", "tel": "te", "tur": "tr",
    "vie": "vi",
}

TOKEN_RE = re.compile(r"\w+|[^\w\s]")

# Function words only; everything here is a closed class, never an entity.
CLOSED_CLASS: dict[str, dict[str, str]] = {
    "spa": {
        "el": "DET", "la": "DET", "los": "DET", "las": "DET",
        "un": "DET", "una": "DET", "unos": "DET", "unas": "DET",
        "de": "ADP", "del": "ADP", "a": "ADP", "al": "ADP", "en": "ADP",
        "por": "ADP", "con": "ADP", "para": "ADP", "sin": "ADP",
        "sobre": "ADP", "entre": "ADP", "ante": "ADP",
        "y": "CCONJ", "o": "CCONJ", "pero": "CCONJ",
        "que": "SCONJ", "cuando": "SCONJ", "cuándo": "ADV",
        "donde": "SCONJ", "dónde": "ADV", "como": "SCONJ", "si": "SCONJ",
        "no": "ADV", "ya": "ADV", "más": "ADV", "muy": "ADV",
        "se": "PRON", "su": "DET", "sus": "DET", "lo": "PRON", "le": "PRON",
        "nadie": "PRON", "esto": "PRON", "eso": "PRON",
        "es": "AUX", "son": "AUX", "fue": "AUX", "era": "AUX", "está": "AUX",
    },
    "eng": {
        "the": "DET", "a": "DET", "an": "DET", "this": "DET", "that": "DET",
        "of": "ADP", "to": "ADP", "in": "ADP", "on": "ADP", "at": "ADP",
        "by": "ADP", "with": "ADP", "from": "ADP", "for": "ADP",
        "and": "CCONJ", "or": "CCONJ", "but": "CCONJ",
        "when": "ADV", "where": "ADV", "not": "ADV",
        "it": "PRON", "he": "PRON", "she": "PRON", "they": "PRON",
        "is": "AUX", "are": "AUX", "was": "AUX", "were": "AUX", "be": "AUX",
    },
}

# (suffix, replacement) pairs mapping an inflected verb back to a citation
# form; checked longest-first, only for words long enough to carry a stem.
VERB_SUFFIXES: dict[str, tuple[tuple[str, str], ...]] = {
    "spa": (
        ("ieron", "er"), ("iendo", "er"), ("aron", "ar"), ("ando", "ar"),
        ("aba", "ar"), ("ará", "ar"), ("ó", "ar"), ("ió", "er"),
    ),
    "eng": (("ing", ""), ("ed", "")),
}


class UnsupportedLanguage(ValueError):
    def __init__(self, language: str):
        super().__init__(
            f"language {language!r} not supported (expected one of {', '.join(SUPPORTED)})"
        )


class CorpusError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Token:
    surface: str
    lemma: str
    upos: str
    feats: dict[str, str] = field(default_factory=dict)
    space_after: bool = True


@dataclass
class Span:
    start: int          # token index, inclusive
    end: int            # token index, exclusive
    label: str
    surface: str


@dataclass
class Sentence:
    sent_id: str
    text: str
    tokens: list[Token]
    spans: list[Span]


class RuleAnnotator:
    """Deterministic tagger: closed-class lists, suffix rules, casing NER."""

    name = "rule"

    def __init__(self, language: str):
        if language not in SUPPORTED:
            raise UnsupportedLanguage(language)
        self.language = language
        self._closed = CLOSED_CLASS.get(language, {})
        self._verb_suffixes = VERB_SUFFIXES.get(language, ())

    def annotate_sentence(self, text: str) -> tuple[list[Token], list[Span]]:
        matches = list(TOKEN_RE.finditer(text))
        tokens: list[Token] = []
        entity_flags: list[bool] = []
        seen_alpha = False
        for i, m in enumerate(matches):
            surface = m.group()
            next_start = matches[i + 1].start() if i + 1 < len(matches) else None
            space_after = next_start is None or next_start > m.end()
            tok, is_entity = self._tag(surface, seen_alpha)
            tok.space_after = space_after
            tokens.append(tok)
            entity_flags.append(is_entity)
            if any(c.isalpha() for c in surface):
                seen_alpha = True
        spans = _merge_entity_spans(tokens, entity_flags, matches, text)
        return tokens, spans

    def _tag(self, surface: str, seen_alpha: bool) -> tuple[Token, bool]:
        lower = surface.lower()
        if not any(c.isalnum() for c in surface):
            return Token(surface, surface, "PUNCT"), False
        if all(c.isdigit() for c in surface):
            return Token(surface, surface, "NUM"), False
        if lower in self._closed:
            return Token(surface, lower, self._closed[lower]), False
        # A capitalized word is an entity only after other alphabetic
        # material; sentence-initial casing carries no signal.
        if seen_alpha and surface[:1].isupper():
            return Token(surface, surface, "PROPN"), True
        for suffix, replacement in self._verb_suffixes:
            if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
                return Token(surface, lower[: -len(suffix)] + replacement, "VERB"), False
        if lower.endswith("s") and len(lower) > 3 and self.language in ("spa", "eng"):
            return Token(surface, lower[:-1], "NOUN", feats={"Number": "Plur"}), False
        return Token(surface, lower, "NOUN"), False


def _merge_entity_spans(
    tokens: list[Token],
    entity_flags: list[bool],
    matches: list[re.Match],
    text: str,
) -> list[Span]:
    """Adjacent entity tokens collapse into one span with its exact slice."""
    spans: list[Span] = []
    i = 0
    while i < len(tokens):
        if not entity_flags[i]:
            i += 1
            continue
        j = i
        while j + 1 < len(tokens) and entity_flags[j + 1]:
            j += 1
        surface = text[matches[i].start(): matches[j].end()]
        spans.append(Span(start=i, end=j + 1, label="MISC", surface=surface))
        i = j + 1
    return spans


class StanzaAnnotator:
    """Neural tagging/lemmas/NER via stanza, when installed."""

    name = "stanza"

    def __init__(self, language: str):
        if language not in SUPPORTED:
            raise UnsupportedLanguage(language)
        import stanza  # optional extra

        self.language = language
        code = STANZA_LANG[language]
        try:
            self._nlp = stanza.Pipeline(
                code, processors="tokenize,mwt,pos,lemma,ner",
                tokenize_no_ssplit=True, verbose=False,
            )
        except Exception:
            # Not every language ships an NER model.
            self._nlp = stanza.Pipeline(
                code, processors="tokenize,mwt,pos,lemma",
                tokenize_no_ssplit=True, verbose=False,
            )

    def annotate_sentence(self, text: str) -> tuple[list[Token], list[Span]]:
        doc = self._nlp(text)
        tokens: list[Token] = []
        starts: dict[int, int] = {}
        prev_end: int | None = None
        for sent in doc.sentences:
            for word in sent.words:
                tok = word.parent
                start = tok.start_char if tok.start_char is not None else 0
                if prev_end is not None and tokens:
                    tokens[-1].space_after = start > prev_end
                starts[start] = len(tokens)
                tokens.append(Token(
                    surface=word.text,
                    lemma=word.lemma or word.text,
                    upos=word.upos or "X",
                    feats=_parse_stanza_feats(word.feats),
                ))
                prev_end = tok.end_char
        spans: list[Span] = []
        for sent in doc.sentences:
            for ent in getattr(sent, "ents", []):
                first = starts.get(ent.start_char)
                if first is None:
                    continue
                width = max(1, len(ent.tokens))
                spans.append(Span(
                    start=first, end=first + width,
                    label=ent.type or "MISC", surface=ent.text,
                ))
        return tokens, spans


def _parse_stanza_feats(raw: str | None) -> dict[str, str]:
    if not raw:
        return {}
    feats: dict[str, str] = {}
    for item in raw.split("|"):
        key, _, value = item.partition("=")
        if key:
            feats[key] = value
    return feats


def build_annotator(language: str, engine: str = "auto"):
    if engine == "rule":
        return RuleAnnotator(language)
    if engine == "stanza":
        return StanzaAnnotator(language)
    if engine == "auto":
        try:
            return StanzaAnnotator(language)
        except ImportError:
            return RuleAnnotator(language)
    raise ValueError(f"unknown annotation engine {engine!r}")


def read_corpus(path: Path) -> list[tuple[str, str]]:
    """(sent_id, text) rows from a JSONL corpus or one-sentence-per-line text.

    JSONL rows carry their own ids ("sample_id" or "id") and text ("source"
    or "text"); plain lines get positional ids. Internal whitespace runs are
    collapsed so every sentence stays a single clean line downstream.
    """
    raw = path.read_text(encoding="utf-8")
    rows: list[tuple[str, str]] = []
    if path.suffix == ".jsonl":
        for lineno, line in enumerate(raw.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"bad JSON: {exc.msg}", lineno) from None
            sent_id = obj.get("sample_id") or obj.get("id")
            text = obj.get("source") or obj.get("text")
            if not sent_id or not text:
                raise CorpusError("need sample_id/id and source/text fields", lineno)
            rows.append((str(sent_id), " ".join(str(text).split())))
    else:
        for lineno, line in enumerate(raw.splitlines(), start=1):
            if line.strip():
                rows.append((f"s{lineno:04d}", " ".join(line.split())))
    return rows


def default_annotation(text: str) -> tuple[list[Token], list[Span]]:
    """Whitespace tokens, surface lemmas, UPOS X: the per-sentence fallback."""
    tokens = [Token(part, part, "X") for part in text.split()]
    return tokens, []


def annotate_corpus(annotator, rows: list[tuple[str, str]]) -> list[Sentence]:
    sentences = []
    for sent_id, text in rows:
        try:
            tokens, spans = annotator.annotate_sentence(text)
        except Exception:
            log.warning("annotation failed for %s; emitting defaults", sent_id,
                        exc_info=True)
            tokens, spans = default_annotation(text)
        sentences.append(Sentence(sent_id=sent_id, text=text, tokens=tokens,
                                  spans=spans))
    return sentences


def _feats_string(feats: dict[str, str]) -> str:
    if not feats:
        return "_"
    return "|".join(f"{k}={v}" for k, v in feats.items())


def render_conllu(sentences: list[Sentence]) -> str:
    blocks = []
    for sent in sentences:
        lines = [f"# sent_id = {sent.sent_id}", f"# text = {sent.text}"]
        for i, tok in enumerate(sent.tokens, start=1):
            misc = "_" if tok.space_after else "SpaceAfter=No"
            lines.append("\t".join([
                str(i), tok.surface, tok.lemma, tok.upos, "_",
                _feats_string(tok.feats), "_", "_", "_", misc,
            ]))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def render_spans(sentences: list[Sentence]) -> str:
    lines = []
    for sent in sentences:
        for span in sent.spans:
            lines.append("\t".join([
                sent.sent_id, str(span.start), str(span.end), span.label,
                span.surface,
            ]))
    return "\n".join(lines) + ("\n" if lines else "")


def _fold(surface: str) -> str:
    decomposed = unicodedata.normalize("NFD", surface)
    stripped = "".join(c for c in decomposed if unicodedata.category(c) != "Mn")
    return unicodedata.normalize("NFC", stripped)


def render_transliterations(sentences: list[Sentence]) -> str:
    """surface -> output-script suggestion rows, one per distinct entity.

    The suggestion is the mark-stripped fold of the surface; identity rows
    are kept so downstream lookups never miss a known entity.
    """
    entities = sorted({span.surface for sent in sentences for span in sent.spans})
    lines = [f"{surface}\t{_fold(surface)}" for surface in entities]
    return "\n".join(lines) + ("\n" if lines else "")


def run(input_path: Path, language: str, output_dir: Path,
        engine: str = "auto") -> dict:
    """Annotate a corpus file into a materials-style directory.

    Writes annotations.conllu, ne_spans.tsv and transliterations.tsv under
    output_dir and returns summary counts.
    """
    annotator = build_annotator(language, engine)
    rows = read_corpus(input_path)
    sentences = annotate_corpus(annotator, rows)
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / "annotations.conllu").write_text(
        render_conllu(sentences), encoding="utf-8")
    (output_dir / "ne_spans.tsv").write_text(
        render_spans(sentences), encoding="utf-8")
    (output_dir / "transliterations.tsv").write_text(
        render_transliterations(sentences), encoding="utf-8")
    return {
        "engine": annotator.name,
        "sentences": len(sentences),
        "entities": sum(len(s.spans) for s in sentences),
    }
