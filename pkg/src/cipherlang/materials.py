"""Loading prompt materials and parallel data from a directory on disk.

A materials directory holds one language pair worth of files under
conventional names:

    testset.jsonl            parallel sentences: id, source, target, domain
    exemplars.jsonl          retrieval pool, source side in the language
    lexicon.tsv              word -> translations, language to English
    lexicon_eng.tsv          word -> translations, English to language
    oracle_lexicon.tsv       full-coverage lexicon for oracle runs
    annotations.conllu       morphology for the language side of the test set
    annotations_eng.conllu   morphology for the English side (optional)
    ne_spans.tsv             named entity spans over source sentences
    transliterations.tsv     entity surface -> output-script form
    syntax_profile.json      typological feature sheet
    paradigms.txt            verbal inflection document, snippets in <...>
    pivot/lexicon.tsv        pivot word -> language word (optional)
    pivot/exemplars.jsonl    pivot -> language pairs (optional)
    pivot/annotations.conllu morphology for known pivot sentences (optional)

Everything loads in plain form; cipher_bundle is applied afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .annotations import load_ne_spans, attach_ne_spans, ne_glossary, parse_conllu
from .cipher import FROM_ENGLISH, TO_ENGLISH, MaterialBundle
from .lexicon import Lexicon
from .retrieval import Exemplar, load_exemplars


class MissingFile(FileNotFoundError):
    """A required materials file is absent."""


@dataclass(frozen=True)
class Sample:
    sample_id: str
    source: str
    target: str
    domain: str = ""


def load_samples(path: Path) -> list[Sample]:
    samples = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        samples.append(Sample(
            sample_id=str(obj["id"]),
            source=obj["source"],
            target=obj["target"],
            domain=obj.get("domain", ""),
        ))
    return samples


def _read(path: Path, required: bool) -> str | None:
    if not path.exists():
        if required:
            raise MissingFile(str(path))
        return None
    return path.read_text(encoding="utf-8")


def _load_lexicon(path: Path, required: bool) -> Lexicon | None:
    text = _read(path, required)
    return None if text is None else Lexicon.from_tsv(text)


def _load_annotations(path: Path, required: bool) -> dict:
    text = _read(path, required)
    if text is None:
        return {}
    return {sent.sent_id: sent for sent in parse_conllu(text)}


def _swap(pool: list[Exemplar]) -> list[Exemplar]:
    return [
        Exemplar(exemplar_id=ex.exemplar_id, source=ex.target,
                 target=ex.source, domain=ex.domain)
        for ex in pool
    ]


def load_bundle(
    root: Path | str,
    language: str,
    direction: str,
    *,
    pivot_language: str | None = None,
) -> MaterialBundle:
    """Assemble the plain-text bundle for one direction.

    For to-English runs the stored orientation is used as is. For
    from-English runs the English-keyed lexicon and annotations are picked
    up and the exemplar pool is swapped so its source side is English.
    Pivot materials load only when requested and present.
    """
    root = Path(root)
    to_english = direction == TO_ENGLISH

    exemplars = load_exemplars(_read(root / "exemplars.jsonl", required=True))
    if not to_english:
        exemplars = _swap(exemplars)

    if to_english:
        lexicon = _load_lexicon(root / "lexicon.tsv", required=True)
        oracle = _load_lexicon(root / "oracle_lexicon.tsv", required=False)
        annotations = _load_annotations(root / "annotations.conllu", required=True)
    else:
        lexicon = _load_lexicon(root / "lexicon_eng.tsv", required=True)
        oracle = _load_lexicon(root / "oracle_lexicon_eng.tsv", required=False)
        annotations = _load_annotations(root / "annotations_eng.conllu", required=False)

    # Entity spans always describe the language-side sentences; the glossary
    # keys are entity surfaces and work for either direction because names
    # are copied, not translated.
    translits = {}
    text = _read(root / "transliterations.tsv", required=False)
    if text:
        for line in text.splitlines():
            if line.strip() and "\t" in line:
                surface, _, form = line.partition("\t")
                translits[surface] = form
    glossary: dict[str, str] = {}
    spans_text = _read(root / "ne_spans.tsv", required=False)
    if spans_text:
        lang_sentences = _load_annotations(root / "annotations.conllu", required=True)
        spans = load_ne_spans(spans_text)
        tagged = attach_ne_spans(list(lang_sentences.values()), spans)
        glossary = ne_glossary(tagged, transliterations=translits)
        if to_english:
            annotations = {sent.sent_id: sent for sent in tagged}

    profile = None
    text = _read(root / "syntax_profile.json", required=False)
    if text:
        profile = json.loads(text)

    pivot_lexicon = None
    pivot_exemplars: list[Exemplar] = []
    pivot_annotations: dict = {}
    if pivot_language is not None:
        pivot_lexicon = _load_lexicon(root / "pivot" / "lexicon.tsv", required=True)
        pivot_text = _read(root / "pivot" / "exemplars.jsonl", required=True)
        pivot_exemplars = load_exemplars(pivot_text)
        pivot_annotations = _load_annotations(
            root / "pivot" / "annotations.conllu", required=False
        )

    return MaterialBundle(
        language=language,
        direction=direction,
        lexicon=lexicon,
        oracle_lexicon=oracle,
        pivot_language=pivot_language,
        pivot_lexicon=pivot_lexicon,
        pivot_exemplars=pivot_exemplars,
        pivot_annotations=pivot_annotations,
        exemplars=exemplars,
        annotations=annotations,
        ne_glossary=glossary,
        syntax_profile=profile,
        inflection_paradigms=_read(root / "paradigms.txt", required=False),
        transliterations=translits,
    )
