"""CoNLL-U parsing and named-entity material.

The annotation pipeline lives outside this package; here we parse its
CoNLL-U output, re-serialize it, reconstruct sentence text from recorded
spacing, and turn named-entity spans into the glossary material prompts use.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

CONLLU_COLUMNS = 10


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class AnnotatedToken:
    surface: str
    lemma: str
    upos: str
    feats: dict[str, str] = field(default_factory=dict)
    misc: str = ""
    ne_label: str | None = None

    @property
    def space_after(self) -> bool:
        return "SpaceAfter=No" not in self.misc

    def feats_string(self) -> str:
        if not self.feats:
            return "_"
        return "|".join(f"{k}={v}" for k, v in self.feats.items())


@dataclass(frozen=True)
class NESpan:
    start: int          # token index, inclusive
    end: int            # token index, exclusive
    label: str
    surface: str


@dataclass(frozen=True)
class AnnotatedSentence:
    sent_id: str
    tokens: tuple[AnnotatedToken, ...]
    text: str | None = None
    ne_spans: tuple[NESpan, ...] = ()

    def reconstructed_text(self) -> str:
        """Sentence text rebuilt from surfaces and recorded spacing."""
        if self.text is not None:
            return self.text
        parts = []
        for i, tok in enumerate(self.tokens):
            parts.append(tok.surface)
            if tok.space_after and i + 1 < len(self.tokens):
                parts.append(" ")
        return "".join(parts)


def _parse_feats(raw: str, line: int) -> dict[str, str]:
    if raw in ("_", ""):
        return {}
    feats: dict[str, str] = {}
    for item in raw.split("|"):
        if "=" not in item:
            raise ParseError(f"malformed feature {item!r}", line)
        key, _, value = item.partition("=")
        feats[key] = value
    return feats


def parse_conllu(text: str) -> list[AnnotatedSentence]:
    """Parse CoNLL-U text into sentences.

    Comments carry sent_id and text metadata; multiword-token range lines
    and empty nodes are dropped so tokens are the syntactic words. Missing
    lemmas default to the surface and missing UPOS to "X".
    """
    sentences: list[AnnotatedSentence] = []
    tokens: list[AnnotatedToken] = []
    meta: dict[str, str] = {}
    auto_id = 0

    def flush(line: int) -> None:
        nonlocal tokens, meta, auto_id
        if not tokens and not meta:
            return
        if not tokens:
            raise ParseError("sentence metadata without tokens", line)
        auto_id += 1
        sentences.append(AnnotatedSentence(
            sent_id=meta.get("sent_id", str(auto_id)),
            tokens=tuple(tokens),
            text=meta.get("text"),
        ))
        tokens = []
        meta = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush(lineno)
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            continue
        cols = line.split("\t")
        if len(cols) != CONLLU_COLUMNS:
            raise ParseError(f"expected {CONLLU_COLUMNS} columns, got {len(cols)}", lineno)
        token_id = cols[0]
        if "-" in token_id or "." in token_id:
            # Multiword ranges are flattened to their parts; empty nodes are
            # not surface tokens.
            continue
        surface = cols[1]
        lemma = cols[2] if cols[2] != "_" else surface
        upos = cols[3] if cols[3] != "_" else "X"
        tokens.append(AnnotatedToken(
            surface=surface,
            lemma=lemma,
            upos=upos,
            feats=_parse_feats(cols[5], lineno),
            misc=cols[9] if cols[9] != "_" else "",
        ))
    flush(len(text.splitlines()) + 1)
    return sentences


def dump_conllu(sentences: list[AnnotatedSentence]) -> str:
    """Serialize sentences back to CoNLL-U (head/deprel left unannotated)."""
    blocks = []
    for sent in sentences:
        lines = [f"# sent_id = {sent.sent_id}"]
        if sent.text is not None:
            lines.append(f"# text = {sent.text}")
        for i, tok in enumerate(sent.tokens, start=1):
            lines.append("\t".join([
                str(i),
                tok.surface,
                tok.lemma,
                tok.upos,
                "_",
                tok.feats_string(),
                "_",
                "_",
                "_",
                tok.misc or "_",
            ]))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def load_ne_spans(text: str) -> dict[str, list[NESpan]]:
    """Parse the NE span sidecar: sent_id, start, end, label, surface TSV."""
    spans: dict[str, list[NESpan]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 5:
            raise ParseError(f"expected 5 columns, got {len(cols)}", lineno)
        sent_id, start, end, label, surface = cols
        try:
            span = NESpan(start=int(start), end=int(end), label=label, surface=surface)
        except ValueError:
            raise ParseError("span bounds must be integers", lineno) from None
        spans.setdefault(sent_id, []).append(span)
    return spans


def attach_ne_spans(
    sentences: list[AnnotatedSentence], spans: dict[str, list[NESpan]]
) -> list[AnnotatedSentence]:
    out = []
    for sent in sentences:
        sent_spans = tuple(spans.get(sent.sent_id, ()))
        if not sent_spans:
            out.append(sent)
            continue
        tokens = list(sent.tokens)
        for span in sent_spans:
            for idx in range(span.start, min(span.end, len(tokens))):
                tokens[idx] = replace(tokens[idx], ne_label=span.label)
        out.append(replace(sent, tokens=tuple(tokens), ne_spans=sent_spans))
    return out


def ne_glossary(
    sentences: list[AnnotatedSentence] | dict[str, AnnotatedSentence],
    cipher_map=None,
    transliterations: dict[str, str] | None = None,
) -> dict[str, str]:
    """Entity glossary pairs drawn from NE spans.

    Keys are the entity surfaces passed through the cipher map (plain
    passthrough when no map is given); values are the output-side forms,
    taken from the transliteration table when scripts differ and from the
    plain surface otherwise.
    """
    if isinstance(sentences, dict):
        sentences = list(sentences.values())
    transliterations = transliterations or {}
    glossary: dict[str, str] = {}
    for sent in sentences:
        for span in sent.ne_spans:
            surface = span.surface
            key = cipher_map.apply(surface) if cipher_map is not None else surface
            if key not in glossary:
                glossary[key] = transliterations.get(surface, surface)
    return glossary
