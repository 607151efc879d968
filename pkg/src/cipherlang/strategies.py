"""Prompt strategies: material toggles and deterministic prompt assembly.

A strategy names which in-context materials accompany an input: lexicon
lookups, retrieved exemplars, lemma-keyed lookups, morphological analyses,
a syntax overview and inflection paradigms.  The ladder is monotone; each
rung adds one material on top of the previous rung.  All prompt wording
lives in versioned template files under ``data/templates`` so a change of
phrasing is a data change, not a code change.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .annotations import AnnotatedSentence
from .cipher import FROM_ENGLISH, TO_ENGLISH, MaterialBundle
from .lexicon import Lexicon, OracleStore, lookup, lookup_with_lemma, oracle_lookup
from .retrieval import DEFAULT_E, Bm25Index, build_index, top_e
from .scripts import language_name

TEMPLATE_VERSION = "v1"

SECTION_HEADER = "header"
SECTION_INPUT = "input"
SECTION_EXEMPLARS = "exemplars"
SECTION_WORD_MEANINGS = "word_meanings"
SECTION_MORPHOLOGY = "morphology"
SECTION_SYNTAX = "syntax"
SECTION_INFLECTION = "inflection"
SECTION_FINAL = "final"

TASK_KINDS = ("mmlu", "nli", "storycloze")


class MissingMaterial(Exception):
    """An enabled section's material is absent from the bundle."""

    def __init__(self, piece: str):
        super().__init__(f"missing material: {piece}")
        self.piece = piece


@lru_cache(maxsize=None)
def load_template(name: str, version: str = TEMPLATE_VERSION) -> str:
    ref = resources.files("cipherlang.data") / "templates" / version / f"{name}.txt"
    return ref.read_text(encoding="utf-8").rstrip("\n")


@dataclass(frozen=True)
class StrategyConfig:
    """Material toggles for one prompting strategy.

    Toggles form a chain: inflection needs syntax, syntax needs morphology,
    morphology needs lemmas, lemmas need exemplars, exemplars need the
    lexicon.  That keeps every configuration on the ladder comparable with
    the rungs below it.
    """

    name: str
    ciphered: bool = True
    llm: bool = True
    use_lexicon: bool = False
    use_exemplars: bool = False
    use_lemmas: bool = False
    use_morphology: bool = False
    use_syntax: bool = False
    use_inflection: bool = False
    lexicon_source: str = "standard"
    pivot: bool = False

    def __post_init__(self):
        chain = (
            self.use_lexicon,
            self.use_exemplars,
            self.use_lemmas,
            self.use_morphology,
            self.use_syntax,
            self.use_inflection,
        )
        for lower, upper in zip(chain, chain[1:]):
            if upper and not lower:
                raise ValueError(
                    f"strategy {self.name!r} breaks the material chain: "
                    "each material requires the one below it"
                )
        if self.lexicon_source not in ("standard", "oracle"):
            raise ValueError(f"unknown lexicon source: {self.lexicon_source!r}")
        if self.lexicon_source == "oracle" and not self.use_lexicon:
            raise ValueError("oracle lexicon source requires use_lexicon")
        if self.pivot and not self.use_lexicon:
            raise ValueError("pivot strategies require use_lexicon")

    @property
    def has_materials(self) -> bool:
        return self.use_lexicon or self.use_exemplars


def _ladder() -> dict[str, StrategyConfig]:
    configs = [
        StrategyConfig(name="topline", ciphered=False),
        StrategyConfig(name="only-input"),
        StrategyConfig(name="L-str", llm=False, use_lexicon=True),
        StrategyConfig(name="L", use_lexicon=True),
        StrategyConfig(name="LE", use_lexicon=True, use_exemplars=True),
        StrategyConfig(
            name="LELem", use_lexicon=True, use_exemplars=True, use_lemmas=True
        ),
        StrategyConfig(
            name="LELemM",
            use_lexicon=True,
            use_exemplars=True,
            use_lemmas=True,
            use_morphology=True,
        ),
        StrategyConfig(
            name="LELemMS",
            use_lexicon=True,
            use_exemplars=True,
            use_lemmas=True,
            use_morphology=True,
            use_syntax=True,
        ),
        StrategyConfig(
            name="LELemMSI",
            use_lexicon=True,
            use_exemplars=True,
            use_lemmas=True,
            use_morphology=True,
            use_syntax=True,
            use_inflection=True,
        ),
        StrategyConfig(
            name="Lcov-ELemMS",
            use_lexicon=True,
            use_exemplars=True,
            use_lemmas=True,
            use_morphology=True,
            use_syntax=True,
            lexicon_source="oracle",
        ),
        StrategyConfig(
            name="CLcov-ELemMS",
            use_lexicon=True,
            use_exemplars=True,
            use_lemmas=True,
            use_morphology=True,
            use_syntax=True,
            lexicon_source="oracle",
            pivot=True,
        ),
    ]
    return {cfg.name: cfg for cfg in configs}


LADDER: dict[str, StrategyConfig] = _ladder()

# The strictly monotone subchain: each rung's rendered sections are a
# superset of the previous rung's.
MONOTONE_CHAIN = ("L", "LE", "LELem", "LELemM", "LELemMS", "LELemMSI")


def strategy(name: str) -> StrategyConfig:
    try:
        return LADDER[name]
    except KeyError:
        raise KeyError(
            f"unknown strategy {name!r}; expected one of {sorted(LADDER)}"
        ) from None


# ---------------------------------------------------------------------------
# Syntax profiles


SYNTAX_FEATURE_KEYS = (
    "word_order",
    "object_verb",
    "adposition",
    "genitive",
    "adjective",
    "relative_clause",
    "interrogatives",
    "negation",
)


@dataclass(frozen=True)
class SyntaxProfile:
    """High-level typological sketch rendered into the syntax section.

    Feature values are complete display lines and may reference the
    constructed-language name via ``{cl_name}``.
    """

    family: str
    features: dict[str, str]
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        missing = [k for k in SYNTAX_FEATURE_KEYS if k not in self.features]
        if missing:
            raise ValueError(f"syntax profile missing features: {missing}")

    @classmethod
    def from_dict(cls, raw: dict) -> "SyntaxProfile":
        return cls(
            family=raw["family"],
            features=dict(raw["features"]),
            notes=tuple(raw.get("notes", ())),
        )

    def family_line(self, cl_name: str) -> str:
        article = "an" if self.family[:1].lower() in "aeiou" else "a"
        return f"{cl_name} is {article} {self.family} language."

    def render(self, cl_name: str) -> str:
        lines = [self.family_line(cl_name)]
        lines.extend(
            self.features[key].format(cl_name=cl_name) for key in SYNTAX_FEATURE_KEYS
        )
        lines.extend(note.format(cl_name=cl_name) for note in self.notes)
        return "\n".join(lines)


def load_syntax_profile(path: str | Path) -> SyntaxProfile:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return SyntaxProfile.from_dict(raw)


# ---------------------------------------------------------------------------
# Tokenization helpers shared by the word-meaning section and the
# word-for-word baseline.


def split_token(token: str) -> tuple[str, str, str]:
    """Split a whitespace token into (prefix punctuation, core, suffix).

    Only punctuation and symbol characters are peeled off; combining marks
    stay attached so Indic tokens keep their diacritics.
    """
    start, end = 0, len(token)
    while start < end and unicodedata.category(token[start])[0] in "PS":
        start += 1
    while end > start and unicodedata.category(token[end - 1])[0] in "PS":
        end -= 1
    return token[:start], token[start:end], token[end:]


def _is_word(core: str) -> bool:
    return any(ch.isalpha() for ch in core)


# ---------------------------------------------------------------------------
# Prompt assembly


@dataclass(frozen=True)
class PromptBundle:
    """One assembled prompt plus enough structure to inspect it."""

    strategy: str
    sections: tuple[tuple[str, str], ...]
    template_version: str = TEMPLATE_VERSION
    metadata: dict = field(default_factory=dict)

    @property
    def full_prompt(self) -> str:
        return "\n\n".join(text for _, text in self.sections)

    @property
    def section_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.sections)

    def section(self, name: str) -> str | None:
        for section_name, text in self.sections:
            if section_name == name:
                return text
        return None


def _header(
    cfg: StrategyConfig,
    src_label: str,
    tgt_label: str,
    cl_name: str,
    profile: SyntaxProfile | None,
) -> str:
    instruction = load_template("mt_instruction").format(src=src_label, tgt=tgt_label)
    if not cfg.ciphered:
        return instruction
    if cfg.use_syntax and profile is not None:
        intro = load_template("mt_intro_family").format(
            cl_name=cl_name, family=profile.family
        )
    else:
        intro = load_template("mt_intro").format(cl_name=cl_name)
    return f"{intro}\n\n{instruction}"


def _exemplar_section(index: Bm25Index, query: str, e: int) -> tuple[str, list[str]]:
    picked = top_e(index, query, e=e)
    lines = [load_template("exemplars_intro")]
    for i, ex in enumerate(picked, 1):
        lines.append(f"Input{i}: {ex.source}")
        lines.append(f"Output{i}: {ex.target}")
    return "\n".join(lines), [ex.exemplar_id for ex in picked]


def _lemma_index(annotation: AnnotatedSentence | None) -> dict[str, str]:
    if annotation is None:
        return {}
    index: dict[str, str] = {}
    for tok in annotation.tokens:
        index.setdefault(tok.surface.lower(), tok.lemma)
    return index


def _word_meaning_lines(
    cfg: StrategyConfig,
    input_text: str,
    lexicon: Lexicon,
    lemma_of: dict[str, str],
    oracle_misses: list[str],
) -> list[str]:
    lines: list[str] = []
    seen_cores: set[str] = set()
    seen_keys: set[str] = set()
    oracle_store = (
        OracleStore(lexicon=lexicon) if cfg.lexicon_source == "oracle" else None
    )
    for token in input_text.split():
        _, core, _ = split_token(token)
        if not core or not _is_word(core) or core.lower() in seen_cores:
            continue
        seen_cores.add(core.lower())
        if oracle_store is not None:
            targets = oracle_lookup(oracle_store, core)
            if targets is None:
                continue
            if core not in seen_keys:
                seen_keys.add(core)
                lines.append(f"{core} - {','.join(targets[:2])}")
            continue
        if cfg.use_lemmas:
            matches = lookup_with_lemma(lexicon, core, lemma_of.get(core.lower()))
        else:
            matches = lookup(lexicon, core)
        for match in matches:
            if match.matched_key in seen_keys:
                continue
            seen_keys.add(match.matched_key)
            lines.append(f"{match.matched_key} - {','.join(match.targets)}")
    if oracle_store is not None:
        oracle_misses.extend(oracle_store.misses)
    return lines


def _word_meanings_section(
    cfg: StrategyConfig,
    input_text: str,
    lexicon: Lexicon | None,
    lemma_of: dict[str, str],
    glossary: dict[str, str],
    oracle_misses: list[str],
) -> str:
    if lexicon is None:
        piece = "oracle lexicon" if cfg.lexicon_source == "oracle" else "lexicon"
        raise MissingMaterial(piece)
    lines = _word_meaning_lines(cfg, input_text, lexicon, lemma_of, oracle_misses)
    # Named-entity glossary entries ride along whenever they exist, so the
    # model never has to guess at proper names.
    covered = {line.split(" - ")[0] for line in lines}
    for key, value in glossary.items():
        if key not in covered:
            lines.append(f"{key} - {value}")
    return "\n".join([load_template("word_meanings_intro")] + lines)


def _morphology_section(annotation: AnnotatedSentence) -> str:
    lines = [load_template("morphology_intro")]
    for tok in annotation.tokens:
        feats = tok.feats_string()
        display = "-" if feats == "_" else feats
        lines.append(
            f"{tok.surface}: POS: {tok.upos}, Lemma: {tok.lemma}, Features: {display}"
        )
    return "\n".join(lines)


def _assemble(
    cfg: StrategyConfig,
    input_text: str,
    *,
    strategy_name: str,
    cl_name: str,
    src_label: str,
    tgt_label: str,
    profile: SyntaxProfile | None,
    lexicon: Lexicon | None,
    exemplar_index: Bm25Index | None,
    e: int,
    annotation: AnnotatedSentence | None,
    paradigms: str | None,
    glossary: dict[str, str],
    sample_id: str | None,
    header_override: str | None = None,
    suppress: frozenset[str] = frozenset(),
) -> PromptBundle:
    sections: list[tuple[str, str]] = []
    metadata: dict = {
        "sample_id": sample_id,
        "cl_name": cl_name,
        "src_label": src_label,
        "tgt_label": tgt_label,
    }
    header = header_override or _header(cfg, src_label, tgt_label, cl_name, profile)
    sections.append((SECTION_HEADER, header))

    if cfg.has_materials:
        sections.append(
            (SECTION_INPUT, load_template("input_block").format(text=input_text))
        )
        if cfg.use_exemplars:
            if exemplar_index is None:
                raise MissingMaterial("exemplars")
            text, picked = _exemplar_section(exemplar_index, input_text, e)
            sections.append((SECTION_EXEMPLARS, text))
            metadata["exemplar_ids"] = picked
        if cfg.use_lexicon:
            # Suppressed morphology signals annotation-free assembly, so
            # lemma lookups quietly degrade to surface lookups there.
            if (
                cfg.use_lemmas
                and annotation is None
                and cfg.lexicon_source != "oracle"
                and SECTION_MORPHOLOGY not in suppress
            ):
                raise MissingMaterial(f"annotation for sample {sample_id}")
            oracle_misses: list[str] = []
            sections.append(
                (
                    SECTION_WORD_MEANINGS,
                    _word_meanings_section(
                        cfg,
                        input_text,
                        lexicon,
                        _lemma_index(annotation),
                        glossary,
                        oracle_misses,
                    ),
                )
            )
            if oracle_misses:
                metadata["oracle_misses"] = oracle_misses
        if cfg.use_morphology and SECTION_MORPHOLOGY not in suppress:
            if annotation is None:
                raise MissingMaterial(f"annotation for sample {sample_id}")
            sections.append((SECTION_MORPHOLOGY, _morphology_section(annotation)))
        if cfg.use_syntax:
            if profile is None:
                raise MissingMaterial("syntax profile")
            text = "\n".join(
                [
                    load_template("syntax_intro").format(cl_name=cl_name),
                    profile.render(cl_name),
                ]
            )
            sections.append((SECTION_SYNTAX, text))
        if cfg.use_inflection:
            if paradigms is None:
                raise MissingMaterial("inflection paradigms")
            text = "\n".join(
                [load_template("inflection_intro").format(cl_name=cl_name), paradigms.strip()]
            )
            sections.append((SECTION_INFLECTION, text))
        sections.append(
            (SECTION_FINAL, load_template("final_block").format(text=input_text))
        )
    else:
        sections.append(
            (SECTION_FINAL, load_template("final_block_bare").format(text=input_text))
        )
    return PromptBundle(
        strategy=strategy_name,
        sections=tuple(sections),
        metadata=metadata,
    )


def _labels(cfg: StrategyConfig, bundle: MaterialBundle) -> tuple[str, str]:
    native = bundle.cl_name if cfg.ciphered else language_name(bundle.language)
    if bundle.direction == TO_ENGLISH:
        return native, "English"
    return "English", native


class PromptFactory:
    """Renders prompts for one prepared bundle.

    Builds the exemplar retrieval indexes once, then assembles any number
    of prompts.  ``bundle`` must already be ciphered when rendering a
    ciphered strategy.
    """

    def __init__(self, bundle: MaterialBundle, e: int = DEFAULT_E):
        self.bundle = bundle
        self.e = e
        self._index = build_index(bundle.exemplars) if bundle.exemplars else None
        self._pivot_index = (
            build_index(bundle.pivot_exemplars) if bundle.pivot_exemplars else None
        )
        profile = bundle.syntax_profile
        if isinstance(profile, dict):
            profile = SyntaxProfile.from_dict(profile)
        self.profile: SyntaxProfile | None = profile

    def render(
        self, cfg: StrategyConfig, input_text: str, sample_id: str | None = None
    ) -> PromptBundle:
        if cfg.pivot:
            raise ValueError("pivot strategies render through pivot_plan")
        if cfg.ciphered and not self.bundle.ciphered:
            raise ValueError(f"strategy {cfg.name} needs a ciphered bundle")
        src_label, tgt_label = _labels(cfg, self.bundle)
        return _assemble(
            cfg,
            input_text,
            strategy_name=cfg.name,
            cl_name=self.bundle.cl_name,
            src_label=src_label,
            tgt_label=tgt_label,
            profile=self.profile,
            lexicon=(
                self.bundle.oracle_lexicon
                if cfg.lexicon_source == "oracle"
                else self.bundle.lexicon
            ),
            exemplar_index=self._index,
            e=self.e,
            annotation=self.bundle.annotations.get(sample_id) if sample_id else None,
            paradigms=self.bundle.inflection_paradigms,
            glossary=self.bundle.ne_glossary,
            sample_id=sample_id,
        )

    def render_task(
        self,
        cfg: StrategyConfig,
        task: str,
        item_text: str,
        item_id: str | None = None,
        language_label: str | None = None,
    ) -> PromptBundle:
        """Assemble a task prompt: task instruction, then MT-style materials."""
        if task not in TASK_KINDS:
            raise ValueError(f"unknown task {task!r}; expected one of {TASK_KINDS}")
        if language_label is None:
            language_label = (
                self.bundle.cl_name if cfg.ciphered else language_name(self.bundle.language)
            )
        header = load_template(f"task_{task}").format(language_label=language_label)
        prompt = _assemble(
            cfg,
            item_text,
            strategy_name=f"{cfg.name}:{task}",
            cl_name=self.bundle.cl_name,
            src_label=language_label,
            tgt_label=language_label,
            profile=self.profile,
            lexicon=(
                self.bundle.oracle_lexicon
                if cfg.lexicon_source == "oracle"
                else self.bundle.lexicon
            ),
            exemplar_index=self._index,
            e=self.e,
            annotation=self.bundle.annotations.get(item_id) if item_id else None,
            paradigms=self.bundle.inflection_paradigms,
            glossary=self.bundle.ne_glossary,
            sample_id=item_id,
            header_override=header,
        )
        return prompt

    def pivot_plan(
        self, cfg: StrategyConfig, input_text: str, sample_id: str | None = None
    ) -> "PivotPlan":
        bundle = self.bundle
        if not cfg.pivot:
            raise ValueError(f"strategy {cfg.name} is not a pivot strategy")
        if bundle.direction != FROM_ENGLISH:
            raise ValueError("pivot strategies are defined for from-English runs")
        if bundle.pivot_language is None:
            raise MissingMaterial("pivot language")
        if bundle.pivot_lexicon is None:
            raise MissingMaterial("pivot lexicon")
        if self._pivot_index is None:
            raise MissingMaterial("pivot exemplars")
        pivot_label = language_name(bundle.pivot_language)
        instruction = load_template("mt_instruction").format(
            src="English", tgt=pivot_label
        )
        stage1 = PromptBundle(
            strategy=f"{cfg.name}:stage1",
            sections=(
                (SECTION_HEADER, instruction),
                (
                    SECTION_FINAL,
                    load_template("final_block_bare").format(text=input_text),
                ),
            ),
            metadata={
                "sample_id": sample_id,
                "src_label": "English",
                "tgt_label": pivot_label,
            },
        )
        return PivotPlan(
            factory=self, cfg=cfg, sample_id=sample_id, stage1_prompt=stage1
        )


@dataclass
class PivotPlan:
    """Two-stage cascade: English to pivot language, pivot to target.

    Stage two can only be assembled once the stage-one completion exists;
    ``build_stage2`` takes that completion text.
    """

    factory: PromptFactory
    cfg: StrategyConfig
    sample_id: str | None
    stage1_prompt: PromptBundle

    def _pivot_annotation(self, pivot_text: str) -> AnnotatedSentence | None:
        # Morphology must describe the actual stage-two input, so an
        # annotation is used only when its text matches the pivot text.
        for sent in self.factory.bundle.pivot_annotations.values():
            if sent.reconstructed_text() == pivot_text:
                return sent
        return None

    def build_stage2(self, pivot_text: str) -> PromptBundle:
        bundle = self.factory.bundle
        cfg = self.cfg
        annotation = self._pivot_annotation(pivot_text)
        # Morphology is rendered only when an annotation of the actual
        # pivot text exists; describing other text would mislead.
        suppress = (
            frozenset() if annotation is not None else frozenset({SECTION_MORPHOLOGY})
        )
        pivot_label = language_name(bundle.pivot_language)
        # Stage two looks words up in the pivot lexicon with standard fuzzy
        # matching: the pivot text is model output, so exact coverage
        # cannot be assumed.
        stage2_cfg = replace(cfg, lexicon_source="standard")
        return _assemble(
            stage2_cfg,
            pivot_text,
            strategy_name=f"{cfg.name}:stage2",
            cl_name=bundle.cl_name,
            src_label=pivot_label,
            tgt_label=bundle.cl_name,
            profile=self.factory.profile,
            lexicon=bundle.pivot_lexicon,
            exemplar_index=self.factory._pivot_index,
            e=self.factory.e,
            annotation=annotation,
            paradigms=bundle.inflection_paradigms,
            glossary={},
            sample_id=self.sample_id,
            suppress=suppress,
        )


def render_prompt(
    cfg: StrategyConfig,
    input_text: str,
    bundle: MaterialBundle,
    sample_id: str | None = None,
    e: int = DEFAULT_E,
) -> PromptBundle:
    """One-shot prompt assembly; use PromptFactory for repeated rendering."""
    return PromptFactory(bundle, e=e).render(cfg, input_text, sample_id=sample_id)


# ---------------------------------------------------------------------------
# Non-LLM word-for-word baseline


def word_for_word(text: str, lexicon: Lexicon) -> str:
    """Deterministic token-by-token gloss through the lexicon.

    Each whitespace token is looked up by its punctuation-stripped core;
    the best match's first translation replaces the core and edge
    punctuation is kept.  Unmatched and non-word tokens are copied
    verbatim.
    """
    out = []
    for token in text.split():
        prefix, core, suffix = split_token(token)
        if not core or not _is_word(core):
            out.append(token)
            continue
        matches = lookup(lexicon, core)
        if not matches:
            out.append(token)
            continue
        out.append(prefix + matches[0].targets[0] + suffix)
    return " ".join(out)
