"""Decipherment probe: can the model recover the underlying language?

The probe hands the model one ciphered sentence plus the usual in-context
materials and asks for four labeled answers: the underlying language, the
transformation, the recovered original text and an English translation.
Low decipherment overlap with the true plain source is the desired
outcome; it separates in-context learning from cipher breaking.

Probe prompts must never leak the plain source. ``leakage_check`` scans a
prompt for source words and is run before anything is sent out.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cipher import MaterialBundle
from .retrieval import DEFAULT_E, build_index
from .strategies import (
    SECTION_EXEMPLARS,
    SECTION_FINAL,
    SECTION_HEADER,
    SECTION_WORD_MEANINGS,
    PromptBundle,
    _exemplar_section,
    _word_meanings_section,
    load_template,
    strategy,
)

PROBE_LABELS = ("language", "cipher", "deciphered", "translation")

_LABEL_RE = re.compile(
    r"^[ \t>*#-]*(Language|Cipher|Deciphered|Translation)\b[ \t]*\**[ \t]*"
    r"[:–—-][ \t]*",
    re.IGNORECASE | re.MULTILINE,
)

_WORD_RE = re.compile(r"[^\W\d_]{5,}", re.UNICODE)


@dataclass(frozen=True)
class ProbeResponse:
    """Parsed four-step probe answer.

    ``parse_ok`` is True only when all four labels were found. On a parse
    failure the whole response lands in ``translation`` so downstream
    scoring still has something to chew on.
    """

    language: str = ""
    cipher: str = ""
    deciphered: str = ""
    translation: str = ""
    parse_ok: bool = False
    missing: tuple[str, ...] = ()


def build_probe_prompt(
    bundle: MaterialBundle,
    input_text: str,
    *,
    include_materials: bool = True,
    e: int = DEFAULT_E,
) -> PromptBundle:
    """Probe prompt: step instructions, optional materials, the input.

    Materials are the lexicon-and-exemplars rung; everything in them is
    ciphered, so the prompt carries no plain-source text.
    """
    if not bundle.ciphered:
        raise ValueError("probe prompts require a ciphered bundle")
    sections = [(SECTION_HEADER, load_template("probe_steps"))]
    name = "probe-bare"
    if include_materials and bundle.lexicon is not None and bundle.exemplars:
        name = "probe"
        index = build_index(bundle.exemplars)
        exemplar_text, _ = _exemplar_section(index, input_text, e)
        sections.append((SECTION_EXEMPLARS, exemplar_text))
        sections.append((
            SECTION_WORD_MEANINGS,
            _word_meanings_section(
                strategy("LE"), input_text, bundle.lexicon, {},
                bundle.ne_glossary, [],
            ),
        ))
    sections.append(
        (SECTION_FINAL, load_template("input_block").format(text=input_text))
    )
    return PromptBundle(strategy=name, sections=tuple(sections))


def parse_probe_response(text: str) -> ProbeResponse:
    """Pull the four labeled answers out of a model response.

    Labels may appear with markdown clutter or unusual casing; each answer
    runs until the next label. Missing labels are reported rather than
    fatal.
    """
    matches = list(_LABEL_RE.finditer(text))
    values: dict[str, str] = {}
    for i, m in enumerate(matches):
        label = m.group(1).lower()
        end = matches[i + 1].start() if i + 1 < len(matches) else len(text)
        if label not in values:
            values[label] = text[m.end():end].strip()
    missing = tuple(label for label in PROBE_LABELS if label not in values)
    if len(missing) == len(PROBE_LABELS):
        return ProbeResponse(translation=text.strip(), missing=missing)
    return ProbeResponse(
        language=values.get("language", ""),
        cipher=values.get("cipher", ""),
        deciphered=values.get("deciphered", ""),
        translation=values.get("translation", ""),
        parse_ok=not missing,
        missing=missing,
    )


def leakage_check(
    prompt_text: str, plain_source: str, allowlist: tuple[str, ...] = ()
) -> list[str]:
    """Plain-source words of five letters or more found in the prompt.

    Returns the offending words (empty list means clean). Entity names that
    legitimately survive the cipher go on the allowlist.
    """
    haystack = prompt_text.lower()
    allowed = {w.lower() for w in allowlist}
    violations = []
    for word in dict.fromkeys(_WORD_RE.findall(plain_source)):
        low = word.lower()
        if low in allowed:
            continue
        if low in haystack:
            violations.append(word)
    return violations
