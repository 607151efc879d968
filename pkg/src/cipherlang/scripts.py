"""Character inventories for the supported writing systems.

Each script ships a JSON inventory that partitions its codepoints into
classes (Consonant, Vowel, and for Indic scripts VowelDiacritic), plus an
explicit Neutral list for signs that must survive ciphering untouched.
Per-language extension records add letters such as accented vowels and place
ambiguous letters (e.g. "y") into the right class for that language.

Inventories enumerate lowercase letters only; uppercase behaviour is derived
through case pairing at the cipher layer. Any codepoint outside the merged
inventory classifies as Neutral.
"""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from importlib import resources

NEUTRAL = "Neutral"

# Class iteration order is fixed so downstream seeded shuffles are stable.
CLASS_ORDER = ("Consonant", "Vowel", "VowelDiacritic", NEUTRAL)


class UnknownScript(KeyError):
    pass


class UnknownLanguage(KeyError):
    pass


def _load_json(name: str) -> dict:
    ref = resources.files("cipherlang").joinpath("data", name)
    return json.loads(ref.read_text(encoding="utf-8"))


def _load_languages() -> dict[str, dict]:
    return _load_json("languages.json")


LANGUAGES: dict[str, dict] = _load_languages()


def language_name(code: str) -> str:
    try:
        return LANGUAGES[code]["name"]
    except KeyError:
        raise UnknownLanguage(code) from None


def normalize(text: str) -> str:
    """Canonical (NFC) normalization applied to all ingested text."""
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class ScriptInventory:
    script: str
    language: str | None
    classes: dict[str, tuple[str, ...]]
    _class_of: dict[str, str] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        lookup: dict[str, str] = {}
        for cls in CLASS_ORDER:
            for ch in self.classes.get(cls, ()):
                if ch in lookup:
                    raise ValueError(
                        f"{self.script}: {ch!r} (U+{ord(ch):04X}) appears in "
                        f"both {lookup[ch]} and {cls}"
                    )
                lookup[ch] = cls
        object.__setattr__(self, "_class_of", lookup)

    @property
    def substitutable_classes(self) -> tuple[str, ...]:
        """Classes whose members participate in substitution."""
        return tuple(c for c in CLASS_ORDER if c != NEUTRAL and self.classes.get(c))

    def classify(self, ch: str) -> str:
        """Class of a single codepoint; Neutral for anything unlisted.

        Uppercase letters classify through their lowercase pair.
        """
        if len(ch) != 1:
            raise ValueError(f"classify expects one codepoint, got {ch!r}")
        cls = self._class_of.get(ch)
        if cls is not None:
            return cls
        low = ch.lower()
        if len(low) == 1 and low != ch:
            cls = self._class_of.get(low)
            if cls is not None:
                return cls
        return NEUTRAL

    def members(self, cls: str) -> tuple[str, ...]:
        return self.classes.get(cls, ())

    def is_neutral_token(self, token: str) -> bool:
        """True when every codepoint of the token classifies Neutral."""
        return all(self.classify(ch) == NEUTRAL for ch in token)


def _merge(base: dict[str, list[str]], extension: dict[str, list[str]]) -> dict[str, tuple[str, ...]]:
    merged: dict[str, tuple[str, ...]] = {}
    for cls in CLASS_ORDER:
        chars = list(base.get(cls, []))
        for ch in extension.get(cls, []):
            if ch not in chars:
                chars.append(ch)
        if chars:
            merged[cls] = tuple(chars)
    return merged


def script_for(language: str) -> str:
    try:
        return LANGUAGES[language]["script"]
    except KeyError:
        raise UnknownLanguage(language) from None


def load_script(script: str) -> dict:
    try:
        return _load_json(f"inventories/{script}.json")
    except FileNotFoundError:
        raise UnknownScript(script) from None


def inventory_for(language: str) -> ScriptInventory:
    """Merged inventory (base classes + language extension) for a language."""
    script = script_for(language)
    raw = load_script(script)
    extensions = raw.get("language_extensions", {})
    if language not in extensions and language != "eng":
        raise UnknownLanguage(f"{language} has no extension record in {script}")
    extension = extensions.get(language, {})
    return ScriptInventory(
        script=script,
        language=language,
        classes=_merge(raw["classes"], extension),
    )


def script_inventory(script: str) -> ScriptInventory:
    """Base inventory of a script with no language extension applied."""
    raw = load_script(script)
    return ScriptInventory(
        script=script,
        language=None,
        classes=_merge(raw["classes"], {}),
    )


def supported_languages() -> list[str]:
    return [code for code in LANGUAGES if code != "eng"]
