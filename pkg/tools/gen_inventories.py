"""Regenerate the script inventory data files.

The inventories are committed as JSON under src/cipherlang/data/inventories/.
This script exists so the letter classes are built from explicit codepoint
ranges instead of hand-typed strings; rerun it after editing the tables below.
"""

import json
import unicodedata
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "cipherlang" / "data" / "inventories"

LATIN_VOWELS = list("aeiou")
LATIN_CONSONANTS = list("bcdfghjklmnpqrstvwxz")

# Combining tones used to build the Vietnamese precomposed vowel set.
VI_TONES = ["́", "̀", "̉", "̃", "̣"]
VI_VOWEL_BASES = list("aăâeêioôơuưy")  # a ă â e ê i o ô ơ u ư y


def vi_vowels() -> list[str]:
    out = []
    for base in VI_VOWEL_BASES:
        if base not in LATIN_VOWELS:
            out.append(base)
        for tone in VI_TONES:
            composed = unicodedata.normalize("NFC", base + tone)
            if len(composed) != 1:
                raise SystemExit(f"no precomposed form for {base!r}+{tone!r}")
            out.append(composed)
    return out


def cps(*ranges: tuple[int, int], skip: tuple[int, ...] = ()) -> list[str]:
    out = []
    for lo, hi in ranges:
        for cp in range(lo, hi + 1):
            if cp in skip:
                continue
            unicodedata.name(chr(cp))  # raises on unassigned codepoints
            out.append(chr(cp))
    return out


LATIN_EXT = {
    "script": "latin_ext",
    "classes": {
        "Consonant": LATIN_CONSONANTS,
        "Vowel": LATIN_VOWELS,
        "Neutral": [],
    },
    "language_extensions": {
        # Each language must place "y"; base classes keep only the letters
        # whose class is the same in every supported Latin-script language.
        "deu": {"Vowel": list("äöüy"), "Consonant": ["ß"]},
        "tur": {"Vowel": list("ıöü"), "Consonant": list("çğşy")},
        "fra": {"Vowel": list("àâéèêëîïôùûüœ"), "Consonant": list("çy")},
        "spa": {"Vowel": list("áéíóúü"), "Consonant": list("ñy")},
        "vie": {"Vowel": vi_vowels(), "Consonant": ["đ"]},
        "ces": {"Vowel": list("áéíóúýěůy"), "Consonant": list("čďňřšťž")},
        "pol": {"Vowel": list("ąęóy"), "Consonant": list("ćłńśźż")},
    },
}

DEVANAGARI = {
    "script": "devanagari",
    "classes": {
        # 0x0929/0x0931/0x0934 are Dravidian-borrowed letters unused in
        # Hindi/Marathi; they stay out of the inventory and pass through.
        "Consonant": cps((0x0915, 0x0939), skip=(0x0929, 0x0931, 0x0934)),
        "Vowel": cps((0x0905, 0x0914)),
        "VowelDiacritic": cps((0x093E, 0x094C)),
        # Virama, nukta and the nasal signs stay fixed so conjunct and
        # nasalisation conventions survive ciphering.
        "Neutral": cps((0x0901, 0x0903), (0x093C, 0x093C), (0x094D, 0x094D),
                       (0x0964, 0x0965), (0x0966, 0x0970), (0x200C, 0x200D)),
    },
    "language_extensions": {
        "hin": {},
        "mar": {},
    },
}

TELUGU = {
    "script": "telugu",
    "classes": {
        "Consonant": cps((0x0C15, 0x0C39), skip=(0x0C29, 0x0C34)),
        "Vowel": cps((0x0C05, 0x0C14), skip=(0x0C0D, 0x0C11)),
        "VowelDiacritic": cps((0x0C3E, 0x0C44), (0x0C46, 0x0C48), (0x0C4A, 0x0C4C)),
        "Neutral": cps((0x0C01, 0x0C03), (0x0C4D, 0x0C4D), (0x0C55, 0x0C56),
                       (0x0C66, 0x0C6F), (0x200C, 0x200D)),
    },
    "language_extensions": {
        "tel": {},
    },
}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for table in (LATIN_EXT, DEVANAGARI, TELUGU):
        path = OUT_DIR / f"{table['script']}.json"
        path.write_text(json.dumps(table, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
