"""SLP1 alphabet, phone categories, and code-point classification.

Every algorithm in the toolkit operates on SLP1 text: one code point per
phoneme. The core alphabet is the Scharf-Hyman inventory for Sanskrit;
Gujarati and Telugu get a handful of single-code-point extensions for
native sounds Sanskrit lacks (short e/o, candra e/o, retroflex ṟ).

All sets and functions here are constants / pure functions, safe for
unrestricted concurrent use.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple

ANUSVARA = "M"
VISARGA = "H"
CANDRABINDU = "~"
AVAGRAHA = "'"

SHORT_VOWELS = frozenset("aiufx")
LONG_VOWELS = frozenset("AIUFX")
DIPHTHONGS = frozenset("eEoO")
CORE_CONSONANTS = frozenset("kKgGNcCjJYwWqQRtTdDnpPbBmyrlvLSzsh")

# Extensions beyond core SLP1, one precomposed code point each (all 52 ASCII
# letters are taken). Telugu: short e/o and retroflex ṟ; Gujarati: candra e/o.
TELUGU_SHORT_E = "ĕ"   # ĕ
TELUGU_SHORT_O = "ŏ"   # ŏ
TELUGU_RRA = "ṟ"       # ṟ
GUJARATI_CANDRA_E = "ê"  # ê
GUJARATI_CANDRA_O = "ô"  # ô

EXTENSION_VOWELS = frozenset(
    {TELUGU_SHORT_E, TELUGU_SHORT_O, GUJARATI_CANDRA_E, GUJARATI_CANDRA_O}
)
EXTENSION_CONSONANTS = frozenset({TELUGU_RRA})

SCRIPT_EXTENSIONS = {
    "devanagari": frozenset(),
    "gujarati": frozenset({GUJARATI_CANDRA_E, GUJARATI_CANDRA_O}),
    "telugu": frozenset({TELUGU_SHORT_E, TELUGU_SHORT_O, TELUGU_RRA}),
}

VOWELS = SHORT_VOWELS | LONG_VOWELS | DIPHTHONGS | EXTENSION_VOWELS
CONSONANTS = CORE_CONSONANTS | EXTENSION_CONSONANTS
SIGNS = frozenset({ANUSVARA, VISARGA, CANDRABINDU})

CORE_ALPHABET = (
    SHORT_VOWELS | LONG_VOWELS | DIPHTHONGS | CORE_CONSONANTS
    | SIGNS | frozenset({AVAGRAHA})
)

DIGITS = frozenset("0123456789")
PUNCTUATION = frozenset('.,;:?!()"-')


class PhoneCategory(Enum):
    SHORT_VOWEL = "short_vowel"
    LONG_VOWEL = "long_vowel"
    DIPHTHONG = "diphthong"
    CONSONANT = "consonant"
    ANUSVARA = "anusvara"
    VISARGA = "visarga"
    CANDRABINDU = "candrabindu"
    AVAGRAHA = "avagraha"
    DIGIT = "digit"
    SPACE = "space"
    PUNCTUATION = "punctuation"
    OTHER = "other"


class Coarse(Enum):
    """Projection onto the vowel/consonant split used by segmentation."""

    V = "V"
    C = "C"
    NEUTRAL = "neutral"


_COARSE = {
    PhoneCategory.SHORT_VOWEL: Coarse.V,
    PhoneCategory.LONG_VOWEL: Coarse.V,
    PhoneCategory.DIPHTHONG: Coarse.V,
    PhoneCategory.CONSONANT: Coarse.C,
    # Anusvara, visarga and candrabindu count as consonants for segmentation
    # and for the heavy-syllable rule.
    PhoneCategory.ANUSVARA: Coarse.C,
    PhoneCategory.VISARGA: Coarse.C,
    PhoneCategory.CANDRABINDU: Coarse.C,
}


def classify(code: str) -> PhoneCategory:
    """Classify one SLP1 code point. Total: unknown codes map to OTHER."""
    if len(code) != 1:
        raise ValueError(f"classify expects a single code point, got {code!r}")
    if code in SHORT_VOWELS or code in EXTENSION_VOWELS:
        return PhoneCategory.SHORT_VOWEL
    if code in LONG_VOWELS:
        return PhoneCategory.LONG_VOWEL
    if code in DIPHTHONGS:
        return PhoneCategory.DIPHTHONG
    if code in CONSONANTS:
        return PhoneCategory.CONSONANT
    if code == ANUSVARA:
        return PhoneCategory.ANUSVARA
    if code == VISARGA:
        return PhoneCategory.VISARGA
    if code == CANDRABINDU:
        return PhoneCategory.CANDRABINDU
    if code == AVAGRAHA:
        return PhoneCategory.AVAGRAHA
    if code in DIGITS:
        return PhoneCategory.DIGIT
    if code.isspace():
        return PhoneCategory.SPACE
    if code in PUNCTUATION:
        return PhoneCategory.PUNCTUATION
    return PhoneCategory.OTHER


def coarse(code: str) -> Coarse:
    """V/C/neutral projection of a single SLP1 code point."""
    return _COARSE.get(classify(code), Coarse.NEUTRAL)


def is_vowel(code: str) -> bool:
    return code in VOWELS


def alphabet(script: str | None = None) -> frozenset:
    """SLP1 alphabet proper (no digits/punctuation) for a script.

    None means the full extended alphabet (core plus every extension).
    """
    if script is None:
        return CORE_ALPHABET | EXTENSION_VOWELS | EXTENSION_CONSONANTS
    try:
        return CORE_ALPHABET | SCRIPT_EXTENSIONS[script]
    except KeyError:
        raise ValueError(f"unknown script {script!r}") from None


class Diagnostic(NamedTuple):
    index: int
    char: str
    reason: str


def validate_slp1(text: str, script: str | None = None) -> list[Diagnostic]:
    """Flag code points outside the script's SLP1 alphabet and neutral set.

    Neutral code points (whitespace, digits, recognised punctuation) are
    allowed; anything else is reported. An empty list means valid SLP1.
    """
    allowed = alphabet(script)
    diags = []
    for i, ch in enumerate(text):
        if ch in allowed or ch in DIGITS or ch in PUNCTUATION or ch.isspace():
            continue
        diags.append(Diagnostic(i, ch, "not in SLP1 alphabet"))
    return diags
