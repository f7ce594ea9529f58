"""Bidirectional transliteration between native Indic scripts and SLP1.

Tables are plain data files (hex codepoint, SLP1 code, category), loaded
once and frozen, so transliteration is a pure function of (table, input)
and safe for concurrent use. Native text is NFC-normalized before lookup;
SLP1 text is expected in NFC (extension vowels are precomposed).
"""

from __future__ import annotations

import os
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType
from typing import NamedTuple

from .errors import TableError, TransliterationError
from .phonology import AVAGRAHA, SIGNS, VOWELS, alphabet

SCRIPTS = ("devanagari", "gujarati", "telugu")

TABLES_ENV_VAR = "AKSARA_TABLES"

_CATEGORIES = ("vowel", "matra", "consonant", "sign", "virama", "digit", "punct")


class Warning_(NamedTuple):
    index: int
    char: str
    reason: str


@dataclass
class TransliterationReport:
    output: str
    warnings: list[Warning_] = field(default_factory=list)

    @property
    def lossy(self) -> bool:
        return bool(self.warnings)


@dataclass(frozen=True)
class ScriptTable:
    script_id: str
    version: str
    independent_vowel_map: MappingProxyType   # native letter -> SLP1 vowel
    matra_map: MappingProxyType               # dependent sign -> SLP1 vowel
    consonant_map: MappingProxyType           # native letter -> SLP1 consonant
    sign_map: MappingProxyType                # anusvara/visarga/candrabindu/avagraha
    digit_map: MappingProxyType               # native digit -> ASCII digit
    punct_map: MappingProxyType               # danda -> '.', double danda -> '..'
    virama: str
    # Reverse maps for SLP1 -> native.
    vowel_letter: MappingProxyType
    matra_sign: MappingProxyType
    consonant_letter: MappingProxyType
    sign_char: MappingProxyType
    digit_char: MappingProxyType
    punct_char: MappingProxyType


def _check_invariants(script_id, vowels, matras, consonants, signs, virama, path):
    if len(set(vowels.values())) != len(vowels):
        raise TableError(f"{path}: independent vowel map is not injective")
    if len(set(consonants.values())) != len(consonants):
        raise TableError(f"{path}: consonant map is not injective")
    vowel_codes = set(vowels.values())
    for sign, code in matras.items():
        if code not in vowel_codes:
            raise TableError(
                f"{path}: matra U+{ord(sign):04X} maps to {code!r}, "
                "which has no independent letter"
            )
    if virama is None:
        raise TableError(f"{path}: no virama entry")
    core = alphabet("devanagari")
    for code in list(vowels.values()) + list(consonants.values()):
        if len(code) != 1:
            raise TableError(f"{path}: SLP1 code {code!r} is not a single code point")
        if code not in alphabet(script_id):
            raise TableError(f"{path}: {code!r} not in the {script_id} alphabet")
    for code in signs.values():
        if code not in SIGNS and code != AVAGRAHA:
            raise TableError(f"{path}: unexpected sign code {code!r}")
    # Extension codes must stay disjoint from core SLP1.
    for code in set(vowels.values()) | set(consonants.values()):
        if code not in core and code.isascii():
            raise TableError(f"{path}: extension code {code!r} collides with ASCII")


def load_table(path: str, script_id: str) -> ScriptTable:
    """Parse one table file. Raises TableError with path:line on bad input."""
    vowels, matras, consonants, signs, digits, puncts = {}, {}, {}, {}, {}, {}
    virama = None
    version = "unversioned"
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise TableError(f"cannot read script table: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# aksara-tables"):
                version = line.split()[-1]
            continue
        fields = line.split()
        if len(fields) != 3:
            raise TableError(f"{path}:{lineno}: expected 'hex slp1 category'")
        hexpt, slp1, category = fields
        try:
            native = chr(int(hexpt, 16))
        except ValueError:
            raise TableError(f"{path}:{lineno}: bad code point {hexpt!r}") from None
        if category not in _CATEGORIES:
            raise TableError(f"{path}:{lineno}: unknown category {category!r}")
        if category == "vowel":
            vowels[native] = slp1
        elif category == "matra":
            matras[native] = slp1
        elif category == "consonant":
            consonants[native] = slp1
        elif category == "sign":
            signs[native] = slp1
        elif category == "virama":
            virama = native
        elif category == "digit":
            digits[native] = slp1
        else:
            puncts[native] = slp1
    _check_invariants(script_id, vowels, matras, consonants, signs, virama, path)
    frozen = MappingProxyType
    return ScriptTable(
        script_id=script_id,
        version=version,
        independent_vowel_map=frozen(vowels),
        matra_map=frozen(matras),
        consonant_map=frozen(consonants),
        sign_map=frozen(signs),
        digit_map=frozen(digits),
        punct_map=frozen(puncts),
        virama=virama,
        vowel_letter=frozen({v: k for k, v in vowels.items()}),
        matra_sign=frozen({v: k for k, v in matras.items()}),
        consonant_letter=frozen({v: k for k, v in consonants.items()}),
        sign_char=frozen({v: k for k, v in signs.items()}),
        digit_char=frozen({v: k for k, v in digits.items()}),
        punct_char=frozen({v: k for k, v in puncts.items()}),
    )


_table_cache: dict[str, ScriptTable] = {}


def table_dir() -> str | None:
    """Directory overriding the packaged tables, if AKSARA_TABLES is set."""
    return os.environ.get(TABLES_ENV_VAR) or None


def get_table(script: str) -> ScriptTable:
    if script not in SCRIPTS:
        raise TableError(f"unknown script {script!r} (expected one of {SCRIPTS})")
    override = table_dir()
    if override:
        return load_table(os.path.join(override, f"{script}.tsv"), script)
    if script not in _table_cache:
        ref = resources.files("aksara").joinpath(f"data/{script}.tsv")
        with resources.as_file(ref) as path:
            _table_cache[script] = load_table(str(path), script)
    return _table_cache[script]


def to_slp1(text: str, script: str, *, strict: bool = True,
            table: ScriptTable | None = None) -> TransliterationReport:
    """Native script -> SLP1.

    A consonant letter carries the inherent 'a' unless a virama or a matra
    follows. Strict mode raises on unmappable code points; lossy mode passes
    them through and records a warning.
    """
    tbl = table or get_table(script)
    text = unicodedata.normalize("NFC", text)
    out: list[str] = []
    warnings: list[Warning_] = []
    pending: str | None = None  # consonant code awaiting its vowel

    def flush():
        nonlocal pending
        if pending is not None:
            out.append(pending)
            out.append("a")
            pending = None

    def problem(i, ch, reason):
        if strict:
            raise TransliterationError(i, ch, reason)
        warnings.append(Warning_(i, ch, reason))

    for i, ch in enumerate(text):
        if ch in tbl.consonant_map:
            flush()
            pending = tbl.consonant_map[ch]
        elif ch == tbl.virama:
            if pending is None:
                problem(i, ch, "virama without preceding consonant")
                out.append(ch)
            else:
                out.append(pending)
                pending = None
        elif ch in tbl.matra_map:
            if pending is None:
                problem(i, ch, "dependent vowel without preceding consonant")
                out.append(ch)
            else:
                out.append(pending)
                out.append(tbl.matra_map[ch])
                pending = None
        elif ch in tbl.independent_vowel_map:
            flush()
            out.append(tbl.independent_vowel_map[ch])
        elif ch in tbl.sign_map:
            flush()
            out.append(tbl.sign_map[ch])
        elif ch in tbl.digit_map:
            flush()
            out.append(tbl.digit_map[ch])
        elif ch in tbl.punct_map:
            flush()
            out.append(tbl.punct_map[ch])
        elif ch.isspace():
            flush()
            out.append(ch)
        else:
            flush()
            problem(i, ch, "unmapped code point")
            out.append(ch)
    flush()
    return TransliterationReport(output="".join(out), warnings=warnings)


def from_slp1(text: str, script: str, *, strict: bool = True,
              table: ScriptTable | None = None) -> TransliterationReport:
    """SLP1 -> native script.

    A vowel after a consonant becomes a matra ('a' becomes no mark); at text
    start, after space/punctuation, or after another vowel it becomes the
    independent letter. A consonant not followed by a vowel gets a virama.
    """
    tbl = table or get_table(script)
    out: list[str] = []
    warnings: list[Warning_] = []
    after_consonant = False

    def close_consonant():
        nonlocal after_consonant
        if after_consonant:
            out.append(tbl.virama)
            after_consonant = False

    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in VOWELS and ch in tbl.vowel_letter:
            if after_consonant:
                if ch != "a":
                    out.append(tbl.matra_sign[ch])
                after_consonant = False
            else:
                out.append(tbl.vowel_letter[ch])
        elif ch in tbl.consonant_letter:
            close_consonant()
            out.append(tbl.consonant_letter[ch])
            after_consonant = True
        elif ch in tbl.sign_char:
            close_consonant()
            out.append(tbl.sign_char[ch])
        elif ch in tbl.digit_char:
            close_consonant()
            out.append(tbl.digit_char[ch])
        elif ch == ".":
            close_consonant()
            if text.startswith("..", i):
                out.append(tbl.punct_char[".."])
                i += 2
                continue
            out.append(tbl.punct_char["."])
        elif ch.isspace():
            close_consonant()
            out.append(ch)
        else:
            close_consonant()
            if strict:
                raise TransliterationError(i, ch, "not a valid SLP1 code")
            warnings.append(Warning_(i, ch, "not a valid SLP1 code"))
            out.append(ch)
        i += 1
    close_consonant()
    return TransliterationReport(output="".join(out), warnings=warnings)
