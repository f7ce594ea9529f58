"""Token inventories and pronunciation lexicons for LM/AM unit schemes.

LM units: whole words, BPE subwords, or vowel segments; AM units: one
grapheme per SLP1 code, vowel segments, or dictionary phonemes. Subword
LM tokens keep their continuation marker; pronunciation is computed on
the marker-stripped form so decoded words can be reconstructed.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass

from .bpe import DEFAULT_MARKER, BpeModel
from .bpe import train as train_bpe
from .errors import LexiconError
from .phonology import PhoneCategory, classify
from .segmentation import vowel_segment

LM_UNITS = ("word", "bpe", "vs")
AM_UNITS = ("grapheme", "grapheme_vs", "phoneme")

# Categories that count as acoustic graphemes in a census: the SLP1
# alphabet proper, not digits/punctuation/whitespace.
_GRAPHEME_CATEGORIES = frozenset({
    PhoneCategory.SHORT_VOWEL,
    PhoneCategory.LONG_VOWEL,
    PhoneCategory.DIPHTHONG,
    PhoneCategory.CONSONANT,
    PhoneCategory.ANUSVARA,
    PhoneCategory.VISARGA,
    PhoneCategory.CANDRABINDU,
    PhoneCategory.AVAGRAHA,
})


class PronunciationDict:
    """Exact-match word -> phone sequences, with the phone inventory."""

    def __init__(self, entries: dict[str, list[tuple[str, ...]]]):
        self.entries = entries
        self.inventory = {p for prons in entries.values() for pron in prons for p in pron}

    @classmethod
    def load(cls, path: str) -> "PronunciationDict":
        entries: dict[str, list[tuple[str, ...]]] = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                fields = line.split()
                if not fields:
                    continue
                if len(fields) < 2:
                    raise LexiconError(f"{path}:{lineno}: expected 'word phone...'")
                word, phones = fields[0], tuple(fields[1:])
                entries.setdefault(word, [])
                if phones not in entries[word]:
                    entries[word].append(phones)
        return cls(entries)

    def lookup(self, word: str) -> list[tuple[str, ...]]:
        try:
            return self.entries[word]
        except KeyError:
            raise LexiconError(f"no pronunciation for token {word!r}") from None


@dataclass
class UnitScheme:
    lm_unit: str
    am_unit: str
    bpe_model: BpeModel | None = None
    phone_dict: PronunciationDict | None = None
    marker: str = DEFAULT_MARKER

    def __post_init__(self):
        if self.lm_unit not in LM_UNITS:
            raise LexiconError(f"unknown lm_unit {self.lm_unit!r}")
        if self.am_unit not in AM_UNITS:
            raise LexiconError(f"unknown am_unit {self.am_unit!r}")
        if self.lm_unit == "bpe" and self.bpe_model is None:
            raise LexiconError("lm_unit 'bpe' requires --bpe-model")
        if self.am_unit == "phoneme" and self.phone_dict is None:
            raise LexiconError("am_unit 'phoneme' requires --phone-dict")
        if self.bpe_model is not None:
            self.marker = self.bpe_model.marker


@dataclass
class LexiconArtifact:
    tokens: list[tuple[str, int]]            # count-descending, then lexicographic
    units: list[str]                         # sorted unit inventory
    entries: dict[str, list[tuple[str, ...]]]  # token -> pronunciations
    missing: list[str]                       # tokens without a pronunciation


def _corpus_words(corpus) -> list[str]:
    """Whitespace tokens from a text blob or an iterable of lines."""
    if isinstance(corpus, str):
        return corpus.split()
    words: list[str] = []
    for line in corpus:
        words.extend(line.split())
    return words


def _strip_marker(token: str, marker: str) -> str:
    if marker and token.endswith(marker):
        return token[: -len(marker)]
    return token


def _mark(segments: list[str], marker: str) -> list[str]:
    return [s + marker for s in segments[:-1]] + segments[-1:]


def build_tokens(corpus, scheme: UnitScheme) -> Counter:
    """LM token inventory with counts, aggregated over the corpus."""
    words = _corpus_words(corpus)
    tokens: Counter = Counter()
    if scheme.lm_unit == "word":
        tokens.update(words)
    elif scheme.lm_unit == "bpe":
        for word, freq in Counter(words).items():
            for unit in scheme.bpe_model.encode(word):
                tokens[unit] += freq
    else:  # vs
        for word, freq in Counter(words).items():
            for unit in _mark(vowel_segment(word).segments, scheme.marker):
                tokens[unit] += freq
    return tokens


def pronounce(
    token: str,
    am_unit: str,
    phone_dict: PronunciationDict | None = None,
    marker: str = DEFAULT_MARKER,
) -> list[tuple[str, ...]]:
    """Unit sequences for one token (markers stripped first).

    grapheme and grapheme_vs always yield exactly one pronunciation;
    phoneme mode emits every dictionary variant.
    """
    bare = _strip_marker(token, marker)
    if am_unit == "grapheme":
        return [tuple(bare)]
    if am_unit == "grapheme_vs":
        return [tuple(vowel_segment(bare).segments)]
    if am_unit == "phoneme":
        if phone_dict is None:
            raise LexiconError("phoneme pronunciation requires a phone dict")
        return list(phone_dict.lookup(bare))
    raise LexiconError(f"unknown am_unit {am_unit!r}")


def build_lexicon(corpus, scheme: UnitScheme) -> LexiconArtifact:
    """Full lexicon for a corpus under a unit scheme.

    Tokens missing from the phone dict are collected in `missing` rather
    than aborting the batch.
    """
    counts = build_tokens(corpus, scheme)
    entries: dict[str, list[tuple[str, ...]]] = {}
    missing: list[str] = []
    for token in counts:
        try:
            entries[token] = pronounce(
                token, scheme.am_unit, scheme.phone_dict, scheme.marker
            )
        except LexiconError:
            missing.append(token)
    tokens = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    units = sorted({u for prons in entries.values() for pron in prons for u in pron})
    return LexiconArtifact(
        tokens=tokens, units=units, entries=entries, missing=sorted(missing)
    )


def emit(artifact: LexiconArtifact, out_dir: str) -> dict[str, str]:
    """Write lexicon.txt, units.txt and words.txt; returns the paths.

    Byte-deterministic for a fixed artifact: stable sort orders, single
    spaces, '\\n' line endings.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {name: os.path.join(out_dir, f"{name}.txt")
             for name in ("lexicon", "units", "words")}
    lex_lines = sorted(
        f"{token} {' '.join(pron)}"
        for token, prons in artifact.entries.items()
        for pron in prons
    )
    _write_lines(paths["lexicon"], lex_lines)
    _write_lines(paths["units"], artifact.units)
    _write_lines(paths["words"], [f"{t}\t{c}" for t, c in artifact.tokens])
    return paths


def _write_lines(path: str, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if lines:
            fh.write("\n".join(lines) + "\n")


def vocab_census(
    corpus,
    unit: str,
    *,
    bpe_target: int | None = None,
    bpe_model: BpeModel | None = None,
    phone_dict: PronunciationDict | None = None,
    marker: str = DEFAULT_MARKER,
) -> int:
    """Number of distinct units of the requested kind in the corpus.

    bpe needs a target vocabulary size (a model is trained on the corpus)
    or a pre-trained model. phoneme counts phones over words found in the
    dict; dict-missing words contribute nothing.
    """
    words = _corpus_words(corpus)
    if unit == "word":
        return len(set(words))
    if unit == "vs":
        units = set()
        for word in set(words):
            units.update(_mark(vowel_segment(word).segments, marker))
        return len(units)
    if unit == "bpe":
        model = bpe_model
        if model is None:
            if bpe_target is None:
                raise LexiconError("bpe census requires a target or a model")
            model = train_bpe(Counter(words), vocab_size=bpe_target, marker=marker)
        units = set()
        for word in set(words):
            units.update(model.encode(word))
        return len(units)
    if unit == "grapheme":
        return len({
            ch for word in words for ch in word
            if classify(ch) in _GRAPHEME_CATEGORIES
        })
    if unit == "phoneme":
        if phone_dict is None:
            raise LexiconError("phoneme census requires a phone dict")
        phones = set()
        for word in set(words):
            for pron in phone_dict.entries.get(word, ()):
                phones.update(pron)
        return len(phones)
    raise LexiconError(f"unknown census unit {unit!r}")
