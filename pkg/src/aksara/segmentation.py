"""Vowel segmentation and laghu/guru syllable weights for SLP1 words.

A word is split at vowel boundaries so each segment holds exactly one
vowel; the onset of every non-initial segment is at most one consonant,
the rest of a cluster stays with the preceding vowel as coda. Anusvara,
visarga and candrabindu count as consonants here.

Both operations are pure functions of their input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SegmentationError
from .phonology import (
    ANUSVARA,
    CANDRABINDU,
    VISARGA,
    Coarse,
    PhoneCategory,
    classify,
    coarse,
)

DEFAULT_MARKER = "+"

LIGHT = "l"
HEAVY = "S"

_GURU_SIGNS = frozenset({ANUSVARA, VISARGA, CANDRABINDU})


@dataclass
class VowelSegmentation:
    segments: list[str]
    vowelless: bool = False  # diagnostic: word had no vowel, kept whole

    def join(self) -> str:
        return "".join(self.segments)


def _coarse_codes(word: str, op: str) -> list[Coarse]:
    if not word:
        raise SegmentationError(f"{op}: empty word")
    classes = []
    for i, ch in enumerate(word):
        c = coarse(ch)
        if c is Coarse.NEUTRAL:
            raise SegmentationError(
                f"{op}: non-phonemic code {ch!r} at index {i}"
            )
        classes.append(c)
    return classes


def vowel_segment(word: str) -> VowelSegmentation:
    """Split one SLP1 word (no spaces) into vowel segments.

    Break rules, scanning left to right with two codes of lookahead
    (missing lookahead never breaks):

      vowel:      next is vowel            -> break
                  next two are consonants  -> no break
                  consonant then vowel     -> break
      consonant:  next is vowel            -> no break
                  next two are consonants  -> no break
                  consonant then the word's first vowel -> no break
                  consonant then any later vowel        -> break
    """
    classes = _coarse_codes(word, "vowel_segment")
    n = len(word)
    first_vowel = next((i for i, c in enumerate(classes) if c is Coarse.V), None)
    if first_vowel is None:
        return VowelSegmentation(segments=[word], vowelless=True)

    segments: list[str] = []
    start = 0
    for i in range(n):
        c1 = classes[i + 1] if i + 1 < n else None
        c2 = classes[i + 2] if i + 2 < n else None
        if classes[i] is Coarse.V:
            brk = c1 is Coarse.V or (c1 is Coarse.C and c2 is Coarse.V)
        else:
            brk = (
                c1 is Coarse.C
                and c2 is Coarse.V
                and i + 2 != first_vowel
            )
        if brk:
            segments.append(word[start:i + 1])
            start = i + 1
    if start < n:
        segments.append(word[start:])
    return VowelSegmentation(segments=segments)


def vowel_segment_text(line: str, marker: str | None = None) -> str:
    """Apply vowel segmentation to every whitespace-delimited word.

    With a marker, non-final segments of a word get the marker suffixed
    (``ud+ yA+ naH``) so the original tokenization stays recoverable.
    """
    out: list[str] = []
    for w, word in enumerate(line.split()):
        try:
            segs = vowel_segment(word).segments
        except SegmentationError as exc:
            raise SegmentationError(f"word {w + 1} ({word!r}): {exc}") from exc
        if marker:
            segs = [s + marker for s in segs[:-1]] + segs[-1:]
        out.extend(segs)
    return " ".join(out)


def syllable_weights(word: str) -> str:
    """Laghu/guru weight string, one symbol per vowel of the word.

    Long vowels and diphthongs are heavy (S). A short vowel is heavy when
    followed by a conjunct (two or more consecutive consonant codes) or by
    anusvara, visarga, or candrabindu; otherwise light (l). Weights are
    evaluated within the word only.
    """
    classes = _coarse_codes(word, "syllable_weights")
    if Coarse.V not in classes:
        raise SegmentationError(f"syllable_weights: no vowel in {word!r}")
    n = len(word)
    weights = []
    for i, ch in enumerate(word):
        if classes[i] is not Coarse.V:
            continue
        cat = classify(ch)
        if cat in (PhoneCategory.LONG_VOWEL, PhoneCategory.DIPHTHONG):
            weights.append(HEAVY)
            continue
        run = 0
        j = i + 1
        while j < n and classes[j] is Coarse.C:
            run += 1
            j += 1
        if run >= 2 or (run == 1 and word[i + 1] in _GURU_SIGNS):
            weights.append(HEAVY)
        else:
            weights.append(LIGHT)
    return "".join(weights)
