"""Shared test utilities: seeded word generators and independent oracles.

The oracles are written from the definitions (recursive edit distance,
manual recounts, hand char sets) so they share no code with the library
paths they check.
"""

from __future__ import annotations

import random
from functools import lru_cache

from aksara.phonology import alphabet
from aksara.script import ScriptTable

# --- independent character sets (typed out, not imported) ----------------

ORACLE_VOWELS = set("aAiIuUfFxX eEoO".replace(" ", "")) | set("ĕŏêô")
ORACLE_CONSONANTS = (
    set("kKgGNcCjJYwWqQRtTdDnpPbBmyrlvLSzsh") | {"M", "H", "~", "ṟ"}
)


# --- word generators ------------------------------------------------------

def random_slp1_word(rng: random.Random, script: str | None = None,
                     max_len: int = 12, with_neutral: bool = False) -> str:
    """Random SLP1 word; with_neutral also mixes in digits and '.'."""
    pool = sorted(alphabet(script))
    if with_neutral:
        pool = pool + list("0123456789..")
    return "".join(rng.choice(pool) for _ in range(rng.randint(1, max_len)))


def random_segmentable_word(rng: random.Random, max_len: int = 15) -> str:
    """Random word over vowel/consonant codes only (no avagraha/neutral)."""
    pool = sorted((ORACLE_VOWELS | ORACLE_CONSONANTS))
    return "".join(rng.choice(pool) for _ in range(rng.randint(1, max_len)))


def random_native_word(rng: random.Random, table: ScriptTable,
                       max_units: int = 7) -> str:
    """Random canonical native-script word built from one table.

    Canonical means: matras and viramas only after consonants, no
    independent vowel straight after a bare (virama'd) consonant, no
    adjacent dandas; such sequences are not valid orthography and have no
    distinct SLP1 image.
    """
    consonants = sorted(table.consonant_map)
    vowels = sorted(table.independent_vowel_map)
    matras = sorted(table.matra_map)
    signs = sorted(ch for ch, code in table.sign_map.items() if code != "'")
    avagraha = next(ch for ch, code in table.sign_map.items() if code == "'")
    digits = sorted(table.digit_map)

    parts: list[str] = []
    prev = "start"
    for _ in range(rng.randint(1, max_units)):
        if prev == "bare":
            kind = "cons"
        else:
            kind = rng.choices(
                ["cons", "vowel", "digit", "avagraha"], weights=[75, 15, 5, 5]
            )[0]
        if kind == "cons":
            parts.append(rng.choice(consonants))
            r = rng.random()
            if r < 0.30:
                parts.append(table.virama)
                prev = "bare"
                continue
            if r < 0.60:
                parts.append(rng.choice(matras))
            prev = "open"
        elif kind == "vowel":
            parts.append(rng.choice(vowels))
            prev = "open"
        elif kind == "digit":
            parts.append(rng.choice(digits))
            prev = "neutral"
        else:
            parts.append(avagraha)
            prev = "neutral"
        if prev == "open" and rng.random() < 0.15:
            parts.append(rng.choice(signs))
            prev = "neutral"
    return "".join(parts)


# --- alignment oracles ----------------------------------------------------

def oracle_edit_cost(ref, hyp) -> int:
    """Edit distance straight from the recursive definition."""
    ref, hyp = tuple(ref), tuple(hyp)

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            d(i - 1, j - 1) + (ref[i - 1] != hyp[j - 1]),
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
        )

    return d(len(ref), len(hyp))


def oracle_msd_cost(ref, hyp, max_span: int) -> int:
    """Extended-op-set cost: zero-cost exact-concatenation merge/split."""
    ref, hyp = tuple(ref), tuple(hyp)

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        best = min(
            d(i - 1, j - 1) + (ref[i - 1] != hyp[j - 1]),
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
        )
        for k in range(2, max_span + 1):
            if k <= i and "".join(ref[i - k:i]) == hyp[j - 1]:
                best = min(best, d(i - k, j - 1))
            if k <= j and ref[i - 1] == "".join(hyp[j - k:j]):
                best = min(best, d(i - 1, j - k))
        return best

    return d(len(ref), len(hyp))


def enumerate_scripts_cost(ref, hyp) -> int:
    """True exhaustive search over all edit scripts (tiny inputs only)."""
    best = [len(ref) + len(hyp)]

    def go(i, j, cost):
        if cost >= best[0]:
            return
        if i == len(ref) and j == len(hyp):
            best[0] = cost
            return
        if i < len(ref) and j < len(hyp):
            go(i + 1, j + 1, cost + (ref[i] != hyp[j]))
        if i < len(ref):
            go(i + 1, j, cost + 1)
        if j < len(hyp):
            go(i, j + 1, cost + 1)

    go(0, 0, 0)
    return best[0]


# --- statistics oracles ---------------------------------------------------

def recount_length_bins(words):
    """(counts, mean, (pct<=6, pct 6..12, pct>12)) by direct loops."""
    vocab = set(words)
    counts = {}
    for w in vocab:
        counts[len(w)] = counts.get(len(w), 0) + 1
    total = len(vocab)
    short = mid = long_ = 0
    for w in vocab:
        n = len(w)
        if n <= 6:
            short += 1
        elif n <= 12:
            mid += 1
        else:
            long_ += 1
    mean = sum(len(w) for w in vocab) / total
    return counts, mean, (100 * short / total, 100 * mid / total, 100 * long_ / total)


def recount_runs(words):
    """Maximal consonant-run counts via an index walk with hand char sets."""
    counts = {}
    for w in set(words):
        run = 0
        for ch in w:
            if ch in ORACLE_CONSONANTS:
                run += 1
            else:
                if run:
                    counts[run] = counts.get(run, 0) + 1
                run = 0
        if run:
            counts[run] = counts.get(run, 0) + 1
    return counts


def recount_rare(token_counts, threshold):
    rare = sum(1 for c in token_counts.values() if c < threshold)
    return 100.0 * rare / len(token_counts)


# --- synthetic BPE corpora -------------------------------------------------

def morpheme_corpus(rng: random.Random, n_morphemes: int, morph_len: int = 4,
                    freq: int = 2) -> dict[str, int]:
    """Frequency table of every 2-morpheme concatenation over a pool.

    Each combination occurs `freq` times, so the achievable vocabulary is
    roughly alphabet + morpheme build-up + n_morphemes**2 whole words.
    """
    letters = "kgcjtdpbmyrlvszhaAiIuUe"
    morphemes = set()
    while len(morphemes) < n_morphemes:
        morphemes.add("".join(rng.choice(letters) for _ in range(morph_len)))
    morphemes = sorted(morphemes)
    return {
        left + right: freq
        for left in morphemes
        for right in morphemes
    }
