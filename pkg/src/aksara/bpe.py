"""Byte-pair-encoding subword models over SLP1 words.

Training greedily merges the most frequent adjacent unit pair, weighting
pairs by word frequency, until the requested number of merges or target
vocabulary size is reached, or no pair occurs at least twice. Ties break
lexicographically on (left, right) so identical corpora give identical
models. The vocabulary counts single codes as well as merged units.

Applying a model replays the merge list in training order; non-final
subwords carry a continuation marker ('+' by default).
"""

from __future__ import annotations

import heapq
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import BpeError, BpeFormatError

DEFAULT_MARKER = "+"

_HEADER_PREFIX = "#aksara-bpe v1 marker="


@dataclass
class BpeModel:
    merges: list[tuple[str, str]]
    vocab: dict[str, int] = field(default_factory=dict)
    marker: str = DEFAULT_MARKER

    def __post_init__(self):
        self._by_result: dict[str, list[tuple[int, str, str]]] | None = None

    def _merge_index(self) -> dict[str, list[tuple[int, str, str]]]:
        # merged string -> [(rank, left, right)]; lets encode() skip merges
        # whose result cannot occur in a word (not one of its substrings).
        if self._by_result is None:
            index: dict[str, list[tuple[int, str, str]]] = {}
            for rank, (left, right) in enumerate(self.merges):
                index.setdefault(left + right, []).append((rank, left, right))
            self._by_result = index
        return self._by_result

    def encode(self, word: str) -> list[str]:
        """Split a word into subword units, marker on all but the last."""
        if not word:
            raise BpeError("cannot encode an empty word")
        units = list(word)
        if len(units) > 1:
            index = self._merge_index()
            substrings = {
                word[i:j]
                for i in range(len(word))
                for j in range(i + 2, len(word) + 1)
            }
            applicable = sorted(
                entry
                for s in substrings
                for entry in index.get(s, ())
            )
            for _, left, right in applicable:
                units = _merge_pass(units, left, right)
                if len(units) == 1:
                    break
        return [u + self.marker for u in units[:-1]] + units[-1:]

    def decode(self, units: Iterable[str]) -> str:
        """Inverse of encode: strip markers and join."""
        return "".join(
            u[: -len(self.marker)] if u.endswith(self.marker) else u
            for u in units
        )


def _merge_pass(units: list[str], left: str, right: str) -> list[str]:
    """One left-to-right replacement pass of (left, right) -> left+right."""
    if left not in units:
        return units
    out = []
    i = 0
    n = len(units)
    merged = left + right
    while i < n:
        if i + 1 < n and units[i] == left and units[i + 1] == right:
            out.append(merged)
            i += 2
        else:
            out.append(units[i])
            i += 1
    return out


def _pair_counts(units: list[str]) -> Counter:
    return Counter(zip(units, units[1:]))


def train(
    corpus: Mapping[str, int],
    *,
    num_merges: int | None = None,
    vocab_size: int | None = None,
    marker: str = DEFAULT_MARKER,
) -> BpeModel:
    """Train a BPE model from a word -> frequency table.

    Exactly one of num_merges / vocab_size must be given. vocab_size stops
    as soon as the vocabulary (single codes plus merged units) reaches the
    target. Training always stops when no pair occurs at least twice.
    """
    if (num_merges is None) == (vocab_size is None):
        raise BpeError("give exactly one of num_merges or vocab_size")
    target_merges = num_merges
    if target_merges is not None and target_merges < 0:
        raise BpeError("num_merges must be >= 0")
    if vocab_size is not None and vocab_size < 0:
        raise BpeError("vocab_size must be >= 0")

    words: list[list[str]] = []
    freqs: list[int] = []
    for word, freq in corpus.items():
        if not word or freq <= 0:
            continue
        words.append(list(word))
        freqs.append(freq)
    if not words:
        raise BpeError("empty corpus")

    vocab_units = {code for units in words for code in units}
    counts: Counter = Counter()
    holders: dict[tuple[str, str], set[int]] = {}
    for wid, units in enumerate(words):
        f = freqs[wid]
        for pair in zip(units, units[1:]):
            counts[pair] += f
            holders.setdefault(pair, set()).add(wid)

    # Lazy max-heap keyed on (-count, left, right): pops give the highest
    # count with the lexicographically smallest pair; stale entries are
    # skipped by re-checking against the live counter.
    heap = [(-c, left, right) for (left, right), c in counts.items()]
    heapq.heapify(heap)

    def bump(pair, delta, wid):
        new = counts[pair] + delta
        if new <= 0:
            counts.pop(pair, None)
            return
        counts[pair] = new
        if delta > 0:
            holders.setdefault(pair, set()).add(wid)
        heapq.heappush(heap, (-new, pair[0], pair[1]))

    merges: list[tuple[str, str]] = []
    while True:
        if target_merges is not None and len(merges) >= target_merges:
            break
        if vocab_size is not None and len(vocab_units) >= vocab_size:
            break
        best = None
        while heap:
            negc, left, right = heapq.heappop(heap)
            if counts.get((left, right)) == -negc:
                best = (left, right)
                break
        if best is None or counts[best] < 2:
            break
        left, right = best
        for wid in holders.pop(best, ()):
            units = words[wid]
            new_units = _merge_pass(units, left, right)
            if new_units is units:
                continue  # stale holder entry
            f = freqs[wid]
            old_pairs = _pair_counts(units)
            new_pairs = _pair_counts(new_units)
            for pair, k in (old_pairs - new_pairs).items():
                bump(pair, -k * f, wid)
            for pair, k in (new_pairs - old_pairs).items():
                bump(pair, k * f, wid)
            words[wid] = new_units
        counts.pop(best, None)
        merges.append(best)
        vocab_units.add(left + right)

    unit_counts: Counter = Counter()
    for wid, units in enumerate(words):
        f = freqs[wid]
        for u in units:
            unit_counts[u] += f
    vocab = {u: unit_counts.get(u, 0) for u in sorted(vocab_units)}
    return BpeModel(merges=merges, vocab=vocab, marker=marker)


def save(model: BpeModel, path: str) -> None:
    """Write the model: a header line, then one merge per line."""
    lines = [_HEADER_PREFIX + model.marker]
    lines.extend(f"{left} {right}" for left, right in model.merges)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def load(path: str) -> BpeModel:
    """Read a model file; merges replay in file order.

    The persisted form carries the merge list only; vocabulary counts are
    a training artifact and come back empty.
    """
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith(_HEADER_PREFIX):
        raise BpeFormatError(path, 1, f"expected header {_HEADER_PREFIX!r}...")
    marker = lines[0][len(_HEADER_PREFIX):]
    if not marker:
        raise BpeFormatError(path, 1, "empty continuation marker")
    merges = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        fields = line.split(" ")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise BpeFormatError(path, lineno, "expected 'left right'")
        merges.append((fields[0], fields[1]))
    return BpeModel(merges=merges, marker=marker)
