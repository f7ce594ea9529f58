"""Corpus characterization: word lengths, consonant runs, rare words.

Lengths and runs are always measured on SLP1 codes. Statistics are
computed over the vocabulary (duplicates and input order are irrelevant)
with a commutative reduction, so results are deterministic.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from itertools import groupby
from typing import Iterable, Mapping

from .errors import StatsError
from .phonology import Coarse, coarse


def round_pct(value: float) -> float:
    """Two decimals, half-up: report/table style."""
    return float(Decimal(repr(value)).quantize(Decimal("0.01"), ROUND_HALF_UP))


@dataclass
class LengthStats:
    counts: dict[int, int]        # word length (SLP1 codes) -> vocab count
    total: int                    # vocabulary size
    mean: float                   # average codes per word
    bins: tuple[float, float, float]  # % with N<=6, 6<N<=12, N>12

    @property
    def histogram(self) -> dict[int, float]:
        return {n: c / self.total for n, c in self.counts.items()}


@dataclass
class RunStats:
    counts: dict[int, int]        # run length -> number of runs
    total: int                    # total runs observed
    max_run: int

    @property
    def distribution(self) -> dict[int, float]:
        return {n: 100.0 * c / self.total for n, c in self.counts.items()}


@dataclass
class RareWordStats:
    threshold: int
    n_types: int
    n_rare: int

    @property
    def rate(self) -> float:
        """Percent of vocabulary types with frequency below the threshold."""
        return 100.0 * self.n_rare / self.n_types


def word_length_stats(vocab: Iterable[str]) -> LengthStats:
    words = set(vocab)
    counts = Counter(len(w) for w in words)
    total = len(words)
    if total == 0:
        return LengthStats(counts={}, total=0, mean=0.0, bins=(0.0, 0.0, 0.0))
    short = sum(c for n, c in counts.items() if n <= 6)
    mid = sum(c for n, c in counts.items() if 6 < n <= 12)
    long_ = total - short - mid
    return LengthStats(
        counts=dict(sorted(counts.items())),
        total=total,
        mean=sum(n * c for n, c in counts.items()) / total,
        bins=(100.0 * short / total, 100.0 * mid / total, 100.0 * long_ / total),
    )


def _max_run(word: str) -> int:
    best = 0
    for cls, group in groupby(word, key=coarse):
        if cls is Coarse.C:
            best = max(best, sum(1 for _ in group))
    return best


def consonant_run_stats(vocab: Iterable[str], mode: str = "runs") -> RunStats:
    """Distribution of maximal consonant runs across the vocabulary.

    mode="runs" counts every maximal run (the default reading);
    mode="per-word-max" counts one sample per word, its longest run.
    Words without consonants contribute nothing.
    """
    if mode not in ("runs", "per-word-max"):
        raise StatsError(f"unknown run mode {mode!r}")
    counts: Counter = Counter()
    for word in set(vocab):
        if mode == "per-word-max":
            n = _max_run(word)
            if n:
                counts[n] += 1
            continue
        for cls, group in groupby(word, key=coarse):
            if cls is Coarse.C:
                counts[sum(1 for _ in group)] += 1
    return RunStats(
        counts=dict(sorted(counts.items())),
        total=sum(counts.values()),
        max_run=max(counts, default=0),
    )


def rare_word_rate(token_counts: Mapping[str, int], threshold: int = 3) -> RareWordStats:
    """Share of vocabulary types occurring fewer than `threshold` times."""
    if threshold < 1:
        raise StatsError("threshold must be >= 1")
    n_types = len(token_counts)
    if n_types == 0:
        raise StatsError("empty corpus")
    n_rare = sum(1 for c in token_counts.values() if c < threshold)
    return RareWordStats(threshold=threshold, n_types=n_types, n_rare=n_rare)


def emit_plot_data(stats: LengthStats | RunStats, fmt: str = "csv") -> str:
    """Plot-ready histogram text, byte-deterministic for fixed stats."""
    if fmt not in ("csv", "json"):
        raise StatsError(f"unknown plot format {fmt!r}")
    if isinstance(stats, LengthStats):
        header = "length,count,normalized"
        rows = [
            (n, c, c / stats.total if stats.total else 0.0)
            for n, c in sorted(stats.counts.items())
        ]
        json_obj = {
            "histogram": {str(n): v for n, v in sorted(stats.histogram.items())},
            "bins": {
                "n_le_6": stats.bins[0],
                "n_6_to_12": stats.bins[1],
                "n_gt_12": stats.bins[2],
            },
            "mean": stats.mean,
            "total": stats.total,
        }
    else:
        header = "run_length,count,percentage"
        rows = [
            (n, c, 100.0 * c / stats.total if stats.total else 0.0)
            for n, c in sorted(stats.counts.items())
        ]
        json_obj = {
            "distribution": {str(n): v for n, v in sorted(stats.distribution.items())},
            "max_run": stats.max_run,
            "total": stats.total,
        }
    if fmt == "json":
        return json.dumps(json_obj, indent=2) + "\n"
    lines = [header]
    lines.extend(f"{n},{c},{v!r}" for n, c, v in rows)
    return "\n".join(lines) + "\n"
