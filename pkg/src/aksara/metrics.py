"""Alignment and ASR scoring: WER, CER, msd-WER, and OOV recovery.

Plain alignment is unit-cost Levenshtein over tokens. The msd ("modulo
substitution-deletion") alignment adds zero-cost merge and split ops for
spans whose concatenations match exactly, so a hypothesis that only
joined or separated words at boundaries scores clean; the msd error rate
is the remaining S+D+I. Per-utterance alignment is a pure function;
corpus totals are order-independent sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MetricsError

MATCH = "match"
SUB = "sub"
DEL = "del"
INS = "ins"
MERGE = "merge"
SPLIT = "split"

_ERROR_KINDS = (SUB, DEL, INS)


@dataclass(frozen=True)
class AlignOp:
    kind: str
    ref_span: tuple[int, int]  # half-open token span in ref
    hyp_span: tuple[int, int]  # half-open token span in hyp


@dataclass
class Alignment:
    ref: list[str]
    hyp: list[str]
    ops: list[AlignOp]

    def count(self, kind: str) -> int:
        return sum(1 for op in self.ops if op.kind == kind)

    @property
    def cost(self) -> int:
        return sum(1 for op in self.ops if op.kind in _ERROR_KINDS)

    @property
    def error_rate(self) -> float:
        return self.cost / len(self.ref)

    def op_covering_ref(self, index: int) -> AlignOp:
        for op in self.ops:
            if op.ref_span[0] <= index < op.ref_span[1]:
                return op
        raise IndexError(f"no op covers ref index {index}")


def align(ref: Sequence[str], hyp: Sequence[str]) -> Alignment:
    """Minimal-cost alignment with unit sub/del/ins costs.

    Backtrace ties prefer match > sub > del > ins, so identical inputs
    always give identical alignments.
    """
    return _align(ref, hyp, max_span=None)


def msd_align(ref: Sequence[str], hyp: Sequence[str], max_span: int = 4) -> Alignment:
    """Alignment that also allows zero-cost exact merges and splits.

    A merge maps m <= max_span ref tokens onto one hyp token equal to
    their concatenation; a split is the mirror image. Tie preference:
    match > merge > split > sub > del > ins.
    """
    if max_span < 2:
        raise MetricsError("max_span must be >= 2")
    return _align(ref, hyp, max_span=max_span)


def _align(ref, hyp, max_span):
    ref = list(ref)
    hyp = list(hyp)
    if not ref:
        raise MetricsError("empty reference (error rate undefined)")
    n, m = len(ref), len(hyp)
    INF = n + m + 1
    dist = [[INF] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        dist[i][0] = i
    for j in range(m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        row = dist[i]
        prev = dist[i - 1]
        for j in range(1, m + 1):
            best = min(
                prev[j - 1] + (ref[i - 1] != hyp[j - 1]),
                prev[j] + 1,
                row[j - 1] + 1,
            )
            if max_span is not None:
                for k in range(2, max_span + 1):
                    if k <= i and dist[i - k][j - 1] < best \
                            and "".join(ref[i - k:i]) == hyp[j - 1]:
                        best = dist[i - k][j - 1]
                    if k <= j and dist[i - 1][j - k] < best \
                            and ref[i - 1] == "".join(hyp[j - k:j]):
                        best = dist[i - 1][j - k]
            row[j] = best

    ops: list[AlignOp] = []
    i, j = n, m
    while i > 0 or j > 0:
        here = dist[i][j]
        if i > 0 and j > 0 and ref[i - 1] == hyp[j - 1] \
                and here == dist[i - 1][j - 1]:
            ops.append(AlignOp(MATCH, (i - 1, i), (j - 1, j)))
            i, j = i - 1, j - 1
            continue
        if max_span is not None:
            found = False
            for k in range(2, max_span + 1):
                if k <= i and j > 0 and here == dist[i - k][j - 1] \
                        and "".join(ref[i - k:i]) == hyp[j - 1]:
                    ops.append(AlignOp(MERGE, (i - k, i), (j - 1, j)))
                    i, j = i - k, j - 1
                    found = True
                    break
                if k <= j and i > 0 and here == dist[i - 1][j - k] \
                        and ref[i - 1] == "".join(hyp[j - k:j]):
                    ops.append(AlignOp(SPLIT, (i - 1, i), (j - k, j)))
                    i, j = i - 1, j - k
                    found = True
                    break
            if found:
                continue
        if i > 0 and j > 0 and here == dist[i - 1][j - 1] + 1:
            ops.append(AlignOp(SUB, (i - 1, i), (j - 1, j)))
            i, j = i - 1, j - 1
        elif i > 0 and here == dist[i - 1][j] + 1:
            ops.append(AlignOp(DEL, (i - 1, i), (j, j)))
            i = i - 1
        else:
            ops.append(AlignOp(INS, (i, i), (j - 1, j)))
            j = j - 1
    ops.reverse()
    return Alignment(ref=ref, hyp=hyp, ops=ops)


def _normalize_chars(text: str) -> str:
    # Consecutive whitespace collapses to one space that still aligns.
    return " ".join(text.split())


def char_edit_distance(a: str, b: str) -> int:
    """Plain Levenshtein distance over code points (two-row DP)."""
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(
                prev[j - 1] + (ca != cb),
                prev[j] + 1,
                cur[-1] + 1,
            ))
        prev = cur
    return prev[-1]


def cer(ref: str, hyp: str) -> float:
    """Character error rate over SLP1 code points.

    Whitespace runs collapse to a single space that participates in the
    alignment, so joined words register a character-level cost.
    """
    ref_n = _normalize_chars(ref)
    if not ref_n:
        raise MetricsError("empty reference (error rate undefined)")
    return char_edit_distance(ref_n, _normalize_chars(hyp)) / len(ref_n)


@dataclass
class OovReport:
    n_oov_tokens: int
    n_oov_types: int
    oov_token_rate: float
    oov_type_rate: float
    recovered_pct: float | None       # None when there are no OOV tokens
    msd_recovered_pct: float | None


def oov_report(
    train_vocab: Iterable[str],
    ref: Sequence[str],
    hyp: Sequence[str],
    alignment: Alignment,
    msd_alignment: Alignment,
) -> OovReport:
    """OOV rates and recovery under both alignments.

    A reference token is recovered when its plain-alignment op is a match;
    under the msd alignment, match, merge and split all count.
    """
    train = set(train_vocab)
    ref = list(ref)
    if list(alignment.ref) != ref or list(msd_alignment.ref) != ref:
        raise MetricsError("alignments were computed over different tokens")
    oov_positions = [i for i, tok in enumerate(ref) if tok not in train]
    types = set(ref)
    oov_types = {t for t in types if t not in train}
    n_oov = len(oov_positions)
    recovered = msd_recovered = None
    if n_oov:
        plain_hits = sum(
            1 for i in oov_positions
            if alignment.op_covering_ref(i).kind == MATCH
        )
        msd_hits = sum(
            1 for i in oov_positions
            if msd_alignment.op_covering_ref(i).kind in (MATCH, MERGE, SPLIT)
        )
        recovered = 100.0 * plain_hits / n_oov
        msd_recovered = 100.0 * msd_hits / n_oov
    return OovReport(
        n_oov_tokens=n_oov,
        n_oov_types=len(oov_types),
        oov_token_rate=n_oov / len(ref),
        oov_type_rate=len(oov_types) / len(types),
        recovered_pct=recovered,
        msd_recovered_pct=msd_recovered,
    )


@dataclass
class ScoreReport:
    n_ref: int
    n_sub: int
    n_del: int
    n_ins: int
    wer: float
    cer: float
    msd_wer: float
    oov: OovReport | None = None

    def as_dict(self) -> dict:
        d = {
            "n_ref": self.n_ref,
            "sub": self.n_sub,
            "del": self.n_del,
            "ins": self.n_ins,
            "wer": self.wer,
            "cer": self.cer,
            "msd_wer": self.msd_wer,
            "oov_token_rate": None,
            "oov_type_rate": None,
            "oov_recovered_pct": None,
            "oov_msd_recovered_pct": None,
        }
        if self.oov is not None:
            d["oov_token_rate"] = self.oov.oov_token_rate
            d["oov_type_rate"] = self.oov.oov_type_rate
            d["oov_recovered_pct"] = self.oov.recovered_pct
            d["oov_msd_recovered_pct"] = self.oov.msd_recovered_pct
        return d

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


def _parse_corpus_file(path: str, by_line: bool):
    """[(utt_id, tokens)] in file order; ids are line numbers with by_line."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            tokens = line.split()
            if by_line:
                pairs.append((str(lineno), tokens))
            else:
                if not tokens:
                    continue
                pairs.append((tokens[0], tokens[1:]))
    return pairs


def score_utterances(
    pairs: Iterable[tuple[Sequence[str], Sequence[str]]],
    *,
    train_vocab: Iterable[str] | None = None,
    max_span: int = 4,
) -> ScoreReport:
    """Micro-averaged corpus score over (ref_tokens, hyp_tokens) pairs."""
    train = set(train_vocab) if train_vocab is not None else None
    n_ref = n_sub = n_del = n_ins = msd_cost = 0
    cer_cost = cer_len = 0
    oov_tokens = plain_hits = msd_hits = 0
    ref_types: set[str] = set()
    any_utt = False
    for ref, hyp in pairs:
        any_utt = True
        a = align(ref, hyp)
        m = msd_align(ref, hyp, max_span=max_span)
        n_ref += len(a.ref)
        n_sub += a.count(SUB)
        n_del += a.count(DEL)
        n_ins += a.count(INS)
        msd_cost += m.cost
        ref_str = _normalize_chars(" ".join(a.ref))
        cer_cost += char_edit_distance(ref_str, _normalize_chars(" ".join(a.hyp)))
        cer_len += len(ref_str)
        if train is not None:
            ref_types.update(a.ref)
            for i, tok in enumerate(a.ref):
                if tok in train:
                    continue
                oov_tokens += 1
                if a.op_covering_ref(i).kind == MATCH:
                    plain_hits += 1
                if m.op_covering_ref(i).kind in (MATCH, MERGE, SPLIT):
                    msd_hits += 1
    if not any_utt:
        raise MetricsError("no utterances to score")
    oov = None
    if train is not None:
        oov_types = {t for t in ref_types if t not in train}
        oov = OovReport(
            n_oov_tokens=oov_tokens,
            n_oov_types=len(oov_types),
            oov_token_rate=oov_tokens / n_ref,
            oov_type_rate=len(oov_types) / len(ref_types),
            recovered_pct=100.0 * plain_hits / oov_tokens if oov_tokens else None,
            msd_recovered_pct=100.0 * msd_hits / oov_tokens if oov_tokens else None,
        )
    return ScoreReport(
        n_ref=n_ref,
        n_sub=n_sub,
        n_del=n_del,
        n_ins=n_ins,
        wer=(n_sub + n_del + n_ins) / n_ref,
        cer=cer_cost / cer_len,
        msd_wer=msd_cost / n_ref,
        oov=oov,
    )


def score(
    ref_path: str,
    hyp_path: str,
    *,
    train_vocab: Iterable[str] | None = None,
    max_span: int = 4,
    by_line: bool = False,
) -> ScoreReport:
    """Score a hypothesis file against a reference file.

    Lines are `utt_id token...`, or bare token lines paired by line number
    with by_line. Every reference utterance needs a hypothesis and vice
    versa; a reference utterance must have at least one token (a
    hypothesis may be empty).
    """
    ref_pairs = _parse_corpus_file(ref_path, by_line)
    hyp_pairs = _parse_corpus_file(hyp_path, by_line)
    hyp_map: dict[str, Sequence[str]] = {}
    for utt_id, tokens in hyp_pairs:
        if utt_id in hyp_map:
            raise MetricsError(f"duplicate hypothesis {utt_id}")
        hyp_map[utt_id] = tokens
    seen = set()
    utts = []
    for utt_id, ref_tokens in ref_pairs:
        if utt_id in seen:
            raise MetricsError(f"duplicate reference {utt_id}")
        seen.add(utt_id)
        if not ref_tokens:
            raise MetricsError(f"empty reference {utt_id}")
        if utt_id not in hyp_map:
            raise MetricsError(f"missing hypothesis {utt_id}")
        utts.append((ref_tokens, hyp_map.pop(utt_id)))
    if hyp_map:
        extra = sorted(hyp_map)[0]
        raise MetricsError(f"missing reference {extra}")
    return score_utterances(utts, train_vocab=train_vocab, max_span=max_span)
