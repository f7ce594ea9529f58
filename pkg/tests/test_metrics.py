import random

import pytest

from helpers import enumerate_scripts_cost, oracle_edit_cost, oracle_msd_cost

from aksara.errors import MetricsError
from aksara.metrics import (
    align,
    cer,
    char_edit_distance,
    msd_align,
    oov_report,
    score,
    score_utterances,
)


def _random_pair(rng, alphabet=5, max_len=8):
    symbols = [chr(ord("a") + i) for i in range(alphabet)]
    ref = [rng.choice(symbols) for _ in range(rng.randint(1, max_len))]
    hyp = [rng.choice(symbols) for _ in range(rng.randint(0, max_len))]
    return ref, hyp


class TestAlign:
    def test_identity(self):
        a = align(["a", "b"], ["a", "b"])
        assert [op.kind for op in a.ops] == ["match", "match"]
        assert a.cost == 0
        assert a.error_rate == 0.0

    def test_merge_example_counts_sub_plus_del(self):
        a = align(["mahAn", "prAkAraH"], ["mahAnprAkAraH"])
        assert a.count("sub") == 1 and a.count("del") == 1
        assert a.error_rate == 1.0

    def test_split_example_counts_sub_plus_ins(self):
        a = align(["SoBamAnamAsIt"], ["SoBamAnam", "AsIt"])
        assert a.count("sub") == 1 and a.count("ins") == 1
        assert a.error_rate == 2.0

    def test_empty_ref_rejected(self):
        with pytest.raises(MetricsError):
            align([], ["a"])

    def test_empty_hyp_is_all_deletions(self):
        a = align(["a", "b"], [])
        assert [op.kind for op in a.ops] == ["del", "del"]

    def test_cost_matches_recursive_oracle(self):
        rng = random.Random(41)
        for _ in range(300):
            ref, hyp = _random_pair(rng)
            assert align(ref, hyp).cost == oracle_edit_cost(ref, hyp)

    def test_oracles_agree_with_script_enumeration(self):
        rng = random.Random(43)
        for _ in range(60):
            ref, hyp = _random_pair(rng, alphabet=3, max_len=4)
            assert oracle_edit_cost(ref, hyp) == enumerate_scripts_cost(ref, hyp)

    def test_spans_tile_both_sequences(self):
        rng = random.Random(47)
        for _ in range(200):
            ref, hyp = _random_pair(rng)
            for a in (align(ref, hyp), msd_align(ref, hyp)):
                i = j = 0
                for op in a.ops:
                    assert op.ref_span[0] == i and op.hyp_span[0] == j
                    i, j = op.ref_span[1], op.hyp_span[1]
                assert (i, j) == (len(ref), len(hyp))

    def test_symmetry_swaps_del_and_ins(self):
        rng = random.Random(53)
        for _ in range(200):
            ref, hyp = _random_pair(rng)
            if not hyp:
                continue
            fwd = align(ref, hyp)
            rev = align(hyp, ref)
            assert fwd.cost == rev.cost
            assert fwd.count("sub") == rev.count("sub")
            assert fwd.count("del") == rev.count("ins")
            assert fwd.count("ins") == rev.count("del")


class TestMsdAlign:
    def test_merge_golden(self):
        m = msd_align(["mahAn", "prAkAraH"], ["mahAnprAkAraH"])
        assert [op.kind for op in m.ops] == ["merge"]
        assert m.cost == 0

    def test_split_golden(self):
        m = msd_align(["SoBamAnamAsIt"], ["SoBamAnam", "AsIt"])
        assert [op.kind for op in m.ops] == ["split"]
        assert m.cost == 0

    def test_inexact_concatenation_gets_no_discount(self):
        m = msd_align(["ab", "cd"], ["abce"])
        assert m.cost == align(["ab", "cd"], ["abce"]).cost == 2

    def test_span_two_reproduces_two_token_negation(self):
        assert msd_align(["mahAn", "prAkAraH"], ["mahAnprAkAraH"], max_span=2).cost == 0
        assert msd_align(["SoBamAnamAsIt"], ["SoBamAnam", "AsIt"], max_span=2).cost == 0

    def test_larger_spans_only_lower_cost(self):
        ref, hyp = ["a", "b", "c"], ["abc"]
        assert msd_align(ref, hyp, max_span=2).cost == 3
        assert msd_align(ref, hyp, max_span=3).cost == 0
        rng = random.Random(59)
        for _ in range(100):
            r, h = _random_pair(rng)
            costs = [msd_align(r, h, max_span=s).cost for s in (2, 3, 4)]
            assert costs == sorted(costs, reverse=True)

    def test_never_exceeds_plain_cost(self):
        rng = random.Random(61)
        for _ in range(300):
            ref, hyp = _random_pair(rng)
            assert msd_align(ref, hyp).cost <= align(ref, hyp).cost

    def test_equals_plain_cost_when_no_concatenation_matches(self):
        # single-char tokens on both sides: any concatenation has length
        # >= 2 and can never equal a token, so no merge/split applies
        rng = random.Random(63)
        for _ in range(200):
            ref, hyp = _random_pair(rng)
            assert msd_align(ref, hyp).cost == align(ref, hyp).cost

    def test_cost_matches_recursive_oracle(self):
        rng = random.Random(67)
        for _ in range(300):
            ref, hyp = _random_pair(rng, alphabet=2, max_len=6)
            assert msd_align(ref, hyp, max_span=3).cost == \
                oracle_msd_cost(ref, hyp, 3)

    def test_max_span_validated(self):
        with pytest.raises(MetricsError):
            msd_align(["a"], ["a"], max_span=1)

    def test_chained_merges(self):
        m = msd_align(["a", "b", "c", "d"], ["ab", "cd"])
        assert [op.kind for op in m.ops] == ["merge", "merge"]
        assert m.cost == 0


class TestCer:
    def test_identity(self):
        assert cer("vAk", "vAk") == 0.0

    def test_single_substitution(self):
        assert cer("vAk", "vak") == pytest.approx(1 / 3)

    def test_deleted_space_counts(self):
        assert cer("mahAn prAkAraH", "mahAnprAkAraH") == pytest.approx(1 / 14)

    def test_whitespace_collapsed(self):
        assert cer("a  b", "a b") == 0.0
        assert cer(" a b ", "a b") == 0.0
        assert cer("a\tb", "a b") == 0.0

    def test_empty_ref_rejected(self):
        with pytest.raises(MetricsError):
            cer("   ", "a")

    def test_char_edit_distance_oracle(self):
        rng = random.Random(71)
        for _ in range(300):
            a = "".join(rng.choice("abc") for _ in range(rng.randint(0, 8)))
            b = "".join(rng.choice("abc") for _ in range(rng.randint(0, 8)))
            assert char_edit_distance(a, b) == oracle_edit_cost(a, b)


class TestOovReport:
    def test_half_oov_fully_recovered(self):
        ref, hyp = ["a", "c"], ["a", "c"]
        rep = oov_report({"a", "b"}, ref, hyp, align(ref, hyp), msd_align(ref, hyp))
        assert rep.oov_token_rate == 0.5
        assert rep.oov_type_rate == 0.5
        assert rep.recovered_pct == 100.0
        assert rep.msd_recovered_pct == 100.0

    def test_no_oov_reports_absent_recovery(self):
        ref, hyp = ["mahAn", "prAkAraH"], ["mahAnprAkAraH"]
        rep = oov_report({"mahAn", "prAkAraH"}, ref, hyp,
                         align(ref, hyp), msd_align(ref, hyp))
        assert rep.oov_token_rate == 0.0
        assert rep.recovered_pct is None
        assert rep.msd_recovered_pct is None

    def test_merge_recovers_only_under_msd(self):
        ref, hyp = ["ab", "cd"], ["abcd"]
        rep = oov_report({"x"}, ref, hyp, align(ref, hyp), msd_align(ref, hyp))
        assert rep.oov_token_rate == 1.0
        assert rep.recovered_pct == 0.0
        assert rep.msd_recovered_pct == 100.0

    def test_msd_recovery_never_below_plain(self):
        rng = random.Random(73)
        for _ in range(200):
            ref, hyp = _random_pair(rng)
            train = {t for t in ref if rng.random() < 0.5}
            rep = oov_report(train, ref, hyp, align(ref, hyp), msd_align(ref, hyp))
            if rep.recovered_pct is not None:
                assert rep.msd_recovered_pct >= rep.recovered_pct

    def test_mismatched_alignments_rejected(self):
        with pytest.raises(MetricsError):
            oov_report(set(), ["a"], ["a"], align(["a"], ["a"]),
                       msd_align(["b"], ["b"]))


class TestScore:
    def _write(self, tmp_path, name, lines):
        path = tmp_path / name
        path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")
        return str(path)

    def test_single_utterance_identity(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["utt1 rAmaH gacCati"])
        hyp = self._write(tmp_path, "hyp", ["utt1 rAmaH gacCati"])
        report = score(ref, hyp)
        assert report.wer == 0.0 and report.cer == 0.0 and report.msd_wer == 0.0
        assert report.n_ref == 2

    def test_corpus_aggregation_with_merge_example(self, tmp_path):
        ref = self._write(tmp_path, "ref", [
            "utt1 rAmaH",
            "utt2 mahAn prAkAraH",
        ])
        hyp = self._write(tmp_path, "hyp", [
            "utt2 mahAnprAkAraH",
            "utt1 rAmaH",
        ])
        report = score(ref, hyp)
        assert report.n_ref == 3
        assert report.wer == pytest.approx(2 / 3)
        assert report.msd_wer == 0.0
        assert report.n_sub == 1 and report.n_del == 1 and report.n_ins == 0

    def test_missing_hypothesis_named(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["utt1 a", "utt2 b"])
        hyp = self._write(tmp_path, "hyp", ["utt1 a"])
        with pytest.raises(MetricsError, match="missing hypothesis utt2"):
            score(ref, hyp)

    def test_extra_hypothesis_named(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["utt1 a"])
        hyp = self._write(tmp_path, "hyp", ["utt1 a", "utt9 b"])
        with pytest.raises(MetricsError, match="missing reference utt9"):
            score(ref, hyp)

    def test_empty_reference_utterance_rejected(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["utt1"])
        hyp = self._write(tmp_path, "hyp", ["utt1 a"])
        with pytest.raises(MetricsError, match="empty reference utt1"):
            score(ref, hyp)

    def test_empty_hypothesis_utterance_allowed(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["utt1 a b"])
        hyp = self._write(tmp_path, "hyp", ["utt1"])
        report = score(ref, hyp)
        assert report.n_del == 2 and report.wer == 1.0

    def test_by_line_mode(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["mahAn prAkAraH"])
        hyp = self._write(tmp_path, "hyp", ["mahAnprAkAraH"])
        report = score(ref, hyp, by_line=True)
        assert report.wer == 1.0 and report.msd_wer == 0.0

    def test_utterance_order_irrelevant(self, tmp_path):
        ref1 = self._write(tmp_path, "r1", ["u1 a b", "u2 c"])
        ref2 = self._write(tmp_path, "r2", ["u2 c", "u1 a b"])
        hyp = self._write(tmp_path, "hyp", ["u1 a x", "u2 c"])
        assert score(ref1, hyp).as_dict() == score(ref2, hyp).as_dict()

    def test_report_keys(self, tmp_path):
        ref = self._write(tmp_path, "ref", ["u1 a"])
        hyp = self._write(tmp_path, "hyp", ["u1 a"])
        d = score(ref, hyp, train_vocab={"a"}).as_dict()
        assert list(d) == [
            "n_ref", "sub", "del", "ins", "wer", "cer", "msd_wer",
            "oov_token_rate", "oov_type_rate",
            "oov_recovered_pct", "oov_msd_recovered_pct",
        ]

    def test_wer_zero_iff_equal(self):
        rng = random.Random(79)
        for _ in range(100):
            ref, hyp = _random_pair(rng)
            report = score_utterances([(ref, hyp)])
            assert (report.wer == 0.0) == (ref == hyp)
