"""aksara: every pipeline stage as a subcommand with scriptable I/O.

Exit codes: 0 success, 1 usage error, 2 data error (message carries
file:line context where known). All text I/O is UTF-8 with '\\n' line
endings and a final newline. translit and vseg stream line by line.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from contextlib import nullcontext

from . import __version__, bpe, lexicon, metrics, stats
from .errors import AksaraError
from .script import SCRIPTS, from_slp1, get_table, to_slp1
from .segmentation import DEFAULT_MARKER, syllable_weights, vowel_segment_text


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the exit-code contract wants 1."""

    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _open_in(path: str | None):
    if path is None or path == "-":
        return nullcontext(sys.stdin)
    return open(path, encoding="utf-8")

def _open_out(path: str | None):
    if path is None or path == "-":
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="\n")


def _in_name(path: str | None) -> str:
    return path if path not in (None, "-") else "<stdin>"


def _read_corpus_lines(path: str, id_col: bool) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if id_col:
        lines = [" ".join(line.split()[1:]) for line in lines]
    return lines


def _line_error(name: str, lineno: int, exc: AksaraError) -> AksaraError:
    return AksaraError(f"{name}:{lineno}: {exc}")


def _version_string() -> str:
    table_versions = ", ".join(
        f"{s} {get_table(s).version}" for s in SCRIPTS
    )
    return f"aksara {__version__} (tables: {table_versions})"


class _Version(argparse.Action):
    """Like action='version', but resolves table versions only when asked."""

    def __init__(self, option_strings, dest, **kwargs):
        super().__init__(option_strings, dest, nargs=0, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        print(_version_string())
        parser.exit(0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aksara", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action=_Version)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("translit", help="native script <-> SLP1")
    p.add_argument("--script", required=True, choices=SCRIPTS)
    p.add_argument("--to", required=True, choices=("slp1", "native"))
    p.add_argument("--lossy", action="store_true",
                   help="pass unmapped code points through with a warning")
    p.add_argument("infile", nargs="?", default=None)
    p.add_argument("outfile", nargs="?", default=None)

    p = sub.add_parser("vseg", help="vowel-segment SLP1 text, word by word")
    p.add_argument("--marker", action="store_true",
                   help=f"suffix non-final segments with '{DEFAULT_MARKER}'")
    p.add_argument("infile", nargs="?", default=None)
    p.add_argument("outfile", nargs="?", default=None)

    p = sub.add_parser("prosody", help="laghu/guru weight string per word")
    p.add_argument("infile", nargs="?", default=None)
    p.add_argument("outfile", nargs="?", default=None)

    p = sub.add_parser("bpe", help="train or apply BPE subword models")
    bsub = p.add_subparsers(dest="bpe_command", required=True, parser_class=_Parser)
    pt = bsub.add_parser("train")
    pt.add_argument("--target", type=int, required=True,
                    help="target vocabulary size (or merge count with --merges)")
    pt.add_argument("--merges", action="store_true",
                    help="interpret --target as a number of merges")
    pt.add_argument("--corpus", required=True)
    pt.add_argument("--model", required=True)
    pt.add_argument("--id-col", action="store_true")
    pa = bsub.add_parser("apply")
    pa.add_argument("--model", required=True)
    pa.add_argument("infile", nargs="?", default=None)
    pa.add_argument("outfile", nargs="?", default=None)

    p = sub.add_parser("lexicon", help="emit token lexicon for a unit scheme")
    p.add_argument("--lm-unit", required=True, choices=lexicon.LM_UNITS)
    p.add_argument("--am-unit", required=True, choices=lexicon.AM_UNITS)
    p.add_argument("--bpe-model", default=None)
    p.add_argument("--phone-dict", default=None)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--id-col", action="store_true")

    p = sub.add_parser("census", help="count distinct units in a corpus")
    p.add_argument("--unit", required=True,
                   choices=("word", "vs", "bpe", "grapheme", "phoneme"))
    p.add_argument("--corpus", required=True)
    p.add_argument("--target", type=int, default=None, help="BPE vocabulary target")
    p.add_argument("--bpe-model", default=None)
    p.add_argument("--phone-dict", default=None)
    p.add_argument("--id-col", action="store_true")

    p = sub.add_parser("score", help="WER/CER/msd-WER scoring, optional OOV analysis")
    p.add_argument("--ref", required=True)
    p.add_argument("--hyp", required=True)
    p.add_argument("--train-vocab", default=None)
    p.add_argument("--max-span", type=int, default=4)
    p.add_argument("--by-line", action="store_true",
                   help="pair utterances by line number instead of leading id")
    p.add_argument("--json", dest="json_out", default=None)

    p = sub.add_parser("stats", help="word-length/consonant-run/rare-word statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--script", default=None, choices=SCRIPTS,
                   help="transliterate a native-script corpus to SLP1 first")
    p.add_argument("--threshold", type=int, default=3)
    p.add_argument("--run-mode", default="runs", choices=("runs", "per-word-max"))
    p.add_argument("--out", required=True)
    p.add_argument("--id-col", action="store_true")

    return parser


def cmd_translit(args) -> int:
    convert = to_slp1 if args.to == "slp1" else from_slp1
    table = get_table(args.script)
    name = _in_name(args.infile)
    with _open_in(args.infile) as fin, _open_out(args.outfile) as fout:
        for lineno, line in enumerate(fin, 1):
            line = line.rstrip("\n")
            try:
                report = convert(line, args.script, strict=not args.lossy,
                                  table=table)
            except AksaraError as exc:
                raise _line_error(name, lineno, exc) from exc
            for w in report.warnings:
                print(f"{name}:{lineno}: warning: {w.reason}: {w.char!r}",
                      file=sys.stderr)
            fout.write(report.output + "\n")
    return 0


def cmd_vseg(args) -> int:
    marker = DEFAULT_MARKER if args.marker else None
    name = _in_name(args.infile)
    with _open_in(args.infile) as fin, _open_out(args.outfile) as fout:
        for lineno, line in enumerate(fin, 1):
            try:
                fout.write(vowel_segment_text(line.rstrip("\n"), marker) + "\n")
            except AksaraError as exc:
                raise _line_error(name, lineno, exc) from exc
    return 0


def cmd_prosody(args) -> int:
    name = _in_name(args.infile)
    with _open_in(args.infile) as fin, _open_out(args.outfile) as fout:
        for lineno, line in enumerate(fin, 1):
            try:
                weights = [syllable_weights(w) for w in line.split()]
            except AksaraError as exc:
                raise _line_error(name, lineno, exc) from exc
            fout.write(" ".join(weights) + "\n")
    return 0


def _corpus_counter(path: str, id_col: bool) -> Counter:
    counts: Counter = Counter()
    for line in _read_corpus_lines(path, id_col):
        counts.update(line.split())
    if not counts:
        raise AksaraError(f"{path}: empty corpus")
    return counts


def cmd_bpe(args) -> int:
    if args.bpe_command == "train":
        counts = _corpus_counter(args.corpus, args.id_col)
        if args.merges:
            model = bpe.train(counts, num_merges=args.target)
        else:
            model = bpe.train(counts, vocab_size=args.target)
        bpe.save(model, args.model)
        print(f"trained {len(model.merges)} merges, vocab {len(model.vocab)}",
              file=sys.stderr)
        return 0
    model = bpe.load(args.model)
    name = _in_name(args.infile)
    with _open_in(args.infile) as fin, _open_out(args.outfile) as fout:
        for lineno, line in enumerate(fin, 1):
            try:
                units = [u for w in line.split() for u in model.encode(w)]
            except AksaraError as exc:
                raise _line_error(name, lineno, exc) from exc
            fout.write(" ".join(units) + "\n")
    return 0


def cmd_lexicon(args) -> int:
    model = bpe.load(args.bpe_model) if args.bpe_model else None
    pdict = lexicon.PronunciationDict.load(args.phone_dict) if args.phone_dict else None
    try:
        scheme = lexicon.UnitScheme(
            lm_unit=args.lm_unit, am_unit=args.am_unit,
            bpe_model=model, phone_dict=pdict,
        )
    except AksaraError as exc:
        # a missing model/dict is a flag problem, not a data problem
        raise UsageError(f"aksara lexicon: error: {exc}") from exc
    lines = _read_corpus_lines(args.corpus, args.id_col)
    artifact = lexicon.build_lexicon(lines, scheme)
    lexicon.emit(artifact, args.out)
    if artifact.missing:
        path = os.path.join(args.out, "lexicon_oov.txt")
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(artifact.missing) + "\n")
        print(f"{len(artifact.missing)} tokens without pronunciation -> {path}",
              file=sys.stderr)
    return 0


def cmd_census(args) -> int:
    lines = _read_corpus_lines(args.corpus, args.id_col)
    model = bpe.load(args.bpe_model) if args.bpe_model else None
    pdict = lexicon.PronunciationDict.load(args.phone_dict) if args.phone_dict else None
    if args.unit == "bpe" and model is None and args.target is None:
        raise UsageError("aksara census: error: --unit bpe requires --target or --bpe-model")
    if args.unit == "phoneme" and pdict is None:
        raise UsageError("aksara census: error: --unit phoneme requires --phone-dict")
    count = lexicon.vocab_census(
        lines, args.unit,
        bpe_target=args.target, bpe_model=model, phone_dict=pdict,
    )
    print(count)
    return 0


def cmd_score(args) -> int:
    train_vocab = None
    if args.train_vocab:
        with open(args.train_vocab, encoding="utf-8") as fh:
            train_vocab = set(fh.read().split())
    report = metrics.score(
        args.ref, args.hyp,
        train_vocab=train_vocab,
        max_span=args.max_span,
        by_line=args.by_line,
    )
    for key, value in report.as_dict().items():
        print(f"{key} {value if value is not None else 'n/a'}")
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(report.to_json())
    return 0


def cmd_stats(args) -> int:
    lines = _read_corpus_lines(args.corpus, args.id_col)
    if args.script:
        table = get_table(args.script)
        lines = [
            to_slp1(line, args.script, strict=False, table=table).output
            for line in lines
        ]
    counts: Counter = Counter()
    for line in lines:
        counts.update(line.split())
    if not counts:
        raise AksaraError(f"{args.corpus}: empty corpus")
    vocab = set(counts)
    lengths = stats.word_length_stats(vocab)
    runs = stats.consonant_run_stats(vocab, mode=args.run_mode)
    rare = stats.rare_word_rate(counts, threshold=args.threshold)
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, "length_stats.csv"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(stats.emit_plot_data(lengths, "csv"))
    with open(os.path.join(args.out, "run_stats.csv"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(stats.emit_plot_data(runs, "csv"))
    summary = {
        "n_tokens": sum(counts.values()),
        "n_types": len(vocab),
        "mean_word_length": stats.round_pct(lengths.mean),
        "length_bins_pct": {
            "n_le_6": stats.round_pct(lengths.bins[0]),
            "n_6_to_12": stats.round_pct(lengths.bins[1]),
            "n_gt_12": stats.round_pct(lengths.bins[2]),
        },
        "run_mode": args.run_mode,
        "max_consonant_run": runs.max_run,
        "run_distribution_pct": {
            str(n): stats.round_pct(p) for n, p in sorted(runs.distribution.items())
        },
        "rare_word_threshold": rare.threshold,
        "rare_word_rate_pct": stats.round_pct(rare.rate),
    }
    with open(os.path.join(args.out, "summary.json"), "w",
              encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(summary, indent=2) + "\n")
    return 0


_HANDLERS = {
    "translit": cmd_translit,
    "vseg": cmd_vseg,
    "prosody": cmd_prosody,
    "bpe": cmd_bpe,
    "lexicon": cmd_lexicon,
    "census": cmd_census,
    "score": cmd_score,
    "stats": cmd_stats,
}


def main(argv=None) -> int:
    for stream in (sys.stdin, sys.stdout):
        try:
            stream.reconfigure(encoding="utf-8")
        except (AttributeError, ValueError, OSError):
            pass
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except AksaraError as exc:
        print(f"aksara: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"aksara: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
