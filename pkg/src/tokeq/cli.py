"""Command-line surface for reproducible batch runs.

Subcommands: train, encode, parity, merge, ablate, cost.  Identical inputs
and flags produce byte-identical outputs: rows are sorted by language code
and numbers use fixed decimal formatting.  stdout carries only data;
diagnostics go to stderr (verbosity via the TOKEQ_LOG env var).  Exit
codes: 0 success, 2 invalid arguments, 3 I/O or parse errors, 4 corpus
alignment errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import ablation, fairmerge, model_io, parity
from .corpus import load_documents, load_parallel
from .errors import (
    AlignmentError,
    CorpusEncodingError,
    DecodeError,
    DegenerateDenominatorError,
    ExcludedLanguageError,
    InvalidArgumentError,
    ParseError,
    ValidationError,
)
from .tokenizers import bpe_train

log = logging.getLogger("tokeq")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_ALIGNMENT = 4


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def _parse_fractions(raw: str) -> list[float]:
    try:
        return [float(part) for part in raw.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {raw!r}")


def cmd_train(args) -> int:
    documents = load_documents(args.corpus)
    model = bpe_train(documents, args.vocab_size, args.boundary)
    model_io.save_model(model, args.out)
    _emit(
        f"merges\t{len(model.merges)}\nvocab_size\t{len(model.vocab)}\n",
        None,
    )
    return EXIT_OK


def cmd_encode(args) -> int:
    tokenizer = model_io.resolve_tokenizer(args.tokenizer)
    if args.text is not None:
        lines = [args.text]
    elif args.input is not None:
        lines = load_documents(args.input)
    else:
        lines = sys.stdin.read().split("\n")
        if lines and lines[-1] == "":
            lines.pop()
    encodings = [tokenizer.encode(line) for line in lines]
    if args.format == "json":
        payload = {
            "tokenizer": args.tokenizer,
            "lines": [
                {"tokens": e.length, "ids": list(e.ids)} for e in encodings
            ],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        rows = ["line\ttokens\tids"]
        for i, e in enumerate(encodings):
            rows.append(f"{i}\t{e.length}\t{' '.join(str(t) for t in e.ids)}")
        _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


_AGGREGATION_FLAG = {"total": parity.TOTAL_RATIO, "mean": parity.MEAN_OF_RATIOS}


def cmd_parity(args) -> int:
    corpus = load_parallel(args.corpus_dir, nfc=args.nfc)
    tokenizer = model_io.resolve_tokenizer(args.tokenizer)
    report = parity.corpus_premiums(
        tokenizer, corpus, args.pivot, _AGGREGATION_FLAG[args.aggregation]
    )
    report = parity.apply_unk_filter(report, args.unk_threshold)
    if report.dropped_pairs:
        log.warning("dropped %d sentence pairs with an empty side", report.dropped_pairs)
    if args.format == "json":
        _emit(parity.report_to_json(report), args.out)
    elif args.format == "pretty":
        _emit(parity.report_to_pretty(report), args.out)
    else:
        _emit(parity.report_to_tsv(report), args.out)
    return EXIT_OK


def cmd_merge(args) -> int:
    corpus = load_parallel(args.corpus_dir)
    models = fairmerge.train_monolingual_all(
        corpus, args.per_lang_vocab, args.boundary
    )
    state = fairmerge.run_fair_merge(
        corpus, models, args.target_vocab, args.reference, jobs=args.jobs
    )
    tokenizer = fairmerge.FairTokenizer(
        vocab=state.shared_vocab, provenance=dict(state.provenance)
    )
    model_io.save_fair_tokenizer(tokenizer, args.out)
    lines = [f"merged_vocab_size\t{len(tokenizer.vocab)}", "language\tpremium"]
    for code in sorted(state.premiums):
        lines.append(f"{code}\t{state.premiums[code]:.2f}")
    lines.append(f"max_premium\t{max(state.premiums.values()):.2f}")
    _emit("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_ablate(args) -> int:
    model = model_io.load_model(args.model)
    documents = load_documents(args.corpus)
    curve = ablation.ablate(model, documents, args.fractions)
    if args.format == "json":
        _emit(
            json.dumps(ablation.curve_to_dict(curve), indent=2, sort_keys=True) + "\n",
            args.out,
        )
    else:
        _emit(ablation.curve_to_tsv(curve), args.out)
    return EXIT_OK


_PRICING_FLAG = {"per-token": parity.PER_TOKEN, "per-char": parity.PER_CHARACTER}


def cmd_cost(args) -> int:
    path = Path(args.report)
    report = parity.report_from_json(path.read_text(encoding="utf-8"), path=path)
    pricing = parity.PricingScheme(_PRICING_FLAG[args.pricing], args.unit_price)
    chars = {code: row.char_total for code, row in report.rows.items()}
    costs = parity.cost_table(report, pricing, chars)
    included = [c for c in report.codes() if report.rows[c].included]
    capacity = (
        parity.context_capacity(report, args.window, included)
        if args.window is not None
        else None
    )
    latency = (
        parity.latency_table(report, args.seconds_per_token)
        if args.seconds_per_token is not None
        else None
    )
    if args.format == "json":
        payload = {}
        for code in included:
            entry = {
                "units": costs[code].units,
                "cost": costs[code].cost,
                "cost_premium": costs[code].cost_premium,
            }
            if capacity is not None:
                entry["effective_tokens"] = capacity[code]
            if latency is not None:
                entry["estimated_seconds"] = latency[code]
            payload[code] = entry
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
        return EXIT_OK
    header = "language\tunits\tcost\tcost_premium"
    if capacity is not None:
        header += "\teffective_tokens"
    if latency is not None:
        header += "\testimated_seconds"
    rows = [header]
    for code in included:
        row = f"{code}\t{costs[code].units}\t{costs[code].cost:.6f}\t{costs[code].cost_premium:.4f}"
        if capacity is not None:
            row += f"\t{capacity[code]:.4f}"
        if latency is not None:
            row += f"\t{latency[code]:.6f}"
        rows.append(row)
    _emit("\n".join(rows) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokeq",
        description="Tokenizer language-parity toolkit: train tokenizers, "
        "measure per-language token premiums and their cost, latency and "
        "context-window consequences, ablate vocabularies, and build a "
        "parity-driven merged vocabulary.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("train", help="train a byte-level BPE model")
    p.add_argument("--corpus", required=True, help="text file or directory of .txt files")
    p.add_argument("--vocab-size", type=int, required=True, help="target size incl. the 256 byte tokens")
    p.add_argument("--boundary", choices=["none", "whitespace"], default="whitespace")
    p.add_argument("--out", required=True, help="model directory to write")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("encode", help="tokenize text with a selected tokenizer")
    p.add_argument("--tokenizer", required=True, help="byte | codepoint | bpe:<dir> | fair:<dir>")
    p.add_argument("--text", help="encode this string instead of reading a file")
    p.add_argument("--input", help="text file, one line per record (default: stdin)")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("parity", help="per-language premium report over a parallel corpus")
    p.add_argument("--corpus-dir", required=True, help="directory with manifest.json")
    p.add_argument("--pivot", required=True, help="reference language code")
    p.add_argument("--tokenizer", required=True, help="byte | codepoint | bpe:<dir> | fair:<dir>")
    p.add_argument("--aggregation", choices=["total", "mean"], default="total")
    p.add_argument("--unk-threshold", type=float, default=parity.DEFAULT_UNK_THRESHOLD)
    p.add_argument("--format", choices=["tsv", "json", "pretty"], default="tsv")
    p.add_argument("--nfc", action="store_true", help="NFC-normalize sentences at load")
    p.add_argument("--out")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("merge", help="build a parity-driven merged vocabulary")
    p.add_argument("--corpus-dir", required=True)
    p.add_argument("--per-lang-vocab", type=int, required=True, help="vocab size of each monolingual model")
    p.add_argument("--target-vocab", type=int, required=True, help="size of the merged vocabulary")
    p.add_argument("--reference", default="auto", help="'auto' (worst/best ratio) or a language code")
    p.add_argument("--boundary", choices=["none", "whitespace"], default="whitespace")
    p.add_argument("--jobs", type=int, default=1, help="worker threads; never affects output")
    p.add_argument("--out", required=True, help="tokenizer directory to write")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("ablate", help="token totals for rank-prefix subsets of a model")
    p.add_argument("--model", required=True, help="model directory")
    p.add_argument("--corpus", required=True, help="text file to encode")
    p.add_argument("--fractions", type=_parse_fractions, required=True,
                   help="comma-separated fractions in (0,1], must include 1.0")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ablate)

    p = sub.add_parser("cost", help="cost / context / latency tables from a parity report")
    p.add_argument("--report", required=True, help="JSON report from 'tokeq parity --format json'")
    p.add_argument("--pricing", choices=["per-token", "per-char"], required=True)
    p.add_argument("--unit-price", type=float, required=True)
    p.add_argument("--window", type=int, help="context window size in tokens")
    p.add_argument("--seconds-per-token", type=float)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cost)

    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("TOKEQ_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(message)s",
        force=True,  # rebind to the current stderr on every invocation
    )


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AlignmentError as exc:
        log.error("%s", exc)
        return EXIT_ALIGNMENT
    except (
        InvalidArgumentError,
        ValidationError,
        DegenerateDenominatorError,
        ExcludedLanguageError,
    ) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (ParseError, CorpusEncodingError, DecodeError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
