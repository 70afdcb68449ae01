"""Token-count premiums over a parallel corpus and their consequences.

The premium of language A against a pivot is the ratio of A's token count
to the pivot's for the same content.  From a premium report the per-token
or per-character cost, the effective context-window capacity and a linear
latency estimate follow directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .corpus import ParallelCorpus, char_counts
from .errors import (
    DegenerateDenominatorError,
    ExcludedLanguageError,
    InvalidArgumentError,
    ParseError,
    ValidationError,
)

TOTAL_RATIO = "total-ratio"
MEAN_OF_RATIOS = "mean-of-ratios"
AGGREGATIONS = (TOTAL_RATIO, MEAN_OF_RATIOS)

DEFAULT_UNK_THRESHOLD = 0.10

PER_TOKEN = "per-token"
PER_CHARACTER = "per-character"

TSV_HEADER = "language\ttokens\tpremium\tunk_fraction\tincluded"

EXCLUDED_MARK = "—"  # em dash, the mark used for filtered-out rows


@dataclass(frozen=True)
class PremiumRow:
    token_total: int
    premium: float
    unk_fraction: float
    included: bool
    char_total: int


@dataclass(frozen=True)
class PremiumReport:
    pivot: str
    aggregation: str
    rows: dict[str, PremiumRow]
    dropped_pairs: int = 0
    unk_threshold: float | None = None

    def codes(self) -> tuple[str, ...]:
        return tuple(sorted(self.rows))


@dataclass(frozen=True)
class PricingScheme:
    kind: str
    unit_price: float

    def __post_init__(self):
        if self.kind not in (PER_TOKEN, PER_CHARACTER):
            raise InvalidArgumentError(f"unknown pricing kind {self.kind!r}")
        if self.unit_price < 0:
            raise InvalidArgumentError("unit_price must be non-negative")


@dataclass(frozen=True)
class CostRow:
    units: int
    cost: float
    cost_premium: float


def sentence_premium(tokenizer, s_a: str, s_b: str) -> float:
    """Token count of ``s_a`` divided by that of its translation ``s_b``."""
    denominator = tokenizer.encode(s_b).length
    if denominator == 0:
        raise DegenerateDenominatorError(
            "reference sentence tokenizes to zero tokens"
        )
    return tokenizer.encode(s_a).length / denominator


def corpus_premiums(
    tokenizer,
    corpus: ParallelCorpus,
    pivot: str,
    aggregation: str = TOTAL_RATIO,
) -> PremiumReport:
    """Per-language premiums against ``pivot`` over the whole corpus.

    total-ratio divides per-language token totals; mean-of-ratios averages
    per-line ratios.  Lines that are empty in any language are dropped from
    both numerator and denominator (counted in ``dropped_pairs``); UNK
    fractions are measured over all codepoints of each language.
    """
    if aggregation not in AGGREGATIONS:
        raise InvalidArgumentError(f"unknown aggregation {aggregation!r}")
    if pivot not in corpus.languages:
        raise ValidationError(f"pivot {pivot!r} not in corpus")
    kept = corpus.kept_indices
    counts: dict[str, list[int]] = {}
    unk: dict[str, int] = {}
    total_cp: dict[str, int] = {}
    for code in corpus.codes:
        encodings = [tokenizer.encode(line) for line in corpus.sentences(code)]
        counts[code] = [e.length for e in encodings]
        unk[code] = sum(e.unk_codepoints for e in encodings)
        total_cp[code] = sum(e.total_codepoints for e in encodings)

    pivot_counts = counts[pivot]
    pivot_total = sum(pivot_counts[i] for i in kept)
    if pivot_total == 0:
        raise DegenerateDenominatorError(f"pivot {pivot!r} token total is zero")

    rows: dict[str, PremiumRow] = {}
    chars = char_counts(corpus)
    for code in corpus.codes:
        lang_counts = counts[code]
        token_total = sum(lang_counts[i] for i in kept)
        if aggregation == TOTAL_RATIO:
            premium = token_total / pivot_total
        else:
            ratios = [
                lang_counts[i] / pivot_counts[i] for i in kept if pivot_counts[i] > 0
            ]
            if not ratios:
                raise DegenerateDenominatorError(
                    f"pivot {pivot!r} has no non-degenerate lines"
                )
            premium = sum(ratios) / len(ratios)
        fraction = unk[code] / total_cp[code] if total_cp[code] else 0.0
        rows[code] = PremiumRow(
            token_total=token_total,
            premium=premium,
            unk_fraction=fraction,
            included=True,
            char_total=chars[code],
        )
    return PremiumReport(
        pivot=pivot,
        aggregation=aggregation,
        rows=rows,
        dropped_pairs=corpus.dropped_pairs,
    )


def apply_unk_filter(
    report: PremiumReport, threshold: float = DEFAULT_UNK_THRESHOLD
) -> PremiumReport:
    """Mark rows whose UNK fraction strictly exceeds ``threshold`` as excluded.

    A fraction equal to the threshold stays included.  Premiums are kept on
    excluded rows for inspection; renderers show them as dashes.
    """
    if not 0.0 <= threshold <= 1.0:
        raise InvalidArgumentError(f"threshold {threshold} outside [0, 1]")
    rows = {
        code: replace(row, included=row.unk_fraction <= threshold)
        for code, row in report.rows.items()
    }
    return replace(report, rows=rows, unk_threshold=threshold)


def cost_table(
    report: PremiumReport,
    pricing: PricingScheme,
    char_counts: dict[str, int] | None = None,
) -> dict[str, CostRow]:
    """Billable units, cost and cost premium per language.

    Per-token pricing bills the token totals, so the cost premium is the
    token premium itself.  Per-character pricing bills codepoints and needs
    ``char_counts``.
    """
    out: dict[str, CostRow] = {}
    if pricing.kind == PER_TOKEN:
        for code in report.codes():
            row = report.rows[code]
            out[code] = CostRow(
                units=row.token_total,
                cost=pricing.unit_price * row.token_total,
                cost_premium=row.premium,
            )
        return out
    if char_counts is None:
        raise InvalidArgumentError("per-character pricing requires char_counts")
    try:
        pivot_chars = char_counts[report.pivot]
    except KeyError:
        raise InvalidArgumentError(
            f"char_counts missing pivot {report.pivot!r}"
        ) from None
    if pivot_chars == 0:
        raise DegenerateDenominatorError("pivot codepoint total is zero")
    for code in report.codes():
        try:
            units = char_counts[code]
        except KeyError:
            raise InvalidArgumentError(f"char_counts missing {code!r}") from None
        out[code] = CostRow(
            units=units,
            cost=pricing.unit_price * units,
            cost_premium=units / pivot_chars,
        )
    return out


def context_capacity(
    report: PremiumReport, window_tokens: int, languages=None
) -> dict[str, float]:
    """Pivot-equivalent tokens of content that fit in a fixed window.

    A language at premium p fits window/p pivot-equivalent tokens.  Only
    included rows are meaningful; asking for an excluded one is an error.
    """
    if window_tokens <= 0:
        raise InvalidArgumentError("window_tokens must be positive")
    if languages is None:
        languages = [c for c in report.codes() if report.rows[c].included]
    out: dict[str, float] = {}
    for code in languages:
        try:
            row = report.rows[code]
        except KeyError:
            raise InvalidArgumentError(f"language {code!r} not in report") from None
        if not row.included:
            raise ExcludedLanguageError(
                f"language {code!r} is excluded by the UNK filter"
            )
        out[code] = window_tokens / row.premium
    return out


def latency_table(report: PremiumReport, seconds_per_token: float) -> dict[str, float]:
    """Processing-time estimates under a linear tokens-to-seconds model."""
    return {
        code: seconds_per_token * report.rows[code].token_total
        for code in report.codes()
    }


def report_to_tsv(report: PremiumReport) -> str:
    lines = [TSV_HEADER]
    for code in report.codes():
        row = report.rows[code]
        lines.append(
            f"{code}\t{row.token_total}\t{row.premium:.4f}"
            f"\t{row.unk_fraction:.4f}\t{'true' if row.included else 'false'}"
        )
    return "\n".join(lines) + "\n"


def report_to_dict(report: PremiumReport) -> dict:
    return {
        "pivot": report.pivot,
        "aggregation": report.aggregation,
        "unk_threshold": report.unk_threshold,
        "dropped_pairs": report.dropped_pairs,
        "rows": {
            code: {
                "token_total": row.token_total,
                "premium": row.premium,
                "unk_fraction": row.unk_fraction,
                "included": row.included,
                "char_total": row.char_total,
            }
            for code, row in sorted(report.rows.items())
        },
    }


def report_to_json(report: PremiumReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"


def report_from_json(text: str, path=None) -> PremiumReport:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from exc
    try:
        rows = {
            code: PremiumRow(
                token_total=entry["token_total"],
                premium=entry["premium"],
                unk_fraction=entry["unk_fraction"],
                included=entry["included"],
                char_total=entry["char_total"],
            )
            for code, entry in data["rows"].items()
        }
        return PremiumReport(
            pivot=data["pivot"],
            aggregation=data["aggregation"],
            rows=rows,
            dropped_pairs=data.get("dropped_pairs", 0),
            unk_threshold=data.get("unk_threshold"),
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"report is missing field {exc}", path=path) from exc


def report_to_pretty(report: PremiumReport) -> str:
    """Human-oriented table: premiums to two decimals, dashes for excluded rows."""
    header = [
        f"pivot: {report.pivot}",
        f"aggregation: {report.aggregation}",
        f"dropped pairs: {report.dropped_pairs}",
    ]
    if report.unk_threshold is not None:
        header.append(f"unk threshold: {report.unk_threshold:.2f}")
    width = max(len("language"), *(len(c) for c in report.codes()))
    lines = header + ["", f"{'language'.ljust(width)}  {'tokens':>10}  premium"]
    for code in report.codes():
        row = report.rows[code]
        shown = f"{row.premium:.2f}" if row.included else EXCLUDED_MARK
        lines.append(f"{code.ljust(width)}  {row.token_total:>10}  {shown}")
    return "\n".join(lines) + "\n"
