"""How much longer encodings get when only part of the vocabulary is kept.

Subsets are merge-rank prefixes: the first k merges plus the byte base,
the only subsets guaranteed to stay closed under BPE derivation.  Rank
order approximates frequency order, so the prefix is the natural "most
useful k merges" cut.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .tokenizers import BpeModel, bpe_encode, rank_prefix


@dataclass(frozen=True)
class AblationCurve:
    """Token totals per retained-merge fraction; the last fraction is 1.0."""

    fractions: tuple[float, ...]
    token_totals: tuple[int, ...]

    def __post_init__(self):
        if len(self.fractions) != len(self.token_totals):
            raise InvalidArgumentError("fractions and totals differ in length")
        if not self.fractions or self.fractions[-1] != 1.0:
            raise InvalidArgumentError("fractions must end with 1.0")
        for a, b in zip(self.fractions, self.fractions[1:]):
            if not a < b:
                raise InvalidArgumentError("fractions must be strictly increasing")

    @property
    def length_ratios(self) -> tuple[float, ...]:
        full = self.token_totals[-1]
        return tuple(total / full for total in self.token_totals)


def ablate(model: BpeModel, documents, fractions) -> AblationCurve:
    """Encode ``documents`` with each rank-prefix of ``model``.

    For fraction f the first floor(f * merge_count) merges are retained.
    Fractions must lie in (0, 1], contain 1.0 and contain no duplicates.
    """
    if not model.merges:
        raise InvalidArgumentError("model has no merges to ablate")
    fracs = sorted(fractions)
    if not fracs:
        raise InvalidArgumentError("at least one fraction is required")
    for f in fracs:
        if not 0.0 < f <= 1.0:
            raise InvalidArgumentError(f"fraction {f} outside (0, 1]")
    if fracs[-1] != 1.0:
        raise InvalidArgumentError("fractions must include 1.0")
    for a, b in zip(fracs, fracs[1:]):
        if a == b:
            raise InvalidArgumentError(f"duplicate fraction {a}")

    docs = list(documents)
    totals = []
    for f in fracs:
        retained = math.floor(f * len(model.merges))
        sub = rank_prefix(model, retained)
        totals.append(sum(bpe_encode(sub, doc).length for doc in docs))
    return AblationCurve(fractions=tuple(fracs), token_totals=tuple(totals))


def curve_to_tsv(curve: AblationCurve) -> str:
    lines = ["fraction\ttokens\tlength_ratio"]
    for f, total, ratio in zip(curve.fractions, curve.token_totals, curve.length_ratios):
        lines.append(f"{f:.4f}\t{total}\t{ratio:.4f}")
    return "\n".join(lines) + "\n"


def curve_to_dict(curve: AblationCurve) -> dict:
    return {
        "points": [
            {"fraction": f, "tokens": total, "length_ratio": ratio}
            for f, total, ratio in zip(
                curve.fractions, curve.token_totals, curve.length_ratios
            )
        ]
    }
