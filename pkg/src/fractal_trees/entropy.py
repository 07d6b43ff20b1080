"""Asymptotic complexity constants (tree entropy) and their bounds.

c_n = ln tau(G_n) / |V_n| is evaluated from the exact prime exponents of
tau(G_n) with mpmath at a requested precision; the integer itself is
never formed.  The general bounds ln(3)/2 <= c <= ln((m-1)|V0|(|V0|-1) /
(|V1|-|V0|)) apply when |V0| > 2 and G_1 is not a tree; the 3-branch
tree structure attains the lower bound, which the demo below exhibits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .counting import tau
from .decimation import DecimationData, DecimationError, derive
from .levels import vertex_count_formula
from .structures import SelfSimilarStructure

Q = Fraction


@dataclass(frozen=True)
class EntropyReport:
    name: str
    precision: int
    values: tuple  # ((n, mpf), ...)
    extrapolated: object
    lower_bound: object
    upper_bound: Optional[object]
    bounds_applicable: bool
    diffs_decreasing: bool

    def within_bounds(self) -> Optional[bool]:
        if not self.bounds_applicable:
            return None
        return bool(
            self.lower_bound <= self.extrapolated
            and self.extrapolated <= self.upper_bound
        )


def g1_is_tree(s: SelfSimilarStructure) -> bool:
    total = sum(m for _, _, m in s.edges1)
    simple = all(m == 1 for _, _, m in s.edges1)
    return simple and total == s.v1_size - 1


def bounds(s: SelfSimilarStructure, precision: int = 30):
    """(lower, upper, applicable) for the asymptotic complexity constant.

    Inapplicable (None bounds) when |V0| = 2 or G_1 is a tree, where
    the bounds' hypotheses fail.
    """
    applicable = s.v0_size > 2 and not g1_is_tree(s)
    with mpmath.workdps(precision + 10):
        if not applicable:
            return None, None, False
        lower = mpmath.log(3) / 2
        ratio = Q((s.m - 1) * s.v0_size * (s.v0_size - 1), s.v1_size - s.v0_size)
        upper = mpmath.log(mpmath.mpf(ratio.numerator) / ratio.denominator)
        return lower, upper, True


def entropy(
    s: SelfSimilarStructure,
    n_max: int = 30,
    precision: int = 30,
    dd: DecimationData | None = None,
) -> EntropyReport:
    """c_n for 2 <= n <= n_max from exact exponent data; c_{n_max} reported."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    if precision < 6:
        raise ValueError("precision must be at least 6 digits")
    if dd is None:
        try:
            dd = derive(s)
        except DecimationError as e:
            raise DecimationError(
                f"{e}; spectral decimation unavailable for {s.name!r} - use the "
                "brute-force oracle at small levels instead"
            ) from e
    dps = precision + 10
    with mpmath.workdps(dps):
        logs: dict[int, mpmath.mpf] = {}
        values = []
        for n in range(2, n_max + 1):
            t = tau(s, n, dd)
            acc = mpmath.mpf(0)
            for p, e in sorted(t.factors.items()):
                if p not in logs:
                    logs[p] = mpmath.log(p)
                acc += e * logs[p]
            values.append((n, acc / vertex_count_formula(s, n)))
        diffs = [abs(values[i + 1][1] - values[i][1]) for i in range(len(values) - 1)]
        tail = diffs[-5:]
        decreasing = all(tail[i + 1] <= tail[i] for i in range(len(tail) - 1))
        lower, upper, applicable = bounds(s, precision)
    return EntropyReport(
        name=s.name,
        precision=precision,
        values=tuple(values),
        extrapolated=values[-1][1],
        lower_bound=lower,
        upper_bound=upper,
        bounds_applicable=applicable,
        diffs_decreasing=decreasing,
    )


@dataclass(frozen=True)
class SharpnessReport:
    values: tuple          # ((n, c_n), ...) for the 3-branch tree structure
    target: object         # ln(3)/2
    monotone_increasing: bool
    final_gap: object


def tree_entropy_sharpness_demo(n_max: int = 8, precision: int = 30) -> SharpnessReport:
    """The 3-branch tree structure attains the lower bound ln(3)/2.

    tau(G_n) = 3^(3^n) (a wedge of 3^n triangles, counted by the wedge
    product rule) and |V_n| = 1 + 2*3^n, so c_n = 3^n ln(3) / (1 + 2*3^n)
    increases to ln(3)/2.
    """
    with mpmath.workdps(precision + 10):
        log3 = mpmath.log(3)
        values = []
        for n in range(n_max + 1):
            pw = 3 ** n
            values.append((n, pw * log3 / (1 + 2 * pw)))
        target = log3 / 2
        monotone = all(values[i + 1][1] > values[i][1] for i in range(len(values) - 1))
        gap = abs(target - values[-1][1])
    return SharpnessReport(
        values=tuple(values),
        target=target,
        monotone_increasing=monotone,
        final_gap=gap,
    )
