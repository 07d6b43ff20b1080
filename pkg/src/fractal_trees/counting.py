"""Assembly of exact spanning-tree counts from the spectrum tables.

tau(G_n) = | prod d_j / sum d_j * prod over spectrum entries of the
preiterate product |, everything kept in prime-factored form.  The
preiterate product of a conjugate family is closed form: the product of
all d^k k-fold preimages of every conjugate of beta equals
norm(beta) * (-Q(0)/P_d)^(deg * (d^k - 1)/(d - 1)), which is what makes
counts with 10^14 digits tractable.
"""

from __future__ import annotations

from fractions import Fraction

from .decimation import DecimationData, derive, spectrum
from .factored import FactoredInteger, FactoredRational
from .levels import degree_stats
from .polys import AlgebraicClass
from .structures import SelfSimilarStructure

Q = Fraction


class AssemblyError(ArithmeticError):
    """The factored assembly failed to produce a positive integer."""


def preiterate_product(dd: DecimationData, base: AlgebraicClass, k: int) -> FactoredRational:
    """Product of all k-fold R-preimages of all conjugates of base, factored.

    k = 0 gives the class norm itself.  The zero eigenvalue is never
    lifted (connectivity), so a base containing 0 is rejected for k >= 1.
    """
    if k < 0:
        raise ValueError("preiterate depth must be nonnegative")
    if base.contains_zero():
        if k >= 1:
            raise ValueError("the zero eigenvalue is never lifted to preiterates")
        raise ValueError("class norm of a class containing 0 vanishes")
    norm = FactoredRational.from_fraction(base.norm())
    if k == 0:
        return norm
    if dd.d == 1:
        exponent = base.degree * k
    else:
        exponent = base.degree * (dd.d ** k - 1) // (dd.d - 1)
    # one preimage step scales the root product by (-1)^(d+1) Q(0)/P_d:
    # the constant term of the monic preimage polynomial is -w Q(0)/P_d
    # and the product of its d roots carries a further (-1)^d
    sign = 1 if dd.d % 2 == 1 else -1
    ratio = FactoredRational.from_fraction(sign * dd.Q0 / dd.Pd)
    return norm * ratio ** exponent


def tau(s: SelfSimilarStructure, n: int, dd: DecimationData | None = None) -> FactoredInteger:
    """Exact number of spanning trees of G_n, in factored form."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    if n == 0:
        # complete graph on the boundary: Cayley's formula
        return FactoredInteger.from_int(s.v0_size ** (s.v0_size - 2))
    if dd is None:
        dd = derive(s)
    table = spectrum(dd, n)
    stats = degree_stats(s, n)

    acc = FactoredRational.one()
    for deg in stats.corner_degrees:
        acc = acc * FactoredRational.from_int(deg)
    for deg, count in sorted(stats.interior_histogram.items()):
        acc = acc * FactoredRational.from_int(deg) ** count
    # sum of degrees = 2 E_n = m^n |V0| (|V0| - 1)
    acc = acc / (
        FactoredRational.from_int(s.m) ** n
        * FactoredRational.from_int(s.v0_size * (s.v0_size - 1))
    )
    for cls, k, mult in table.entries:
        acc = acc * preiterate_product(dd, cls, k) ** mult

    if acc.sign != 1 or not acc.is_integer():
        raise AssemblyError(
            f"assembly mismatch at level {n}: result {acc} is not a positive integer"
        )
    return acc.as_integer()


def exponent_table(
    s: SelfSimilarStructure, n_max: int, dd: DecimationData | None = None
) -> dict[int, list[int]]:
    """Per-prime exponent sequences of tau(G_n) for 0 <= n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if dd is None:
        dd = derive(s)
    taus = [tau(s, n, dd) for n in range(n_max + 1)]
    primes = sorted({p for t in taus for p in t.factors})
    return {p: [t.exponent(p) for t in taus] for p in primes}
