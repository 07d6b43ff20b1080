"""Spectral decimation: derive (phi, R), classify exceptional values, and
run the level-by-level multiplicity induction.

The pipeline, all in exact arithmetic:

  1. Block the level-1 probabilistic Laplacian as [[A, B], [C, D]] with A
     indexed by the boundary.  Full symmetry forces A = I (no edge joins
     two boundary vertices).
  2. Compute the Schur complement S(z) = (A - zI) - B (D - zI)^-1 C over
     the rational-function field and extract the unique scalar functions
     phi(z) = -(|V0|-1) S_12(z) and R(z) = 1 - S_11(z)/phi(z).  The
     matrix identity S(z) = phi(z) (P0 - R(z)) is verified entrywise; a
     failure falsifies full symmetry and aborts.
  3. Classify every exceptional value (eigenvalues of D and zeros of phi)
     by exact polynomial divisibility and map it to one of the eight
     multiplicity rules.  Predicates about removable singularities are
     decided on the raw (pre-cancellation) numerator/denominator pair of
     R, because reduction destroys exactly the information those rules
     speak about.
  4. Induct the spectrum of P_n upward.  Non-exceptional eigenvalues lift
     to their d preimages with unchanged multiplicity; they are tracked
     symbolically as (base class, depth) preiterate families.  A family
     whose next preimage set would contain an exceptional value cannot be
     lifted wholesale: at depth one the preimage polynomial is factored
     and only the regular factors are kept (the exceptional members are
     owned by the case rules).  The eigenvalue-count sum rule is asserted
     at every level, and `crosscheck_spectrum` compares the predicted
     spectrum against the characteristic polynomial of an explicitly
     built level graph.

One deliberate deviation from the literal wording of the case rules: the
rule for eigenvalues of D at which phi has a pole nominally also requires
a pole of phi(z)R(z).  When R happens to vanish at such a point the
product is finite although the multiplicity formula is unchanged (the
Sierpinski value 5/4 is the standard example), so the dispatch here keys
on the phi pole and the finiteness of R only; the phi*R predicate is
recorded in the case record but not consulted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .levels import build_level, vertex_count_formula
from .kirchhoff import degrees, prob_laplacian_charpoly
from .matrices import charpoly, solve_linear
from .polys import (
    AlgebraicClass,
    Polynomial,
    RationalFunction,
    factor_classes,
    image_class_poly,
    preimage_poly,
)
from .structures import SelfSimilarStructure, validated

Q = Fraction

ZERO_CLASS = AlgebraicClass.from_rational(0)


class DecimationError(ValueError):
    """Base class for failures of the decimation pipeline."""


class BoundaryAdjacencyError(DecimationError):
    pass


class NotFullySymmetricError(DecimationError):
    pass


class UnclassifiableError(DecimationError):
    pass


class InconsistentSpectrumError(DecimationError):
    pass


# ---------------------------------------------------------------------------
# case records


@dataclass(frozen=True)
class CaseRecord:
    """Exact predicates and the selected multiplicity rule for one value."""

    value: AlgebraicClass
    case_id: int
    mult_d: int              # multiplicity of the class in sigma(D)
    in_sigma_d: bool
    phi_zero: bool
    phi_pole: bool
    phi_r_pole: bool
    r_pole: bool
    r_removable: bool
    dr_nonzero: bool
    image: Optional[AlgebraicClass]  # class of R(value); None when R has a pole

    def multiplicity(self, m: int, n: int, v_prev: int, mult_image_prev: int) -> int:
        """Apply the case rule at level n >= 1."""
        scale = m ** (n - 1) * self.mult_d
        if self.case_id == 1:
            return mult_image_prev
        if self.case_id == 2:
            return v_prev
        if self.case_id == 3:
            return scale - v_prev + mult_image_prev
        if self.case_id == 4:
            return scale + mult_image_prev
        if self.case_id == 5:
            return scale + v_prev + mult_image_prev
        if self.case_id == 6:
            return scale - v_prev + 2 * mult_image_prev
        if self.case_id == 7:
            return 0
        if self.case_id == 8:
            return scale
        raise AssertionError(f"bad case id {self.case_id}")


# ---------------------------------------------------------------------------
# forward orbits of exceptional values


class ForwardChain:
    """Classes of R(e), R(R(e)), ... for one exceptional class e.

    Iteration stops once the orbit provably never meets the spectrum
    again: at a pole of R, or once every conjugate has modulus above the
    escape bound (|R(z)| >= 2|z| there, so the orbit diverges).  Cycles
    are detected so arbitrary depths can be answered.
    """

    def __init__(self, dd: "DecimationData", start: AlgebraicClass):
        self.dd = dd
        self.classes: list[AlgebraicClass] = [start]
        self.status = "active"  # active | pole | escaped | cycle
        self.cycle_start = 0

    def class_at(self, k: int) -> Optional[AlgebraicClass]:
        """Class of R^k(e), or None if the orbit left the spectrum."""
        while self.status == "active" and len(self.classes) <= k:
            self._step()
        if k < len(self.classes):
            return self.classes[k]
        if self.status == "cycle":
            period = len(self.classes) - self.cycle_start
            return self.classes[self.cycle_start + (k - self.cycle_start) % period]
        return None

    def _step(self):
        dd = self.dd
        cur = self.classes[-1]
        if cur.minpoly.divides(dd.R.den):
            self.status = "pole"
            return
        nxt = dd.image_of(cur)
        if _class_escaped(nxt, dd.escape_bound):
            self.status = "escaped"
            return
        _guard_height(nxt)
        for i, seen in enumerate(self.classes):
            if seen == nxt:
                self.status = "cycle"
                self.cycle_start = i
                return
        self.classes.append(nxt)
        if len(self.classes) > 4096:
            raise InconsistentSpectrumError(
                "forward orbit of an exceptional value neither escapes nor "
                "cycles; cannot certify the spectrum bookkeeping"
            )


def _guard_height(cls: AlgebraicClass):
    for c in cls.minpoly.coeffs:
        if c.numerator.bit_length() > 1_000_000 or c.denominator.bit_length() > 1_000_000:
            raise InconsistentSpectrumError(
                "forward orbit coefficients blew up; cannot certify the "
                "spectrum bookkeeping"
            )


def _class_escaped(cls: AlgebraicClass, bound: Fraction) -> bool:
    """True when every root of the class provably has modulus > bound."""
    if cls.is_rational():
        return abs(cls.rational_value()) > bound
    a0 = cls.minpoly.constant_term()
    if a0 == 0:
        return False
    # min root modulus >= 1 / (1 + max |a_i / a_0|), a_g = 1 included
    worst = max(abs(c / a0) for c in cls.minpoly.coeffs[1:])
    lower = 1 / (1 + worst)
    return lower > bound


def _escape_bound(num: Polynomial, den: Polynomial) -> Fraction:
    """A rational B >= 2 with |R(z)| >= 2|z| whenever |z| >= B.

    Uses |num(z)| >= lc*|z|^d - S_p*|z|^(d-1) and |den(z)| <= S_q*|z|^dq
    for |z| >= 1.  Guaranteed to exist when deg den <= deg num - 2; the
    remaining case needs lc > 2*S_q.
    """
    d, dq = num.degree, den.degree
    lc = abs(num.leading())
    s_p = sum(abs(c) for c in num.coeffs[:-1])
    s_q = sum(abs(c) for c in den.coeffs)
    if dq <= d - 2:
        b = (s_p + 2 * s_q) / lc
    elif lc > 2 * s_q:
        b = s_p / (lc - 2 * s_q)
    else:
        raise DecimationError(
            "cannot certify an escape radius for R (deg den = deg num - 1 "
            "and small leading coefficient)"
        )
    return max(Q(2), b)


# ---------------------------------------------------------------------------
# decimation data


@dataclass
class DecimationData:
    structure: SelfSimilarStructure
    phi: RationalFunction
    R: RationalFunction
    R_raw: tuple[Polynomial, Polynomial]
    d: int
    Q0: Fraction
    Pd: Fraction
    charpoly_d: Polynomial
    sigma_d: tuple[tuple[AlgebraicClass, int], ...]
    exceptional: tuple[AlgebraicClass, ...]
    case_records: dict = field(default_factory=dict)
    escape_bound: Fraction = Q(2)
    _chains: dict = field(default_factory=dict, repr=False)
    _image_cache: dict = field(default_factory=dict, repr=False)
    _preimage_cache: dict = field(default_factory=dict, repr=False)
    _tables: list = field(default_factory=list, repr=False)

    @property
    def m(self) -> int:
        return self.structure.m

    def v_count(self, n: int) -> int:
        return vertex_count_formula(self.structure, n)

    def primitive_R(self) -> tuple[Polynomial, Polynomial]:
        """R as an integer-primitive coprime pair (num, den).

        The internal canonical form keeps the denominator monic; scaling
        both parts by the least common denominator of the coefficients
        gives the integer pair with joint content 1 (and positive leading
        denominator coefficient), from which the conventional Q(0) and
        P_d values are read off.
        """
        from math import gcd, lcm

        coeffs = list(self.R.num.coeffs) + list(self.R.den.coeffs)
        scale = lcm(*[c.denominator for c in coeffs]) if coeffs else 1
        ints = [int(c * scale) for c in coeffs]
        content = 0
        for v in ints:
            content = gcd(content, abs(v))
        factor = Q(scale, content or 1)
        return self.R.num * factor, self.R.den * factor

    def primitive_triple(self) -> tuple[int, Fraction, Fraction]:
        """(d, Q(0), P_d) in the integer-primitive normalization."""
        num, den = self.primitive_R()
        return self.d, den.constant_term(), num.leading()

    def image_of(self, cls: AlgebraicClass) -> AlgebraicClass:
        """Class of R(alpha) for alpha in cls; cls must avoid poles of R."""
        if cls in self._image_cache:
            return self._image_cache[cls]
        if cls.minpoly.divides(self.R.den):
            raise DecimationError(f"image of a pole class {cls}")
        if cls.is_rational():
            out = AlgebraicClass.from_rational(self.R(cls.rational_value()))
        else:
            poly = image_class_poly(cls.minpoly, self.R.num, self.R.den)
            out = AlgebraicClass(poly, certified_irreducible=cls.certified_irreducible)
        self._image_cache[cls] = out
        return out

    def chain(self, cls: AlgebraicClass) -> ForwardChain:
        if cls not in self._chains:
            self._chains[cls] = ForwardChain(self, cls)
        return self._chains[cls]

    def preimage_classes(self, base: AlgebraicClass) -> list[tuple[AlgebraicClass, int]]:
        """Factor the degree d*deg(base) polynomial of R-preimages of base."""
        if base not in self._preimage_cache:
            poly = preimage_poly(base.minpoly, self.R.num, self.R.den)
            self._preimage_cache[base] = factor_classes(poly)
        return self._preimage_cache[base]


# ---------------------------------------------------------------------------
# derivation


def derive(s: SelfSimilarStructure) -> DecimationData:
    """Compute the full decimation data of a validated structure."""
    s = validated(s)
    g1 = build_level(s, 1)
    v0, v1 = s.v0_size, g1.vertex_count
    degs = degrees(g1)

    # probabilistic Laplacian of G1, boundary rows first (ids 0..v0-1)
    p1 = [[Q(0)] * v1 for _ in range(v1)]
    for i in range(v1):
        p1[i][i] = Q(1)
    for u, v, mult in g1.edges:
        p1[u][v] -= Q(mult, degs[u])
        p1[v][u] -= Q(mult, degs[v])

    for i in range(v0):
        for j in range(v0):
            expected = Q(1) if i == j else Q(0)
            if p1[i][j] != expected:
                raise BoundaryAdjacencyError(
                    "boundary block of P1 is not the identity "
                    "(edge joining two boundary vertices?)"
                )

    interior = range(v0, v1)
    d_mat = [[p1[i][j] for j in interior] for i in interior]
    b_mat = [[p1[i][j] for j in interior] for i in range(v0)]
    c_mat = [[p1[i][j] for j in range(v0)] for i in interior]

    z = RationalFunction(Polynomial.x())
    one = RationalFunction(1)
    d_minus_z = [
        [RationalFunction(d_mat[i][j]) - (z if i == j else 0 * one) for j in range(len(d_mat))]
        for i in range(len(d_mat))
    ]
    c_rf = [[RationalFunction(e) for e in row] for row in c_mat]
    x_mat = solve_linear(d_minus_z, c_rf)

    s_mat = []
    for i in range(v0):
        row = []
        for j in range(v0):
            acc = RationalFunction(p1[i][j]) - (z if i == j else 0 * one)
            for t in range(len(x_mat)):
                acc = acc - RationalFunction(b_mat[i][t]) * x_mat[t][j]
            row.append(acc)
        s_mat.append(row)

    phi = RationalFunction(-(v0 - 1)) * s_mat[0][1]
    if phi.is_zero():
        raise NotFullySymmetricError("phi(z) vanishes identically")

    # R via its raw (pre-cancellation) pair: R = (phi - S11)/phi
    s11 = s_mat[0][0]
    raw_num = phi.num * s11.den - s11.num * phi.den
    raw_den = s11.den * phi.num
    r = RationalFunction(raw_num, raw_den)

    # the factorization S(z) = phi(z) (P0 - R(z)) is what full symmetry buys
    for i in range(v0):
        for j in range(v0):
            p0_entry = Q(1) if i == j else Q(-1, v0 - 1)
            target = phi * (RationalFunction(p0_entry) - (r if i == j else 0 * one))
            if s_mat[i][j] != target:
                raise NotFullySymmetricError(
                    "Schur complement does not factor through the boundary "
                    "Laplacian; structure is not fully symmetric"
                )

    if r.num.constant_term() != 0:
        raise DecimationError("R(0) != 0; decimation assumptions violated")
    if r.num.degree <= r.den.degree:
        raise DecimationError("deg num(R) <= deg den(R); decimation assumptions violated")

    chi_d = charpoly(d_mat)
    sigma = tuple(factor_classes(chi_d.monic()))
    zero_classes = factor_classes(phi.num.monic()) if phi.num.degree > 0 else []
    seen = {cls for cls, _ in sigma}
    exceptional = [cls for cls, _ in sigma]
    for cls, _ in zero_classes:
        if cls not in seen:
            exceptional.append(cls)
            seen.add(cls)
    exceptional.sort(key=lambda c: c.key())

    dd = DecimationData(
        structure=s,
        phi=phi,
        R=r,
        R_raw=(raw_num, raw_den),
        d=r.num.degree,
        Q0=r.den.constant_term(),
        Pd=r.num.leading(),
        charpoly_d=chi_d,
        sigma_d=sigma,
        exceptional=tuple(exceptional),
        escape_bound=_escape_bound(r.num, r.den),
    )
    for cls in dd.exceptional:
        dd.case_records[cls] = classify(dd, cls)
    return dd


def _division_multiplicity(p: Polynomial, divisor: Polynomial) -> int:
    """Largest e with divisor^e | p; also requires the cofactor coprime."""
    e = 0
    rest = p
    while True:
        quo, rem = rest.divmod(divisor)
        if not rem.is_zero():
            break
        rest = quo
        e += 1
    if e and rest.gcd(divisor).degree > 0:
        raise UnclassifiableError(
            "eigenvalue class shares only part of its conjugates with "
            "sigma(D); classwise bookkeeping would be unsound"
        )
    return e


def classify(dd: DecimationData, v: AlgebraicClass) -> CaseRecord:
    """Decide the multiplicity rule for a (probe or exceptional) class."""
    mp = v.minpoly
    mult_d = _division_multiplicity(dd.charpoly_d.monic(), mp)
    in_sigma_d = mult_d > 0
    phi_zero = mp.divides(dd.phi.num) if not dd.phi.num.is_zero() else False
    phi_pole = mp.divides(dd.phi.den)
    r_pole = mp.divides(dd.R.den)
    raw_gcd = dd.R_raw[0].gcd(dd.R_raw[1])
    r_removable = raw_gcd.degree > 0 and mp.divides(raw_gcd)
    phi_r = dd.phi * dd.R
    phi_r_pole = mp.divides(phi_r.den)
    dr = dd.R.derivative()
    dr_nonzero = not mp.divides(dr.num) if not dr.num.is_zero() else False

    image: Optional[AlgebraicClass]
    image = None if r_pole else dd.image_of(v)

    def rec(case_id: int) -> CaseRecord:
        return CaseRecord(
            value=v,
            case_id=case_id,
            mult_d=mult_d,
            in_sigma_d=in_sigma_d,
            phi_zero=phi_zero,
            phi_pole=phi_pole,
            phi_r_pole=phi_r_pole,
            r_pole=r_pole,
            r_removable=r_removable,
            dr_nonzero=dr_nonzero,
            image=image,
        )

    if not in_sigma_d:
        if not phi_zero:
            return rec(1)
        return rec(7) if r_pole else rec(2)
    if phi_pole:
        if r_pole:
            raise UnclassifiableError(
                f"value {v}: pole of both phi and R is outside the case table"
            )
        return rec(3) if dr_nonzero else rec(6)
    if phi_zero:
        return rec(8) if r_pole else rec(5)
    if r_pole:
        raise UnclassifiableError(
            f"value {v}: eigenvalue of D at a pole of R with phi regular "
            "is outside the case table"
        )
    return rec(4)


# ---------------------------------------------------------------------------
# the spectrum induction


@dataclass(frozen=True)
class SpectrumTable:
    """sigma(P_n) in (class, preiterate depth, multiplicity) normal form.

    An entry (c, k, mu) says: the d^k preimages of the conjugate family c
    under the k-fold iterate of R are eigenvalues of P_n, each with
    multiplicity mu.  The zero eigenvalue is carried separately and
    always has multiplicity one.
    """

    level: int
    d: int
    entries: tuple[tuple[AlgebraicClass, int, int], ...]
    zero_mult: int = 1

    def as_mapping(self) -> dict:
        return {(cls, k): mult for cls, k, mult in self.entries}

    def multiplicity(self, cls: AlgebraicClass, depth: int) -> int:
        return self.as_mapping().get((cls, depth), 0)

    def eigenvalue_count(self) -> int:
        return self.zero_mult + sum(
            mult * cls.degree * self.d ** k for cls, k, mult in self.entries
        )

    def bases(self) -> set:
        return {cls for cls, _, _ in self.entries}


def spectrum(dd: DecimationData, n: int) -> SpectrumTable:
    """Exact spectrum of P_n as preiterate families, by forward induction."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    while len(dd._tables) <= n:
        if not dd._tables:
            v0 = dd.structure.v0_size
            top = AlgebraicClass.from_rational(Q(v0, v0 - 1))
            dd._tables.append({(top, 0): v0 - 1})
        else:
            level = len(dd._tables)
            dd._tables.append(_advance(dd, dd._tables[-1], level))
    table = dd._tables[n]
    entries = tuple(
        (cls, k, table[(cls, k)])
        for cls, k in sorted(table, key=lambda ck: (ck[1], ck[0].key()))
    )
    st = SpectrumTable(level=n, d=dd.d, entries=entries)
    if st.eigenvalue_count() != dd.v_count(n):
        raise InconsistentSpectrumError(
            f"sum rule violated at level {n}: "
            f"{st.eigenvalue_count()} != {dd.v_count(n)}"
        )
    return st


def _zero_root_classes(dd: DecimationData) -> list[AlgebraicClass]:
    """Nonzero, non-exceptional R-preimages of the zero eigenvalue."""
    out = []
    for cls, mult in factor_classes(dd.R.num.monic()):
        if cls == ZERO_CLASS or cls in dd.exceptional:
            continue
        if mult != 1:
            raise InconsistentSpectrumError(
                "repeated regular preimage of the zero eigenvalue; "
                "multiplicity rules for critical points are not covered"
            )
        out.append(cls)
    return out


def _mult_from_chain(dd, table: dict, chain: ForwardChain, offset: int) -> int:
    """Multiplicity at the previous level of the class chain[offset]."""
    cls = chain.class_at(offset)
    if cls is None:
        return 0
    if cls == ZERO_CLASS:
        return 1
    hits = [
        mult
        for (base, k), mult in table.items()
        if chain.class_at(offset + k) == base
    ]
    if len(hits) > 1:
        raise InconsistentSpectrumError(
            "a value matched two distinct preiterate families; "
            "bookkeeping is inconsistent"
        )
    return hits[0] if hits else 0


def _advance(dd: DecimationData, prev: dict, n: int) -> dict:
    new: dict = {}
    v_prev = dd.v_count(n - 1)

    def put(cls, depth, mult):
        if mult < 0:
            raise InconsistentSpectrumError(
                f"negative multiplicity for {cls} at level {n}"
            )
        if mult == 0:
            return
        key = (cls, depth)
        if key in new:
            raise InconsistentSpectrumError(
                f"duplicate spectrum entry for {cls} at depth {depth}"
            )
        new[key] = mult

    # exceptional values by their case rules
    for cls in dd.exceptional:
        record = dd.case_records[cls]
        mult_image = _mult_from_chain(dd, prev, dd.chain(cls), 1)
        put(cls, 0, record.multiplicity(dd.m, n, v_prev, mult_image))

    # fresh preimages of the zero eigenvalue (plain lifts of mult 1)
    for cls in _zero_root_classes(dd):
        put(cls, 0, 1)

    # lift the previous families one preiterate deeper
    for (base, k), mult in sorted(prev.items(), key=lambda it: (it[0][1], it[0][0].key())):
        blockers = [e for e in dd.exceptional if dd.chain(e).class_at(k + 1) == base]
        if not blockers:
            put(base, k + 1, mult)
        elif k == 0:
            for sub, root_mult in dd.preimage_classes(base):
                if sub in dd.exceptional or sub == ZERO_CLASS:
                    continue
                if root_mult != 1:
                    raise InconsistentSpectrumError(
                        "repeated regular preimage inside a split family; "
                        "multiplicity rules for critical points are not covered"
                    )
                put(sub, 0, mult)
        else:
            raise InconsistentSpectrumError(
                f"exceptional value {blockers[0]} sits inside the depth-{k + 1} "
                f"preiterates of {base}; deep family splitting is not supported"
            )

    count = 1 + sum(
        mult * cls.degree * dd.d ** k for (cls, k), mult in new.items()
    )
    if count != dd.v_count(n):
        raise InconsistentSpectrumError(
            f"sum rule violated at level {n}: {count} != {dd.v_count(n)}"
        )
    return new


# ---------------------------------------------------------------------------
# certification against explicitly built graphs


def family_polynomial(dd: DecimationData, base: AlgebraicClass, depth: int) -> Polynomial:
    """Monic polynomial whose roots are the depth-fold R-preimages of base."""
    poly = base.minpoly
    for _ in range(depth):
        poly = preimage_poly(poly, dd.R.num, dd.R.den)
    return poly


def crosscheck_spectrum(dd: DecimationData, n: int) -> tuple[bool, str]:
    """Compare the predicted sigma(P_n) with a built graph, exactly.

    Asserts char(P_n) = +- x * prod family_polynomial(base, k)^mult as an
    identity of rational polynomials.  Exponential in n (builds G_n).
    """
    table = spectrum(dd, n)
    g = build_level(dd.structure, n)
    chi = prob_laplacian_charpoly(g)
    predicted = Polynomial.x()
    for cls, k, mult in table.entries:
        predicted = predicted * family_polynomial(dd, cls, k) ** mult
    if g.vertex_count % 2 == 1:
        predicted = -predicted
    if chi == predicted:
        return True, "charpoly matches spectrum table"
    diff = chi - predicted
    return False, (
        f"charpoly mismatch at level {n}: difference has degree {diff.degree} "
        f"and {sum(1 for c in diff.coeffs if c)} nonzero coefficients"
    )
