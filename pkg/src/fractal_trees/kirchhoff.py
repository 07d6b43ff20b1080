"""Ground-truth spanning-tree counting via the Matrix-Tree theorem.

`tau_bruteforce` evaluates a cofactor of the integer graph Laplacian with
fraction-free elimination, so it is exact for any graph this package can
build.  The probabilistic-Laplacian variant (tau = prod d_j / sum d_j
times the product of nonzero eigenvalues of P = D^-1 (D - A)) is verified
against it exactly; the eigenvalue product is read off the characteristic
polynomial of the (L, D) pencil, never from floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .matrices import bareiss_det_int, charpoly_pencil
from .polys import Polynomial

Q = Fraction

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected multigraph: vertex count plus (u, v, mult) edges."""

    vertex_count: int
    edges: tuple[Edge, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        acc: dict[tuple[int, int], int] = {}
        for e in edges:
            u, v = e[0], e[1]
            m = e[2] if len(e) > 2 else 1
            if u == v:
                raise ValueError("loop edge")
            if u > v:
                u, v = v, u
            acc[(u, v)] = acc.get((u, v), 0) + m
        return cls(n, tuple((u, v, m) for (u, v), m in sorted(acc.items())))


def _edges_of(g) -> tuple[Edge, ...]:
    return tuple(g.edges)


def degrees(g) -> list[int]:
    deg = [0] * g.vertex_count
    for u, v, m in _edges_of(g):
        deg[u] += m
        deg[v] += m
    return deg


def laplacian(g) -> list[list[int]]:
    """Integer Laplacian D - A; rows sum to zero."""
    n = g.vertex_count
    lap = [[0] * n for _ in range(n)]
    for u, v, m in _edges_of(g):
        if u == v:
            raise ValueError("loop edge")
        lap[u][v] -= m
        lap[v][u] -= m
        lap[u][u] += m
        lap[v][v] += m
    return lap


def is_connected(g) -> bool:
    n = g.vertex_count
    if n == 0:
        return False
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v, _ in _edges_of(g):
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def tau_bruteforce(g, drop: int = 0) -> int:
    """Number of spanning trees: cofactor of the Laplacian, exactly.

    `drop` selects which row/column to delete (any choice gives the same
    value; exposed for the cofactor-independence tests).
    """
    n = g.vertex_count
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if not is_connected(g):
        raise ValueError("disconnected")
    lap = laplacian(g)
    minor = [
        [lap[i][j] for j in range(n) if j != drop]
        for i in range(n)
        if i != drop
    ]
    tau = bareiss_det_int(minor)
    if tau < 1:
        raise AssertionError("spanning tree count must be positive")
    return tau


def prob_laplacian_charpoly(g) -> Polynomial:
    """det(P - xI) for the probabilistic Laplacian P = D^-1 (D - A)."""
    return charpoly_pencil(laplacian(g), degrees(g))


def det_star_P(g) -> Fraction:
    """Product of the nonzero eigenvalues of P, exact.

    det(P - xI) = prod (lambda_i - x); with a single zero eigenvalue the
    coefficient of x^1 is minus the product of the nonzero ones.  The
    result is asserted positive (true for connected graphs).
    """
    if g.vertex_count < 2:
        raise ValueError("need at least 2 vertices")
    if not is_connected(g):
        raise ValueError("disconnected")
    chi = prob_laplacian_charpoly(g)
    if chi.constant_term() != 0:
        raise AssertionError("probabilistic Laplacian lost its zero eigenvalue")
    c1 = chi.coeffs[1] if chi.degree >= 1 else Q(0)
    if c1 == 0:
        raise ValueError("disconnected")  # zero eigenvalue multiplicity > 1
    value = -c1
    if value < 0:
        raise AssertionError("nonzero eigenvalue product must be positive")
    return value


def verify_matrix_tree(g) -> tuple[bool, int, Fraction]:
    """Check tau = (prod d_j / sum d_j) * det_star(P) exactly.

    Returns (equal, tau, right-hand side).
    """
    tau = tau_bruteforce(g)
    degs = degrees(g)
    prod_d = 1
    for d in degs:
        prod_d *= d
    rhs = Q(prod_d, sum(degs)) * det_star_P(g)
    return rhs == tau, tau, rhs


def wedge(g1, g2, x1: int, x2: int) -> SimpleGraph:
    """Identify vertex x1 of g1 with vertex x2 of g2."""
    n1, n2 = g1.vertex_count, g2.vertex_count
    if not (0 <= x1 < n1) or not (0 <= x2 < n2):
        raise ValueError("wedge vertex id out of range")

    def relabel(v: int) -> int:
        if v == x2:
            return x1
        return n1 + v - (1 if v > x2 else 0)

    edges = list(_edges_of(g1)) + [
        (relabel(u), relabel(v), m) for u, v, m in _edges_of(g2)
    ]
    return SimpleGraph.from_edges(n1 + n2 - 1, edges)


def wedge_check(g1, g2, x1: int, x2: int) -> tuple[bool, int, int]:
    """tau(g1 v g2) = tau(g1) * tau(g2); returns (equal, lhs, rhs)."""
    lhs = tau_bruteforce(wedge(g1, g2, x1, x2))
    rhs = tau_bruteforce(g1) * tau_bruteforce(g2)
    return lhs == rhs, lhs, rhs
