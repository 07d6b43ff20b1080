"""Combinatorial descriptions of fully symmetric finitely ramified fractals.

A structure is given purely by level-1 data: the multigraph G1, the
boundary vertices, and for each of the m cells the list of G1 vertices
occupied by that cell's copy of the boundary.  Everything else in the
package (level graphs, degree statistics, spectral decimation) is derived
from this record.

The geometric side (contraction maps on the plane) is deliberately not
modeled; the validation below checks the combinatorial consequences of
the defining conditions instead:

  * G1 is connected and loopless,
  * cell maps are injective per cell,
  * a boundary vertex covered by a cell is that cell's own fixed slot,
  * no edge of G1 joins two boundary vertices,
  * every G1 vertex is covered by some cell image,
  * the edge multiset of G1 is exactly the union of one complete graph
    per cell (which is what level-1 of the substitution produces).

Full symmetry itself (a doubly transitive isometry group) is not checked
here; its combinatorial footprint is verified downstream when the Schur
complement is required to factor through the boundary Laplacian.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

Edge = tuple[int, int, int]  # (u, v, multiplicity), u < v


def _normalize_edges(edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    acc: dict[tuple[int, int], int] = {}
    for e in edges:
        if len(e) == 2:
            u, v, mult = e[0], e[1], 1
        elif len(e) == 3:
            u, v, mult = e
        else:
            raise ValueError(f"edge must be [u, v] or [u, v, mult]: {e!r}")
        if mult < 1:
            raise ValueError(f"edge multiplicity must be positive: {e!r}")
        if u > v:
            u, v = v, u
        acc[(u, v)] = acc.get((u, v), 0) + mult
    return tuple((u, v, m) for (u, v), m in sorted(acc.items()))


@dataclass(frozen=True)
class SelfSimilarStructure:
    """Level-1 data of a fully symmetric finitely ramified self-similar set."""

    name: str
    m: int                                  # number of cells (contractions)
    v0_size: int                            # boundary size |V0|
    v1_size: int                            # |V1|
    edges1: tuple[Edge, ...]                # G1 multigraph
    boundary: tuple[int, ...]               # boundary vertex ids in G1
    cell_maps: tuple[tuple[int, ...], ...]  # cell_maps[i][j]: image of corner j

    @classmethod
    def create(cls, name, m, v0_size, v1_size, edges1, boundary, cell_maps):
        return cls(
            name=name,
            m=m,
            v0_size=v0_size,
            v1_size=v1_size,
            edges1=_normalize_edges(edges1),
            boundary=tuple(boundary),
            cell_maps=tuple(tuple(c) for c in cell_maps),
        )

    def degree_in_g1(self, v: int) -> int:
        return sum(m for (a, b, m) in self.edges1 if a == v or b == v)

    def gluing_sites(self) -> dict[int, list[tuple[int, int]]]:
        """Non-boundary V1 vertices -> list of (cell, corner-slot) covering them."""
        sites: dict[int, list[tuple[int, int]]] = {}
        bset = set(self.boundary)
        for i, cm in enumerate(self.cell_maps):
            for j, img in enumerate(cm):
                if img not in bset:
                    sites.setdefault(img, []).append((i, j))
        return {v: sorted(slots) for v, slots in sorted(sites.items())}

    def corner_cell_counts(self) -> list[int]:
        """kappa_j: number of cells whose corner-j image is boundary[j]."""
        return [
            sum(1 for cm in self.cell_maps if cm[j] == self.boundary[j])
            for j in range(self.v0_size)
        ]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self):
        if self.ok:
            return "valid"
        return "; ".join(self.violations)


class InvalidStructureError(ValueError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(str(report))


def validate(s: SelfSimilarStructure) -> ValidationReport:
    """Check every structural invariant; returns all violations by name."""
    bad: list[str] = []

    if s.m < 2:
        bad.append("cell count m must be at least 2")
    if s.v0_size < 2:
        bad.append("boundary size must be at least 2")
    if s.v1_size < s.v0_size:
        bad.append("v1_size smaller than boundary size")

    ids_ok = True
    if len(s.boundary) != s.v0_size or len(set(s.boundary)) != s.v0_size:
        bad.append("boundary must list v0_size distinct vertices")
        ids_ok = False
    if any(not (0 <= b < s.v1_size) for b in s.boundary):
        bad.append("boundary vertex id out of range")
        ids_ok = False
    if len(s.cell_maps) != s.m or any(len(cm) != s.v0_size for cm in s.cell_maps):
        bad.append("cell_maps must be m lists of v0_size vertex ids")
        ids_ok = False
    elif any(not (0 <= v < s.v1_size) for cm in s.cell_maps for v in cm):
        bad.append("cell_maps vertex id out of range")
        ids_ok = False
    for u, v, _ in s.edges1:
        if u == v:
            bad.append("loop edge")
        if not (0 <= u < s.v1_size and 0 <= v < s.v1_size):
            bad.append("edge vertex id out of range")
            ids_ok = False
    if not ids_ok:
        return ValidationReport(tuple(bad))

    # connectivity of G1
    adj: dict[int, set[int]] = {v: set() for v in range(s.v1_size)}
    for u, v, _ in s.edges1:
        adj[u].add(v)
        adj[v].add(u)
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != s.v1_size:
        bad.append("G1 not connected")

    # per-cell injectivity
    for i, cm in enumerate(s.cell_maps):
        if len(set(cm)) != len(cm):
            bad.append(f"cell {i} corner images not distinct")

    # fixed-point condition
    for i, cm in enumerate(s.cell_maps):
        for k, img in enumerate(cm):
            for j, b in enumerate(s.boundary):
                if img == b and k != j:
                    bad.append(
                        f"fixed-point condition: cell {i} sends corner {k} "
                        f"to boundary vertex {j}"
                    )

    # boundary-boundary edges are forbidden
    bset = set(s.boundary)
    for u, v, _ in s.edges1:
        if u in bset and v in bset:
            bad.append("boundary-boundary edge")

    # coverage: every V1 vertex is some cell's corner image
    covered = {img for cm in s.cell_maps for img in cm}
    if covered != set(range(s.v1_size)):
        bad.append("uncovered V1 vertex (not any cell corner image)")

    # G1 must be the union of one complete graph per cell
    expect: dict[tuple[int, int], int] = {}
    for cm in s.cell_maps:
        for a in range(len(cm)):
            for b in range(a + 1, len(cm)):
                u, v = sorted((cm[a], cm[b]))
                expect[(u, v)] = expect.get((u, v), 0) + 1
    got = {(u, v): m for u, v, m in s.edges1}
    if expect != got:
        bad.append("edges inconsistent with cell maps (G1 != glued complete graph copies)")

    return ValidationReport(tuple(bad))


def validated(s: SelfSimilarStructure) -> SelfSimilarStructure:
    report = validate(s)
    if not report.ok:
        raise InvalidStructureError(report)
    return s


# ---------------------------------------------------------------------------
# builtins

_K3_CELLS_SIERPINSKI = [[0, 3, 5], [3, 1, 4], [5, 4, 2]]

_NONPCF_CELLS = [
    # six affine images; corners 0,1,2; edge midpoints 3,4,5; center 6
    [0, 3, 6],
    [0, 6, 5],
    [6, 1, 4],
    [3, 1, 6],
    [5, 6, 2],
    [6, 4, 2],
]

_HEXAGASKET_CELLS = [
    # corners 0,1,2; ring junctions 3..8; non-boundary outer vertices 9,10,11
    [0, 4, 3],
    [5, 4, 9],
    [5, 1, 6],
    [10, 7, 6],
    [8, 7, 2],
    [8, 11, 3],
]

_TREE3_CELLS = [[0, 3, 6], [6, 1, 4], [5, 6, 2]]


def _edges_from_cells(cells) -> list[list[int]]:
    out = []
    for cm in cells:
        for a in range(len(cm)):
            for b in range(a + 1, len(cm)):
                out.append([cm[a], cm[b]])
    return out


def _builtin_defs() -> dict[str, SelfSimilarStructure]:
    defs = {}

    def add(name, m, v0, v1, cells):
        defs[name] = SelfSimilarStructure.create(
            name=name,
            m=m,
            v0_size=v0,
            v1_size=v1,
            edges1=_edges_from_cells(cells),
            boundary=list(range(v0)),
            cell_maps=cells,
        )

    add("sierpinski", 3, 3, 6, _K3_CELLS_SIERPINSKI)
    add("nonpcf_sg", 6, 3, 7, _NONPCF_CELLS)
    add("diamond", 4, 2, 4, [[0, 2], [2, 1], [0, 3], [3, 1]])
    add("hexagasket", 6, 3, 12, _HEXAGASKET_CELLS)
    add("interval", 2, 2, 3, [[0, 2], [2, 1]])
    add("tree3", 3, 3, 7, _TREE3_CELLS)
    return defs


BUILTIN_NAMES = ("sierpinski", "nonpcf_sg", "diamond", "hexagasket", "interval", "tree3")


def builtin(name: str) -> SelfSimilarStructure:
    """Return a validated builtin structure by name."""
    defs = _builtin_defs()
    if name not in defs:
        raise KeyError(
            f"unknown fractal {name!r}; available: {', '.join(BUILTIN_NAMES)}"
        )
    return validated(defs[name])


# ---------------------------------------------------------------------------
# JSON interchange


def to_json_dict(s: SelfSimilarStructure) -> dict:
    return {
        "name": s.name,
        "cells": s.m,
        "boundary_size": s.v0_size,
        "v1_size": s.v1_size,
        "edges": [[u, v, m] for u, v, m in s.edges1],
        "boundary": list(s.boundary),
        "cell_maps": [list(cm) for cm in s.cell_maps],
    }


def from_json_dict(d: dict) -> SelfSimilarStructure:
    try:
        return SelfSimilarStructure.create(
            name=d["name"],
            m=d["cells"],
            v0_size=d["boundary_size"],
            v1_size=d["v1_size"],
            edges1=d["edges"],
            boundary=d["boundary"],
            cell_maps=d["cell_maps"],
        )
    except KeyError as e:
        raise ValueError(f"fractal definition missing field {e.args[0]!r}") from None


def load_json(path: str) -> SelfSimilarStructure:
    with open(path) as fh:
        return from_json_dict(json.load(fh))
