"""Level graphs G_n and degree statistics.

G_0 is the complete graph on the boundary; G_n is built by taking m
copies of G_{n-1} and identifying copy corners according to the cell
maps.  Vertex ids are assigned deterministically (global corners first,
then first-touch order during the merge), so exports are reproducible
byte for byte.

Degree statistics are computed by a recursion on the level-1 gluing data
instead of building the graph: corner degrees scale by the number of
cells meeting each corner, and every gluing site contributes one interior
vertex whose degree is the sum of the corner degrees it absorbs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .structures import SelfSimilarStructure

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class LevelGraph:
    level: int
    vertex_count: int
    corners: tuple[int, ...]
    edges: tuple[Edge, ...]  # (u, v, mult), u < v, sorted

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v, m in self.edges:
            deg[u] += m
            deg[v] += m
        return deg

    def edge_total(self) -> int:
        return sum(m for _, _, m in self.edges)

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for d in self.degrees():
            hist[d] = hist.get(d, 0) + 1
        return hist

    def is_connected(self) -> bool:
        if self.vertex_count == 0:
            return False
        adj: dict[int, list[int]] = {v: [] for v in range(self.vertex_count)}
        for u, v, _ in self.edges:
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
        return len(seen) == self.vertex_count


def vertex_count_formula(s: SelfSimilarStructure, n: int) -> int:
    """|V_n| from the linear recursion |V_n| = m |V_{n-1}| - m |V_0| + |V_1|."""
    if n == 0:
        return s.v0_size
    count = s.v1_size
    for _ in range(n - 1):
        count = s.m * count - s.m * s.v0_size + s.v1_size
    return count


def edge_count_formula(s: SelfSimilarStructure, n: int) -> int:
    """Edges of G_n with multiplicity: m^n * |V0|(|V0|-1)/2."""
    return s.m ** n * s.v0_size * (s.v0_size - 1) // 2


BUILD_VERTEX_CAP = 2_000_000


def build_level(s: SelfSimilarStructure, n: int) -> LevelGraph:
    """Construct G_n explicitly.  Exponential in n; meant for oracle use."""
    if n < 0:
        raise ValueError("level must be nonnegative")
    if vertex_count_formula(s, n) > BUILD_VERTEX_CAP:
        raise ValueError(
            f"G_{n} of {s.name} has {vertex_count_formula(s, n)} vertices; "
            "explicit construction is capped (use the decimation pipeline)"
        )
    v0 = s.v0_size
    if n == 0:
        edges = tuple(
            (i, j, 1) for i in range(v0) for j in range(i + 1, v0)
        )
        return LevelGraph(0, v0, tuple(range(v0)), edges)

    prev = build_level(s, n - 1)
    copies = s.m
    size = prev.vertex_count

    # union-find over provisional ids copy*size + v
    parent = list(range(copies * size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra

    # group copy corners by the V1 vertex they occupy
    image_slots: dict[int, list[int]] = {}
    for i, cm in enumerate(s.cell_maps):
        for j, img in enumerate(cm):
            image_slots.setdefault(img, []).append(i * size + prev.corners[j])
    for slots in image_slots.values():
        for other in slots[1:]:
            union(slots[0], other)

    # deterministic relabeling: global corners first, then first-touch order
    label: dict[int, int] = {}
    corners = []
    for j, b in enumerate(s.boundary):
        root = find(image_slots[b][0])
        label[root] = j
        corners.append(j)
    next_id = v0
    for i in range(copies):
        for v in range(size):
            root = find(i * size + v)
            if root not in label:
                label[root] = next_id
                next_id += 1

    acc: dict[tuple[int, int], int] = {}
    for i in range(copies):
        base = i * size
        for u, v, m in prev.edges:
            a = label[find(base + u)]
            b = label[find(base + v)]
            if a == b:
                raise ValueError("loop created by corner identification")
            if a > b:
                a, b = b, a
            acc[(a, b)] = acc.get((a, b), 0) + m

    g = LevelGraph(
        n,
        next_id,
        tuple(corners),
        tuple((u, v, m) for (u, v), m in sorted(acc.items())),
    )
    if g.vertex_count != vertex_count_formula(s, n):
        raise AssertionError("vertex count recursion violated")
    if not g.is_connected():
        raise AssertionError("level graph not connected")
    return g


@dataclass(frozen=True)
class DegreeStats:
    level: int
    corner_degrees: tuple[int, ...]
    interior_histogram: dict[int, int]

    def vertex_count(self) -> int:
        return len(self.corner_degrees) + sum(self.interior_histogram.values())

    def degree_sum(self) -> int:
        return sum(self.corner_degrees) + sum(
            d * c for d, c in self.interior_histogram.items()
        )

    def full_histogram(self) -> dict[int, int]:
        hist = dict(self.interior_histogram)
        for d in self.corner_degrees:
            hist[d] = hist.get(d, 0) + 1
        return hist


def degree_stats(s: SelfSimilarStructure, n: int) -> DegreeStats:
    """Degree statistics of G_n without building the graph.

    corner_degrees evolve by kappa_j (cells meeting corner j); each gluing
    site x becomes an interior vertex of degree equal to the sum of the
    previous-level corner degrees over the slots identified at x, and the
    old interior histogram is replicated m times.
    """
    if n < 0:
        raise ValueError("level must be nonnegative")
    v0 = s.v0_size
    corner = [v0 - 1] * v0
    hist: dict[int, int] = {}
    if n == 0:
        return DegreeStats(0, tuple(corner), hist)
    kappa = s.corner_cell_counts()
    sites = s.gluing_sites()
    for _ in range(1, n + 1):
        new_hist = {d: c * s.m for d, c in hist.items()}
        for slots in sites.values():
            d = sum(corner[j] for _, j in slots)
            new_hist[d] = new_hist.get(d, 0) + 1
        hist = new_hist
        corner = [kappa[j] * corner[j] for j in range(v0)]
    stats = DegreeStats(n, tuple(corner), hist)
    if stats.vertex_count() != vertex_count_formula(s, n):
        raise AssertionError("degree recursion vertex count mismatch")
    if stats.degree_sum() != 2 * edge_count_formula(s, n):
        raise AssertionError("degree recursion handshake mismatch")
    return stats


# ---------------------------------------------------------------------------
# export


def export(g: LevelGraph, fmt: str) -> str:
    """Serialize a level graph as DOT or JSON (deterministic output)."""
    if fmt == "json":
        return json.dumps(
            {
                "schema": "1",
                "level": g.level,
                "vertices": g.vertex_count,
                "corners": list(g.corners),
                "edges": [[u, v, m] for u, v, m in g.edges],
            },
            indent=2,
            sort_keys=True,
        )
    if fmt == "dot":
        lines = [f"graph level{g.level} {{"]
        for v in range(g.vertex_count):
            mark = ' [shape=box]' if v in g.corners else ""
            lines.append(f"  v{v}{mark};")
        for u, v, m in g.edges:
            for _ in range(m):
                lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unsupported export format {fmt!r} (use dot or json)")
