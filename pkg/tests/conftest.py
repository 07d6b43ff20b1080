"""Shared helpers: deterministic random graphs and rational strategies."""

import random
from fractions import Fraction

from hypothesis import strategies as st

from fractal_trees import SimpleGraph

rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=40
)

small_rationals = st.fractions(
    min_value=Fraction(-6), max_value=Fraction(6), max_denominator=6
)


def random_connected_graph(rng: random.Random, max_vertices: int = 10) -> SimpleGraph:
    """Erdos-Renyi simple graph, resampled until connected."""
    while True:
        n = rng.randint(3, max_vertices)
        edges = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < 0.45
        ]
        g = SimpleGraph.from_edges(n, edges)
        seen = {0}
        stack = [0]
        adj = {v: [] for v in range(n)}
        for u, v, _ in g.edges:
            adj[u].append(v)
            adj[v].append(u)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == n and edges:
            return g


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
