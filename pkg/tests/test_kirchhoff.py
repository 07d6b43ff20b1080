import random
from fractions import Fraction as F

import pytest

from conftest import complete_graph, cycle_graph, path_graph, random_connected_graph
from fractal_trees import (
    SimpleGraph,
    build_level,
    builtin,
    det_star_P,
    tau_bruteforce,
    verify_matrix_tree,
    wedge,
    wedge_check,
)
from fractal_trees.kirchhoff import laplacian


def test_k3():
    assert tau_bruteforce(complete_graph(3)) == 3


def test_four_cycle():
    assert tau_bruteforce(cycle_graph(4)) == 4


def test_sierpinski_g1():
    assert tau_bruteforce(build_level(builtin("sierpinski"), 1)) == 54


def test_cayley_on_complete_graphs():
    for n in range(2, 8):
        assert tau_bruteforce(complete_graph(n)) == n ** (n - 2)


def test_trees_have_one_spanning_tree():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(2, 12)
        edges = [(rng.randint(0, i - 1), i) for i in range(1, n)]
        assert tau_bruteforce(SimpleGraph.from_edges(n, edges)) == 1


def test_multigraph_counts_parallel_edges():
    # doubled single edge: two spanning trees
    g = SimpleGraph.from_edges(2, [(0, 1, 2)])
    assert tau_bruteforce(g) == 2


def test_disconnected_rejected():
    g = SimpleGraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="disconnected"):
        tau_bruteforce(g)


def test_loop_rejected():
    with pytest.raises(ValueError, match="loop"):
        SimpleGraph.from_edges(2, [(0, 0)])


def test_laplacian_rows_sum_to_zero():
    g = build_level(builtin("hexagasket"), 1)
    lap = laplacian(g)
    assert all(sum(row) == 0 for row in lap)
    assert all(lap[i][j] == lap[j][i] for i in range(len(lap)) for j in range(len(lap)))


def test_all_cofactors_equal():
    rng = random.Random(11)
    for _ in range(10):
        g = random_connected_graph(rng, 8)
        values = {tau_bruteforce(g, drop=i) for i in range(g.vertex_count)}
        assert len(values) == 1


def test_relabeling_invariance():
    rng = random.Random(13)
    for _ in range(10):
        g = random_connected_graph(rng, 9)
        perm = list(range(g.vertex_count))
        rng.shuffle(perm)
        h = SimpleGraph.from_edges(
            g.vertex_count, [(perm[u], perm[v], m) for u, v, m in g.edges]
        )
        assert tau_bruteforce(g) == tau_bruteforce(h)


def test_det_star_k3():
    assert det_star_P(complete_graph(3)) == F(9, 4)


def test_det_star_four_cycle():
    assert det_star_P(cycle_graph(4)) == 2


def test_det_star_single_edge():
    assert det_star_P(path_graph(2)) == 2


def test_matrix_tree_hand_examples():
    ok, tau, rhs = verify_matrix_tree(complete_graph(3))
    assert ok and tau == 3 and rhs == F(8, 6) * F(9, 4)
    ok, tau, rhs = verify_matrix_tree(cycle_graph(4))
    assert ok and tau == 4 and rhs == F(16, 8) * 2


def test_matrix_tree_on_100_random_graphs():
    rng = random.Random(20240817)
    for _ in range(100):
        g = random_connected_graph(rng, 10)
        ok, tau, rhs = verify_matrix_tree(g)
        assert ok, (g, tau, rhs)


def test_matrix_tree_on_builtin_levels():
    for name in ("sierpinski", "nonpcf_sg", "diamond", "hexagasket", "interval", "tree3"):
        s = builtin(name)
        for n in (1, 2):
            ok, tau, rhs = verify_matrix_tree(build_level(s, n))
            assert ok, (name, n)


def test_wedge_of_triangles():
    ok, lhs, rhs = wedge_check(complete_graph(3), complete_graph(3), 0, 0)
    assert ok and lhs == 9


def test_wedge_triangle_cycle():
    ok, lhs, rhs = wedge_check(complete_graph(3), cycle_graph(4), 1, 2)
    assert ok and lhs == 12


def test_wedge_random_pairs():
    rng = random.Random(99)
    for _ in range(20):
        g1 = random_connected_graph(rng, 7)
        g2 = random_connected_graph(rng, 7)
        x1 = rng.randrange(g1.vertex_count)
        x2 = rng.randrange(g2.vertex_count)
        ok, lhs, rhs = wedge_check(g1, g2, x1, x2)
        assert ok


def test_wedge_bad_vertex():
    with pytest.raises(ValueError):
        wedge(complete_graph(3), complete_graph(3), 5, 0)


def test_tree3_level1_is_wedge_of_triangles():
    g = build_level(builtin("tree3"), 1)
    assert tau_bruteforce(g) == 27
