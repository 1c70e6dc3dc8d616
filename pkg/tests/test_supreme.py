import pytest

from steineraug import oracle
from steineraug.graph import cut_value
from steineraug.supreme import perturb, supreme_forest

from conftest import g_cyc4, g_expo, g_path, random_connected


def forest_signature(f):
    return sorted((tuple(sorted(f.nodes[i].terminals)), f.nodes[i].c)
                  for i in f.live())


def test_perturbation_preserves_order_and_breaks_ties():
    g = g_cyc4()
    pg = perturb(g, seed=0)
    # Original weights are recoverable: perturbed = m*N*w + r, r < m*N.
    scale = len(g.edges) * (1 + sum(w for (_, _, w) in g.edges))
    for (u, v, w) in g.edges:
        key = (u, v) if u < v else (v, u)
        assert pg.weights[key] // scale == w
    # All four singleton cuts tie at 2 in g; perturbed values are distinct.
    vals = {pg.cut_value({i}) for i in range(4)}
    assert len(vals) == 4


def test_supreme_forest_fixtures():
    for g in (g_path(), g_cyc4(), g_expo(5), g_expo(6)):
        f = supreme_forest(g, seed=1)
        assert forest_signature(f) == forest_signature(
            oracle.supreme_sets_bruteforce(g))


def test_supreme_forest_expo5_vertex_sets():
    f = supreme_forest(g_expo(5), seed=1)
    by_terms = {f.nodes[r].terminals: f.nodes[r] for r in f.roots()}
    assert by_terms[frozenset({0})].mu_tilde == frozenset({0, 1, 2, 3})
    assert by_terms[frozenset({0})].c == 3
    assert by_terms[frozenset({4})].c == 3


def test_supreme_forest_small_base_case_recursion():
    # Force actual recursion by shrinking the base case.
    for idx in range(25):
        g = random_connected(idx, n_max=10)
        f = supreme_forest(g, seed=idx, base_case=2)
        assert forest_signature(f) == forest_signature(
            oracle.supreme_sets_bruteforce(g))


def test_supreme_forest_mu_cut_values_match():
    for idx in range(20):
        g = random_connected(idx, n_max=9)
        f = supreme_forest(g, seed=idx)
        for i in f.live():
            nd = f.nodes[i]
            assert cut_value(g, nd.mu_tilde) == nd.c
            assert nd.terminals == nd.mu_tilde & g.terminals


def test_needs_two_terminals():
    from steineraug.graph import Graph
    g = Graph.build(2, [(0, 1, 1)], [0])
    with pytest.raises(ValueError):
        supreme_forest(g, seed=0)
