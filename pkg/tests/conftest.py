"""Shared fixtures: the four reference graphs and a random-graph corpus.

Vertex naming in the fixtures (ids in parentheses):
- path:   s(0) - v(1) - t(2), unit weights, terminals {s, t}.
- cyc4:   unit 4-cycle v1(0) v2(1) v3(2) v4(3), all terminals.
- expo(n): s(0), v_1(1) .. v_{n-2}(n-2), t(n-1); unit edges (s, v_i)
  and one edge (s, t) of weight 3; terminals {s, t}.
- split:  expo(4) plus budgets beta = {s:0, v1:1, v2:0, t:1}.
"""

from __future__ import annotations

import random

import pytest

from steineraug.graph import Graph


def g_path() -> Graph:
    return Graph.build(3, [(0, 1, 1), (1, 2, 1)], [0, 2])


def g_cyc4() -> Graph:
    return Graph.build(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)],
                       [0, 1, 2, 3])


def g_cycle(n: int) -> Graph:
    return Graph.build(n, [(i, (i + 1) % n, 1) for i in range(n)], range(n))


def g_expo(n: int) -> Graph:
    edges = [(0, i, 1) for i in range(1, n - 1)] + [(0, n - 1, 3)]
    return Graph.build(n, edges, [0, n - 1])


def g_split() -> tuple[Graph, dict[int, int]]:
    return g_expo(4), {0: 0, 1: 1, 2: 0, 3: 1}


def random_connected(idx: int, n_max: int = 10, w_max: int = 5) -> Graph:
    """Deterministic corpus member #idx: random connected graph with a
    random terminal subset of size >= 2."""
    rng = random.Random(0xC0FFEE + idx)
    n = rng.randint(3, n_max)
    edges = [(rng.randrange(v), v, rng.randint(1, w_max))
             for v in range(1, n)]
    for _ in range(rng.randint(0, 2 * n)):
        u, v = rng.sample(range(n), 2)
        edges.append((min(u, v), max(u, v), rng.randint(1, w_max)))
    terminals = rng.sample(range(n), rng.randint(2, n))
    return Graph.build(n, edges, terminals)


@pytest.fixture
def path():
    return g_path()


@pytest.fixture
def cyc4():
    return g_cyc4()
