"""Final +1 step: raise Steiner connectivity from tau-1 to tau by
randomly matching the demand-1 terminal groups.

Each live root of demand exactly 1 contributes its terminal set as a
group; a uniformly sampled partial matching is accepted when the current
graph plus the matching plus a unit star into the unmatched groups still
has connectivity tau.  Acceptance probability is at least 1/3 per
attempt, so a logarithmic retry cap suffices.

The sampling loop is shared with the degree-constrained variant, which
only differs in how a group turns into an edge endpoint.
"""

from __future__ import annotations

import math
import random
from typing import Callable, Optional, Sequence

from .forest import LaminarForest
from .graph import EdgeAdditions, Graph, add_edges, star_graph, steiner_connectivity


class MatchingRetryError(RuntimeError):
    """No feasible partial matching found within the retry budget."""


def build_K(forest: LaminarForest, tau: int) -> list[frozenset[int]]:
    """Terminal sets of the live roots with demand exactly 1."""
    groups = [forest.nodes[r].terminals for r in forest.roots()
              if tau - forest.nodes[r].c == 1]
    groups.sort(key=min)
    return groups


def designated_terminal(group: frozenset[int],
                        beta: Optional[dict[int, int]] = None) -> int:
    """Lowest-id terminal, preferring one with vacant degree if known."""
    if beta is not None:
        vac = [t for t in group if beta.get(t, 0) > 0]
        if vac:
            return min(vac)
    return min(group)


def is_feasible_partial(g_cur: Graph, K_remaining: Sequence[frozenset[int]],
                        M: Sequence[tuple[int, int]], tau: int,
                        star_vertex: Optional[Callable[[frozenset[int]], int]]
                        = None) -> bool:
    """Connectivity check for graph + matching + unit star into the
    still-unmatched groups."""
    if star_vertex is None:
        star_vertex = designated_terminal
    h = add_edges(g_cur, EdgeAdditions(tuple((u, v, 1) for (u, v) in M)))
    beta: dict[int, int] = {}
    for grp in K_remaining:
        v = star_vertex(grp)
        beta[v] = beta.get(v, 0) + 1
    if beta:
        h, _ = star_graph(h, beta)
    return steiner_connectivity(h) >= tau


def match_groups(g: Graph, K: Sequence[frozenset[int]], tau: int,
                 rng: random.Random,
                 edge_vertex: Callable[[frozenset[int]], int],
                 star_vertex: Callable[[frozenset[int]], int],
                 on_commit: Optional[Callable[[frozenset[int], int], None]]
                 = None,
                 capacity: Optional[Callable[[frozenset[int]], int]]
                 = None) -> EdgeAdditions:
    """Algorithm-3 sampling loop over arbitrary endpoint rules.

    edge_vertex maps a group to the vertex its matched edge attaches to
    (must be stable between the feasibility check and the commit);
    star_vertex supplies the certificate star's attachment point;
    on_commit reports consumed endpoints (for budget bookkeeping).
    """
    if not K:
        return EdgeAdditions(())
    groups = list(K)
    out: list[tuple[int, int, int]] = []
    g_cur = g

    def commit(pairs: list[tuple[frozenset[int], frozenset[int]]]) -> None:
        nonlocal g_cur
        adds = []
        for (gu, gv) in pairs:
            u, v = edge_vertex(gu), edge_vertex(gv)
            adds.append((u, v, 1))
            if on_commit is not None:
                on_commit(gu, u)
                on_commit(gv, v)
        add = EdgeAdditions(tuple(adds))
        out.extend(add.entries)
        g_cur = add_edges(g_cur, add)

    if len(groups) % 2 == 1:
        # One extra edge on an arbitrary pair; only one endpoint retires.
        # The pair is free to choose, so when endpoint budgets are in
        # play the kept group is the one that can afford a second edge.
        if capacity is None:
            i, j = rng.sample(range(len(groups)), 2)
        else:
            j = max(range(len(groups)),
                    key=lambda t: (capacity(groups[t]), -min(groups[t])))
            i = rng.choice([t for t in range(len(groups)) if t != j])
        commit([(groups[i], groups[j])])
        groups.pop(i)

    cap = 64 * max(1, math.ceil(math.log2(max(2, g.n))))
    while len(groups) >= 4:
        p = len(groups) // 4
        accepted = None
        attempts = 0
        reseeded = False
        while accepted is None:
            if attempts >= cap:
                if not reseeded:
                    rng = random.Random(rng.getrandbits(64))
                    reseeded = True
                    attempts = 0
                else:
                    raise MatchingRetryError(
                        f"no feasible matching in {2 * cap} attempts")
            attempts += 1
            order = list(range(len(groups)))
            rng.shuffle(order)
            picked = order[:2 * p]
            pairs = [(picked[2 * i], picked[2 * i + 1]) for i in range(p)]
            M = [(edge_vertex(groups[a]), edge_vertex(groups[b]))
                 for (a, b) in pairs]
            remaining = [groups[i] for i in range(len(groups))
                         if i not in set(picked)]
            if is_feasible_partial(g_cur, remaining, M, tau, star_vertex):
                accepted = pairs
        commit([(groups[a], groups[b]) for (a, b) in accepted])
        matched = {i for pair in accepted for i in pair}
        groups = [groups[i] for i in range(len(groups)) if i not in matched]

    if groups:
        assert len(groups) == 2
        commit([(groups[0], groups[1])])

    return EdgeAdditions(tuple(out)).merged()


def augment_by_one(g: Graph, K: Sequence[frozenset[int]], tau: int,
                   rng: random.Random,
                   beta: Optional[dict[int, int]] = None) -> EdgeAdditions:
    """Add ceil(|K|/2) unit edges raising connectivity from tau-1 to tau,
    attaching each edge to its group's designated terminal."""
    return match_groups(
        g, K, tau, rng,
        edge_vertex=lambda grp: designated_terminal(grp, beta),
        star_vertex=designated_terminal)
