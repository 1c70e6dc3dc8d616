"""Exponential-time oracles: exact extreme/supreme families, exact
augmentation optima, the Frank greedy baseline, and solution verification.

Everything here enumerates vertex subsets as machine words and is meant
for graphs of at most ~12 vertices (hard cap 16); the fast algorithms are
tested against these answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from . import flow
from .forest import LaminarForest
from .graph import (EdgeAdditions, Graph, add_edges, star_graph,
                    steiner_connectivity)

HARD_CAP = 16
DEFAULT_LIMIT = 12


def _check_size(g: Graph, limit: int) -> None:
    if g.n > min(limit, HARD_CAP):
        raise ValueError(f"oracle size limit exceeded: n={g.n} > {min(limit, HARD_CAP)}")


def _all_cut_values(g: Graph) -> list[int]:
    """d(mask) for every vertex subset encoded as a bitmask."""
    vals = [0] * (1 << g.n)
    for mask in range(1, 1 << g.n):
        d = 0
        for (u, v, w) in g.edges:
            if ((mask >> u) & 1) != ((mask >> v) & 1):
                d += w
        vals[mask] = d
    return vals


def _terminal_mask(g: Graph) -> int:
    tm = 0
    for t in g.terminals:
        tm |= 1 << t
    return tm


def _is_steiner(mask: int, tmask: int) -> bool:
    p = mask & tmask
    return p != 0 and p != tmask


@dataclass(frozen=True)
class ExtremeFamily:
    sets: tuple[tuple[frozenset[int], int], ...]  # (vertex set, cut value)

    def vertex_sets(self) -> list[frozenset[int]]:
        return [s for (s, _) in self.sets]


def extreme_sets_bruteforce(g: Graph, limit: int = DEFAULT_LIMIT) -> ExtremeFamily:
    """All extreme sets: Steiner cuts whose proper Steiner subsets all
    have strictly larger cut value."""
    _check_size(g, limit)
    vals = _all_cut_values(g)
    tmask = _terminal_mask(g)
    out = []
    for mask in range(1, 1 << g.n):
        if not _is_steiner(mask, tmask):
            continue
        d = vals[mask]
        ok = True
        sub = (mask - 1) & mask
        while sub:
            if _is_steiner(sub, tmask) and vals[sub] <= d:
                ok = False
                break
            sub = (sub - 1) & mask
        if ok:
            members = frozenset(u for u in range(g.n) if (mask >> u) & 1)
            out.append((members, d))
    out.sort(key=lambda e: (len(e[0]), sorted(e[0])))
    return ExtremeFamily(tuple(out))


def supreme_sets_bruteforce(g: Graph, limit: int = DEFAULT_LIMIT) -> LaminarForest:
    """Supreme sets mu(R): union of extreme sets per terminal projection.

    Returns a laminar forest whose nodes carry the terminal set R, the
    vertex set mu(R) (stored as mu_tilde), and c(R) = d(mu(R)).
    """
    _check_size(g, limit)
    fam = extreme_sets_bruteforce(g, limit)
    by_proj: dict[frozenset[int], set[int]] = {}
    for (members, _) in fam.sets:
        r = frozenset(members & g.terminals)
        by_proj.setdefault(r, set()).update(members)
    entries = []
    for r, mu in by_proj.items():
        entries.append((r, flow_free_cut_value(g, mu), frozenset(mu)))
    return LaminarForest.from_family(entries)


def flow_free_cut_value(g: Graph, X) -> int:
    """Plain d(X) by edge scan (kept flow-engine-free for independence)."""
    side = set(X)
    return sum(w for (u, v, w) in g.edges if (u in side) != (v in side))


def _forest_rdem_sum(forest: LaminarForest, tau: int) -> int:
    """Sum of root rdem values under the Algorithm-2 recurrence."""
    rdem: dict[int, int] = {}
    for i in forest.postorder():
        nd = forest.nodes[i]
        child_sum = sum(rdem[ch] for ch in nd.children)
        rdem[i] = max(tau - nd.c, child_sum, 0)
    return sum(rdem[r] for r in forest.roots())


def optimal_external_value(g: Graph, tau: int, limit: int = DEFAULT_LIMIT) -> int:
    """Optimal total weight of an external augmentation to connectivity tau."""
    _check_size(g, limit)
    forest = supreme_sets_bruteforce(g, limit)
    return _forest_rdem_sum(forest, tau)


def optimal_augmentation_value(g: Graph, tau: int, limit: int = DEFAULT_LIMIT,
                               exhaustive: bool = False) -> int:
    """Optimal total weight of an augmentation to connectivity tau.

    Equals ceil(k/2) for the external optimum k; splitting-off feasibility
    makes the lower bound tight.  With exhaustive=True (n <= 6) the value
    is cross-checked by searching all small edge additions.
    """
    if tau < 2:
        raise ValueError("augmentation optimum defined for tau >= 2")
    _check_size(g, limit)
    k = optimal_external_value(g, tau, limit)
    val = (k + 1) // 2
    if exhaustive:
        if g.n > 6:
            raise ValueError("exhaustive cross-check limited to n <= 6")
        found = _min_addition_weight(g, tau, val)
        if found != val:
            raise AssertionError(
                f"exhaustive optimum {found} != ceil(k/2) = {val}")
    return val


def _min_addition_weight(g: Graph, tau: int, upper: int) -> Optional[int]:
    """Smallest total weight of an edge multiset raising connectivity to
    tau, searched over all candidate weighted edge sets up to `upper`."""
    pairs = list(combinations(range(g.n), 2))

    def feasible_with(entries: tuple[tuple[int, int, int], ...]) -> bool:
        h = add_edges(g, EdgeAdditions(entries))
        return steiner_connectivity(h) >= tau

    if steiner_connectivity(g) >= tau:
        return 0
    for total in range(1, upper + 1):
        # Enumerate weight compositions over the pair list.
        def rec(idx: int, remaining: int,
                acc: list[tuple[int, int, int]]) -> bool:
            if remaining == 0:
                return feasible_with(tuple(acc))
            if idx == len(pairs):
                return False
            for w in range(remaining + 1):
                if w:
                    acc.append((pairs[idx][0], pairs[idx][1], w))
                if rec(idx + 1, remaining - w, acc):
                    return True
                if w:
                    acc.pop()
            return False

        if rec(0, total, []):
            return total
    return None


def frank_greedy_external(g: Graph, tau: int) -> dict[int, int]:
    """Frank's greedy external augmentation baseline.

    Saturate every vertex with tau external edges, then process vertices
    in ascending id order; for each, drop all its external edges and add
    back only the maximum violation Delta it causes.  Feasible, and at
    most twice the augmentation optimum.
    """
    if tau < 2:
        raise ValueError("greedy baseline defined for tau >= 2")
    beta = {u: tau for u in range(g.n)}
    if steiner_connectivity(g) >= tau:
        return {}
    for v in range(g.n):
        w = beta[v]
        if w == 0:
            continue
        beta[v] = 0
        trial, _ = star_graph(g, beta)
        conn = steiner_connectivity(trial)
        delta = max(0, tau - conn)
        assert delta <= w
        beta[v] = delta
    return {u: w for u, w in beta.items() if w > 0}


def verify_solution(g: Graph, tau: int, F: EdgeAdditions,
                    beta: Optional[dict[int, int]] = None
                    ) -> tuple[bool, Optional[object]]:
    """Check connectivity(g+F) >= tau and optional per-vertex budgets.

    Returns (ok, witness); the witness is an offending vertex id for a
    budget violation, or a violated cut (vertex frozenset) otherwise.
    """
    if beta is not None:
        for u in range(g.n):
            if F.degree(u) > beta.get(u, 0):
                return False, u
    h = add_edges(g, F)
    ts = sorted(g.terminals)
    s = ts[0]
    for t in ts[1:]:
        lam = flow.min_cut_value(h, {s}, {t})
        if lam < tau:
            return False, flow.earliest_min_cut(h, {s}, {t})
    return True, None
