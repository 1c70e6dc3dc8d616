"""Three-phase computation of the supreme-set laminar forest.

Phase 1 perturbs edge weights so that min cuts are unique with high
probability.  Phase 2 finds a laminar candidate family containing every
supreme set of the perturbed graph by divide and conquer over terminal
bipartitions.  Phase 3 prunes the candidates with three post-order
traversals, leaving exactly the supreme-set projections of the original
graph together with their cut values and perturbed vertex sets.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping, Optional

from . import flow
from .forest import LaminarForest, PathSumTree
from .graph import Graph, contract, is_steiner_cut, projection

PERTURBED_BOUND = 1 << 127


class BalanceError(RuntimeError):
    """Resampling failed to find a balanced terminal bipartition."""


@dataclass(frozen=True)
class PerturbedGraph:
    base: Graph
    weights: dict[tuple[int, int], int]  # coalesced edge -> perturbed weight
    N: int
    seed: int

    def cut_value(self, X) -> int:
        side = set(X)
        return sum(w for (u, v), w in self.weights.items()
                   if (u in side) != (v in side))


def perturb(g: Graph, seed: int) -> PerturbedGraph:
    """w~(e) = m*N*w(e) + r(e) with r(e) uniform in 1..N and N > sum w.

    Preserves the order of unequal cut values, and keeps extreme sets
    extreme; random offsets break ties so min cuts become unique whp.
    """
    coal = g.coalesced()
    total = sum(coal.values())
    N = total + 1
    m = max(len(coal), 1)
    rng = random.Random(seed)
    weights = {}
    for e in sorted(coal):
        weights[e] = m * N * coal[e] + rng.randint(1, N)
    if sum(weights.values()) >= PERTURBED_BOUND:
        raise OverflowError("perturbed weights exceed the 128-bit bound")
    return PerturbedGraph(g, weights, N, seed)


def _contract_weights(weights: Mapping[tuple[int, int], int],
                      phi: dict[int, int]) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (u, v), w in weights.items():
        a, b = phi[u], phi[v]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        out[key] = out.get(key, 0) + w
    return out


def _partially_overlap(X: frozenset, Y: frozenset) -> bool:
    return bool(X & Y) and bool(X - Y) and bool(Y - X)


def _crossing_repair(sets: list[frozenset[int]], cut_fn) -> list[frozenset[int]]:
    """Remove one set of each partially overlapping pair.

    By posi-modularity d(X-Y) <= d(X) or d(Y-X) <= d(Y); the condition
    certifies the removed set non-extreme (hence non-supreme), so every
    supreme set survives and the result is laminar.
    """
    fam = list(dict.fromkeys(sets))
    removed = [False] * len(fam)
    changed = True
    while changed:
        changed = False
        for i in range(len(fam)):
            if removed[i]:
                continue
            for j in range(i + 1, len(fam)):
                if removed[j]:
                    continue
                X, Y = fam[i], fam[j]
                if not _partially_overlap(X, Y):
                    continue
                if cut_fn(X - Y) <= cut_fn(X):
                    removed[i] = True
                else:
                    removed[j] = True
                changed = True
                break
            if changed:
                break
    return [fam[i] for i in range(len(fam)) if not removed[i]]


def _base_case(g: Graph, weights: Mapping[tuple[int, int], int]
               ) -> list[frozenset[int]]:
    """Earliest min cut of every ordered terminal bipartition + repair."""
    ts = sorted(g.terminals)
    k = len(ts)
    fam: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for mask in range(1, (1 << k) - 1):
        T1 = frozenset(ts[i] for i in range(k) if (mask >> i) & 1)
        T2 = frozenset(ts) - T1
        X = flow.earliest_min_cut(g, T1, T2, weights)
        if X not in seen:
            seen.add(X)
            fam.append(X)

    def cut_fn(S: frozenset[int]) -> int:
        side = set(S)
        return sum(w for (u, v), w in weights.items()
                   if (u in side) != (v in side))

    return _crossing_repair(fam, cut_fn)


def _expand(X, labels: list[frozenset[int]]) -> frozenset[int]:
    out: set[int] = set()
    for v in X:
        out |= labels[v]
    return frozenset(out)


def _recurse(g: Graph, weights: dict[tuple[int, int], int],
             labels: list[frozenset[int]], rng: random.Random,
             base_case: int, stats: dict, depth: int) -> set[frozenset[int]]:
    stats["max_depth"] = max(stats["max_depth"], depth)
    stats.setdefault("layer_vertices", {}).setdefault(depth, 0)
    stats["layer_vertices"][depth] += g.n

    ts = sorted(g.terminals)
    # Below 4 terminals no bipartition leaves >= 2 on each side, which is
    # what makes both contracted sub-instances strictly smaller.
    if len(ts) <= max(base_case, 3):
        return {_expand(X, labels) for X in _base_case(g, weights)}

    n_all = stats["n"]
    cap = 64 * max(1, math.ceil(math.log2(max(n_all, 2))))
    T1: Optional[frozenset[int]] = None
    for _ in range(cap):
        s = rng.choice(ts)
        t = rng.choice([u for u in ts if u != s])
        # Naive cut threshold restricted to terminals: one max flow each.
        lams = {u: flow.min_cut_value(g, {s}, {u}, weights)
                for u in ts if u != s}
        phi = lams[t]
        cand1 = frozenset({s} | {u for u in ts if u != s and lams[u] >= phi})
        cand2 = frozenset(ts) - cand1
        if (len(cand1) >= 2 and len(cand2) >= 2
                and 16 * len(cand1) >= len(ts) and 16 * len(cand2) >= len(ts)):
            T1 = cand1
            break
    if T1 is None:
        if len(ts) <= 12:
            # Rare at this size; full enumeration is still affordable.
            return {_expand(X, labels) for X in _base_case(g, weights)}
        raise BalanceError("balanced bipartition not found within the retry cap")
    T2 = frozenset(ts) - T1

    S1 = flow.earliest_min_cut(g, T1, T2, weights)
    S2 = frozenset(range(g.n)) - S1
    s2_orig = _expand(S2, labels)

    def sub_instance(K: frozenset[int]):
        h, phi = contract(g, K)
        w2 = _contract_weights(weights, phi)
        lab2: list[frozenset[int]] = [frozenset() for _ in range(h.n)]
        for v in range(g.n):
            lab2[phi[v]] = lab2[phi[v]] | labels[v]
        return h, w2, lab2

    g1, w1, lab1 = sub_instance(S1)
    F1 = _recurse(g1, w1, lab1, rng, base_case, stats, depth + 1)
    g2, w2, lab2 = sub_instance(S2)
    F2 = _recurse(g2, w2, lab2, rng, base_case, stats, depth + 1)

    # Merge: keep all of L1 (its t1-bearing sets expand to supersets of
    # S1, covering supreme X >= S1; its t1-free sets are subsets of S2,
    # covering supreme X inside S2) plus the t2-free part of L2 (subsets
    # of S1).  Sets of L2 containing t2 would partially overlap the
    # S1-supersets from L1, and every supreme set is covered without
    # them, so they are dropped.
    merged = set(F1)
    for X in F2:
        if not (s2_orig <= X):
            merged.add(X)
    return merged


def find_supreme_candidates(pg: PerturbedGraph, base_case: int = 10,
                            seed: int = 0, stats: Optional[dict] = None
                            ) -> list[frozenset[int]]:
    """Laminar family of Steiner cuts containing all supreme sets of g~."""
    g = pg.base
    if stats is None:
        stats = {}
    stats.update({"max_depth": 0, "n": g.n})
    rng = random.Random(seed)
    labels = [frozenset({v}) for v in range(g.n)]
    fam = _recurse(g, dict(pg.weights), labels, rng, base_case, stats, 0)
    out = sorted((X for X in fam if is_steiner_cut(g, X)),
                 key=lambda X: (len(X), sorted(X)))
    _assert_laminar(out)
    return out


def _assert_laminar(sets: list[frozenset[int]]) -> None:
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if _partially_overlap(sets[i], sets[j]):
                raise AssertionError(
                    f"candidate family not laminar: {sorted(sets[i])} vs "
                    f"{sorted(sets[j])}")


def candidate_cut_values(parents: dict[int, Optional[int]],
                         sets: list[frozenset[int]], g: Graph,
                         weights: Optional[Mapping[tuple[int, int], int]] = None,
                         method: str = "direct") -> list[int]:
    """Cut value of each candidate set, given the forest over candidates.

    method "direct" evaluates d(X) per set; method "path" uses the
    paper's attachment scheme: each vertex u hangs off the lowest node
    containing it, and each edge contributes its weight to the nodes on
    the l(u)-l(v) forest path excluding their LCA (both full root paths
    when the two attachment nodes are in different trees).
    """
    if method == "direct":
        coal = g.coalesced() if weights is None else weights
        out = []
        for X in sets:
            side = set(X)
            out.append(sum(w for (u, v), w in coal.items()
                           if (u in side) != (v in side)))
        return out
    if method != "path":
        raise ValueError(f"unknown method {method!r}")

    f = LaminarForest()
    ids: list[int] = []
    for i, X in enumerate(sets):
        ids.append(f.add_node(frozenset(X), c=0, parent=parents[i]))
    # Lowest node containing each vertex: sets are sorted by size upward
    # in the caller, so scan smallest-first.
    order = sorted(range(len(sets)), key=lambda i: len(sets[i]))
    lowest: dict[int, int] = {}
    for i in order:
        for u in sets[i]:
            lowest.setdefault(u, ids[i])
    tree = PathSumTree(f, init={i: 0 for i in f.live()}, mode="naive")
    coal = g.coalesced() if weights is None else weights
    for (u, v), w in sorted(coal.items()):
        lu, lv = lowest.get(u), lowest.get(v)
        if lu == lv:
            continue
        if lu is None:
            tree.root_path_add(lv, w)
        elif lv is None:
            tree.root_path_add(lu, w)
        else:
            tree.path_add_excl_lca(lu, lv, w)
    return [tree.value(ids[i]) for i in range(len(sets))]


def _build_parents(sets: list[frozenset[int]]) -> dict[int, Optional[int]]:
    """Parent index per candidate (sets pre-sorted small to large)."""
    parents: dict[int, Optional[int]] = {}
    for i, X in enumerate(sets):
        best = None
        for j in range(i + 1, len(sets)):
            if X < sets[j] and (best is None or len(sets[j]) < len(sets[best])):
                best = j
        parents[i] = best
    return parents


def postprocess(candidates: list[frozenset[int]], g: Graph,
                pg: PerturbedGraph, value_method: str = "direct"
                ) -> LaminarForest:
    """Three post-order traversals turning candidates into the forest of
    supreme-set terminal projections of g.

    Traversal 1 removes a node when some child matches or beats its
    perturbed cut value; traversal 2 removes a node whose parent has the
    same terminal projection (after it, the family is exactly the supreme
    sets of g~); traversal 3 repeats traversal 1 with the original
    weights, leaving projections whose original supreme set exists, with
    c(R) = d(mu(R)) = d(mu~(R)).
    """
    sets = sorted(set(candidates), key=lambda X: (len(X), sorted(X)))
    sets = [X for X in sets if is_steiner_cut(g, X)]

    live = list(range(len(sets)))
    values_tilde = candidate_cut_values(_build_parents(sets), sets, g,
                                        pg.weights, value_method)
    values_orig = candidate_cut_values(_build_parents(sets), sets, g,
                                       None, value_method)

    def run_traversal(live_idx: list[int], remove_fn) -> list[int]:
        cur = sorted(live_idx, key=lambda i: (len(sets[i]), sorted(sets[i])))
        parents = {}
        for pos, i in enumerate(cur):
            best = None
            for j in cur:
                if sets[i] < sets[j] and (best is None
                                          or len(sets[j]) < len(sets[best])):
                    best = j
            parents[i] = best
        children: dict[Optional[int], list[int]] = {}
        for i in cur:
            children.setdefault(parents[i], []).append(i)
        # Post-order = ascending size here (children are strictly smaller).
        alive = set(cur)
        kids = {i: list(children.get(i, [])) for i in cur}
        for i in cur:
            if remove_fn(i, kids.get(i, []), parents.get(i)):
                alive.discard(i)
                p = parents[i]
                if p is not None:
                    kids[p] = [x for x in kids[p] if x != i] + kids.get(i, [])
                for ch in kids.get(i, []):
                    parents[ch] = p
        return [i for i in cur if i in alive]

    # Traversal 1: perturbed values.
    live = run_traversal(live, lambda i, ch, p: any(
        values_tilde[w] <= values_tilde[i] for w in ch))
    # Traversal 2: duplicate projections collapse to the outermost set.
    proj = [projection(g, X) for X in sets]
    live = run_traversal(live, lambda i, ch, p: p is not None
                         and proj[p] == proj[i])
    # Traversal 3: original values.
    live = run_traversal(live, lambda i, ch, p: any(
        values_orig[w] <= values_orig[i] for w in ch))

    entries = [(proj[i], values_orig[i], sets[i]) for i in live]
    return LaminarForest.from_family(entries)


def supreme_forest(g: Graph, seed: int, base_case: int = 10,
                   value_method: str = "direct",
                   stats: Optional[dict] = None) -> LaminarForest:
    """Full pipeline: perturb, find candidates, postprocess."""
    if len(g.terminals) < 2:
        raise ValueError("need at least 2 terminals")
    pg = perturb(g, seed)
    if stats is None:
        stats = {}
    fam = find_supreme_candidates(pg, base_case=base_case, seed=seed ^ 0x9E3779B9,
                                  stats=stats)
    depth = stats.get("max_depth", 0)
    bound = 25 * math.log(max(len(g.terminals), 2)) + 5
    assert depth <= bound, f"recursion depth {depth} exceeds {bound}"
    for layer, total in stats.get("layer_vertices", {}).items():
        cap = 8 * g.n * max(1.0, math.log(max(g.n, 2)))
        assert total <= cap, f"layer {layer} vertex total {total} exceeds {cap}"
    return postprocess(fam, g, pg, value_method=value_method)
