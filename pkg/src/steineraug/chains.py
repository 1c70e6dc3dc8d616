"""Greedy augmentation-chain phase for the unconstrained problem.

Repeatedly threads a chain of edges through all maximal supreme sets of
demand >= 2 (the two minimum-cut-value sets at the ends), applies as many
copies as possible in one batch, and patches the chain when an endpoint
budget empties, a root's demand drops below 2, or a node deletion fires.
Stops when every root has demand <= 1, i.e. connectivity tau-1.

Batch sizes come from the lazy expiration formulas t_F = min(t1,t2,t3);
the step-by-step simulator expiration_bruteforce is the differential
reference for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .forest import LaminarForest, PathSumTree
from .graph import EdgeAdditions, Graph

_INF = float("inf")


@dataclass
class AugChain:
    roots: list[int]                      # X1..Xr (forest node ids)
    a: dict[int, Optional[int]]           # outgoing endpoint vertex per root
    b: dict[int, Optional[int]]           # incoming endpoint vertex per root

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(len(self.roots) - 1):
            out.append((self.a[self.roots[i]], self.b[self.roots[i + 1]]))
        return out

    def endpoint_uses(self) -> list[tuple[int, int]]:
        """(vertex, root) per endpoint occurrence; middles appear twice."""
        uses = []
        for i, r in enumerate(self.roots):
            if i > 0:
                uses.append((self.b[r], r))
            if i < len(self.roots) - 1:
                uses.append((self.a[r], r))
        return uses

    def d_F_vertex(self) -> dict[int, int]:
        d: dict[int, int] = {}
        for (v, _) in self.endpoint_uses():
            d[v] = d.get(v, 0) + 1
        return d

    def d_F_node(self, r: int) -> int:
        return 1 if r in (self.roots[0], self.roots[-1]) else 2


class ChainScheduler:
    """Owns the forest, the lazily maintained c values, and the budget."""

    def __init__(self, g: Graph, forest: LaminarForest, beta: dict[int, int],
                 tau: int, mode: str = "hld",
                 event_log: Optional[list] = None) -> None:
        self.g = g
        self.forest = forest
        self.tau = tau
        self.beta = {v: w for v, w in beta.items() if w > 0}
        self.tree = PathSumTree(forest, mode=mode)
        self.out: list[tuple[int, int, int]] = []
        self.chain: Optional[AugChain] = None
        self.edge_update_count = 0
        self.event_counts = {"beta": 0, "dem": 0, "delete": 0}
        self.event_log = event_log
        # Deepest node containing each terminal (laminar: a chain of nodes).
        self._lowest: dict[int, int] = {}
        for i in forest.live():
            for t in forest.nodes[i].terminals:
                cur = self._lowest.get(t)
                if cur is None or (len(forest.nodes[i].terminals)
                                   < len(forest.nodes[cur].terminals)):
                    self._lowest[t] = i

    # -- basic accessors --------------------------------------------------

    def c(self, r: int) -> int:
        return self.tree.value(r)

    def dem(self, r: int) -> int:
        return self.tau - self.c(r)

    def lowest_live(self, v: int) -> int:
        i = self._lowest[v]
        while self.forest.nodes[i].deleted:
            i = self.tree.static_parent[i]
            assert i is not None, "terminal lost all containing nodes"
        return i

    def vacant_terminals(self, r: int) -> list[int]:
        return sorted(t for t in self.forest.nodes[r].terminals
                      if self.beta.get(t, 0) > 0)

    def live_roots_with_demand(self) -> list[int]:
        return [r for r in self.forest.roots() if self.dem(r) >= 2]

    # -- chain construction ----------------------------------------------

    def _pick_endpoints(self, r: int, need: int) -> list[int]:
        vac = self.vacant_terminals(r)
        assert vac, f"demand root {r} has no vacant terminal"
        if need == 1:
            return [vac[0]]
        if self.beta[vac[0]] >= 2:
            return [vac[0], vac[0]]
        assert len(vac) >= 2, f"root {r} cannot supply two endpoint slots"
        return [vac[0], vac[1]]

    def _assemble(self, ordered_roots: list[int]) -> AugChain:
        a: dict[int, Optional[int]] = {}
        b: dict[int, Optional[int]] = {}
        last = len(ordered_roots) - 1
        for i, r in enumerate(ordered_roots):
            if i == 0:
                a[r] = self._pick_endpoints(r, 1)[0]
                b[r] = None
            elif i == last:
                b[r] = self._pick_endpoints(r, 1)[0]
                a[r] = None
            else:
                pick = self._pick_endpoints(r, 2)
                b[r], a[r] = pick[0], pick[1]
        return AugChain(ordered_roots, a, b)

    def build_chain(self) -> Optional[AugChain]:
        roots = self.live_roots_with_demand()
        if not roots:
            return None
        assert len(roots) >= 2, "a single demand root cannot occur"
        # X1 = minimum c (ties: lowest id); Xr = second minimum (ties:
        # highest id), so that with all values equal the chain runs in
        # ascending id order end to end.
        end1 = min(roots, key=lambda r: (self.c(r), r))
        end2 = min((r for r in roots if r != end1),
                   key=lambda r: (self.c(r), -r))
        middle = sorted(set(roots) - {end1, end2})
        chain = self._assemble([end1] + middle + [end2])
        self.edge_update_count += len(chain.roots) - 1
        return chain

    # -- expiration -------------------------------------------------------

    def rates(self, chain: AugChain) -> dict[int, int]:
        """Per-copy c increment per forest node (live ancestors of the
        lowest node of each endpoint use)."""
        rate: dict[int, int] = {}
        for (v, _) in chain.endpoint_uses():
            i = self.lowest_live(v)
            while i is not None:
                rate[i] = rate.get(i, 0) + 1
                i = self.forest.nodes[i].parent
        return rate

    def expiration(self, chain: AugChain) -> int:
        dfv = chain.d_F_vertex()
        t1 = min(self.beta[v] // d for v, d in dfv.items())
        # Condition-authoritative form: the last copy allowed is the one
        # after which some root's demand drops below 2.
        t2 = min(-(-(self.tau - 1 - self.c(r)) // chain.d_F_node(r))
                 for r in chain.roots)
        rate = self.rates(chain)
        t3 = _INF
        for r, rr in rate.items():
            for w in self.forest.children(r):
                rw = rate.get(w, 0)
                if rr > rw:
                    gap = self.c(w) - self.c(r)
                    t3 = min(t3, -(-gap // (rr - rw)))
        t_f = min(t1, t2, t3)
        assert t_f >= 1, "chain invalid at birth"
        return int(t_f)

    def expiration_bruteforce(self, chain: AugChain) -> int:
        """Eager one-copy-at-a-time simulation of the same stopping rule."""
        beta = dict(self.beta)
        cval = {i: self.c(i) for i in self.forest.live()}
        dfv = chain.d_F_vertex()
        rate = self.rates(chain)
        t = 0
        while True:
            if any(beta[v] < d for v, d in dfv.items()):
                return t
            for v, d in dfv.items():
                beta[v] -= d
            for i, rr in rate.items():
                cval[i] += rr
            t += 1
            if any(self.tau - cval[r] <= 1 for r in chain.roots):
                return t
            stop = False
            for r in rate:
                for w in self.forest.children(r):
                    if cval[r] >= cval[w]:
                        stop = True
            if stop:
                return t

    # -- application ------------------------------------------------------

    def apply_chain(self, chain: AugChain, t: int) -> list[int]:
        """Commit t copies; returns the nodes deleted by the c updates."""
        if t == 0:
            return []
        for (u, v) in chain.edges():
            self.out.append((u, v, t))
        for v, d in chain.d_F_vertex().items():
            self.beta[v] -= t * d
            assert self.beta[v] >= 0, "budget underflow"
        for (u, v) in chain.edges():
            lu, lv = self.lowest_live(u), self.lowest_live(v)
            assert self.tree.live_lca(lu, lv) is None, \
                "chain edge endpoints must lie under different roots"
            self.tree.path_add_excl_lca(lu, lv, t)
        # Deletion rule c(R) >= c(W), cascading until stable.
        deleted = []
        changed = True
        while changed:
            changed = False
            for i in self.forest.live():
                for w in self.forest.children(i):
                    if self.c(i) >= self.c(w):
                        self.forest.delete_node(i)
                        deleted.append(i)
                        changed = True
                        break
                if changed:
                    break
        return deleted

    # -- patching ---------------------------------------------------------

    def _patch(self, chain: AugChain, deleted: list[int],
               subtree_snapshot: dict[int, set[int]]) -> Optional[AugChain]:
        """Repair the chain after a batch, or None for a full rebuild."""
        ends = {chain.roots[0], chain.roots[-1]}
        deleted_set = set(deleted)
        new_roots: list[int] = []
        for r in chain.roots:
            if r in deleted_set:
                if r in ends:
                    return None
                # Case 3: replace a deleted root by the sub-chain of the
                # demand roots that surfaced from its subtree.
                subs = sorted(x for x in self.forest.roots()
                              if x in subtree_snapshot[r] and self.dem(x) >= 2)
                new_roots.extend(subs)
            elif self.dem(r) <= 1:
                if r in ends:
                    return None
                # Case 2: splice the satisfied root out.
            else:
                new_roots.append(r)
        if len(new_roots) < 2:
            return None
        if set(new_roots) != set(self.live_roots_with_demand()):
            return None
        # Case 1 is folded in here: endpoints are re-picked for every
        # root, which in particular replaces exhausted ones.
        old_edges = set(chain.edges())
        patched = self._assemble(new_roots)
        self.edge_update_count += len(set(patched.edges()) - old_edges)
        return patched

    def _record_events(self, chain: AugChain, deleted: list[int]) -> None:
        fired_beta = [v for v, d in chain.d_F_vertex().items()
                      if self.beta[v] < d]
        fired_dem = [r for r in chain.roots
                     if r not in set(deleted) and self.dem(r) <= 1]
        self.event_counts["beta"] += len(fired_beta)
        self.event_counts["dem"] += len(fired_dem)
        self.event_counts["delete"] += len(deleted)
        if self.event_log is not None:
            self.event_log.append({
                "beta_exhausted": fired_beta,
                "demand_satisfied": fired_dem,
                "deleted": deleted,
            })

    # -- main loop --------------------------------------------------------

    def run(self, check_expiration: bool = False) -> EdgeAdditions:
        self.chain = self.build_chain()
        while self.chain is not None:
            chain = self.chain
            t = self.expiration(chain)
            if check_expiration:
                sim = self.expiration_bruteforce(chain)
                assert t == sim, f"lazy t_F {t} != simulated {sim}"
            snapshot = {r: set(self.forest.subtree(r)) for r in chain.roots}
            deleted = self.apply_chain(chain, t)
            self._record_events(chain, deleted)
            patched = self._patch(chain, deleted, snapshot)
            self.chain = patched if patched is not None else self.build_chain()
        for cause, count in self.event_counts.items():
            assert count <= 3 * self.forest._next_id + self.g.n, \
                f"event cause {cause} fired {count} times"
        cap = 16 * self.g.n
        assert self.edge_update_count <= cap, \
            f"chain-edge updates {self.edge_update_count} exceed {cap}"
        # Materialize the lazily maintained values back onto the forest.
        for i in self.forest.live():
            self.forest.nodes[i].c = self.c(i)
        return EdgeAdditions(tuple(self.out)).merged()


def run_chains(g: Graph, forest: LaminarForest, beta: dict[int, int], tau: int,
               mode: str = "hld", event_log: Optional[list] = None,
               check_expiration: bool = False
               ) -> tuple[EdgeAdditions, ChainScheduler]:
    """Run the chain phase; returns the additions and the final state.

    The forest must have rdem computed (nodes with c >= tau contracted);
    beta is the external solution made even.  Afterwards every live root
    has demand <= 1 and the forest's c values are current.
    """
    sched = ChainScheduler(g, forest, beta, tau, mode=mode,
                           event_log=event_log)
    additions = sched.run(check_expiration=check_expiration)
    return additions, sched
