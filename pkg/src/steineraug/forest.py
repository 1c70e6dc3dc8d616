"""Rooted laminar forest of terminal sets with the tree machinery the
augmentation schedulers need: rdem DP, critical marking, L2/L_high,
heavy-light decomposition, node deletion with child reattachment, and a
path-update structure over node values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional


@dataclass
class ForestNode:
    id: int
    terminals: frozenset[int]
    c: int = 0
    rdem: int = 0
    mu_tilde: Optional[frozenset[int]] = None
    parent: Optional[int] = None
    children: list[int] = field(default_factory=list)
    critical: bool = False
    in_L2: bool = False
    deleted: bool = False


class LaminarForest:
    """Mutable rooted forest over disjoint-or-nested terminal sets.

    Deletion splices a node out (children reattach to the parent), so a
    survivor's ancestor set only ever shrinks; this is what lets the
    path-update structure keep using the construction-time topology.
    """

    def __init__(self) -> None:
        self.nodes: dict[int, ForestNode] = {}
        self._next_id = 0

    def add_node(self, terminals: frozenset[int], c: int = 0,
                 mu_tilde: Optional[frozenset[int]] = None,
                 parent: Optional[int] = None) -> int:
        nid = self._next_id
        self._next_id += 1
        self.nodes[nid] = ForestNode(nid, frozenset(terminals), c=c,
                                     mu_tilde=mu_tilde, parent=parent)
        if parent is not None:
            self.nodes[parent].children.append(nid)
        return nid

    @classmethod
    def from_family(cls, entries: Iterable[tuple[frozenset[int], int,
                                                 Optional[frozenset[int]]]]
                    ) -> "LaminarForest":
        """Build from a laminar family of (terminal set, c, mu) entries.

        Containment determines parenthood; entries are sorted largest
        first so each set's parent is already placed.  Node ids follow
        that order, making forests reproducible.
        """
        f = cls()
        ordered = sorted(entries, key=lambda e: (-len(e[0]), sorted(e[0])))
        placed: list[int] = []
        for (terms, c, mu) in ordered:
            parent = None
            best = None
            for pid in placed:
                pt = f.nodes[pid].terminals
                if terms < pt and (best is None or len(pt) < best):
                    parent = pid
                    best = len(pt)
                elif terms == pt:
                    raise ValueError("duplicate terminal set in family")
                elif terms & pt and not (terms <= pt or pt <= terms):
                    raise ValueError("family is not laminar")
            nid = f.add_node(terms, c=c, mu_tilde=mu, parent=parent)
            placed.append(nid)
        return f

    # -- queries ----------------------------------------------------------

    def live(self) -> list[int]:
        return [i for i, nd in sorted(self.nodes.items()) if not nd.deleted]

    def roots(self) -> list[int]:
        return [i for i in self.live() if self.nodes[i].parent is None]

    def children(self, i: int) -> list[int]:
        return list(self.nodes[i].children)

    def parent(self, i: int) -> Optional[int]:
        return self.nodes[i].parent

    def root_of(self, i: int) -> int:
        while self.nodes[i].parent is not None:
            i = self.nodes[i].parent
        return i

    def ancestors(self, i: int, include_self: bool = True) -> list[int]:
        out = [i] if include_self else []
        p = self.nodes[i].parent
        while p is not None:
            out.append(p)
            p = self.nodes[p].parent
        return out

    def subtree(self, i: int) -> list[int]:
        out = []
        stack = [i]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.nodes[u].children))
        return out

    def leaves(self) -> list[int]:
        return [i for i in self.live() if not self.nodes[i].children]

    # -- mutation ---------------------------------------------------------

    def delete_node(self, i: int) -> None:
        nd = self.nodes[i]
        if nd.deleted:
            raise ValueError(f"node {i} already deleted")
        p = nd.parent
        for ch in nd.children:
            self.nodes[ch].parent = p
            if p is not None:
                self.nodes[p].children.append(ch)
        if p is not None:
            self.nodes[p].children.remove(i)
        nd.children = []
        nd.parent = None
        nd.deleted = True

    # -- tree DPs ---------------------------------------------------------

    def postorder(self) -> list[int]:
        out = []
        for r in self.roots():
            stack = [(r, False)]
            while stack:
                u, expanded = stack.pop()
                if expanded:
                    out.append(u)
                else:
                    stack.append((u, True))
                    for ch in reversed(self.nodes[u].children):
                        stack.append((ch, False))
        return out

    def compute_rdem(self, tau: int) -> None:
        """Set rdem bottom-up; nodes with c >= tau are contracted away.

        A node whose cut value already meets the target demands nothing
        and is spliced into its parent, so rdem > 0 on every survivor.
        """
        for i in list(self.live()):
            if self.nodes[i].c >= tau:
                self.delete_node(i)
        for i in self.postorder():
            nd = self.nodes[i]
            child_sum = sum(self.nodes[ch].rdem for ch in nd.children)
            nd.rdem = max(tau - nd.c, child_sum)

    def mark_critical(self, tau: int) -> None:
        """critical iff own demand strictly exceeds the children's rdem sum."""
        for i in self.live():
            nd = self.nodes[i]
            child_sum = sum(self.nodes[ch].rdem for ch in nd.children)
            nd.critical = (tau - nd.c) > child_sum

    def compute_L2_Lhigh(self) -> tuple[set[int], set[int]]:
        """L2 = critical nodes with no critical proper ancestor;
        L_high = union of L2-to-root paths (L2 nodes included)."""
        l2: set[int] = set()
        for i in self.live():
            if not self.nodes[i].critical:
                continue
            if any(self.nodes[a].critical
                   for a in self.ancestors(i, include_self=False)):
                continue
            l2.add(i)
        lhigh: set[int] = set()
        for i in l2:
            lhigh.update(self.ancestors(i))
        for i in self.live():
            self.nodes[i].in_L2 = i in l2
        return l2, lhigh

    def heavy_light(self, stop_at_l2: bool = False) -> "HeavyPathDecomposition":
        return HeavyPathDecomposition.build(self, stop_at_l2=stop_at_l2)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> str:
        data = []
        for i in self.live():
            nd = self.nodes[i]
            data.append({
                "id": i,
                "terminals": sorted(nd.terminals),
                "parent": nd.parent,
                "c": nd.c,
                "rdem": nd.rdem,
                "critical": nd.critical,
                "in_L2": nd.in_L2,
                "mu_tilde": sorted(nd.mu_tilde) if nd.mu_tilde is not None else None,
            })
        return json.dumps(data, indent=2)

    def to_dot(self) -> str:
        lines = ["digraph laminar {", "  node [shape=box];"]
        for i in self.live():
            nd = self.nodes[i]
            label = "{%s} c=%d rdem=%d%s" % (
                ",".join(map(str, sorted(nd.terminals))), nd.c, nd.rdem,
                " L2" if nd.in_L2 else (" crit" if nd.critical else ""))
            lines.append(f'  n{i} [label="{label}"];')
        for i in self.live():
            p = self.nodes[i].parent
            if p is not None:
                lines.append(f"  n{p} -> n{i};")
        lines.append("}")
        return "\n".join(lines)


@dataclass
class HeavyPath:
    id: int
    nodes: list[int]      # top (closest to root) to bottom (a leaf)
    depth: int            # number of heavy paths met walking top -> tree root
    level: Optional[str]  # None, "upper", or "lower"


class HeavyPathDecomposition:
    """Heavy-light decomposition of a laminar forest.

    In the two-level variant (stop_at_l2), L_high is decomposed on its
    own (upper level, paths bottoming out at L2 nodes) and each subtree
    hanging below an L2 node is decomposed separately (lower level).
    Every live node belongs to exactly one path.
    """

    def __init__(self, paths: list[HeavyPath], path_of: dict[int, int]):
        self.paths = paths
        self.path_of = path_of

    @classmethod
    def build(cls, f: LaminarForest, stop_at_l2: bool = False
              ) -> "HeavyPathDecomposition":
        live = set(f.live())
        if stop_at_l2:
            l2 = {i for i in live if f.nodes[i].in_L2}
            if not l2:
                raise ValueError("stop_at_l2 requires L2 flags (compute_L2_Lhigh)")
            lhigh: set[int] = set()
            for i in l2:
                lhigh.update(f.ancestors(i))
        else:
            l2 = set()
            lhigh = set()

        def restricted_children(u: int, region: Optional[set[int]]) -> list[int]:
            chs = [ch for ch in f.nodes[u].children]
            if region is not None:
                chs = [ch for ch in chs if ch in region]
            return chs

        def decompose(top_nodes: list[int], region: Optional[set[int]],
                      cut_below: set[int], level: Optional[str],
                      paths: list[HeavyPath], path_of: dict[int, int]) -> None:
            # Subtree sizes within the region, not descending past cut_below.
            size: dict[int, int] = {}
            for top in top_nodes:
                order = []
                stack = [top]
                while stack:
                    u = stack.pop()
                    order.append(u)
                    if u not in cut_below:
                        stack.extend(restricted_children(u, region))
                for u in reversed(order):
                    s = 1
                    if u not in cut_below:
                        for ch in restricted_children(u, region):
                            s += size[ch]
                    size[u] = s
            for top in top_nodes:
                stack = [top]
                while stack:
                    head = stack.pop()
                    path = []
                    u = head
                    while True:
                        path.append(u)
                        if u in cut_below:
                            break
                        chs = restricted_children(u, region)
                        if not chs:
                            break
                        # Heavy child: max size, ties to the lower id.
                        heavy = min(chs, key=lambda ch: (-size[ch], ch))
                        for ch in chs:
                            if ch != heavy:
                                stack.append(ch)
                        u = heavy
                    pid = len(paths)
                    paths.append(HeavyPath(pid, path, depth=0, level=level))
                    for v in path:
                        path_of[v] = pid

        paths: list[HeavyPath] = []
        path_of: dict[int, int] = {}
        if not stop_at_l2:
            decompose(f.roots(), None, set(), None, paths, path_of)
        else:
            decompose([r for r in f.roots() if r in lhigh], lhigh, l2,
                      "upper", paths, path_of)
            lower_tops = []
            for i in sorted(l2):
                lower_tops.extend(sorted(f.nodes[i].children))
            decompose(lower_tops, None, set(), "lower", paths, path_of)
            # Roots outside L_high (no critical node below would be odd,
            # but leaves are always critical so every root is in L_high).

        # Path depth: 1 for paths headed by a forest root, else one more
        # than the depth of the parent's path.
        def depth_of(pid: int) -> int:
            p = paths[pid]
            if p.depth:
                return p.depth
            head = p.nodes[0]
            par = f.nodes[head].parent
            if par is None:
                p.depth = 1
            else:
                p.depth = depth_of(path_of[par]) + 1
            return p.depth

        for pid in range(len(paths)):
            depth_of(pid)
        return cls(paths, path_of)

    def walk_path_count(self, f: LaminarForest, leaf: int) -> int:
        """Number of distinct heavy paths met on the leaf-to-root walk."""
        seen = set()
        for u in f.ancestors(leaf):
            seen.add(self.path_of[u])
        return len(seen)


class _Fenwick:
    """Fenwick tree supporting range add / point query."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.bit = [0] * (n + 1)

    def _add(self, i: int, delta: int) -> None:
        i += 1
        while i <= self.n:
            self.bit[i] += delta
            i += i & (-i)

    def range_add(self, lo: int, hi: int, delta: int) -> None:
        """Add delta to positions lo..hi inclusive."""
        self._add(lo, delta)
        if hi + 1 < self.n:
            self._add(hi + 1, -delta)

    def point(self, i: int) -> int:
        i += 1
        acc = 0
        while i > 0:
            acc += self.bit[i]
            i -= i & (-i)
        return acc


class PathSumTree:
    """Per-node values with path additions toward the root.

    Built over a snapshot of the forest topology.  Later node deletions
    in the forest are fine: splicing preserves the ancestor sets of the
    survivors, so static root-path updates remain correct on live nodes
    (deleted nodes accumulate garbage that is never read).

    mode "hld" uses heavy-path intervals over a Fenwick tree (O(log^2 n)
    per update); mode "naive" walks live parent pointers and is kept as
    the differential-testing reference.
    """

    def __init__(self, f: LaminarForest, init: Optional[dict[int, int]] = None,
                 mode: str = "hld") -> None:
        if mode not in ("hld", "naive"):
            raise ValueError(f"unknown mode {mode!r}")
        self.f = f
        self.mode = mode
        self.base: dict[int, int] = {}
        for i in f.live():
            self.base[i] = (init or {}).get(i, f.nodes[i].c)
        self.static_parent = {i: f.nodes[i].parent for i in f.live()}
        self.static_depth: dict[int, int] = {}
        for i in f.live():
            d = 0
            u = i
            while self.static_parent.get(u) is not None:
                u = self.static_parent[u]
                d += 1
            self.static_depth[i] = d
        if mode == "naive":
            self.delta: dict[int, int] = {i: 0 for i in f.live()}
            return
        self.hld = f.heavy_light()
        self.pos: dict[int, int] = {}
        self.path_lo: dict[int, int] = {}
        cursor = 0
        for p in self.hld.paths:
            self.path_lo[p.id] = cursor
            for u in p.nodes:
                self.pos[u] = cursor
                cursor += 1
        self.fen = _Fenwick(cursor)

    # -- static-topology helpers -----------------------------------------

    def _static_lca(self, a: int, b: int) -> Optional[int]:
        """LCA in the construction-time topology; None if different trees."""
        da, db = self.static_depth[a], self.static_depth[b]
        while da > db:
            a = self.static_parent[a]
            da -= 1
        while db > da:
            b = self.static_parent[b]
            db -= 1
        while a != b:
            pa, pb = self.static_parent[a], self.static_parent[b]
            if pa is None or pb is None:
                return None
            a, b = pa, pb
        return a

    def live_lca(self, a: int, b: int) -> Optional[int]:
        """Deepest live common ancestor in the current (spliced) forest."""
        z = self._static_lca(a, b)
        while z is not None and self.f.nodes[z].deleted:
            z = self.static_parent[z]
        return z

    # -- updates and reads ------------------------------------------------

    def _add_to_root(self, a: int, stop_exclusive: Optional[int],
                     delta: int) -> None:
        """Add delta on the static path a..root, stopping before
        stop_exclusive (a static ancestor of a, or None for the full path)."""
        if self.mode == "naive":
            u = a
            while u is not None and u != stop_exclusive:
                self.delta[u] += delta
                u = self.static_parent[u]
            return
        u = a
        while u is not None and u != stop_exclusive:
            pid = self.hld.path_of[u]
            path = self.hld.paths[pid]
            head = path.nodes[0]
            # Does stop_exclusive live on this heavy path above u?
            if (stop_exclusive is not None
                    and self.hld.path_of.get(stop_exclusive) == pid
                    and self.pos[stop_exclusive] < self.pos[u]):
                self.fen.range_add(self.pos[stop_exclusive] + 1, self.pos[u], delta)
                return
            self.fen.range_add(self.pos[head], self.pos[u], delta)
            u = self.static_parent[head]

    def path_add_excl_lca(self, a: int, b: int, delta: int) -> None:
        """Add delta on the a->b forest path, excluding the LCA; when a and
        b are in different trees, both full root paths are updated."""
        for x in (a, b):
            if self.f.nodes[x].deleted:
                raise ValueError(f"node {x} is deleted")
        if a == b:
            return
        z = self.live_lca(a, b)
        # The static walk must stop at the *static* position of the live
        # LCA (a common static ancestor), so pass it as the exclusive stop.
        self._add_to_root(a, z, delta)
        self._add_to_root(b, z, delta)

    def root_path_add(self, a: int, delta: int) -> None:
        """Add delta on the full a->root path (a included)."""
        if self.f.nodes[a].deleted:
            raise ValueError(f"node {a} is deleted")
        self._add_to_root(a, None, delta)

    def value(self, i: int) -> int:
        if self.f.nodes[i].deleted:
            raise ValueError(f"node {i} is deleted")
        if self.mode == "naive":
            return self.base[i] + self.delta[i]
        return self.base[i] + self.fen.point(self.pos[i])

    def child_min(self, i: int) -> Optional[tuple[int, int]]:
        """(child id, value) minimizing value among live children of i."""
        best = None
        for ch in self.f.children(i):
            v = self.value(ch)
            if best is None or (v, ch) < best[::-1]:
                best = (ch, v)
        return best
