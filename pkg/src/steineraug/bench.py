"""Benchmark the pure-Python flow kernel against the compiled one.

Each size generates a random connected weighted graph and times the full
Steiner-connectivity computation (a batch of max-flow solves) under both
kernels, forced via the STEINERAUG_FLOW_BACKEND environment variable.
"""

from __future__ import annotations

import os
import random
import time
from typing import Optional

from . import flow
from .graph import Graph, steiner_connectivity


def random_connected_graph(n: int, rng: random.Random,
                           extra_edges: Optional[int] = None,
                           max_w: int = 8, n_terminals: Optional[int] = None
                           ) -> Graph:
    """Random spanning tree plus extra weighted edges; ~n/3 terminals."""
    if extra_edges is None:
        extra_edges = 2 * n
    edges = [(rng.randrange(v), v, rng.randint(1, max_w))
             for v in range(1, n)]
    for _ in range(extra_edges):
        u, v = rng.sample(range(n), 2)
        edges.append((min(u, v), max(u, v), rng.randint(1, max_w)))
    if n_terminals is None:
        n_terminals = max(2, n // 3)
    terminals = rng.sample(range(n), n_terminals)
    return Graph.build(n, edges, terminals)


def _timed_connectivity(g: Graph, backend: str) -> tuple[float, int]:
    prev = os.environ.get("STEINERAUG_FLOW_BACKEND")
    os.environ["STEINERAUG_FLOW_BACKEND"] = backend
    try:
        t0 = time.perf_counter()
        val = steiner_connectivity(g)
        return time.perf_counter() - t0, val
    finally:
        if prev is None:
            del os.environ["STEINERAUG_FLOW_BACKEND"]
        else:
            os.environ["STEINERAUG_FLOW_BACKEND"] = prev


def run_bench(sizes: list[int], repeats: int = 3, seed: int = 0) -> list[dict]:
    """Per size: best-of-`repeats` wall time for each kernel (seconds)."""
    compiled_available = flow.flow_backend_name() == "compiled"
    rows = []
    for n in sizes:
        g = random_connected_graph(n, random.Random(seed + n))
        t_py = min(_timed_connectivity(g, "py")[0] for _ in range(repeats))
        row = {"n": n, "edges": len(g.edges), "python_s": t_py}
        if compiled_available:
            times = []
            vals = set()
            for _ in range(repeats):
                t, val = _timed_connectivity(g, "c")
                times.append(t)
                vals.add(val)
            vals.add(_timed_connectivity(g, "py")[1])
            assert len(vals) == 1, "kernels disagree on a cut value"
            row["compiled_s"] = min(times)
            row["speedup"] = t_py / max(row["compiled_s"], 1e-9)
        rows.append(row)
    return rows


def format_rows(rows: list[dict]) -> str:
    lines = [f"{'n':>6} {'edges':>7} {'python':>10} {'compiled':>10} {'speedup':>8}"]
    for r in rows:
        comp = f"{r['compiled_s']:.4f}s" if "compiled_s" in r else "n/a"
        spd = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        lines.append(f"{r['n']:>6} {r['edges']:>7} {r['python_s']:>9.4f}s "
                     f"{comp:>10} {spd:>8}")
    return "\n".join(lines)


if __name__ == "__main__":
    print(format_rows(run_bench([30, 60, 100])))
