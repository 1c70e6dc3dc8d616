"""Degree-constrained +1 step via surrogate vertices.

At connectivity tau-1 the demand-1 groups are the terminal sets of
minimal Steiner min cuts; their supreme sets are recovered with
isolating cuts, and inside each supreme set some vertex still holds
vacant external degree.  The random matching of the unconstrained step
then runs unchanged, except every matched edge attaches to such a
surrogate vertex instead of a terminal.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from . import flow
from .graph import EdgeAdditions, Graph
from .matching import designated_terminal, match_groups


def find_surrogates(g: Graph, K_prime: Sequence[frozenset[int]],
                    beta: dict[int, int]
                    ) -> dict[frozenset[int], tuple[frozenset[int], int]]:
    """Per group k: its supreme set mu(k) (minimal isolating cut) and the
    lowest-id vertex of mu(k) with vacant degree."""
    groups = [frozenset(k) for k in K_prime]
    rest = frozenset(g.terminals) - frozenset().union(*groups)
    parts = groups + ([rest] if rest else [])
    if len(parts) >= 2:
        cuts = flow.isolating_cuts(g, parts)
    else:
        cuts = {groups[0]: frozenset(range(g.n)) - rest}
    out = {}
    for k in groups:
        mu = cuts[k]
        vac = sorted(v for v in mu if beta.get(v, 0) >= 1)
        assert vac, f"no vacant vertex inside the supreme set of {sorted(k)}"
        out[k] = (mu, vac[0])
    return out


def deg_augment_by_one(g: Graph, tau: int, beta: dict[int, int],
                       K_prime: Sequence[frozenset[int]],
                       rng: random.Random,
                       check: str = "terminal") -> EdgeAdditions:
    """Matching step with surrogate endpoints; budget-respecting.

    `check` selects the feasibility certificate's star attachment:
    "terminal" (the unconstrained form) or "surrogate" (so the
    certificate itself respects the budget); both accept the same
    matchings on small instances.
    """
    if not K_prime:
        return EdgeAdditions(())
    info = find_surrogates(g, K_prime, beta)
    remaining = dict(beta)

    def surrogate(grp: frozenset[int]) -> int:
        mu, _ = info[grp]
        vac = sorted(v for v in mu if remaining.get(v, 0) >= 1)
        assert vac, f"budget exhausted inside supreme set of {sorted(grp)}"
        return vac[0]

    def consume(grp: frozenset[int], v: int) -> None:
        remaining[v] -= 1
        assert remaining[v] >= 0

    def budget_inside(grp: frozenset[int]) -> int:
        mu, _ = info[grp]
        return sum(remaining.get(v, 0) for v in mu)

    star_vertex = surrogate if check == "surrogate" else designated_terminal
    return match_groups(g, list(K_prime), tau, rng,
                        edge_vertex=surrogate, star_vertex=star_vertex,
                        on_commit=consume, capacity=budget_inside)
