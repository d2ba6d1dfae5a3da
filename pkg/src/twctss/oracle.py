"""Brute-force exact minimum target set for small instances.

This is the independent ground truth against which every shape solver is
cross-validated: it knows nothing about paths, rings, trees or complete
graphs, it just enumerates seed sets in increasing cardinality (and
lexicographically within a cardinality) and returns the first one that
influences the whole graph.
"""

from __future__ import annotations

import itertools

from .diffusion import is_target_set, simulate
from .errors import UnsupportedInstanceError
from .instance import Instance
from .result import SolveResult

DEFAULT_NODE_CAP = 16


def brute_force_min_target_set(
    inst: Instance, node_cap: int = DEFAULT_NODE_CAP
) -> SolveResult:
    """Exhaustive minimum target set.

    Enumeration order makes the witness the lexicographically least optimal
    set, so expected values derived from this oracle are reproducible.
    """
    n = inst.n
    if n > node_cap:
        raise UnsupportedInstanceError(
            f"instance has {n} nodes, above the brute-force cap {node_cap}"
        )
    for k in range(1, n + 1):
        for comb in itertools.combinations(range(n), k):
            ok, _ = is_target_set(inst, comb)
            if ok:
                trace = simulate(inst, comb)
                return SolveResult(k, comb, trace.completion_round, "brute")
    raise AssertionError("seeding all nodes must always be a target set")
