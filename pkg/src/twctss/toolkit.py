"""Dispatch front end: route an instance to the right solver, handling
disconnected graphs per component and falling back to the brute-force
oracle for small general-shaped components."""

from __future__ import annotations

from collections import deque

from .complete_solver import solve_complete
from .diffusion import simulate
from .errors import ShapeMismatchError, UnsupportedInstanceError
from .instance import (
    COMPLETE,
    GENERAL,
    PATH,
    RING,
    TREE,
    Instance,
    classify_shape,
)
from .oracle import DEFAULT_NODE_CAP, brute_force_min_target_set
from .path_solver import solve_path
from .result import SolveResult
from .ring_solver import solve_ring
from .tree_solver import solve_tree

METHODS = ("auto", "path", "ring", "tree", "complete", "brute")

_SHAPE_SOLVERS = {
    PATH: solve_path,
    RING: solve_ring,
    TREE: solve_tree,
    COMPLETE: solve_complete,
}


def connected_components(inst: Instance) -> list[list[int]]:
    """Components as sorted node lists, ordered by smallest member."""
    seen = bytearray(inst.n)
    comps = []
    for s in range(inst.n):
        if seen[s]:
            continue
        seen[s] = 1
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in inst.adjacency[u]:
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def subinstance(inst: Instance, nodes: list[int]) -> tuple[Instance, list[int]]:
    """Induced instance on `nodes` (relabeled 0..k-1) plus the id map back."""
    index = {v: i for i, v in enumerate(nodes)}
    adjacency = tuple(
        tuple(index[w] for w in inst.adjacency[v] if w in index) for v in nodes
    )
    thresholds = tuple(inst.thresholds[v] for v in nodes)
    return Instance(len(nodes), adjacency, thresholds, inst.lam), nodes


def _solve_component(inst: Instance, node_cap: int, check: bool) -> SolveResult:
    shape = classify_shape(inst)
    if shape.kind == GENERAL:
        if inst.n > node_cap:
            raise UnsupportedInstanceError(
                f"general-shaped component with {inst.n} nodes exceeds the "
                f"brute-force cap {node_cap}; no exact solver applies"
            )
        return brute_force_min_target_set(inst, node_cap)
    return _SHAPE_SOLVERS[shape.kind](inst, check=check)


def solve(
    inst: Instance,
    method: str = "auto",
    node_cap: int = DEFAULT_NODE_CAP,
    check: bool = False,
) -> SolveResult:
    """Solve with the requested method; "auto" classifies each connected
    component and sums the per-component optima (influence never crosses
    components)."""
    if method not in METHODS:
        raise ShapeMismatchError(f"unknown method {method!r}")
    if method == "brute":
        return brute_force_min_target_set(inst, node_cap)
    if method != "auto":
        return _SHAPE_SOLVERS[{
            "path": PATH, "ring": RING, "tree": TREE, "complete": COMPLETE
        }[method]](inst, check=check)

    comps = connected_components(inst)
    if len(comps) == 1:
        return _solve_component(inst, node_cap, check)

    total = 0
    witness: list[int] = []
    methods = []
    for nodes in comps:
        sub, back = subinstance(inst, nodes)
        res = _solve_component(sub, node_cap, check)
        total += res.size
        witness.extend(back[v] for v in res.witness)
        methods.append(res.method)
    witness.sort()
    trace = simulate(inst, witness)
    if not trace.complete:
        raise AssertionError("combined component witness is not a target set")
    tag = "+".join(sorted(set(methods)))
    return SolveResult(total, tuple(witness), trace.completion_round, tag)
