"""Exact solver for rings.

A seed set works on a ring iff every cyclic gap between consecutive
seeds contains at most one unseeded threshold-2 node, and that node
sees its two sides arrive within the activity window (the same balance
condition the path recurrence encodes).  Consequences used here:

* all-threshold-2 rings cost ceil(n/2) (alternating seeds);
* seeding every threshold-2 node is always valid, so an optimal set is
  never larger than their count m, and any strictly better set seeds
  at least one node in the "anchor window" ending at a chosen
  threshold-2 node D: the left seed of the gap covering D must lie in
  [prev2(D), D] and within balance reach of the following gap;
* a ring solved with a forced seed at anchor x is a path problem: break
  the ring at x, duplicate it, and force both copies (threshold 2).

The solver sweeps the cheapest anchor window, one forced path solve per
anchor.  The classical break-at-a-threshold-1-node construction (force
the break node / free the break node) is kept as
:func:`classic_break_sizes` for comparison: it upper-bounds the optimum
but misses solutions where influence is timed *through* the break node,
so it is not used on its own.  Runtime is O((w + 1) n) where w is the
chosen window width (0 or 1 on dense instances; up to the largest
threshold-2 spacing plus lam on sparse ones).
"""

from __future__ import annotations

from bisect import bisect_right

from .diffusion import is_target_set
from .errors import CheckError, ShapeMismatchError
from .instance import Instance, is_ring_graph, ring_order, try_ring_order
from .path_solver import _solve_pruned, _solve_thresholds, segment_completion_round
from .result import SolveResult


def _all_two_witness(n: int) -> list[int]:
    # Even n alternates cleanly; odd n needs one adjacent pair near the end.
    if n % 2 == 0:
        return list(range(0, n, 2))
    return list(range(0, n - 2, 2)) + [n - 2]


def _unroll_forced(n: int, twos: list[int], lam: int, anchor: int, check: bool):
    """Minimum ring target set containing position `anchor`: break the ring
    there, duplicate the anchor and force both copies (threshold 2).  The
    duplicated path is never materialized; only the threshold-2 positions
    matter.  Returns (size, positions) in ring coordinates."""
    cut = bisect_right(twos, anchor)
    ks = [0]
    ks.extend(x - anchor for x in twos[cut:])
    ks.extend(x + n - anchor for x in twos[:cut] if x != anchor)
    ks.append(n)
    size, wit, _ = _solve_pruned(n + 1, ks, lam, check=check)
    positions = sorted({(anchor + p) % n for p in wit})
    return size - 1, positions


def _single_seed_balance(thr: list[int], lam: int, s: int, twos: list[int]) -> bool:
    """Can seed {s} alone influence the ring?  At most one other threshold-2
    node may exist, balanced between the two ways around the cycle."""
    n = len(thr)
    others = [e for e in twos if e != s]
    if len(others) > 1:
        return False
    if not others:
        return True
    e = others[0]
    d1 = (e - s) % n
    d2 = n - d1
    return abs(d1 - d2) <= lam - 1


def classic_break_sizes(inst: Instance, check: bool = False) -> tuple[int, int]:
    """Sizes of the two classical break constructions at the smallest
    threshold-1 node j: (forced branch minus the duplicate, free branch).
    Upper bounds on the optimum; exact when no solution times influence
    through j."""
    if not is_ring_graph(inst):
        raise ShapeMismatchError("classic_break_sizes requires a ring")
    order = ring_order(inst)
    thr = [inst.thresholds[v] for v in order]
    n = inst.n
    ones = [p for p, t in enumerate(thr) if t == 1]
    if not ones:
        raise ValueError("classic break requires a threshold-1 node")
    j = ones[0]
    middle = thr[j + 1 :] + thr[:j]
    twos = [p for p, t in enumerate(thr) if t == 2]

    size2, _ = _unroll_forced(n, twos, inst.lam, j, check)
    size1, _, _, _ = _solve_thresholds([1] + middle + [1], inst.lam, check=check)
    return size2, size1


def solve_ring(inst: Instance, check: bool = False) -> SolveResult:
    order = try_ring_order(inst)
    if order is None:
        raise ShapeMismatchError("solve_ring requires a ring-shaped instance")
    n = inst.n
    thr = [inst.thresholds[v] for v in order]
    twos = [p for p, t in enumerate(thr) if t == 2]
    m = len(twos)

    if m == n:
        positions = _all_two_witness(n)
        size = (n + 1) // 2
    elif m == 0:
        positions = [0]
        size = 1
    else:
        size, positions = _anchor_sweep(thr, inst.lam, twos, check)

    if check:
        ok, _ = is_target_set(inst, [order[p] for p in positions])
        if not ok:
            raise CheckError("ring witness rejected by simulation")
    witness = tuple(sorted(order[p] for p in positions))
    if len(witness) != size:
        raise AssertionError("ring witness size disagrees with reported size")
    completion = segment_completion_round(thr, inst.lam, positions, cyclic=True)
    return SolveResult(size, witness, completion, "ring")


def _anchor_sweep(thr, lam, twos, check):
    """Every valid solution seeds some node in the window [lo(D), D] for
    each threshold-2 node D, so sweeping the cheapest window with one
    forced path solve per anchor is exhaustive.  Seeding all threshold-2
    nodes is always feasible and seeds the sweep with an upper bound."""
    n = len(thr)
    m = len(twos)
    best_size, best_pos = m, list(twos)

    if m == 1:
        size, pos = _unroll_forced(n, twos, lam, twos[0], check)
        return (size, pos) if size < best_size else (best_size, best_pos)
    if m == 2:
        for s in twos:
            if _single_seed_balance(thr, lam, s, twos):
                return 1, [s]
        return best_size, best_pos

    best_d, best_w = None, None
    for i, d in enumerate(twos):
        prev2 = twos[i - 1]
        next2 = twos[(i + 1) % m]
        gap_prev = (d - prev2) % n
        gap_next = (next2 - d) % n
        # left seed of the gap covering d sits at most this far left of d
        width = min(gap_prev, gap_next + lam - 1)
        if best_w is None or width < best_w:
            best_w, best_d = width, d

    lower = max(1, (m + 1) // 2)
    for off in range(best_w + 1):
        anchor = (best_d - off) % n
        size, pos = _unroll_forced(n, twos, lam, anchor, check)
        if size < best_size:
            best_size, best_pos = size, pos
            if best_size <= lower:
                break
    return best_size, best_pos
