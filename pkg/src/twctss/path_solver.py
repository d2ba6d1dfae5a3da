"""Exact linear-time solver for paths.

On a path every internal node has threshold 1 or 2, and the problem
reduces to choosing seeds so that each unseeded threshold-2 node sees
both neighbors active in a common round.  The solver:

1. prunes the all-threshold-1 margins (an optimal solution uses the
   first and last threshold-2 nodes as its extremes),
2. fills sigma(i) = minimum seeds for the suffix {i..n-1} forced to
   contain i and n-1, block by block between consecutive threshold-2
   nodes: sigma takes at most two adjacent values per block, so a PREC
   array (rightmost low-value cell) answers each candidate-window query
   in O(1),
3. backtracks a witness, preferring the smallest candidate index.

A direct (slow) evaluation of the same recurrence ships as
:func:`sigma_direct` purely as a cross-check for the PREC shortcut.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CheckError, ShapeMismatchError
from .instance import Instance, is_path_graph, path_order, try_path_order
from .result import SolveResult


@dataclass
class PathTables:
    """DP tables over the pruned path (positions in pruned coordinates)."""

    offset: int
    D: list[int]
    sigma: list[int]
    prec: list[int]
    choice: dict[int, int] = field(default_factory=dict)
    sigma_writes: int = 0


def build_D(thresholds) -> list[int]:
    """D[i] = least j > i with t(j) = 2 (D[n-1] = n-1), right-to-left scan."""
    n = len(thresholds)
    D = [0] * n
    D[n - 1] = n - 1
    j = n - 1
    for i in range(n - 2, -1, -1):
        D[i] = j
        if thresholds[i] == 2:
            j = i
    return D


def second_element_candidates(i: int, D, lam: int, n: int) -> list[int]:
    """Candidate positions for the second-smallest seed of the suffix at i:
    the next threshold-2 node, or a window of positions it can be bridged
    through given the lam-round activity limit."""
    Di = D[i]
    DDi = D[Di]
    lo = max(Di + 1, 2 * Di - i - lam + 1)
    hi = min(2 * Di - i + lam - 1, DDi)
    cands = [Di]
    if lo <= hi:
        cands.extend(range(lo, hi + 1))
    return cands


def prune_path(inst: Instance) -> tuple[Instance, int]:
    """Restrict a path instance to the span between its first and last
    threshold-2 nodes (both of which some optimal solution contains).

    Requires the canonical node order to be 0..n-1 along the path and at
    least two threshold-2 nodes; raises ValueError otherwise.
    """
    if not is_path_graph(inst):
        raise ShapeMismatchError("prune_path requires a path instance")
    order = path_order(inst)
    if any(order[p] != p for p in range(inst.n)):
        raise ValueError("prune_path requires nodes numbered along the path")
    twos = [i for i, t in enumerate(inst.thresholds) if t == 2]
    if len(twos) < 2:
        raise ValueError("fewer than two threshold-2 nodes; use the special cases")
    lo, hi = twos[0], twos[-1]
    thr = inst.thresholds[lo : hi + 1]
    k = hi - lo + 1
    adjacency = tuple(
        tuple(q for q in (p - 1, p + 1) if 0 <= q < k) for p in range(k)
    )
    return Instance(k, adjacency, thr, inst.lam), lo


_NUMBA_MIN_N = 4096


def _tables_from_ks(n: int, ks, lam: int, force_python: bool = False):
    """sigma/PREC for a pruned path given the threshold-2 positions `ks`
    (which must include 0 and n-1).  Numba lane for large inputs, with an
    identical pure-Python twin (the reference for tests)."""
    from . import _fastpath

    if (not force_python and _fastpath.HAVE_NUMBA and n >= _NUMBA_MIN_N):
        import numpy as np

        ks_arr = np.asarray(ks, dtype=np.int64)
        sigma = np.zeros(n, dtype=np.int64)
        prec = np.zeros(n, dtype=np.int64)
        writes = _fastpath.line_kernel(ks_arr, n, lam, sigma, prec)
        return sigma, prec, int(writes), ks_arr
    return _tables_from_ks_py(n, ks, lam) + (ks,)


def _tables_from_ks_py(n: int, ks, lam: int):
    sigma = [0] * n
    prec = [0] * n
    sigma[n - 1] = 1
    prec[n - 1] = n - 1
    writes = 1

    d = ks[-2]
    s = 2
    sigma[d] = 2
    prec[d] = d
    writes += 1
    span = n - 1 - (d + 1)
    if span > 0:
        sigma[d + 1 : n - 1] = [2] * span
        prec[d + 1 : n - 1] = [d] * span
        writes += span

    for idx in range(len(ks) - 3, -1, -1):
        dprev = d
        d = ks[idx]
        DD = ks[idx + 2]
        sp = sigma[dprev]
        sm1 = s - 1
        size = dprev - d
        writes += size
        if sp == sm1:
            # every cell bridges through the block head at cost s
            sigma[d:dprev] = [s] * size
            prec[d:dprev] = [d] * size
            prec[dprev] = dprev
            continue
        base_lo = 2 * dprev - lam + 1
        base_hi = 2 * dprev + lam - 1
        dp1 = dprev + 1
        s1 = s + 1
        any_high = False
        for i in range(d, dprev):
            lo = base_lo - i
            if lo < dp1:
                lo = dp1
            hi = base_hi - i
            if hi > DD:
                hi = DD
            if lo <= hi and (sigma[hi] == sm1 or prec[hi] >= lo):
                sigma[i] = s
            else:
                sigma[i] = s1
                any_high = True
        if any_high:
            s = s1
        sm1 = s - 1
        prec[d] = d
        for i in range(d + 1, dprev + 1):
            prec[i] = i if sigma[i] == sm1 else prec[i - 1]
    return sigma, prec, writes


def _backtrack_from_ks(ks, sigma, lam: int, choice: dict | None = None):
    """Witness positions for a pruned path; smallest candidate on ties.
    Walks the threshold-2 index pointer forward, so the whole pass is
    O(n) regardless of window sizes."""
    from . import _fastpath

    n = len(sigma)
    if (_fastpath.HAVE_NUMBA and choice is None
            and not isinstance(sigma, list) and n >= _NUMBA_MIN_N):
        import numpy as np

        out = np.zeros(int(sigma[0]), dtype=np.int64)
        cnt = _fastpath.backtrack_kernel(ks, sigma, lam, out)
        if cnt < 0:
            raise AssertionError("no candidate attains sigma-1 on backtrack")
        return out[:cnt].tolist()

    m = len(ks)
    cur = 0
    out = [0]
    p = 0
    while cur < n - 1:
        while ks[p] <= cur:
            p += 1
        Dp = ks[p]
        DD = ks[p + 1] if p + 1 < m else ks[p]
        target = sigma[cur] - 1
        if sigma[Dp] == target:
            nxt = Dp
        else:
            jmin = max(Dp + 1, 2 * Dp - cur - lam + 1)
            jmax = min(2 * Dp - cur + lam - 1, DD)
            nxt = -1
            for j in range(jmin, jmax + 1):
                if sigma[j] == target:
                    nxt = j
                    break
            if nxt < 0:
                raise AssertionError(f"no candidate attains sigma-1 at {cur}")
        if choice is not None:
            choice[cur] = nxt
        out.append(nxt)
        cur = nxt
    return out


def _solve_pruned(n: int, ks, lam: int, check: bool = False,
                  force_python: bool = False):
    """Solve a pruned path given its threshold-2 positions (0 and n-1
    included).  Returns (size, witness positions, (sigma, prec, writes))."""
    sigma, prec, writes, ks_used = _tables_from_ks(n, ks, lam,
                                                   force_python=check or force_python)
    if check:
        _check_tables(ks, sigma, prec, writes, n)
    witness = _backtrack_from_ks(ks_used, sigma, lam)
    return int(sigma[0]), witness, (sigma, prec, writes)


def _line_tables(thr, lam: int, check: bool = False) -> PathTables:
    """Reference-lane tables for a pruned path given its thresholds;
    includes the D array (next threshold-2 position)."""
    n = len(thr)
    ks = [i for i, t in enumerate(thr) if t == 2]
    sigma, prec, writes = _tables_from_ks_py(n, ks, lam)
    tables = PathTables(0, build_D(thr), sigma, prec, sigma_writes=writes)
    if check:
        _check_tables(ks, sigma, prec, writes, n)
    return tables


def _check_tables(ks, sigma, prec, writes, n: int) -> None:
    if writes != n:
        raise CheckError(
            f"sigma writes {writes} != n {n}: not one pass per cell"
        )
    # two-value property on every block between consecutive threshold-2 nodes
    for a, b in zip(ks, ks[1:]):
        block = sigma[a : b + 1]
        if max(block) - min(block) > 1:
            raise CheckError(f"sigma takes >2 values on block {a}..{b}")


def _solve_thresholds(thr, lam: int, check: bool = False):
    """Core solve on path thresholds (positions 0..n-1).

    Returns (size, witness positions, tables or None, offset).  Thresholds
    above 2 are only meaningful at the endpoints (forced seeds), which is
    how the ring reduction uses this routine.
    """
    twos = [i for i, t in enumerate(thr) if t >= 2]
    if not twos:
        return 1, [0], None, 0
    if len(twos) == 1:
        return 1, [twos[0]], None, 0
    lo, hi = twos[0], twos[-1]
    ks = [x - lo for x in twos]
    size, wit, (sigma, prec, writes) = _solve_pruned(hi - lo + 1, ks, lam,
                                                     check=check)
    tables = PathTables(lo, [], sigma, prec, sigma_writes=writes)
    witness = [p + lo for p in wit]
    return size, witness, tables, lo


def segment_completion_round(thr, lam: int, seeds, cyclic: bool = False) -> int:
    """Round at which a valid witness finishes, from the seed layout alone:
    plain stretches fill from the nearer seed, and an unseeded threshold-2
    node between two seeds flips at the first round its sides' activity
    windows overlap.  O(n); equivalent to running the simulation."""
    n = len(thr)
    seeds = sorted(seeds)
    best = 0

    def segment_max(x: int, y: int, gap: int) -> int:
        # seeds at cyclic/linear distance `gap`; at most one threshold-2
        # position strictly between them on a valid witness
        worst = gap // 2
        for off in range(1, gap):
            if thr[(x + off) % n] == 2:
                worst = max(off, gap - off)
                break
        return worst

    if not cyclic:
        best = max(seeds[0], (n - 1) - seeds[-1])   # threshold-1 margins
        for a, b in zip(seeds, seeds[1:]):
            best = max(best, segment_max(a, b, b - a))
    else:
        k = len(seeds)
        for i in range(k):
            a = seeds[i]
            b = seeds[(i + 1) % k]
            gap = (b - a) % n if k > 1 else n
            best = max(best, segment_max(a, b, gap))
    return best


def solve_path(inst: Instance, check: bool = False) -> SolveResult:
    order = try_path_order(inst)
    if order is None:
        raise ShapeMismatchError("solve_path requires a path-shaped instance")
    thr = [inst.thresholds[v] for v in order]
    size, positions, _, _ = _solve_thresholds(thr, inst.lam, check=check)
    witness = tuple(sorted(order[p] for p in positions))
    completion = segment_completion_round(thr, inst.lam, positions)
    return SolveResult(size, witness, completion, "path")


def solve_path_with_tables(
    inst: Instance, check: bool = False
) -> tuple[SolveResult, PathTables | None]:
    """Solve a path instance; also returns the DP tables (None when a
    special case short-circuits the DP)."""
    order = try_path_order(inst)
    if order is None:
        raise ShapeMismatchError("solve_path requires a path-shaped instance")
    thr = [inst.thresholds[v] for v in order]
    size, positions, tables, offset = _solve_thresholds(thr, inst.lam, check=check)
    if tables is not None:
        # materialize the dump-facing pieces (lists + the D array)
        tables.sigma = list(tables.sigma)
        tables.prec = list(tables.prec)
        tables.D = build_D(thr[offset : offset + len(tables.sigma)])
    witness = tuple(sorted(order[p] for p in positions))
    completion = segment_completion_round(thr, inst.lam, positions)
    return SolveResult(size, witness, completion, "path"), tables


def sigma_direct(thr, lam: int) -> list[int]:
    """Reference evaluation of the suffix recurrence without the PREC
    shortcut; O(n * lam).  Test oracle only."""
    n = len(thr)
    D = build_D(thr)
    sigma = [0] * n
    sigma[n - 1] = 1
    for i in range(n - 2, -1, -1):
        best = sigma[D[i]]
        for j in second_element_candidates(i, D, lam, n)[1:]:
            if sigma[j] < best:
                best = sigma[j]
        sigma[i] = 1 + best
    return sigma


def classical_path_solution(thresholds) -> list[int]:
    """Closed-form optimal set for the unbounded-window special case:
    alternate threshold-2 nodes, always keeping the first and last."""
    ks = [i for i, t in enumerate(thresholds) if t == 2]
    if len(ks) < 2:
        raise ValueError("closed form requires at least two threshold-2 nodes")
    sel = ks[::2]
    if len(ks) % 2 == 0:
        sel = sel + [ks[-1]]
    return sel
