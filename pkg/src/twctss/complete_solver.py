"""Exact O(n log n) solver for complete graphs.

Seeding the k largest thresholds is always optimal among size-k seeds
(swapping a seeded low-threshold node for an unseeded higher-threshold
one never hurts), so only the optimal k must be found.  max_influenced
computes the final coverage of the top-k seed in O(n) from the counting
vector A alone, tracking the active-set size and a lam-slot ring buffer
of past coverage counts; a binary search over k finishes the job.

A complete graph on many nodes cannot be materialized as adjacency
lists (the instance would hold n*(n-1) neighbor entries), so the solver
core works on (n, thresholds, lam) directly; solve_complete is the
Instance-facing wrapper.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import ShapeMismatchError
from .instance import Instance, is_complete_graph
from .result import SolveResult


@dataclass(frozen=True)
class ThresholdCounts:
    """A[l] = number of nodes with threshold <= l, for l = 0..n."""

    A: tuple[int, ...]


def counts_from_thresholds(n: int, thresholds) -> ThresholdCounts:
    """Counting-sort pass + prefix sums over the threshold multiset."""
    hist = [0] * (n + 1)
    for t in thresholds:
        hist[min(t, n)] += 1
    A = [0] * (n + 1)
    run = 0
    for ell in range(n + 1):
        run += hist[ell]
        A[ell] = run
    return ThresholdCounts(tuple(A))


def threshold_counts(inst: Instance) -> ThresholdCounts:
    return counts_from_thresholds(inst.n, inst.thresholds)


def _cascade(n: int, A, lam: int, k: int) -> tuple[int, int | None]:
    """(final coverage, completion round or None) for the top-k seed.

    `ell` is the current active-set size; the ring buffer X holds the
    coverage counts of the last lam rounds (-k sentinels stand in for the
    pre-start rounds).  Coverage is tracked separately from ell because
    the active size may shrink in the final rounds.
    """
    top = len(A) - 1

    def a(ell: int) -> int:
        return A[ell] if ell <= top else A[top]

    if k >= n:
        return n, 0
    if k == 0:
        return 0, None
    if a(k) == 0:
        return k, None
    X = [-k] * (lam - 1) + [0]
    j = 0
    ell = k
    cum = 0                      # non-seed nodes influenced so far
    rounds = 0
    while True:
        new_cum = a(ell)
        if new_cum <= cum:       # the active set can no longer grow the cascade
            return k + cum, None
        cum = new_cum
        rounds += 1
        if cum + k >= n:
            return n, rounds
        ell = cum - X[j]
        X[j] = cum
        j = (j + 1) % lam


def max_influenced(n: int, A, lam: int, k: int) -> int:
    """Largest number of nodes a size-k seed can influence.  `A` is
    indexable for 0..n; indices above n clamp to n."""
    if isinstance(A, ThresholdCounts):
        A = A.A
    coverage, _ = _cascade(n, A, lam, k)
    return min(n, coverage)


def top_k_seed(n: int, thresholds, k: int) -> list[int]:
    """k nodes of largest threshold, ties broken toward smaller ids."""
    import numpy as np

    thr = np.asarray(thresholds)
    ranked = np.lexsort((np.arange(n), -thr))
    return sorted(ranked[:k].tolist())


def solve_complete_thresholds(
    n: int, thresholds, lam: int, check: bool = False
) -> SolveResult:
    """Solver core on the compact description (no adjacency needed)."""
    A = counts_from_thresholds(n, thresholds).A

    def feasible(k: int) -> bool:
        return max_influenced(n, A, lam, k) == n

    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid + 1
    best = lo

    if check:
        # Feasibility should be monotone in k; if a violation ever shows up,
        # fall back to a full scan rather than trust the binary search.
        feas = [feasible(k) for k in range(n + 1)]
        if any(feas[k] and not feas[k + 1] for k in range(n)):
            warnings.warn("max_influenced feasibility is not monotone in k; "
                          "falling back to a linear scan")
            best = next(k for k in range(n + 1) if feas[k])

    witness = tuple(top_k_seed(n, thresholds, best))
    _, completion = _cascade(n, A, lam, best)
    if completion is None:
        raise AssertionError("chosen k does not complete the cascade")
    return SolveResult(best, witness, completion, "complete")


def solve_complete(inst: Instance, check: bool = False) -> SolveResult:
    if not is_complete_graph(inst):
        raise ShapeMismatchError("solve_complete requires a complete graph")
    return solve_complete_thresholds(inst.n, inst.thresholds, inst.lam,
                                     check=check)
