"""Deterministic pseudo-random instance generation.

The PRNG is part of the external contract so corpora regenerate
identically anywhere: SplitMix64 seeded with the 64 low bits of the
given seed.  Bounded draws use `next_u64() % m`; Bernoulli(p) draws
compare `next_u64()` against floor(p * 2**64).  Draw order is fixed:
graph structure first (tree parents in node order; gnp coin flips over
pairs (u, v) with u < v in lexicographic order), then thresholds in
node order.
"""

from __future__ import annotations

from .instance import Instance, make_instance, validate

_MASK = (1 << 64) - 1

FAMILIES = ("path", "ring", "tree", "complete", "gnp")
POLICIES = ("uniform", "all_one", "all_max", "two_mix")


class SplitMix64:
    """Tiny, well-known 64-bit generator; trivially portable."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, m: int) -> int:
        """Uniform-enough integer in [0, m)."""
        if m <= 0:
            raise ValueError("below() needs a positive bound")
        return self.next_u64() % m

    def bernoulli(self, p: float) -> bool:
        return self.next_u64() < int(p * 2.0**64)


def _gnp_edges(rng: SplitMix64, n: int, p: float) -> list[tuple[int, int]] | None:
    edges = []
    degree = [0] * n
    for u in range(n - 1):
        for v in range(u + 1, n):
            if rng.bernoulli(p):
                edges.append((u, v))
                degree[u] += 1
                degree[v] += 1
    if any(d == 0 for d in degree):
        return None
    return edges


def generate(
    family: str,
    n: int,
    threshold_policy: str,
    lam: int,
    rng_seed: int,
    policy_p: float = 0.5,
    edge_p: float = 0.3,
) -> Instance:
    """Deterministic instance from (family, n, policy, lam, seed).

    two_mix applies to paths and rings only (threshold 2 with probability
    policy_p where the degree allows it, else 1); gnp re-samples the whole
    graph until no node is isolated.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if threshold_policy not in POLICIES:
        raise ValueError(f"unknown threshold policy {threshold_policy!r}")
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    if n < 2 or (family == "ring" and n < 3):
        raise ValueError(f"n={n} too small for family {family!r}")
    if threshold_policy == "two_mix" and family not in ("path", "ring"):
        raise ValueError("two_mix thresholds are defined for paths and rings only")

    rng = SplitMix64(rng_seed)

    if family == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == "ring":
        edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    elif family == "complete":
        edges = [(u, v) for u in range(n - 1) for v in range(u + 1, n)]
    elif family == "tree":
        edges = [(rng.below(i), i) for i in range(1, n)]
    else:  # gnp
        if not 0.0 < edge_p <= 1.0:
            raise ValueError("edge_p must be in (0, 1]")
        edges = None
        for _ in range(1000):
            edges = _gnp_edges(rng, n, edge_p)
            if edges is not None:
                break
        if edges is None:
            raise ValueError("gnp resampling failed to avoid isolated nodes")

    degree = [0] * n
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1

    if threshold_policy == "all_one":
        thresholds = [1] * n
    elif threshold_policy == "all_max":
        thresholds = [degree[v] for v in range(n)]
    elif threshold_policy == "uniform":
        thresholds = [1 + rng.below(degree[v]) for v in range(n)]
    else:  # two_mix
        thresholds = [
            2 if degree[v] >= 2 and rng.bernoulli(policy_p) else 1 for v in range(n)
        ]

    inst = make_instance(n, edges, thresholds, lam)
    problems = validate(inst)
    if problems:
        raise AssertionError(f"generated instance fails validation: {problems}")
    return inst
