"""Deterministic simulation of the time-window influence process.

A node v outside the seed becomes influenced at round r as soon as at
least t(v) of its neighbors are *active* at r, where a node is active
for exactly `lam` rounds after the round in which it became influenced.
Two equivalent implementations are provided:

* :func:`simulate` tracks activation/expiry events incrementally
  (active-set formulation, O(E) amortized);
* :func:`simulate_bounded_memory` recomputes each round from the last
  `lam` influence layers only (bounded-memory formulation).

Both must produce identical traces on every input; the equivalence is
exercised by the test suite on randomized corpora.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .instance import Instance


@dataclass(frozen=True)
class DiffusionTrace:
    """Round-by-round newly-influenced sets; rounds[0] is the seed.

    Rounds after the first in which nothing new is influenced are not
    recorded (no later influence is possible once a round is empty,
    because new influence needs a neighbor that was newly influenced in
    the immediately preceding round).
    """

    n: int
    lam: int
    rounds: tuple[tuple[int, ...], ...]

    @property
    def seed(self) -> tuple[int, ...]:
        return self.rounds[0]

    @property
    def influenced_count(self) -> int:
        return sum(len(r) for r in self.rounds)

    @property
    def complete(self) -> bool:
        return self.influenced_count == self.n

    @property
    def completion_round(self) -> int | None:
        return len(self.rounds) - 1 if self.complete else None

    @cached_property
    def influenced_round(self) -> dict[int, int]:
        """Map node -> round at which it became influenced (absent = never)."""
        out: dict[int, int] = {}
        for r, batch in enumerate(self.rounds):
            for v in batch:
                out[v] = r
        return out

    def influenced_at(self, r: int) -> set[int]:
        """Influenced[r]: everyone influenced in rounds 0..r."""
        out: set[int] = set()
        for batch in self.rounds[: r + 1]:
            out.update(batch)
        return out

    def active_at(self, r: int) -> set[int]:
        """Active[r]: nodes influenced in rounds max(0, r-lam)..r-1."""
        if r < 1:
            return set()
        out: set[int] = set()
        lo = max(0, r - self.lam)
        for batch in self.rounds[lo:r]:
            out.update(batch)
        return out


def _clean_seed(inst: Instance, seed: Iterable[int]) -> list[int]:
    nodes = sorted(set(seed))
    for v in nodes:
        if not (0 <= v < inst.n):
            raise ValueError(f"seed node id {v} out of range 0..{inst.n - 1}")
    return nodes


def simulate(inst: Instance, seed: Iterable[int]) -> DiffusionTrace:
    """Run the active-set dynamics from the given seed until no new node is
    influenced (or everyone is).  Seed nodes count as influenced at round 0
    regardless of threshold."""
    n = inst.n
    adj = inst.adjacency
    thr = inst.thresholds
    lam = inst.lam
    start = _clean_seed(inst, seed)

    influenced = bytearray(n)
    for v in start:
        influenced[v] = 1
    counts = [0] * n
    rounds: list[tuple[int, ...]] = [tuple(start)]
    total = len(start)

    # Node newly influenced at round q is active during rounds q+1 .. q+lam:
    # its contribution is added when computing round q+1 and removed when
    # computing round q+lam+1.
    for r in range(1, n + 1):
        if total == n:
            break
        adds = rounds[r - 1] if r - 1 < len(rounds) else ()
        drop_idx = r - 1 - lam
        drops = rounds[drop_idx] if drop_idx >= 0 else ()
        dirty = set()
        for u in adds:
            for w in adj[u]:
                counts[w] += 1
                if not influenced[w]:
                    dirty.add(w)
        for u in drops:
            for w in adj[u]:
                counts[w] -= 1
        new = sorted(v for v in dirty if counts[v] >= thr[v])
        if not new:
            break
        for v in new:
            influenced[v] = 1
        total += len(new)
        rounds.append(tuple(new))

    return DiffusionTrace(n, lam, tuple(rounds))


def simulate_bounded_memory(inst: Instance, seed: Iterable[int]) -> DiffusionTrace:
    """Same process, computed from the influenced-set recurrences alone:
    the round-r joiners are the nodes with at least t(v) neighbors among
    those influenced during the last `lam` rounds."""
    n = inst.n
    adj = inst.adjacency
    thr = inst.thresholds
    lam = inst.lam
    start = _clean_seed(inst, seed)

    influenced = set(start)
    rounds: list[tuple[int, ...]] = [tuple(start)]

    for r in range(1, n + 1):
        if len(influenced) == n:
            break
        recent: set[int] = set()
        for batch in rounds[max(0, r - lam) : r]:
            recent.update(batch)
        new = sorted(
            v
            for v in range(n)
            if v not in influenced
            and sum(1 for w in adj[v] if w in recent) >= thr[v]
        )
        if not new:
            break
        influenced.update(new)
        rounds.append(tuple(new))

    return DiffusionTrace(n, lam, tuple(rounds))


def is_target_set(inst: Instance, seed: Iterable[int]) -> tuple[bool, int]:
    """Whether the seed eventually influences every node; also returns the
    number of nodes influenced."""
    trace = simulate(inst, seed)
    count = trace.influenced_count
    return count == inst.n, count


def trace_to_json_dict(trace: DiffusionTrace) -> dict:
    """CLI wire format for a trace (node lists sorted ascending)."""
    return {
        "seed": sorted(trace.seed),
        "rounds": [sorted(batch) for batch in trace.rounds],
        "complete": trace.complete,
        "completion_round": trace.completion_round,
    }
