"""Common result type returned by every solver."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SolveResult:
    """A minimum target set: its size, one optimal witness (sorted node ids),
    the round at which the witness completes the diffusion, and the tag of
    the solver that produced it."""

    size: int
    witness: tuple[int, ...]
    completion_round: int
    method: str
