import pathlib

import pytest

from twctss import make_instance

DATA = pathlib.Path(__file__).parent / "data"

# 15-node tree used throughout: a root (node 0) with three hanging chains,
# 1-2-3 / 4-..-9 / 10-..-14, thresholds 2 at {0, 2, 7, 10, 13}.
FIG1_EDGES = [
    (0, 1), (1, 2), (2, 3),
    (0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9),
    (0, 10), (10, 11), (11, 12), (12, 13), (13, 14),
]
FIG1_THRESHOLDS = [2, 1, 2, 1, 1, 1, 1, 2, 1, 1, 2, 1, 1, 2, 1]

# published round-by-round traces for the two windows
FIG1_TRACE_L1 = [
    {2, 5, 9, 13},
    {1, 3, 4, 6, 8, 12, 14},
    {0, 7, 11},
    {10},
]
FIG1_TRACE_L3 = [
    {2, 7, 13},
    {1, 3, 6, 8, 12, 14},
    {5, 9, 11},
    {4},
    {0},
    {10},
]

# 23-node path with threshold-2 nodes at 1, 2, 6, 15, 20 and window 2;
# pruning keeps nodes 1..20 (offset 1)
FIG3A_THRESHOLDS = [1, 2, 2, 1, 1, 1, 2, 1, 1, 1, 1, 1,
                    1, 1, 1, 2, 1, 1, 1, 1, 2, 1, 1]
FIG3B_THRESHOLDS = FIG3A_THRESHOLDS[1:21]

# expected suffix table on the pruned 20-node path
FIG3B_SIGMA = ([4] + [3] * 3 + [4] + [3] * 3 + [2] * 3 + [3] * 3
               + [2] * 5 + [1])


def fig1_tree(lam):
    return make_instance(15, FIG1_EDGES, FIG1_THRESHOLDS, lam)


def path_instance(thresholds, lam):
    n = len(thresholds)
    return make_instance(n, [(i, i + 1) for i in range(n - 1)], thresholds, lam)


def ring_instance(thresholds, lam):
    n = len(thresholds)
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return make_instance(n, edges, thresholds, lam)


@pytest.fixture
def fig3a():
    return path_instance(FIG3A_THRESHOLDS, 2)
