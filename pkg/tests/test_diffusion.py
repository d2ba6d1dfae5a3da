import pytest

from twctss import generate, is_target_set, make_instance, simulate, simulate_bounded_memory
from twctss.generator import SplitMix64

from conftest import (
    FIG1_TRACE_L1,
    FIG1_TRACE_L3,
    FIG3B_THRESHOLDS,
    fig1_tree,
    path_instance,
    ring_instance,
)


def rounds_as_sets(trace):
    return [set(batch) for batch in trace.rounds]


def test_fig1_window_one_trace_matches_published_rounds():
    trace = simulate(fig1_tree(1), FIG1_TRACE_L1[0])
    assert rounds_as_sets(trace) == FIG1_TRACE_L1
    assert trace.complete and trace.completion_round == 3


def test_fig1_window_three_trace_matches_published_rounds():
    trace = simulate(fig1_tree(3), FIG1_TRACE_L3[0])
    assert rounds_as_sets(trace) == FIG1_TRACE_L3
    assert trace.complete and trace.completion_round == 5


def test_seed_everything_single_round():
    inst = path_instance([1, 2, 1], 1)
    trace = simulate(inst, [0, 1, 2])
    assert rounds_as_sets(trace) == [{0, 1, 2}]
    assert trace.completion_round == 0


def test_threshold_one_chain():
    trace = simulate(path_instance([1, 1, 1], 1), [0])
    assert rounds_as_sets(trace) == [{0}, {1}, {2}]


def test_four_cycle_symmetric_spread():
    trace = simulate_bounded_memory(ring_instance([1] * 4, 1), [0])
    assert rounds_as_sets(trace) == [{0}, {1, 3}, {2}]


def test_empty_seed():
    trace = simulate_bounded_memory(path_instance([1, 1], 1), [])
    assert rounds_as_sets(trace) == [set()]
    assert not trace.complete and trace.completion_round is None


def test_invalid_seed_rejected():
    with pytest.raises(ValueError, match="out of range"):
        simulate(path_instance([1, 1], 1), [5])


def test_formulations_agree_on_fig1():
    for lam, seed in ((1, FIG1_TRACE_L1[0]), (3, FIG1_TRACE_L3[0])):
        inst = fig1_tree(lam)
        assert simulate(inst, seed).rounds == simulate_bounded_memory(inst, seed).rounds


def test_formulations_agree_randomized():
    for seed in range(150):
        rng = SplitMix64(seed * 31 + 1)
        fam = ["path", "ring", "tree", "complete", "gnp"][seed % 5]
        n = 3 + rng.below(9)
        lam = [1, 2, 3, n][rng.below(4)]
        inst = generate(fam, n, "uniform", lam, seed, edge_p=0.5)
        seeds = sorted({rng.below(n) for _ in range(rng.below(n + 1))})
        a = simulate(inst, seeds)
        b = simulate_bounded_memory(inst, seeds)
        assert a.rounds == b.rounds


def test_influenced_monotone_and_rounds_disjoint():
    inst = fig1_tree(1)
    trace = simulate(inst, FIG1_TRACE_L1[0])
    seen = set()
    for batch in trace.rounds:
        assert not (set(batch) & seen)
        seen.update(batch)
    assert len(trace.rounds) <= inst.n + 1


def test_active_set_can_shrink():
    # all-threshold-1 path seeded at 0, 2, 4: three actives in round 1,
    # two in round 2 once the window lapses
    inst = path_instance([1] * 5, 1)
    trace = simulate(inst, [0, 2, 4])
    assert len(trace.active_at(1)) == 3
    assert len(trace.active_at(2)) == 2


def test_active_reconstruction_matches_definition():
    inst = fig1_tree(3)
    trace = simulate(inst, FIG1_TRACE_L3[0])
    for r in range(1, len(trace.rounds) + 2):
        expect = trace.influenced_at(r - 1) - trace.influenced_at(r - 1 - inst.lam)
        assert trace.active_at(r) == expect


def test_window_at_least_n_means_active_is_all_influenced():
    inst = generate("tree", 9, "uniform", 9, 5)
    trace = simulate(inst, [0, 3])
    for r in range(1, len(trace.rounds) + 1):
        assert trace.active_at(r) == trace.influenced_at(r - 1)


def test_stalled_process_stays_stalled():
    # once a round adds nobody, running the recurrence lam more rounds
    # adds nobody either
    for seed in range(40):
        rng = SplitMix64(seed + 77)
        n = 4 + rng.below(8)
        inst = generate("gnp", n, "uniform", 1 + rng.below(3), seed, edge_p=0.35)
        seeds = sorted({rng.below(n) for _ in range(1 + rng.below(2))})
        trace = simulate(inst, seeds)
        if trace.complete:
            continue
        influenced = trace.influenced_at(len(trace.rounds) + inst.lam)
        stop = len(trace.rounds)
        for extra in range(1, inst.lam + 1):
            r = stop + extra
            active = trace.active_at(r)
            joiners = {
                v for v in range(n)
                if v not in influenced
                and sum(1 for w in inst.adjacency[v] if w in active) >= inst.thresholds[v]
            }
            assert joiners == set()


def test_influenced_round_map():
    trace = simulate(fig1_tree(1), FIG1_TRACE_L1[0])
    assert trace.influenced_round[2] == 0
    assert trace.influenced_round[0] == 2
    assert trace.influenced_round[10] == 3


def test_is_target_set_examples():
    pruned = path_instance(FIG3B_THRESHOLDS, 2)
    assert is_target_set(pruned, [0, 3, 8, 19]) == (True, 20)
    inst = path_instance([1, 2, 1], 1)
    assert is_target_set(inst, []) == (False, 0)
    assert is_target_set(inst, [0, 1, 2]) == (True, 3)


def test_deep_chain_needs_n_minus_one_rounds():
    n = 40
    inst = path_instance([1] * n, 2)
    trace = simulate(inst, [0])
    assert trace.completion_round == n - 1
