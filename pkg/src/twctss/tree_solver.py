"""Exact polynomial-time solver for trees.

Dynamic program over (node, variant, round) with two tables per node:

* full table F(v, j): minimum cost of a set inside v's subtree that
  influences the whole subtree and v at exactly round j, with no help
  from outside the subtree.  For j >= 1 this means at least t(v)
  children active in the window ending at j and never t(v) of them in
  any earlier window - a scheduling subproblem over the children whose
  constraint matrix is totally unimodular (interval rows), solved
  exactly by window_assignment_min.

* assisted table A(v, q): minimum cost of a set inside v's subtree
  that influences the whole subtree when v's parent is active during
  rounds q+1..q+lam, with v not influenced before round q+1.  While
  the parent is active v's effective threshold drops by one, so the
  not-influenced-earlier bars step down from t(v)-1 to t(v)-2 inside
  the parent's window; the round at which v actually crosses the bar
  is swept explicitly.

A child seen from its parent (influenced at round r) either occupies a
counted slot j <= r-1 (cost F(child, j), subject to the window
constraints), or is "free": influenced at the same round r (F(child, r),
no interaction either way) or strictly later with the parent's help
(A(child, r)).  The answer is min over rounds of the root's full table;
rounds are bounded by the tree diameter.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .diffusion import simulate
from .errors import ShapeMismatchError
from .instance import Instance, is_tree_graph
from .result import SolveResult

INF = float("inf")

FULL = "full"
ASSIST = "reduced"      # tag kept as "reduced" in dumps: the parent-assisted variant


@dataclass
class TreeTables:
    root: int
    order: list[int]                  # BFS order from the root
    parent: list[int]
    children: list[list[int]]
    diam: int
    sig_full: list[list[float]]       # F(v, j), INF marks infeasible
    sig_red: list[list[float]]        # A(v, q); unused row for the root
    choices: dict = field(default_factory=dict)
    # choices[(v, variant, r)] = list of (child, variant, index)


@dataclass
class AssignmentProblem:
    """Child-scheduling subproblem for one table entry: at least t children
    active (i.e. in full slots within the window max(0, r-lam)..r-1), and
    at most bars[l] of them in the window ending at any earlier round l.
    bars=None means the uniform t-1 bars of the full-variant entries."""

    t: int
    r: int
    lam: int
    diam: int
    full_costs: list[list[float]]
    reduced_costs: list[list[float]]   # assisted rows A(w, .)
    bars: list[int] | None = None      # bars[l] for l = 1..r-1, else t-1


def _bfs(adjacency, root, n):
    order = [root]
    parent = [-1] * n
    parent[root] = root
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if parent[w] == -1:
                parent[w] = u
                order.append(w)
                queue.append(w)
    parent[root] = -1
    return order, parent


def _farthest(adjacency, src, n):
    dist = [-1] * n
    dist[src] = 0
    queue = deque([src])
    far, fdist = src, 0
    while queue:
        u = queue.popleft()
        for w in adjacency[u]:
            if dist[w] == -1:
                dist[w] = dist[u] + 1
                if dist[w] > fdist:
                    far, fdist = w, dist[w]
                queue.append(w)
    return far, fdist


def tree_diameter(adjacency, n) -> int:
    """Longest path length in edges, by double BFS."""
    u, _ = _farthest(adjacency, 0, n)
    _, d = _farthest(adjacency, u, n)
    return d


def best_free_child_cost(w_tables, r: int, lam: int, diam: int) -> float:
    """Cheapest way to settle child w when its parent is influenced at round
    r and w is not needed to activate the parent: influenced on its own no
    earlier than round r-1, or with the parent's help after round r."""
    full_row, assist_row = w_tables
    best = assist_row[r] if r <= diam else INF
    for j in range(max(0, r - 1), diam + 1):
        if full_row[j] < best:
            best = full_row[j]
    return best


def _free_pick(full_row, assist_row, r, diam, include_rm1):
    """(cost, (variant, index)) for the free option.

    Scan order encodes the tie-break: self-contained rounds r-1/r first
    (their recorded round is exact under the combined dynamics), then the
    parent-assisted option, then later self-contained rounds - on real
    tables the assisted value dominates those, so they only matter for
    arbitrary cost tables."""
    best, pick = INF, None
    lo = max(0, r - 1) if include_rm1 else r
    for j in range(lo, min(r, diam) + 1):
        if full_row[j] < best:
            best, pick = full_row[j], (FULL, j)
    if r <= diam and assist_row[r] < best:
        best, pick = assist_row[r], (ASSIST, r)
    for j in range(r + 1, diam + 1):
        if full_row[j] < best:
            best, pick = full_row[j], (FULL, j)
    return best, pick


def window_assignment_min(problem: AssignmentProblem, method: str = "auto"):
    """Exact integral optimum of the child-scheduling subproblem.

    Returns (cost, assignments) with assignments[i] = (variant, index) for
    child i: ("full", j) for a counted slot j < r or the same-round free
    option, ("reduced", r) for the parent-assisted free option.  Infeasible
    problems yield (inf, None).
    """
    t, r, lam, diam = problem.t, problem.r, problem.lam, problem.diam
    if r < 1 or t < 1:
        raise ValueError("window_assignment_min requires t >= 1 and r >= 1")
    m = len(problem.full_costs)
    if t > m:
        return INF, None
    bars = problem.bars
    if bars is None:
        bars = [t - 1] * r          # bars[l] index l-1, for l = 1..r-1

    frees = []
    slots: list[list[tuple[float, int]]] = []   # per child: (cost, j), j < r
    lb_lo = max(0, r - lam)
    lb_capable = 0
    any_at_rminus1 = False
    for fr, ar in zip(problem.full_costs, problem.reduced_costs):
        frees.append(_free_pick(fr, ar, r, diam, include_rm1=False))
        opts = [(fr[j], j) for j in range(r) if fr[j] < INF]
        slots.append(opts)
        if any(lb_lo <= j <= r - 1 for _, j in opts):
            lb_capable += 1
        if fr[r - 1] < INF:
            any_at_rminus1 = True
        if frees[-1][0] == INF and not opts:
            return INF, None
    if lb_capable < t:
        return INF, None
    # slot r-1 is forced whenever the window ending at r-1 cannot already
    # hold t active children (always true for the uniform t-1 bars)
    if (r == 1 or t > bars[r - 2]) and not any_at_rminus1:
        return INF, None

    if method == "auto":
        if r == 1:
            method = "greedy1"
        else:
            est = 1
            for opts, (fc, _) in zip(slots, frees):
                est *= len(opts) + (1 if fc < INF else 0)
                if est > 4000:
                    break
            method = "dfs" if est <= 4000 else "lp"
    if method == "greedy1":
        return _assign_round_one(problem, slots, frees)
    if method == "dfs":
        return _assign_dfs(problem, slots, frees, bars)
    if method == "lp":
        return _assign_lp(problem, slots, frees, bars)
    raise ValueError(f"unknown assignment method {method!r}")


def _assign_round_one(problem, slots, frees):
    """r = 1: the only slot is round 0 and there are no earlier windows,
    so put the t cheapest-delta children at round 0."""
    t = problem.t
    total = 0
    assign = [None] * len(slots)
    deltas = []
    placed = 0
    for i, (opts, (fc, fpick)) in enumerate(zip(slots, frees)):
        c0 = opts[0][0] if opts else INF      # only slot j=0 can exist
        if fc == INF:
            if c0 == INF:
                return INF, None
            total += c0
            assign[i] = (FULL, 0)
            placed += 1
        elif c0 < fc:
            total += c0
            assign[i] = (FULL, 0)
            placed += 1
        else:
            total += fc
            assign[i] = fpick
            if c0 < INF:
                deltas.append((c0 - fc, i))
    if placed < t:
        deltas.sort()
        need = t - placed
        if need > len(deltas):
            return INF, None
        for delta, i in deltas[:need]:
            total += delta
            assign[i] = (FULL, 0)
    return total, assign


def _assign_dfs(problem, slots, frees, bars):
    """Complete depth-first search with window-violation, lower-bound and
    cost pruning.  Exact; used when the option space is small."""
    t, r, lam = problem.t, problem.r, problem.lam
    m = len(slots)
    options = []
    for opts, (fc, fpick) in zip(slots, frees):
        cand = [(c, ("slot", j)) for c, j in opts]
        if fc < INF:
            cand.append((fc, ("free", fpick)))
        cand.sort(key=lambda item: (item[0], item[1][0] == "slot",
                                    item[1][1] if item[1][0] == "slot" else -1))
        options.append(cand)

    lb_lo = max(0, r - lam)
    suffix_min = [0.0] * (m + 1)
    suffix_lb = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        suffix_min[i] = suffix_min[i + 1] + options[i][0][0]
        can_lb = any(
            kind == "slot" and lb_lo <= payload <= r - 1
            for _, (kind, payload) in options[i]
        )
        suffix_lb[i] = suffix_lb[i + 1] + (1 if can_lb else 0)

    wsum = [0] * (r + 1)          # window sums, index 1..r
    best = [INF, None]
    assign: list = [None] * m

    def place(j: int, delta: int) -> bool:
        ok = True
        hi = min(j + lam, r)
        for ell in range(j + 1, hi + 1):
            wsum[ell] += delta
            if delta > 0 and ell <= r - 1 and wsum[ell] > bars[ell - 1]:
                ok = False
        return ok

    def dfs(i: int, cost: float) -> None:
        if cost + suffix_min[i] >= best[0]:
            return
        if wsum[r] + suffix_lb[i] < t:
            return
        if i == m:
            if wsum[r] >= t:
                best[0] = cost
                best[1] = list(assign)
            return
        for c, (kind, payload) in options[i]:
            if kind == "slot":
                ok = place(payload, +1)
                if ok:
                    assign[i] = (FULL, payload)
                    dfs(i + 1, cost + c)
                place(payload, -1)
            else:
                assign[i] = payload
                dfs(i + 1, cost + c)
        assign[i] = None

    dfs(0, 0)
    return (best[0], best[1]) if best[1] is not None else (INF, None)


def _assign_lp(problem, slots, frees, bars):
    """LP route: the 0/1 program relaxed to [0,1] box constraints; the
    constraint matrix is an interval matrix, hence totally unimodular, so
    the dual-simplex vertex optimum is integral and read off directly."""
    import numpy as np
    from scipy.optimize import linprog

    t, r, lam = problem.t, problem.r, problem.lam
    m = len(slots)

    cols: list[float] = []
    col_child: list[int] = []
    col_slot: list[int] = []      # -1 for the free option
    col_pick: list = []
    for i, (opts, (fc, fpick)) in enumerate(zip(slots, frees)):
        for c, j in opts:
            cols.append(float(c))
            col_child.append(i)
            col_slot.append(j)
            col_pick.append((FULL, j))
        if fc < INF:
            cols.append(float(fc))
            col_child.append(i)
            col_slot.append(-1)
            col_pick.append(fpick)
    nvar = len(cols)

    a_eq = np.zeros((m, nvar))
    for k, i in enumerate(col_child):
        a_eq[i, k] = 1.0
    b_eq = np.ones(m)

    lb_lo = max(0, r - lam)
    a_ub = np.zeros((r, nvar))        # row 0: lower bound; rows l = 1..r-1
    b_ub = np.zeros(r)
    for k, j in enumerate(col_slot):
        if j < 0:
            continue
        if lb_lo <= j <= r - 1:
            a_ub[0, k] = -1.0
        for ell in range(j + 1, min(j + lam, r - 1) + 1):
            a_ub[ell, k] = 1.0
    b_ub[0] = -float(t)
    for ell in range(1, r):
        b_ub[ell] = float(bars[ell - 1])

    res = linprog(
        np.array(cols),
        A_ub=a_ub,
        b_ub=b_ub,
        A_eq=a_eq,
        b_eq=b_eq,
        bounds=(0.0, 1.0),
        method="highs-ds",
    )
    if res.status == 2:
        return INF, None
    if res.status != 0:
        raise RuntimeError(f"assignment LP failed with status {res.status}")
    x = res.x
    rounded = np.rint(x)
    if np.max(np.abs(x - rounded)) > 1e-6:
        raise RuntimeError("assignment LP returned a non-integral vertex")
    value = float(res.fun)
    if abs(value - round(value)) > 1e-6:
        raise RuntimeError("assignment LP value is not integral")
    assign: list = [None] * m
    for k, xi in enumerate(rounded):
        if xi > 0.5:
            if assign[col_child[k]] is not None:
                raise RuntimeError("assignment LP chose two options for one child")
            assign[col_child[k]] = col_pick[k]
    if any(a is None for a in assign):
        raise RuntimeError("assignment LP left a child unassigned")
    return int(round(value)), assign


def tree_sigma_tables(
    inst: Instance, root: int = 0, assign_method: str = "auto"
) -> TreeTables:
    """Fill F(v, j) and A(v, q) for every node, bottom-up."""
    if not is_tree_graph(inst):
        raise ShapeMismatchError("tree_sigma_tables requires a tree instance")
    n = inst.n
    adj = inst.adjacency
    thr = inst.thresholds
    lam = inst.lam
    order, parent = _bfs(adj, root, n)
    children = [[w for w in adj[v] if w != parent[v]] for v in range(n)]
    H = tree_diameter(adj, n) if n > 1 else 0

    sig_full = [[INF] * (H + 1) for _ in range(n)]
    sig_red = [[INF] * (H + 1) for _ in range(n)]
    choices: dict = {}
    # suffix minima (value + smallest round) of each full row, and prefix
    # counts of finite full cells for O(1) feasibility checks
    suf_val: list[list[float] | None] = [None] * n
    suf_arg: list[list[int] | None] = [None] * n
    pre_fin: list[list[int] | None] = [None] * n

    def finish_node(v: int) -> None:
        row = sig_full[v]
        sv = [INF] * (H + 2)
        sa = [-1] * (H + 2)
        for j in range(H, -1, -1):
            if row[j] <= sv[j + 1]:
                sv[j], sa[j] = row[j], j
            else:
                sv[j], sa[j] = sv[j + 1], sa[j + 1]
        suf_val[v], suf_arg[v] = sv, sa
        pf = [0] * (H + 2)
        for j in range(H + 1):
            pf[j + 1] = pf[j] + (1 if row[j] < INF else 0)
        pre_fin[v] = pf

    for v in reversed(order):
        tv = thr[v]
        ch = children[v]
        if not ch:
            # leaf: only seeding influences it on its own; with an active
            # parent it follows one round later at no cost
            sig_full[v][0] = 1
            for q in range(H):
                sig_red[v][q] = 0
            finish_node(v)
            continue

        rows_f = [sig_full[w] for w in ch]
        rows_a = [sig_red[w] for w in ch]
        sufs_v = [suf_val[w] for w in ch]
        sufs_a = [suf_arg[w] for w in ch]
        pres = [pre_fin[w] for w in ch]
        nch = len(ch)
        # no child can occupy a slot past its last feasible round
        maxfin = max(
            max((j for j in range(H + 1) if rf[j] < INF), default=-1)
            for rf in rows_f
        )

        def free_picks(r: int, include_rm1: bool):
            return [
                _free_pick(rows_f[i], rows_a[i], r, H, include_rm1)
                for i in range(nch)
            ]

        def solve_entry(t_req: int, r: int, bars):
            """One scheduling subproblem; returns (cost, picks) or (INF, None)."""
            lb_lo = max(0, r - lam)
            capable = sum(1 for pf in pres if pf[r] - pf[lb_lo] > 0)
            if capable < t_req or t_req > nch:
                return INF, None
            prob = AssignmentProblem(t_req, r, lam, H, rows_f, rows_a, bars)
            cost, assign = window_assignment_min(prob, method=assign_method)
            if assign is None:
                return INF, None
            return cost, [(w, pick[0], pick[1]) for w, pick in zip(ch, assign)]

        # ---- full table ----
        total = 1
        picks = []
        for i, w in enumerate(ch):
            c, pick = _free_pick(rows_f[i], rows_a[i], 0, H, include_rm1=True)
            if c == INF:
                total = INF
                break
            total += c
            picks.append((w, pick[0], pick[1]))
        if total < INF:
            sig_full[v][0] = total
            choices[(v, FULL, 0)] = picks

        for r in range(1, H + 1):
            if tv == 1:
                mins = free_picks(r, include_rm1=True)
                cost, picks = _one_needed(ch, rows_f, mins, r)
                if cost < INF:
                    sig_full[v][r] = cost
                    choices[(v, FULL, r)] = picks
            else:
                cost, picks = solve_entry(tv, r, None)
                if picks is not None:
                    sig_full[v][r] = cost
                    choices[(v, FULL, r)] = picks

        # ---- assisted table (not needed for the root) ----
        if v != root:
            for q in range(H + 1):
                if tv == 1:
                    # parent tops up the threshold by itself at round q+1;
                    # children must stay quiet through round q
                    if q + 1 > H:
                        continue
                    total = 0
                    picks = []
                    for i, w in enumerate(ch):
                        cf = sufs_v[i][q]
                        ca = rows_a[i][q + 1] if q + 1 <= H else INF
                        if ca < cf:
                            c, pick = ca, (ASSIST, q + 1)
                        elif cf < INF:
                            c, pick = cf, (FULL, sufs_a[i][q])
                        else:
                            total = INF
                            break
                        total += c
                        picks.append((w, pick[0], pick[1]))
                    if total < INF:
                        sig_red[v][q] = total
                        choices[(v, ASSIST, q)] = picks
                else:
                    best_cost, best_picks = INF, None
                    # crossing inside the parent's window: bar drops by one.
                    # At ell = q+1 no child needs to sit at slot ell-1; for
                    # later ell one must, so rounds past every child's last
                    # feasible slot + 1 are dead.
                    hi_i = min(q + lam, H)
                    for ell in range(q + 1, hi_i + 1):
                        if ell > q + 1 and ell > maxfin + 1:
                            break
                        cost, picks = solve_entry(
                            tv - 1, ell,
                            [tv - 1 if l <= q else tv - 2 for l in range(1, ell)],
                        )
                        if cost < best_cost:
                            best_cost, best_picks = cost, picks
                    # crossing after the window closes again
                    for ell in range(q + lam + 1, min(H, maxfin + 1) + 1):
                        cost, picks = solve_entry(
                            tv, ell,
                            [tv - 1 if (l <= q or l > q + lam) else tv - 2
                             for l in range(1, ell)],
                        )
                        if cost < best_cost:
                            best_cost, best_picks = cost, picks
                    if best_picks is not None:
                        sig_red[v][q] = best_cost
                        choices[(v, ASSIST, q)] = best_picks
        finish_node(v)

    return TreeTables(root, order, parent, children, H,
                      sig_full, sig_red, choices)


def _one_needed(ch, rows_f, mins, r):
    """Threshold-1 node at round r >= 1: exactly one child must arrive at
    round r-1; the rest settle for their free option."""
    inf_count = sum(1 for c, _ in mins if c == INF)
    fin_sum = sum(c for c, _ in mins if c < INF)
    best_total, best_z = INF, -1
    for i in range(len(ch)):
        fz = rows_f[i][r - 1]
        if fz == INF:
            continue
        mc = mins[i][0]
        if inf_count - (1 if mc == INF else 0) > 0:
            continue
        tot = fin_sum - (mc if mc < INF else 0) + fz
        if tot < best_total:
            best_total, best_z = tot, i
    if best_total == INF:
        return INF, None
    picks = []
    for i, w in enumerate(ch):
        if i == best_z:
            picks.append((w, FULL, r - 1))
        else:
            picks.append((w, mins[i][1][0], mins[i][1][1]))
    return best_total, picks


def backtrack_entries(tables: TreeTables, r: int):
    """Seeds plus every (node, variant, round) table entry on the
    backtracking path for the root entry at round r."""
    seeds: list[int] = []
    entries: list[tuple[int, str, int]] = []
    stack = [(tables.root, FULL, r)]
    while stack:
        v, variant, rr = stack.pop()
        entries.append((v, variant, rr))
        if variant == FULL and rr == 0:
            seeds.append(v)
        for w, var_w, j_w in tables.choices.get((v, variant, rr), []):
            stack.append((w, var_w, j_w))
    return sorted(seeds), entries


def solve_tree_with_tables(inst: Instance, check: bool = False,
                           assign_method: str = "auto"):
    if not is_tree_graph(inst):
        raise ShapeMismatchError("solve_tree requires a tree-shaped instance")
    tables = tree_sigma_tables(inst, root=0, assign_method=assign_method)
    row = tables.sig_full[tables.root]
    best_r = min(range(tables.diam + 1), key=lambda r: (row[r], r))
    best = row[best_r]
    if best == INF:
        raise AssertionError("no feasible root entry on a valid tree instance")
    witness, entries = backtrack_entries(tables, best_r)
    if len(witness) != best:
        raise AssertionError("tree witness size disagrees with the table value")
    trace = simulate(inst, witness)
    if not trace.complete:
        raise AssertionError("tree witness failed to influence the whole tree")
    result = SolveResult(int(best), tuple(witness), trace.completion_round, "tree")
    return result, tables, entries


def solve_tree(inst: Instance, check: bool = False,
               assign_method: str = "auto") -> SolveResult:
    result, _, _ = solve_tree_with_tables(inst, check=check,
                                          assign_method=assign_method)
    return result
