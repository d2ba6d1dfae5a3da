"""Problem instances: graph + thresholds + window size, with validation,
shape classification and the on-disk text/JSON formats.

Text format (UTF-8, '#' starts a comment anywhere on a line):

    twctss 1
    n <N>
    lambda <L>
    thresholds <t0> <t1> ... <t(N-1)>
    edges <M>
    <u> <v>          (M lines, 0 <= u < v < N)

The JSON mirror is an object with keys version, n, lambda, thresholds
(array of N ints) and edges (array of [u, v] pairs).  Both forms are
accepted by :func:`parse_instance`; :func:`serialize_instance` always
emits the text form, byte-deterministically.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from .errors import ParseError

PATH = "Path"
RING = "Ring"
TREE = "Tree"
COMPLETE = "Complete"
GENERAL = "General"


@dataclass(frozen=True)
class Instance:
    """Undirected simple graph with per-node thresholds and a window size.

    Node ids are dense 0..n-1.  Immutable after construction; safe to share
    across concurrent solver runs.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    thresholds: tuple[int, ...]
    lam: int

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        """All edges as sorted (u, v) pairs with u < v."""
        out = []
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def with_lambda(self, lam: int) -> "Instance":
        return Instance(self.n, self.adjacency, self.thresholds, lam)


def make_instance(n: int, edges, thresholds, lam: int) -> Instance:
    """Build an Instance from an edge list.  No validation beyond id bounds;
    use validate() to check the model invariants."""
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"node id out of range in edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adjacency = tuple(tuple(sorted(s)) for s in nbrs)
    return Instance(n, adjacency, tuple(thresholds), lam)


def validate(inst: Instance) -> list[str]:
    """Check the instance invariants.  Returns a list of human-readable
    violations; an empty list means the instance is valid."""
    bad: list[str] = []
    n = inst.n
    if n < 1:
        bad.append(f"n must be >= 1 (got {n})")
        return bad
    if inst.lam < 1:
        bad.append(f"lambda must be >= 1 (got {inst.lam})")
    if len(inst.adjacency) != n:
        bad.append(f"adjacency has {len(inst.adjacency)} rows, expected {n}")
        return bad
    if len(inst.thresholds) != n:
        bad.append(f"{len(inst.thresholds)} thresholds given, expected {n}")
        return bad
    for u, nbrs in enumerate(inst.adjacency):
        prev = -1
        for v in nbrs:
            if not (0 <= v < n):
                bad.append(f"edge ({u}, {v}): node id {v} out of range")
                continue
            if v == u:
                bad.append(f"self-loop at node {u}")
            if v == prev:
                bad.append(f"duplicate edge ({u}, {v})")
            if u not in inst.adjacency[v]:
                bad.append(f"edge ({u}, {v}) missing its reverse direction")
            prev = v
        if list(nbrs) != sorted(set(nbrs)):
            bad.append(f"adjacency of node {u} is not sorted/unique")
    for v in range(n):
        t = inst.thresholds[v]
        deg = inst.degree(v)
        if t < 1:
            bad.append(f"t({v})={t} < 1")
        elif t > deg:
            bad.append(f"t({v})={t} > deg({v})={deg}")
    return bad


@dataclass(frozen=True)
class Shape:
    """Most specific graph shape, plus a canonical node order for
    Path (endpoint to endpoint) and Ring (cyclic, starting at node 0)."""

    kind: str
    order: tuple[int, ...] | None = None


def _connected(inst: Instance) -> bool:
    if inst.n == 0:
        return True
    seen = bytearray(inst.n)
    seen[0] = 1
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in inst.adjacency[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                queue.append(v)
    return count == inst.n


def is_complete_graph(inst: Instance) -> bool:
    return all(len(nbrs) == inst.n - 1 for nbrs in inst.adjacency)


def try_path_order(inst: Instance) -> list[int] | None:
    """Endpoint-to-endpoint node order (from the smaller-id endpoint), or
    None when the graph is not a path.  Single pass: the degree profile is
    checked first, then one walk doubles as the connectivity check."""
    n = inst.n
    if n < 2:
        return None
    adj = inst.adjacency
    ones = 0
    twos = 0
    start = n
    for v in range(n):
        d = len(adj[v])
        if d == 1:
            ones += 1
            if v < start:
                start = v
        elif d == 2:
            twos += 1
    if ones != 2 or ones + twos != n:
        return None
    order = [0] * n
    order[0] = start
    prev, cur = -1, start
    for idx in range(1, n):
        row = adj[cur]
        if len(row) == 1:
            nxt = row[0]
        else:
            a, b = row
            nxt = b if a == prev else a
        if nxt == prev:            # hit the far endpoint early: disconnected
            return None
        order[idx] = nxt
        prev, cur = cur, nxt
    return order


def try_ring_order(inst: Instance) -> list[int] | None:
    """Cyclic order starting at node 0 toward its smaller neighbor, or None
    when the graph is not a single cycle."""
    n = inst.n
    if n < 3:
        return None
    adj = inst.adjacency
    if any(len(row) != 2 for row in adj):
        return None
    order = [0] * n
    prev, cur = 0, min(adj[0])
    idx = 1
    while cur != 0:
        if idx == n:               # longer walk than n nodes: not one cycle
            return None
        order[idx] = cur
        idx += 1
        a, b = adj[cur]
        nxt = b if a == prev else a
        prev, cur = cur, nxt
    return order if idx == n else None


def is_path_graph(inst: Instance) -> bool:
    return try_path_order(inst) is not None


def is_ring_graph(inst: Instance) -> bool:
    return try_ring_order(inst) is not None


def is_tree_graph(inst: Instance) -> bool:
    return inst.edge_count() == inst.n - 1 and _connected(inst)


def path_order(inst: Instance) -> tuple[int, ...]:
    """Endpoint-to-endpoint order, starting from the smaller-id endpoint."""
    order = try_path_order(inst)
    if order is None:
        raise ValueError("not a path graph")
    return tuple(order)


def ring_order(inst: Instance) -> tuple[int, ...]:
    """Cyclic order starting at node 0, proceeding toward its smaller neighbor."""
    order = try_ring_order(inst)
    if order is None:
        raise ValueError("not a ring graph")
    return tuple(order)


def classify_shape(inst: Instance) -> Shape:
    """Most specific shape, tested in order Complete, Path, Ring, Tree.

    K3 therefore classifies as Complete rather than Ring, and a 2-node path
    as Complete; both solvers are exact so the precedence is a routing
    convention only.
    """
    if is_complete_graph(inst):
        return Shape(COMPLETE)
    order = try_path_order(inst)
    if order is not None:
        return Shape(PATH, tuple(order))
    order = try_ring_order(inst)
    if order is not None:
        return Shape(RING, tuple(order))
    if is_tree_graph(inst):
        return Shape(TREE)
    return Shape(GENERAL)


def parse_instance(text: str) -> Instance:
    """Parse the text format or its JSON mirror into an Instance.

    Raises ParseError with a line number for malformed text input.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def _parse_json(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("JSON instance must be an object")
    try:
        version = obj["version"]
        n = obj["n"]
        lam = obj["lambda"]
        thresholds = obj["thresholds"]
        edges = obj["edges"]
    except KeyError as exc:
        raise ParseError(f"JSON instance missing key {exc}") from exc
    if version != 1:
        raise ParseError(f"unsupported version {version!r}")
    if not isinstance(n, int) or n < 0:
        raise ParseError(f"bad n: {n!r}")
    if len(thresholds) != n:
        raise ParseError(f"{len(thresholds)} thresholds given, expected {n}")
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise ParseError(f"bad edge {e!r}")
        u, v = e
        _check_edge(u, v, n, seen, where="edge list")
    return make_instance(n, [tuple(e) for e in edges], thresholds, lam)


def _check_edge(u, v, n, seen, where):
    if not isinstance(u, int) or not isinstance(v, int):
        raise ParseError(f"{where}: edge endpoints must be integers")
    if u >= v:
        raise ParseError(f"{where}: expected u < v, got ({u}, {v})")
    if v >= n or u < 0:
        raise ParseError(f"{where}: node id {max(u, v)} out of range")
    if (u, v) in seen:
        raise ParseError(f"{where}: duplicate edge ({u}, {v})")
    seen.add((u, v))


def _parse_text(text: str) -> Instance:
    # (line number, payload) with comments and blanks removed
    lines: list[tuple[int, str]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        payload = raw.split("#", 1)[0].strip()
        if payload:
            lines.append((ln, payload))
    pos = 0

    def take(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file: expected {what}")
        item = lines[pos]
        pos += 1
        return item

    ln, magic = take("header 'twctss 1'")
    if magic.split() != ["twctss", "1"]:
        raise ParseError(f"line {ln}: expected header 'twctss 1', got {magic!r}")

    def keyed_ints(key: str, count: int | None) -> list[int]:
        ln, payload = take(f"'{key} ...' line")
        parts = payload.split()
        if not parts or parts[0] != key:
            raise ParseError(f"line {ln}: expected '{key} ...', got {payload!r}")
        try:
            values = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParseError(f"line {ln}: non-integer value in '{key}' line") from None
        if count is not None and len(values) != count:
            raise ParseError(
                f"line {ln}: expected {count} values after '{key}', got {len(values)}"
            )
        return values

    n = keyed_ints("n", 1)[0]
    if n < 0:
        raise ParseError("n must be non-negative")
    lam = keyed_ints("lambda", 1)[0]
    thresholds = keyed_ints("thresholds", n)
    m = keyed_ints("edges", 1)[0]

    edges = []
    seen: set[tuple[int, int]] = set()
    for _ in range(m):
        ln, payload = take("edge line 'u v'")
        parts = payload.split()
        if len(parts) != 2:
            raise ParseError(f"line {ln}: expected 'u v', got {payload!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {ln}: non-integer edge endpoint") from None
        try:
            _check_edge(u, v, n, seen, where=f"line {ln}")
        except ParseError:
            raise
        edges.append((u, v))
    if pos != len(lines):
        ln, payload = lines[pos]
        raise ParseError(f"line {ln}: unexpected trailing content {payload!r}")
    return make_instance(n, edges, thresholds, lam)


def serialize_instance(inst: Instance) -> str:
    """Canonical text serialization; byte-deterministic for a given instance."""
    edges = inst.edges()
    out = [
        "twctss 1",
        f"n {inst.n}",
        f"lambda {inst.lam}",
        "thresholds " + " ".join(str(t) for t in inst.thresholds),
        f"edges {len(edges)}",
    ]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"
