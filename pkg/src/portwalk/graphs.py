"""Anonymous port-labeled graphs: data model, builders, validation, I/O.

A port-labeled graph is a connected simple undirected graph where every
node of degree d labels its incident edges 1..d. Node ids (0-based) exist
only for the harness; agents walking the graph never observe them.

The builders here produce the arenas the rest of the package runs on:
plain paths with chosen internal labelings, a clique with one pendant
hanging off each clique node, that same graph with one pendant replaced
by a path, and seeded random connected graphs.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from random import Random
from typing import Iterable, Sequence

from .errors import (
    GraphParseError,
    GraphSemanticError,
    InvalidPortError,
    InvalidSizeError,
    InvalidVertexError,
)


@dataclass(frozen=True)
class PortLabeledGraph:
    """Immutable port-labeled graph.

    port_map[v] is an ordered tuple of neighbor ids; the neighbor at index
    p-1 is reached by leaving v through port p. Degree of v is simply
    len(port_map[v]).
    """

    n: int
    port_map: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.port_map) // 2

    def degree(self, v: int) -> int:
        return len(self.port_map[v])

    def neighbor(self, v: int, port: int) -> int:
        """Node reached by leaving v through the given 1-based port."""
        row = self.port_map[v]
        if not 1 <= port <= len(row):
            raise InvalidPortError(f"node {v} has no port {port} (degree {len(row)})")
        return row[port - 1]

    def port_to(self, u: int, v: int) -> int:
        """Port at u whose edge leads to v (unique in a simple graph)."""
        try:
            return self.port_map[u].index(v) + 1
        except ValueError:
            raise InvalidVertexError(f"{v} is not a neighbor of {u}") from None


def _as_graph(n: int, rows: Iterable[Sequence[int]]) -> PortLabeledGraph:
    return PortLabeledGraph(n, tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class PathLabeling:
    """Port choices for the internal nodes of an n-node path.

    The path's nodes are v_1 .. v_n with v_1 the far (target) endpoint.
    toward_far[i-2] is the port label (1 or 2) that node v_i assigns to
    the arc pointing away from v_1, i.e. toward v_{i+1}, for each internal
    node v_i with 2 <= i <= n-1. Endpoints have a single forced port.
    """

    n: int
    toward_far: tuple[int, ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidSizeError(f"path needs at least 2 nodes, got {self.n}")
        object.__setattr__(self, "toward_far", tuple(self.toward_far))
        if len(self.toward_far) != self.n - 2:
            raise InvalidSizeError(
                f"labeling for {self.n} nodes needs {self.n - 2} entries, "
                f"got {len(self.toward_far)}"
            )
        for k, entry in enumerate(self.toward_far):
            if entry not in (1, 2):
                raise InvalidPortError(f"entry {k} is {entry}, must be 1 or 2")


def build_path(labeling: PathLabeling) -> PortLabeledGraph:
    """Build the path v_1 - v_2 - ... - v_n with the given internal labeling.

    Node v_k gets id k-1, so id 0 is the far endpoint v_1 and id n-1 is
    v_n. Endpoints have degree 1 with single port 1; internal node v_i
    routes port toward_far[i-2] to v_{i+1} and the other port to v_{i-1}.
    """
    n = labeling.n
    rows: list[list[int]] = [[] for _ in range(n)]
    rows[0] = [1]
    rows[n - 1] = [n - 2]
    for i in range(2, n):  # internal v_i, id i-1
        away = labeling.toward_far[i - 2]
        row = [0, 0]
        row[away - 1] = i      # toward v_{i+1}
        row[2 - away] = i - 2  # toward v_{i-1}
        rows[i - 1] = row
    return _as_graph(n, rows)


def build_clique_pendant(d: int, p: int) -> PortLabeledGraph:
    """Clique on d nodes with one pendant attached to each clique node.

    Clique nodes get ids 0..d-1 and all have degree d; the pendant of
    clique node k gets id d+k. At every clique node the port leading to
    its pendant is p; the remaining ports 1..d minus p go to the clique
    neighbors in increasing id order. Pendants have a single port 1.
    """
    if d < 2:
        raise InvalidSizeError(f"clique degree must be at least 2, got {d}")
    if not 1 <= p <= d:
        raise InvalidPortError(f"pendant port {p} outside 1..{d}")
    rows: list[list[int]] = []
    other_ports = [q for q in range(1, d + 1) if q != p]
    for k in range(d):
        row = [0] * d
        row[p - 1] = d + k
        neighbors = [j for j in range(d) if j != k]
        for port, nb in zip(other_ports, neighbors):
            row[port - 1] = nb
        rows.append(row)
    for k in range(d):
        rows.append([k])
    return _as_graph(2 * d, rows)


def replace_pendant_with_path(
    g1: PortLabeledGraph,
    v_star: int,
    path_labeling: PathLabeling,
    back_port: int = 2,
) -> PortLabeledGraph:
    """Swap the pendant of one clique node for a path.

    g1 must be a clique-with-pendants graph (see build_clique_pendant)
    and v_star one of its clique nodes. The pendant of v_star is removed
    and a path of path_labeling.n nodes is glued in its place: v_star's
    old pendant port now leads to the path endpoint adjacent to it
    (the entry endpoint), and the opposite endpoint of the path is the
    far target.

    Ids: clique nodes keep 0..d-1; surviving pendants shift down past the
    removed one; the path occupies the last path_labeling.n ids starting
    with the entry endpoint and ending with the far target. Within the
    path, internal labels come from path_labeling read with the far
    target in the v_1 role; the entry endpoint routes back_port to v_star
    and the other port into the path.
    """
    d = g1.n // 2
    if g1.n != 2 * d or d < 2:
        raise InvalidVertexError("graph is not a clique-with-pendants instance")
    if not 0 <= v_star < d or g1.degree(v_star) != d:
        raise InvalidVertexError(f"{v_star} is not a clique node")
    removed = d + v_star
    if g1.degree(removed) != 1 or g1.port_map[removed][0] != v_star:
        raise InvalidVertexError(f"{v_star} has no pendant to replace")
    length = path_labeling.n
    if length < d + 1:
        raise InvalidSizeError(
            f"replacement path needs at least {d + 1} nodes, got {length}"
        )
    if back_port not in (1, 2):
        raise InvalidPortError(f"back port must be 1 or 2, got {back_port}")

    def remap(x: int) -> int:
        return x if x < removed else x - 1

    entry = 2 * d - 1  # first path id; far target is entry + length - 1
    rows: list[list[int]] = []
    for v in range(g1.n):
        if v == removed:
            continue
        row = [remap(w) for w in g1.port_map[v]]
        if v == v_star:
            row[g1.port_to(v_star, removed) - 1] = entry
        rows.append(row)

    # Path ids run entry .. entry+length-1, from the glued endpoint to the
    # far target; the node in role v_i therefore has id entry + length - i.
    entry_row = [0, 0]
    entry_row[back_port - 1] = v_star
    entry_row[2 - back_port] = entry + 1
    rows.append(entry_row)
    for i in range(length - 1, 1, -1):  # internal v_i, descending role index
        away = path_labeling.toward_far[i - 2]
        row = [0, 0]
        vid = entry + length - i
        row[away - 1] = vid - 1  # toward v_{i+1}, i.e. toward the entry
        row[2 - away] = vid + 1  # toward v_{i-1}, i.e. toward the target
        rows.append(row)
    rows.append([entry + length - 2])  # far target, single port back inward
    return _as_graph(2 * d - 1 + length, rows)


def random_connected_graph(n: int, m: int, seed: int) -> PortLabeledGraph:
    """Seeded random connected simple graph with random port orders.

    A random spanning tree guarantees connectivity, then extra edges are
    drawn uniformly from the remaining non-edges; finally each node's
    neighbor ordering (its port assignment) is shuffled. Deterministic
    for a fixed (n, m, seed).
    """
    if n < 1:
        raise InvalidSizeError(f"need at least 1 node, got {n}")
    max_m = n * (n - 1) // 2
    if not n - 1 <= m <= max_m:
        raise InvalidSizeError(f"m={m} infeasible for n={n} (need {n - 1}..{max_m})")
    rng = Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges: set[tuple[int, int]] = set()
    for idx in range(1, n):
        a, b = order[idx], order[rng.randrange(idx)]
        edges.add((min(a, b), max(a, b)))
    while len(edges) < m:
        a, b = rng.randrange(n), rng.randrange(n)
        if a != b:
            edges.add((min(a, b), max(a, b)))
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in sorted(edges):
        adj[a].append(b)
        adj[b].append(a)
    for row in adj:
        rng.shuffle(row)
    return _as_graph(n, adj)


def relabel(g: PortLabeledGraph, perm: Sequence[int]) -> PortLabeledGraph:
    """Apply a node-id permutation; perm[v] is v's new id. Ports move along."""
    if sorted(perm) != list(range(g.n)):
        raise InvalidVertexError("perm is not a permutation of node ids")
    rows: list[tuple[int, ...]] = [()] * g.n
    for v in range(g.n):
        rows[perm[v]] = tuple(perm[w] for w in g.port_map[v])
    return PortLabeledGraph(g.n, tuple(rows))


def bfs_distances(g: PortLabeledGraph, start: int) -> list[int | None]:
    """Hop distances from start; None marks unreachable nodes."""
    dist: list[int | None] = [None] * g.n
    dist[start] = 0
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.port_map[v]:
            if dist[w] is None:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def diameter(g: PortLabeledGraph) -> int:
    """Exact diameter by breadth-first search from every node."""
    best = 0
    for v in range(g.n):
        dist = bfs_distances(g, v)
        for x in dist:
            if x is None:
                raise InvalidVertexError("graph is disconnected")
            if x > best:
                best = x
    return best


def validate(g: PortLabeledGraph) -> list[str]:
    """Check every structural invariant; return [] when the graph is sound.

    Violations are returned as human-readable strings naming the node or
    edge and the invariant broken; they are data, not exceptions.
    """
    out: list[str] = []
    if g.n < 1:
        return [f"node count {g.n} is not positive"]
    if len(g.port_map) != g.n:
        return [f"port_map has {len(g.port_map)} rows for {g.n} nodes"]
    for v, row in enumerate(g.port_map):
        seen: set[int] = set()
        for p, w in enumerate(row, start=1):
            if not isinstance(w, int) or not 0 <= w < g.n:
                out.append(f"node {v} port {p}: neighbor {w} out of range")
                continue
            if w == v:
                out.append(f"node {v} port {p}: self-loop")
                continue
            if w in seen:
                out.append(f"node {v}: neighbor {w} listed twice (parallel edge)")
            seen.add(w)
    if out:
        return out
    for v, row in enumerate(g.port_map):
        for w in row:
            if g.port_map[w].count(v) != 1:
                out.append(f"edge {v}-{w}: {w} lists {v} "
                           f"{g.port_map[w].count(v)} times (asymmetry)")
    if out:
        return out
    if g.n > 0 and any(x is None for x in bfs_distances(g, 0)):
        out.append("graph is disconnected")
    return out


def serialize(g: PortLabeledGraph) -> str:
    """Graph document: {"n": ..., "ports": [[neighbors in port order], ...]}."""
    doc = {"n": g.n, "ports": [list(row) for row in g.port_map]}
    return json.dumps(doc, separators=(",", ":")) + "\n"


def _reject_duplicate_keys(pairs):
    keys = [k for k, _ in pairs]
    for k in keys:
        if keys.count(k) > 1:
            raise GraphParseError(f"duplicate field '{k}'")
    return dict(pairs)


def deserialize(text: str) -> PortLabeledGraph:
    """Parse a graph document and validate it.

    Malformed text raises GraphParseError with a location or field name;
    a well-formed document describing a broken graph raises
    GraphSemanticError listing the violations.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as e:
        raise GraphParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise GraphParseError("top level is not an object")
    missing = {"n", "ports"} - set(doc)
    if missing:
        raise GraphParseError(f"missing field '{sorted(missing)[0]}'")
    extra = set(doc) - {"n", "ports"}
    if extra:
        raise GraphParseError(f"unknown field '{sorted(extra)[0]}'")
    n = doc["n"]
    ports = doc["ports"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise GraphParseError("field 'n' must be an integer")
    if not isinstance(ports, list) or not all(isinstance(r, list) for r in ports):
        raise GraphParseError("field 'ports' must be a list of lists")
    for v, row in enumerate(ports):
        for w in row:
            if not isinstance(w, int) or isinstance(w, bool):
                raise GraphParseError(f"field 'ports' row {v}: non-integer entry")
    if len(ports) != n:
        raise GraphSemanticError(f"'ports' has {len(ports)} rows for n={n}")
    g = _as_graph(n, ports)
    violations = validate(g)
    if violations:
        raise GraphSemanticError("; ".join(violations))
    return g
