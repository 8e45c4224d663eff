"""Port-labeled anonymous graphs, orientation certificates and 1-ball views.

Nodes are the integers ``0..n-1``.  Every node numbers its incident edges
with ports ``0..deg(v)-1``; ports are handed out in edge-insertion order.
An orientation certificate gives each node one bit per port: bit ``i`` is
``1`` when the edge at port ``i`` leaves the node and ``0`` when it enters.
An edge is directed exactly when its two endpoint bits differ.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from localcert.errors import (
    ConflictingEdge,
    Disconnected,
    DuplicateEdge,
    IndexOutOfRange,
    MalformedCertificate,
    NotAnEdge,
    SelfLoop,
)

Bits = tuple[int, ...]
#: One bit tuple per node; ``certs[v][i]`` governs the edge at port ``i`` of ``v``.
OrientationCertificate = tuple[Bits, ...]


@dataclass(frozen=True)
class Graph:
    """Undirected, connected, port-labeled graph.

    ``adjacency[v][p]`` is the neighbor reached through port ``p`` of ``v``.
    Build instances with :func:`build_graph`; the constructor does not
    validate.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]
    _ports: dict[tuple[int, int], int] = field(repr=False, compare=False, hash=False)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._ports

    def port(self, u: int, v: int) -> int:
        """Port of ``u`` whose edge leads to ``v``."""
        try:
            return self._ports[(u, v)]
        except KeyError:
            raise NotAnEdge(f"({u}, {v}) is not an edge") from None

    @property
    def m(self) -> int:
        return len(self.edges)

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return frozenset(self.adjacency[v]) | {v}

    def neighbor_masks(self) -> list[int]:
        """Open neighborhoods as integer bitmasks."""
        masks = []
        for nbrs in self.adjacency:
            mask = 0
            for u in nbrs:
                mask |= 1 << u
            masks.append(mask)
        return masks

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexOutOfRange(f"node {v} not in 0..{self.n - 1}")


def build_graph(edges: Iterable[Sequence[int]], n: Optional[int] = None) -> Graph:
    """Build a graph from an edge list, numbering ports in insertion order.

    ``n`` defaults to one more than the largest endpoint (or 1 for an empty
    edge list).  Raises on self-loops, duplicate edges, out-of-range
    endpoints and disconnected results.
    """
    edge_list = [(int(e[0]), int(e[1])) for e in edges]
    if n is None:
        n = 1 + max((max(e) for e in edge_list), default=0)
    if n <= 0:
        raise IndexOutOfRange("a graph needs at least one node")
    adjacency: list[list[int]] = [[] for _ in range(n)]
    ports: dict[tuple[int, int], int] = {}
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) references a node outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at node {u}")
        if (u, v) in ports:
            raise DuplicateEdge(f"edge ({u}, {v}) listed twice")
        ports[(u, v)] = len(adjacency[u])
        ports[(v, u)] = len(adjacency[v])
        adjacency[u].append(v)
        adjacency[v].append(u)

    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in adjacency[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    if len(seen) != n:
        missing = min(set(range(n)) - seen)
        raise Disconnected(f"node {missing} is unreachable from node 0")

    return Graph(n, tuple(tuple(a) for a in adjacency), tuple(edge_list), ports)


class EdgeStatus(enum.Enum):
    """Decoded direction of an edge ``(first, second)``."""

    OUT_OF_FIRST = "out_of_first"
    OUT_OF_SECOND = "out_of_second"
    CONFLICT_BOTH_OUT = "conflict_both_out"
    CONFLICT_BOTH_IN = "conflict_both_in"

    @property
    def is_conflict(self) -> bool:
        return self in (EdgeStatus.CONFLICT_BOTH_OUT, EdgeStatus.CONFLICT_BOTH_IN)


def decode_bits(bit_first: int, bit_second: int) -> EdgeStatus:
    if bit_first == bit_second:
        return EdgeStatus.CONFLICT_BOTH_OUT if bit_first else EdgeStatus.CONFLICT_BOTH_IN
    return EdgeStatus.OUT_OF_FIRST if bit_first else EdgeStatus.OUT_OF_SECOND


def _bit(certs: Sequence[Sequence[int]], node: int, port: int) -> int:
    cert = certs[node]
    if cert is None or port >= len(cert):
        raise MalformedCertificate(f"node {node} has no bit for port {port}")
    return cert[port]


def validate_certs(graph: Graph, certs: Sequence[Sequence[int]]) -> OrientationCertificate:
    """Check lengths and bit values; return the certificate as nested tuples."""
    if len(certs) != graph.n:
        raise MalformedCertificate(f"expected {graph.n} certificates, got {len(certs)}")
    out = []
    for v, cert in enumerate(certs):
        bits = tuple(int(b) for b in cert)
        if len(bits) != graph.degree(v):
            raise MalformedCertificate(
                f"node {v} has degree {graph.degree(v)} but a certificate of length {len(bits)}"
            )
        if any(b not in (0, 1) for b in bits):
            raise MalformedCertificate(f"node {v} certificate is not a bitstring")
        out.append(bits)
    return tuple(out)


def edge_status(graph: Graph, certs: Sequence[Sequence[int]], u: int, v: int) -> EdgeStatus:
    """Decode edge ``(u, v)`` from ``u``'s bit toward ``v`` and ``v``'s bit toward ``u``."""
    graph._check_node(u)
    graph._check_node(v)
    return decode_bits(_bit(certs, u, graph.port(u, v)), _bit(certs, v, graph.port(v, u)))


def out_neighbors(graph: Graph, certs: Sequence[Sequence[int]], v: int) -> frozenset[int]:
    """Nodes ``w`` with ``v -> w``; raises :class:`ConflictingEdge` on undirected edges."""
    graph._check_node(v)
    out = set()
    for w in graph.neighbors(v):
        status = edge_status(graph, certs, v, w)
        if status.is_conflict:
            raise ConflictingEdge(v, w)
        if status is EdgeStatus.OUT_OF_FIRST:
            out.add(w)
    return frozenset(out)


def in_neighbors(graph: Graph, certs: Sequence[Sequence[int]], v: int) -> frozenset[int]:
    return frozenset(graph.neighbors(v)) - out_neighbors(graph, certs, v)


def certs_from_arcs(graph: Graph, arcs: Iterable[tuple[int, int]]) -> OrientationCertificate:
    """Encode a set of arcs ``(tail, head)``, one per edge, as bit certificates."""
    bits = [[None] * graph.degree(v) for v in range(graph.n)]
    for tail, head in arcs:
        bits[tail][graph.port(tail, head)] = 1
        bits[head][graph.port(head, tail)] = 0
    for v, row in enumerate(bits):
        if None in row:
            w = graph.neighbors(v)[row.index(None)]
            raise NotAnEdge(f"edge ({v}, {w}) received no direction")
    return tuple(tuple(row) for row in bits)


def arcs_from_certs(graph: Graph, certs: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Decode every edge into an arc, in edge-list order."""
    arcs = []
    for u, v in graph.edges:
        status = edge_status(graph, certs, u, v)
        if status.is_conflict:
            raise ConflictingEdge(u, v)
        arcs.append((u, v) if status is EdgeStatus.OUT_OF_FIRST else (v, u))
    return arcs


def certs_from_dirmask(graph: Graph, mask: int) -> OrientationCertificate:
    """Bit ``e`` of ``mask`` set means ``edges[e]`` points from its first to its second endpoint."""
    arcs = []
    for e, (u, v) in enumerate(graph.edges):
        arcs.append((u, v) if (mask >> e) & 1 else (v, u))
    return certs_from_arcs(graph, arcs)


@dataclass(frozen=True)
class View:
    """What a node can read: its 1-ball with ports, certificates and labels.

    Local ids: the center is ``0`` and the neighbor behind the center's port
    ``p`` is ``p + 1``.  ``ports[a]`` lists ``(b, port)`` for every ball edge
    at ``a``, sorted by port, where ``port`` is ``a``'s own port toward ``b``.
    Edges between two neighbors are included.
    """

    ports: tuple[tuple[tuple[int, int], ...], ...]
    certs: tuple[Any, ...]
    labels: Optional[tuple[Any, ...]] = None

    @property
    def size(self) -> int:
        return len(self.ports)

    @property
    def degree(self) -> int:
        return len(self.ports[0])

    def neighbors(self, a: int) -> tuple[int, ...]:
        return tuple(b for b, _ in self.ports[a])

    def port(self, a: int, b: int) -> Optional[int]:
        for c, p in self.ports[a]:
            if c == b:
                return p
        return None

    def adjacent(self, a: int, b: int) -> bool:
        return self.port(a, b) is not None

    def status(self, a: int, b: int) -> EdgeStatus:
        pa, pb = self.port(a, b), self.port(b, a)
        if pa is None:
            raise NotAnEdge(f"local nodes {a} and {b} are not adjacent")
        return decode_bits(_bit(self.certs, a, pa), _bit(self.certs, b, pb))


def extract_view(
    graph: Graph,
    certs: Sequence[Any],
    v: int,
    labels: Optional[Sequence[Any]] = None,
) -> View:
    """Return the view of ``v``: the subgraph induced by ``N[v]`` and its data."""
    graph._check_node(v)
    members = (v,) + graph.neighbors(v)
    local = {g: i for i, g in enumerate(members)}
    ports = []
    for g in members:
        row = [(local[h], p) for p, h in enumerate(graph.neighbors(g)) if h in local]
        ports.append(tuple(row))

    def _freeze(x: Any) -> Any:
        return tuple(x) if isinstance(x, (list, tuple)) else x

    return View(
        ports=tuple(ports),
        certs=tuple(_freeze(certs[g]) for g in members),
        labels=None if labels is None else tuple(labels[g] for g in members),
    )
