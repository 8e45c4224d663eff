"""Leader-election certification schemes on trees, chordal and K4-free dismantlable graphs.

Each scheme certifies an edge orientation.  The local checkers only ever
see a :class:`~localcert.graph.View`; global helpers decode the
orientation to read off the elected leader (the unique sink).
"""

from __future__ import annotations

import enum
import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from localcert.classes import (
    EliminationOrdering,
    OrderingKind,
    find_dismantling_ordering,
    find_simplicial_ordering,
    is_k4_free,
    is_tree,
)
from localcert.errors import InvalidOrdering, MalformedCertificate, NotATree
from localcert.graph import (
    EdgeStatus,
    Graph,
    OrientationCertificate,
    View,
    arcs_from_certs,
    certs_from_arcs,
    extract_view,
    out_neighbors,
)


class SchemeId(enum.Enum):
    TREE = "tree"
    CHORDAL = "chordal"
    DISMANTLABLE = "dismantlable"
    SPANNING_TREE = "st"

    @property
    def is_orientation(self) -> bool:
        return self is not SchemeId.SPANNING_TREE

    @property
    def rules(self) -> tuple[str, ...]:
        return _RULES[self]


_RULES = {
    SchemeId.TREE: ("T1", "T2"),
    SchemeId.CHORDAL: ("C1", "C2", "C3"),
    SchemeId.DISMANTLABLE: ("D1", "D2", "D3"),
    SchemeId.SPANNING_TREE: ("N1", "N2"),
}


class K4Warning(UserWarning):
    """The graph has a K4, so the dismantlable scheme carries no soundness guarantee."""


@dataclass(frozen=True)
class LocalVerdict:
    violations: frozenset[str] = frozenset()

    @property
    def accepted(self) -> bool:
        return not self.violations

    def sorted_violations(self) -> list[str]:
        return sorted(self.violations)


@dataclass(frozen=True)
class GlobalVerdict:
    """``node`` is the lowest-index rejecting node, ``None`` on acceptance."""

    node: Optional[int] = None
    violations: frozenset[str] = frozenset()

    @property
    def accepted(self) -> bool:
        return self.node is None

    def to_json(self) -> dict[str, Any]:
        return {
            "accepted": self.accepted,
            "node": self.node,
            "violations": sorted(self.violations),
        }


def _split_center(view: View) -> tuple[bool, list[int], list[int]]:
    """Return (has conflict, outneighbors, inneighbors) of the center in local ids."""
    cert = view.certs[0]
    if cert is None or len(cert) != view.degree:
        raise MalformedCertificate(
            f"center certificate has length {0 if cert is None else len(cert)}, degree is {view.degree}"
        )
    conflict = False
    out, inc = [], []
    for b in view.neighbors(0):
        status = view.status(0, b)
        if status.is_conflict:
            conflict = True
        elif status is EdgeStatus.OUT_OF_FIRST:
            out.append(b)
        else:
            inc.append(b)
    return conflict, out, inc


def _in_directed_triangle(view: View, out: list[int], inc: list[int]) -> bool:
    # center -> a -> b -> center; a conflicting a-b edge never counts.
    for a in out:
        for b in inc:
            if view.adjacent(a, b) and view.status(a, b) is EdgeStatus.OUT_OF_FIRST:
                return True
    return False


def check_tree_local(view: View) -> LocalVerdict:
    conflict, out, _ = _split_center(view)
    bad = set()
    if conflict:
        bad.add("T1")
    if len(out) >= 2:
        bad.add("T2")
    return LocalVerdict(frozenset(bad))


def check_chordal_local(view: View) -> LocalVerdict:
    conflict, out, inc = _split_center(view)
    bad = set()
    if conflict:
        bad.add("C1")
    if any(not view.adjacent(a, b) for a, b in itertools.combinations(out, 2)):
        bad.add("C2")
    if _in_directed_triangle(view, out, inc):
        bad.add("C3")
    return LocalVerdict(frozenset(bad))


def check_dismantlable_local(view: View) -> LocalVerdict:
    conflict, out, inc = _split_center(view)
    bad = set()
    if conflict:
        bad.add("D1")
    if out and not any(all(x == w or view.adjacent(w, x) for x in out) for w in out):
        bad.add("D2")
    if _in_directed_triangle(view, out, inc):
        bad.add("D3")
    return LocalVerdict(frozenset(bad))


def local_checker(scheme: SchemeId) -> Callable[[View], LocalVerdict]:
    if scheme is SchemeId.SPANNING_TREE:
        from localcert.spanning import check_st_local

        return check_st_local
    return {
        SchemeId.TREE: check_tree_local,
        SchemeId.CHORDAL: check_chordal_local,
        SchemeId.DISMANTLABLE: check_dismantlable_local,
    }[scheme]


def verify_global(
    graph: Graph,
    certs: Sequence[Any],
    scheme: SchemeId,
    labels: Optional[Sequence[int]] = None,
) -> GlobalVerdict:
    """Run the scheme's local check at every node, reporting the first rejection."""
    check = local_checker(scheme)
    for v in range(graph.n):
        verdict = check(extract_view(graph, certs, v, labels))
        if not verdict.accepted:
            return GlobalVerdict(v, verdict.violations)
    return GlobalVerdict()


def sinks(graph: Graph, certs: Sequence[Sequence[int]]) -> frozenset[int]:
    """Nodes without outgoing edges: the ones mapped to the leader state."""
    return frozenset(v for v in range(graph.n) if not out_neighbors(graph, certs, v))


def is_acyclic(graph: Graph, certs: Sequence[Sequence[int]]) -> bool:
    """Kahn's algorithm over the decoded digraph."""
    indegree = [0] * graph.n
    succ: list[list[int]] = [[] for _ in range(graph.n)]
    for tail, head in arcs_from_certs(graph, certs):
        succ[tail].append(head)
        indegree[head] += 1
    queue = deque(v for v in range(graph.n) if indegree[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in succ[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                queue.append(w)
    return seen == graph.n


def construct_tree_cert(graph: Graph) -> OrientationCertificate:
    """Peel leaves in rounds, pointing each at its remaining neighbor.

    All leaves of the current tree are peeled together, so the sink is a
    center of the tree (the lower-index one when there are two).
    """
    if not is_tree(graph):
        raise NotATree(f"{graph.n} nodes but {graph.m} edges")
    degree = [graph.degree(v) for v in range(graph.n)]
    removed = [False] * graph.n
    arcs = []
    leaves = [v for v in range(graph.n) if degree[v] == 1]
    while leaves:
        next_round = []
        for v in leaves:
            if degree[v] != 1:
                continue
            (u,) = [w for w in graph.neighbors(v) if not removed[w]]
            removed[v] = True
            degree[v] = 0
            arcs.append((v, u))
            degree[u] -= 1
            if degree[u] == 1:
                next_round.append(u)
        leaves = sorted(next_round)
    return certs_from_arcs(graph, arcs)


def _arcs_by_position(graph: Graph, order: Sequence[int], forward: bool) -> list[tuple[int, int]]:
    pos = {v: i for i, v in enumerate(order)}
    arcs = []
    for u, v in graph.edges:
        if (pos[u] < pos[v]) == forward:
            arcs.append((u, v))
        else:
            arcs.append((v, u))
    return arcs


def construct_chordal_cert(
    graph: Graph, ordering: Optional[EliminationOrdering] = None
) -> OrientationCertificate:
    """Point every edge from the earlier-eliminated endpoint to the later one.

    The sink is the last node of the simplicial ordering.
    """
    if ordering is None:
        ordering = find_simplicial_ordering(graph)
        if ordering is None:
            raise InvalidOrdering("graph is not chordal")
    if ordering.kind is not OrderingKind.SIMPLICIAL or not ordering.verify(graph):
        raise InvalidOrdering("not a simplicial ordering of this graph")
    return certs_from_arcs(graph, _arcs_by_position(graph, ordering.order, forward=True))


def construct_dismantlable_cert(
    graph: Graph, ordering: Optional[EliminationOrdering] = None
) -> OrientationCertificate:
    """Orient ``order[i] -> order[j]`` whenever ``i > j``; ``order[0]`` is the sink.

    Warns with :class:`K4Warning` when the graph contains a K4.
    """
    if ordering is None:
        ordering = find_dismantling_ordering(graph)
        if ordering is None:
            raise InvalidOrdering("graph is not dismantlable")
    if ordering.kind is not OrderingKind.DISMANTLING or not ordering.verify(graph):
        raise InvalidOrdering("not a dismantling ordering of this graph")
    if not is_k4_free(graph):
        warnings.warn("graph contains a K4; unique sink is not guaranteed", K4Warning, stacklevel=2)
    return certs_from_arcs(graph, _arcs_by_position(graph, ordering.order, forward=False))


def construct_cert(graph: Graph, scheme: SchemeId) -> OrientationCertificate:
    """Build a certificate for ``scheme``, finding the needed ordering itself."""
    if scheme is SchemeId.TREE:
        return construct_tree_cert(graph)
    if scheme is SchemeId.CHORDAL:
        return construct_chordal_cert(graph)
    if scheme is SchemeId.DISMANTLABLE:
        return construct_dismantlable_cert(graph)
    raise ValueError(f"{scheme.value} is not an orientation scheme")
