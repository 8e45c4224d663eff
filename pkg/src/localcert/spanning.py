"""Rooted spanning-tree certification with values in {0, 1, 2}.

Each node holds ``d mod 3`` for some distance-like ``d``.  A non-root node
must see a neighbor one step closer (value minus one, mod 3), and no
triangle may carry all three values.  On dismantlable graphs every node
then picks any such neighbor as parent and the result is a spanning tree.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Callable, Optional, Sequence

from localcert.errors import IndexOutOfRange, MalformedCertificate, NoEligibleParent
from localcert.graph import Graph, View
from localcert.schemes import LocalVerdict

TernaryCertificate = tuple[int, ...]
RootLabeling = tuple[int, ...]
#: Per node, the port leading to its parent, or ``None`` at the root.
ParentMap = tuple[Optional[int], ...]
TieRule = Callable[[int, Sequence[int]], int]


def root_labels(n: int, root: int) -> RootLabeling:
    if not 0 <= root < n:
        raise IndexOutOfRange(f"root {root} not in 0..{n - 1}")
    return tuple(1 if v == root else 0 for v in range(n))


def root_of(labels: Sequence[int]) -> int:
    roots = [v for v, x in enumerate(labels) if x == 1]
    if len(roots) != 1 or any(x not in (0, 1) for x in labels):
        raise MalformedCertificate("root labeling must mark exactly one node with 1")
    return roots[0]


def _value(x) -> int:
    if x not in (0, 1, 2):
        raise MalformedCertificate(f"value {x!r} is not in {{0, 1, 2}}")
    return x


def check_st_local(view: View) -> LocalVerdict:
    if view.labels is None:
        raise MalformedCertificate("spanning-tree checks need the root labeling")
    i = _value(view.certs[0])
    nbrs = view.neighbors(0)
    values = {b: _value(view.certs[b]) for b in nbrs}
    bad = set()
    if view.labels[0] != 1 and all(values[b] != (i - 1) % 3 for b in nbrs):
        bad.add("N1")
    for a in nbrs:
        for b in nbrs:
            if (
                values[a] == (i + 1) % 3
                and values[b] == (i + 2) % 3
                and view.adjacent(a, b)
            ):
                bad.add("N2")
    return LocalVerdict(frozenset(bad))


def bfs_distances(graph: Graph, root: int) -> list[int]:
    """Distances from ``root``; the queue visits neighbors in increasing index."""
    graph._check_node(root)
    dist = [-1] * graph.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in sorted(graph.neighbors(v)):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def construct_st_cert(graph: Graph, root: int) -> TernaryCertificate:
    return tuple(d % 3 for d in bfs_distances(graph, root))


def lowest_port(v: int, eligible: Sequence[int]) -> int:
    return min(eligible)


def highest_port(v: int, eligible: Sequence[int]) -> int:
    return max(eligible)


class RandomTie:
    """Seeded uniform choice among eligible ports."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def __call__(self, v: int, eligible: Sequence[int]) -> int:
        return self._rng.choice(sorted(eligible))

    def __repr__(self) -> str:
        return f"RandomTie({self.seed})"


def tie_battery(seed: int = 0) -> list[TieRule]:
    return [lowest_port, highest_port, RandomTie(seed)]


def derive_tree(
    graph: Graph,
    certs: Sequence[int],
    labels: Sequence[int],
    tie: TieRule = lowest_port,
) -> ParentMap:
    """Each non-root node picks a parent port among neighbors one value lower (mod 3)."""
    root = root_of(labels)
    parents: list[Optional[int]] = []
    for v in range(graph.n):
        if v == root:
            parents.append(None)
            continue
        want = (certs[v] - 1) % 3
        eligible = [p for p, w in enumerate(graph.neighbors(v)) if certs[w] == want]
        if not eligible:
            raise NoEligibleParent(f"node {v} has no neighbor valued {want}")
        parents.append(tie(v, eligible))
    return tuple(parents)


def is_spanning_tree(graph: Graph, parents: Sequence[Optional[int]], root: int) -> bool:
    if len(parents) != graph.n or not 0 <= root < graph.n:
        return False
    if [v for v, p in enumerate(parents) if p is None] != [root]:
        return False
    head = []
    for v, p in enumerate(parents):
        if p is None:
            head.append(None)
        elif not 0 <= p < graph.degree(v):
            return False
        else:
            head.append(graph.neighbors(v)[p])
    edges = {frozenset((v, h)) for v, h in enumerate(head) if h is not None}
    if len(edges) != graph.n - 1:
        return False
    for start in range(graph.n):
        seen = set()
        v = start
        while v != root:
            if v in seen:
                return False
            seen.add(v)
            v = head[v]
    return True


def eligibility_arcs(graph: Graph, certs: Sequence[int]) -> list[tuple[int, int]]:
    """Arcs ``v -> w`` with ``certs[w] == certs[v] - 1 (mod 3)``."""
    return [
        (v, w)
        for v in range(graph.n)
        for w in graph.neighbors(v)
        if certs[w] == (certs[v] - 1) % 3
    ]


def eligibility_acyclic(graph: Graph, certs: Sequence[int]) -> bool:
    indegree = [0] * graph.n
    succ: list[list[int]] = [[] for _ in range(graph.n)]
    for v, w in eligibility_arcs(graph, certs):
        succ[v].append(w)
        indegree[w] += 1
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
