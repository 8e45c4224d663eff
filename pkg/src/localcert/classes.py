"""Recognition and seeded generation of trees, chordal and dismantlable graphs."""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from typing import Optional

from localcert.errors import GenerationError, IndexOutOfRange, InvalidOrdering
from localcert.graph import Graph, build_graph


class OrderingKind(enum.Enum):
    SIMPLICIAL = "simplicial"
    DISMANTLING = "dismantling"


@dataclass(frozen=True)
class EliminationOrdering:
    """A simplicial or dismantling ordering of a graph's nodes.

    The two kinds read in opposite directions, matching how each
    certificate constructor consumes them:

    * ``SIMPLICIAL``: ``order[0]`` is removed first; each node is simplicial
      in the graph induced by itself and the nodes after it.
    * ``DISMANTLING``: ``order[i]`` is dominated inside the graph induced by
      ``order[:i + 1]`` by ``witness[order[i]]``, which appears earlier.
      Removal therefore starts at ``order[-1]`` and ``order[0]`` is the last
      node standing (its witness is ``None``).
    """

    order: tuple[int, ...]
    kind: OrderingKind
    witness: Optional[tuple[Optional[int], ...]] = None

    def elimination_sequence(self) -> tuple[int, ...]:
        if self.kind is OrderingKind.SIMPLICIAL:
            return self.order
        return self.order[::-1]

    def verify(self, graph: Graph) -> bool:
        """Replay the ordering against its defining property."""
        if sorted(self.order) != list(range(graph.n)):
            return False
        remaining = set(range(graph.n))
        for v in self.elimination_sequence():
            live = set(graph.neighbors(v)) & remaining
            if self.kind is OrderingKind.SIMPLICIAL:
                if not _is_clique(graph, live):
                    return False
            else:
                u = self.witness[v] if self.witness is not None else None
                if len(remaining) > 1:
                    if u is None or u not in live:
                        return False
                    if not live - {u} <= set(graph.neighbors(u)):
                        return False
                elif u is not None:
                    return False
            remaining.discard(v)
        return True


def _is_clique(graph: Graph, nodes) -> bool:
    return all(graph.has_edge(a, b) for a, b in itertools.combinations(sorted(nodes), 2))


def find_simplicial_ordering(graph: Graph) -> Optional[EliminationOrdering]:
    """Greedy perfect elimination; ``None`` when the graph is not chordal."""
    remaining = set(range(graph.n))
    order = []
    while remaining:
        for v in sorted(remaining):
            if _is_clique(graph, set(graph.neighbors(v)) & remaining):
                order.append(v)
                remaining.discard(v)
                break
        else:
            return None
    return EliminationOrdering(tuple(order), OrderingKind.SIMPLICIAL)


def _dominator(graph: Graph, v: int, remaining: set[int]) -> Optional[int]:
    closed_v = (set(graph.neighbors(v)) & remaining) | {v}
    for u in sorted(closed_v - {v}):
        if closed_v <= set(graph.neighbors(u)) | {u}:
            return u
    return None


def find_dismantling_ordering(graph: Graph) -> Optional[EliminationOrdering]:
    """Greedily strip dominated nodes; ``None`` when the graph is not dismantlable."""
    remaining = set(range(graph.n))
    removed = []
    witness: list[Optional[int]] = [None] * graph.n
    while len(remaining) > 1:
        for v in sorted(remaining):
            u = _dominator(graph, v, remaining)
            if u is not None:
                witness[v] = u
                removed.append(v)
                remaining.discard(v)
                break
        else:
            return None
    order = tuple(remaining) + tuple(reversed(removed))
    return EliminationOrdering(order, OrderingKind.DISMANTLING, tuple(witness))


def is_tree(graph: Graph) -> bool:
    return graph.m == graph.n - 1


def is_k4_free(graph: Graph) -> bool:
    for a, b, c, d in itertools.combinations(range(graph.n), 4):
        if (
            graph.has_edge(a, b)
            and graph.has_edge(a, c)
            and graph.has_edge(a, d)
            and graph.has_edge(b, c)
            and graph.has_edge(b, d)
            and graph.has_edge(c, d)
        ):
            return False
    return True


def _finish(n: int, edges: list[tuple[int, int]], rng: random.Random) -> Graph:
    # Relabel nodes and shuffle edge order so ports and indices carry no
    # trace of the construction order.
    perm = list(range(n))
    rng.shuffle(perm)
    relabeled = [(perm[u], perm[v]) for u, v in edges]
    rng.shuffle(relabeled)
    relabeled = [(u, v) if rng.random() < 0.5 else (v, u) for u, v in relabeled]
    return build_graph(relabeled, n=n)


def _require_positive(n: int) -> None:
    if n <= 0:
        raise IndexOutOfRange("n must be at least 1")


def gen_tree(n: int, seed: int) -> Graph:
    """Random tree by uniform parent attachment."""
    _require_positive(n)
    rng = random.Random(seed)
    edges = [(i, rng.randrange(i)) for i in range(1, n)]
    return _finish(n, edges, rng)


def gen_chordal(n: int, extra_edges: int, seed: int) -> Graph:
    """Random chordal graph with at most ``n - 1 + extra_edges`` edges.

    Each new node is glued to a random clique of the current graph.  A node
    wanting ``k`` extra edges attaches to a clique of size ``k + 1`` grown
    greedily from a random anchor; extras that do not fit roll over to the
    next insertion.
    """
    _require_positive(n)
    rng = random.Random(seed)
    adjacency: list[set[int]] = [set()]
    edges: list[tuple[int, int]] = []
    budget = [0] * n
    for _ in range(extra_edges):
        if n > 1:
            budget[rng.randrange(1, n)] += 1
    carry = 0
    for v in range(1, n):
        want = budget[v] + carry
        anchor = rng.randrange(v)
        clique = [anchor]
        candidates = sorted(adjacency[anchor])
        rng.shuffle(candidates)
        for c in candidates:
            if len(clique) > want:
                break
            if all(c in adjacency[x] for x in clique):
                clique.append(c)
        carry = want - (len(clique) - 1)
        adjacency.append(set())
        for u in clique:
            adjacency[v].add(u)
            adjacency[u].add(v)
            edges.append((u, v))
    return _finish(n, edges, rng)


def gen_dismantlable(
    n: int,
    k4_free: bool,
    seed: int,
    density: float = 0.5,
    max_resample: int = 1000,
) -> Graph:
    """Random dismantlable graph built by reverse dismantling.

    Node ``v`` joins a random dominator ``u`` plus each neighbor of ``u``
    with probability ``density``, so ``N[v]`` is inside ``N[u]`` at
    insertion time.  With ``k4_free`` the chosen neighbors of ``u`` must be
    pairwise non-adjacent (otherwise ``v`` closes a K4); attachments are
    resampled up to ``max_resample`` times.
    """
    _require_positive(n)
    rng = random.Random(seed)
    adjacency: list[set[int]] = [set()]
    edges: list[tuple[int, int]] = []
    for v in range(1, n):
        for _ in range(max_resample):
            u = rng.randrange(v)
            extra = [w for w in sorted(adjacency[u]) if rng.random() < density]
            if not k4_free or all(
                b not in adjacency[a] for a, b in itertools.combinations(extra, 2)
            ):
                break
        else:
            raise GenerationError(f"no K4-free attachment found for node {v}")
        adjacency.append(set())
        for w in [u] + extra:
            adjacency[v].add(w)
            adjacency[w].add(v)
            edges.append((w, v))
    return _finish(n, edges, rng)


def gen_connected(n: int, extra_edges: int, seed: int) -> Graph:
    """Random tree plus up to ``extra_edges`` uniformly chosen chords (no class guarantee)."""
    _require_positive(n)
    rng = random.Random(seed)
    edges = {(rng.randrange(i), i) for i in range(1, n)}
    missing = [(a, b) for a, b in itertools.combinations(range(n), 2) if (a, b) not in edges]
    rng.shuffle(missing)
    edges |= set(missing[:extra_edges])
    return _finish(n, sorted(edges), rng)
