"""Brute-force ground truth over every certificate assignment of small graphs.

Orientation schemes are enumerated edge by edge (``2^|E|`` conflict-free
assignments); any assignment with an undirected edge is rejected by the
first rule of every scheme at both endpoints, so nothing is lost.  The
spanning-tree scheme is enumerated over all ``3^n`` value vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Optional

from localcert.classes import find_dismantling_ordering, find_simplicial_ordering, is_k4_free, is_tree
from localcert.errors import BoundExceeded
from localcert.graph import Graph, OrientationCertificate, certs_from_dirmask
from localcert.kernels import OrientationKernel, TernaryKernel
from localcert.schemes import SchemeId, is_acyclic, sinks
from localcert.spanning import (
    derive_tree,
    eligibility_acyclic,
    is_spanning_tree,
    root_labels,
    tie_battery,
)

DEFAULT_EDGE_BOUND = 20
DEFAULT_NODE_BOUND = 9
COUNTEREXAMPLE_LIMIT = 16

_KERNEL_SCHEME = {SchemeId.TREE: 0, SchemeId.CHORDAL: 1, SchemeId.DISMANTLABLE: 2}


def graph_classes(graph: Graph) -> dict[str, bool]:
    return {
        "tree": is_tree(graph),
        "chordal": find_simplicial_ordering(graph) is not None,
        "dismantlable": find_dismantling_ordering(graph) is not None,
        "k4_free": is_k4_free(graph),
    }


def in_class(graph: Graph, scheme: SchemeId) -> bool:
    """Whether ``graph`` lies in the family the scheme is proven sound on."""
    classes = graph_classes(graph)
    if scheme is SchemeId.TREE:
        return classes["tree"]
    if scheme is SchemeId.CHORDAL:
        return classes["chordal"]
    if scheme is SchemeId.DISMANTLABLE:
        return classes["dismantlable"] and classes["k4_free"]
    return classes["dismantlable"]


@dataclass
class SoundnessReport:
    """Counts from one exhaustive run.

    ``counterexamples`` keeps the first :data:`COUNTEREXAMPLE_LIMIT`
    offending assignments; ``counterexample_total`` keeps the full count.
    ``cyclic_accepted`` counts locally correct orientations that contain
    a directed cycle (always zero for the spanning-tree scheme).
    """

    n: int
    m: int
    scheme: SchemeId
    classes: dict[str, bool]
    in_class: bool
    examined: int
    locally_correct: int
    globally_correct: int
    counterexample_total: int
    counterexamples: list[Any] = field(default_factory=list)
    cyclic_accepted: int = 0
    root: Optional[int] = None

    @property
    def sound(self) -> bool:
        return self.counterexample_total == 0

    def to_json(self) -> dict[str, Any]:
        return {
            "graph": {"n": self.n, "m": self.m, "classes": self.classes},
            "scheme": self.scheme.value,
            "root": self.root,
            "in_class": self.in_class,
            "exploratory": not self.in_class,
            "examined": self.examined,
            "locally_correct": self.locally_correct,
            "globally_correct": self.globally_correct,
            "cyclic_accepted": self.cyclic_accepted,
            "counterexample_total": self.counterexample_total,
            "counterexamples": [_jsonable(c) for c in self.counterexamples],
        }


def _jsonable(cert: Any) -> Any:
    if isinstance(cert, tuple) and cert and isinstance(cert[0], tuple):
        return ["".join(map(str, bits)) for bits in cert]
    return list(cert)


def _check_edge_bound(graph: Graph, bound: int) -> None:
    if graph.m > bound:
        raise BoundExceeded(f"{graph.m} edges exceed the enumeration bound {bound}")


def enumerate_orientations(graph: Graph, bound: int = DEFAULT_EDGE_BOUND) -> Iterator[OrientationCertificate]:
    """All ``2^|E|`` conflict-free certificates, in edge-direction-mask order."""
    _check_edge_bound(graph, bound)
    for mask in range(1 << graph.m):
        yield certs_from_dirmask(graph, mask)


def accepted_orientations(graph: Graph, scheme: SchemeId, bound: int = DEFAULT_EDGE_BOUND) -> list[int]:
    """Edge-direction masks of every orientation accepted at all nodes."""
    _check_edge_bound(graph, bound)
    kernel = OrientationKernel([list(r) for r in graph.adjacency], list(graph.edges), _KERNEL_SCHEME[scheme])
    return kernel.accepted_dirmasks()


def soundness_exhaustive(
    graph: Graph, scheme: SchemeId, bound: int = DEFAULT_EDGE_BOUND
) -> SoundnessReport:
    """Check the unique-sink property (and acyclicity for chordal) on every accepted orientation."""
    if not scheme.is_orientation:
        raise ValueError("use soundness_exhaustive_st for the spanning-tree scheme")
    masks = accepted_orientations(graph, scheme, bound)
    good = 0
    cyclic = 0
    bad: list[Any] = []
    total_bad = 0
    for mask in masks:
        certs = certs_from_dirmask(graph, mask)
        acyclic = is_acyclic(graph, certs)
        cyclic += not acyclic
        ok = len(sinks(graph, certs)) == 1
        if scheme is SchemeId.CHORDAL:
            ok = ok and acyclic
        if ok:
            good += 1
        else:
            total_bad += 1
            if len(bad) < COUNTEREXAMPLE_LIMIT:
                bad.append(certs)
    classes = graph_classes(graph)
    return SoundnessReport(
        n=graph.n,
        m=graph.m,
        scheme=scheme,
        classes=classes,
        in_class=in_class(graph, scheme),
        examined=1 << graph.m,
        locally_correct=len(masks),
        globally_correct=good,
        counterexample_total=total_bad,
        counterexamples=bad,
        cyclic_accepted=cyclic,
    )


def existence_exhaustive(graph: Graph, scheme: SchemeId, bound: int = DEFAULT_EDGE_BOUND) -> bool:
    return bool(accepted_orientations(graph, scheme, bound))


def _decode_ternary(code: int, n: int) -> tuple[int, ...]:
    values = [0] * n
    for v in range(n - 1, -1, -1):
        values[v] = code % 3
        code //= 3
    return tuple(values)


def accepted_ternary(graph: Graph, root: int, bound: int = DEFAULT_NODE_BOUND) -> list[tuple[int, ...]]:
    if graph.n > bound:
        raise BoundExceeded(f"{graph.n} nodes exceed the enumeration bound {bound}")
    graph._check_node(root)
    kernel = TernaryKernel([list(r) for r in graph.adjacency], root)
    return [_decode_ternary(c, graph.n) for c in kernel.accepted_assignments()]


def soundness_exhaustive_st(graph: Graph, root: int, bound: int = DEFAULT_NODE_BOUND) -> SoundnessReport:
    """Every accepted value vector must yield a spanning tree under each tie rule in the battery.

    An acyclic eligibility digraph is required as well.
    """
    accepted = accepted_ternary(graph, root, bound)
    labels = root_labels(graph.n, root)
    good = 0
    bad: list[Any] = []
    total_bad = 0
    for values in accepted:
        ok = eligibility_acyclic(graph, values)
        for tie in tie_battery(seed=0):
            if not ok:
                break
            ok = is_spanning_tree(graph, derive_tree(graph, values, labels, tie), root)
        if ok:
            good += 1
        else:
            total_bad += 1
            if len(bad) < COUNTEREXAMPLE_LIMIT:
                bad.append(values)
    classes = graph_classes(graph)
    return SoundnessReport(
        n=graph.n,
        m=graph.m,
        scheme=SchemeId.SPANNING_TREE,
        classes=classes,
        in_class=classes["dismantlable"],
        examined=3**graph.n,
        locally_correct=len(accepted),
        globally_correct=good,
        counterexample_total=total_bad,
        counterexamples=bad,
        root=root,
    )
