"""Constant-size local certification for leader election and spanning trees.

Schemes for trees, chordal graphs and K4-free dismantlable graphs certify
an edge orientation with a unique sink; a ternary scheme certifies a rooted
spanning tree on dismantlable graphs.  :mod:`localcert.selfstab` turns any
of them into a silent self-stabilizing algorithm.
"""

__version__ = "0.1.0"

from localcert.classes import (  # noqa: E402
    EliminationOrdering,
    OrderingKind,
    find_dismantling_ordering,
    find_simplicial_ordering,
    gen_chordal,
    gen_connected,
    gen_dismantlable,
    gen_tree,
    is_k4_free,
)
from localcert.graph import EdgeStatus, Graph, View, build_graph, edge_status, extract_view, out_neighbors  # noqa: E402
from localcert.schemes import (  # noqa: E402
    LocalVerdict,
    SchemeId,
    check_chordal_local,
    check_dismantlable_local,
    check_tree_local,
    construct_chordal_cert,
    construct_dismantlable_cert,
    construct_tree_cert,
    is_acyclic,
    sinks,
    verify_global,
)
from localcert.spanning import (  # noqa: E402
    check_st_local,
    construct_st_cert,
    derive_tree,
    is_spanning_tree,
)
