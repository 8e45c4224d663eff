"""JSON graph documents and DOT export.

A graph document is ``{"n": int, "edges": [[u, v], ...]}`` with optional
``"labels"`` (``{node: int}``) and ``"certs"`` (per node: a bitstring whose
character ``i`` is the bit for port ``i``, an integer value, or ``null``
for the reset state).  Ports follow edge order: each edge takes the next
free port at both endpoints.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Sequence

from localcert.errors import FormatError, LocalCertError
from localcert.graph import EdgeStatus, Graph, build_graph, decode_bits


def loads(text: str, source: str = "<stdin>") -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}", source) from None
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object", source)
    return doc


def dumps(doc: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(doc, sort_keys=True, indent=2)
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def graph_from_doc(doc: dict[str, Any]) -> Graph:
    if "edges" not in doc:
        raise FormatError("missing field", "edges")
    edges = doc["edges"]
    if not isinstance(edges, list):
        raise FormatError("must be a list of [u, v] pairs", "edges")
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise FormatError("must be a pair of integers", f"edges[{i}]")
    n = doc.get("n")
    if n is not None and not isinstance(n, int):
        raise FormatError("must be an integer", "n")
    try:
        return build_graph(edges, n=n)
    except LocalCertError as exc:
        raise FormatError(str(exc), "edges") from None


def graph_to_doc(graph: Graph) -> dict[str, Any]:
    return {"n": graph.n, "edges": [list(e) for e in graph.edges]}


def labels_from_doc(doc: dict[str, Any], n: int) -> Optional[tuple[int, ...]]:
    raw = doc.get("labels")
    if raw is None:
        return None
    labels = [0] * n
    if isinstance(raw, list):
        if len(raw) != n:
            raise FormatError(f"expected {n} entries", "labels")
        items = enumerate(raw)
    elif isinstance(raw, dict):
        items = raw.items()
    else:
        raise FormatError("must be an object or a list", "labels")
    for key, value in items:
        try:
            v = int(key)
        except ValueError:
            raise FormatError("node keys must be integers", f"labels.{key}") from None
        if not 0 <= v < n or not isinstance(value, int):
            raise FormatError("bad node or value", f"labels.{key}")
        labels[v] = value
    return tuple(labels)


def labels_to_doc(labels: Sequence[int]) -> dict[str, int]:
    return {str(v): x for v, x in enumerate(labels)}


def certs_from_doc(doc: dict[str, Any], graph: Graph) -> Optional[list[Any]]:
    """Per node: bit tuple, integer, or ``None``; lengths are not checked here."""
    raw = doc.get("certs")
    if raw is None:
        return None
    if not isinstance(raw, list) or len(raw) != graph.n:
        raise FormatError(f"must be a list of {graph.n} entries", "certs")
    out: list[Any] = []
    for v, c in enumerate(raw):
        if c is None or (isinstance(c, int) and not isinstance(c, bool)):
            out.append(c)
        elif isinstance(c, str) and set(c) <= {"0", "1"}:
            out.append(tuple(int(ch) for ch in c))
        else:
            raise FormatError("must be a bitstring, an integer or null", f"certs[{v}]")
    return out


def certs_to_doc(certs: Sequence[Any]) -> list[Any]:
    return ["".join(map(str, c)) if isinstance(c, (tuple, list)) else c for c in certs]


def _bit(certs: Sequence[Any], v: int, port: int) -> Optional[int]:
    c = certs[v]
    if isinstance(c, (tuple, list)) and port < len(c):
        return c[port]
    return None


def to_dot(graph: Graph, certs: Optional[Sequence[Any]] = None, name: str = "G") -> str:
    """Digraph with arrowheads decoded from bit certificates.

    Undirected (conflicting) edges get ``dir=none, color=red``; edges with
    no readable bits are drawn plain with ``dir=none``.
    """
    lines = [f"digraph {name} {{"]
    for v in range(graph.n):
        attrs = ""
        if certs is not None and certs[v] is not None:
            c = certs[v]
            text = "".join(map(str, c)) if isinstance(c, (tuple, list)) else str(c)
            attrs = f' [label="{v}:{text}"]'
        lines.append(f"  {v}{attrs};")
    for u, v in graph.edges:
        if certs is None:
            lines.append(f"  {u} -> {v} [dir=none];")
            continue
        bu = _bit(certs, u, graph.port(u, v))
        bv = _bit(certs, v, graph.port(v, u))
        if bu is None or bv is None:
            lines.append(f"  {u} -> {v} [dir=none];")
            continue
        status = decode_bits(bu, bv)
        if status is EdgeStatus.OUT_OF_FIRST:
            lines.append(f"  {u} -> {v};")
        elif status is EdgeStatus.OUT_OF_SECOND:
            lines.append(f"  {v} -> {u};")
        else:
            lines.append(f"  {u} -> {v} [dir=none, color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"
