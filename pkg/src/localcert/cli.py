"""Command-line front end.

Every subcommand reads a JSON graph document (``--graph FILE`` or stdin)
and writes JSON to stdout (or ``--out FILE``).  Exit codes: 0 success or
accept, 1 reject / counterexample found / budget exhausted, 2 usage or
format error.
"""

from __future__ import annotations

import argparse
import hashlib
import random
import sys
from typing import Any, Optional, Sequence

from localcert import __version__
from localcert.classes import gen_chordal, gen_connected, gen_dismantlable, gen_tree
from localcert.errors import ConflictingEdge, LocalCertError, MalformedCertificate
from localcert.formats import (
    certs_from_doc,
    certs_to_doc,
    dumps,
    graph_from_doc,
    graph_to_doc,
    labels_from_doc,
    labels_to_doc,
    loads,
    to_dot,
)
from localcert.oracle import soundness_exhaustive, soundness_exhaustive_st
from localcert.schemes import SchemeId, construct_cert, sinks, verify_global
from localcert.selfstab import (
    DEFAULT_BUDGET,
    Configuration,
    all_reset,
    inject_faults,
    random_configuration,
    run,
)
from localcert.spanning import construct_st_cert, derive_tree, root_labels, root_of

SCHEMES = [s.value for s in SchemeId]


class UsageError(Exception):
    pass


def _manifest(args: argparse.Namespace, input_text: Optional[str]) -> dict[str, Any]:
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func",)}
    return {
        "subcommand": args.command,
        "flags": flags,
        "seed": getattr(args, "seed", None),
        "input_digest": None if input_text is None else hashlib.sha256(input_text.encode()).hexdigest(),
        "version": __version__,
    }


def _read(path: Optional[str]) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(args: argparse.Namespace, doc: Any) -> None:
    _write(args, dumps(doc, pretty=getattr(args, "pretty", False)) + "\n")


def _load_graph(args: argparse.Namespace):
    text = _read(args.graph)
    doc = loads(text, args.graph or "<stdin>")
    return text, doc, graph_from_doc(doc)


def _labels(args: argparse.Namespace, doc: dict, graph) -> Optional[tuple[int, ...]]:
    if getattr(args, "root", None) is not None:
        return root_labels(graph.n, args.root)
    return labels_from_doc(doc, graph.n)


def cmd_generate(args: argparse.Namespace) -> int:
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    if args.graph_class == "tree":
        graph = gen_tree(args.n, args.seed)
    elif args.graph_class == "chordal":
        graph = gen_chordal(args.n, args.extra_edges, args.seed)
    elif args.graph_class == "dismantlable":
        graph = gen_dismantlable(args.n, args.k4_free, args.seed, density=args.density)
    else:
        graph = gen_connected(args.n, args.extra_edges, args.seed)
    doc = graph_to_doc(graph)
    doc["manifest"] = _manifest(args, None)
    _emit(args, doc)
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    text, doc, graph = _load_graph(args)
    scheme = SchemeId(args.scheme)
    out = graph_to_doc(graph)
    if scheme is SchemeId.SPANNING_TREE:
        labels = _labels(args, doc, graph)
        if labels is None:
            raise UsageError("--root is required for the st scheme")
        out["certs"] = list(construct_st_cert(graph, root_of(labels)))
        out["labels"] = labels_to_doc(labels)
    else:
        out["certs"] = certs_to_doc(construct_cert(graph, scheme))
    out["manifest"] = _manifest(args, text)
    _emit(args, out)
    return 0


def _certs_for(args: argparse.Namespace, doc: dict, graph) -> list[Any]:
    source = doc
    if getattr(args, "certs", None):
        source = loads(_read(args.certs), args.certs)
    certs = certs_from_doc(source, graph)
    if certs is None:
        raise UsageError("no certificates: pass --certs or include a certs field")
    return certs


def cmd_verify(args: argparse.Namespace) -> int:
    text, doc, graph = _load_graph(args)
    scheme = SchemeId(args.scheme)
    certs = _certs_for(args, doc, graph)
    labels = _labels(args, doc, graph)
    if scheme is SchemeId.SPANNING_TREE and labels is None:
        raise UsageError("--root or a labels field is required for the st scheme")
    verdict = verify_global(graph, certs, scheme, labels)
    out = verdict.to_json()
    if verdict.accepted:
        if scheme is SchemeId.SPANNING_TREE:
            parents = derive_tree(graph, certs, labels)
            out["parents"] = {str(v): p for v, p in enumerate(parents)}
        else:
            try:
                out["sinks"] = sorted(sinks(graph, certs))
            except ConflictingEdge:
                pass
    out["manifest"] = _manifest(args, text)
    _emit(args, out)
    return 0 if verdict.accepted else 1


def cmd_simulate(args: argparse.Namespace) -> int:
    text, doc, graph = _load_graph(args)
    scheme = SchemeId(args.scheme)
    labels = _labels(args, doc, graph)
    if scheme is SchemeId.SPANNING_TREE and labels is None:
        raise UsageError("--root or a labels field is required for the st scheme")
    rng = random.Random(args.seed)
    init = args.init
    if init == "certs":
        certs = certs_from_doc(doc, graph)
        if certs is None:
            raise UsageError("--init certs needs a certs field")
        config = Configuration(graph, scheme, tuple(certs), labels)
    elif init == "reset":
        config = all_reset(graph, scheme, labels)
    else:
        config = random_configuration(graph, scheme, rng, labels)
    if args.faults:
        if args.faults > graph.n:
            raise UsageError("--faults exceeds the number of nodes")
        victims = rng.sample(range(graph.n), args.faults)
        config = inject_faults(config, victims, rng)
    trace = run(config, seed=rng.getrandbits(63), budget=args.budget, record=True)
    lines = [dumps(s.to_json()) for s in trace.steps]
    final = trace.final
    summary: dict[str, Any] = trace.summary()
    summary["final_states"] = certs_to_doc(final.states)
    if trace.stabilized:
        summary["verdict"] = verify_global(graph, final.states, scheme, labels).to_json()
    summary["manifest"] = _manifest(args, text)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write("".join(line + "\n" for line in lines))
        _emit(args, summary)
    else:
        _write(args, "".join(line + "\n" for line in lines) + dumps({"summary": summary}) + "\n")
    return 0 if trace.stabilized else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    text, doc, graph = _load_graph(args)
    scheme = SchemeId(args.scheme)
    if scheme is SchemeId.SPANNING_TREE:
        labels = _labels(args, doc, graph)
        if labels is None:
            raise UsageError("--root or a labels field is required for the st scheme")
        report = soundness_exhaustive_st(graph, root_of(labels), bound=args.bound or 9)
    else:
        report = soundness_exhaustive(graph, scheme, bound=args.bound or 20)
    out = report.to_json()
    out["manifest"] = _manifest(args, text)
    _emit(args, out)
    return 0 if report.sound else 1


def cmd_export_dot(args: argparse.Namespace) -> int:
    text, doc, graph = _load_graph(args)
    certs = certs_from_doc(doc, graph)
    _write(args, to_dot(graph, certs))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localcert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, graph: bool = True) -> None:
        if graph:
            p.add_argument("--graph", help="graph JSON file (default: stdin)")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--pretty", action="store_true", help="indent JSON output")

    p = sub.add_parser("generate", help="generate a random graph of a class")
    p.add_argument("--class", dest="graph_class", required=True,
                   choices=["tree", "chordal", "dismantlable", "connected"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extra-edges", type=int, default=0)
    p.add_argument("--k4-free", action="store_true")
    p.add_argument("--density", type=float, default=0.5)
    common(p, graph=False)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("construct", help="build a certificate for a scheme")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--root", type=int)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run the local checks at every node")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--certs", help="JSON file with a certs field (default: the graph document)")
    p.add_argument("--root", type=int)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run the self-stabilizing algorithm")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="node activations")
    p.add_argument("--faults", type=int, default=0, help="nodes corrupted before the run")
    p.add_argument("--init", choices=["certs", "reset", "random"], default="random")
    p.add_argument("--root", type=int)
    p.add_argument("--trace", help="write JSON-lines trace here instead of stdout")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="exhaustive soundness check on a small graph")
    p.add_argument("--scheme", required=True, choices=SCHEMES)
    p.add_argument("--root", type=int)
    p.add_argument("--bound", type=int, help="edge bound (nodes for st)")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("export-dot", help="render a graph with decoded arrows as DOT")
    common(p)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (LocalCertError, MalformedCertificate) as exc:
        print(f"localcert: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
