"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (collected
into the terminal summary as well) and asserts both the property and the
wall-clock limit.  Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import contextlib
import io
import json
import random
import time

import pytest

from conftest import cycle, wheel5
from localcert.classes import gen_chordal, gen_connected, gen_dismantlable, gen_tree
from localcert.cli import main
from localcert.graph import extract_view
from localcert.oracle import soundness_exhaustive, soundness_exhaustive_st
from localcert.schemes import SchemeId, construct_cert, construct_tree_cert, sinks, verify_global
from localcert.selfstab import (
    DEFAULT_BUDGET,
    all_reset,
    certified_configuration,
    enabled_guards,
    inject_faults,
    random_configuration,
    run,
)
from localcert.spanning import (
    check_st_local,
    construct_st_cert,
    derive_tree,
    is_spanning_tree,
    root_labels,
)

RESULTS: list[str] = []


def report(number, ok, elapsed, limit, detail):
    verdict = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"criterion {number}: {verdict} ({detail}; {elapsed:.2f}s, limit {limit:g}s)"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert elapsed < limit, line


def bounded(make, seed, max_edges=15):
    """First instance from ``make`` at or after ``seed`` with at most ``max_edges`` edges."""
    while True:
        g = make(seed)
        if g.m <= max_edges:
            return g
        seed += 10_000


def test_criterion_01_tree_existence():
    start = time.perf_counter()
    graphs = [gen_tree(1 + s % 7, s) for s in range(210)]
    graphs += [gen_tree(random.Random(s).randint(1, 50), 1000 + s) for s in range(200)]
    failures = 0
    for g in graphs:
        certs = construct_tree_cert(g)
        if not verify_global(g, certs, SchemeId.TREE).accepted or len(sinks(g, certs)) != 1:
            failures += 1
    elapsed = time.perf_counter() - start
    report(1, failures == 0, elapsed, 5, f"{len(graphs) - failures}/{len(graphs)} trees certified")


def test_criterion_02_tree_soundness():
    start = time.perf_counter()
    bad = 0
    count_mismatch = 0
    for s in range(200):
        g = gen_tree(1 + s % 8, 2000 + s)
        r = soundness_exhaustive(g, SchemeId.TREE)
        bad += r.counterexample_total
        count_mismatch += r.locally_correct != g.n
    elapsed = time.perf_counter() - start
    report(2, bad == 0 and count_mismatch == 0, elapsed, 30,
           f"{bad} counterexamples, {count_mismatch} count mismatches over 200 trees")


def test_criterion_03_chordal_soundness():
    start = time.perf_counter()
    bad = cyclic = accepted = 0
    for s in range(100):
        rng = random.Random(s)
        n = rng.randint(1, 9)
        g = bounded(lambda seed: gen_chordal(n, rng.randint(0, 16 - n), seed), 3000 + s)
        r = soundness_exhaustive(g, SchemeId.CHORDAL)
        assert r.in_class
        bad += r.counterexample_total
        cyclic += r.cyclic_accepted
        accepted += r.locally_correct
    elapsed = time.perf_counter() - start
    report(3, bad == 0 and cyclic == 0, elapsed, 120,
           f"{accepted} accepted assignments, {bad} counterexamples, {cyclic} cyclic")


def test_criterion_04_c4_negative_control():
    start = time.perf_counter()
    g = cycle(4)
    r = soundness_exhaustive(g, SchemeId.CHORDAL)
    sink_counts = [len(sinks(g, c)) for c in r.counterexamples]
    elapsed = time.perf_counter() - start
    ok = r.locally_correct == 2 and r.counterexample_total == 2 and sink_counts == [0, 0]
    report(4, ok, elapsed, 1, f"{r.locally_correct} accepted, sink counts {sink_counts}")


def test_criterion_05_dismantlable_soundness():
    start = time.perf_counter()
    bad = cyclic_instances = 0
    for s in range(100):
        rng = random.Random(s)
        n = rng.randint(1, 9)
        g = bounded(lambda seed: gen_dismantlable(n, True, seed, density=rng.uniform(0.2, 0.8)), 4000 + s)
        r = soundness_exhaustive(g, SchemeId.DISMANTLABLE)
        assert r.in_class
        bad += r.counterexample_total
        cyclic_instances += r.cyclic_accepted > 0
    w5 = soundness_exhaustive(wheel5(), SchemeId.DISMANTLABLE)
    bad += w5.counterexample_total
    elapsed = time.perf_counter() - start
    ok = bad == 0 and w5.cyclic_accepted > 0
    report(5, ok, elapsed, 120,
           f"{bad} counterexamples; W5 has {w5.cyclic_accepted} cyclic unique-sink assignments; "
           f"{cyclic_instances}/100 random instances accept a cycle")


def test_criterion_06_spanning_tree():
    start = time.perf_counter()
    local_fail = 0
    for s in range(200):
        rng = random.Random(s)
        n = rng.randint(1, 50)
        g = gen_connected(n, rng.randint(0, 2 * n), 5000 + s)
        root = rng.randrange(n)
        certs = construct_st_cert(g, root)
        labels = root_labels(n, root)
        local_fail += any(
            not check_st_local(extract_view(g, certs, v, labels)).accepted for v in range(n)
        )
    bad = 0
    accepted = 0
    for s in range(50):
        rng = random.Random(s)
        n = rng.randint(1, 8)
        g = gen_dismantlable(n, rng.random() < 0.5, 6000 + s)
        r = soundness_exhaustive_st(g, rng.randrange(n))
        bad += r.counterexample_total
        accepted += r.locally_correct
    elapsed = time.perf_counter() - start
    report(6, local_fail == 0 and bad == 0, elapsed, 180,
           f"{local_fail} constructor rejections on 200 graphs; {bad} counterexamples "
           f"over {accepted} accepted assignments (eligibility acyclic, 3 tie rules)")


def test_criterion_07_silence():
    start = time.perf_counter()
    loud = 0
    total = 0
    for s in range(10):
        tree = gen_tree(8, s)
        chordal = gen_chordal(8, 6, s)
        dism = gen_dismantlable(8, True, s)
        configs = [
            certified_configuration(tree, SchemeId.TREE, construct_cert(tree, SchemeId.TREE)),
            certified_configuration(chordal, SchemeId.CHORDAL, construct_cert(chordal, SchemeId.CHORDAL)),
            certified_configuration(dism, SchemeId.DISMANTLABLE, construct_cert(dism, SchemeId.DISMANTLABLE)),
            certified_configuration(dism, SchemeId.SPANNING_TREE, construct_st_cert(dism, 0), root_labels(8, 0)),
        ]
        for config in configs:
            total += 1
            trace = run(config, seed=s)
            if trace.step_count or any(g is not None for g in enabled_guards(config)):
                loud += 1
    elapsed = time.perf_counter() - start
    report(7, loud == 0, elapsed, 1, f"{total - loud}/{total} constructed configurations silent")


def _converges(g, scheme, config, seed, labels=None, root=None):
    trace = run(config, seed=seed, budget=DEFAULT_BUDGET, record=False)
    if not trace.stabilized:
        return False, trace.activations
    final = trace.final.states
    if not verify_global(g, final, scheme, labels).accepted:
        return False, trace.activations
    if scheme is SchemeId.TREE:
        return len(sinks(g, final)) == 1, trace.activations
    return is_spanning_tree(g, derive_tree(g, final, labels), root), trace.activations


def test_criterion_08_convergence():
    start = time.perf_counter()
    failures = 0
    runs = 0
    worst = 0
    for seed in range(100):
        rng = random.Random(seed)
        n = rng.randint(1, 6)
        tree = gen_tree(n, 7000 + seed)
        for config in (all_reset(tree, SchemeId.TREE), random_configuration(tree, SchemeId.TREE, rng)):
            ok, used = _converges(tree, SchemeId.TREE, config, seed)
            failures += not ok
            worst = max(worst, used)
            runs += 1
        g = gen_dismantlable(n, rng.random() < 0.5, 8000 + seed)
        root = rng.randrange(n)
        labels = root_labels(n, root)
        for config in (
            all_reset(g, SchemeId.SPANNING_TREE, labels),
            random_configuration(g, SchemeId.SPANNING_TREE, rng, labels),
        ):
            ok, used = _converges(g, SchemeId.SPANNING_TREE, config, seed, labels, root)
            failures += not ok
            worst = max(worst, used)
            runs += 1
    elapsed = time.perf_counter() - start
    report(8, failures == 0, elapsed, 300,
           f"{runs - failures}/{runs} runs stabilized correctly; max {worst} activations")


def test_criterion_09_fault_recovery():
    start = time.perf_counter()
    g = gen_tree(6, 9)
    stable = certified_configuration(g, SchemeId.TREE, construct_tree_cert(g))
    failures = 0
    for seed in range(100):
        rng = random.Random(seed)
        faulty = inject_faults(stable, [rng.randrange(6)], rng)
        ok, _ = _converges(g, SchemeId.TREE, faulty, seed)
        failures += not ok
    elapsed = time.perf_counter() - start
    report(9, failures == 0, elapsed, 60, f"{100 - failures}/100 single faults recovered")


def _cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def test_criterion_10_cli_determinism(tmp_path):
    start = time.perf_counter()

    def pipeline():
        outputs = []
        _, graph = _cli(["generate", "--class", "dismantlable", "--n", "6", "--seed", "21", "--k4-free"])
        outputs.append(graph)
        gfile = tmp_path / "g.json"
        gfile.write_text(graph)
        for scheme in ("tree", "chordal", "dismantlable", "st"):
            extra = ["--root", "0"] if scheme == "st" else []
            outputs.append(_cli(["oracle", "--scheme", scheme, "--graph", str(gfile), *extra])[1])
        _, built = _cli(["construct", "--scheme", "dismantlable", "--graph", str(gfile)])
        cfile = tmp_path / "c.json"
        cfile.write_text(built)
        outputs += [built, _cli(["verify", "--scheme", "dismantlable", "--graph", str(cfile)])[1]]
        outputs.append(_cli(["export-dot", "--graph", str(cfile)])[1])
        for init in ("reset", "random", "certs"):
            outputs.append(_cli(["simulate", "--scheme", "dismantlable", "--graph", str(cfile),
                                 "--init", init, "--faults", "2", "--seed", "8"])[1])
        outputs.append(_cli(["simulate", "--scheme", "st", "--root", "2", "--graph", str(gfile), "--seed", "8"])[1])
        return outputs

    first, second = pipeline(), pipeline()
    # any JSON output must parse; the DOT output is plain text
    for out in first:
        if not out.startswith("digraph"):
            for line in out.splitlines():
                json.loads(line)
    differing = sum(a != b for a, b in zip(first, second))
    elapsed = time.perf_counter() - start
    report(10, differing == 0 and len(first) == len(second), elapsed, 60,
           f"{len(first) - differing}/{len(first)} outputs byte-identical on re-run")


@pytest.fixture(scope="session", autouse=True)
def _expose_results(request):
    request.config._acceptance_results = RESULTS
    yield
