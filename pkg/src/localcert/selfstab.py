"""Certificate-to-self-stabilization transformation and its scheduler simulation.

Every node holds either a certificate value or the reset state ``None``.
Two guarded rules, tried in order when a node is activated:

``S1``  state is not reset, and the node's view is rejected or some
        neighbor is reset  ->  become reset
``S2``  state is reset  ->  take a uniformly random certificate value

The scheduler activates a uniformly random non-empty subset of the enabled
nodes each step; all activated nodes read the configuration as it was
before the step.
"""

from __future__ import annotations

import enum
import hashlib
import json
import random
from array import array
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

from localcert.errors import EmptySubset, MemberNotEnabled, NothingEnabled
from localcert.graph import Graph
from localcert.kernels import OrientationKernel, TernaryKernel
from localcert.schemes import SchemeId
from localcert.spanning import root_of

S1 = "S1"
S2 = "S2"
DEFAULT_BUDGET = 10**6
# Orientation states are packed into signed 64-bit words.
MAX_DEGREE = 62

_RESET = -1
_MALFORMED = -2

_KERNEL_SCHEME = {SchemeId.TREE: 0, SchemeId.CHORDAL: 1, SchemeId.DISMANTLABLE: 2}


@dataclass(frozen=True)
class Configuration:
    """A global state of the transformed algorithm.

    ``states[v]`` is ``None`` (reset), a bit tuple of length ``deg(v)`` for
    orientation schemes, or a value in ``{0, 1, 2}`` for the spanning-tree
    scheme.  Anything else is kept as-is and treated as corruption.
    """

    graph: Graph
    scheme: SchemeId
    states: tuple[Any, ...]
    labels: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if len(self.states) != self.graph.n:
            raise ValueError(f"expected {self.graph.n} states, got {len(self.states)}")
        if self.scheme is SchemeId.SPANNING_TREE:
            if self.labels is None:
                raise ValueError("the spanning-tree scheme needs a root labeling")
            root_of(self.labels)

    def alphabet_size(self, v: int) -> int:
        if self.scheme is SchemeId.SPANNING_TREE:
            return 3
        return 1 << self.graph.degree(v)

    def digest(self) -> str:
        return _Engine(self).digest()


def _encode(config: Configuration) -> array:
    out = array("q")
    st = config.scheme is SchemeId.SPANNING_TREE
    for v, s in enumerate(config.states):
        if s is None:
            out.append(_RESET)
        elif st:
            out.append(s if isinstance(s, int) and s in (0, 1, 2) else _MALFORMED)
        elif (
            isinstance(s, (tuple, list))
            and len(s) == config.graph.degree(v)
            and all(b in (0, 1) for b in s)
        ):
            out.append(sum(b << p for p, b in enumerate(s)))
        else:
            out.append(_MALFORMED)
    return out


def _decode_state(config: Configuration, v: int, code: int) -> Any:
    if code == _RESET:
        return None
    if code == _MALFORMED:
        return config.states[v]
    if config.scheme is SchemeId.SPANNING_TREE:
        return code
    return tuple((code >> p) & 1 for p in range(config.graph.degree(v)))


class _Engine:
    """Mutable working copy of a configuration with cached guards."""

    def __init__(self, config: Configuration):
        self.config = config
        graph = config.graph
        self.graph = graph
        self.st = config.scheme is SchemeId.SPANNING_TREE
        if not self.st and graph.n and max(graph.degree(v) for v in range(graph.n)) > MAX_DEGREE:
            raise ValueError(f"simulation supports degree at most {MAX_DEGREE}")
        adjacency = [list(row) for row in graph.adjacency]
        if self.st:
            self.kernel = TernaryKernel(adjacency, root_of(config.labels))
        else:
            self.kernel = OrientationKernel(adjacency, list(graph.edges), _KERNEL_SCHEME[config.scheme])
        self.states = _encode(config)
        self.degree = [graph.degree(v) for v in range(graph.n)]
        prefix = json.dumps(
            {
                "n": graph.n,
                "edges": [list(e) for e in graph.edges],
                "scheme": config.scheme.value,
                "labels": None if config.labels is None else list(config.labels),
            },
            separators=(",", ":"),
        ).encode()
        self._prefix = hashlib.sha256(prefix).digest()
        self.guards: list[Optional[str]] = [self._guard(v) for v in range(graph.n)]
        self.enabled = {v for v, g in enumerate(self.guards) if g is not None}

    def _guard(self, v: int) -> Optional[str]:
        s = self.states[v]
        if s == _RESET:
            return S2
        if s == _MALFORMED:
            return S1
        states = self.states
        for u in self.graph.adjacency[v]:
            if states[u] < 0:
                return S1
        if self.kernel.violations(states, v):
            return S1
        return None

    def digest(self) -> str:
        h = hashlib.sha256(self._prefix)
        h.update(self.states.tobytes())
        return h.hexdigest()

    def draw(self, v: int, rng: random.Random) -> int:
        if self.st:
            return rng.randrange(3)
        return rng.getrandbits(self.degree[v]) if self.degree[v] else 0

    def schedule(self, rng: random.Random) -> list[int]:
        if not self.enabled:
            raise NothingEnabled("no guard is enabled")
        nodes = sorted(self.enabled)
        mask = 0
        while not mask:
            mask = rng.getrandbits(len(nodes))
        return [v for i, v in enumerate(nodes) if (mask >> i) & 1]

    def apply(self, subset: Sequence[int], rng: random.Random) -> int:
        """Fire every member's enabled rule at once; return how many reset."""
        members = sorted(set(subset))
        if not members:
            raise EmptySubset("a step must activate at least one node")
        for v in members:
            if self.guards[v] is None:
                raise MemberNotEnabled(f"node {v} has no enabled guard")
        new = []
        resets = 0
        for v in members:
            if self.guards[v] == S1:
                new.append(_RESET)
                resets += 1
            else:
                new.append(self.draw(v, rng))
        for v, s in zip(members, new):
            self.states[v] = s
        touched = set(members)
        for v in members:
            touched.update(self.graph.adjacency[v])
        for v in touched:
            g = self._guard(v)
            self.guards[v] = g
            if g is None:
                self.enabled.discard(v)
            else:
                self.enabled.add(v)
        return resets

    def snapshot(self) -> Configuration:
        c = self.config
        states = tuple(_decode_state(c, v, s) for v, s in enumerate(self.states))
        return Configuration(c.graph, c.scheme, states, c.labels)


def enabled_guards(config: Configuration) -> tuple[Optional[str], ...]:
    """Per node, ``"S1"``, ``"S2"`` or ``None``."""
    return tuple(_Engine(config).guards)


def step(config: Configuration, subset: Iterable[int], rng: random.Random) -> Configuration:
    engine = _Engine(config)
    engine.apply(list(subset), rng)
    return engine.snapshot()


def schedule(config: Configuration, rng: random.Random) -> frozenset[int]:
    """A uniformly random non-empty subset of the enabled nodes."""
    return frozenset(_Engine(config).schedule(rng))


class Outcome(enum.Enum):
    STABILIZED = "stabilized"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class TraceStep:
    step: int
    activated: tuple[int, ...]
    digest: str
    resets: int
    violations: int

    def to_json(self) -> dict[str, Any]:
        return {
            "step": self.step,
            "activated": list(self.activated),
            "digest": self.digest,
            "resets": self.resets,
            "violations": self.violations,
        }


@dataclass
class Trace:
    """Outcome of :func:`run`.

    ``violations`` in each step counts nodes whose S1 guard holds after
    the step.  ``steps`` stays empty when the run was not recorded.
    """

    outcome: Outcome
    step_count: int
    activations: int
    initial_digest: str
    final: Configuration
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def stabilized(self) -> bool:
        return self.outcome is Outcome.STABILIZED

    def summary(self) -> dict[str, Any]:
        return {
            "outcome": self.outcome.value,
            "steps": self.step_count,
            "activations": self.activations,
            "initial_digest": self.initial_digest,
            "final_digest": self.final.digest(),
        }


def run(
    config: Configuration,
    seed: int,
    budget: int = DEFAULT_BUDGET,
    record: bool = True,
) -> Trace:
    """Schedule and step until no guard is enabled or ``budget`` activations are spent."""
    if budget < 0:
        raise ValueError("budget must be non-negative")
    rng = random.Random(seed)
    engine = _Engine(config)
    initial = engine.digest()
    steps: list[TraceStep] = []
    activations = 0
    count = 0
    outcome = Outcome.STABILIZED
    while engine.enabled:
        subset = engine.schedule(rng)
        if activations + len(subset) > budget:
            outcome = Outcome.BUDGET_EXHAUSTED
            break
        resets = engine.apply(subset, rng)
        activations += len(subset)
        count += 1
        if record:
            bad = sum(1 for g in engine.guards if g == S1)
            steps.append(TraceStep(count, tuple(subset), engine.digest(), resets, bad))
    return Trace(outcome, count, activations, initial, engine.snapshot(), steps)


def random_state(config: Configuration, v: int, rng: random.Random, allow_reset: bool) -> Any:
    size = config.alphabet_size(v)
    pick = rng.randrange(size + 1 if allow_reset else size)
    if pick == size:
        return None
    if config.scheme is SchemeId.SPANNING_TREE:
        return pick
    return tuple((pick >> p) & 1 for p in range(config.graph.degree(v)))


def inject_faults(config: Configuration, victims: Iterable[int], rng: random.Random) -> Configuration:
    """Overwrite each victim with a uniform draw from its certificate values plus reset."""
    states = list(config.states)
    for v in sorted(set(victims)):
        config.graph._check_node(v)
        states[v] = random_state(config, v, rng, allow_reset=True)
    return Configuration(config.graph, config.scheme, tuple(states), config.labels)


def all_reset(graph: Graph, scheme: SchemeId, labels: Optional[Sequence[int]] = None) -> Configuration:
    return Configuration(graph, scheme, (None,) * graph.n, None if labels is None else tuple(labels))


def random_configuration(
    graph: Graph,
    scheme: SchemeId,
    rng: random.Random,
    labels: Optional[Sequence[int]] = None,
    allow_reset: bool = False,
) -> Configuration:
    base = all_reset(graph, scheme, labels)
    states = tuple(random_state(base, v, rng, allow_reset) for v in range(graph.n))
    return Configuration(graph, scheme, states, base.labels)


def certified_configuration(
    graph: Graph,
    scheme: SchemeId,
    certs: Sequence[Any],
    labels: Optional[Sequence[int]] = None,
) -> Configuration:
    states = tuple(tuple(c) if isinstance(c, (list, tuple)) else c for c in certs)
    return Configuration(graph, scheme, states, None if labels is None else tuple(labels))
