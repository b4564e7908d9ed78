"""Scenario configurations, their six-node graphs and the attribute encoding.

A scenario is fully described by four parts: which internal nodes receive
input (entry), how Processes and Structures are wired to each other
(internal arrangement), which internal nodes produce output (exit), and which
external shortcuts are active on top of the O->F->E->I backbone.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Tuple


class InvalidScenario(ValueError):
    pass


class InternalNode(str, enum.Enum):
    P = "P"
    S = "S"


class ExternalNode(str, enum.Enum):
    O = "O"
    F = "F"
    E = "E"
    I = "I"  # noqa: E741


class Arrangement(str, enum.Enum):
    BOTTOM_UP = "bottom-up"
    TOP_DOWN = "top-down"
    BIDIRECTIONAL = "bidirectional"

    @property
    def edges(self) -> Tuple[Tuple[str, str], ...]:
        if self is Arrangement.BOTTOM_UP:
            return (("P", "S"),)
        if self is Arrangement.TOP_DOWN:
            return (("S", "P"),)
        return (("P", "S"), ("S", "P"))


class Shortcut(str, enum.Enum):
    OE = "OE"
    OI = "OI"
    FI = "FI"

    @property
    def edge(self) -> Tuple[str, str]:
        return (self.value[0], self.value[1])


NODES: Tuple[str, ...] = ("I", "P", "S", "O", "F", "E")
BACKBONE: Tuple[Tuple[str, str], ...] = (("O", "F"), ("F", "E"), ("E", "I"))

# fixed enumeration orders; part of the public contract
NODE_SETS: Tuple[FrozenSet[InternalNode], ...] = (
    frozenset({InternalNode.P}),
    frozenset({InternalNode.S}),
    frozenset({InternalNode.P, InternalNode.S}),
)
ARRANGEMENTS: Tuple[Arrangement, ...] = (
    Arrangement.BOTTOM_UP,
    Arrangement.TOP_DOWN,
    Arrangement.BIDIRECTIONAL,
)

ATOMIC_ATTRIBUTES: Tuple[str, ...] = (
    "entry:P", "entry:S", "mon", "ctl", "exit:P", "exit:S", "sc:OE", "sc:OI", "sc:FI",
)
DERIVED_ATTRIBUTES: Tuple[str, ...] = ("parallel-entry", "dual-exit", "bidirectional")


def _node_set(members: Iterable) -> FrozenSet[InternalNode]:
    return frozenset(InternalNode(m) for m in members)


def _shortcut_set(members: Iterable) -> FrozenSet[Shortcut]:
    return frozenset(Shortcut(m) for m in members)


def sort_nodes(nodes: Iterable[InternalNode]) -> Tuple[InternalNode, ...]:
    return tuple(n for n in InternalNode if n in set(nodes))


def sort_shortcuts(shortcuts: Iterable[Shortcut]) -> Tuple[Shortcut, ...]:
    return tuple(s for s in Shortcut if s in set(shortcuts))


@dataclass(frozen=True)
class Scenario:
    """One configuration of the six-node model.

    Identity is the canonical key; ``label`` is an annotation and does not
    take part in equality or hashing.
    """

    entry: FrozenSet[InternalNode]
    internal: Arrangement
    exit: FrozenSet[InternalNode]
    shortcuts: FrozenSet[Shortcut] = frozenset()
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        try:
            object.__setattr__(self, "entry", _node_set(self.entry))
            object.__setattr__(self, "exit", _node_set(self.exit))
            object.__setattr__(self, "internal", Arrangement(self.internal))
            object.__setattr__(self, "shortcuts", _shortcut_set(self.shortcuts))
        except ValueError as exc:
            raise InvalidScenario(str(exc)) from None
        if not self.entry:
            raise InvalidScenario("entry pattern must name at least one of P, S")
        if not self.exit:
            raise InvalidScenario("exit pattern must name at least one of P, S")

    @property
    def key(self) -> tuple:
        return (
            NODE_SETS.index(self.entry),
            ARRANGEMENTS.index(self.internal),
            NODE_SETS.index(self.exit),
            tuple(s.value for s in sort_shortcuts(self.shortcuts)),
        )

    @property
    def sort_key(self) -> tuple:
        from .notation import topology_id

        return (
            NODE_SETS.index(self.entry),
            ARRANGEMENTS.index(self.internal),
            NODE_SETS.index(self.exit),
            topology_id(self.shortcuts),
        )

    def with_label(self, label: Optional[str]) -> "Scenario":
        return Scenario(self.entry, self.internal, self.exit, self.shortcuts, label)

    def __repr__(self) -> str:
        entry = "".join(n.value for n in sort_nodes(self.entry))
        exit_ = "".join(n.value for n in sort_nodes(self.exit))
        sc = ",".join(s.value for s in sort_shortcuts(self.shortcuts))
        tag = f"{self.label}: " if self.label else ""
        return f"Scenario({tag}{{{entry}}} {self.internal.value} {{{exit_}}} [{sc}])"


@dataclass(frozen=True)
class ScenarioGraph:
    edges: FrozenSet[Tuple[str, str]]
    nodes: Tuple[str, ...] = NODES

    def successors(self, node: str) -> Tuple[str, ...]:
        return tuple(sorted(b for a, b in self.edges if a == node))

    def reachable(self, start: str, edges: Optional[Iterable[Tuple[str, str]]] = None) -> FrozenSet[str]:
        return reachable(self.edges if edges is None else edges, start)


def reachable(edges: Iterable[Tuple[str, str]], start: str) -> FrozenSet[str]:
    """Reflexive-transitive closure of ``start`` under ``edges``."""
    adjacency: dict = {}
    for a, b in edges:
        adjacency.setdefault(a, set()).add(b)
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in adjacency.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def internal_edges(s: Scenario) -> FrozenSet[Tuple[str, str]]:
    return frozenset(s.internal.edges)


def cross_cluster_edges(s: Scenario) -> FrozenSet[Tuple[str, str]]:
    return frozenset({("I", n.value) for n in s.entry} | {(n.value, "O") for n in s.exit})


def build_graph(s: Scenario) -> ScenarioGraph:
    edges = set(BACKBONE)
    edges |= cross_cluster_edges(s)
    edges |= internal_edges(s)
    edges |= {sc.edge for sc in s.shortcuts}
    return ScenarioGraph(frozenset(edges))


def internal_reach(s: Scenario, start) -> FrozenSet[InternalNode]:
    start = InternalNode(start)
    return frozenset(InternalNode(n) for n in reachable(internal_edges(s), start.value))


def attributes_of(s: Scenario) -> FrozenSet[str]:
    """The atomic attribute set of ``s`` (a subset of ATOMIC_ATTRIBUTES)."""
    attrs = {f"entry:{n.value}" for n in s.entry}
    attrs |= {f"exit:{n.value}" for n in s.exit}
    attrs |= {f"sc:{sc.value}" for sc in s.shortcuts}
    if ("P", "S") in s.internal.edges:
        attrs.add("mon")
    if ("S", "P") in s.internal.edges:
        attrs.add("ctl")
    return frozenset(attrs)


def derived_attributes(attrs: Iterable[str]) -> FrozenSet[str]:
    attrs = set(attrs)
    out = set()
    if {"entry:P", "entry:S"} <= attrs:
        out.add("parallel-entry")
    if {"exit:P", "exit:S"} <= attrs:
        out.add("dual-exit")
    if {"mon", "ctl"} <= attrs:
        out.add("bidirectional")
    return frozenset(out)


def attribute_vector(s: Scenario) -> Tuple[bool, ...]:
    attrs = attributes_of(s)
    return tuple(a in attrs for a in ATOMIC_ATTRIBUTES)


def scenario_from_attributes(attrs: Iterable[str], label: Optional[str] = None) -> Scenario:
    """Inverse of :func:`attributes_of`; raises InvalidScenario on impossible sets."""
    attrs = set(attrs)
    unknown = attrs - set(ATOMIC_ATTRIBUTES)
    if unknown:
        raise InvalidScenario(f"unknown attributes: {sorted(unknown)}")
    mon, ctl = "mon" in attrs, "ctl" in attrs
    if mon and ctl:
        internal = Arrangement.BIDIRECTIONAL
    elif mon:
        internal = Arrangement.BOTTOM_UP
    elif ctl:
        internal = Arrangement.TOP_DOWN
    else:
        raise InvalidScenario("at least one of mon, ctl is required")
    return Scenario(
        entry={a[-1] for a in attrs if a.startswith("entry:")},
        internal=internal,
        exit={a[-1] for a in attrs if a.startswith("exit:")},
        shortcuts={a[3:] for a in attrs if a.startswith("sc:")},
        label=label,
    )


def hamming(a: Scenario, b: Scenario) -> int:
    return len(attributes_of(a) ^ attributes_of(b))
