"""Developmental trajectories over the scenario space."""
from __future__ import annotations

import enum
import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .enumeration import Catalog, TierLabel, appendix2_catalog, scenario_to_dict
from .model import ATOMIC_ATTRIBUTES, Scenario, attributes_of
from .notation import format_scenario

# smallest hop bound admitting S1->S6->S7->S14->S17 (S1->S6 differs in 3 attributes)
DEFAULT_MAX_HOP = 3


class NoPath(LookupError):
    pass


@dataclass(frozen=True)
class Delta:
    gained: FrozenSet[str]
    lost: FrozenSet[str]

    @property
    def empty(self) -> bool:
        return not self.gained and not self.lost

    def apply(self, attrs) -> FrozenSet[str]:
        return (frozenset(attrs) - self.lost) | self.gained

    def to_dict(self) -> dict:
        order = ATOMIC_ATTRIBUTES.index
        return {"gained": sorted(self.gained, key=order), "lost": sorted(self.lost, key=order)}


def delta(a: Scenario, b: Scenario) -> Delta:
    x, y = attributes_of(a), attributes_of(b)
    return Delta(y - x, x - y)


class Threshold(str, enum.Enum):
    BIDIRECTIONALITY_BARRIER = "BidirectionalityBarrier"
    SELF_MONITORING_THRESHOLD = "SelfMonitoringThreshold"
    EXTERNAL_ENGAGEMENT_CEILING = "ExternalEngagementCeiling"

    def holds(self, attrs: FrozenSet[str]) -> bool:
        if self is Threshold.BIDIRECTIONALITY_BARRIER:
            return {"mon", "ctl"} <= attrs
        if self is Threshold.SELF_MONITORING_THRESHOLD:
            return "sc:OI" in attrs
        return sum(a.startswith("sc:") for a in attrs) >= 2


@dataclass(frozen=True)
class ThresholdEvent:
    tag: Threshold
    step: int


def threshold_events(steps: Sequence[Scenario]) -> Tuple[ThresholdEvent, ...]:
    """Each threshold fires once, at the first step whose attributes satisfy it."""
    events = []
    for tag in Threshold:
        for i, s in enumerate(steps):
            if tag.holds(attributes_of(s)):
                events.append(ThresholdEvent(tag, i))
                break
    return tuple(sorted(events, key=lambda e: (e.step, list(Threshold).index(e.tag))))


@dataclass(frozen=True)
class Trajectory:
    name: str
    steps: Tuple[Scenario, ...]
    deltas: Tuple[Delta, ...]
    events: Tuple[ThresholdEvent, ...]

    @property
    def thresholds(self) -> Tuple[Tuple[ThresholdEvent, ...], ...]:
        return tuple(tuple(e for e in self.events if e.step == i) for i in range(len(self.steps)))

    @property
    def labels(self) -> Tuple[Optional[str], ...]:
        return tuple(s.label for s in self.steps)

    @property
    def step_distances(self) -> Tuple[int, ...]:
        return tuple(len(d.gained) + len(d.lost) for d in self.deltas)

    def event_at(self, tag: Threshold) -> Optional[int]:
        for e in self.events:
            if e.tag is tag:
                return e.step
        return None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "steps": [scenario_to_dict(s) for s in self.steps],
            "deltas": [d.to_dict() for d in self.deltas],
            "step_distances": list(self.step_distances),
            "thresholds": [{"tag": e.tag.value, "step": e.step, "label": self.steps[e.step].label}
                           for e in self.events],
            "monotone": is_monotone(self)[0],
        }


def make_trajectory(name: str, steps: Sequence[Scenario]) -> Trajectory:
    steps = tuple(steps)
    if not steps:
        raise ValueError("a trajectory needs at least one step")
    deltas = tuple(delta(a, b) for a, b in zip(steps, steps[1:]))
    return Trajectory(name, steps, deltas, threshold_events(steps))


def is_monotone(t: Trajectory) -> Tuple[bool, List[Tuple[int, FrozenSet[str]]]]:
    """Accumulation check: the index reported is the step that lost attributes."""
    violations = [(i + 1, d.lost) for i, d in enumerate(t.deltas) if d.lost]
    return not violations, violations


def resolve(labels: Sequence[str], catalog: Optional[Catalog] = None) -> List[Scenario]:
    catalog = catalog or appendix2_catalog()
    return [catalog[label].scenario.with_label(label) for label in labels]


NAMED_PATHWAYS: Dict[str, Tuple[str, ...]] = {
    "mainstream-17": ("S1", "S7", "S17"),
    "mainstream-24": ("S1", "S7", "S24"),
    "specialist": ("S1", "S6", "S19"),
    "strategic": ("S3", "S13", "S24"),
    "fca-mainstream": ("S1", "S6", "S7", "S14", "S17"),
}


def named_trajectories() -> List[Trajectory]:
    return [make_trajectory(name, resolve(labels)) for name, labels in NAMED_PATHWAYS.items()]


def named_trajectory(name: str) -> Trajectory:
    if name not in NAMED_PATHWAYS:
        raise KeyError(f"unknown pathway {name!r}; known: {', '.join(NAMED_PATHWAYS)}")
    return make_trajectory(name, resolve(NAMED_PATHWAYS[name]))


# ----------------------------------------------------------- classification

@dataclass(frozen=True)
class TierDecision:
    tier: TierLabel
    rationale: str
    nearest: Tuple[str, ...]
    distance: int
    conflict: Tuple[Tuple[str, TierLabel], ...] = ()


@lru_cache(maxsize=None)
def _fitted(catalog: Catalog):
    from .estimators import ScenarioEncoder, TierClassifier  # sklearn is slow to import; defer it

    encoder = ScenarioEncoder().fit(catalog.scenarios)
    clf = TierClassifier(tie_break="lower").fit(encoder.transform(catalog.scenarios),
                                                [e.tier for e in catalog])
    return encoder, clf


def classify_tier(s: Scenario, catalog: Optional[Catalog] = None) -> TierDecision:
    """Exact catalog match, else Hamming nearest neighbour; ties go to the lower tier."""
    catalog = catalog or appendix2_catalog()
    encoder, clf = _fitted(catalog)
    x = encoder.transform([s])
    tier = TierLabel(clf.predict(x)[0])
    idx = clf.nearest(x)[0]
    distance = int(clf.distances(x)[0, idx[0]])
    entries = [catalog.entries[i] for i in idx]
    labels = tuple(e.label for e in entries)
    tiers = {e.tier for e in entries}
    conflict: Tuple[Tuple[str, TierLabel], ...] = ()
    if distance == 0:
        if len(tiers) > 1:
            conflict = tuple((e.label, e.tier) for e in entries)
            named = ", ".join(f"{e.label}: {e.tier.title}" for e in entries)
            rationale = (f"configuration matches {len(entries)} catalog rows with different tiers ({named}); "
                         f"returning the lower tier {tier.title}")
        else:
            rationale = f"exact match {', '.join(labels)}"
    else:
        named = ", ".join(f"{e.label} ({e.tier.title})" for e in entries)
        rationale = f"nearest catalog scenario(s) at Hamming distance {distance}: {named}"
        if len(tiers) > 1:
            rationale += f"; tie broken toward the lower tier {tier.title}"
    return TierDecision(tier, rationale, labels, distance, conflict)


# ----------------------------------------------------------- shortest paths

def shortest_paths(start: Scenario, goal: Scenario, within: Sequence[Scenario],
                   k: int = DEFAULT_MAX_HOP) -> List[Trajectory]:
    """All minimum-hop paths where each hop changes at most ``k`` attributes."""
    nodes: List[Scenario] = []
    seen = set()
    for s in within:
        if s.key not in seen:
            seen.add(s.key)
            nodes.append(s)
    index = {s.key: i for i, s in enumerate(nodes)}
    if start.key not in index or goal.key not in index:
        raise ValueError("start and goal must both be members of `within`")
    src, dst = index[start.key], index[goal.key]
    masks = [sum(1 << b for b, a in enumerate(ATOMIC_ATTRIBUTES) if a in attributes_of(s)) for s in nodes]
    neighbours = [[j for j in range(len(nodes)) if j != i and bin(masks[i] ^ masks[j]).count("1") <= k]
                  for i in range(len(nodes))]
    dist = {src: 0}
    queue = deque([src])
    while queue:
        i = queue.popleft()
        for j in neighbours[i]:
            if j not in dist:
                dist[j] = dist[i] + 1
                queue.append(j)
    if dst not in dist:
        raise NoPath(f"no path with hops of at most {k} attribute changes")

    paths: List[List[int]] = []

    def extend(path: List[int]) -> None:
        i = path[-1]
        if i == dst:
            paths.append(list(path))
            return
        for j in neighbours[i]:
            if dist.get(j) == dist[i] + 1 and dist[j] <= dist[dst]:
                path.append(j)
                extend(path)
                path.pop()

    extend([src])
    # keep only paths that actually end at dst with minimal length
    paths = [p for p in paths if len(p) == dist[dst] + 1]
    return [make_trajectory("path", [nodes[i] for i in p]) for p in paths]


def admits(t: Trajectory, k: int) -> bool:
    return all(d <= k for d in t.step_distances)


# ------------------------------------------------------------------ reports

def trajectories_to_json(trajectories: Sequence[Trajectory]) -> str:
    return json.dumps([t.to_dict() for t in trajectories], indent=2) + "\n"


def _label(s: Scenario, unicode: bool) -> str:
    return s.label or format_scenario(s, unicode=unicode)


def trajectory_table(t: Trajectory, unicode: bool = False) -> str:
    arrow = " → " if unicode else " -> "
    lines = [f"{t.name}: {arrow.join(_label(s, unicode) for s in t.steps)}"]
    for i, d in enumerate(t.deltas):
        gained = ", ".join(sorted(d.gained, key=ATOMIC_ATTRIBUTES.index)) or "-"
        lost = ", ".join(sorted(d.lost, key=ATOMIC_ATTRIBUTES.index)) or "-"
        lines.append(f"  step {i + 1} {_label(t.steps[i], unicode)}{arrow}{_label(t.steps[i + 1], unicode)}: "
                     f"+[{gained}] -[{lost}] (distance {t.step_distances[i]})")
    for e in t.events:
        lines.append(f"  threshold {e.tag.value} at step {e.step} ({_label(t.steps[e.step], unicode)})")
    ok, violations = is_monotone(t)
    lines.append("  monotone: yes" if ok else
                 "  monotone: no (" + "; ".join(f"step {i} lost {', '.join(sorted(lost))}"
                                                for i, lost in violations) + ")")
    return "\n".join(lines) + "\n"
