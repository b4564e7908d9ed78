"""Declarative four-stage filter pipeline with per-stage audit reports.

Rules are named predicates from a closed vocabulary, grouped into stages 1..4.
Within a stage the first rule that fires names the elimination. A rule may
carry an ``unless`` predicate; scenarios it protects are kept and listed as
exemptions in the stage report, so the override stays visible.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import yaml

from .enumeration import appendix2_catalog, scenario_to_dict
from .model import (
    ATOMIC_ATTRIBUTES,
    DERIVED_ATTRIBUTES,
    Arrangement,
    InternalNode,
    Scenario,
    attributes_of,
    cross_cluster_edges,
    derived_attributes,
    internal_edges,
    internal_reach,
    reachable,
)
from .notation import format_scenario

STAGES = (1, 2, 3, 4)
PUBLISHED_TARGETS = {1: 178, 2: 141, 3: 80, 4: 24}


class ConfigError(ValueError):
    def __init__(self, message: str, source: str = "<config>", line: Optional[int] = None):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")


class EmptyRuleSet(ConfigError):
    pass


class UnknownPredicate(ConfigError):
    pass


class Action(str, enum.Enum):
    DROP_IF_TRUE = "drop-if-true"
    KEEP_ONLY_IF_TRUE = "keep-only-if-true"


# ---------------------------------------------------------------- predicates

def connected_flow(s: Scenario) -> bool:
    """Every exit node is reachable inside the cluster from some entry node."""
    reached = set()
    for e in s.entry:
        reached |= internal_reach(s, e)
    return s.exit <= reached


def process_on_io_path(s: Scenario, strictness: str = "strict") -> bool:
    """Whether P sits on some I -> ... -> O walk over cross-cluster and internal edges.

    ``strictness="named-only"`` only rejects the explicitly named
    input->S, S->output, S->P family.
    """
    if strictness == "named-only":
        return not (
            s.entry == {InternalNode.S}
            and s.exit == {InternalNode.S}
            and s.internal is Arrangement.TOP_DOWN
        )
    if strictness != "strict":
        raise ValueError(f"unknown strictness {strictness!r}")
    edges = cross_cluster_edges(s) | internal_edges(s)
    return "P" in reachable(edges, "I") and "O" in reachable(edges, "P")


def filter2_integration_without_feedback(s: Scenario) -> bool:
    return s.internal is Arrangement.BIDIRECTIONAL and not s.shortcuts


def micro_sequence_partner(s: Scenario) -> Optional[Scenario]:
    """The parallel-entry twin of a P-entry scenario with P->S active, if any."""
    if s.entry == {InternalNode.P} and "mon" in attributes_of(s):
        return Scenario({InternalNode.P, InternalNode.S}, s.internal, s.exit, s.shortcuts)
    return None


def filter3_representative(s: Scenario, space: Sequence[Scenario]) -> bool:
    partner = micro_sequence_partner(s)
    if partner is None:
        return True
    return partner.key not in {x.key for x in space}


def filter4_priority(s: Scenario) -> bool:
    return s.key in appendix2_catalog().keys()


def attribute_clause(s: Scenario, all_of=(), any_of=(), none_of=()) -> bool:
    attrs = attributes_of(s)
    attrs = attrs | derived_attributes(attrs)
    if any_of and not attrs & set(any_of):
        return False
    return set(all_of) <= attrs and not attrs & set(none_of)


@dataclass(frozen=True)
class _Predicate:
    fn: Callable
    params: Tuple[str, ...] = ()
    needs_space: bool = False


PREDICATES: Dict[str, _Predicate] = {
    "exit-reachable-from-entry": _Predicate(lambda s, **_: connected_flow(s)),
    "process-on-io-path": _Predicate(lambda s, strictness="strict", **_: process_on_io_path(s, strictness),
                                     ("strictness",)),
    "integrated-internal-with-baseline-topology": _Predicate(
        lambda s, **_: filter2_integration_without_feedback(s)),
    "micro-sequence-representative": _Predicate(
        lambda s, space=(), **_: filter3_representative(s, space), needs_space=True),
    "in-priority-catalog": _Predicate(lambda s, **_: filter4_priority(s)),
    "custom-attribute-clause": _Predicate(
        lambda s, all=(), any=(), none=(), **_: attribute_clause(s, all, any, none), ("all", "any", "none")),
}
_KNOWN_ATTRIBUTES = frozenset(ATOMIC_ATTRIBUTES) | frozenset(DERIVED_ATTRIBUTES)


@dataclass(frozen=True)
class FilterRule:
    name: str
    stage: int
    predicate: str
    action: Action = Action.KEEP_ONLY_IF_TRUE
    params: Tuple[Tuple[str, object], ...] = ()
    unless: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "action", Action(self.action))
        if isinstance(self.params, Mapping):
            object.__setattr__(self, "params", tuple(sorted(
                (k, tuple(v) if isinstance(v, list) else v) for k, v in self.params.items())))
        if self.stage not in STAGES:
            raise ConfigError(f"rule {self.name!r}: stage must be one of 1..4, got {self.stage!r}")
        for pred in (self.predicate, self.unless):
            if pred is not None and pred not in PREDICATES:
                raise UnknownPredicate(f"rule {self.name!r}: unknown predicate {pred!r}")
        allowed = PREDICATES[self.predicate].params
        for key, value in self.params:
            if key not in allowed:
                raise ConfigError(f"rule {self.name!r}: predicate {self.predicate!r} takes no parameter {key!r}")
            if self.predicate == "custom-attribute-clause":
                bad = set(value) - _KNOWN_ATTRIBUTES
                if bad:
                    raise ConfigError(f"rule {self.name!r}: unknown attributes {sorted(bad)}")
        if self.predicate == "process-on-io-path" and dict(self.params).get("strictness", "strict") not in (
                "strict", "named-only"):
            raise ConfigError(f"rule {self.name!r}: strictness must be 'strict' or 'named-only'")

    def _eval(self, predicate: str, s: Scenario, space) -> bool:
        params = dict(self.params) if predicate == self.predicate else {}
        return bool(PREDICATES[predicate].fn(s, space=space, **params))

    def fires(self, s: Scenario, space: Sequence[Scenario] = ()) -> bool:
        """True when this rule, on its own, would eliminate ``s``."""
        value = self._eval(self.predicate, s, space)
        return value if self.action is Action.DROP_IF_TRUE else not value

    def exempts(self, s: Scenario, space: Sequence[Scenario] = ()) -> bool:
        return self.unless is not None and self._eval(self.unless, s, space)

    def to_dict(self) -> dict:
        d = {"name": self.name, "stage": self.stage, "predicate": self.predicate, "action": self.action.value}
        if self.params:
            d["params"] = {k: list(v) if isinstance(v, tuple) else v for k, v in self.params}
        if self.unless:
            d["unless"] = self.unless
        return d


@dataclass(frozen=True)
class StageTarget:
    count: int
    basis: str = "keys"  # "keys" or "labels"


@dataclass(frozen=True)
class PipelineConfig:
    rules: Tuple[FilterRule, ...]
    targets: Mapping[int, StageTarget] = field(default_factory=dict)
    name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "targets", {
            int(k): v if isinstance(v, StageTarget) else StageTarget(int(v)) for k, v in dict(self.targets).items()})
        stages = [r.stage for r in self.rules]
        if stages != sorted(stages):
            raise ConfigError("rules must appear in nondecreasing stage order")
        names = [r.name for r in self.rules]
        dupes = sorted({n for n in names if names.count(n) > 1})
        if dupes:
            raise ConfigError(f"duplicate rule names: {dupes}")

    def only(self, *names: str) -> "PipelineConfig":
        missing = set(names) - {r.name for r in self.rules}
        if missing:
            raise ConfigError(f"no rule named {sorted(missing)}")
        return replace(self, rules=tuple(r for r in self.rules if r.name in names))

    def without(self, *names: str) -> "PipelineConfig":
        return replace(self, rules=tuple(r for r in self.rules if r.name not in names))

    def without_exemptions(self) -> "PipelineConfig":
        return replace(self, rules=tuple(replace(r, unless=None) for r in self.rules))

    def with_params(self, predicate: str, **params) -> "PipelineConfig":
        rules = []
        for r in self.rules:
            if r.predicate == predicate:
                r = replace(r, params=tuple(sorted({**dict(r.params), **params}.items())))
            rules.append(r)
        return replace(self, rules=tuple(rules))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "targets": {k: {"count": t.count, "basis": t.basis} for k, t in sorted(self.targets.items())},
            "rules": [r.to_dict() for r in self.rules],
        }


@dataclass(frozen=True)
class StageReport:
    stage: int
    input_count: int
    output_count: int
    eliminations: Tuple[Tuple[Scenario, str], ...] = ()
    exemptions: Tuple[Tuple[Scenario, str], ...] = ()
    published_target: Optional[int] = None
    target_basis: str = "keys"
    output_labels: Optional[int] = None

    @property
    def matches_published_target(self) -> bool:
        if self.published_target is None:
            return False
        observed = self.output_labels if self.target_basis == "labels" else self.output_count
        return observed == self.published_target

    def eliminated_by(self, rule: str) -> List[Scenario]:
        return [s for s, r in self.eliminations if r == rule]

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "input_count": self.input_count,
            "output_count": self.output_count,
            "output_labels": self.output_labels,
            "published_target": self.published_target,
            "target_basis": self.target_basis,
            "matches_published_target": self.matches_published_target,
            "eliminations": [{"rule": r, "scenario": scenario_to_dict(s)} for s, r in self.eliminations],
            "exemptions": [{"rule": r, "scenario": scenario_to_dict(s)} for s, r in self.exemptions],
        }


class PipelineResult(NamedTuple):
    final: List[Scenario]
    reports: List[StageReport]


def run_pipeline(cfg: PipelineConfig, space: Sequence[Scenario]) -> PipelineResult:
    if not cfg.rules:
        raise EmptyRuleSet("pipeline configuration has no rules")
    keys = [s.key for s in space]
    if len(set(keys)) != len(keys):
        raise ValueError("input space contains duplicate canonical keys")
    catalog = appendix2_catalog()
    current = list(space)
    reports = []
    for stage in STAGES:
        rules = [r for r in cfg.rules if r.stage == stage]
        frozen_space = tuple(current)
        kept, eliminated, exempted = [], [], []
        for s in current:
            reason = None
            for rule in rules:
                if rule.fires(s, frozen_space):
                    if rule.exempts(s, frozen_space):
                        exempted.append((s, rule.name))
                        continue
                    reason = rule.name
                    break
            if reason is None:
                kept.append(s)
            else:
                eliminated.append((s, reason))
        target = cfg.targets.get(stage)
        kept_keys = {s.key for s in kept}
        reports.append(StageReport(
            stage=stage,
            input_count=len(current),
            output_count=len(kept),
            eliminations=tuple(eliminated),
            exemptions=tuple(exempted),
            published_target=target.count if target else None,
            target_basis=target.basis if target else "keys",
            output_labels=sum(1 for e in catalog if e.scenario.key in kept_keys),
        ))
        current = kept
    return PipelineResult(current, reports)


# ------------------------------------------------------------------- config

def _line_of(node) -> int:
    return node.start_mark.line + 1


def _plain(node):
    return yaml.safe_load(yaml.serialize(node))


def parse_config(text: str, source: str = "<config>") -> PipelineConfig:
    """Load a pipeline configuration from YAML text.

    Errors are raised as :class:`ConfigError` carrying the source and line.
    """
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"invalid YAML: {getattr(exc, 'problem', exc)}", source,
                          mark.line + 1 if mark else None) from None
    if root is None or not isinstance(root, yaml.MappingNode):
        raise ConfigError("configuration must be a mapping", source, _line_of(root) if root else 1)
    top = {k.value: v for k, v in root.value}
    unknown = set(top) - {"name", "targets", "rules"}
    if unknown:
        key = next(k for k, _ in root.value if k.value in unknown)
        raise ConfigError(f"unknown top-level key {key.value!r}", source, _line_of(key))
    rules_node = top.get("rules")
    if rules_node is None or not isinstance(rules_node, yaml.SequenceNode) or not rules_node.value:
        raise EmptyRuleSet("configuration has no rules", source, _line_of(rules_node) if rules_node else 1)
    rules = []
    for node in rules_node.value:
        if not isinstance(node, yaml.MappingNode):
            raise ConfigError("each rule must be a mapping", source, _line_of(node))
        raw = _plain(node)
        missing = {"name", "stage", "predicate"} - set(raw)
        if missing:
            raise ConfigError(f"rule is missing {sorted(missing)}", source, _line_of(node))
        extra = set(raw) - {"name", "stage", "predicate", "action", "params", "unless"}
        if extra:
            raise ConfigError(f"rule {raw['name']!r}: unknown keys {sorted(extra)}", source, _line_of(node))
        fields = {k.value: v for k, v in node.value}
        for key in ("predicate", "unless"):
            value = raw.get(key)
            if value is not None and value not in PREDICATES:
                raise UnknownPredicate(f"rule {raw['name']!r}: unknown predicate {value!r}", source,
                                       _line_of(fields[key]))
        if raw["stage"] not in STAGES:
            raise ConfigError(f"rule {raw['name']!r}: stage must be one of 1..4, got {raw['stage']!r}", source,
                              _line_of(fields["stage"]))
        try:
            rules.append(FilterRule(
                name=str(raw["name"]),
                stage=raw["stage"],
                predicate=raw["predicate"],
                action=raw.get("action", Action.KEEP_ONLY_IF_TRUE.value),
                params=raw.get("params") or {},
                unless=raw.get("unless"),
            ))
        except UnknownPredicate as exc:
            raise UnknownPredicate(str(exc).split(": ", 1)[1], source, _line_of(node)) from None
        except ConfigError as exc:
            raise ConfigError(str(exc).split(": ", 1)[1], source, _line_of(node)) from None
        except ValueError as exc:
            raise ConfigError(f"rule {raw['name']!r}: {exc}", source, _line_of(node)) from None
    targets = {}
    if "targets" in top:
        for k, v in top["targets"].value if isinstance(top["targets"], yaml.MappingNode) else ():
            value = _plain(v)
            try:
                stage = int(k.value)
                if isinstance(value, Mapping):
                    targets[stage] = StageTarget(int(value["count"]), str(value.get("basis", "keys")))
                else:
                    targets[stage] = StageTarget(int(value))
            except (KeyError, TypeError, ValueError):
                raise ConfigError(f"invalid target for stage {k.value!r}", source, _line_of(k)) from None
    name = _plain(top["name"]) if "name" in top else Path(source).stem
    try:
        return PipelineConfig(tuple(rules), targets, str(name))
    except ConfigError as exc:
        raise ConfigError(str(exc).split(": ", 1)[-1], source, _line_of(rules_node)) from None


def load_config(path: Union[str, Path]) -> PipelineConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    return parse_config(text, str(path))


def shipped_config_text() -> str:
    return resources.files(__package__).joinpath("data", "pipeline.yaml").read_text(encoding="utf-8")


def shipped_config() -> PipelineConfig:
    return parse_config(shipped_config_text(), "pipeline.yaml")


# ------------------------------------------------------------------ reports

def reports_to_json(result: PipelineResult) -> str:
    payload = {
        "final": [scenario_to_dict(s) for s in result.final],
        "final_count": len(result.final),
        "stages": [r.to_dict() for r in result.reports],
    }
    return json.dumps(payload, indent=2, sort_keys=False) + "\n"


def reports_table(result: PipelineResult, unicode: bool = False) -> str:
    lines = [f"{'stage':<6}{'in':>5}{'out':>6}{'dropped':>9}{'exempt':>8}{'target':>8}  match"]
    for r in result.reports:
        target = "-" if r.published_target is None else str(r.published_target)
        if r.target_basis == "labels" and r.published_target is not None:
            target += "*"
        match = "yes" if r.matches_published_target else "no"
        lines.append(f"{r.stage:<6}{r.input_count:>5}{r.output_count:>6}{len(r.eliminations):>9}"
                     f"{len(r.exemptions):>8}{target:>8}  {match}")
    lines.append("")
    for r in result.reports:
        counts: Dict[str, int] = {}
        for _, rule in r.eliminations:
            counts[rule] = counts.get(rule, 0) + 1
        for rule, n in counts.items():
            lines.append(f"stage {r.stage}: {rule} eliminated {n}")
        for s, rule in r.exemptions:
            lines.append(f"stage {r.stage}: {rule} exempted {format_scenario(s, unicode=unicode)}")
    if any(r.target_basis == "labels" for r in result.reports):
        lines.append("* target counts catalog labels, not distinct configurations")
    lines.append(f"final: {len(result.final)} scenarios")
    return "\n".join(lines) + "\n"
