"""The full scenario space and the two embedded catalogs."""
from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .model import ARRANGEMENTS, NODE_SETS, Scenario, sort_nodes, sort_shortcuts
from .notation import NotationStyle, format_scenario, topology_id, topology_shortcuts


class TierLabel(str, enum.Enum):
    NOVICE = "novice"
    DEVELOPING = "developing"
    EXPERT = "expert"

    @property
    def rank(self) -> int:
        return list(TierLabel).index(self)

    @property
    def title(self) -> str:
        return {"novice": "Novice", "developing": "Developing", "expert": "ExpertAdaptive"}[self.value]


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    scenario: Scenario
    notation: str = ""
    tier: Optional[TierLabel] = None
    description: str = ""
    reference: str = ""


@dataclass(frozen=True)
class Catalog:
    name: str
    entries: Tuple[CatalogEntry, ...]

    def __post_init__(self):
        labels = [e.label for e in self.entries]
        dupes = sorted({x for x in labels if labels.count(x) > 1})
        if dupes:
            raise ValueError(f"duplicate labels in catalog {self.name!r}: {dupes}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, label: str) -> CatalogEntry:
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(label)

    @property
    def scenarios(self) -> List[Scenario]:
        return [e.scenario for e in self.entries]

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(e.label for e in self.entries)

    def keys(self) -> frozenset:
        return frozenset(e.scenario.key for e in self.entries)

    def tier_counts(self) -> Dict[TierLabel, int]:
        counts = {t: 0 for t in TierLabel}
        for e in self.entries:
            if e.tier is not None:
                counts[e.tier] += 1
        return counts


def enumerate_space() -> List[Scenario]:
    """All 216 configurations in (entry, internal, exit, topology id) order."""
    return list(_space())


@lru_cache(maxsize=None)
def _space() -> Tuple[Scenario, ...]:
    return tuple(
        Scenario(entry, internal, exit_, topology_shortcuts(tid))
        for entry, internal, exit_, tid in itertools.product(NODE_SETS, ARRANGEMENTS, NODE_SETS, range(1, 9))
    )


def find_duplicates(catalog: Iterable[CatalogEntry]) -> List[Tuple[str, ...]]:
    """Groups (size >= 2) of labels whose scenarios share one canonical key."""
    groups: Dict[tuple, List[str]] = {}
    for entry in catalog:
        groups.setdefault(entry.scenario.key, []).append(entry.label)
    return [tuple(labels) for labels in groups.values() if len(labels) > 1]


# ------------------------------------------------------------ serialization

def scenario_to_dict(s: Scenario, unicode: bool = False) -> dict:
    out = {}
    if s.label:
        out["label"] = s.label
    out.update(
        entry=[n.value for n in sort_nodes(s.entry)],
        internal=s.internal.value,
        exit=[n.value for n in sort_nodes(s.exit)],
        shortcuts=[sc.value for sc in sort_shortcuts(s.shortcuts)],
        topology=topology_id(s.shortcuts),
        notation=format_scenario(s, NotationStyle.BRACKETED, unicode=unicode),
    )
    return out


def scenario_from_dict(d: dict) -> Scenario:
    return Scenario(d["entry"], d["internal"], d["exit"], d.get("shortcuts", ()), d.get("label"))


def entry_to_dict(e: CatalogEntry) -> dict:
    row = {"label": e.label, "notation": e.notation}
    d = scenario_to_dict(e.scenario)
    for k in ("entry", "internal", "exit", "shortcuts"):
        row[k] = d[k]
    if e.tier is not None:
        row["tier"] = e.tier.value
    row["description"] = e.description
    row["reference"] = e.reference
    return row


def entry_from_dict(row: dict) -> CatalogEntry:
    return CatalogEntry(
        label=row["label"],
        scenario=scenario_from_dict(row),
        notation=row.get("notation", ""),
        tier=TierLabel(row["tier"]) if row.get("tier") else None,
        description=row.get("description", ""),
        reference=row.get("reference", ""),
    )


def load_catalog(rows: Sequence[dict], name: str) -> Catalog:
    return Catalog(name, tuple(entry_from_dict(r) for r in rows))


def catalog_to_json(catalog: Catalog) -> str:
    return json.dumps([entry_to_dict(e) for e in catalog], indent=2, ensure_ascii=False) + "\n"


def _data(name: str) -> list:
    return json.loads(resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def appendix2_catalog() -> Catalog:
    """The 24 labelled priority scenarios S1..S24 with tiers."""
    return load_catalog(_data("appendix2.json"), "appendix2")


@lru_cache(maxsize=None)
def table1_catalog() -> Catalog:
    """The five literature scenarios T1..T5 (no tiers)."""
    return load_catalog(_data("table1.json"), "table1")


def get_catalog(name: str) -> Catalog:
    name = name.lower().replace("-", "").replace("_", "")
    if name in ("appendix2", "a2", "priority"):
        return appendix2_catalog()
    if name in ("table1", "t1", "literature"):
        return table1_catalog()
    raise KeyError(f"unknown catalog {name!r}; expected 'appendix2' or 'table1'")
