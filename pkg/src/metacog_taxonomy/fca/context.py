from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from ..enumeration import Catalog, CatalogEntry
from ..model import ATOMIC_ATTRIBUTES, DERIVED_ATTRIBUTES, Scenario, attributes_of, derived_attributes

TIER_ATTRIBUTES: Tuple[str, ...] = ("tier:novice", "tier:developing", "tier:expert")


class DuplicateLabel(ValueError):
    pass


class UnknownAttribute(KeyError):
    pass


@dataclass(frozen=True)
class FormalContext:
    """Objects x attributes incidence table.

    Incidence is kept as Python ints used as bitsets: ``_rows[g]`` has bit
    ``j`` set when object ``g`` has attribute ``j``; ``_cols[j]`` likewise
    over objects.
    """

    objects: Tuple[str, ...]
    attributes: Tuple[str, ...]
    incidence: Tuple[Tuple[bool, ...], ...]
    _rows: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _cols: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        objects, attributes = tuple(self.objects), tuple(self.attributes)
        incidence = tuple(tuple(bool(x) for x in row) for row in self.incidence)
        if len(set(objects)) != len(objects):
            raise DuplicateLabel("duplicate object ids")
        if len(set(attributes)) != len(attributes):
            raise ValueError("duplicate attribute names")
        if len(incidence) != len(objects) or any(len(r) != len(attributes) for r in incidence):
            raise ValueError("incidence matrix does not match objects x attributes")
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "incidence", incidence)
        rows = tuple(sum(1 << j for j, x in enumerate(row) if x) for row in incidence)
        cols = tuple(sum(1 << g for g, row in enumerate(incidence) if row[j]) for j in range(len(attributes)))
        object.__setattr__(self, "_rows", rows)
        object.__setattr__(self, "_cols", cols)

    @classmethod
    def from_sets(cls, rows: Sequence[Tuple[str, Iterable[str]]],
                  attributes: Optional[Sequence[str]] = None) -> "FormalContext":
        rows = [(g, frozenset(attrs)) for g, attrs in rows]
        if attributes is None:
            seen: Dict[str, None] = {}
            for _, attrs in rows:
                for a in sorted(attrs):
                    seen.setdefault(a, None)
            attributes = list(seen)
        return cls(tuple(g for g, _ in rows), tuple(attributes),
                   tuple(tuple(a in attrs for a in attributes) for _, attrs in rows))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.objects), len(self.attributes)

    # ---- bitset level
    @property
    def all_objects_mask(self) -> int:
        return (1 << len(self.objects)) - 1

    @property
    def all_attributes_mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def extent_mask(self, attr_mask: int) -> int:
        ext = self.all_objects_mask
        j = 0
        while attr_mask:
            if attr_mask & 1:
                ext &= self._cols[j]
            attr_mask >>= 1
            j += 1
        return ext

    def intent_mask(self, obj_mask: int) -> int:
        intent = self.all_attributes_mask
        g = 0
        while obj_mask:
            if obj_mask & 1:
                intent &= self._rows[g]
            obj_mask >>= 1
            g += 1
        return intent

    def close_mask(self, attr_mask: int) -> int:
        return self.intent_mask(self.extent_mask(attr_mask))

    def attr_mask(self, attrs: Iterable[str]) -> int:
        index = {a: j for j, a in enumerate(self.attributes)}
        mask = 0
        for a in attrs:
            if a not in index:
                raise UnknownAttribute(a)
            mask |= 1 << index[a]
        return mask

    def obj_mask(self, objs: Iterable[str]) -> int:
        index = {g: i for i, g in enumerate(self.objects)}
        mask = 0
        for g in objs:
            if g not in index:
                raise KeyError(g)
            mask |= 1 << index[g]
        return mask

    def attrs_of_mask(self, mask: int) -> FrozenSet[str]:
        return frozenset(a for j, a in enumerate(self.attributes) if mask >> j & 1)

    def objs_of_mask(self, mask: int) -> FrozenSet[str]:
        return frozenset(g for i, g in enumerate(self.objects) if mask >> i & 1)

    # ---- set level derivation operators
    def extent(self, attrs: Iterable[str]) -> FrozenSet[str]:
        """Objects having every attribute in ``attrs``."""
        return self.objs_of_mask(self.extent_mask(self.attr_mask(attrs)))

    def intent(self, objs: Iterable[str]) -> FrozenSet[str]:
        """Attributes shared by every object in ``objs``."""
        return self.attrs_of_mask(self.intent_mask(self.obj_mask(objs)))

    def closure(self, attrs: Iterable[str]) -> FrozenSet[str]:
        return self.attrs_of_mask(self.close_mask(self.attr_mask(attrs)))

    def row(self, obj: str) -> FrozenSet[str]:
        return self.attrs_of_mask(self._rows[self.objects.index(obj)])

    def restrict(self, objects: Iterable[str]) -> "FormalContext":
        keep = set(objects)
        idx = [i for i, g in enumerate(self.objects) if g in keep]
        return FormalContext(tuple(self.objects[i] for i in idx), self.attributes,
                             tuple(self.incidence[i] for i in idx))

    def clarify(self, sep: str = "|") -> "FormalContext":
        """Merge objects with identical rows; merged ids are joined with ``sep``."""
        groups: Dict[int, List[int]] = {}
        for i, r in enumerate(self._rows):
            groups.setdefault(r, []).append(i)
        objs, rows = [], []
        for members in groups.values():
            objs.append(sep.join(self.objects[i] for i in members))
            rows.append(self.incidence[members[0]])
        return FormalContext(tuple(objs), self.attributes, tuple(rows))


def default_schema(derived: bool = True, tiers: bool = True) -> Tuple[str, ...]:
    schema = ATOMIC_ATTRIBUTES
    if derived:
        schema += DERIVED_ATTRIBUTES
    if tiers:
        schema += TIER_ATTRIBUTES
    return schema


def scenario_attributes(s: Scenario, tier=None, derived: bool = True) -> FrozenSet[str]:
    attrs = attributes_of(s)
    if derived:
        attrs |= derived_attributes(attrs)
    if tier is not None:
        attrs |= {f"tier:{getattr(tier, 'value', tier)}"}
    return attrs


def build_context(scenarios: Union[Catalog, Sequence[Union[CatalogEntry, Scenario]]],
                  schema: Optional[Sequence[str]] = None, derived: bool = True,
                  tiers: Optional[bool] = None) -> FormalContext:
    """Scenario x attribute context.

    Catalog entries contribute their tier flags; bare scenarios are labelled by
    their ``label`` (or position). With no explicit ``schema`` the nine atomic
    attributes are used, plus the derived ones and, when ``tiers`` (default:
    whenever any tier is known), the three tier flags.
    """
    items = list(scenarios)
    rows = []
    any_tier = False
    for i, item in enumerate(items):
        if isinstance(item, CatalogEntry):
            label, scenario, tier = item.label, item.scenario, item.tier
        else:
            label, scenario, tier = item.label or f"#{i}", item, None
        any_tier = any_tier or tier is not None
        rows.append((label, scenario_attributes(scenario, tier, derived)))
    if schema is None:
        if tiers is None:
            tiers = any_tier or isinstance(scenarios, Catalog) or not items
        schema = default_schema(derived=derived, tiers=tiers)
    labels = [g for g, _ in rows]
    dupes = sorted({g for g in labels if labels.count(g) > 1})
    if dupes:
        raise DuplicateLabel(f"duplicate object labels: {dupes}")
    return FormalContext.from_sets(rows, schema)
