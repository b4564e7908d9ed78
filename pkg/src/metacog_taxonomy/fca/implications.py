from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .concepts import next_closure
from .context import FormalContext, UnknownAttribute


@dataclass(frozen=True)
class Implication:
    premise: FrozenSet[str]
    conclusion: FrozenSet[str]

    def __init__(self, premise: Iterable[str], conclusion: Iterable[str]):
        object.__setattr__(self, "premise", frozenset(premise))
        object.__setattr__(self, "conclusion", frozenset(conclusion))

    def __str__(self) -> str:
        lhs = ", ".join(sorted(self.premise)) or "{}"
        return f"{lhs} => {', '.join(sorted(self.conclusion))}"

    def to_dict(self) -> dict:
        return {"premise": sorted(self.premise), "conclusion": sorted(self.conclusion)}


def _pseudo_closure(x: int, basis: Sequence[Tuple[int, int]]) -> int:
    # apply only implications whose premise is a proper subset of x
    changed = True
    while changed:
        changed = False
        for p, c in basis:
            if p & x == p and p != x and c & ~x:
                x |= c
                changed = True
    return x


def implication_basis(ctx: FormalContext) -> List[Implication]:
    """Canonical (Duquenne-Guigues) basis, premises in lectic order.

    Ganter's algorithm: walk the sets closed under the basis-so-far in
    lectic order; every such set that is not an intent is a pseudo-intent.
    """
    n = len(ctx.attributes)
    basis: List[Tuple[int, int]] = []
    a = 0
    while True:
        closed = ctx.close_mask(a)
        if closed != a:
            basis.append((a, closed))
        if a == ctx.all_attributes_mask:
            break
        a = next_closure(a, n, lambda x: _pseudo_closure(x, basis))
        if a is None:
            break
    return [Implication(ctx.attrs_of_mask(p), ctx.attrs_of_mask(c & ~p)) for p, c in basis]


def closure_under(implications: Iterable[Implication], attrs: Iterable[str]) -> FrozenSet[str]:
    """Smallest superset of ``attrs`` respecting every implication."""
    x = set(attrs)
    implications = list(implications)
    changed = True
    while changed:
        changed = False
        for imp in implications:
            if imp.premise <= x and not imp.conclusion <= x:
                x |= imp.conclusion
                changed = True
    return frozenset(x)


def entails(implications: Iterable[Implication], imp: Implication) -> bool:
    return imp.conclusion <= closure_under(implications, imp.premise)


def verify_implication(ctx: FormalContext, imp: Implication,
                       objects: Optional[Iterable[str]] = None) -> Tuple[bool, Tuple[str, ...]]:
    """Whether ``imp`` holds, and the objects violating it (context order)."""
    for a in imp.premise | imp.conclusion:
        if a not in ctx.attributes:
            raise UnknownAttribute(a)
    scope = ctx if objects is None else ctx.restrict(objects)
    having = scope.extent_mask(scope.attr_mask(imp.premise))
    satisfying = scope.extent_mask(scope.attr_mask(imp.premise | imp.conclusion))
    bad = having & ~satisfying
    counter = tuple(g for i, g in enumerate(scope.objects) if bad >> i & 1)
    return not counter, counter
