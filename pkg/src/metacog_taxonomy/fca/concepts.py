from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, FrozenSet, List, Optional

from .context import FormalContext


@dataclass(frozen=True)
class FormalConcept:
    extent: FrozenSet[str]
    intent: FrozenSet[str]

    def __le__(self, other: "FormalConcept") -> bool:
        return self.extent <= other.extent

    def __lt__(self, other: "FormalConcept") -> bool:
        return self.extent < other.extent

    def to_dict(self) -> dict:
        return {"extent": sorted(self.extent), "intent": sorted(self.intent)}


def next_closure(current: int, n: int, close: Callable[[int], int]) -> Optional[int]:
    """The lectically next closed set after ``current`` (bit j = j-th attribute)."""
    a = current
    for i in reversed(range(n)):
        bit = 1 << i
        if a & bit:
            a &= ~bit
        else:
            b = close(a | bit)
            if not (b & ~a) & (bit - 1):
                return b
    return None


def intents_lectic(ctx: FormalContext) -> List[int]:
    n = len(ctx.attributes)
    a = ctx.close_mask(0)
    out = [a]
    while a != ctx.all_attributes_mask:
        a = next_closure(a, n, ctx.close_mask)
        if a is None:
            break
        out.append(a)
    return out


def all_concepts(ctx: FormalContext) -> List[FormalConcept]:
    """Every formal concept of ``ctx``, in lectic order of intents."""
    return [
        FormalConcept(ctx.objs_of_mask(ctx.extent_mask(a)), ctx.attrs_of_mask(a))
        for a in intents_lectic(ctx)
    ]
