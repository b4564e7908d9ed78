from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .concepts import FormalConcept


class IncompleteConceptSet(ValueError):
    pass


@dataclass(frozen=True)
class ConceptLattice:
    concepts: Tuple[FormalConcept, ...]
    covers: Tuple[Tuple[int, int], ...]  # (lower, upper) index pairs

    @property
    def top(self) -> int:
        return max(range(len(self.concepts)), key=lambda i: len(self.concepts[i].extent))

    @property
    def bottom(self) -> int:
        return max(range(len(self.concepts)), key=lambda i: len(self.concepts[i].intent))

    def upper_covers(self, i: int) -> List[int]:
        return [u for lo, u in self.covers if lo == i]

    def lower_covers(self, i: int) -> List[int]:
        return [lo for lo, u in self.covers if u == i]

    def index_of_extent(self, extent) -> int:
        extent = frozenset(extent)
        for i, c in enumerate(self.concepts):
            if c.extent == extent:
                return i
        raise KeyError(extent)

    def index_of_intent(self, intent) -> int:
        intent = frozenset(intent)
        for i, c in enumerate(self.concepts):
            if c.intent == intent:
                return i
        raise KeyError(intent)

    def meet(self, i: int, j: int) -> int:
        return self.index_of_extent(self.concepts[i].extent & self.concepts[j].extent)

    def join(self, i: int, j: int) -> int:
        return self.index_of_intent(self.concepts[i].intent & self.concepts[j].intent)


def build_lattice(concepts: Sequence[FormalConcept]) -> ConceptLattice:
    """Hasse diagram of ``concepts`` ordered by extent inclusion.

    Raises IncompleteConceptSet when some pair lacks its meet or join, i.e.
    the input is not the full concept set of a context.
    """
    concepts = tuple(concepts)
    if not concepts:
        raise IncompleteConceptSet("a concept lattice has at least one concept")
    objects = sorted(set().union(*(c.extent for c in concepts)))
    attrs = sorted(set().union(*(c.intent for c in concepts)))
    obit = {g: 1 << i for i, g in enumerate(objects)}
    abit = {a: 1 << i for i, a in enumerate(attrs)}
    ext = [sum(obit[g] for g in c.extent) for c in concepts]
    ints = [sum(abit[a] for a in c.intent) for c in concepts]
    if len(set(ext)) != len(ext) or len(set(ints)) != len(ints):
        raise IncompleteConceptSet("duplicate concepts")
    ext_set, int_set = set(ext), set(ints)
    n = len(concepts)
    for i in range(n):
        for j in range(i + 1, n):
            if ext[i] & ext[j] not in ext_set:
                raise IncompleteConceptSet(f"meet of concepts {i} and {j} is missing")
            if ints[i] & ints[j] not in int_set:
                raise IncompleteConceptSet(f"join of concepts {i} and {j} is missing")
    covers = []
    for i in range(n):
        e = ext[i]
        uppers = [j for j in range(n) if ext[j] != e and ext[j] & e == e]
        for j in uppers:
            f = ext[j]
            if not any(ext[k] != f and ext[k] & f == ext[k] for k in uppers):
                covers.append((i, j))
    return ConceptLattice(concepts, tuple(covers))
