"""Checks of the published lattice findings against the rebuilt catalog context.

Each finding is expressed as a concrete query (an implication, a trajectory
check or a correlation) and reported with its counterexamples; nothing here
is hard-coded to agree with the published claim.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .enumeration import Catalog, appendix2_catalog
from .fca import FormalContext, Implication, build_context, verify_implication
from .model import attributes_of, derived_attributes
from .trajectory import is_monotone, named_trajectory


@dataclass(frozen=True)
class FindingCheck:
    number: int
    name: str
    query: str
    holds: Optional[bool]
    counterexamples: Tuple[str, ...] = ()
    value: Optional[float] = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "number": self.number,
            "name": self.name,
            "query": self.query,
            "holds": self.holds,
            "counterexamples": list(self.counterexamples),
            "value": self.value,
            "note": self.note,
        }


def shortcut_bidirectional_correlation(catalog: Catalog) -> float:
    counts, bidir = [], []
    for e in catalog:
        attrs = attributes_of(e.scenario)
        counts.append(sum(a.startswith("sc:") for a in attrs))
        bidir.append(int("bidirectional" in derived_attributes(attrs)))
    if np.std(counts) == 0 or np.std(bidir) == 0:
        return float("nan")
    return float(np.corrcoef(counts, bidir)[0, 1])


def check_findings(catalog: Optional[Catalog] = None,
                   ctx: Optional[FormalContext] = None) -> List[FindingCheck]:
    catalog = catalog or appendix2_catalog()
    ctx = ctx or build_context(catalog)
    out = []

    beyond_s1 = [g for g in ctx.objects if g != "S1"]
    imp = Implication([], ["sc:OI"])
    holds, bad = verify_implication(ctx, imp, beyond_s1)
    out.append(FindingCheck(1, "self-monitoring gateway", f"{imp} on all objects except S1", holds, bad,
                            note="rows carrying F->I without O->I break the implication" if bad else ""))

    imp = Implication(["tier:expert"], ["bidirectional"])
    holds, bad = verify_implication(ctx, imp)
    out.append(FindingCheck(
        2, "multiple expert pathways", str(imp), holds, bad,
        note="expert rows without bidirectional integration are alternative routes" if bad else ""))

    t = named_trajectory("fca-mainstream")
    ok, violations = is_monotone(t)
    bad = tuple(f"{t.steps[i - 1].label}->{t.steps[i].label} lost {','.join(sorted(lost))}"
                for i, lost in violations)
    out.append(FindingCheck(3, "accumulation along the mainstream path",
                            "every step of " + "->".join(t.labels) + " only gains attributes", ok, bad))

    imp = Implication(["bidirectional", "sc:OE", "sc:OI", "sc:FI"], ["parallel-entry"])
    holds, bad = verify_implication(ctx, imp)
    out.append(FindingCheck(4, "parallel entry as unlocking threshold", str(imp), holds, bad))

    r = shortcut_bidirectional_correlation(catalog)
    out.append(FindingCheck(5, "architecture/connectivity trade-off",
                            "Pearson correlation of shortcut count with bidirectional", None, (), round(r, 6),
                            note="no quantitative target; a negative value would indicate a trade-off"))
    return out


def findings_table(checks: List[FindingCheck]) -> str:
    lines = []
    for c in checks:
        verdict = {True: "holds", False: "fails", None: "report"}[c.holds]
        line = f"{c.number}. {c.name}: {verdict} - {c.query}"
        if c.value is not None:
            line += f" = {c.value:+.4f}"
        lines.append(line)
        if c.counterexamples:
            lines.append(f"   counterexamples: {', '.join(c.counterexamples)}")
        if c.note:
            lines.append(f"   {c.note}")
    return "\n".join(lines) + "\n"
