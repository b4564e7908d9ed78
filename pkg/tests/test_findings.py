import numpy as np

from metacog_taxonomy import appendix2_catalog
from metacog_taxonomy.findings import check_findings, findings_table, shortcut_bidirectional_correlation
from metacog_taxonomy.model import attributes_of


def test_findings_outcomes():
    checks = {c.number: c for c in check_findings()}
    assert (checks[1].holds, checks[1].counterexamples) == (False, ("S2", "S4", "S5"))
    assert (checks[2].holds, checks[2].counterexamples) == (False, ("S19", "S20"))
    assert checks[3].holds is False and checks[3].counterexamples == ("S1->S6 lost sc:FI",)
    assert (checks[4].holds, checks[4].counterexamples) == (False, ("S22",))
    assert checks[5].holds is None


def test_correlation_against_direct_computation():
    rows = [attributes_of(e.scenario) for e in appendix2_catalog()]
    x = [sum(a.startswith("sc:") for a in r) for r in rows]
    y = [int({"mon", "ctl"} <= r) for r in rows]
    mx, my = np.mean(x), np.mean(y)
    r = sum((a - mx) * (b - my) for a, b in zip(x, y)) / np.sqrt(
        sum((a - mx) ** 2 for a in x) * sum((b - my) ** 2 for b in y))
    assert abs(shortcut_bidirectional_correlation(appendix2_catalog()) - r) < 1e-12


def test_table_lists_every_finding():
    text = findings_table(check_findings())
    assert [line[:2] for line in text.splitlines() if line[:1].isdigit()] == ["1.", "2.", "3.", "4.", "5."]
