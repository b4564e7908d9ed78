import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metacog_taxonomy import appendix2_catalog, enumerate_space, table1_catalog
from metacog_taxonomy.model import Scenario
from metacog_taxonomy.notation import (
    IdOutOfRange,
    NotationError,
    NotationStyle,
    ParseResult,
    Severity,
    _parse_general,
    format_scenario,
    parse,
    parse_scenario,
    topology_id,
    topology_shortcuts,
)
from strategies import scenarios


@pytest.mark.parametrize("text, expected", [
    ("I → [P, P→S, P→] O, O→F→E→I + F→I", Scenario("P", "bottom-up", "P", ["FI"])),
    ("I→{P,S}, P↔S, {P,S}→O, Topology 8", Scenario("PS", "bidirectional", "PS", ["OE", "OI", "FI"])),
    ("I→S, S→P, S→O, O→F→E→I", Scenario("S", "top-down", "S")),
    ("I->P, P<=>S, P->O, O->F->E->I + O->I", Scenario("P", "bidirectional", "P", ["OI"])),
    ("I → P, P ⇌ S, P → O, O → F → E → I + O→I", Scenario("P", "bidirectional", "P", ["OI"])),
    ("$I \\rightarrow \\{P,S\\}, P \\rightleftharpoons S, S \\to O, Topology 7$",
     Scenario("PS", "bidirectional", "S", ["OI", "FI"])),
    ("S7: I->P, P->S, P->O, Topology 1", Scenario("P", "bottom-up", "P")),
    ("I->P, P->S, P->O, O->F->E->I + O->I (Topology 3)", Scenario("P", "bottom-up", "P", ["OI"])),
])
def test_parses(text, expected):
    result = parse_scenario(text)
    assert result.ok and not result.errors
    assert result.scenario == expected


def test_redundant_backbone_warns_once():
    result = parse_scenario("I → [S, S→P, S→] O, O→F→E→I + E→I + F→I")
    assert result.scenario == Scenario("S", "top-down", "S", ["FI"])
    assert [d.code for d in result.warnings] == ["RedundantBackbone"]
    assert not result.errors


@pytest.mark.parametrize("text, code", [
    ("I->{P,S}, P->S, P<->S, {P,S}->O, Topology 1", "ConflictingArrangement"),
    ("I->P, P->S, O->I", "EmptyExit"),
    ("P->S, P->O, Topology 1", "EmptyEntry"),
    ("I->P, P->S, P->O, O->E->F->I", "MissingBackbone"),
    ("I->P, P->S, P->O, Topology 9", "IdOutOfRange"),
    ("I->P, P->S, P->O, O->F->E->I, Topology 2", "TopologyMismatch"),
    ("I->P, P->S, P->O, O->F->E->I + F->P", "InvalidEdge"),
    ("I->P, P->S, P->O, O->F->E->I + Q->I", "UnknownToken"),
    ("I->P, P->O, Topology 1", "MissingArrangement"),
    ("I -> [P, P->S, P -> O, Topology 1", "Syntax"),
    ("", "Syntax"),
])
def test_errors(text, code):
    result = parse_scenario(text)
    assert not result.ok
    assert code in {d.code for d in result.errors}
    with pytest.raises(NotationError):
        parse(text)


@pytest.mark.parametrize("text, code", [
    ("I->P, P->S, P->O", "ImplicitTopology"),
    ("I->P, P->S, P->O, O->F->E->I + O->I + O->I", "Redundant"),
    ("I->P, P->S, P->O, O->F->E->I (from a survey)", "UnknownAnnotation"),
    ("I->P, P->S, P->O, O->F->E->I + O->F", "RedundantBackbone"),
])
def test_warnings(text, code):
    result = parse_scenario(text)
    assert result.ok and code in {d.code for d in result.warnings}


def test_broken_link_is_flagged_non_canonical():
    result = parse_scenario("I->P, P->S, P->O, O⊗F->E->I")
    assert result.ok and not result.canonical
    assert result.broken_links == (("O", "F"),)
    assert [d.code for d in result.warnings] == ["BrokenLink"]


def test_garbled_row_reading():
    result = parse_scenario(appendix2_catalog()["S4"].notation)
    assert result.scenario == Scenario("PS", "bottom-up", "P", ["FI"])
    assert [d.code for d in result.warnings] == ["LooseEntry"]


def test_spans_are_utf8_byte_offsets():
    text = "I → P, P→S, P→O, O→F→E→I + Q→I"
    (diag,) = parse_scenario(text).errors
    start, end = diag.span
    assert text.encode("utf-8")[start:end] == b"Q"
    assert diag.severity is Severity.ERROR


def test_invalid_utf8_bytes():
    result = parse_scenario(b"I->P\xff")
    assert not result.ok and result.errors[0].code == "Encoding"
    assert parse_scenario("I->P, P->S, P->O, Topology 1".encode()).ok


def test_parse_attaches_label():
    assert parse("I->P, P->S, P->O, Topology 1", label="x").label == "x"


@pytest.mark.parametrize("s, style, text", [
    (Scenario("P", "bidirectional", "P", ["OI"]), "bracketed", "I -> [P, P<->S, P ->] O, O->F->E->I + O->I"),
    (Scenario("S", "top-down", "S"), "topology", "I->S, S->P, S->O, Topology 1"),
    (Scenario("P", "bottom-up", "P", ["FI"]), "flat", "I->P, P->S, P->O, O->F->E->I + F->I"),
    (Scenario("P", "bottom-up", "PS", ["OE", "FI"]), "flat", "I->P, P->S, {P,S}->O, O->F->E->I + O->E + F->I"),
])
def test_format_examples(s, style, text):
    assert format_scenario(s, style) == text


def test_format_unicode():
    s = Scenario("P", "bidirectional", "P", ["OI"])
    assert format_scenario(s, unicode=True) == "I → [P, P↔S, P →] O, O→F→E→I + O→I"
    assert format_scenario(s).isascii()


@pytest.mark.parametrize("shortcuts, tid", [((), 1), (("OE",), 2), (("OI",), 3), (("FI",), 4),
                                            (("OE", "OI"), 5), (("OE", "FI"), 6), (("OI", "FI"), 7),
                                            (("OE", "OI", "FI"), 8)])
def test_topology_ids(shortcuts, tid):
    assert topology_id(shortcuts) == tid
    assert {sc.value for sc in topology_shortcuts(tid)} == set(shortcuts)


@pytest.mark.parametrize("tid", [0, 9, -1])
def test_topology_id_out_of_range(tid):
    with pytest.raises(IdOutOfRange):
        topology_shortcuts(tid)


@pytest.mark.parametrize("unicode", [False, True])
@pytest.mark.parametrize("style", list(NotationStyle))
def test_exhaustive_round_trip(style, unicode):
    for s in enumerate_space():
        text = format_scenario(s, style, unicode=unicode)
        assert parse(text).key == s.key, text


@pytest.mark.parametrize("style", list(NotationStyle))
def test_fast_path_agrees_with_general_parser(style):
    for s in enumerate_space():
        for unicode in (False, True):
            text = format_scenario(s, style, unicode=unicode)
            assert parse_scenario(text) == _parse_general(text)


@given(scenarios, st.sampled_from(list(NotationStyle)))
def test_reformatting_is_idempotent(s, style):
    text = format_scenario(s, style)
    assert format_scenario(parse(text), style) == text


@pytest.mark.parametrize("entry", list(appendix2_catalog()) + list(table1_catalog()), ids=lambda e: e.label)
def test_golden_catalog_notation(entry):
    result = parse_scenario(entry.notation)
    assert result.ok, [d.render() for d in result.diagnostics]
    assert result.scenario.key == entry.scenario.key
    documented = {"S4": {"LooseEntry"}, "S5": {"RedundantBackbone"}}.get(entry.label, set())
    assert {d.code for d in result.diagnostics} == documented


_ALPHABET = list("IPSOFE{}[](),+:$\\ 0123456789→↔⇌⊗xyz") + ["->", "<->", "Topology ", "\\to", "\\{"]


@settings(max_examples=500, deadline=None)
@given(st.one_of(st.text(max_size=60), st.lists(st.sampled_from(_ALPHABET), max_size=40).map("".join)))
def test_parser_never_raises(text):
    result = parse_scenario(text)
    assert isinstance(result, ParseResult)
    assert result.ok != bool(result.errors)
    size = len(text.encode("utf-8", "surrogatepass"))
    for d in result.diagnostics:
        assert 0 <= d.span[0] <= d.span[1] <= size


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=40))
def test_parser_accepts_arbitrary_bytes(data):
    assert isinstance(parse_scenario(data), ParseResult)
