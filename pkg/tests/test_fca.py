import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metacog_taxonomy import appendix2_catalog, table1_catalog
from metacog_taxonomy.fca import (
    CxtFormatError,
    DuplicateLabel,
    FormalConcept,
    FormalContext,
    Implication,
    IncompleteConceptSet,
    UnknownAttribute,
    all_concepts,
    build_context,
    build_lattice,
    closure_under,
    context_from_json,
    context_to_json,
    default_schema,
    entails,
    from_csv,
    from_cxt,
    implication_basis,
    lattice_to_dot,
    lattice_to_json,
    to_csv,
    to_cxt,
    verify_implication,
)
from metacog_taxonomy.model import Scenario
from oracles import brute_closure, brute_concepts, brute_pseudo_intents, implication_holds


def _rows(ctx):
    return {g: ctx.row(g) for g in ctx.objects}


def _pairs(concepts):
    return {(c.extent, c.intent) for c in concepts}


@st.composite
def contexts(draw, max_objects=12, max_attributes=12):
    n = draw(st.integers(0, max_objects))
    m = draw(st.integers(0, max_attributes))
    incidence = draw(st.lists(st.lists(st.booleans(), min_size=m, max_size=m), min_size=n, max_size=n))
    return FormalContext(tuple(f"g{i}" for i in range(n)), tuple(f"a{j}" for j in range(m)), incidence)


@pytest.fixture(scope="module")
def a2():
    return build_context(appendix2_catalog())


def test_default_context_shape(a2):
    assert a2.shape == (24, 15)
    assert a2.attributes == default_schema()
    assert a2.row("S1") == {"entry:P", "mon", "exit:P", "sc:FI", "tier:novice"}


def test_appendix2_concepts_match_oracle(a2):
    assert _pairs(all_concepts(a2)) == brute_concepts(_rows(a2), a2.attributes)


@settings(max_examples=50, deadline=None)
@given(contexts())
def test_random_concepts_match_oracle(ctx):
    concepts = all_concepts(ctx)
    assert len(concepts) == len(_pairs(concepts))
    assert _pairs(concepts) == brute_concepts(_rows(ctx), ctx.attributes)
    build_lattice(concepts)  # meet/join totality is checked inside


@settings(max_examples=50, deadline=None)
@given(contexts(max_objects=8, max_attributes=8))
def test_lattice_laws(ctx):
    lat = build_lattice(all_concepts(ctx))
    n = len(lat.concepts)
    top, bottom = lat.concepts[lat.top], lat.concepts[lat.bottom]
    assert top.extent == frozenset(ctx.objects)
    assert bottom.intent == frozenset(ctx.attributes)
    for i in range(n):
        for j in range(n):
            m, k = lat.concepts[lat.meet(i, j)], lat.concepts[lat.join(i, j)]
            assert m.extent == lat.concepts[i].extent & lat.concepts[j].extent
            assert k.intent == lat.concepts[i].intent & lat.concepts[j].intent
            assert lat.meet(i, j) == lat.meet(j, i) and lat.join(i, j) == lat.join(j, i)
            assert lat.meet(i, lat.join(i, j)) == i  # absorption
    # covers are exactly the transitive reduction of strict extent inclusion
    less = {(i, j) for i in range(n) for j in range(n) if lat.concepts[i] < lat.concepts[j]}
    reduced = {(i, j) for i, j in less if not any((i, k) in less and (k, j) in less for k in range(n))}
    assert set(lat.covers) == reduced


@settings(max_examples=50, deadline=None)
@given(contexts(max_objects=8, max_attributes=8))
def test_basis_sound_complete_and_minimal(ctx):
    rows = _rows(ctx)
    basis = implication_basis(ctx)
    for imp in basis:
        assert implication_holds(rows, imp.premise, imp.conclusion)
    assert {imp.premise for imp in basis} == brute_pseudo_intents(rows, ctx.attributes)
    # complete: the basis closure of any subset equals its context closure
    from oracles import all_subsets
    for subset in all_subsets(ctx.attributes):
        assert closure_under(basis, subset) == brute_closure(rows, ctx.attributes, subset)


@settings(max_examples=50, deadline=None)
@given(contexts(), st.data())
def test_derivation_is_monotone_and_closure_idempotent(ctx, data):
    a = frozenset(data.draw(st.sets(st.sampled_from(ctx.attributes))) if ctx.attributes else ())
    b = a | frozenset(data.draw(st.sets(st.sampled_from(ctx.attributes))) if ctx.attributes else ())
    assert ctx.extent(b) <= ctx.extent(a)
    assert ctx.closure(a) >= a and ctx.closure(ctx.closure(a)) == ctx.closure(a)
    assert ctx.closure(a) <= ctx.closure(b)


def test_appendix2_lattice_counts(a2):
    lat = build_lattice(all_concepts(a2))
    assert (len(lat.concepts), len(lat.covers)) == (347, 1232)
    assert len(implication_basis(a2)) == 36


def test_appendix2_basis_is_sound(a2):
    for imp in implication_basis(a2):
        assert verify_implication(a2, imp) == (True, ())


def test_two_object_chain():
    ctx = FormalContext.from_sets([("o1", {"a"}), ("o2", {"a", "b"})])
    concepts = all_concepts(ctx)
    assert _pairs(concepts) == {(frozenset({"o1", "o2"}), frozenset({"a"})),
                                (frozenset({"o2"}), frozenset({"a", "b"}))}
    assert len(build_lattice(concepts).covers) == 1


def test_empty_context():
    ctx = build_context([])
    assert ctx.shape == (0, 15)
    (c,) = all_concepts(ctx)
    assert c.extent == frozenset() and c.intent == frozenset(ctx.attributes)


def test_incomplete_concept_set_rejected():
    a = FormalConcept(frozenset({"x"}), frozenset({"p"}))
    b = FormalConcept(frozenset({"y"}), frozenset({"q"}))
    with pytest.raises(IncompleteConceptSet):
        build_lattice([a, b])
    with pytest.raises(IncompleteConceptSet):
        build_lattice([])


def test_duplicate_and_unknown_labels(a2):
    with pytest.raises(DuplicateLabel):
        FormalContext(("x", "x"), ("a",), ((True,), (False,)))
    with pytest.raises(UnknownAttribute):
        a2.attr_mask(["nope"])
    with pytest.raises(UnknownAttribute):
        verify_implication(a2, Implication(["nope"], []))


def test_clarify_merges_duplicate_rows(a2):
    plain = build_context(appendix2_catalog(), tiers=False)
    clarified = plain.clarify()
    assert clarified.shape == (23, 12)
    assert "S15|S19" in clarified.objects
    # tier flags keep S15 and S19 apart
    assert a2.clarify().shape == (24, 15)


def test_bare_scenarios_use_labels():
    ctx = build_context([Scenario("P", "bottom-up", "P", label="x"), Scenario("S", "top-down", "S")])
    assert ctx.objects == ("x", "#1")
    assert ctx.shape == (2, 12)


def test_restrict(a2):
    sub = a2.restrict(["S1", "S2"])
    assert sub.objects == ("S1", "S2")


def test_verify_reports_counterexamples(a2):
    beyond_s1 = [g for g in a2.objects if g != "S1"]
    assert verify_implication(a2, Implication([], ["sc:OI"]), beyond_s1) == (False, ("S2", "S4", "S5"))
    assert verify_implication(a2, Implication(["tier:developing"], ["sc:OI"])) == (True, ())
    assert verify_implication(a2, Implication(["tier:expert"], ["sc:OI", "sc:FI"])) == (True, ())


def test_entails():
    basis = [Implication(["a"], ["b"]), Implication(["b"], ["c"])]
    assert entails(basis, Implication(["a"], ["c"]))
    assert not entails(basis, Implication(["c"], ["a"]))


@pytest.mark.parametrize("catalog", [appendix2_catalog, table1_catalog])
def test_serialization_round_trips(catalog):
    ctx = build_context(catalog())
    assert from_cxt(to_cxt(ctx)) == ctx
    assert from_csv(to_csv(ctx)) == ctx
    assert context_from_json(context_to_json(ctx)) == ctx


@settings(max_examples=50, deadline=None)
@given(contexts())
def test_cxt_round_trip_random(ctx):
    assert from_cxt(to_cxt(ctx)) == ctx


@pytest.mark.parametrize("text", ["", "X\n\n1\n1\n\ng\na\nX\n", "B\n\n2\n1\n\ng\na\nX\n", "B\n\n1\n1\n\ng\na\nXX\n",
                                  "B\n\n1\n1\n\ng\na\nQ\n"])
def test_bad_cxt(text):
    with pytest.raises(CxtFormatError):
        from_cxt(text)


def test_dot_has_one_source_and_one_sink(a2):
    lat = build_lattice(all_concepts(a2))
    dot = lattice_to_dot(lat, a2)
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    lowers = {lo for lo, _ in lat.covers}
    uppers = {up for _, up in lat.covers}
    n = len(lat.concepts)
    assert [i for i in range(n) if i not in lowers] == [lat.top]
    assert [i for i in range(n) if i not in uppers] == [lat.bottom]
    assert dot.count(" -> ") == len(lat.covers)
    assert '"S1"' in dot or "S1" in dot


def test_lattice_json_lists_every_concept(a2):
    import json
    lat = build_lattice(all_concepts(a2))
    data = json.loads(lattice_to_json(lat, a2))
    assert len(data["concepts"]) == 347 and len(data["covers"]) == 1232
    introduced = [g for c in data["concepts"] for g in c["introduces_objects"]]
    assert sorted(introduced) == sorted(a2.objects)
