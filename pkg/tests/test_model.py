import json

import pytest
from hypothesis import given, strategies as st

from conftest import make_m1, models
from monomu.errors import GuardError, ModelError
from monomu.model import (
    KripkeModel,
    NeighborhoodModel,
    PointedModel,
    contains_neighborhood,
    disjoint_union,
    enumerate_models,
    ensure_valid,
    from_kripke,
    random_kripke,
    random_model,
    read_model,
    load_document,
    to_kripke,
    upward_closure,
    validate,
    write_model,
)
from oracles import count_antichains, neighborhoods, powerset

SAMPLE = b'{"states": ["s0", "s1"], "neighborhoods": {"s0": [["s1"]], "s1": []}, "valuation": {"p": ["s1"]}, "point": "s0"}'


def F(*sets):
    return frozenset(frozenset(z) for z in sets)


def test_validate(m1):
    assert validate(m1) == []
    bad = NeighborhoodModel(["s0", "s1"], {"s0": [{"s1"}, {"s0", "s1"}]}, {"p": set()})
    assert validate(bad)
    with pytest.raises(ModelError):
        ensure_valid(bad)
    assert validate(NeighborhoodModel(["s0", "s1"], {}, {"p": {"s2"}}))
    assert validate(NeighborhoodModel(["s0"], {"s0": [{"s9"}]}, {}))


def test_contains_and_closure(m1):
    assert contains_neighborhood(m1, "s0", {"s1"})
    assert contains_neighborhood(m1, "s0", {"s0", "s1"})
    assert not contains_neighborhood(m1, "s1", {"s0", "s1"})
    assert upward_closure(m1, "s0") == F({"s1"}, {"s0", "s1"})
    assert upward_closure(m1, "s1") == frozenset()
    top = NeighborhoodModel(["s0", "s1"], {"s0": [set()]}, {})
    assert upward_closure(top, "s0") == frozenset(powerset(["s0", "s1"]))


@given(models(max_states=3))
def test_monotone_and_closure_agree(m):
    for s in m.states:
        closure = upward_closure(m, s)
        assert closure == neighborhoods(m, s)
        for z in powerset(m.states):
            assert contains_neighborhood(m, s, z) == (z in closure)
            if z in closure:
                assert all(w in closure for w in powerset(m.states) if z <= w)


def test_disjoint_union(m1):
    big, (i0, i1) = disjoint_union([m1, m1])
    assert len(big.states) == 4
    assert big.neighborhoods[i0("s0")] == F({i0("s1")})
    assert big.valuation["p"] == {i0("s1"), i1("s1")}
    assert i0.image({"s0", "s1"}).isdisjoint(i1.image({"s0", "s1"}))
    single, (j,) = disjoint_union([m1])
    assert len(single.states) == 2
    assert single.neighborhoods[j("s0")] == F({j("s1")})
    with pytest.raises(ValueError):
        disjoint_union([m1, NeighborhoodModel(["s0"], {}, {"q": set()})])


@given(models(max_states=3), models(max_states=3))
def test_union_neighborhood_law(a, b):
    # a summand's neighborhoods in the union are exactly the images of its own
    big, ins = disjoint_union([a, b])
    for m, i in zip((a, b), ins):
        for s in m.states:
            mine = {i.image(z) for z in neighborhoods(m, s)}
            theirs = {z for z in neighborhoods(big, i(s)) if z <= i.image(m.states)}
            assert mine == theirs


def test_from_kripke_examples():
    k = KripkeModel(["a", "b"], {("a", "b")}, {})
    m = from_kripke(k)
    assert m.neighborhoods["a"] == F({"b"})
    assert m.neighborhoods["b"] == F(set())
    assert from_kripke(KripkeModel(["a"], set(), {})).neighborhoods["a"] == F(set())
    full = from_kripke(KripkeModel(["a", "b"], {(x, y) for x in "ab" for y in "ab"}, {}))
    assert full.neighborhoods == {"a": F({"a", "b"}), "b": F({"a", "b"})}


def test_to_kripke_examples(m1):
    assert to_kripke(m1).edges == {("s0", "s1"), ("s1", "s0"), ("s1", "s1")}
    m = NeighborhoodModel(["u", "a", "b"], {"u": [{"a"}, {"b"}]}, {})
    assert to_kripke(m).successors("u") == frozenset()


@given(st.integers(1, 6), st.floats(0, 1), st.integers(0, 2**32))
def test_kripke_roundtrip(n, density, seed):
    k = random_kripke(n, ["p"], edge_density=density, seed=seed)
    assert to_kripke(from_kripke(k)) == k


def test_enumeration_counts():
    assert count_antichains(1) == 3 and count_antichains(2) == 6
    assert len(list(enumerate_models(1, ["p"]))) == count_antichains(1) * 2
    assert len(list(enumerate_models(2, ["p"]))) == count_antichains(2) ** 2 * 2**2
    assert len(list(enumerate_models(1, []))) == 3
    ms = list(enumerate_models(2, ["p"]))
    assert len({write_model(m) for m in ms}) == len(ms)
    with pytest.raises(GuardError):
        next(iter(enumerate_models(4, ["p"])))


def test_random_model_determinism():
    a = random_model(4, ["p", "q"], seed=11)
    assert a == random_model(4, ["p", "q"], seed=11)
    assert validate(a) == []
    empty = random_model(4, ["p"], density=0, seed=3)
    assert all(not g for g in empty.neighborhoods.values())


def test_document_sample_roundtrip():
    doc = load_document(SAMPLE)
    assert doc.model == make_m1() and doc.point == "s0"
    assert json.loads(write_model(doc.model, doc.point)) == json.loads(SAMPLE)
    assert write_model(doc.model, doc.point) == SAMPLE


@pytest.mark.parametrize(
    "text",
    [
        '{"states": ["s0", "s1"], "neighborhoods": {"s0": [["s1"], ["s0", "s1"]], "s1": []}, "valuation": {}}',
        '{"states": ["s0"], "neighborhoods": {}, "valuation": {"p": ["s2"]}}',
        '{"states": ["s0"], "neighborhoods": {}, "valuation": {}, "point": "s7"}',
        '{"states": "s0"}',
        "not json",
    ],
)
def test_bad_documents(text):
    with pytest.raises(ModelError):
        read_model(text)


@given(models(max_states=4))
def test_read_write_roundtrip(m):
    assert read_model(write_model(m)) == m


def test_pointed_model_checks_point(m1):
    with pytest.raises(ValueError):
        PointedModel(m1, "nope")
