import json
import random

import pytest
from hypothesis import given, strategies as st

from conftest import models
from monomu.bisim import (
    Relation,
    bisimilar,
    globally_bisimilar,
    greatest_bisimulation,
    is_bisimulation,
    write_relation,
)
from monomu.model import NeighborhoodModel, PointedModel, disjoint_union
from oracles import largest_bisimulation


def identity(m):
    return Relation(m, m, {(s, s) for s in m.states})


def test_identity(m1):
    assert is_bisimulation(identity(m1))
    assert identity(m1).pairs <= greatest_bisimulation(m1, m1).pairs


def test_insertion_graphs(m1):
    big, ins = disjoint_union([m1, m1])
    for i in ins:
        assert is_bisimulation(Relation(m1, big, i.graph()))
    assert bisimilar(PointedModel(m1, "s0"), PointedModel(big, ins[0]("s0")))


def test_generator_against_empty_family():
    left = NeighborhoodModel(["s0", "s1"], {"s0": [{"s1"}]}, {})
    right = NeighborhoodModel(["t0"], {}, {})
    assert not is_bisimulation(Relation(left, right, {("s0", "t0")}))


def test_duplicated_successor(m1):
    dup = NeighborhoodModel(["s0", "s1", "s2"], {"s0": [{"s1"}]}, {"p": {"s1", "s2"}})
    rel = Relation(m1, dup, {("s0", "s0"), ("s1", "s1"), ("s1", "s2")})
    assert is_bisimulation(rel)
    assert ("s0", "s0") in greatest_bisimulation(m1, dup)


def test_no_generator_point(m1):
    bare = NeighborhoodModel(["s0", "s1"], {}, {"p": {"s1"}})
    assert ("s0", "s0") not in greatest_bisimulation(m1, bare)
    single = NeighborhoodModel(["s0"], {}, {"p": set()})
    assert not bisimilar(PointedModel(m1, "s0"), PointedModel(single, "s0"))


def test_valuation_matters():
    a = NeighborhoodModel(["s0"], {}, {"p": {"s0"}})
    b = NeighborhoodModel(["s0"], {}, {"p": set()})
    assert not bisimilar(PointedModel(a, "s0"), PointedModel(b, "s0"))


def test_global(m1):
    assert globally_bisimilar(PointedModel(m1, "s0"), PointedModel(m1, "s0"))
    p_state = NeighborhoodModel(["s0"], {}, {"p": {"s0"}})
    # s1 matches the lone p-state but s0 has no partner
    assert bisimilar(PointedModel(m1, "s1"), PointedModel(p_state, "s0"))
    assert not globally_bisimilar(PointedModel(m1, "s1"), PointedModel(p_state, "s0"))


def test_relation_validation(m1):
    with pytest.raises(ValueError):
        Relation(m1, m1, {("s0", "zz")})
    with pytest.raises(ValueError):
        greatest_bisimulation(m1, NeighborhoodModel(["s0"], {}, {"q": set()}))


@given(models(max_states=3), models(max_states=3))
def test_greatest_matches_definitional_oracle(a, b):
    want = largest_bisimulation(a, b)
    assert greatest_bisimulation(a, b).pairs == want
    assert greatest_bisimulation(a, b, closure=True).pairs == want
    assert is_bisimulation(Relation(a, b, want), closure=True)


@given(models(max_states=3), models(max_states=3), st.integers(0, 2**32))
def test_union_of_bisimulations(a, b, seed):
    rng = random.Random(seed)
    top = greatest_bisimulation(a, b).pairs
    parts = [greatest_bisimulation(a, b, within={p for p in top if rng.random() < 0.5}) for _ in range(2)]
    for r in parts:
        assert is_bisimulation(r)
        assert r.pairs <= top
    assert is_bisimulation(parts[0] | parts[1])


@given(models(max_states=3), models(max_states=3))
def test_greatest_is_maximal(a, b):
    g = greatest_bisimulation(a, b)
    assert is_bisimulation(g)
    # anything strictly larger than the greatest bisimulation is not one
    for s in a.states:
        for t in b.states:
            if (s, t) not in g:
                assert not is_bisimulation(Relation(a, b, g.pairs | {(s, t)}))


def test_write_relation(m1):
    doc = json.loads(write_relation(identity(m1)))
    assert doc == {"pairs": [["s0", "s0"], ["s1", "s1"]]}
