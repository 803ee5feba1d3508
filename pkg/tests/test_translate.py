import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import models
from monomu.denotation import eval_mu, eval_nmso, nmso_extension
from monomu.errors import GuardError
from monomu.model import NeighborhoodModel, PointedModel, enumerate_models, random_model
from monomu.syntax import mu as m_
from monomu.syntax import nmso as n_
from monomu.translate import (
    build_universe,
    bisimilar_pairs,
    eliminate_global,
    eq_formula,
    invariance_probe,
    main_lemma_check,
    to_nmso,
    universe_relation,
)
from monomu.bisim import Relation, bisimilar, is_bisimulation
from oracles import count_antichains, ev

parse = m_.parse_mu


def with_val(m, **val):
    v = dict(m.valuation)
    v.update({k: set(z) for k, z in val.items()})
    return NeighborhoodModel(m.states, m.neighborhoods, v)


def nmso(pm, f):
    return eval_nmso(pm, f, max_quantifier_depth=None)


# -- Eq and c -------------------------------------------------------------------


def test_eq_atom(m1):
    f = eq_formula(parse("p"), "r")
    assert nmso(PointedModel(with_val(m1, r={"s1"}), "s0"), f)
    assert not nmso(PointedModel(with_val(m1, r={"s0"}), "s0"), f)


def test_eq_box(m1):
    f = eq_formula(parse("[]p"), "r")
    assert nmso(PointedModel(with_val(m1, r={"s0"}), "s0"), f)
    assert not nmso(PointedModel(with_val(m1, r={"s1"}), "s0"), f)


def test_eq_least_fixpoint(m1):
    f = eq_formula(parse("mu q. []q"), "r")
    for val in [set(), {"s0"}, {"s1"}, {"s0", "s1"}]:
        assert nmso(PointedModel(with_val(m1, r=val), "s0"), f) == (not val)


def test_eq_rejects_bad_input():
    with pytest.raises(ValueError):
        eq_formula(parse("[E]p"), "r")
    with pytest.raises(ValueError):
        eq_formula(parse("p /\\ r"), "r")
    with pytest.raises(ValueError):
        to_nmso(parse("[A]p"))


def test_to_nmso_examples(m1):
    c = to_nmso(parse("p"))
    assert nmso(PointedModel(m1, "s1"), c)
    assert not nmso(PointedModel(m1, "s0"), c)
    assert nmso(PointedModel(m1, "s0"), to_nmso(parse("<>p")))
    top = to_nmso(m_.TOP)
    for n in (1, 2, 3):
        for m in list(enumerate_models(n, []))[:40]:
            assert nmso_extension(m, top) == frozenset(m.states)


def test_to_nmso_shape():
    c = to_nmso(parse("p"))
    assert isinstance(c, n_.Exists) and isinstance(c.body, n_.Exists)
    inner = c.body.body
    assert inner.left == n_.And(n_.Sr(c.body.var), n_.Sub(c.body.var, c.var))
    assert n_.free_vars(c) == {"p"}
    assert n_.parse_nmso(n_.print_nmso(c)) == c


@settings(max_examples=40)
@given(models(max_states=3), st.integers(0, 2**32))
def test_to_nmso_matches_naive_semantics(m, seed):
    f = m_.random_formula(random.Random(seed), ["p", "q"], random.Random(seed).randint(0, 3))
    c = to_nmso(f)
    assert n_.parse_nmso(n_.print_nmso(c)) == c
    assert nmso_extension(m, c, max_quantifier_depth=None) == ev(m, f)


@pytest.mark.parametrize("text", ["mu x. []x \\/ <>(nu y. []y /\\ <>x)", "nu x. mu y. ([]y \\/ <>x) /\\ p", "~p \\/ <>~q"])
def test_nested_fixpoints(text):
    f = parse(text)
    c = to_nmso(f)
    for seed in range(5):
        m = random_model(3, ["p", "q"], seed=seed)
        assert nmso_extension(m, c, max_quantifier_depth=None) == eval_mu(m, f)


def test_depth_guard_applies_to_translations(m1):
    c = to_nmso(parse("[][][][]p"))
    assert n_.quantifier_depth(c) > 8
    with pytest.raises(GuardError):
        nmso_extension(m1, c)


# -- universe and t ---------------------------------------------------------------


def test_universe_sizes():
    u1 = build_universe(1, ["p"])
    assert len(u1.model.states) == count_antichains(1) * 2
    u2 = build_universe(2, ["p"])
    assert len(u2.model.states) == 6 + 2 * count_antichains(2) ** 2 * 4 == 294
    assert u2.provenance == {"max_states": 2, "vocab": ["p"]}
    with pytest.raises(GuardError):
        build_universe(3, ["p"])
    with pytest.raises(GuardError):
        build_universe(1, ["p", "q"])


def test_eliminate_examples():
    u = build_universe(1, ["p"])
    f = parse("[]p")
    assert eliminate_global(f, u)[0] is f
    assert eliminate_global(parse("[E]p"), u)[0] == m_.TOP
    assert eliminate_global(parse("[A]p"), u)[0] == m_.BOT
    assert eliminate_global(parse("[A]true"), u)[0] == m_.TOP
    assert eliminate_global(parse("[]p /\\ [E]~p"), u)[0] == parse("[]p /\\ true")


def test_eliminate_inside_fixpoint():
    u = build_universe(1, ["p"])
    # [E] of a closed formula collapses; the surrounding binder survives
    tf, table = eliminate_global(parse("mu x. []x \\/ [E](nu y. <>y)"), u)
    assert m_.is_global_free(tf) and m_.is_well_named(tf)
    assert set(table.translation) == set(m_.subformulas(parse("mu x. []x \\/ [E](nu y. <>y)")))


def test_main_lemma_examples():
    u = build_universe(1, ["p"])
    s = NeighborhoodModel(["s0"], {}, {"p": {"s0"}})
    rep = main_lemma_check(parse("[E]p"), s, u)
    assert rep.ok and rep.translated == m_.TOP
    rep = main_lemma_check(parse("[A]p"), s, u)
    assert rep.ok and rep.translated == m_.BOT
    assert main_lemma_check(parse("<>p"), s, u).ok
    with pytest.raises(ValueError):
        main_lemma_check(parse("p"), NeighborhoodModel(["s0", "s1"], {}, {"p": set()}), u)


@settings(max_examples=25)
@given(st.integers(0, 2**32))
def test_main_lemma_on_one_state_universe(seed):
    u = build_universe(1, ["p"])
    f = m_.random_formula(random.Random(seed), ["p"], 4, global_modalities=True)
    for s in enumerate_models(1, ["p"]):
        assert main_lemma_check(f, s, u).ok


def test_universe_relation_is_global_bisimulation():
    u = build_universe(1, ["p"])
    for s in enumerate_models(1, ["p"]):
        big, pairs = universe_relation(u, s)
        rel = Relation(big, u.model, pairs)
        assert is_bisimulation(rel) and rel.is_full()


@settings(max_examples=25)
@given(st.integers(0, 2**32))
def test_binding_definitions_commute(seed):
    u = build_universe(1, ["p"])
    f = m_.random_formula(random.Random(seed), ["p"], 5, global_modalities=True)
    tf, table = eliminate_global(f, u)
    for v in m_.bound_vars(tf):
        assert m_.binding_definition(tf, v) == table.translation[m_.binding_definition(f, v)]


# -- invariance probe ---------------------------------------------------------------


def test_probe_finds_global_counterexamples():
    for text in ("[E]p", "[A]p"):
        rep = invariance_probe(parse(text), samples=20)
        assert not rep.invariant_on_samples
        cex = rep.counterexamples[0]
        assert bisimilar(cex.left, cex.right)
        assert cex.left_value != cex.right_value
        assert "counterexample" in rep.summary()


def test_probe_passes_invariant_formulas():
    for text in ("[A]true", "<>p /\\ (mu x. []x \\/ p)", "nu x. <>x"):
        rep = invariance_probe(parse(text), samples=20)
        assert rep.invariant_on_samples and rep.pairs_checked > 0
        assert "not a proof" in rep.summary()


def test_bisimilar_pairs_are_bisimilar():
    for left, right in bisimilar_pairs(["p"], samples=15, seed=3):
        assert bisimilar(left, right)
