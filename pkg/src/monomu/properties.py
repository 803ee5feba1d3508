"""Seeded property suites.

Each suite samples inputs deterministically from ``(seed, sample index)``,
compares two independent routes to the same answer, and records every
disagreement as a replayable failure (model document plus formula text).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from monomu.bisim import Relation, greatest_bisimulation, is_bisimulation
from monomu.denotation import approximants, eval_mu, nmso_extension
from monomu.game import (
    Basic,
    E,
    A,
    build_arena,
    cycles_pass_variables,
    is_partition,
    solve,
    verify_strategy,
)
from monomu.model import (
    disjoint_union,
    enumerate_models,
    from_kripke,
    model_to_dict,
    random_kripke,
    random_model,
    to_kripke,
)
from monomu.syntax import mu as m_
from monomu.translate import (
    build_universe,
    eliminate_global,
    main_lemma_check,
    to_nmso,
    universe_relation,
)

VOCABS = (("p",), ("p", "q"))


@dataclass
class SuiteReport:
    suite: str
    samples: int
    failures: list[dict] = field(default_factory=list)
    checks: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"suite": self.suite, "samples": self.samples, "failures": self.failures}


def sample_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def _failure(seed, index, model=None, formula=None, **extra):
    out = {"seed": seed, "index": index}
    if model is not None:
        out["model"] = model_to_dict(model)
    if formula is not None:
        out["formula"] = m_.print_mu(formula)
    out.update(extra)
    return out


def _sample_model(rng, max_states, vocab=None):
    vocab = vocab if vocab is not None else rng.choice(VOCABS)
    return random_model(rng.randint(1, max_states), vocab, density=rng.uniform(0.1, 0.5), rng=rng)


def _game_extension(model, f, arena=None, sol=None):
    arena = arena or build_arena(model, f)
    sol = sol or solve(arena)
    return frozenset(s for s in model.states if arena.id(Basic(s, f)) in sol.win_E)


# -- game semantics -----------------------------------------------------------


def adequacy(samples=500, seed=7, max_states=5, max_depth=6):
    """Game winning region at (s, f) equals the denotational extension."""
    rep = SuiteReport("adequacy", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        m = _sample_model(rng, max_states)
        f = m_.random_formula(rng, m.vocabulary, rng.randint(0, max_depth), global_modalities=True)
        game = _game_extension(m, f)
        den = eval_mu(m, f)
        rep.checks += 1
        if game != den:
            rep.failures.append(_failure(seed, i, m, f, game=sorted(game), denotation=sorted(den)))
    return rep


def determinacy(samples=500, seed=7, max_states=5, max_depth=6):
    """Regions partition the arena and both positional strategies verify."""
    rep = SuiteReport("determinacy", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        m = _sample_model(rng, max_states)
        f = m_.random_formula(rng, m.vocabulary, rng.randint(0, max_depth), global_modalities=True)
        arena = build_arena(m, f)
        sol = solve(arena)
        problems = []
        if not is_partition(arena, sol):
            problems.append("regions do not partition the positions")
        for player in (E, A):
            if not verify_strategy(arena, sol, player):
                problems.append(f"strategy of {player} fails verification")
        if not cycles_pass_variables(arena):
            problems.append("cycle avoiding variable positions")
        rep.checks += 1
        if problems:
            rep.failures.append(_failure(seed, i, m, f, problems=problems))
    return rep


def generator_oracle(samples=1000, seed=7, max_states=3, max_depth=4):
    """Generator-restricted and full-closure arenas and bisimulation refinement agree."""
    rep = SuiteReport("generator-oracle", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        m = _sample_model(rng, max_states)
        f = m_.random_formula(rng, m.vocabulary, rng.randint(0, max_depth), global_modalities=True)
        small = _game_extension(m, f)
        big_arena = build_arena(m, f, neighborhoods="closure")
        big = _game_extension(m, f, big_arena)
        other = _sample_model(rng, max_states, sorted(m.vocabulary))
        gen_rel = greatest_bisimulation(m, other)
        full_rel = greatest_bisimulation(m, other, closure=True)
        rep.checks += 1
        if small != big or gen_rel.pairs != full_rel.pairs:
            rep.failures.append(
                _failure(
                    seed, i, m, f,
                    other=model_to_dict(other),
                    generator_region=sorted(small),
                    closure_region=sorted(big),
                    bisim_agree=gen_rel.pairs == full_rel.pairs,
                )
            )
    return rep


# -- bisimulation -------------------------------------------------------------


def union_closure(samples=200, seed=7, max_states=3):
    """The union of two bisimulations is a bisimulation."""
    rep = SuiteReport("union-closure", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        left = _sample_model(rng, max_states)
        right = _sample_model(rng, max_states, sorted(left.vocabulary))
        if rng.random() < 0.5:
            # the two insertion graphs of left into left + left
            right, (i0, i1) = disjoint_union([left, left])
            r1, r2 = Relation(left, right, i0.graph()), Relation(left, right, i1.graph())
        else:
            top = greatest_bisimulation(left, right).pairs
            parts = [
                greatest_bisimulation(left, right, within={p for p in top if rng.random() < 0.6})
                for _ in range(2)
            ]
            r1, r2 = parts
        rep.checks += 1
        if not (is_bisimulation(r1) and is_bisimulation(r2) and is_bisimulation(r1 | r2)):
            rep.failures.append(_failure(seed, i, left, other=model_to_dict(right)))
    return rep


def invariance(samples=200, seed=7, max_states=4, formulas=20, max_depth=5):
    """(M, s) and (M + M', s) agree on global-free formulas."""
    rep = SuiteReport("invariance", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        m = _sample_model(rng, max_states)
        other = _sample_model(rng, max_states, sorted(m.vocabulary))
        big, (ins, _) = disjoint_union([m, other])
        if not is_bisimulation(Relation(m, big, ins.graph())):
            rep.failures.append(_failure(seed, i, m, problem="insertion graph is not a bisimulation"))
            continue
        for _ in range(formulas):
            f = m_.random_formula(rng, m.vocabulary, rng.randint(0, max_depth))
            small_ext, big_ext = eval_mu(m, f), eval_mu(big, f)
            rep.checks += 1
            bad = [s for s in m.states if (s in small_ext) != (ins(s) in big_ext)]
            if bad:
                rep.failures.append(_failure(seed, i, m, f, other=model_to_dict(other), states=bad))
    return rep


def global_invariance(samples=20, seed=7, universe=1, max_depth=5, force=False):
    """U + S and U are related by a full bisimulation that global formulas respect.

    `samples` is the number of formulas checked for each 1..`universe`-state S.
    """
    rep = SuiteReport("global-invariance", samples)
    U = build_universe(universe, ["p"], force=force)
    models = [S for k in range(1, universe + 1) for S in enumerate_models(k, ["p"], max_states=max(3, universe))]
    rng = sample_rng(seed, 0)
    for i, S in enumerate(models):
        big, pairs = universe_relation(U, S)
        rel = Relation(big, U.model, pairs)
        rep.checks += 1
        if not (is_bisimulation(rel) and rel.is_full()):
            rep.failures.append(_failure(seed, i, S, problem="universe relation is not a full bisimulation"))
            continue
        for _ in range(samples):
            f = m_.random_formula(rng, ["p"], rng.randint(0, max_depth), global_modalities=True)
            ext_big, ext_u = eval_mu(big, f), eval_mu(U.model, f)
            rep.checks += 1
            bad = [(w, u) for w, u in pairs if (w in ext_big) != (u in ext_u)]
            if bad:
                rep.failures.append(_failure(seed, i, S, f, pairs=sorted(bad)[:10]))
    return rep


def usim(samples=None, seed=7, universe=1, force=False):
    """Id_U together with the bisimulations from S into U is a global bisimulation."""
    models = [S for k in range(1, universe + 1) for S in enumerate_models(k, ["p"], max_states=max(3, universe))]
    rep = SuiteReport("usim", len(models))
    U = build_universe(universe, ["p"], force=force)
    for i, S in enumerate(models):
        big, pairs = universe_relation(U, S)
        rel = Relation(big, U.model, pairs)
        rep.checks += 1
        if not (is_bisimulation(rel) and rel.is_full()):
            rep.failures.append(_failure(seed, i, S, problem="not a full bisimulation"))
    return rep


def kripke_roundtrip(samples=100, seed=7, max_states=6):
    rep = SuiteReport("kripke-roundtrip", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        k = random_kripke(rng.randint(1, max_states), rng.choice(VOCABS), edge_density=rng.random(), seed=rng.random())
        rep.checks += 1
        back = to_kripke(from_kripke(k))
        if back != k:
            rep.failures.append(_failure(seed, i, edges=sorted(k.edges), got=sorted(back.edges)))
    return rep


# -- fixpoints ------------------------------------------------------------------


def fixpoints(samples=200, seed=7, max_states=5, max_depth=4):
    """Approximant chains are monotone, stabilize within |S| steps at the
    extension, and the extension is a fixpoint of its body."""
    rep = SuiteReport("fixpoints", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        m = _sample_model(rng, max_states)
        body = m_.random_formula(rng, m.vocabulary, rng.randint(0, max_depth), positive=["y"])
        f = (m_.Mu if rng.random() < 0.5 else m_.Nu)("y", body)
        chain = approximants(m, f)
        ext = eval_mu(m, f)
        ascending = isinstance(f, m_.Mu)
        problems = []
        for a, b in zip(chain, chain[1:]):
            if not (a < b if ascending else b < a):
                problems.append("chain is not strictly monotone")
        if len(chain) - 1 > len(m.states):
            problems.append("chain longer than the state count")
        if chain[-1] != ext:
            problems.append("stable value differs from the extension")
        if eval_mu(m, body, {"y": ext}) != ext:
            problems.append("extension is not a fixpoint of the body")
        rep.checks += 1
        if problems:
            rep.failures.append(_failure(seed, i, m, f, problems=problems))
    return rep


# -- translations -----------------------------------------------------------------


def eq_translation(samples=200, seed=7, max_states=4, max_depth=3):
    """(m, s) |= c(f) iff s is in the extension of f."""
    rep = SuiteReport("eq-translation", samples)
    for i in range(samples):
        rng = sample_rng(seed, i)
        m = _sample_model(rng, max_states)
        f = m_.random_formula(rng, m.vocabulary, rng.randint(0, max_depth))
        c = to_nmso(f)
        # the verbatim box clause makes c deeper than the default guard
        got = nmso_extension(m, c, max_quantifier_depth=None)
        want = eval_mu(m, f)
        rep.checks += 1
        if got != want:
            rep.failures.append(_failure(seed, i, m, f, nmso=sorted(got), denotation=sorted(want)))
    return rep


def binddef(samples=200, seed=7, universe=1, max_depth=5, force=False):
    """t commutes with binding definitions and yields well-named global-free formulas."""
    rep = SuiteReport("binddef", samples)
    U = build_universe(universe, ["p"], force=force)
    for i in range(samples):
        rng = sample_rng(seed, i)
        f = m_.random_formula(rng, ["p"], rng.randint(1, max_depth), global_modalities=True)
        tf, table = eliminate_global(f, U)
        problems = []
        if not m_.is_global_free(tf) or not m_.is_well_named(tf):
            problems.append("translation is not a well-named global-free formula")
        surviving = set(m_.bound_vars(tf))
        for p in surviving:
            if m_.binding_definition(tf, p) != table.translation[m_.binding_definition(f, p)]:
                problems.append(f"binding definition of {p} does not commute")
        rep.checks += 1
        if problems:
            rep.failures.append(_failure(seed, i, formula=f, problems=problems))
    return rep


def main_lemma(samples=100, seed=7, universe=2, max_depth=4, force=False):
    """(S, s) |= t(f) iff (U + S, s) |= f, for all S covered by the universe."""
    rep = SuiteReport("main-lemma", samples)
    U = build_universe(universe, ["p"], force=force)
    models = [S for k in range(1, universe + 1) for S in enumerate_models(k, ["p"], max_states=max(3, universe))]
    unions = [disjoint_union([U.model, S]) for S in models]
    for i in range(samples):
        rng = sample_rng(seed, i)
        f = m_.random_formula(rng, ["p"], rng.randint(0, max_depth), global_modalities=True)
        tf, _ = eliminate_global(f, U)
        for S, union in zip(models, unions):
            report = main_lemma_check(f, S, U, translated=tf, union=union)
            rep.checks += 1
            if not report.ok:
                rep.failures.append(
                    _failure(seed, i, S, f, translated=m_.print_mu(tf), states=report.mismatches)
                )
    return rep


SUITES = {
    "union-closure": union_closure,
    "adequacy": adequacy,
    "determinacy": determinacy,
    "invariance": invariance,
    "global-invariance": global_invariance,
    "kripke-roundtrip": kripke_roundtrip,
    "generator-oracle": generator_oracle,
    "eq-translation": eq_translation,
    "binddef": binddef,
    "usim": usim,
    "main-lemma": main_lemma,
    "fixpoints": fixpoints,
}
