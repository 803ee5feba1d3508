"""Translations between the logics.

* :func:`to_nmso` embeds the monotone mu-calculus into NMSO through
  formulas ``Eq(phi, p)`` that pin the set variable p to the extension of
  phi.
* :func:`eliminate_global` removes global modalities from a formula by
  deciding each ``[A]psi`` / ``[E]psi`` on a finite universe model that
  contains a copy of every small pointed model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from monomu.bisim import bisimilar, greatest_bisimulation
from monomu.denotation import eval_mu
from monomu.errors import GuardError
from monomu.game import Basic, build_arena, solve
from monomu.model import (
    InsertionMap,
    NeighborhoodModel,
    PointedModel,
    disjoint_union,
    enumerate_models,
    random_model,
)
from monomu.syntax import mu as m_
from monomu.syntax import nmso as n_

# -- Eq / c -------------------------------------------------------------------


def _pointwise(p, condition, used):
    """forall x. (sing(x) -> (x <= p <-> condition(x)))"""
    x = m_.fresh_name("x", used)
    return n_.Forall(x, n_.Implies(n_.Sing(x), n_.Iff(n_.Sub(x, p), condition(x))))


def _complement(c, r, used):
    return _pointwise(c, lambda x: n_.Not(n_.Sub(x, r)), used)


def eq_formula(f: m_.MuFormula, p: str, used: set[str] | None = None) -> n_.NmsoFormula:
    """An NMSO formula true exactly when the value of `p` is the extension of `f`.

    `f` must be global-free and well-named, and `p` must not occur in it.
    `used` collects every name taken so far; fresh names avoid it.
    """
    if not m_.is_global_free(f):
        raise ValueError("Eq is only defined for formulas without global modalities")
    if used is None:
        used = m_.all_vars(f) | {p}
        if p in m_.all_vars(f):
            raise ValueError(f"target variable {p!r} occurs in the formula")
    return _eq(f, p, used)


def _eq(f, p, used):
    if isinstance(f, m_.Atom):
        return n_.Eqv(p, f.name)
    if isinstance(f, m_.NegAtom):
        return _complement(p, f.name, used)
    if isinstance(f, m_.Top):
        w = m_.fresh_name("w", used)
        return n_.Forall(w, n_.Sub(w, p))
    if isinstance(f, m_.Bot):
        return n_.Empty(p)
    if isinstance(f, (m_.And, m_.Or)):
        a = m_.fresh_name("a", used)
        b = m_.fresh_name("b", used)
        op = n_.And if isinstance(f, m_.And) else n_.Or
        combine = _pointwise(p, lambda x: op(n_.Sub(x, a), n_.Sub(x, b)), used)
        return n_.Exists(
            a, n_.And(_eq(f.left, a, used), n_.Exists(b, n_.And(_eq(f.right, b, used), combine)))
        )
    if isinstance(f, m_.Box):
        q = m_.fresh_name("q", used)
        r = m_.fresh_name("r", used)
        return n_.Forall(q, n_.Iff(n_.Sub(q, p), n_.Exists(r, n_.And(_eq(f.arg, r, used), n_.BoxRel(q, r)))))
    if isinstance(f, m_.Dia):
        # x is in p iff the complement c of [[arg]] is not a neighborhood of x
        r = m_.fresh_name("r", used)
        c = m_.fresh_name("c", used)
        not_box = lambda x: n_.Not(n_.Exists(c, n_.And(_complement(c, r, used), n_.BoxRel(x, c))))  # noqa: E731
        return n_.Exists(r, n_.And(_eq(f.arg, r, used), _pointwise(p, not_box, used)))
    if isinstance(f, (m_.Mu, m_.Nu)):
        if p in m_.all_vars(f):
            # p is an enclosing fixpoint variable free in f; pin a fresh copy instead
            k = m_.fresh_name("k", used)
            return n_.Exists(k, n_.And(_eq(f, k, used), n_.Eqv(p, k)))
        p2 = m_.fresh_name(p + "_", used)
        here = _eq(m_.substitute(f.body, f.var, p), p, used)
        there = _eq(m_.substitute(f.body, f.var, p2), p2, used)
        # least: below every fixpoint; greatest: above every fixpoint
        order = n_.Sub(p, p2) if isinstance(f, m_.Mu) else n_.Sub(p2, p)
        return n_.And(here, n_.Forall(p2, n_.Implies(there, order)))
    raise TypeError(f"not a formula: {f!r}")


def to_nmso(f: m_.MuFormula) -> n_.NmsoFormula:
    """c(f) = exists p. exists q. (sr(q) & q <= p & Eq(f, p))."""
    if not m_.is_global_free(f):
        raise ValueError("only formulas without global modalities translate to NMSO")
    used = m_.all_vars(f)
    p = m_.fresh_name("p", used)
    eq = eq_formula(f, p, used)
    q = m_.fresh_name("q", used)
    return n_.Exists(p, n_.Exists(q, n_.And(n_.And(n_.Sr(q), n_.Sub(q, p)), eq)))


# -- universe and global-modality elimination ---------------------------------


@dataclass(frozen=True)
class UniverseModel:
    """Disjoint union of every model with at most `max_states` states."""

    model: NeighborhoodModel
    max_states: int
    vocab: tuple[str, ...]
    insertions: list[InsertionMap] = field(repr=False, compare=False)
    summands: list[NeighborhoodModel] = field(repr=False, compare=False)

    @property
    def provenance(self):
        return {"max_states": self.max_states, "vocab": list(self.vocab)}

    def covers(self, m: NeighborhoodModel) -> bool:
        return len(m.states) <= self.max_states and m.vocabulary == frozenset(self.vocab)


def build_universe(max_states: int, vocab, *, force: bool = False) -> UniverseModel:
    vocab = tuple(sorted(vocab))
    if not force and (max_states > 2 or len(vocab) > 1):
        raise GuardError(f"universe over {max_states} states and {len(vocab)} variables exceeds the guard")
    summands = [
        m
        for k in range(1, max_states + 1)
        for m in enumerate_models(k, vocab, max_states=max(3, max_states), max_vocab=max(2, len(vocab)))
    ]
    model, insertions = disjoint_union(summands)
    return UniverseModel(model, max_states, vocab, insertions, summands)


@dataclass
class TranslationTable:
    """Translation of each subformula, and where the existential player wins
    at ``(u, psi)`` in the universe game."""

    formula: m_.MuFormula
    translation: dict = field(default_factory=dict)
    winning: dict = field(default_factory=dict)


def eliminate_global(f: m_.MuFormula, universe: UniverseModel) -> tuple[m_.MuFormula, TranslationTable]:
    """Replace ``[A]psi`` by true iff psi is won everywhere in the universe
    game (else false), and ``[E]psi`` by true iff it is won somewhere."""
    table = TranslationTable(f)
    if m_.is_global_free(f):
        table.translation = {g: g for g in m_.subformulas(f)}
        return f, table
    U = universe.model
    arena = build_arena(U, f)
    sol = solve(arena)
    for g in m_.subformulas(f):
        table.winning[g] = frozenset(u for u in U.states if arena.id(Basic(u, g)) in sol.win_E)
    full = len(U.states)

    def t(g):
        hit = table.translation.get(g)
        if hit is not None:
            return hit
        if isinstance(g, m_.GBox):
            out = m_.TOP if len(table.winning[g.arg]) == full else m_.BOT
            t(g.arg)
        elif isinstance(g, m_.GDia):
            out = m_.TOP if table.winning[g.arg] else m_.BOT
            t(g.arg)
        else:
            out = m_.rebuild(g, [t(c) for c in m_.children(g)])
        table.translation[g] = out
        return out

    return t(f), table


@dataclass
class LemmaReport:
    formula: m_.MuFormula
    translated: m_.MuFormula
    agreements: list[str]
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def main_lemma_check(
    f: m_.MuFormula,
    S: NeighborhoodModel,
    universe: UniverseModel,
    *,
    translated: m_.MuFormula | None = None,
    union: tuple[NeighborhoodModel, list[InsertionMap]] | None = None,
) -> LemmaReport:
    """Compare (S, s) |= t(f) with (U + S, s) |= f at every state s of S.

    `translated` and `union` may be passed in to reuse work across calls.
    """
    if not universe.covers(S):
        raise ValueError(
            f"model with {len(S.states)} states over {sorted(S.vocabulary)} is not covered by the universe"
        )
    if translated is None:
        translated, _ = eliminate_global(f, universe)
    if union is None:
        union = disjoint_union([universe.model, S])
    big, (_, ins) = union
    lhs = eval_mu(S, translated)
    rhs = eval_mu(big, f)
    agree, mismatch = [], []
    for s in S.states:
        if (s in lhs) == (ins(s) in rhs):
            agree.append(s)
        else:
            mismatch.append(s)
    return LemmaReport(f, translated, agree, mismatch)


def universe_relation(universe: UniverseModel, S: NeighborhoodModel):
    """The relation Id_U together with, for each state of S, its bisimilar
    universe points; returned as pairs between U + S and U."""
    big, (ins_u, ins_s) = disjoint_union([universe.model, S])
    pairs = {(ins_u(u), u) for u in universe.model.states}
    g = greatest_bisimulation(S, universe.model)
    pairs |= {(ins_s(t), u) for t, u in g.pairs}
    return big, pairs


# -- invariance probe ---------------------------------------------------------


@dataclass
class Counterexample:
    left: PointedModel
    right: PointedModel
    left_value: bool
    right_value: bool


@dataclass
class ProbeReport:
    formula: m_.MuFormula
    pairs_checked: int
    counterexamples: list[Counterexample]

    @property
    def invariant_on_samples(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        if self.counterexamples:
            return f"not bisimulation invariant: {len(self.counterexamples)} counterexample pair(s)"
        return (
            f"no counterexample in {self.pairs_checked} bisimilar pairs"
            " (evidence of invariance, not a proof)"
        )


def _duplicate_state(m: NeighborhoodModel, t: str, name: str) -> NeighborhoodModel:
    """Add a fresh copy of `t` with the same generators and valuation."""
    gens = {s: m.neighborhoods[s] for s in m.states}
    gens[name] = m.neighborhoods[t]
    val = {v: z | {name} if t in z else z for v, z in m.valuation.items()}
    return NeighborhoodModel(m.states + (name,), gens, val)


def bisimilar_pairs(vocab, *, samples: int = 50, max_states: int = 3, seed=0):
    """Yield pointed-model pairs related by construction.

    Exhaustive 1-state unions first, then random disjoint-union insertions
    and duplicated-state models.
    """
    vocab = sorted(vocab)
    singles = list(enumerate_models(1, vocab, max_vocab=max(2, len(vocab))))
    for a in singles:
        for b in singles:
            big, (ins, _) = disjoint_union([a, b])
            yield PointedModel(a, "s0"), PointedModel(big, ins("s0"))
    rng = random.Random(seed)
    for _ in range(samples):
        m = random_model(rng.randint(1, max_states), vocab, rng=rng)
        if rng.random() < 0.5:
            other = random_model(rng.randint(1, max_states), vocab, rng=rng)
            big, (ins, _) = disjoint_union([m, other])
            for s in m.states:
                yield PointedModel(m, s), PointedModel(big, ins(s))
        else:
            t = rng.choice(m.states)
            dup = _duplicate_state(m, t, "d0")
            yield PointedModel(m, t), PointedModel(dup, "d0")
            for s in m.states:
                yield PointedModel(m, s), PointedModel(dup, s)


def invariance_probe(f: m_.MuFormula, *, samples: int = 50, max_states: int = 3, seed=0) -> ProbeReport:
    """Search for bisimilar pointed models that disagree on `f`.

    Finding one refutes bisimulation invariance; finding none is only evidence.
    """
    vocab = m_.free_vars(f)
    cex = []
    checked = 0
    cache = {}
    for left, right in bisimilar_pairs(vocab, samples=samples, max_states=max_states, seed=seed):
        if not bisimilar(left, right):
            raise AssertionError("constructed pair is not bisimilar")
        checked += 1
        vals = []
        for pm in (left, right):
            key = id(pm.model)
            if key not in cache:
                cache[key] = (pm.model, eval_mu(pm.model, f))
            vals.append(pm.point in cache[key][1])
        if vals[0] != vals[1]:
            cex.append(Counterexample(left, right, vals[0], vals[1]))
    return ProbeReport(f, checked, cex)
