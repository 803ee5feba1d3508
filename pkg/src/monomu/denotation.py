"""Denotational semantics.

Formula extensions are computed by direct recursion, with fixpoints found
by Knaster-Tarski iteration (from the empty set for mu, from the full set
for nu).  NMSO formulas are checked by brute force over all subsets.
"""

from __future__ import annotations

from typing import Mapping

from monomu.errors import GuardError
from monomu.model import NeighborhoodModel, PointedModel
from monomu.syntax import mu as m_
from monomu.syntax import nmso as n_


def _env_masks(model, env):
    bits = model.bits
    masks = dict(bits.val)
    for v, z in (env or {}).items():
        masks[v] = bits.mask(z)
    return masks


def extension_mask(model: NeighborhoodModel, f: m_.MuFormula, env: Mapping[str, int]) -> int:
    """Extension of `f` as a bitmask; `env` maps every free variable to a bitmask."""
    return _Evaluator(model.bits).run(f, dict(env))


class _Evaluator:
    def __init__(self, bits):
        self.bits = bits
        self.full = bits.full

    def run(self, f, env):
        if isinstance(f, m_.Atom):
            try:
                return env[f.name]
            except KeyError:
                raise ValueError(f"variable {f.name!r} is outside the model vocabulary") from None
        if isinstance(f, m_.NegAtom):
            try:
                return self.full ^ env[f.name]
            except KeyError:
                raise ValueError(f"variable {f.name!r} is outside the model vocabulary") from None
        if isinstance(f, m_.Top):
            return self.full
        if isinstance(f, m_.Bot):
            return 0
        if isinstance(f, m_.And):
            return self.run(f.left, env) & self.run(f.right, env)
        if isinstance(f, m_.Or):
            return self.run(f.left, env) | self.run(f.right, env)
        if isinstance(f, m_.Box):
            return self.bits.box(self.run(f.arg, env))
        if isinstance(f, m_.Dia):
            # u satisfies <>f iff the complement of [[f]] is not a neighborhood of u
            return self.full ^ self.bits.box(self.full ^ self.run(f.arg, env))
        if isinstance(f, m_.GBox):
            return self.full if self.run(f.arg, env) == self.full else 0
        if isinstance(f, m_.GDia):
            return self.full if self.run(f.arg, env) else 0
        if isinstance(f, (m_.Mu, m_.Nu)):
            saved = env.get(f.var)
            z = 0 if isinstance(f, m_.Mu) else self.full
            while True:
                env[f.var] = z
                nxt = self.run(f.body, env)
                if nxt == z:
                    break
                z = nxt
            if saved is None:
                del env[f.var]
            else:
                env[f.var] = saved
            return z
        raise TypeError(f"not a formula: {f!r}")


def eval_mu(model: NeighborhoodModel, f: m_.MuFormula, env: Mapping | None = None) -> frozenset[str]:
    """The set of states satisfying `f`.

    `env` optionally overrides or extends the valuation (variable -> states).
    """
    masks = _env_masks(model, env)
    missing = m_.free_vars(f) - masks.keys()
    if missing:
        raise ValueError(f"free variables {sorted(missing)} are outside the model vocabulary")
    return model.bits.members(_Evaluator(model.bits).run(f, masks))


def approximants(
    model: NeighborhoodModel, f: m_.MuFormula, limit: int | None = None, env: Mapping | None = None
) -> list[frozenset[str]]:
    """Approximation chain of a fixpoint formula.

    For ``mu v. body`` the chain starts at the empty set and applies the body
    until it stabilizes or `limit` steps were taken; ``nu`` starts at the full
    state set.  The stable value is included once.
    """
    if not isinstance(f, (m_.Mu, m_.Nu)):
        raise ValueError("approximants needs a fixpoint formula")
    masks = _env_masks(model, env)
    ev = _Evaluator(model.bits)
    z = 0 if isinstance(f, m_.Mu) else model.bits.full
    chain = [z]
    steps = 0
    while limit is None or steps < limit:
        masks[f.var] = z
        nxt = ev.run(f.body, masks)
        steps += 1
        if nxt == z:
            break
        chain.append(nxt)
        z = nxt
    return [model.bits.members(x) for x in chain]


# -- NMSO --------------------------------------------------------------------

MAX_NMSO_STATES = 12
MAX_QUANTIFIER_DEPTH = 8


def eval_nmso(
    pm: PointedModel,
    f: n_.NmsoFormula,
    *,
    max_states: int | None = MAX_NMSO_STATES,
    max_quantifier_depth: int | None = MAX_QUANTIFIER_DEPTH,
) -> bool:
    """Truth of an NMSO formula at a pointed model, by exhaustive search.

    Quantifiers range over all subsets of the state set.  Results of
    subformulas are memoized on the values of their free variables, which
    keeps nested quantifiers tractable without changing the semantics.
    Pass ``None`` to lift a guard.
    """
    model = pm.model
    if max_states is not None and len(model.states) > max_states:
        raise GuardError(f"{len(model.states)} states exceed the NMSO guard of {max_states}")
    qd = n_.quantifier_depth(f)
    if max_quantifier_depth is not None and qd > max_quantifier_depth:
        raise GuardError(f"quantifier depth {qd} exceeds the NMSO guard of {max_quantifier_depth}")
    missing = n_.free_vars(f) - model.valuation.keys()
    if missing:
        raise ValueError(f"free variables {sorted(missing)} are outside the model vocabulary")
    return _NmsoEvaluator(model, pm.point).run(f, dict(model.bits.val))


def nmso_extension(model: NeighborhoodModel, f: n_.NmsoFormula, **guards) -> frozenset[str]:
    return frozenset(s for s in model.states if eval_nmso(PointedModel(model, s), f, **guards))


def _subset_order(n):
    # increasing popcount, then numeric order
    return sorted(range(1 << n), key=lambda z: (bin(z).count("1"), z))


class _NmsoEvaluator:
    def __init__(self, model, point):
        self.bits = model.bits
        self.point = 1 << self.bits.index[point]
        self.subsets = _subset_order(self.bits.n)
        # neighborhood test per state bit, for box(p, q)
        self.state_gens = list(enumerate(self.bits.gens))
        self.memo = {}
        self.fv = {}

    def free(self, f):
        key = id(f)
        out = self.fv.get(key)
        if out is None:
            out = tuple(sorted(n_.free_vars(f)))
            self.fv[key] = out
        return out

    def run(self, f, env):
        if isinstance(f, n_.Sr):
            return env[f.var] == self.point
        if isinstance(f, n_.Sub):
            return env[f.left] & ~env[f.right] == 0
        if isinstance(f, n_.BoxRel):
            src, z = env[f.source], env[f.target]
            return all(
                any(g & z == g for g in gens) for i, gens in self.state_gens if src >> i & 1
            )
        if isinstance(f, n_.Sing):
            z = env[f.var]
            return z != 0 and z & (z - 1) == 0
        if isinstance(f, n_.Empty):
            return env[f.var] == 0
        if isinstance(f, n_.Eqv):
            return env[f.left] == env[f.right]
        if isinstance(f, n_.Not):
            return not self.run(f.arg, env)
        if isinstance(f, n_.And):
            return self.run(f.left, env) and self.run(f.right, env)
        if isinstance(f, n_.Or):
            return self.run(f.left, env) or self.run(f.right, env)
        if isinstance(f, n_.Implies):
            return not self.run(f.left, env) or self.run(f.right, env)
        if isinstance(f, n_.Iff):
            return self.run(f.left, env) == self.run(f.right, env)
        if isinstance(f, (n_.Exists, n_.Forall)):
            key = (id(f),) + tuple(env[v] for v in self.free(f))
            hit = self.memo.get(key)
            if hit is not None:
                return hit
            want = isinstance(f, n_.Exists)
            saved = env.get(f.var)
            result = not want
            for z in self.subsets:
                env[f.var] = z
                if self.run(f.body, env) == want:
                    result = want
                    break
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
            self.memo[key] = result
            return result
        raise TypeError(f"not an NMSO formula: {f!r}")
