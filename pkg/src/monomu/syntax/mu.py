"""Formulas of the monotone modal mu-calculus with global modalities.

Formulas are kept in negation normal form: negation only ever appears in
front of a propositional variable.  The global-modality-free fragment is
the plain monotone mu-calculus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from monomu.errors import ParseError
from monomu.syntax._lexer import TokenStream


class MuFormula:
    """Base class of formula nodes."""

    __slots__ = ()

    def __str__(self):
        return print_mu(self)


@dataclass(frozen=True)
class Atom(MuFormula):
    name: str


@dataclass(frozen=True)
class NegAtom(MuFormula):
    name: str


@dataclass(frozen=True)
class Top(MuFormula):
    pass


@dataclass(frozen=True)
class Bot(MuFormula):
    pass


@dataclass(frozen=True)
class And(MuFormula):
    left: MuFormula
    right: MuFormula


@dataclass(frozen=True)
class Or(MuFormula):
    left: MuFormula
    right: MuFormula


@dataclass(frozen=True)
class Box(MuFormula):
    arg: MuFormula


@dataclass(frozen=True)
class Dia(MuFormula):
    arg: MuFormula


@dataclass(frozen=True)
class GBox(MuFormula):
    """Global box: true everywhere iff the argument holds at every state."""

    arg: MuFormula


@dataclass(frozen=True)
class GDia(MuFormula):
    """Global diamond: true everywhere iff the argument holds somewhere."""

    arg: MuFormula


@dataclass(frozen=True)
class Mu(MuFormula):
    var: str
    body: MuFormula


@dataclass(frozen=True)
class Nu(MuFormula):
    var: str
    body: MuFormula


TOP = Top()
BOT = Bot()

_BINARY = (And, Or)
_UNARY = (Box, Dia, GBox, GDia)
_BINDERS = (Mu, Nu)
_LEAVES = (Atom, NegAtom, Top, Bot)


def children(f):
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    if isinstance(f, _UNARY):
        return (f.arg,)
    if isinstance(f, _BINDERS):
        return (f.body,)
    return ()


def rebuild(f, kids):
    """Return a node of the same shape as `f` with new children."""
    if isinstance(f, _BINARY):
        return type(f)(*kids)
    if isinstance(f, _UNARY):
        return type(f)(kids[0])
    if isinstance(f, _BINDERS):
        return type(f)(f.var, kids[0])
    return f


# -- parsing ---------------------------------------------------------------


def parse_mu(text: str) -> MuFormula:
    """Parse the ASCII concrete syntax.

    Binders extend as far right as possible, ``/\\`` binds tighter than
    ``\\/`` and both associate to the left.

    >>> parse_mu("mu p. []p \\/ []q")
    Mu(var='p', body=Or(left=Box(arg=Atom(name='p')), right=Box(arg=Atom(name='q'))))
    """
    ts = TokenStream(text)
    f = _formula(ts)
    ts.end()
    return f


def _formula(ts):
    for word, cls in (("mu", Mu), ("nu", Nu)):
        tok = ts.accept(word)
        if tok is not None:
            var = ts.identifier()
            ts.expect(".")
            body = _formula(ts)
            if var in negated_vars(body):
                raise ParseError(f"bound variable {var!r} occurs negated", tok.line, tok.column)
            return cls(var, body)
    return _disj(ts)


def _disj(ts):
    f = _conj(ts)
    while ts.accept("\\/"):
        f = Or(f, _conj(ts))
    return f


def _conj(ts):
    f = _unary(ts)
    while ts.accept("/\\"):
        f = And(f, _unary(ts))
    return f


_PREFIX = {"[]": Box, "<>": Dia, "[A]": GBox, "[E]": GDia}


def _unary(ts):
    cls = _PREFIX.get(ts.peek.text) if ts.peek.kind == "sym" else None
    if cls is not None:
        ts.next()
        return cls(_unary(ts))
    return _atom(ts)


def _atom(ts):
    if ts.accept("true"):
        return TOP
    if ts.accept("false"):
        return BOT
    if ts.accept("~"):
        return NegAtom(ts.identifier())
    if ts.accept("("):
        f = _formula(ts)
        ts.expect(")")
        return f
    return Atom(ts.identifier())


# -- printing --------------------------------------------------------------


def print_mu(f: MuFormula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, NegAtom):
        return "~" + f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, _UNARY):
        prefix = {Box: "[]", Dia: "<>", GBox: "[A]", GDia: "[E]"}[type(f)]
        arg = f.arg
        inner = print_mu(arg)
        if isinstance(arg, _BINARY + _BINDERS):
            inner = f"({inner})"
        return prefix + inner
    if isinstance(f, _BINARY):
        op = " /\\ " if isinstance(f, And) else " \\/ "
        return op.join(_operand(x) for x in (f.left, f.right))
    if isinstance(f, _BINDERS):
        word = "mu" if isinstance(f, Mu) else "nu"
        return f"{word} {f.var}. {print_mu(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _operand(f):
    text = print_mu(f)
    return f"({text})" if isinstance(f, _BINARY + _BINDERS) else text


# -- variables -------------------------------------------------------------


def free_vars(f: MuFormula) -> frozenset[str]:
    if isinstance(f, (Atom, NegAtom)):
        return frozenset({f.name})
    if isinstance(f, _BINDERS):
        return free_vars(f.body) - {f.var}
    out = frozenset()
    for c in children(f):
        out |= free_vars(c)
    return out


def negated_vars(f: MuFormula) -> frozenset[str]:
    """Variables with a free negated occurrence."""
    if isinstance(f, NegAtom):
        return frozenset({f.name})
    if isinstance(f, _BINDERS):
        return negated_vars(f.body) - {f.var}
    out = frozenset()
    for c in children(f):
        out |= negated_vars(c)
    return out


def bound_vars(f: MuFormula) -> list[str]:
    """Binder variables in pre-order, with repetitions if any."""
    out = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, _BINDERS):
            out.append(g.var)
        stack.extend(reversed(children(g)))
    return out


def all_vars(f: MuFormula) -> set[str]:
    return set(free_vars(f)) | set(bound_vars(f)) | _occurring(f)


def _occurring(f):
    if isinstance(f, (Atom, NegAtom)):
        return {f.name}
    out = set()
    for c in children(f):
        out |= _occurring(c)
    return out


def fresh_name(base: str, used: set[str]) -> str:
    """Append the smallest positive integer suffix not in `used`; records the result."""
    k = 1
    while f"{base}{k}" in used:
        k += 1
    name = f"{base}{k}"
    used.add(name)
    return name


def is_global_free(f: MuFormula) -> bool:
    if isinstance(f, (GBox, GDia)):
        return False
    return all(is_global_free(c) for c in children(f))


def depth(f: MuFormula) -> int:
    kids = children(f)
    return 1 + max(depth(c) for c in kids) if kids else 0


def size(f: MuFormula) -> int:
    return 1 + sum(size(c) for c in children(f))


# -- structural operations -------------------------------------------------


def subformulas(f: MuFormula) -> list[MuFormula]:
    """Subformulas of `f` in pre-order, structurally equal ones collapsed."""
    seen = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen[g] = None
        stack.extend(reversed(children(g)))
    return list(seen)


def negate(f: MuFormula) -> MuFormula:
    """Negation normal form of the negation of a well-named formula."""
    return _negate(f, frozenset())


def _negate(f, keep):
    if isinstance(f, Atom):
        return f if f.name in keep else NegAtom(f.name)
    if isinstance(f, NegAtom):
        return Atom(f.name)
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, And):
        return Or(_negate(f.left, keep), _negate(f.right, keep))
    if isinstance(f, Or):
        return And(_negate(f.left, keep), _negate(f.right, keep))
    dual = {Box: Dia, Dia: Box, GBox: GDia, GDia: GBox}
    if type(f) in dual:
        return dual[type(f)](_negate(f.arg, keep))
    if isinstance(f, Mu):
        return Nu(f.var, _negate(f.body, keep | {f.var}))
    if isinstance(f, Nu):
        return Mu(f.var, _negate(f.body, keep | {f.var}))
    raise TypeError(f"not a formula: {f!r}")


def well_name(f: MuFormula) -> MuFormula:
    """Rename binders so that each has a unique variable not also free."""
    used = all_vars(f)
    taken = set(free_vars(f))

    def go(g, ren):
        if isinstance(g, Atom):
            return Atom(ren.get(g.name, g.name))
        if isinstance(g, NegAtom):
            return NegAtom(ren.get(g.name, g.name))
        if isinstance(g, _BINDERS):
            new = g.var if g.var not in taken else fresh_name(g.var, used)
            taken.add(new)
            return type(g)(new, go(g.body, {**ren, g.var: new}))
        return rebuild(g, [go(c, ren) for c in children(g)])

    return go(f, {})


def is_well_named(f: MuFormula) -> bool:
    names = bound_vars(f)
    return len(names) == len(set(names)) and not (set(names) & free_vars(f))


def binders(f: MuFormula) -> dict[str, MuFormula]:
    """Map each bound variable of a well-named formula to its binder node."""
    out = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, _BINDERS):
            if g.var in out:
                raise ValueError(f"variable {g.var!r} is bound twice; formula is not well-named")
            out[g.var] = g
        stack.extend(children(g))
    return out


def binding_definition(f: MuFormula, p: str) -> MuFormula:
    try:
        return binders(f)[p].body
    except KeyError:
        raise ValueError(f"{p!r} is not bound in {print_mu(f)}") from None


@dataclass(frozen=True)
class RankOrder:
    """Bound variables listed from lowest to highest rank."""

    vars: tuple[str, ...]
    kinds: tuple[str, ...]  # "mu" or "nu", parallel to `vars`

    def kind(self, v):
        return self.kinds[self.vars.index(v)]

    def index(self, v):
        return self.vars.index(v)


def ranks_higher(f: MuFormula) -> dict[str, set[str]]:
    """For each bound q, the bound variables that occur free in its definition."""
    bs = binders(f)
    return {q: (free_vars(b.body) & bs.keys()) - {q} for q, b in bs.items()}


def rank_order(f: MuFormula) -> RankOrder:
    """Linearize bound variables so higher-ranking ones come later.

    Incomparable variables are ordered alphabetically.
    """
    bs = binders(f)
    above = ranks_higher(f)
    indegree = {v: 0 for v in bs}
    for q, higher in above.items():
        for p in higher:
            indegree[p] += 1
    ready = sorted(v for v, d in indegree.items() if d == 0)
    order = []
    while ready:
        q = ready.pop(0)
        order.append(q)
        for p in above[q]:
            indegree[p] -= 1
            if indegree[p] == 0:
                ready.append(p)
        ready.sort()
    if len(order) != len(bs):
        raise ValueError("cyclic rank relation; formula is corrupted")
    kinds = tuple("mu" if isinstance(bs[v], Mu) else "nu" for v in order)
    return RankOrder(tuple(order), kinds)


def substitute(f: MuFormula, old: str, new: str) -> MuFormula:
    """Replace free occurrences of variable `old` by the unused variable `new`."""
    if new in all_vars(f):
        raise ValueError(f"substitution target {new!r} already occurs in the formula")

    def go(g):
        if isinstance(g, (Atom, NegAtom)):
            return type(g)(new) if g.name == old else g
        if isinstance(g, _BINDERS) and g.var == old:
            return g
        return rebuild(g, [go(c) for c in children(g)])

    return go(f)


# -- sampling --------------------------------------------------------------


def random_formula(
    rng: random.Random,
    vocab,
    max_depth: int,
    *,
    global_modalities: bool = False,
    fixpoints: bool = True,
    positive=(),
) -> MuFormula:
    """Sample a well-named formula of depth at most `max_depth`.

    Bound variables are named ``x1, x2, ...`` avoiding the vocabulary.
    Variables in `positive` may occur, but never negated; this is how a
    body for an enclosing binder is sampled.
    """
    vocab = sorted(vocab)
    used = set(vocab) | set(positive)
    ops = [(And, 2), (Or, 2), (Box, 2), (Dia, 2), (None, 1)]
    if global_modalities:
        ops += [(GBox, 1), (GDia, 1)]
    if fixpoints:
        ops += [(Mu, 1.5), (Nu, 1.5)]
    kinds, weights = zip(*ops)

    def leaf(scope):
        if scope and rng.random() < 0.5:
            return Atom(rng.choice(scope))
        r = rng.random()
        if not vocab or r < 0.1:
            return rng.choice((TOP, BOT))
        v = rng.choice(vocab)
        return Atom(v) if r < 0.6 else NegAtom(v)

    def gen(d, scope):
        if d == 0:
            return leaf(scope)
        kind = rng.choices(kinds, weights)[0]
        if kind is None:
            return leaf(scope)
        if kind in _BINARY:
            return kind(gen(d - 1, scope), gen(d - 1, scope))
        if kind in _UNARY:
            return kind(gen(d - 1, scope))
        var = fresh_name("x", used)
        return kind(var, gen(d - 1, scope + [var]))

    return gen(max_depth, list(positive))
