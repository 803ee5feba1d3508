"""Monadic second-order logic over neighborhood structures.

All variables are second-order (set) variables.  The core atoms are
``sr(p)`` (p is exactly the designated point), ``p <= q`` (inclusion) and
``box(p, q)`` (q is a neighborhood of every member of p).  Implication,
equivalence, universal quantification and the set predicates ``sing``,
``empty`` and ``eqv`` are sugar removed by :func:`desugar_nmso`.
"""

from __future__ import annotations

from dataclasses import dataclass

from monomu.syntax._lexer import TokenStream
from monomu.syntax.mu import fresh_name


class NmsoFormula:
    __slots__ = ()

    def __str__(self):
        return print_nmso(self)


@dataclass(frozen=True)
class Sr(NmsoFormula):
    var: str


@dataclass(frozen=True)
class Sub(NmsoFormula):
    left: str
    right: str


@dataclass(frozen=True)
class BoxRel(NmsoFormula):
    source: str
    target: str


@dataclass(frozen=True)
class Not(NmsoFormula):
    arg: NmsoFormula


@dataclass(frozen=True)
class And(NmsoFormula):
    left: NmsoFormula
    right: NmsoFormula


@dataclass(frozen=True)
class Or(NmsoFormula):
    left: NmsoFormula
    right: NmsoFormula


@dataclass(frozen=True)
class Exists(NmsoFormula):
    var: str
    body: NmsoFormula


@dataclass(frozen=True)
class Implies(NmsoFormula):
    left: NmsoFormula
    right: NmsoFormula


@dataclass(frozen=True)
class Iff(NmsoFormula):
    left: NmsoFormula
    right: NmsoFormula


@dataclass(frozen=True)
class Forall(NmsoFormula):
    var: str
    body: NmsoFormula


@dataclass(frozen=True)
class Sing(NmsoFormula):
    var: str


@dataclass(frozen=True)
class Empty(NmsoFormula):
    var: str


@dataclass(frozen=True)
class Eqv(NmsoFormula):
    left: str
    right: str


CORE = (Sr, Sub, BoxRel, Not, And, Or, Exists)
SUGAR = (Implies, Iff, Forall, Sing, Empty, Eqv)
_ATOMS = (Sr, Sub, BoxRel, Sing, Empty, Eqv)
_BINARY = (And, Or, Implies, Iff)
_QUANT = (Exists, Forall)


def children(f):
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, _QUANT):
        return (f.body,)
    return ()


def atom_vars(f):
    if isinstance(f, (Sr, Sing, Empty)):
        return (f.var,)
    if isinstance(f, (Sub, Eqv)):
        return (f.left, f.right)
    if isinstance(f, BoxRel):
        return (f.source, f.target)
    return ()


def free_vars(f: NmsoFormula) -> frozenset[str]:
    if isinstance(f, _QUANT):
        return free_vars(f.body) - {f.var}
    out = frozenset(atom_vars(f))
    for c in children(f):
        out |= free_vars(c)
    return out


def all_vars(f: NmsoFormula) -> set[str]:
    out = set(atom_vars(f))
    if isinstance(f, _QUANT):
        out.add(f.var)
    for c in children(f):
        out |= all_vars(c)
    return out


def quantifier_depth(f: NmsoFormula) -> int:
    """Nesting depth of explicit quantifiers; sugar predicates count as atoms."""
    inner = max((quantifier_depth(c) for c in children(f)), default=0)
    return inner + 1 if isinstance(f, _QUANT) else inner


def is_core(f: NmsoFormula) -> bool:
    return isinstance(f, CORE) and all(is_core(c) for c in children(f))


def desugar_nmso(f: NmsoFormula) -> NmsoFormula:
    """Rewrite into the core constructors only."""
    used = all_vars(f)

    def empty(v):
        w = fresh_name("w", used)
        return Not(Exists(w, Not(Sub(v, w))))

    def go(g):
        if isinstance(g, (Sr, Sub, BoxRel)):
            return g
        if isinstance(g, Not):
            return Not(go(g.arg))
        if isinstance(g, And):
            return And(go(g.left), go(g.right))
        if isinstance(g, Or):
            return Or(go(g.left), go(g.right))
        if isinstance(g, Exists):
            return Exists(g.var, go(g.body))
        if isinstance(g, Forall):
            return Not(Exists(g.var, Not(go(g.body))))
        if isinstance(g, Implies):
            return Or(Not(go(g.left)), go(g.right))
        if isinstance(g, Iff):
            a, b = go(g.left), go(g.right)
            return And(Or(Not(a), b), Or(Not(b), a))
        if isinstance(g, Empty):
            return empty(g.var)
        if isinstance(g, Eqv):
            return And(Sub(g.left, g.right), Sub(g.right, g.left))
        if isinstance(g, Sing):
            v = g.var
            w = fresh_name("w", used)
            # every subset of v is empty or all of v
            below = Or(Not(Sub(w, v)), Or(empty(w), And(Sub(w, v), Sub(v, w))))
            return And(Not(empty(v)), Not(Exists(w, Not(below))))
        raise TypeError(f"not an NMSO formula: {g!r}")

    return go(f)


# -- parsing ---------------------------------------------------------------


def parse_nmso(text: str) -> NmsoFormula:
    ts = TokenStream(text)
    f = _nform(ts)
    ts.end()
    return f


def _nform(ts):
    for word, cls in (("exists", Exists), ("forall", Forall)):
        if ts.accept(word):
            var = ts.identifier()
            ts.expect(".")
            return cls(var, _nform(ts))
    return _ndisj(ts)


def _ndisj(ts):
    f = _nconj(ts)
    while ts.accept("|"):
        f = Or(f, _nconj(ts))
    return f


def _nconj(ts):
    f = _nneg(ts)
    while ts.accept("&"):
        f = And(f, _nneg(ts))
    return f


def _nneg(ts):
    if ts.accept("~"):
        return Not(_nneg(ts))
    if ts.accept("("):
        f = _nform(ts)
        if ts.accept("->"):
            f = Implies(f, _nform(ts))
        elif ts.accept("<->"):
            f = Iff(f, _nform(ts))
        ts.expect(")")
        return f
    return _natom(ts)


_UNARY_PRED = {"sr": Sr, "sing": Sing, "empty": Empty}
_BINARY_PRED = {"box": BoxRel, "eqv": Eqv}


def _natom(ts):
    word = ts.peek.text if ts.peek.kind == "id" else None
    if word in _UNARY_PRED:
        ts.next()
        ts.expect("(")
        v = ts.identifier()
        ts.expect(")")
        return _UNARY_PRED[word](v)
    if word in _BINARY_PRED:
        ts.next()
        ts.expect("(")
        a = ts.identifier()
        ts.expect(",")
        b = ts.identifier()
        ts.expect(")")
        return _BINARY_PRED[word](a, b)
    a = ts.identifier()
    ts.expect("<=")
    return Sub(a, ts.identifier())


# -- printing --------------------------------------------------------------


def print_nmso(f: NmsoFormula) -> str:
    if isinstance(f, Sub):
        return f"{f.left} <= {f.right}"
    if isinstance(f, (Sr, Sing, Empty)):
        name = {Sr: "sr", Sing: "sing", Empty: "empty"}[type(f)]
        return f"{name}({f.var})"
    if isinstance(f, (BoxRel, Eqv)):
        name = "box" if isinstance(f, BoxRel) else "eqv"
        a, b = atom_vars(f)
        return f"{name}({a}, {b})"
    if isinstance(f, Not):
        return "~" + _wrap(f.arg, _BINARY + _QUANT + (Sub,))
    if isinstance(f, (And, Or)):
        op = " & " if isinstance(f, And) else " | "
        return op.join(_wrap(x, _BINARY + _QUANT) for x in (f.left, f.right))
    if isinstance(f, (Implies, Iff)):
        op = " -> " if isinstance(f, Implies) else " <-> "
        return f"({_wrap(f.left, _QUANT)}{op}{print_nmso(f.right)})"
    if isinstance(f, _QUANT):
        word = "exists" if isinstance(f, Exists) else "forall"
        return f"{word} {f.var}. {print_nmso(f.body)}"
    raise TypeError(f"not an NMSO formula: {f!r}")


def _wrap(f, kinds):
    text = print_nmso(f)
    if isinstance(f, (Implies, Iff)):
        return text
    return f"({text})" if isinstance(f, kinds) else text
