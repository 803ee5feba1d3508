"""Neighborhood bisimulations between finite models.

Pairs must agree on every variable of the shared vocabulary.  The two
transfer clauses are checked on generators only, which is equivalent under
monotone closure: if a witness works for a generator it works for every
superset, and any witness neighborhood contains a generator that also works.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from monomu.model import NeighborhoodModel, PointedModel, upward_closure


@dataclass(frozen=True)
class Relation:
    left: NeighborhoodModel
    right: NeighborhoodModel
    pairs: frozenset[tuple[str, str]]

    def __post_init__(self):
        pairs = frozenset(tuple(p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        lset, rset = set(self.left.states), set(self.right.states)
        bad = [p for p in pairs if p[0] not in lset or p[1] not in rset]
        if bad:
            raise ValueError(f"pairs reference unknown states: {sorted(bad)}")

    def __contains__(self, pair):
        return tuple(pair) in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __or__(self, other):
        return Relation(self.left, self.right, self.pairs | other.pairs)

    def is_full(self) -> bool:
        return {a for a, _ in self.pairs} == set(self.left.states) and {b for _, b in self.pairs} == set(
            self.right.states
        )

    def __hash__(self):
        return hash(self.pairs)


def _check_vocab(ml, mr):
    if ml.vocabulary != mr.vocabulary:
        raise ValueError(f"vocabulary mismatch: {sorted(ml.vocabulary)} vs {sorted(mr.vocabulary)}")


def _harmonious(ml, mr, s, t):
    return all((s in ml.valuation[v]) == (t in mr.valuation[v]) for v in ml.valuation)


class _Refiner:
    """Bitmask bookkeeping for one pair of models."""

    def __init__(self, ml, mr, closure):
        self.bl, self.br = ml.bits, mr.bits
        if closure:
            self.gl = [tuple(self.bl.mask(z) for z in upward_closure(ml, s)) for s in ml.states]
            self.gr = [tuple(self.br.mask(z) for z in upward_closure(mr, s)) for s in mr.states]
        else:
            self.gl, self.gr = self.bl.gens, self.br.gens

    def ok(self, i, j, rows, cols):
        """Transfer clauses for the pair (left i, right j) under `rows`/`cols`.

        rows[i] is the mask of right states related to left state i,
        cols[j] the mask of left states related to right state j.
        """
        for z in self.gl[i]:
            image = _image(z, rows)
            if not any(w & image == w for w in self.gr[j]):
                return False
        for w in self.gr[j]:
            image = _image(w, cols)
            if not any(z & image == z for z in self.gl[i]):
                return False
        return True


def _image(mask, rel):
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= rel[i]
        mask >>= 1
        i += 1
    return out


def _tables(r: Relation):
    bl, br = r.left.bits, r.right.bits
    rows = [0] * bl.n
    cols = [0] * br.n
    for a, b in r.pairs:
        i, j = bl.index[a], br.index[b]
        rows[i] |= 1 << j
        cols[j] |= 1 << i
    return rows, cols


def is_bisimulation(r: Relation, *, closure: bool = False) -> bool:
    _check_vocab(r.left, r.right)
    ref = _Refiner(r.left, r.right, closure)
    rows, cols = _tables(r)
    for a, b in r.pairs:
        if not _harmonious(r.left, r.right, a, b):
            return False
        if not ref.ok(r.left.bits.index[a], r.right.bits.index[b], rows, cols):
            return False
    return True


def greatest_bisimulation(
    ml: NeighborhoodModel, mr: NeighborhoodModel, *, closure: bool = False, within=None
) -> Relation:
    """Largest bisimulation, by deleting violating pairs until stable.

    With `within` (a set of state pairs) the result is the largest
    bisimulation contained in it.
    """
    _check_vocab(ml, mr)
    ref = _Refiner(ml, mr, closure)
    li, ri = ml.bits.index, mr.bits.index
    candidates = (
        ((i, j) for i in range(len(ml.states)) for j in range(len(mr.states)))
        if within is None
        else ((li[a], ri[b]) for a, b in within)
    )
    pairs = {(i, j) for i, j in candidates if _harmonious(ml, mr, ml.states[i], mr.states[j])}
    rows = [0] * len(ml.states)
    cols = [0] * len(mr.states)
    for i, j in pairs:
        rows[i] |= 1 << j
        cols[j] |= 1 << i
    changed = True
    while changed:
        changed = False
        for i, j in sorted(pairs):
            if not ref.ok(i, j, rows, cols):
                pairs.discard((i, j))
                rows[i] &= ~(1 << j)
                cols[j] &= ~(1 << i)
                changed = True
    return Relation(ml, mr, frozenset((ml.states[i], mr.states[j]) for i, j in pairs))


def bisimilar(pl: PointedModel, pr: PointedModel) -> bool:
    return (pl.point, pr.point) in greatest_bisimulation(pl.model, pr.model)


def globally_bisimilar(pl: PointedModel, pr: PointedModel) -> bool:
    """Every global bisimulation lies inside the greatest one, so it suffices
    to check that the greatest is full and relates the points."""
    g = greatest_bisimulation(pl.model, pr.model)
    return g.is_full() and (pl.point, pr.point) in g


def write_relation(r: Relation) -> bytes:
    return json.dumps({"pairs": sorted([a, b] for a, b in r.pairs)}).encode("utf-8")
