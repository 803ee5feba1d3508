"""Finite monotone neighborhood models.

A model stores, for every state, the antichain of its minimal
neighborhoods ("generators").  A set Z is a neighborhood of s iff some
generator of s is contained in Z, so every family is upward closed by
construction.  Note the difference between a state whose only generator is
the empty set (every subset, including the empty one, is a neighborhood)
and a state with no generators at all (no neighborhoods).
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from monomu.errors import GuardError, ModelError


def state_key(name):
    """Natural sort key: ``s2`` sorts before ``s10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", name) if t]


def _sorted_states(states):
    return tuple(sorted(states, key=state_key))


@dataclass(frozen=True)
class NeighborhoodModel:
    states: tuple[str, ...]
    neighborhoods: Mapping[str, frozenset[frozenset[str]]]
    valuation: Mapping[str, frozenset[str]]

    def __post_init__(self):
        states = _sorted_states(self.states)
        gens = {s: frozenset(frozenset(g) for g in self.neighborhoods.get(s, ())) for s in states}
        for s in self.neighborhoods:
            if s not in gens:
                gens[s] = frozenset(frozenset(g) for g in self.neighborhoods[s])
        val = {v: frozenset(z) for v, z in sorted(self.valuation.items())}
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "neighborhoods", gens)
        object.__setattr__(self, "valuation", val)

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.valuation)

    def generators(self, s) -> frozenset[frozenset[str]]:
        return self.neighborhoods[s]

    def __len__(self):
        return len(self.states)

    # Bitmask view used by the evaluators; bit i stands for states[i].
    @cached_property
    def bits(self) -> "_Bits":
        return _Bits(self)


class _Bits:
    def __init__(self, m: NeighborhoodModel):
        self.index = {s: i for i, s in enumerate(m.states)}
        self.n = len(m.states)
        self.full = (1 << self.n) - 1
        self.gens = [tuple(self.mask(g) for g in sorted(m.neighborhoods[s], key=sorted)) for s in m.states]
        # (generator, owner bit) pairs for evaluating boxes over all states at once
        self.gen_pairs = [(g, 1 << i) for i, gs in enumerate(self.gens) for g in gs]
        self.val = {v: self.mask(z) for v, z in m.valuation.items()}
        self.states = m.states

    def mask(self, subset: Iterable[str]) -> int:
        out = 0
        for s in subset:
            out |= 1 << self.index[s]
        return out

    def members(self, mask: int) -> frozenset[str]:
        return frozenset(s for i, s in enumerate(self.states) if mask >> i & 1)

    def box(self, z: int) -> int:
        """States having `z` as a neighborhood."""
        out = 0
        for g, bit in self.gen_pairs:
            if g & z == g:
                out |= bit
        return out


@dataclass(frozen=True)
class PointedModel:
    model: NeighborhoodModel
    point: str

    def __post_init__(self):
        if self.point not in self.model.bits.index:
            raise ModelError(f"point {self.point!r} is not a state")


@dataclass(frozen=True)
class KripkeModel:
    states: tuple[str, ...]
    edges: frozenset[tuple[str, str]]
    valuation: Mapping[str, frozenset[str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "states", _sorted_states(self.states))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        object.__setattr__(self, "valuation", {v: frozenset(z) for v, z in sorted(self.valuation.items())})
        bad = [e for e in self.edges if e[0] not in self.states or e[1] not in self.states]
        if bad:
            raise ModelError(f"edges outside the state set: {sorted(bad)}")

    def successors(self, u) -> frozenset[str]:
        return frozenset(v for (w, v) in self.edges if w == u)


@dataclass(frozen=True)
class InsertionMap:
    """Embedding of the `source`-th summand into a disjoint union."""

    source: int
    mapping: Mapping[str, str]

    def __call__(self, s):
        return self.mapping[s]

    def image(self, subset):
        return frozenset(self.mapping[s] for s in subset)

    def graph(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.mapping.items())


def validate(m: NeighborhoodModel) -> list[str]:
    """Return the list of invariant violations; empty means the model is valid."""
    problems = []
    states = set(m.states)
    if len(states) != len(m.states):
        problems.append("duplicate state names")
    for s, gens in m.neighborhoods.items():
        if s not in states:
            problems.append(f"neighborhoods given for unknown state {s!r}")
            continue
        for g in gens:
            if not g <= states:
                problems.append(f"generator {sorted(g)} of {s!r} is not a subset of the states")
        for g, h in itertools.permutations(gens, 2):
            if g < h:
                problems.append(f"antichain violation at {s!r}: {sorted(g)} is contained in {sorted(h)}")
    for v, z in m.valuation.items():
        if not z <= states:
            problems.append(f"valuation of {v!r} mentions unknown states {sorted(z - states)}")
    return problems


def ensure_valid(m: NeighborhoodModel) -> NeighborhoodModel:
    problems = validate(m)
    if problems:
        raise ModelError(problems)
    return m


def minimal_sets(family) -> frozenset[frozenset[str]]:
    family = {frozenset(z) for z in family}
    return frozenset(z for z in family if not any(w < z for w in family))


def contains_neighborhood(m: NeighborhoodModel, s: str, z) -> bool:
    z = frozenset(z)
    return any(g <= z for g in m.neighborhoods[s])


def _all_subsets(states):
    for r in range(len(states) + 1):
        for combo in itertools.combinations(states, r):
            yield frozenset(combo)


def upward_closure(m: NeighborhoodModel, s: str, *, max_states: int = 12) -> frozenset[frozenset[str]]:
    """Explicit neighborhood family of `s`; exponential, meant as an oracle."""
    if len(m.states) > max_states:
        raise GuardError(f"upward closure needs {len(m.states)} states > {max_states}")
    return frozenset(z for z in _all_subsets(m.states) if contains_neighborhood(m, s, z))


def disjoint_union(models: list[NeighborhoodModel]) -> tuple[NeighborhoodModel, list[InsertionMap]]:
    """Disjoint union; the copy of state ``s`` from summand ``i`` is named ``"{i}.{s}"``."""
    if not models:
        raise ValueError("disjoint union of an empty family")
    vocab = models[0].vocabulary
    for m in models[1:]:
        if m.vocabulary != vocab:
            raise ValueError(f"vocabulary mismatch: {sorted(vocab)} vs {sorted(m.vocabulary)}")
    states, gens, inserts = [], {}, []
    val = {v: set() for v in vocab}
    for i, m in enumerate(models):
        ins = InsertionMap(i, {s: f"{i}.{s}" for s in m.states})
        inserts.append(ins)
        for s in m.states:
            states.append(ins(s))
            gens[ins(s)] = [ins.image(g) for g in m.neighborhoods[s]]
        for v, z in m.valuation.items():
            val[v] |= ins.image(z)
    return NeighborhoodModel(tuple(states), gens, val), inserts


def from_kripke(k: KripkeModel) -> NeighborhoodModel:
    """Neighborhoods of u are the supersets of its successor set."""
    gens = {u: [k.successors(u)] for u in k.states}
    return NeighborhoodModel(k.states, gens, k.valuation)


def to_kripke(m: NeighborhoodModel) -> KripkeModel:
    """u sees v iff v lies in every neighborhood of u.

    A state without neighborhoods sees every state (empty intersection
    taken relative to the state set).
    """
    edges = set()
    for u in m.states:
        core = frozenset(m.states)
        for g in m.neighborhoods[u]:
            core &= g
        edges.update((u, v) for v in core)
    return KripkeModel(m.states, frozenset(edges), m.valuation)


def antichains(states) -> list[frozenset[frozenset[str]]]:
    """All antichains of the powerset lattice of `states`, in a fixed order."""
    subsets = list(_all_subsets(states))
    out = []

    def extend(i, chosen):
        if i == len(subsets):
            out.append(frozenset(chosen))
            return
        extend(i + 1, chosen)
        z = subsets[i]
        if all(not (z <= c or c <= z) for c in chosen):
            extend(i + 1, chosen + [z])

    extend(0, [])
    return out


def canonical_states(n: int) -> tuple[str, ...]:
    return tuple(f"s{i}" for i in range(n))


def enumerate_models(
    n_states: int, vocab, *, max_states: int = 3, max_vocab: int = 2
) -> Iterator[NeighborhoodModel]:
    """Every model over the states ``s0..s{n-1}``, one per (antichains, valuation)."""
    vocab = sorted(vocab)
    if n_states > max_states or len(vocab) > max_vocab:
        raise GuardError(f"enumeration of {n_states} states over {len(vocab)} variables exceeds the guard")
    states = canonical_states(n_states)
    families = antichains(states)
    subsets = list(_all_subsets(states))
    for gens in itertools.product(families, repeat=n_states):
        neighborhoods = dict(zip(states, gens))
        for vals in itertools.product(subsets, repeat=len(vocab)):
            yield NeighborhoodModel(states, neighborhoods, dict(zip(vocab, vals)))


def random_model(
    n_states: int,
    vocab,
    *,
    density: float = 0.3,
    valuation_density: float = 0.5,
    seed=None,
    rng: random.Random | None = None,
) -> NeighborhoodModel:
    """Sample a model: each subset becomes a candidate generator with
    probability `density`, and the candidates are reduced to their minimal
    elements."""
    if n_states < 1:
        raise ValueError("a model needs at least one state")
    rng = rng or random.Random(seed)
    states = canonical_states(n_states)
    subsets = list(_all_subsets(states))
    gens = {}
    for s in states:
        candidates = [z for z in subsets if rng.random() < density]
        gens[s] = minimal_sets(candidates)
    val = {v: frozenset(s for s in states if rng.random() < valuation_density) for v in sorted(vocab)}
    return NeighborhoodModel(states, gens, val)


def random_kripke(n_states: int, vocab, *, edge_density: float = 0.3, seed=None) -> KripkeModel:
    rng = random.Random(seed)
    states = canonical_states(n_states)
    edges = {(u, v) for u in states for v in states if rng.random() < edge_density}
    val = {v: frozenset(s for s in states if rng.random() < 0.5) for v in sorted(vocab)}
    return KripkeModel(states, frozenset(edges), val)


# -- documents ---------------------------------------------------------------


@dataclass(frozen=True)
class ModelDocument:
    model: NeighborhoodModel
    point: str | None = None
    provenance: Mapping | None = None


def model_to_dict(m: NeighborhoodModel, point: str | None = None, provenance=None) -> dict:
    def srt(z):
        return sorted(z, key=state_key)

    doc = {
        "states": list(m.states),
        "neighborhoods": {
            s: sorted((srt(g) for g in m.neighborhoods[s]), key=lambda g: [state_key(x) for x in g])
            for s in m.states
        },
        "valuation": {v: srt(z) for v, z in m.valuation.items()},
    }
    if point is not None:
        doc["point"] = point
    if provenance is not None:
        doc["provenance"] = dict(provenance)
    return doc


def write_model(m: NeighborhoodModel, point: str | None = None, provenance=None) -> bytes:
    return json.dumps(model_to_dict(m, point, provenance)).encode("utf-8")


def model_from_dict(doc) -> ModelDocument:
    try:
        states = doc["states"]
        neighborhoods = doc["neighborhoods"]
        valuation = doc.get("valuation", {})
        point = doc.get("point")
        if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
            raise ModelError("'states' must be a list of strings")
        if not isinstance(neighborhoods, dict) or not isinstance(valuation, dict):
            raise ModelError("'neighborhoods' and 'valuation' must be objects")
        raw_gens = {s: [frozenset(g) for g in gs] for s, gs in neighborhoods.items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ModelError(f"malformed model document: {exc}") from None
    problems = [f"duplicate generator at {s!r}" for s, gs in raw_gens.items() if len(set(gs)) != len(gs)]
    m = NeighborhoodModel(tuple(states), raw_gens, valuation)
    problems += validate(m)
    if len(set(states)) != len(states):
        problems.append("duplicate state names")
    if point is not None and point not in m.states:
        problems.append(f"point {point!r} is not a state")
    if problems:
        raise ModelError(problems)
    return ModelDocument(m, point, doc.get("provenance"))


def load_document(data: bytes | str) -> ModelDocument:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelError(f"malformed model document: {exc}") from None
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")
    return model_from_dict(doc)


def read_model(data: bytes | str) -> NeighborhoodModel:
    return load_document(data).model
