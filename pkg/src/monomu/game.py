"""Evaluation games as finite max-parity games.

Basic positions pair a state with a subformula.  Intermediate positions
``(player, Z, psi)`` let `player` pick a member of the neighborhood Z.
By default neighborhoods are restricted to generators: at a box a smaller
neighborhood is never worse for the existential player, at a diamond a
smaller one is never worse for the universal player.

Priorities follow the max-parity convention: the existential player wins
an infinite play iff the largest priority seen infinitely often is even.
Bound-variable positions carry the priority of their variable, everything
else priority 0.  A player who cannot move loses.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import NamedTuple

import networkx as nx

from monomu.model import NeighborhoodModel, upward_closure
from monomu.syntax import mu as m_


class Player(enum.IntEnum):
    EXISTS = 0
    FORALL = 1

    @property
    def opponent(self):
        return Player(1 - self)

    def __str__(self):
        return "E" if self is Player.EXISTS else "A"


E, A = Player.EXISTS, Player.FORALL


class Basic(NamedTuple):
    state: str
    formula: m_.MuFormula


class Intermediate(NamedTuple):
    player: Player
    neighborhood: frozenset
    formula: m_.MuFormula


@dataclass
class Arena:
    """Positions are addressed by integer ids; ``positions[i]`` is the position itself."""

    positions: list
    owner: list[Player]
    moves: list[tuple[int, ...]]
    priority: list[int]
    index: dict = field(repr=False)
    formula: m_.MuFormula | None = None

    def __len__(self):
        return len(self.positions)

    def id(self, pos) -> int:
        return self.index[pos]

    def predecessors(self) -> list[list[int]]:
        preds = [[] for _ in self.positions]
        for v, succ in enumerate(self.moves):
            for w in succ:
                preds[w].append(v)
        return preds

    def basic_ids(self):
        return [i for i, p in enumerate(self.positions) if isinstance(p, Basic)]


def assign_priorities(f: m_.MuFormula) -> dict[str, int]:
    """Priorities for bound variables: increasing along the rank order,
    odd for mu-variables and even for nu-variables."""
    order = m_.rank_order(f)
    out, last = {}, 0
    for v, kind in zip(order.vars, order.kinds):
        p = last + 1
        if (p % 2 == 1) != (kind == "mu"):
            p += 1
        out[v] = p
        last = p
    return out


def build_arena(m: NeighborhoodModel, f: m_.MuFormula, *, neighborhoods: str = "generators") -> Arena:
    """Compile the evaluation game of `f` on `m`.

    ``neighborhoods="closure"`` uses the full upward-closed families instead
    of generators; it exists to cross-check the reduction.
    """
    if neighborhoods not in ("generators", "closure"):
        raise ValueError(f"unknown neighborhood mode {neighborhoods!r}")
    subs = m_.subformulas(f)
    sub_ix = {g: i for i, g in enumerate(subs)}
    defs = {v: b.body for v, b in m_.binders(f).items()}
    prio = assign_priorities(f)
    for g in subs:
        if isinstance(g, (m_.Atom, m_.NegAtom)) and g.name not in defs and g.name not in m.valuation:
            raise ValueError(f"variable {g.name!r} is outside the model vocabulary")
    states = m.states
    nstates = len(states)
    if neighborhoods == "generators":
        family = {s: sorted(m.neighborhoods[s], key=sorted) for s in states}
    else:
        family = {s: sorted(upward_closure(m, s), key=lambda z: (len(z), sorted(z))) for s in states}

    positions = [Basic(s, g) for g in subs for s in states]
    index = {p: i for i, p in enumerate(positions)}
    owner = [E] * len(positions)
    moves: list = [()] * len(positions)
    priority = [0] * len(positions)
    state_ix = {s: i for i, s in enumerate(states)}

    def basic(s, g):
        return sub_ix[g] * nstates + state_ix[s]

    def intermediate(player, z, g):
        pos = Intermediate(player, z, g)
        i = index.get(pos)
        if i is None:
            i = len(positions)
            positions.append(pos)
            index[pos] = i
            owner.append(player)
            moves.append(tuple(basic(t, g) for t in sorted(z, key=state_ix.get)))
            priority.append(0)
        return i

    for g in subs:
        for s in states:
            i = basic(s, g)
            if isinstance(g, m_.Or):
                owner[i], moves[i] = E, (basic(s, g.left), basic(s, g.right))
            elif isinstance(g, m_.And):
                owner[i], moves[i] = A, (basic(s, g.left), basic(s, g.right))
            elif isinstance(g, m_.Atom) and g.name in defs:
                owner[i], moves[i] = E, (basic(s, defs[g.name]),)
                priority[i] = prio[g.name]
            elif isinstance(g, m_.Atom):
                # the player who is stuck loses
                owner[i] = A if s in m.valuation[g.name] else E
            elif isinstance(g, m_.NegAtom):
                owner[i] = E if s in m.valuation[g.name] else A
            elif isinstance(g, m_.Top):
                owner[i] = A
            elif isinstance(g, m_.Bot):
                owner[i] = E
            elif isinstance(g, m_.Box):
                owner[i] = E
                moves[i] = tuple(intermediate(A, z, g.arg) for z in family[s])
            elif isinstance(g, m_.Dia):
                owner[i] = A
                moves[i] = tuple(intermediate(E, z, g.arg) for z in family[s])
            elif isinstance(g, m_.GBox):
                owner[i], moves[i] = A, tuple(basic(t, g.arg) for t in states)
            elif isinstance(g, m_.GDia):
                owner[i], moves[i] = E, tuple(basic(t, g.arg) for t in states)
            elif isinstance(g, (m_.Mu, m_.Nu)):
                owner[i], moves[i] = E, (basic(s, g.body),)
            else:
                raise TypeError(f"not a formula: {g!r}")
    return Arena(positions, owner, moves, priority, index, f)


@dataclass(frozen=True)
class Solution:
    """Winning regions and positional strategies, indexed by player."""

    win: tuple[frozenset[int], frozenset[int]]
    strategy: tuple[dict[int, int], dict[int, int]]

    @property
    def win_E(self):
        return self.win[E]

    @property
    def win_A(self):
        return self.win[A]

    @property
    def strategy_E(self):
        return self.strategy[E]

    @property
    def strategy_A(self):
        return self.strategy[A]

    def winner(self, i: int) -> Player:
        return E if i in self.win[E] else A


def _attractor(arena, preds, sub, target, player):
    """Positions in `sub` from which `player` can force a visit to `target`."""
    attr = set(target)
    strat = {}
    count = {}
    queue = list(attr)
    owner, moves = arena.owner, arena.moves
    while queue:
        w = queue.pop()
        for v in preds[w]:
            if v not in sub or v in attr:
                continue
            if owner[v] == player:
                attr.add(v)
                strat[v] = w
                queue.append(v)
            else:
                c = count.get(v)
                if c is None:
                    c = sum(1 for x in moves[v] if x in sub)
                c -= 1
                count[v] = c
                if c == 0:
                    attr.add(v)
                    queue.append(v)
    return attr, strat


def _zielonka(arena, preds, game):
    win = [set(), set()]
    strat = [{}, {}]
    if not game:
        return win, strat
    d = max(arena.priority[v] for v in game)
    p = d % 2
    q = 1 - p
    top = {v for v in game if arena.priority[v] == d}
    attr, s_attr = _attractor(arena, preds, game, top, p)
    win1, strat1 = _zielonka(arena, preds, game - attr)
    if not win1[q]:
        win[p] = set(game)
        strat[p].update(strat1[p])
        strat[p].update(s_attr)
        for v in top:
            if arena.owner[v] == p:
                strat[p][v] = next(w for w in arena.moves[v] if w in game)
        return win, strat
    battr, s_battr = _attractor(arena, preds, game, win1[q], q)
    win2, strat2 = _zielonka(arena, preds, game - battr)
    win[p] = win2[p]
    win[q] = win2[q] | battr
    strat[p] = strat2[p]
    strat[q] = {**strat2[q], **strat1[q], **s_battr}
    return win, strat


def solve(arena: Arena) -> Solution:
    """Exact winning regions with positional strategies (Zielonka's algorithm)."""
    preds = arena.predecessors()
    everything = set(range(len(arena)))
    win = [set(), set()]
    strat = [{}, {}]
    rest = everything
    # dead ends first: the stuck player loses, and so do positions attracted there
    for player in (E, A):
        stuck = {v for v in rest if not arena.moves[v] and arena.owner[v] == player.opponent}
        attr, s = _attractor(arena, preds, rest, stuck, player)
        win[player] |= attr
        strat[player].update(s)
        rest = rest - attr
    win_z, strat_z = _zielonka(arena, preds, rest)
    for player in (E, A):
        win[player] |= win_z[player]
        strat[player].update(strat_z[player])
        strat[player] = {v: w for v, w in strat[player].items() if v in win[player]}
    return Solution((frozenset(win[E]), frozenset(win[A])), (strat[E], strat[A]))


def winning_states(m: NeighborhoodModel, f: m_.MuFormula, **kw) -> frozenset[str]:
    """States s with (s, f) in the existential winning region."""
    arena = build_arena(m, f, **kw)
    sol = solve(arena)
    return frozenset(s for s in m.states if arena.id(Basic(s, f)) in sol.win_E)


def winning(m: NeighborhoodModel, s: str, f: m_.MuFormula) -> bool:
    arena = build_arena(m, f)
    return arena.id(Basic(s, f)) in solve(arena).win_E


def is_partition(arena: Arena, sol: Solution) -> bool:
    return not (sol.win_E & sol.win_A) and len(sol.win_E | sol.win_A) == len(arena)


def verify_strategy(arena: Arena, sol: Solution, player: Player) -> bool:
    """Independently check that `player`'s strategy wins on its whole region.

    In the graph where `player` follows the strategy and the opponent keeps
    all moves: the region must be closed, `player` never stuck, and every
    cycle must have a maximal priority of `player`'s parity.
    """
    player = Player(player)
    region = sol.win[player]
    strat = sol.strategy[player]
    graph = nx.DiGraph()
    graph.add_nodes_from(region)
    for v in region:
        if arena.owner[v] == player:
            w = strat.get(v)
            if w is None or w not in arena.moves[v] or w not in region:
                return False
            graph.add_edge(v, w)
        else:
            for w in arena.moves[v]:
                if w not in region:
                    return False
                graph.add_edge(v, w)
    bad = sorted({arena.priority[v] for v in region if arena.priority[v] % 2 != player})
    for d in bad:
        low = graph.subgraph(v for v in region if arena.priority[v] <= d)
        for comp in nx.strongly_connected_components(low):
            if not any(arena.priority[v] == d for v in comp):
                continue
            if len(comp) > 1 or any(low.has_edge(v, v) for v in comp):
                return False
    return True


def cycles_pass_variables(arena: Arena) -> bool:
    """True iff every cycle of the arena visits a bound-variable position."""
    graph = nx.DiGraph()
    plain = [v for v in range(len(arena)) if arena.priority[v] == 0]
    graph.add_nodes_from(plain)
    keep = set(plain)
    for v in plain:
        graph.add_edges_from((v, w) for w in arena.moves[v] if w in keep)
    return nx.is_directed_acyclic_graph(graph)


def arena_to_dict(arena: Arena) -> dict:
    def describe(p):
        if isinstance(p, Basic):
            return {"kind": "basic", "state": p.state, "formula": m_.print_mu(p.formula)}
        return {
            "kind": "intermediate",
            "player": str(p.player),
            "neighborhood": sorted(p.neighborhood),
            "formula": m_.print_mu(p.formula),
        }

    return {
        "formula": m_.print_mu(arena.formula) if arena.formula is not None else None,
        "positions": [describe(p) for p in arena.positions],
        "owner": [str(o) for o in arena.owner],
        "priority": list(arena.priority),
        "moves": [list(mv) for mv in arena.moves],
    }


def write_arena(arena: Arena) -> bytes:
    return json.dumps(arena_to_dict(arena), indent=1).encode("utf-8")
