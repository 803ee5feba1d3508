"""Evaluation games: model checking as a two-player parity game."""

# %%
from monomu import build_arena, parse_mu, solve, verify_strategy
from monomu.game import A, E, Basic
from monomu.model import NeighborhoodModel

m = NeighborhoodModel(["s0", "s1"], {"s0": [{"s1"}], "s1": []}, {"p": {"s1"}})
f = parse_mu("[]p")
arena = build_arena(m, f)
for i, pos in enumerate(arena.positions):
    print(i, pos, "owner", arena.owner[i], "moves", arena.moves[i])

# %% The existential player wins at (s0, []p): she offers {s1}, where p holds.
sol = solve(arena)
print("E wins at", sorted(s for s in m.states if arena.id(Basic(s, f)) in sol.win_E))

# %% A nested formula: infinitely often p along some forced path.
g = parse_mu("nu x. mu y. ([]y \\/ (p /\\ []x))")
loop = NeighborhoodModel(["a", "b"], {"a": [{"b"}], "b": [{"a"}]}, {"p": {"b"}})
arena = build_arena(loop, g)
sol = solve(arena)
print("priorities:", sorted(set(arena.priority)))
print("E wins at", sorted(s for s in loop.states if arena.id(Basic(s, g)) in sol.win_E))

# %% Winning strategies are positional, and each one can be checked on its own.
print("E strategy verified:", verify_strategy(arena, sol, E))
print("A strategy verified:", verify_strategy(arena, sol, A))
