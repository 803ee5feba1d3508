"""Neighborhood models and the fixpoint semantics of the monotone mu-calculus."""

# %% A two-state model: s0 can force the set {s1}; s1 can force nothing.
from monomu import NeighborhoodModel, approximants, eval_mu, parse_mu, to_kripke, write_model
from monomu.model import upward_closure

m = NeighborhoodModel(["s0", "s1"], {"s0": [{"s1"}], "s1": []}, {"p": {"s1"}})
print(write_model(m, "s0").decode())

# %% Only generators are stored; the neighborhood family is their upward closure.
for s in m.states:
    print(s, sorted(sorted(z) for z in upward_closure(m, s)))

# %% Evaluating formulas returns sets of states.
for text in ["[]p", "<>p", "mu r. []r", "[E]p", "[A]p", "nu r. <>r"]:
    print(f"{text:12} -> {sorted(eval_mu(m, parse_mu(text)))}")

# %% Least fixpoints are computed by iteration from the empty set.
# The liveness formula below says "q can be forced in finitely many rounds".
game = NeighborhoodModel(
    ["s0", "s1", "s2"],
    {"s0": [{"s1", "s2"}], "s1": [{"s0", "s2"}], "s2": [{"s1"}]},
    {"q": {"s0", "s2"}},
)
live = parse_mu("mu r. []r \\/ []q")
for k, stage in enumerate(approximants(game, live)):
    print(f"stage {k}: {sorted(stage)}")

# %% Here s0 forces q although no fixed number of boxes witnesses it:
# s1 gets there in one round and s2 in two.
flat = parse_mu("[]q \\/ [][]q \\/ [][][]q \\/ [][][][]q")
print("fixpoint:", sorted(eval_mu(game, live)), " flat disjunction:", sorted(eval_mu(game, flat)))

# %% Every neighborhood model has an underlying Kripke model (intersection of neighborhoods).
print(sorted(to_kripke(m).edges))
