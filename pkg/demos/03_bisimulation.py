"""Neighborhood bisimulation and what it preserves."""

# %%
from monomu import NeighborhoodModel, PointedModel, bisimilar, disjoint_union, eval_mu, greatest_bisimulation, parse_mu
from monomu.bisim import globally_bisimilar

m = NeighborhoodModel(["s0", "s1"], {"s0": [{"s1"}], "s1": []}, {"p": {"s1"}})
# s1 split into two indistinguishable copies
m2 = NeighborhoodModel(["s0", "s1", "s2"], {"s0": [{"s1"}]}, {"p": {"s1", "s2"}})
print(sorted(greatest_bisimulation(m, m2).pairs))

# %% A model is bisimilar to its copy inside a disjoint union ...
other = NeighborhoodModel(["s0"], {"s0": [set()]}, {"p": set()})
big, (ins, _) = disjoint_union([m, other])
print(bisimilar(PointedModel(m, "s0"), PointedModel(big, ins("s0"))))

# %% ... but not globally, since the union has a state with no partner in m.
print(globally_bisimilar(PointedModel(m, "s0"), PointedModel(big, ins("s0"))))

# %% Formulas without global modalities cannot tell them apart; the last one can.
for text in ["<>p /\\ []p", "nu x. <>x", "[E](~p /\\ []~p)"]:
    f = parse_mu(text)
    print(f"{text:14} small: {'s0' in eval_mu(m, f)}  union: {ins('s0') in eval_mu(big, f)}")
