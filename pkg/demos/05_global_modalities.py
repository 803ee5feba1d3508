"""Eliminating global modalities with a universe model."""

# %%
from monomu import build_universe, eliminate_global, invariance_probe, main_lemma_check, parse_mu
from monomu.model import enumerate_models

u = build_universe(2, ["p"])
print("universe states:", len(u.model.states), u.provenance)

# %% Each [A]/[E] subformula is decided once, on the universe, and replaced by a constant.
for text in ["[E]p", "[A]p", "[]p /\\ [E](nu x. <>x /\\ ~p)", "mu x. []x \\/ [A](p \\/ <>p)"]:
    tf, _ = eliminate_global(parse_mu(text), u)
    print(f"{text:32} -> {tf}")

# %% The result agrees with the original formula evaluated next to the universe.
f = parse_mu("<>p /\\ [E]([]~p)")
tf, _ = eliminate_global(f, u)
models = [s for k in (1, 2) for s in enumerate_models(k, ["p"])]
print(all(main_lemma_check(f, s, u, translated=tf).ok for s in models), "over", len(models), "models")

# %% Global modalities themselves break bisimulation invariance; the probe finds witnesses.
rep = invariance_probe(parse_mu("[E]p"), samples=10)
cex = rep.counterexamples[0]
print(rep.summary())
print(cex.left.model.states, "vs", cex.right.model.states)
