"""Embedding the mu-calculus in neighborhood monadic second-order logic."""

# %%
from monomu import NeighborhoodModel, eval_mu, parse_mu, print_nmso, to_nmso
from monomu.denotation import nmso_extension
from monomu.syntax import desugar_nmso, nmso

c = to_nmso(parse_mu("[]p"))
print(print_nmso(c))
print("quantifier depth:", nmso.quantifier_depth(c))

# %% The translation holds exactly where the formula holds.
m = NeighborhoodModel(["s0", "s1", "s2"], {"s0": [{"s1"}, {"s2"}], "s1": [{"s1", "s2"}]}, {"p": {"s1", "s2"}})
for text in ["p", "[]p", "<>~p", "mu x. []x \\/ p"]:
    f = parse_mu(text)
    c = to_nmso(f)
    # brute force over all subsets; the translations run deeper than the default guard
    print(f"{text:16} mu: {sorted(eval_mu(m, f))}  mso: {sorted(nmso_extension(m, c, max_quantifier_depth=None))}")

# %% Sugar such as forall, <->, sing and eqv reduces to the core connectives.
print(print_nmso(desugar_nmso(nmso.Sing("x"))))
