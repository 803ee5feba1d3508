"""The seeded property harness behind the test suite."""

# %%
from monomu import properties

for name in sorted(properties.SUITES):
    kw = {"samples": 20} if name not in ("usim",) else {}
    if name == "main-lemma":
        kw["universe"] = 1
    rep = properties.SUITES[name](seed=11, **kw)
    print(f"{name:18} {'pass' if rep.passed else 'FAIL'}  {rep.checks} checks")

# %% Reports serialize to the same document the command line prints with --format json.
print(properties.kripke_roundtrip(samples=3).to_dict())
