import json

import pytest

from monomu import properties
from monomu.model import read_model

SMALL = {
    "union-closure": dict(samples=30),
    "adequacy": dict(samples=40),
    "determinacy": dict(samples=40),
    "invariance": dict(samples=10, formulas=5),
    "global-invariance": dict(samples=5),
    "kripke-roundtrip": dict(samples=20),
    "generator-oracle": dict(samples=60),
    "eq-translation": dict(samples=15),
    "binddef": dict(samples=30),
    "usim": dict(),
    "main-lemma": dict(samples=3, universe=1),
    "fixpoints": dict(samples=40),
}


def test_every_suite_is_covered():
    assert set(SMALL) == set(properties.SUITES)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_passes_on_small_samples(name):
    rep = properties.SUITES[name](seed=3, **SMALL[name])
    assert rep.passed, rep.failures[:1]
    assert rep.checks > 0
    assert rep.to_dict() == {"suite": name, "samples": rep.samples, "failures": []}


def test_sampling_is_deterministic():
    a = properties.sample_rng(7, 3).random()
    assert a == properties.sample_rng(7, 3).random()
    assert a != properties.sample_rng(7, 4).random()


def test_failure_records_are_replayable(monkeypatch):
    # sabotage the denotation so the adequacy suite must report failures
    monkeypatch.setattr(properties, "eval_mu", lambda m, f, env=None: frozenset())
    rep = properties.adequacy(samples=20, seed=1)
    assert not rep.passed
    fail = rep.failures[0]
    assert set(fail) >= {"seed", "model", "formula"}
    m = read_model(json.dumps(fail["model"]))
    assert m.states
