"""Acceptance suite: the ten primary criteria, each checked exactly.

Run under pytest, or directly (``python tests/test_acceptance.py``) for a
plain pass/fail listing.
"""

from __future__ import annotations

import random
import sys
import time

import pytest

from monomu import properties
from monomu.syntax import mu as m_
from monomu.translate import invariance_probe

SEED = 7


def _suite(name, **kw):
    def run():
        rep = properties.SUITES[name](seed=SEED, **kw)
        detail = f"{rep.samples} samples, {rep.checks} checks, {len(rep.failures)} failures"
        return rep.passed, detail

    return run


def _probe():
    rng = random.Random(SEED)
    clean = 0
    for _ in range(30):
        f = m_.random_formula(rng, ["p"], rng.randint(0, 4))
        rep = invariance_probe(f, samples=30, seed=SEED)
        if not rep.invariant_on_samples:
            return False, f"counterexample for global-free {m_.print_mu(f)}"
        clean += 1
    for text in ("[E]p", "[A]p"):
        rep = invariance_probe(m_.parse_mu(text), samples=30, seed=SEED)
        if rep.invariant_on_samples:
            return False, f"no counterexample found for {text}"
    return True, f"{clean} global-free formulas clean; [E]p and [A]p refuted"


CRITERIA = [
    (1, "adequacy", _suite("adequacy", samples=500, max_states=5, max_depth=6)),
    (2, "determinacy and positional strategies", _suite("determinacy", samples=500, max_states=5, max_depth=6)),
    (3, "bisimulation invariance", _suite("invariance", samples=200, formulas=20, max_depth=5)),
    (4, "global bisimulation invariance", _suite("global-invariance", samples=20, universe=1)),
    (5, "Eq translation", _suite("eq-translation", samples=200, max_states=4, max_depth=3)),
    (6, "global-modality elimination lemma", _suite("main-lemma", samples=100, universe=2, max_depth=4)),
    (7, "invariance probe", _probe),
    (8, "generator restriction", _suite("generator-oracle", samples=1000, max_states=3, max_depth=4)),
    (9, "Kripke round trip", _suite("kripke-roundtrip", samples=100, max_states=6)),
    (10, "fixpoint structure", _suite("fixpoints", samples=200, max_states=5, max_depth=4)),
]


def _line(num, name, ok, detail, seconds):
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name} ({detail}; {seconds:.1f}s)"


@pytest.mark.parametrize("num, name, check", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check, capsys):
    start = time.perf_counter()
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail, time.perf_counter() - start))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        start = time.perf_counter()
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail, time.perf_counter() - start), flush=True)
    sys.exit(1 if failed else 0)
