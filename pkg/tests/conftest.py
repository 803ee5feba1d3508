import random

import pytest
from hypothesis import settings, strategies as st

from monomu.model import NeighborhoodModel, random_model

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def make_m1():
    return NeighborhoodModel(["s0", "s1"], {"s0": [{"s1"}], "s1": []}, {"p": {"s1"}})


@pytest.fixture
def m1():
    return make_m1()


@st.composite
def models(draw, max_states=3, vocab=("p", "q")):
    n = draw(st.integers(1, max_states))
    seed = draw(st.integers(0, 2**32))
    density = draw(st.sampled_from([0.0, 0.15, 0.3, 0.5]))
    return random_model(n, vocab, density=density, seed=seed)


@st.composite
def formulas(draw, vocab=("p", "q"), max_depth=4, global_modalities=False):
    from monomu.syntax import random_formula

    rng = random.Random(draw(st.integers(0, 2**32)))
    return random_formula(rng, vocab, draw(st.integers(0, max_depth)), global_modalities=global_modalities)
