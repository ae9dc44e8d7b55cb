import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from leibniz.exactlin import GF, QQ, span

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def frozen():
    """Reference values recomputed by scripts/freeze_oracle_values.py."""
    with open(DATA / "oracle_values.json", encoding="utf-8") as fp:
        return json.load(fp)


def rows(F, data):
    return tuple(tuple(F.parse(x) for x in r) for r in data)


def fields():
    return st.sampled_from([QQ, GF(2), GF(3), GF(5)])


@st.composite
def vectors(draw, F, n, lo=-3, hi=3):
    if F.p:
        return tuple(F(draw(st.integers(0, F.p - 1))) for _ in range(n))
    return tuple(Fraction(draw(st.integers(lo, hi)), draw(st.integers(1, 3))) for _ in range(n))


@st.composite
def subspaces(draw, F, n, max_gens=None):
    k = draw(st.integers(0, max_gens if max_gens is not None else n))
    return span(F, [draw(vectors(F, n)) for _ in range(k)], n)


_POOLS: dict = {}


def algebra_pool(F, count=12, max_dim=4, family="nilpotent_plus_derivations"):
    """A cached, seeded list of generated solvable algebras."""
    from leibniz.generate import GeneratorSpec, gen_solvable

    key = (F, count, max_dim, family)
    if key not in _POOLS:
        spec = GeneratorSpec(family, F, 7, count, 1, max_dim)
        _POOLS[key] = [inst.algebra for inst in gen_solvable(spec)]
    return _POOLS[key]


@st.composite
def algebras(draw, field_choices=None, max_dim=4):
    F = draw(st.sampled_from(field_choices or [QQ, GF(2), GF(3), GF(5)]))
    return draw(st.sampled_from(algebra_pool(F, max_dim=max_dim)))
