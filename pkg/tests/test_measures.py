"""Generators, the vector measure, population measures and transforms."""

import math

import numpy as np
import pytest

from ineqlab import (
    Dataset,
    InvalidMeasure,
    MeasureSpec,
    NegativeComponent,
    TransformDomainError,
    atkinson,
    atkinson_transform,
    bottom,
    classic_index,
    custom,
    ge,
    inequality,
    mld,
    parse_measure,
    pietra,
    population_matrix,
    r_fp,
    theil,
)
from conftest import random_dataset

# frozen via the direct textbook formulas (independent script)
THEIL_13 = 0.13081203594113697
MLD_13 = 0.14384103622589045
GE2_13 = 0.125
GE05_13 = 0.13629669484372697
ATK05_13 = 0.0669872981077807
ATK1_13 = 0.1339745962155613


def kappa_13():
    return population_matrix(Dataset.from_values([1, 3]))


def test_generator_basics():
    for gen in (pietra(), theil(), mld(), ge(2), ge(-1), ge(0.5)):
        assert gen(1.0) == pytest.approx(0.0, abs=1e-12)
    assert not pietra().strictly_convex
    assert theil().strictly_convex and mld().strictly_convex and ge(2).strictly_convex


def test_ge_singular_parameters_dispatch():
    assert ge(0).name == "mld"
    assert ge(1e-12).name == "mld"
    assert ge(1).name == "theil"
    assert ge(1 + 1e-12).name == "theil"


def test_r_fp_slope_one_is_zero():
    for spec in (MeasureSpec(pietra()), MeasureSpec(theil(), 0.3), MeasureSpec(ge(2), 1.0)):
        assert r_fp((0.7, 0.7), spec) == pytest.approx(0.0, abs=1e-12)
        assert r_fp((0.0, 0.0), spec) == 0.0


def test_r_fp_hand_values():
    assert r_fp((0.5, 0.25), MeasureSpec(pietra())) == pytest.approx(0.125)
    assert r_fp((0.2, 0.6), MeasureSpec(pietra(), 0.5)) == pytest.approx(0.1)


def test_r_fp_p_one_collapses():
    for gen in (pietra(), theil(), ge(2)):
        assert r_fp((0.4, 0.9), MeasureSpec(gen, 1.0)) == pytest.approx(0.0, abs=1e-12)


def test_r_fp_rejects_negative():
    with pytest.raises(NegativeComponent):
        r_fp((-0.1, 0.5), MeasureSpec(pietra()))


def test_r_fp_zero_share_limits():
    # p=0 and share 0: the generator's slope at infinity decides the value
    assert r_fp((0.5, 0.0), MeasureSpec(pietra())) == pytest.approx(0.25)
    assert r_fp((0.5, 0.0), MeasureSpec(theil())) == 0.0
    assert r_fp((0.5, 0.0), MeasureSpec(mld())) == math.inf


def test_inequality_bottom_is_zero():
    for spec in (MeasureSpec(pietra()), MeasureSpec(theil()), MeasureSpec(ge(2), 0.4)):
        assert inequality(bottom(), spec) == pytest.approx(0.0, abs=1e-12)


def test_inequality_hand_values():
    assert inequality(kappa_13(), MeasureSpec(theil())) == pytest.approx(THEIL_13)
    assert inequality(kappa_13(), MeasureSpec(pietra())) == pytest.approx(0.25)


def test_inequality_mld_infinite_on_zero_income():
    cols = population_matrix(Dataset.from_values([0, 1, 3]))
    assert inequality(cols, MeasureSpec(mld())) == math.inf


def test_classic_index_hand_values():
    d = Dataset.from_values([1, 3])
    assert classic_index(d, ge(2)) == pytest.approx(GE2_13)
    assert classic_index(d, mld()) == pytest.approx(MLD_13)
    assert classic_index(d, theil()) == pytest.approx(THEIL_13)
    u = Dataset.from_values([5, 5, 5])
    for gen in (pietra(), ge(2), theil(), mld()):
        assert classic_index(u, gen) == pytest.approx(0.0, abs=1e-12)


def test_special_cases_match_classic(rng):
    for _ in range(100):
        d = random_dataset(rng, max_n=50, low=0.01, high=100.0)
        for gen in (pietra(), ge(-1), ge(0.5), ge(2), theil(), mld()):
            got = inequality(population_matrix(d), MeasureSpec(gen))
            want = classic_index(d, gen)
            assert got == pytest.approx(want, abs=1e-9)


def test_atkinson_hand_values():
    d = Dataset.from_values([1, 3])
    assert atkinson(d, 0.5) == pytest.approx(ATK05_13)
    assert atkinson(d, 1) == pytest.approx(ATK1_13)
    assert atkinson(Dataset.from_values([4, 4]), 2) == pytest.approx(0.0, abs=1e-12)


def test_atkinson_zero_income_limits():
    d = Dataset.from_values([0, 1])
    assert atkinson(d, 1) == 1.0
    assert atkinson(d, 2) == 1.0


def test_atkinson_transform_hand_values():
    assert atkinson_transform(0.0, 0.7) == pytest.approx(0.0, abs=1e-12)
    assert atkinson_transform(GE05_13, 0.5) == pytest.approx(ATK05_13)
    assert atkinson_transform(MLD_13, 1) == pytest.approx(ATK1_13)


def test_atkinson_transform_domain_error():
    with pytest.raises(TransformDomainError):
        atkinson_transform(100.0, 0.5)


def test_custom_generator_roundtrip():
    gen = custom(lambda t: np.abs(t - 1) / 2, strictly_convex=False)
    got = inequality(kappa_13(), MeasureSpec(gen))
    assert got == pytest.approx(0.25)


def test_custom_generator_rejects_concave():
    with pytest.raises(InvalidMeasure):
        custom(lambda t: -((t - 1) ** 2), strictly_convex=True)
    with pytest.raises(InvalidMeasure):
        custom(lambda t: t, strictly_convex=False)  # f(1) != 0


def test_linearity(rng):
    for _ in range(200):
        v = rng.uniform(0.0, 2.0, 2)
        ell = float(rng.uniform(0.01, 5.0))
        spec = MeasureSpec(ge(float(rng.uniform(-2, 3))), float(rng.uniform(0, 1)))
        assert r_fp(tuple(ell * v), spec) == pytest.approx(
            ell * r_fp(tuple(v), spec), abs=1e-10, rel=1e-10
        )


def test_parse_measure_grammar():
    kind, spec = parse_measure("pietra")
    assert kind == "f" and spec.f.name == "pietra" and spec.p == 0.0
    kind, spec = parse_measure("ge:2@p=0.25")
    assert kind == "f" and spec.f.name == "ge:2" and spec.p == 0.25
    kind, spec = parse_measure("theil@p=1")
    assert spec.p == 1.0
    kind, eps = parse_measure("atkinson:0.5")
    assert kind == "atkinson" and eps == 0.5


@pytest.mark.parametrize(
    "bad", ["gini", "ge:x", "atkinson:0", "atkinson:-1", "theil@q=1", "theil@p=2", "atkinson:1@p=0.5"]
)
def test_parse_measure_rejects(bad):
    with pytest.raises(InvalidMeasure):
        parse_measure(bad)
