"""Python smoke tests against the compiled module."""

import math

import pytest

import bohrtk as bt


def test_arithmetic_roundtrip():
    assert bt.factorize(12) == [(2, 2), (3, 1)]
    assert bt.multi_index(50) == [1, 0, 2]
    assert bt.index_of([1, 0, 2]) == 50
    assert bt.mobius(6) == 1
    assert bt.mobius(12) == 0
    assert bt.divisors(28) == [1, 2, 4, 7, 14, 28]


def test_mobius_inversion():
    kp = bt.harmonic_kernel(500)
    inv = bt.invert(kp)
    prod = bt.dirichlet_multiply(kp, inv)
    unit = bt.BohrSeries.unit(500)
    assert bt.max_coeff_distance(prod, unit) <= 1e-13
    assert abs(inv.coeff(6) - bt.mobius(6) / 6) <= 1e-15


def test_kernel_evaluation():
    lam = {1: 0.5, 2: 1 / 3}
    k = bt.kernel(lam, 200)
    value, tail = bt.evaluate(k, lam)
    assert tail == 0.0
    assert value.real == pytest.approx(
        sum(abs(c) ** 2 for c in k.terms().values()), rel=1e-12
    )
    assert bt.kernel_norm({1: -0.5, 2: -1 / 3}) == pytest.approx(math.sqrt(1.5))


def test_kozlov_fixture_and_verdicts():
    g = bt.kozlov_g(0.5, 2000)
    support = sorted(g.terms().keys())
    assert support == [1, 2, 4]
    assert g.coeff(1).real == pytest.approx(math.sqrt(2) / math.pi, rel=1e-12)

    verdict = bt.kozlov_verdict(0.5, 2000)
    assert verdict["status"] == "Cyclic"
    assert verdict["trace"][-1]["rule"] == "R2"

    bad = bt.kozlov_verdict(1 / 3, 2000)
    assert bad["status"] == "NotCyclic"
    zero = bad["certificate"]["zero"]
    assert abs(zero[1] - (-0.5)) < 0.2  # a point on the zero curve near (-1/2, -1/3)


def test_decide_and_bound():
    poly = bt.BohrSeries.from_terms(6, {1: -1, 2: -1, 3: -1, 6: 1})
    verdict = bt.decide(poly)
    assert verdict["status"] == "NotCyclic"
    bound = bt.noncyclicity_bound(poly, {1: -0.5, 2: -1 / 3})
    assert bound == pytest.approx(math.sqrt(2 / 3), abs=1e-9)


def test_classify_and_outer():
    rep = bt.classify(bt.harmonic_kernel(300), "totally")
    assert rep["holds"]
    f2 = bt.prime_factor_series(bt.harmonic_kernel(300), 2)
    outer = bt.is_outer_polynomial(f2)
    assert outer["status"] == "Outer"


def test_delta_monotone():
    sweep = bt.delta_sweep(bt.noor_series(2, 1024), [1, 4, 16], 1024)
    values = [row["value"] for row in sweep]
    assert values[0] <= 1.0
    assert values == sorted(values, reverse=True)


def test_validation_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        bt.BohrSeries.from_terms(4, {9: 1.0})
    with pytest.raises(ValueError):
        bt.delta_hat(bt.harmonic_kernel(16), 20, 16)
