import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lerchneg.numcore import (
    DOUBLE,
    EXTENDED,
    DomainError,
    EvalResult,
    EvaluationOverflow,
    PrecisionConfig,
    backend,
    compensated_sum,
    condition_of,
    cot_c,
    scaled_discrepancy,
    unit_phase,
)

finite = st.floats(-50, 50, allow_nan=False)


def test_unit_phase_examples():
    assert unit_phase(0) == 1
    assert abs(unit_phase(0.5) - (-1)) < 1e-15
    assert abs(unit_phase(0.25) - (-1j)) < 1e-15


@given(st.floats(-100, 100))
def test_unit_phase_periodic(b):
    assert abs(unit_phase(b + 1) - unit_phase(b)) < 1e-12


@given(finite, st.floats(-3, 3))
def test_unit_phase_matches_exp(re, im):
    b = complex(re, im)
    ref = cmath.exp(-2j * math.pi * b)
    assert abs(unit_phase(b) - ref) <= 1e-12 * abs(ref) * (1 + abs(re))


def test_unit_phase_overflow():
    with pytest.raises(EvaluationOverflow):
        unit_phase(0.3 + 200j)
    assert issubclass(EvaluationOverflow, DomainError)


def test_cot_c_examples():
    assert abs(cot_c(math.pi / 4) - 1) < 1e-15
    assert abs(cot_c(math.pi / 2)) < 1e-15
    b = 0.3 + 0.2j
    z = unit_phase(b)
    assert abs(z / (1 - z) + (1 + 1j * cot_c(math.pi * b)) / 2) < 1e-14


def test_cot_c_rejects_poles():
    with pytest.raises(DomainError):
        cot_c(0.0)
    with pytest.raises(DomainError):
        cot_c(math.pi)


@given(st.floats(0.05, 3.0), st.floats(-1, 1))
def test_cot_c_conjugate(re, im):
    w = complex(re, im)
    if abs(cmath.sin(w)) < 1e-3:
        return
    assert abs(cot_c(w.conjugate()) - complex(cot_c(w)).conjugate()) <= 1e-14 * (1 + abs(cot_c(w)))


def test_compensated_sum_examples():
    r = compensated_sum([1, -1, 1e-20])
    assert r.value == 1e-20 and r.condition > 1e19
    r = compensated_sum([2])
    assert r.value == 2 and r.condition == 1
    r = compensated_sum([1, 1e-16, -1])
    assert r.value == 1e-16
    assert compensated_sum([]).condition == 1


def test_compensated_sum_matches_exact():
    rng = np.random.default_rng(1)
    for _ in range(20):
        terms = list(rng.normal(size=100) * 10.0 ** rng.uniform(-5, 5, size=100))
        exact = float(sum(Fraction(t) for t in terms))
        assert compensated_sum(terms).value == exact


def test_compensated_sum_permutation_insensitive():
    rng = np.random.default_rng(7)
    for _ in range(20):
        terms = rng.normal(size=100) * 10.0 ** rng.uniform(-5, 5, size=100)
        terms = terms + 1j * rng.normal(size=100) * 10.0 ** rng.uniform(-5, 5, size=100)
        a = complex(compensated_sum(list(terms)).value)
        b = complex(compensated_sum(list(rng.permutation(terms))).value)
        assert abs(a.real - b.real) <= 4 * math.ulp(a.real)
        assert abs(a.imag - b.imag) <= 4 * math.ulp(a.imag)


def test_condition_of():
    assert condition_of([], 0) == 1
    assert condition_of([0, 0], 0) == 1
    assert condition_of([1, -1], 0) == math.inf
    assert condition_of([3, -1], 2) == 2
    assert condition_of([2, 1], 3) == 1


def test_precision_config_validation():
    with pytest.raises(ValueError):
        PrecisionConfig("quad")
    with pytest.raises(ValueError):
        PrecisionConfig("double", 0.0)
    assert DOUBLE.guard == 1e-12 and EXTENDED.precision == "dd"


def test_eval_result_conversions():
    r = EvalResult(1 + 2j, 1.0, "x")
    assert complex(r) == 1 + 2j and r.real == 1 and r.imag == 2


def test_extended_backend_is_wider():
    be = backend(EXTENDED)
    assert be.extended
    # 1 + 2^-80 survives at 106 bits but not in a double
    x = be.fsum([be.real(1), be.real(2.0**-80), be.real(-1)])
    assert float(x.real if hasattr(x, "real") else x) == 2.0**-80
    assert not backend(DOUBLE).extended


def test_scaled_discrepancy():
    a = EvalResult(1.0, 1.0, "a")
    b = EvalResult(1.0 + 1e-12, 1.0, "b")
    assert scaled_discrepancy(a, b) == pytest.approx(1e-12, rel=1e-3)
    noisy = EvalResult(1.0 + 1e-12, 1000.0, "b")
    assert scaled_discrepancy(a, noisy) == pytest.approx(1e-15, rel=1e-3)
    assert scaled_discrepancy(EvalResult(0.0, 1.0, ""), EvalResult(0.0, 1.0, "")) == 0.0
