import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import mp_zeta
from weighted_partitions import special
from weighted_partitions.errors import DomainError


def test_zeta_classical_values():
    assert special.zeta(2.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert special.zeta(-1.0) == pytest.approx(-1 / 12, rel=1e-13)
    assert special.zeta(0.0) == pytest.approx(-0.5, rel=1e-14)
    assert special.zeta_prime(0.0) == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-13)


@pytest.mark.parametrize("s", [0.5, 1.5, 2.5, 3.0, -0.5, -1.5, -2.5, -7.3, 0.1, 20.0])
def test_zeta_real_against_mpmath(s):
    assert special.zeta(s) == pytest.approx(mp_zeta(s).real, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("s", [complex(2.5, 10), complex(0.5, 14.134725), complex(3, 200),
                               complex(-0.5, 3), complex(1.5, -40), complex(4.0, 120)])
def test_zeta_complex_against_mpmath(s):
    assert special.zeta(s) == pytest.approx(mp_zeta(s), rel=1e-12, abs=1e-13)


@pytest.mark.parametrize("x", [0.0, -0.5, -1.0, 0.5, 2.0])
def test_zeta_prime_against_mpmath(x):
    with mpmath.workdps(30):
        ref = float(mpmath.zeta(x, 1, 1))
    assert special.zeta_prime(x) == pytest.approx(ref, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(s=st.floats(1.1, 30), a=st.floats(0.1, 5))
def test_hurwitz_against_mpmath(s, a):
    assert special.hurwitz_zeta(s, a) == pytest.approx(mp_zeta(s, a).real, rel=1e-12)


def test_hurwitz_vectorised():
    s = np.array([2.0, 3.0, 4.0])
    np.testing.assert_allclose(special.hurwitz_zeta(s, 1.0), [math.pi ** 2 / 6, 1.2020569031595942, math.pi ** 4 / 90], rtol=1e-14)


def test_poles():
    with pytest.raises(DomainError):
        special.zeta(1.0)
    with pytest.raises(DomainError):
        special.zeta(1.0 + 1e-10)
    with pytest.raises(DomainError):
        special.gamma(-2.0)
    with pytest.raises(DomainError):
        special.incomplete_gamma(1.0, 0.0)


def test_gamma_values():
    assert special.gamma(5.0) == pytest.approx(24.0)
    assert special.gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert special.gamma(complex(0.5, 3)) == pytest.approx(complex(mpmath.gamma(mpmath.mpc(0.5, 3))), rel=1e-13)


def test_incomplete_gamma_base_case():
    for u in (0.1, 1.0, 7.5, 50.0):
        assert special.incomplete_gamma(1.0, u) == pytest.approx(math.exp(-u), rel=1e-14)


@pytest.mark.parametrize("rho", [0.3, 1.0, 1.5, 2.0, 2.5, 6.0])
@pytest.mark.parametrize("u", [0.01, 0.5, 3.0, 50.0, 700.0])
def test_incomplete_gamma_against_mpmath(rho, u):
    with mpmath.workdps(30):
        ref = float(mpmath.gammainc(rho, u))
    assert special.incomplete_gamma(rho, u) == pytest.approx(ref, rel=1e-12)


def test_incomplete_gamma_underflow_branch():
    # scipy underflows here; the continued fraction keeps the value
    with mpmath.workdps(30):
        ref = float(mpmath.gammainc(2.5, 740.0))
    assert special.incomplete_gamma(2.5, 740.0) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("rho", [1.0, 2.0, 2.5])
def test_incomplete_gamma_ratio_is_one_plus_order_inverse_u(rho):
    # Gamma(rho, u) / (u^{rho-1} e^{-u}) = 1 + (rho-1)/u + O(u^{-2})
    errs = []
    for u in (50.0, 100.0, 200.0, 400.0):
        ratio = special.incomplete_gamma(rho, u) / (u ** (rho - 1) * math.exp(-u))
        errs.append(abs(ratio - 1))
        assert abs(ratio - 1 - (rho - 1) / u) <= 2 * abs((rho - 1) * (rho - 2)) / u ** 2 + 1e-13
    assert all(b <= a + 1e-14 for a, b in zip(errs, errs[1:]))
