"""Special functions: Riemann/Hurwitz zeta (complex, vectorised), gamma, incomplete gamma.

The zeta functions use Euler-Maclaurin summation, which also provides the
analytic continuation to Re(s) <= 1, so values such as zeta(-1) or zeta'(-1/2)
come out of the same code path.  Gamma and the upper incomplete gamma are thin
wrappers over scipy.special with pole checks added.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import special as sc

from .errors import DomainError

POLE_TOL = 1e-8

# B_{2j} / (2j)!  for j = 1..15
_N_BERN = 15
_BERN_COEF = np.array(
    [sc.bernoulli(2 * j)[2 * j] / math.factorial(2 * j) for j in range(1, _N_BERN + 1)]
)

_CHUNK = 4096


def _hurwitz_block(s: np.ndarray, a: float, n_head: int) -> np.ndarray:
    k = a + np.arange(n_head, dtype=float)
    head = np.exp(-np.outer(s, np.log(k))).sum(axis=1)
    x = a + n_head
    xs = np.exp(-s * math.log(x))
    out = head + x * xs / (s - 1.0) + 0.5 * xs
    term = s * xs / x
    out = out + _BERN_COEF[0] * term
    x2 = x * x
    for j in range(2, _N_BERN + 1):
        term = term * (s + 2 * j - 3) * (s + 2 * j - 2) / x2
        out = out + _BERN_COEF[j - 1] * term
    return out


def hurwitz_zeta(s, a: float = 1.0):
    """Hurwitz zeta sum_{k>=0} (k+a)^{-s}, analytically continued to s != 1.

    Accepts scalars or arrays, real or complex.  Real input gives real output.
    """
    if a <= 0:
        raise DomainError("hurwitz_zeta requires a > 0")
    arr = np.asarray(s)
    real_in = not np.iscomplexobj(arr)
    flat = np.atleast_1d(arr).astype(complex).ravel()
    if np.any(np.abs(flat - 1.0) < POLE_TOL):
        raise DomainError("zeta pole at s = 1")
    # head length: large enough for the Bernoulli tail to converge, small enough
    # to limit cancellation when Re(s) < 0
    need = 10 + np.ceil(0.6 * np.abs(flat)).astype(int)
    buckets = ((need + 7) // 8) * 8
    out = np.empty_like(flat)
    for n_head in np.unique(buckets):
        idx = np.nonzero(buckets == n_head)[0]
        for start in range(0, idx.size, _CHUNK):
            sel = idx[start:start + _CHUNK]
            out[sel] = _hurwitz_block(flat[sel], float(a), int(n_head))
    out = out.reshape(np.shape(arr))
    if real_in:
        out = out.real
    if out.ndim == 0:
        return out.item()
    return out


def zeta(s):
    """Riemann zeta function for real or complex s != 1.

    Re(s) < 0 goes through the functional equation, which avoids the
    cancellation Euler-Maclaurin suffers there.
    """
    arr = np.asarray(s)
    if not np.any(np.real(arr) < 0):
        return hurwitz_zeta(s, 1.0)
    real_in = not np.iscomplexobj(arr)
    flat = np.atleast_1d(arr).astype(complex).ravel()
    out = np.empty_like(flat)
    left = flat.real < 0
    if np.any(~left):
        out[~left] = hurwitz_zeta(flat[~left], 1.0)
    sl = flat[left]
    refl = np.atleast_1d(hurwitz_zeta(1.0 - sl, 1.0))
    out[left] = (
        np.exp(sl * math.log(2.0) + (sl - 1.0) * math.log(math.pi))
        * np.sin(0.5 * math.pi * sl)
        * sc.gamma(1.0 - sl)
        * refl
    )
    out = out.reshape(np.shape(arr))
    if real_in:
        out = out.real
    return out.item() if out.ndim == 0 else out


def zeta_prime(x: float) -> float:
    """zeta'(x) for real x, by complex-step differentiation (no cancellation)."""
    h = 1e-30
    return float(np.imag(zeta(complex(x, h))) / h)


def _check_gamma_poles(s):
    arr = np.atleast_1d(np.asarray(s, dtype=complex))
    re = arr.real
    near = (re < 0.5) & (np.abs(arr - np.round(re)) < POLE_TOL)
    if np.any(near):
        raise DomainError("gamma pole at a non-positive integer")


def gamma(s):
    """Euler gamma for real or complex s off the non-positive integers."""
    _check_gamma_poles(s)
    out = sc.gamma(s)
    return out.item() if np.ndim(out) == 0 else out


def loggamma(s):
    """Principal log-gamma; complex input supported."""
    _check_gamma_poles(s)
    out = sc.loggamma(s)
    return out.item() if np.ndim(out) == 0 else out


def incomplete_gamma(rho: float, u: float) -> float:
    """Upper incomplete gamma Gamma(rho, u) = int_u^inf y^{rho-1} e^{-y} dy for u > 0."""
    if u <= 0:
        raise DomainError("incomplete_gamma requires u > 0")
    if rho <= 0:
        raise DomainError("incomplete_gamma requires rho > 0")
    # gammaincc underflows before Gamma(rho, u) does; switch to log form there
    q = sc.gammaincc(rho, u)
    if q > 1e-250:
        return float(q * sc.gamma(rho))
    return float(math.exp(_log_upper_gamma_cf(rho, u)))


def _log_upper_gamma_cf(rho: float, u: float) -> float:
    # modified Lentz evaluation of the continued fraction for Gamma(rho, u), u large
    tiny = 1e-300
    b = u + 1.0 - rho
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - rho)
        b += 2.0
        d = an * d + b
        d = tiny if abs(d) < tiny else d
        c = b + an / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return -u + rho * math.log(u) + math.log(h)
