"""Saddle-point quantities of the Euler product at r = e^{-alpha}.

    F(alpha) = -sum b_k log(1 - e^{-k alpha})
    A(alpha) = sum b_k k e^{-k alpha} / (1 - e^{-k alpha})        (mean size)
    B(alpha) = sum b_k k^2 e^{-k alpha} / (1 - e^{-k alpha})^2    (variance)

The saddle point alpha_n solves A(alpha) = n.  Sums are cut at
K(alpha) = ceil((rho + 40) / alpha) terms.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict

import numpy as np

from . import special
from .errors import ConvergenceError, DomainError
from .weights import WeightModel, weights_array

SADDLE_RTOL = 1e-10


def cutoff(model: WeightModel, alpha: float) -> int:
    return int(math.ceil((model.rho + 40.0) / alpha))


def _check_alpha(alpha):
    if not alpha > 0:
        raise DomainError("alpha must be positive")


def _terms(model, alpha, m=None):
    K = cutoff(model, alpha)
    if m is not None:
        K = min(K, m)
    k = np.arange(1, K + 1, dtype=float)
    return k, weights_array(model, K), k * alpha


def h_constant(model: WeightModel) -> float:
    """h = A Gamma(rho+1) zeta(rho+1)."""
    return model.A * math.gamma(model.rho + 1.0) * special.zeta(model.rho + 1.0)


def normalizer_a(model: WeightModel, n: float) -> float:
    """a(n) = (A Gamma(rho+1) zeta(rho+1) / n)^{1/(rho+1)}."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return (h_constant(model) / n) ** (1.0 / (model.rho + 1.0))


def eval_F(model: WeightModel, alpha: float, m: int | None = None) -> float:
    """F(alpha), or the truncated F_m(alpha) summing only k <= m."""
    _check_alpha(alpha)
    _, b, ka = _terms(model, alpha, m)
    return float(-np.sum(b * np.log1p(-np.exp(-ka))))


def eval_A(model: WeightModel, alpha: float) -> float:
    _check_alpha(alpha)
    k, b, ka = _terms(model, alpha)
    return float(np.sum(b * k / np.expm1(ka)))


def eval_B(model: WeightModel, alpha: float) -> float:
    _check_alpha(alpha)
    k, b, ka = _terms(model, alpha)
    # e^{-x}/(1-e^{-x})^2 = 1 / (expm1(x) * (1 - e^{-x}))
    return float(np.sum(b * k * k / (np.expm1(ka) * -np.expm1(-ka))))


def tail_derivative_gap(model: WeightModel, alpha: float, m: int) -> float:
    """F'(x) - F_m'(x) at x = e^{-alpha}: sum_{k>m} k b_k e^{-(k-1)alpha} / (1 - e^{-k alpha})."""
    _check_alpha(alpha)
    k, b, ka = _terms(model, alpha)
    sel = k > m
    return float(np.sum(b[sel] * k[sel] * np.exp(alpha) / np.expm1(ka[sel])))


def newton_bisect(f, fprime, lo, hi, x0, rtol, max_iter=200):
    """Root of a function decreasing on [lo, hi]; Newton steps guarded by the bracket.

    ``f`` returns the residual scaled so that |f| <= rtol means converged.
    """
    flo, fhi = f(lo), f(hi)
    if not (flo > 0 > fhi):
        raise ConvergenceError("root not bracketed")
    x = min(max(x0, lo), hi)
    for _ in range(max_iter):
        fx = f(x)
        if abs(fx) <= rtol:
            return x
        if fx > 0:
            lo = x
        else:
            hi = x
        d = fprime(x)
        step = x - fx / d if d != 0 else math.nan
        x = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4e-16 * hi:
            return x
    raise ConvergenceError(f"no convergence after {max_iter} iterations")


@dataclass(frozen=True)
class SaddleSolution:
    n: int
    alpha_n: float
    alpha_expansion: float | None
    F_value: float
    B_value: float
    h: float
    residual: float

    def to_dict(self) -> dict:
        return asdict(self)


def solve_saddle(model: WeightModel, n: float) -> SaddleSolution:
    """Solve A(e^{-alpha}) = n by Newton-bisection on [a(n)/10, 10 a(n)]."""
    if n < 1:
        raise DomainError("n must be >= 1")
    a = normalizer_a(model, n)
    lo, hi = a / 10.0, a * 10.0
    while eval_A(model, lo) <= n:
        lo /= 10.0
    while eval_A(model, hi) >= n:
        hi *= 10.0

    def resid(x):
        return (eval_A(model, x) - n) / n

    def dresid(x):
        return -eval_B(model, x) / n

    alpha = newton_bisect(resid, dresid, lo, hi, a, SADDLE_RTOL * 0.01)
    residual = abs(eval_A(model, alpha) - n) / n
    if residual > SADDLE_RTOL:
        raise ConvergenceError(f"saddle residual {residual:.3g} above tolerance")
    expansion = None
    if model.d0 is not None:
        expansion = a + model.d0 / ((model.rho + 1.0) * n)
    return SaddleSolution(
        n=int(n) if float(n).is_integer() else n,
        alpha_n=alpha,
        alpha_expansion=expansion,
        F_value=eval_F(model, alpha),
        B_value=eval_B(model, alpha),
        h=h_constant(model),
        residual=residual,
    )


def meinardus_estimate(model: WeightModel, n: int) -> float:
    """log of e^{n alpha_n} f(e^{-alpha_n}) / sqrt(2 pi B(e^{-alpha_n}))."""
    sol = solve_saddle(model, n)
    return n * sol.alpha_n + sol.F_value - 0.5 * math.log(2.0 * math.pi * sol.B_value)


def lemma1_log_f(model: WeightModel, alpha: float, theta: float = 0.0) -> complex:
    """Small-|tau| approximation A Gamma(rho) zeta(rho+1) tau^{-rho} - D(0) log tau + D'(0), tau = alpha + i theta."""
    _check_alpha(alpha)
    if abs(theta) > math.pi:
        raise DomainError("|theta| must be <= pi")
    tau = complex(alpha, theta)
    if abs(cmath.phase(tau)) > math.pi / 4 + 1e-15:
        raise DomainError("|arg(alpha + i theta)| must be <= pi/4")
    if model.d0 is None or model.d0prime is None:
        raise DomainError("D(0) / D'(0) unavailable for this model")
    lead = model.A * math.gamma(model.rho) * special.zeta(model.rho + 1.0)
    return lead * tau ** (-model.rho) - model.d0 * cmath.log(tau) + model.d0prime


def log_f_complex(model: WeightModel, alpha: float, theta: float = 0.0, n_terms: int | None = None) -> complex:
    """log f(e^{-alpha + i theta}) summed term by term on the principal branch."""
    _check_alpha(alpha)
    K = n_terms if n_terms is not None else cutoff(model, alpha)
    k = np.arange(1, K + 1, dtype=float)
    b = weights_array(model, K)
    z = np.exp(-k * complex(alpha, -theta))
    return complex(-np.sum(b * np.log1p(-z)))


def char_ratio(model: WeightModel, alpha: float, theta: float, n_max: int | None = None) -> complex:
    """f(e^{-alpha + i theta}) / f(e^{-alpha}) via sum b_k [log(1-e^{-k alpha}) - log(1-e^{-k(alpha - i theta)})]."""
    _check_alpha(alpha)
    if abs(theta) > math.pi:
        raise DomainError("|theta| must be <= pi")
    K = n_max if n_max is not None else cutoff(model, alpha)
    k = np.arange(1, K + 1, dtype=float)
    b = weights_array(model, K)
    real_part = np.log1p(-np.exp(-k * alpha))
    cplx = np.log1p(-np.exp(-k * complex(alpha, -theta)))
    return complex(np.exp(np.sum(b * (real_part - cplx))))


def omega(n: float) -> float:
    """The slowly diverging omega(n) = log log(n + e^e) used in delta_n."""
    return math.log(math.log(n + math.e ** math.e))


def delta_n(model: WeightModel, n: float, alpha: float | None = None) -> float:
    """Locality window alpha_n^{1 + rho/3} / omega(n)."""
    if alpha is None:
        alpha = solve_saddle(model, n).alpha_n
    return alpha ** (1.0 + model.rho / 3.0) / omega(n)
