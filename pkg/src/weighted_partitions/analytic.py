"""Dirichlet series of the weights and numerical checks of the integral identities.

* ``mellin_F_check``: F_m(e^{-alpha}) and F(e^{-alpha}) as vertical-line
  integrals of alpha^{-s} Gamma(s) zeta(s+1) D_m(s) (resp. D(s)).
* ``perron_truncation_check``: D_m(w + rho - 1) against
  A (m+1)^{1-w} / (1-w) + D(w + rho - 1).
* ``check_m3``: grid minimum of sum b_k e^{-k alpha} sin^2(pi k u).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, asdict
from functools import lru_cache

import numpy as np
from scipy import special as sc

from . import special
from .errors import DomainError
from .saddle import eval_F
from .weights import WeightModel, weights_array


class ClosedForm(str, enum.Enum):
    ZETA_SHIFT = "zeta_shift"
    NONE = "none"


@dataclass(frozen=True)
class DirichletSpec:
    model: WeightModel

    @property
    def closed_form(self) -> ClosedForm:
        return ClosedForm.NONE if self.model.kind == "table" else ClosedForm.ZETA_SHIFT


def _tail_shift(model: WeightModel, s):
    return model.C * special.zeta(np.asarray(s) - model.nu + 1.0)


def dirichlet_partial(model: WeightModel, s, m: int):
    """D_m(s) = sum_{k<=m} b_k k^{-s}, vectorised over s."""
    s = np.asarray(s, dtype=complex)
    logk = np.log(np.arange(1, m + 1, dtype=float))
    b = weights_array(model, m)
    flat = s.ravel()
    out = np.empty_like(flat)
    step = max(1, 4_000_000 // max(m, 1))
    for i in range(0, flat.size, step):
        out[i:i + step] = np.exp(-np.outer(flat[i:i + step], logk)) @ b
    out = out.reshape(s.shape)
    return out.item() if out.ndim == 0 else out


def dirichlet_D(spec: DirichletSpec | WeightModel, s):
    """D(s): C zeta(s - nu + 1) for the power families.

    Table models are evaluated only where the series converges
    (Re s > rho + 1/4), as the finite correction plus the zeta-shifted tail.
    """
    model = spec.model if isinstance(spec, DirichletSpec) else spec
    s_arr = np.asarray(s, dtype=complex)
    if np.any(np.abs(s_arr - model.rho) < special.POLE_TOL):
        raise DomainError("D(s) has its pole at s = rho")
    out = _tail_shift(model, s_arr)
    if model.kind == "table":
        if np.any(s_arr.real <= model.rho + 0.25):
            raise DomainError("table models support D(s) only for Re(s) > rho + 0.25")
        L = len(model.values)
        k = np.arange(1, L + 1, dtype=float)
        diff = np.asarray(model.values) - model.C * k ** (model.nu - 1.0)
        corr = np.exp(-np.outer(s_arr.ravel(), np.log(k))) @ diff
        out = out + corr.reshape(s_arr.shape)
    out = np.asarray(out)
    return out.item() if out.ndim == 0 else out


@dataclass(frozen=True)
class MellinCheck:
    alpha: float
    trunc_m: int | None
    Delta: float
    y_max: float
    step: float
    integral_value: float
    direct_value: float
    abs_diff: float
    refinement_change: float
    converged: bool
    edge_integrand: float

    def to_dict(self) -> dict:
        return asdict(self)


@lru_cache(maxsize=16)
def _mellin_kernel(model: WeightModel, Delta: float, y_max: float, step: float, trunc_m: int | None):
    """Gamma(s) zeta(s+1) D(s) on y in [0, y_max] (grid spacing step/2), s = rho + Delta + iy."""
    n = int(round(y_max / (step / 2.0)))
    y = np.linspace(0.0, y_max, n + 1)
    s = model.rho + Delta + 1j * y
    g = np.exp(sc.loggamma(s)) * special.zeta(s + 1.0)
    d = dirichlet_partial(model, s, trunc_m) if trunc_m is not None else dirichlet_D(model, s)
    out = g * d
    out.setflags(write=False)
    return y, s, out


def _trapezoid_half_line(values: np.ndarray, h: float) -> float:
    # integral over [-Y, Y] of a conjugate-symmetric integrand, from samples on [0, Y]
    re = values.real
    return float(2.0 * h * (re[1:-1].sum() + 0.5 * re[0] + 0.5 * re[-1]))


def mellin_F_check(model: WeightModel, alpha: float, trunc_m: int | None = None, Delta: float = 1.5,
                   y_max: float = 200.0, step: float = 0.01, tol: float = 1e-6) -> MellinCheck:
    """Vertical-line quadrature of the Mellin representation of F_m (or F) against direct summation."""
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if not Delta > 0:
        raise DomainError("Delta must be positive")
    if trunc_m is not None and trunc_m < 1:
        raise DomainError("trunc_m must be >= 1")
    y, s, kernel = _mellin_kernel(model, float(Delta), float(y_max), float(step), trunc_m)
    integrand = np.exp(-s * math.log(alpha)) * kernel
    fine = _trapezoid_half_line(integrand, step / 2.0) / (2.0 * math.pi)
    coarse = _trapezoid_half_line(integrand[::2], step) / (2.0 * math.pi)
    direct = eval_F(model, alpha, trunc_m)
    change = abs(fine - coarse)
    return MellinCheck(
        alpha=alpha,
        trunc_m=trunc_m,
        Delta=Delta,
        y_max=y_max,
        step=step,
        integral_value=coarse,
        direct_value=direct,
        abs_diff=abs(coarse - direct),
        refinement_change=change,
        converged=change <= tol,
        edge_integrand=float(abs(integrand[-1])),
    )


@dataclass(frozen=True)
class PerronCheck:
    w: complex
    m: int
    T: float
    T_bound: float
    lhs: complex
    rhs: complex
    omega_m: complex
    perron_integral: complex | None

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("w", "lhs", "rhs", "omega_m", "perron_integral"):
            val = out[key]
            if val is not None:
                out[key] = {"re": val.real, "im": val.imag}
        return out


DEFAULT_PERRON_T = 50.0


def perron_T_bound(model: WeightModel, Delta: float, m: int, C1: float = 1.0) -> float:
    """Largest admissible T: m^{(C0 + rho + Delta)/(C1 + 1)} / log m (C1 <= 1 branch)."""
    if C1 > 1:
        return math.log(m) ** (1.0 / (C1 - 1.0))
    return m ** ((model.c0 + model.rho + Delta) / (C1 + 1.0)) / math.log(m)


def perron_truncation_check(model: WeightModel, w: complex, m: int, T: float | None = None,
                            C1: float = 1.0, integral: bool = False, step: float = 0.01) -> PerronCheck:
    """Compare the partial sum D_m(w + rho - 1) with its main terms; omega_m is the remainder.

    With ``integral=True`` also evaluates the truncated Perron integral
    (1/2 pi i) int_{d-iT}^{d+iT} D(w + z + rho - 1) (m+1)^z / z dz, d = 1/log m.
    """
    if DirichletSpec(model).closed_form is ClosedForm.NONE:
        raise DomainError("perron check needs a zeta-shift model")
    w = complex(w)
    Delta = w.real - 1.0
    if not Delta > 1:
        raise DomainError("Re(w) must exceed 2 (Delta > 1)")
    if m < 2:
        raise DomainError("m must be >= 2")
    bound = perron_T_bound(model, Delta, m, C1)
    if T is None:
        T = min(bound, DEFAULT_PERRON_T)
    elif T > bound:
        raise DomainError(f"T={T:g} exceeds the admissible bound {bound:g}")
    shift = w + model.rho - 1.0
    lhs = complex(dirichlet_partial(model, shift, m))
    rhs = model.A * (m + 1.0) ** (1.0 - w) / (1.0 - w) + complex(dirichlet_D(model, shift))
    value = None
    if integral:
        d = 1.0 / math.log(m)
        y = np.arange(0.0, T + step / 2, step)
        z = d + 1j * y
        f = dirichlet_D(model, shift + z) * np.exp(z * math.log(m + 1.0)) / z
        if abs(w.imag) > 0:
            y2 = -y
            z2 = d + 1j * y2
            f2 = dirichlet_D(model, shift + z2) * np.exp(z2 * math.log(m + 1.0)) / z2
            full = np.concatenate([f2[::-1][:-1], f])
            value = complex(np.trapezoid(full, dx=step) / (2.0 * math.pi))
        else:
            value = complex(_trapezoid_half_line(f, step) / (2.0 * math.pi))
    return PerronCheck(w, m, float(T), bound, lhs, rhs, lhs - rhs, value)


@dataclass(frozen=True)
class M3Check:
    alpha: float
    min_S: float
    argmin_u: float
    bound_ratio: dict

    def to_dict(self) -> dict:
        return asdict(self)


M3_EXPONENTS = (0.25, 0.5, 1.0)


def m3_sum(model: WeightModel, alpha: float, u) -> np.ndarray:
    """S(u) = sum_k b_k e^{-k alpha} sin^2(pi k u), vectorised over u."""
    K = int(math.ceil((model.rho + 40.0) / alpha))
    k = np.arange(1, K + 1, dtype=float)
    wk = weights_array(model, K) * np.exp(-k * alpha)
    u = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.empty(u.size)
    step = max(1, 2_000_000 // K)
    for i in range(0, u.size, step):
        out[i:i + step] = np.sin(np.pi * np.outer(u[i:i + step], k)) ** 2 @ wk
    return out


def check_m3(model: WeightModel, alpha: float, u_grid_size: int = 10_000) -> M3Check:
    """Minimum of S(u) over an even grid on (alpha / 2 pi, 1/2]."""
    if not 0 < alpha < 0.5:
        raise DomainError("alpha must lie in (0, 0.5)")
    lo = alpha / (2.0 * math.pi)
    u = np.linspace(lo, 0.5, u_grid_size + 1)[1:]
    S = m3_sum(model, alpha, u)
    i = int(np.argmin(S))
    ratios = {str(e): float(S[i] * alpha ** e) for e in M3_EXPONENTS}
    return M3Check(alpha, float(S[i]), float(u[i]), ratios)
