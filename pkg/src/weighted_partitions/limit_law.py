"""Gumbel limit of the largest part: normalisation, quantiles, approximations, diagnostics.

The normalised statistic is ``scale * X_n - center`` with

    center = -rho log(scale) + (rho-1) log|log scale| + (rho-1) log rho + log A,

and ``scale`` either the saddle point alpha_n or the explicit a(n).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError
from .saddle import cutoff, eval_F, normalizer_a, solve_saddle
from .series import Mode, cdf_exact
from .weights import WeightModel

__all__ = [
    "Normalization",
    "normalizer_a",
    "gumbel_cdf",
    "scale_for",
    "gumbel_center",
    "quantile_m_real",
    "quantile_m",
    "closed_form_cdf",
    "saddle_cdf_approx",
    "GumbelRow",
    "GumbelDiagnostic",
    "diagnostic",
]


class Normalization(str, enum.Enum):
    ALPHA = "alpha"  # saddle point alpha_n
    A = "a"  # explicit a(n)


def _norm(normalization) -> Normalization:
    if isinstance(normalization, Normalization):
        return normalization
    return Normalization(normalization)


def gumbel_cdf(t: float) -> float:
    return math.exp(-math.exp(-t))


def scale_for(model: WeightModel, n: int, normalization=Normalization.ALPHA) -> float:
    if _norm(normalization) is Normalization.A:
        return normalizer_a(model, n)
    return solve_saddle(model, n).alpha_n


def _center_from_scale(model: WeightModel, scale: float) -> float:
    if scale >= 1.0 / math.e:
        raise DomainError("normalization undefined: log log not real/meaningful (scale >= 1/e)")
    L = -math.log(scale)
    rho = model.rho
    return rho * L + (rho - 1.0) * math.log(L) + (rho - 1.0) * math.log(rho) + math.log(model.A)


def gumbel_center(model: WeightModel, n: int, normalization=Normalization.A) -> float:
    """Additive centering c_n so that scale * X_n - c_n has a Gumbel limit."""
    return _center_from_scale(model, scale_for(model, n, normalization))


def quantile_m_real(model: WeightModel, n: int, t: float, normalization=Normalization.ALPHA) -> float:
    """Unrounded m(t) = (t + center) / scale."""
    scale = scale_for(model, n, normalization)
    return (t + _center_from_scale(model, scale)) / scale


def quantile_m(model: WeightModel, n: int, t: float, normalization=Normalization.ALPHA) -> int:
    """m(t) rounded to the nearest integer (at least 1)."""
    return max(1, int(math.floor(quantile_m_real(model, n, t, normalization) + 0.5)))


def closed_form_cdf(model: WeightModel, n: int, m: float) -> float:
    """exp(-A alpha_n^{-1} m^{rho-1} e^{-m alpha_n})."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be >= 1")
    alpha = solve_saddle(model, n).alpha_n
    return math.exp(-model.A / alpha * m ** (model.rho - 1.0) * math.exp(-m * alpha))


def saddle_cdf_approx(model: WeightModel, n: int, m: int) -> float:
    """exp(F_m(e^{-alpha_n}) - F(e^{-alpha_n})), both summed directly."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be >= 1")
    alpha = solve_saddle(model, n).alpha_n
    if m >= cutoff(model, alpha):
        return 1.0
    return math.exp(eval_F(model, alpha, m) - eval_F(model, alpha))


@dataclass(frozen=True)
class GumbelRow:
    t: float
    m: int
    m_real: float
    exact_cdf: float
    gumbel_cdf: float
    closed_form_cdf: float
    exact_floor: float
    exact_ceil: float

    @property
    def abs_err(self) -> float:
        return abs(self.exact_cdf - self.gumbel_cdf)


@dataclass(frozen=True)
class GumbelDiagnostic:
    n: int
    normalization: Normalization
    grid: tuple = field(default_factory=tuple)

    @property
    def sup_error(self) -> float:
        return max(row.abs_err for row in self.grid)

    def summary(self) -> dict:
        return {"sup_error": self.sup_error, "n": self.n, "normalization": self.normalization.value}


def _exact(model, n, m, mode):
    if m >= n:
        return 1.0
    return float(cdf_exact(model, n, m, mode))


def diagnostic(model: WeightModel, n: int, t_grid, normalization=Normalization.ALPHA,
               mode=Mode.LOG) -> GumbelDiagnostic:
    """Compare the exact largest-part CDF at m(t) with exp(-e^{-t}) and the closed form.

    ``exact_floor`` / ``exact_ceil`` hold the exact CDF at floor and ceil of the
    unrounded m(t); they coincide with ``exact_cdf`` when m(t) is integral.
    """
    t_grid = list(t_grid)
    if not t_grid:
        raise DomainError("t_grid must be non-empty")
    if any(b < a for a, b in zip(t_grid, t_grid[1:])):
        raise DomainError("t_grid must be sorted")
    normalization = _norm(normalization)
    scale = scale_for(model, n, normalization)
    center = _center_from_scale(model, scale)
    rows = []
    for t in t_grid:
        m_real = (t + center) / scale
        m = max(1, int(math.floor(m_real + 0.5)))
        lo, hi = max(1, math.floor(m_real)), max(1, math.ceil(m_real))
        exact = _exact(model, n, m, mode)
        rows.append(GumbelRow(
            t=float(t),
            m=m,
            m_real=m_real,
            exact_cdf=exact,
            gumbel_cdf=gumbel_cdf(t),
            closed_form_cdf=closed_form_cdf(model, n, m),
            exact_floor=exact if lo == m else _exact(model, n, lo, mode),
            exact_ceil=exact if hi == m else _exact(model, n, hi, mode),
        ))
    return GumbelDiagnostic(n=n, normalization=normalization, grid=tuple(rows))
