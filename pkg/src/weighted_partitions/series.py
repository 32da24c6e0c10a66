"""Coefficients of the Euler product prod_k (1 - x^k)^{-b_k} and its truncations.

Coefficients come from the log-derivative recurrence

    n p(n) = sum_{j=1}^{n} c(j) p(n - j),   c(j) = sum_{d | j, d <= m} d b_d,

either exactly (Python ints / Fractions) or in natural-log scale floats.  The
ratio of truncated to full coefficients is P(X_n <= m) for the largest part
X_n of a uniformly random weighted partition of n.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import DomainError
from .weights import WeightModel, exact_weight, weights_array


class Mode(str, enum.Enum):
    EXACT = "exact"
    LOG = "log"


@dataclass(frozen=True)
class SeriesTable:
    """Coefficients p(0..n_max); ``coeffs`` holds ints/Fractions (EXACT) or log p (LOG)."""

    mode: Mode
    n_max: int
    trunc_m: int | None
    coeffs: tuple
    formal: bool = False

    def __len__(self):
        return self.n_max + 1


def _mode(mode) -> Mode:
    return Mode(mode.value if isinstance(mode, Mode) else mode)


def divisor_sums_exact(model: WeightModel, n_max: int, trunc_m: int | None) -> list:
    m = n_max if trunc_m is None else min(trunc_m, n_max)
    c = [0] * (n_max + 1)
    integral = model.integer_weights
    for d in range(1, m + 1):
        w = exact_weight(model, d) * d
        if integral:
            w = int(w)
        if w:
            for j in range(d, n_max + 1, d):
                c[j] += w
    return c


def divisor_sums_float(model: WeightModel, n_max: int, trunc_m: int | None) -> np.ndarray:
    m = n_max if trunc_m is None else min(trunc_m, n_max)
    c = np.zeros(n_max + 1)
    if m < 1:
        return c
    b = weights_array(model, m)
    for d in range(1, m + 1):
        if b[d - 1]:
            c[d::d] += d * b[d - 1]
    return c


def _expand_exact(model, n_max, trunc_m):
    c = divisor_sums_exact(model, n_max, trunc_m)
    p = [0] * (n_max + 1)
    p[0] = 1
    integral = model.integer_weights
    for n in range(1, n_max + 1):
        acc = 0
        for j in range(1, n + 1):
            cj = c[j]
            if cj:
                acc += cj * p[n - j]
        if integral:
            q, r = divmod(acc, n)
            if r:
                raise ArithmeticError("non-integral coefficient from integer weights")
            p[n] = q
        else:
            p[n] = Fraction(acc) / n
    return tuple(p)


def _expand_log(model, n_max, trunc_m):
    c = divisor_sums_float(model, n_max, trunc_m)
    with np.errstate(divide="ignore"):
        logc = np.log(c)
    logp = np.full(n_max + 1, -np.inf)
    logp[0] = 0.0
    for n in range(1, n_max + 1):
        v = logc[1:n + 1] + logp[n - 1::-1]
        top = v.max()
        if top == -np.inf:
            continue
        logp[n] = top + math.log(np.exp(v - top).sum()) - math.log(n)
    return tuple(logp.tolist())


@lru_cache(maxsize=256)
def _expand_cached(model: WeightModel, n_max: int, trunc_m: int | None, mode: Mode) -> SeriesTable:
    if mode is Mode.EXACT:
        if not model.rational_weights:
            raise DomainError("exact mode requires rational weights")
        coeffs = _expand_exact(model, n_max, trunc_m)
    else:
        coeffs = _expand_log(model, n_max, trunc_m)
    return SeriesTable(mode, n_max, trunc_m, coeffs, formal=not model.integer_weights)


def expand(model: WeightModel, n_max: int, trunc_m: int | None = None, mode=Mode.EXACT) -> SeriesTable:
    """Expand prod_{k<=m} (1 - x^k)^{-b_k} up to x^{n_max}."""
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if trunc_m is not None:
        if trunc_m < 1:
            raise DomainError("trunc_m must be >= 1")
        # factors with k > n_max do not touch coefficients up to n_max
        if trunc_m >= n_max:
            trunc_m = None
    return _expand_cached(model, int(n_max), trunc_m, _mode(mode))


def count(table: SeriesTable, n: int):
    """p_b(n) (EXACT) or log p_b(n) (LOG) from a computed table."""
    if not 0 <= n <= table.n_max:
        raise IndexError(f"n={n} outside table range 0..{table.n_max}")
    return table.coeffs[n]


def cdf_exact(model: WeightModel, n: int, m: int, mode=Mode.EXACT):
    """P(X_n <= m) as a coefficient ratio; Fraction in EXACT mode, float in LOG mode."""
    if n < 1 or m < 1:
        raise DomainError("n and m must be >= 1")
    mode = _mode(mode)
    full = count(expand(model, n, None, mode), n)
    part = count(expand(model, n, m, mode), n)
    if mode is Mode.EXACT:
        if full == 0:
            raise DomainError("zero denominator: no partitions of n")
        return Fraction(part) / Fraction(full)
    if full == -math.inf:
        raise DomainError("zero denominator: no partitions of n")
    if part == -math.inf:
        return 0.0
    return min(1.0, math.exp(part - full))


def largest_part_cdf(model: WeightModel, n: int, mode=Mode.LOG) -> list:
    """[P(X_n <= m) for m = 0..n], built by multiplying in one factor at a time.

    Each factor (1 - x^m)^{-b_m} = sum_j C(b_m + j - 1, j) x^{mj}; the whole
    sweep costs O(n^2 log n) coefficient operations.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    mode = _mode(mode)
    if mode is Mode.EXACT:
        return _largest_part_cdf_exact(model, n)
    b = weights_array(model, n)
    cur = np.full(n + 1, -np.inf)
    cur[0] = 0.0
    partial = [-np.inf]
    for m in range(1, n + 1):
        bm = b[m - 1]
        if bm > 0:
            jmax = n // m
            j = np.arange(jmax + 1)
            logbin = gammaln(bm + j) - gammaln(bm) - gammaln(j + 1)
            new = cur.copy()
            for jj in range(1, jmax + 1):
                s = m * jj
                np.logaddexp(new[s:], logbin[jj] + cur[: n + 1 - s], out=new[s:])
            cur = new
        partial.append(cur[n])
    total = partial[-1]
    if total == -np.inf:
        raise DomainError("zero denominator: no partitions of n")
    return [0.0] + [min(1.0, math.exp(v - total)) if v > -np.inf else 0.0 for v in partial[1:]]


def _largest_part_cdf_exact(model, n):
    cur = [Fraction(0)] * (n + 1)
    cur[0] = Fraction(1)
    partial = [Fraction(0)]
    for m in range(1, n + 1):
        bm = exact_weight(model, m)
        if bm:
            new = list(cur)
            coef = Fraction(1)
            for jj in range(1, n // m + 1):
                coef = coef * (bm + jj - 1) / jj
                s = m * jj
                for i in range(s, n + 1):
                    new[i] += coef * cur[i - s]
            cur = new
        partial.append(cur[n])
    total = partial[-1]
    if total == 0:
        raise DomainError("zero denominator: no partitions of n")
    return [Fraction(0)] + [v / total for v in partial[1:]]


def pmf_largest_part(model: WeightModel, n: int, mode=Mode.EXACT) -> list:
    """P(X_n = m) for m = 1..n."""
    cdf = largest_part_cdf(model, n, mode)
    return [cdf[m] - cdf[m - 1] for m in range(1, n + 1)]


def format_value(value, mode) -> str:
    """Render a coefficient: 'num/den' for exact rationals, 15 significant digits otherwise."""
    mode = _mode(mode)
    if mode is Mode.EXACT:
        if isinstance(value, Fraction):
            return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        return str(value)
    return f"{value:.15g}"


def format_log_count(logp: float) -> str:
    """exp(logp) in scientific notation with 15 significant digits, without overflow."""
    if logp == -math.inf:
        return "0"
    log10 = logp / math.log(10.0)
    exp10 = math.floor(log10)
    mant = 10.0 ** (log10 - exp10)
    text = f"{mant:.14f}"
    if text.startswith("10"):
        exp10 += 1
        text = f"{mant / 10:.14f}"
    return f"{text}e{exp10:+d}"
