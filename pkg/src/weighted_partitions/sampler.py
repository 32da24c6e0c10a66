"""Random weighted partitions.

Under the grand-canonical measure mu_v the multiplicities r_k are independent
negative binomials, P(r_k = j) = C(b_k + j - 1, j) v^{kj} (1 - v^k)^{b_k}.
Conditioning on total = n gives the uniform measure on partitions of n for
every v, so uniform samples come from rejection with the saddle tilt
v = e^{-alpha_n}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .errors import BudgetExceeded, DomainError
from .saddle import solve_saddle
from .series import Mode, largest_part_cdf
from .weights import WeightModel, weights_array

TAIL_TOL = 1e-12
BATCH = 1 << 15


def make_rng(seed) -> np.random.Generator:
    """Counter-based (Philox) generator; ``seed`` may be an int or a SeedSequence."""
    return np.random.Generator(np.random.Philox(seed))


def spawn_seeds(seed: int, n: int) -> list:
    return np.random.SeedSequence(seed).spawn(n)


@dataclass(frozen=True)
class PartitionSample:
    multiplicities: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(k * r for k, r in self.multiplicities.items())

    @property
    def largest_part(self) -> int:
        return max((k for k, r in self.multiplicities.items() if r > 0), default=0)

    @classmethod
    def from_row(cls, row) -> "PartitionSample":
        return cls({k: int(r) for k, r in enumerate(row, start=1) if r > 0})

    def parts(self) -> tuple:
        """Parts in non-increasing order."""
        return tuple(k for k in sorted(self.multiplicities, reverse=True) for _ in range(self.multiplicities[k]))


def tail_mass(model: WeightModel, v: float, k_cut: int) -> float:
    """sum_{k > k_cut} b_k v^k, summed until the terms are negligible."""
    if not 0 < v < 1:
        raise DomainError("v must lie in (0, 1)")
    lv = math.log(v)
    # terms decay geometrically once k > (nu - 1) / |log v|
    k_end = int(max(k_cut, (model.nu - 1.0) / -lv) + 80.0 / -lv) + 2
    k = np.arange(k_cut + 1, k_end + 1, dtype=float)
    b = weights_array(model, k_end)[k_cut:]
    return float(np.sum(b * np.exp(k * lv)))


def default_k_cut(model: WeightModel, v: float, tol: float = TAIL_TOL) -> int:
    """Smallest K with sum_{k>K} b_k v^k < tol."""
    lv = -math.log(v)
    k = max(1, int(math.log(1.0 / tol) / lv))
    while tail_mass(model, v, k) >= tol:
        k = int(k * 1.25) + 1
    lo, hi = 1, k
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_mass(model, v, mid) < tol:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _draw_block(b: np.ndarray, v: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """size x len(b) matrix of independent NB(b_k, v^k) multiplicities."""
    K = b.size
    out = np.zeros((size, K), dtype=np.int64)
    lv = math.log(v)
    for i in range(K):
        bk = b[i]
        if bk <= 0:
            continue
        q = math.exp((i + 1) * lv)  # v^k
        if q < 1e-300:
            continue
        if bk == 1.0:
            out[:, i] = rng.geometric(-math.expm1((i + 1) * lv), size) - 1
        elif float(bk).is_integer():
            out[:, i] = rng.negative_binomial(bk, -math.expm1((i + 1) * lv), size)
        else:
            # gamma-Poisson mixture for real shapes
            lam = rng.gamma(bk, q / -math.expm1((i + 1) * lv), size)
            out[:, i] = rng.poisson(lam)
    return out


def sample_mu_v(model: WeightModel, v: float, k_cut: int | None = None, rng_seed=None,
                size: int | None = None):
    """Draw from mu_v restricted to parts <= k_cut.

    Returns one PartitionSample, or a (size x k_cut) multiplicity matrix when
    ``size`` is given.
    """
    if not 0 < v < 1:
        raise DomainError("v must lie in (0, 1)")
    if k_cut is None:
        k_cut = default_k_cut(model, v)
    elif tail_mass(model, v, k_cut) >= TAIL_TOL:
        raise DomainError(f"k_cut={k_cut} leaves tail mass >= {TAIL_TOL:g}")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else make_rng(rng_seed)
    block = _draw_block(weights_array(model, k_cut), v, 1 if size is None else size, rng)
    if size is None:
        return PartitionSample.from_row(block[0])
    return block


def sample_uniform_rows(model: WeightModel, n: int, samples: int, rng_seed=None,
                        max_tries: int | None = None, v: float | None = None):
    """``samples`` uniform partitions of n as rows of multiplicities r_1..r_n.

    Rejection from mu_v with parts > n dropped: those parts would force
    total > n, and dropping them rescales the acceptance probability by a
    constant, so the accepted law is unchanged.  Returns (rows, tries).
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if samples < 1:
        raise DomainError("samples must be >= 1")
    if v is None:
        v = math.exp(-solve_saddle(model, n).alpha_n)
    if not 0 < v < 1:
        raise DomainError("v must lie in (0, 1)")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else make_rng(rng_seed)
    b = weights_array(model, n)
    k = np.arange(1, n + 1)
    got, tries = [], 0
    have = 0
    while have < samples:
        if max_tries is not None and tries >= max_tries:
            raise BudgetExceeded(tries, have)
        size = BATCH if max_tries is None else min(BATCH, max_tries - tries)
        block = _draw_block(b, v, size, rng)
        hit = np.nonzero(block @ k == n)[0]
        need = samples - have
        if hit.size >= need:
            # count tries only up to the last accepted proposal
            tries += int(hit[need - 1]) + 1
            got.append(block[hit[:need]])
            have = samples
        else:
            tries += size
            got.append(block[hit])
            have += hit.size
    return np.concatenate(got, axis=0), tries


def sample_uniform(model: WeightModel, n: int, rng_seed=None, max_tries: int = 10**7) -> PartitionSample:
    """One exactly uniform weighted partition of n."""
    rows, _ = sample_uniform_rows(model, n, 1, rng_seed, max_tries)
    return PartitionSample.from_row(rows[0])


def largest_parts(rows: np.ndarray) -> np.ndarray:
    nz = rows > 0
    last = rows.shape[1] - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), last, 0)


@dataclass(frozen=True)
class EmpiricalLaw:
    n: int
    samples: int
    frequencies: dict
    ks: float
    tries_mean: float
    seed: object = None

    def ks_critical(self, level: float = 0.99) -> float:
        """One-sample KS critical value at the given confidence."""
        return float(stats.kstwo.ppf(level, self.samples))


def empirical_largest_part(model: WeightModel, n: int, samples: int, rng_seed=None,
                           mode=Mode.LOG, max_tries: int | None = None) -> EmpiricalLaw:
    """Largest-part frequencies over uniform draws and the KS distance to the exact CDF."""
    rows, tries = sample_uniform_rows(model, n, samples, rng_seed, max_tries)
    lp = largest_parts(rows)
    counts = np.bincount(lp, minlength=n + 1)
    emp = np.cumsum(counts) / samples
    exact = np.array([float(x) for x in largest_part_cdf(model, n, mode)])
    ks = float(np.max(np.abs(emp - exact)))
    freqs = {int(m): int(c) for m, c in enumerate(counts) if c}
    return EmpiricalLaw(n, samples, freqs, ks, tries / samples, rng_seed)
