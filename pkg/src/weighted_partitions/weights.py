"""Weight sequences b_k and their Dirichlet-series metadata.

A model fixes b_1, b_2, ... together with the pole location ``rho`` and residue
``A`` of D(s) = sum_k b_k k^{-s}, and the continued values D(0), D'(0).
Built-in families are b_k = C k^{nu-1} (constant, linear and general power
weights); user tables must carry a power tail so that D(s) still has its pole.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

import numpy as np

from . import special
from .errors import DomainError

KINDS = ("constant", "linear", "power", "table")


@dataclass(frozen=True)
class WeightModel:
    """Immutable weight model.

    For ``kind="table"`` the weights are ``values[k-1]`` for k <= len(values)
    and ``C * k**(nu-1)`` beyond; for the other kinds only (C, nu) matter.
    """

    kind: str
    C: float
    nu: float
    values: tuple = ()
    c0: float = 0.5
    rho: float = field(init=False)
    A: float = field(init=False)
    d0: float | None = field(init=False, default=None)
    d0prime: float | None = field(init=False, default=None)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown weight kind {self.kind!r}")
        if not (self.C > 0 and math.isfinite(self.C)):
            raise DomainError("tail coefficient C must be positive (a zero tail violates the pole condition)")
        if not (self.nu > 0 and math.isfinite(self.nu)):
            raise DomainError("exponent nu must be positive")
        if not 0 < self.c0 < 1:
            raise DomainError("c0 must lie in (0, 1)")
        if any((not math.isfinite(v)) or v < 0 for v in self.values):
            raise DomainError("weights must be finite and non-negative")
        if self.values and self.values[0] == 0:
            support = [k for k, v in enumerate(self.values, start=1) if v > 0]
            support += [len(self.values) + 1, len(self.values) + 2]
            if reduce(math.gcd, support) > 1:
                raise DomainError("b_1 = 0 with support gcd > 1: p_b(n) vanishes on residue classes")
        object.__setattr__(self, "rho", float(self.nu))
        object.__setattr__(self, "A", float(self.C))
        d0, d0p = _continued_values(self)
        object.__setattr__(self, "d0", d0)
        object.__setattr__(self, "d0prime", d0p)

    @property
    def certified(self) -> bool:
        """True when the Meinardus hypotheses are known to hold (built-in families)."""
        return self.kind != "table"

    @property
    def integer_weights(self) -> bool:
        if self.nu != int(self.nu) or self.C != int(self.C):
            return False
        return all(float(v).is_integer() for v in self.values)

    @property
    def rational_weights(self) -> bool:
        return self.nu == int(self.nu)

    def to_spec(self) -> dict:
        if self.kind == "constant":
            spec = {"kind": "constant", "b": self.C}
        elif self.kind == "linear":
            spec = {"kind": "linear"}
        elif self.kind == "power":
            spec = {"kind": "power", "C": self.C, "nu": self.nu}
        else:
            spec = {"kind": "table", "values": list(self.values), "tail": {"C": self.C, "nu": self.nu}}
        if self.c0 != 0.5:
            spec["c0"] = self.c0
        return spec

    def to_json(self) -> str:
        return json.dumps(self.to_spec(), sort_keys=True)


def _continued_values(model: WeightModel) -> tuple[float, float]:
    # D(s) = sum_{k<=L} (b_k - C k^{nu-1}) k^{-s} + C zeta(s - nu + 1)
    s0 = 1.0 - model.nu
    d0 = model.C * special.zeta(s0)
    d0p = model.C * special.zeta_prime(s0)
    for k, v in enumerate(model.values, start=1):
        diff = v - model.C * k ** (model.nu - 1.0)
        d0 += diff
        d0p -= diff * math.log(k)
    return float(d0), float(d0p)


def constant(b: float = 1.0, c0: float = 0.5) -> WeightModel:
    """b_k = b for all k (b = 1: ordinary integer partitions)."""
    return WeightModel("constant", float(b), 1.0, c0=c0)


def linear(c0: float = 0.5) -> WeightModel:
    """b_k = k (plane partitions)."""
    return WeightModel("linear", 1.0, 2.0, c0=c0)


def power(C: float, nu: float, c0: float = 0.5) -> WeightModel:
    """b_k = C k^{nu-1}; D(s) = C zeta(s - nu + 1)."""
    return WeightModel("power", float(C), float(nu), c0=c0)


def table(values, tail_C: float, tail_nu: float, c0: float = 0.5) -> WeightModel:
    """Explicit b_1..b_L followed by the power tail C k^{nu-1}."""
    return WeightModel("table", float(tail_C), float(tail_nu), tuple(float(v) for v in values), c0=c0)


BUILTIN = {
    "constant": constant(),
    "linear": linear(),
    "sqrt": power(1.0, 1.5),
}


def from_spec(spec: dict) -> WeightModel:
    """Parse the weight-spec JSON object used by the CLI and library alike."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise DomainError("weight spec must be an object with a 'kind' key")
    kind = spec["kind"]
    c0 = float(spec.get("c0", 0.5))
    if kind == "constant":
        return constant(float(spec.get("b", 1.0)), c0=c0)
    if kind == "linear":
        return linear(c0=c0)
    if kind == "power":
        return power(float(spec["C"]), float(spec["nu"]), c0=c0)
    if kind == "table":
        tail = spec.get("tail")
        if not tail:
            raise DomainError("table models must declare a power tail")
        return table(spec["values"], float(tail["C"]), float(tail["nu"]), c0=c0)
    raise DomainError(f"unknown weight kind {kind!r}")


def load_model(text: str) -> WeightModel:
    """Accept a built-in name, an inline JSON object, or a path to a JSON file."""
    if text in BUILTIN:
        return BUILTIN[text]
    if text.lstrip().startswith("{"):
        return from_spec(json.loads(text))
    with open(text) as fh:
        return from_spec(json.load(fh))


def weight_at(model: WeightModel, k: int) -> float:
    if k < 1:
        raise DomainError("k must be >= 1")
    if k <= len(model.values):
        return model.values[k - 1]
    return model.C * k ** (model.nu - 1.0)


@lru_cache(maxsize=64)
def _weights_cached(model: WeightModel, k_max: int) -> np.ndarray:
    k = np.arange(1, k_max + 1, dtype=float)
    b = model.C * k ** (model.nu - 1.0)
    L = min(len(model.values), k_max)
    if L:
        b[:L] = model.values[:L]
    b.setflags(write=False)
    return b


def weights_array(model: WeightModel, k_max: int) -> np.ndarray:
    """b_1..b_{k_max} as a read-only float array."""
    return _weights_cached(model, int(k_max))


def _as_fraction(x: float) -> Fraction:
    return Fraction(repr(float(x)))


def exact_weight(model: WeightModel, k: int) -> Fraction:
    """b_k as an exact rational; raises for irrational weights."""
    if k <= len(model.values):
        return _as_fraction(model.values[k - 1])
    if not model.rational_weights:
        raise DomainError("exact mode requires rational weights")
    return _as_fraction(model.C) * Fraction(k) ** (int(model.nu) - 1)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_weight_sum(model: WeightModel, n: int):
    """sum_{d | n} d * b_d; exact (Fraction) when the weights involved are rational."""
    if n < 1:
        raise DomainError("n must be >= 1")
    divs = _divisors(n)
    try:
        return sum((d * exact_weight(model, d) for d in divs), Fraction(0))
    except DomainError:
        return float(sum(d * weight_at(model, d) for d in divs))


def l_sequence(model: WeightModel, k_max: int) -> np.ndarray:
    """L_k = (1/k) sum_{j<=k} b_j j^{1-rho} - A for k = 1..k_max."""
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    k = np.arange(1, k_max + 1, dtype=float)
    c = weights_array(model, k_max) * k ** (1.0 - model.rho)
    return np.cumsum(c) / k - model.A


def partial_sum_check(model: WeightModel, n: int) -> float:
    """(1/n) sum_{k<=n} k^{1-rho} b_k / A, which tends to 1."""
    if n < 1:
        raise DomainError("n must be >= 1")
    k = np.arange(1, n + 1, dtype=float)
    return float(np.sum(weights_array(model, n) * k ** (1.0 - model.rho)) / n / model.A)
