"""Independent reference computations used by the tests.

None of these share code with the package: partitions are enumerated
directly, p(n) comes from Euler's pentagonal recurrence, plane partitions are
built row by row, and analytic sums are taken term by term.
"""
from __future__ import annotations

import math
from functools import lru_cache

import mpmath


def multiplicity_vectors(n: int, k_max: int | None = None):
    """Yield dicts {k: r_k} with sum k r_k = n, parts <= k_max."""
    k_max = n if k_max is None else min(k_max, n)

    def rec(rest, k):
        if rest == 0:
            yield {}
            return
        if k == 0:
            return
        for r in range(rest // k, -1, -1):
            for tail in rec(rest - r * k, k - 1):
                if r:
                    tail = dict(tail)
                    tail[k] = r
                yield tail

    yield from rec(n, k_max)


def gen_binom(b: float, r: int) -> float:
    """C(b + r - 1, r) for real b >= 0."""
    out = 1.0
    for j in range(1, r + 1):
        out *= (b + j - 1) / j
    return out


def gen_binom_int(b: int, r: int) -> int:
    return math.comb(b + r - 1, r)


def brute_count(weight, n: int, k_max: int | None = None, integer: bool = True):
    """Weighted partition count by enumeration; ``weight(k)`` gives b_k."""
    total = 0 if integer else 0.0
    for vec in multiplicity_vectors(n, k_max):
        term = 1 if integer else 1.0
        for k, r in vec.items():
            b = weight(k)
            term *= gen_binom_int(int(b), r) if integer else gen_binom(b, r)
        total += term
    return total


@lru_cache(maxsize=None)
def pentagonal_p(n: int) -> int:
    """p(n) via Euler's pentagonal number theorem."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total, j = 0, 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            break
        sign = 1 if j % 2 else -1
        total += sign * pentagonal_p(n - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            total += sign * pentagonal_p(n - g2)
        j += 1
    return total


def plane_partitions(n: int) -> int:
    """Number of plane partitions of n, by building non-increasing rows under a bounding row."""

    def rows_under(total, bound):
        # partitions of `total` (as tuples) lying entrywise under `bound`
        def rec(rest, i, cap):
            if rest == 0:
                yield ()
                return
            if i >= len(bound):
                return
            for v in range(min(cap, bound[i], rest), 0, -1):
                for tail in rec(rest - v, i + 1, v):
                    yield (v,) + tail

        yield from rec(total, 0, total)

    @lru_cache(maxsize=None)
    def count(rest, bound):
        if rest == 0:
            return 1
        return sum(count(rest - s, row) for s in range(1, rest + 1) for row in rows_under(s, bound))

    return count(n, (n,) * n)


def direct_sum(term, tol=1e-18, k_max=10**7) -> float:
    """sum_{k>=1} term(k), stopping once terms stay below tol for a while."""
    total, small = 0.0, 0
    for k in range(1, k_max):
        t = term(k)
        total += t
        small = small + 1 if abs(t) < tol * max(1.0, abs(total)) else 0
        if small > 20:
            return total
    raise RuntimeError("direct sum did not settle")


def bisect_saddle(A, n, lo=1e-8, hi=50.0, iters=200) -> float:
    """Plain bisection for A(alpha) = n with A decreasing."""
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if A(mid) > n:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def mp_zeta(s, a=1):
    with mpmath.workdps(40):
        return complex(mpmath.zeta(s, a))


def mp_dirichlet(C: float, nu: float, s, head=()) -> complex:
    """sum_{k<=L} head[k-1] k^{-s} + sum_{k>L} C k^{nu-1-s}, tail by Euler-Maclaurin in mpmath."""
    with mpmath.workdps(25):
        L = len(head)
        total = sum(mpmath.mpf(v) * mpmath.power(k, -s) for k, v in enumerate(head, start=1))
        total += mpmath.nsum(lambda k: C * mpmath.power(k, nu - 1 - s), [L + 1, mpmath.inf],
                             method="euler-maclaurin")
        return complex(total)
