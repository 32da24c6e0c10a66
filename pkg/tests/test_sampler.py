import math
from collections import Counter

import numpy as np
import pytest
from scipy import stats

from oracles import multiplicity_vectors
from weighted_partitions.errors import BudgetExceeded, DomainError
from weighted_partitions.saddle import eval_A, solve_saddle
from weighted_partitions.sampler import (
    PartitionSample,
    default_k_cut,
    empirical_largest_part,
    largest_parts,
    make_rng,
    sample_mu_v,
    sample_uniform,
    sample_uniform_rows,
    spawn_seeds,
    tail_mass,
)
from weighted_partitions.series import pmf_largest_part
from weighted_partitions.weights import BUILTIN, constant, linear, power

MODELS = list(BUILTIN.values())


def test_partition_sample_fields():
    s = PartitionSample.from_row([2, 0, 1])
    assert s.multiplicities == {1: 2, 3: 1}
    assert s.total == 5 and s.largest_part == 3
    assert s.parts() == (3, 1, 1)
    empty = PartitionSample()
    assert empty.total == 0 and empty.largest_part == 0


def test_largest_parts_rows():
    rows = np.array([[3, 0, 0], [1, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert list(largest_parts(rows)) == [1, 2, 3, 0]


def test_tail_and_k_cut():
    v = math.exp(-0.05)
    k = default_k_cut(linear(), v)
    assert tail_mass(linear(), v, k) < 1e-12 <= tail_mass(linear(), v, k - 1)
    exact = sum(j * v ** j for j in range(k + 1, k + 5000))
    assert tail_mass(linear(), v, k) == pytest.approx(exact, rel=1e-9)
    with pytest.raises(DomainError):
        sample_mu_v(linear(), v, k_cut=10, rng_seed=1)
    with pytest.raises(DomainError):
        sample_mu_v(linear(), 1.0, rng_seed=1)


def test_empty_partition_probability():
    block = sample_mu_v(constant(), 0.5, rng_seed=3, size=40_000)
    p0 = np.prod([1 - 2.0 ** -k for k in range(1, 61)])
    assert p0 == pytest.approx(0.2888, abs=1e-4)
    frac = np.mean(block.sum(axis=1) == 0)
    assert abs(frac - p0) < 4 * math.sqrt(p0 * (1 - p0) / 40_000)


def test_geometric_first_multiplicity():
    v = 0.8
    r1 = sample_mu_v(constant(), v, rng_seed=5, size=50_000)[:, 0]
    mean, sd = v / (1 - v), math.sqrt(v) / (1 - v)
    assert abs(r1.mean() - mean) < 4 * sd / math.sqrt(r1.size)


@pytest.mark.parametrize("model", MODELS + [constant(2.5)])
def test_multiplicity_means(model):
    v = math.exp(-0.2)
    block = sample_mu_v(model, v, rng_seed=9, size=40_000)
    for k in (1, 2, 5):
        b, q = float(model.C * k ** (model.nu - 1)), v ** k
        mean, var = b * q / (1 - q), b * q / (1 - q) ** 2
        assert abs(block[:, k - 1].mean() - mean) < 4 * math.sqrt(var / block.shape[0])


@pytest.mark.parametrize("model", [constant(), linear()])
def test_mean_total_is_A(model):
    alpha = 0.1
    block = sample_mu_v(model, math.exp(-alpha), rng_seed=21, size=100_000)
    totals = block @ np.arange(1, block.shape[1] + 1)
    se = totals.std(ddof=1) / math.sqrt(totals.size)
    assert abs(totals.mean() - eval_A(model, alpha)) < 4 * se


def test_single_partition_of_one():
    for seed in range(5):
        assert sample_uniform(linear(), 1, rng_seed=seed).multiplicities == {1: 1}


def test_uniform_over_partitions_of_three():
    rows, _ = sample_uniform_rows(constant(), 3, 30_000, rng_seed=4)
    counts = Counter(tuple(r) for r in rows)
    assert set(counts) == {(3, 0, 0), (1, 1, 0), (0, 0, 1)}
    assert stats.chisquare(list(counts.values())).pvalue > 0.01


def test_linear_four_largest_part_law():
    rows, _ = sample_uniform_rows(linear(), 4, 100_000, rng_seed=8)
    freq = np.bincount(largest_parts(rows), minlength=5)[1:] / rows.shape[0]
    pmf = [float(p) for p in pmf_largest_part(linear(), 4)]
    for f, p in zip(freq, pmf):
        assert abs(f - p) <= 3 * math.sqrt(p * (1 - p) / rows.shape[0])
    # 13 typed outcomes: a part of size k carries one of k labels
    assert sum(math.prod(math.comb(k + r - 1, r) for k, r in vec.items()) for vec in multiplicity_vectors(4)) == 13


def test_seeded_runs_repeat():
    a, ta = sample_uniform_rows(linear(), 12, 500, rng_seed=17)
    b, tb = sample_uniform_rows(linear(), 12, 500, rng_seed=17)
    assert ta == tb and np.array_equal(a, b)
    c, _ = sample_uniform_rows(linear(), 12, 500, rng_seed=18)
    assert not np.array_equal(a, c)


def test_spawned_streams_differ():
    s1, s2 = spawn_seeds(5, 2)
    assert make_rng(s1).integers(0, 2**62) != make_rng(s2).integers(0, 2**62)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as info:
        sample_uniform_rows(constant(), 400, 10, rng_seed=1, max_tries=50)
    assert info.value.tries == 50


def test_v_independence():
    n = 30
    alpha = solve_saddle(constant(), n).alpha_n
    a, _ = sample_uniform_rows(constant(), n, 10_000, rng_seed=31, v=math.exp(-alpha))
    b, _ = sample_uniform_rows(constant(), n, 10_000, rng_seed=32, v=math.exp(-2 * alpha))
    assert stats.ks_2samp(largest_parts(a), largest_parts(b)).pvalue > 0.001


@pytest.mark.parametrize("model", MODELS)
@pytest.mark.parametrize("n", [20, 50])
def test_largest_part_law_every_model(model, n):
    law = empirical_largest_part(model, n, 20_000, rng_seed=100 + n)
    assert law.ks < law.ks_critical(0.99)
    assert sum(law.frequencies.values()) == 20_000


def test_single_sample_ks_bounded():
    law = empirical_largest_part(power(2, 1.3), 10, 1, rng_seed=0)
    assert 0 <= law.ks <= 1 and law.tries_mean >= 1
