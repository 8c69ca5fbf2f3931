"""Tests for the exact Markov-kernel partition sampler."""

from fractions import Fraction

import pytest

from clpartitions.partitions import Partition, aut_order, partitions_of
from clpartitions.sampler import (
    TAIL_MASS_BOUND,
    KernelDomainError,
    PartitionSampler,
    SamplerConfig,
    cor1_part1,
    cor1_part2,
    empirical_vs_corollary,
    kernel_row,
    kernel_row_infinite,
    u_over_q_infinite_value,
)

U_HALF = Fraction(1, 2)


class TestKernelRow:
    def test_trivial_row(self):
        row = kernel_row(0, 2, U_HALF)
        assert row.probabilities == (Fraction(1),)

    def test_small_row_values(self):
        row = kernel_row(1, 2, U_HALF)
        assert row.probabilities == (Fraction(3, 4), Fraction(1, 4))

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("u", [Fraction(1, 2), Fraction(1, 3), Fraction(9, 10)])
    @pytest.mark.parametrize("a", range(13))
    def test_rows_stochastic(self, a, q, u):
        row = kernel_row(a, q, u)
        assert len(row.probabilities) == a + 1
        assert all(p >= 0 for p in row.probabilities)
        assert sum(row.probabilities) == 1

    def test_rejects_bad_parameters(self):
        with pytest.raises(KernelDomainError):
            kernel_row(2, 2, Fraction(3, 2))
        with pytest.raises(KernelDomainError):
            kernel_row(2, Fraction(1, 2), U_HALF)
        with pytest.raises(KernelDomainError):
            kernel_row(-1, 2, U_HALF)


class TestInfiniteRow:
    def test_first_entry_is_empty_partition_probability(self):
        row = kernel_row_infinite(2, U_HALF)
        assert row.probabilities[0] == u_over_q_infinite_value(2, U_HALF)

    def test_partial_sums_monotone(self):
        row = kernel_row_infinite(2, U_HALF)
        cdf = row.cumulative()
        assert all(b < c for b, c in zip(cdf, cdf[1:]))
        assert cdf[-1] == 1  # residual folded into the last entry

    def test_tail_mass_bound(self):
        for q, u in [(2, U_HALF), (3, Fraction(9, 10))]:
            assert kernel_row_infinite(q, u).truncated_mass < TAIL_MASS_BOUND


class TestCorollaryValues:
    def test_joint_at_origin(self):
        uq_inf = u_over_q_infinite_value(2, U_HALF)
        assert cor1_part2(0, 0, 2, U_HALF, uq_inf) == uq_inf

    @pytest.mark.parametrize("q,u", [(2, U_HALF), (3, Fraction(1, 3))])
    def test_joint_sums_to_marginal(self, q, u):
        uq_inf = u_over_q_infinite_value(q, u)
        for a in range(11):
            total = sum(cor1_part2(a, b, q, u, uq_inf) for b in range(a + 1))
            assert total == cor1_part1(a, q, u, uq_inf)

    def test_marginals_nearly_sum_to_one(self):
        uq_inf = u_over_q_infinite_value(2, U_HALF)
        total = sum(cor1_part1(a, 2, U_HALF, uq_inf) for a in range(15))
        assert abs(1 - total) < Fraction(1, 2**60)


class TestSampling:
    def test_determinism(self):
        cfg = SamplerConfig(q=2, u=U_HALF, seed=42, trials=1)
        first = PartitionSampler(cfg).sample_many(200)
        second = PartitionSampler(cfg).sample_many(200)
        assert first == second

    def test_different_seeds_differ(self):
        a = PartitionSampler(SamplerConfig(q=2, u=U_HALF, seed=1, trials=1))
        b = PartitionSampler(SamplerConfig(q=2, u=U_HALF, seed=2, trials=1))
        assert a.sample_many(100) != b.sample_many(100)

    def test_samples_are_partitions(self):
        sampler = PartitionSampler(SamplerConfig(q=2, u=U_HALF, seed=3, trials=1))
        for lam in sampler.sample_many(500):
            assert isinstance(lam, Partition)  # validity enforced on build

    def test_config_validation(self):
        with pytest.raises(KernelDomainError):
            SamplerConfig(q=1, u=U_HALF, seed=0, trials=1)
        with pytest.raises(KernelDomainError):
            SamplerConfig(q=2, u=Fraction(2), seed=0, trials=1)
        with pytest.raises(ValueError):
            SamplerConfig(q=2, u=U_HALF, seed=0, trials=0)


@pytest.fixture(scope="module")
def big_run():
    cfg = SamplerConfig(q=2, u=U_HALF, seed=1, trials=100_000)
    sampler = PartitionSampler(cfg)
    return cfg, sampler.sample_many(cfg.trials)


class TestDistribution:
    def test_corollary_agreement(self):
        cfg = SamplerConfig(q=2, u=U_HALF, seed=1, trials=100_000)
        comparison = empirical_vs_corollary(cfg)
        assert comparison.passed, f"max z-score {comparison.max_zscore}"
        assert comparison.max_zscore <= 4.0

    def test_direct_measure_cross_check(self, big_run):
        # every partition of size <= 4: empirical frequency within 4 standard
        # errors of P_u(lambda) = (u/q)_inf * u^|lambda| / |Aut(lambda)|
        cfg, samples = big_run
        uq_inf = u_over_q_infinite_value(cfg.q, cfg.u)
        counts: dict[Partition, int] = {}
        for lam in samples:
            counts[lam] = counts.get(lam, 0) + 1
        for n in range(5):
            for lam in partitions_of(n):
                exact = float(
                    uq_inf * cfg.u**lam.size / aut_order(lam, cfg.q)
                )
                freq = counts.get(lam, 0) / cfg.trials
                stderr = (exact * (1 - exact) / cfg.trials) ** 0.5
                assert abs(freq - exact) <= 4 * stderr, (
                    f"{lam}: freq {freq}, exact {exact}"
                )
