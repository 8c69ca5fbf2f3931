"""Markov-chain sampler for Cohen-Lenstra random partitions.

A random partition with distribution P_u is generated column by column:
draw the first conjugate column size from the "infinite" kernel row, then
each successive column size b <= a from the finite row

    K(a, b) = u^b (1/q)_a (u/q)_a / (q^{b^2} (1/q)_{a-b} (1/q)_b (u/q)_b),

stopping when 0 is drawn.  All probabilities are exact rationals and
finite rows sum to exactly 1.  The only approximations anywhere are the
truncation of the infinite first row (unassigned mass below 2^-60) and
the near-exact numeric value of (u/q)_inf (directed partial product,
relative tail below 2^-80 per factor).

Sampling is inverse-CDF against a 64-bit uniform integer interpreted as
the rational r/2^64, using Python's random.Random (Mersenne Twister), so
a seed fully determines the sample stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .partitions import Partition
from .series import Rational, pochhammer_scalar

TAIL_MASS_BOUND = Fraction(1, 2**60)
INFINITE_PRODUCT_REL_TOL = Fraction(1, 2**80)


class KernelDomainError(ValueError):
    """Parameters outside the verified domain of the transition kernel."""


@dataclass(frozen=True)
class KernelRow:
    """One row of the transition kernel.

    ``source`` is the current conjugate column size a, or None for the
    initial "infinite" row.  ``probabilities[b]`` is the transition
    probability to b; a finite row has exactly a+1 entries summing to 1,
    the infinite row is truncated with ``truncated_mass`` folded into its
    last entry.
    """

    source: Optional[int]
    probabilities: tuple[Fraction, ...]
    truncated_mass: Fraction = Fraction(0)

    def cumulative(self) -> tuple[Fraction, ...]:
        total = Fraction(0)
        out = []
        for p in self.probabilities:
            total += p
            out.append(total)
        return tuple(out)


def _validate(q: Fraction, u: Fraction) -> None:
    if q <= 1:
        raise KernelDomainError(f"requires q > 1, got {q}")
    if not 0 < u < 1:
        raise KernelDomainError(f"requires 0 < u < 1, got {u}")


def kernel_row(a: int, q: Rational, u: Rational) -> KernelRow:
    """Exact transition probabilities K(a, b) for b = 0..a.

    Every entry is checked non-negative and the row is checked to sum to
    exactly 1; a violation aborts rather than being clamped.
    """
    if a < 0:
        raise KernelDomainError("a must be non-negative")
    q, u = Fraction(q), Fraction(u)
    _validate(q, u)
    prefactor = pochhammer_scalar(1 / q, a, q) * pochhammer_scalar(u / q, a, q)
    probs = []
    for b in range(a + 1):
        val = (
            u**b
            * prefactor
            / (
                q ** (b * b)
                * pochhammer_scalar(1 / q, a - b, q)
                * pochhammer_scalar(1 / q, b, q)
                * pochhammer_scalar(u / q, b, q)
            )
        )
        if val < 0:
            raise KernelDomainError(
                f"negative kernel entry K({a},{b}) = {val} at q={q}, u={u}"
            )
        probs.append(val)
    if sum(probs) != 1:
        raise KernelDomainError(
            f"kernel row a={a} sums to {sum(probs)} != 1 at q={q}, u={u}"
        )
    return KernelRow(source=a, probabilities=tuple(probs))


def u_over_q_infinite_value(q: Rational, u: Rational) -> Fraction:
    """Near-exact numeric (u/q)_inf = prod_{k>=1}(1 - u/q^k).

    Exact partial product, extended until the relative change per factor
    drops below 2^-80.  Dropped factors are < 1, so the returned value is
    a slight over-estimate (directed truncation).
    """
    q, u = Fraction(q), Fraction(u)
    _validate(q, u)
    result = Fraction(1)
    k = 1
    while True:
        term = u / q**k
        result *= 1 - term
        if term < INFINITE_PRODUCT_REL_TOL:
            return result
        k += 1


def cor1_part1(a: int, q: Rational, u: Rational, uq_inf: Fraction) -> Fraction:
    """Probability that the first conjugate column size equals a.

    (u/q)_inf / (u/q)_a * u^a / (q^{a^2} (1/q)_a); ``uq_inf`` is passed in
    so callers control its truncation.
    """
    q, u = Fraction(q), Fraction(u)
    return (
        uq_inf
        / pochhammer_scalar(u / q, a, q)
        * u**a
        / (q ** (a * a) * pochhammer_scalar(1 / q, a, q))
    )


def cor1_part2(a: int, b: int, q: Rational, u: Rational, uq_inf: Fraction) -> Fraction:
    """Joint probability that (first column size, count of parts equal 1) = (a, b)."""
    if not 0 <= b <= a:
        raise ValueError("requires 0 <= b <= a")
    q, u = Fraction(q), Fraction(u)
    return (
        u ** (2 * a - b)
        * uq_inf
        / (
            q ** (a * a + (a - b) * (a - b))
            * pochhammer_scalar(1 / q, b, q)
            * pochhammer_scalar(1 / q, a - b, q)
            * pochhammer_scalar(u / q, a - b, q)
        )
    )


def kernel_row_infinite(q: Rational, u: Rational) -> KernelRow:
    """Truncated initial row: entries cor1_part1(b) until tail mass < 2^-60.

    The unassigned tail is folded into the last entry so the row sums to
    exactly 1 for inverse-CDF sampling.
    """
    q, u = Fraction(q), Fraction(u)
    _validate(q, u)
    uq_inf = u_over_q_infinite_value(q, u)
    probs: list[Fraction] = []
    total = Fraction(0)
    b = 0
    while True:
        val = cor1_part1(b, q, u, uq_inf)
        if val < 0:
            raise KernelDomainError(f"negative initial-row entry at b={b}")
        probs.append(val)
        total += val
        residual = 1 - total
        if residual < TAIL_MASS_BOUND:
            break
        b += 1
    probs[-1] += residual
    return KernelRow(
        source=None,
        probabilities=tuple(probs),
        truncated_mass=max(residual, Fraction(0)),
    )


@dataclass(frozen=True)
class SamplerConfig:
    q: int
    u: Fraction
    seed: int
    trials: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", Fraction(self.u))
        if not (isinstance(self.q, int) and self.q >= 2):
            raise KernelDomainError("sampling requires integer q >= 2")
        if not 0 < self.u < 1:
            raise KernelDomainError("requires 0 < u < 1")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


class PartitionSampler:
    """Draws partitions from P_u; deterministic given the config seed."""

    def __init__(self, cfg: SamplerConfig) -> None:
        self.cfg = cfg
        self._rng = random.Random(cfg.seed)
        self._initial_cdf = kernel_row_infinite(cfg.q, cfg.u).cumulative()
        self._row_cdfs: dict[int, tuple[Fraction, ...]] = {}

    def _row_cdf(self, a: int) -> tuple[Fraction, ...]:
        if a not in self._row_cdfs:
            self._row_cdfs[a] = kernel_row(a, self.cfg.q, self.cfg.u).cumulative()
        return self._row_cdfs[a]

    def _draw(self, cdf: tuple[Fraction, ...]) -> int:
        r = Fraction(self._rng.getrandbits(64), 2**64)
        for b, cum in enumerate(cdf):
            if r < cum:
                return b
        return len(cdf) - 1

    def sample(self) -> Partition:
        cols = []
        a = self._draw(self._initial_cdf)
        while a > 0:
            cols.append(a)
            a = self._draw(self._row_cdf(a))
        if not cols:
            return Partition()
        return Partition(tuple(cols)).conjugate()

    def sample_many(self, count: int) -> list[Partition]:
        return [self.sample() for _ in range(count)]


@dataclass
class BucketComparison:
    """Empirical vs exact probability for one observed bucket."""

    label: str
    exact: Fraction
    observed: int
    trials: int
    stderr: float = field(init=False)
    zscore: float = field(init=False)

    def __post_init__(self) -> None:
        pexact = float(self.exact)
        freq = self.observed / self.trials
        self.stderr = (pexact * (1 - pexact) / self.trials) ** 0.5
        self.zscore = abs(freq - pexact) / self.stderr if self.stderr > 0 else 0.0


@dataclass
class SamplerComparison:
    """Monte Carlo comparison of sampled statistics against exact values."""

    config: SamplerConfig
    marginal: list[BucketComparison]  # law of the first column size
    joint: list[BucketComparison]  # joint law of (first column size, m_1)
    max_zscore: float
    threshold: float
    passed: bool


def empirical_vs_corollary(
    cfg: SamplerConfig,
    z_threshold: float = 4.0,
    min_probability: Fraction = Fraction(1, 1000),
) -> SamplerComparison:
    """Samples cfg.trials partitions and compares bucket frequencies.

    Buckets are pairs (a, b) = (first conjugate column size, number of
    parts equal to 1) plus the marginal over a.  Buckets with exact
    probability below *min_probability* are reported but not gated on.
    """
    sampler = PartitionSampler(cfg)
    marg_counts: dict[int, int] = {}
    joint_counts: dict[tuple[int, int], int] = {}
    for _ in range(cfg.trials):
        lam = sampler.sample()
        a = lam.length
        b = lam.multiplicity(1)
        marg_counts[a] = marg_counts.get(a, 0) + 1
        joint_counts[(a, b)] = joint_counts.get((a, b), 0) + 1

    uq_inf = u_over_q_infinite_value(cfg.q, cfg.u)
    a_max = max(marg_counts)
    marginal = []
    joint = []
    gated: list[float] = []
    for a in range(a_max + 1):
        exact = cor1_part1(a, cfg.q, cfg.u, uq_inf)
        cmp = BucketComparison(
            label=f"a={a}",
            exact=exact,
            observed=marg_counts.get(a, 0),
            trials=cfg.trials,
        )
        marginal.append(cmp)
        if exact >= min_probability:
            gated.append(cmp.zscore)
        for b in range(a + 1):
            exact_ab = cor1_part2(a, b, cfg.q, cfg.u, uq_inf)
            cmp_ab = BucketComparison(
                label=f"a={a},b={b}",
                exact=exact_ab,
                observed=joint_counts.get((a, b), 0),
                trials=cfg.trials,
            )
            joint.append(cmp_ab)
            if exact_ab >= min_probability:
                gated.append(cmp_ab.zscore)
    max_z = max(gated) if gated else 0.0
    return SamplerComparison(
        config=cfg,
        marginal=marginal,
        joint=joint,
        max_zscore=max_z,
        threshold=z_threshold,
        passed=max_z <= z_threshold,
    )
