"""Integer partitions, automorphism orders, and partition-sum series.

A partition is stored as a weakly decreasing tuple of positive integers.
The automorphism order here is that of a finite abelian q-group of type
lambda,

    |Aut(lambda)| = q^{sum_i (lambda'_i)^2} * prod_i (1/q)_{m_i(lambda)},

evaluated exactly at any rational q > 1 (the identities checked downstream
are rational-function identities in q, so non-prime-power q is allowed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .series import (
    PowerSeries,
    Rational,
    geometric_series,
    irreducible_count,
    pochhammer_scalar,
)


@dataclass(frozen=True, order=True)
class Partition:
    """Weakly decreasing sequence of positive integers; may be empty."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        for i, p in enumerate(self.parts):
            if p <= 0:
                raise ValueError(f"parts must be positive, got {p}")
            if i and self.parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts, l(lambda) = lambda'_1."""
        return len(self.parts)

    def conjugate(self) -> "Partition":
        """Column sizes of the diagram."""
        if not self.parts:
            return Partition()
        cols = tuple(
            sum(1 for p in self.parts if p >= i) for i in range(1, self.parts[0] + 1)
        )
        return Partition(cols)

    def conjugate_part(self, i: int) -> int:
        """lambda'_i = number of parts >= i (0 for i beyond the largest part)."""
        if i < 1:
            raise ValueError("index must be >= 1")
        return sum(1 for p in self.parts if p >= i)

    def multiplicity(self, i: int) -> int:
        """m_i(lambda) = number of parts equal to i."""
        if i < 1:
            raise ValueError("part size must be >= 1")
        return sum(1 for p in self.parts if p == i)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def _partitions_rec(n: int, max_part: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions_rec(n - first, first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n, in reverse-lexicographic order of parts."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return tuple(Partition(p) for p in _partitions_rec(n, n))


def aut_order(p: Partition, q: Rational) -> Fraction:
    """|Aut(lambda)| at evaluation point q."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("requires q > 1")
    if not p.parts:
        return Fraction(1)
    conj = p.conjugate().parts
    exponent = sum(c * c for c in conj)
    result = q**exponent
    for i in range(1, p.parts[0] + 1):
        m = p.multiplicity(i)
        if m:
            result *= pochhammer_scalar(1 / q, m, q)
    return result


def aut_order_qpower(p: Partition, q: Rational, d: int) -> Fraction:
    """|Aut(lambda)| with q replaced by q^d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return aut_order(p, Fraction(q) ** d)


def cl_weight(p: Partition, u: Rational, q: Rational) -> Fraction:
    """Unnormalized Cohen-Lenstra weight u^{|lambda|} / |Aut(lambda)|.

    The normalizing constant (u/q)_inf is applied by callers; the partition
    sums below use the raw weight directly.
    """
    u = Fraction(u)
    if not 0 < u < 1:
        raise ValueError("requires 0 < u < 1")
    return u**p.size / aut_order(p, q)


def _raw_weight(p: Partition, q: Fraction) -> Fraction:
    """1 / |Aut(lambda)|; the u^{|lambda|} factor is tracked by series degree."""
    return 1 / aut_order(p, q)


def eq1_middle_series(q: Rational, order: int) -> PowerSeries:
    """(1/(1-u)) * sum_lambda q^{(lambda'_1)^2} u^{|lambda|} / |Aut(lambda)|.

    A partition of size s contributes only to the u^s coefficient, so
    enumerating sizes 0..order is exact.
    """
    q = Fraction(q)
    if q <= 1:
        raise ValueError("requires q > 1")
    cs = [Fraction(0)] * (order + 1)
    for s in range(order + 1):
        for lam in partitions_of(s):
            cs[s] += q ** (lam.length**2) * _raw_weight(lam, q)
    return PowerSeries(tuple(cs)) * geometric_series(order)


def eq2_middle_series(q: Rational, order: int) -> PowerSeries:
    """sum_lambda u^{|lambda|} / |Aut(lambda)| * q^{(lambda'_1)^2 - m_1(lambda)}."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("requires q > 1")
    cs = [Fraction(0)] * (order + 1)
    for s in range(order + 1):
        for lam in partitions_of(s):
            exponent = lam.length**2 - lam.multiplicity(1)
            cs[s] += q**exponent * _raw_weight(lam, q)
    return PowerSeries(tuple(cs))


def unnormalized_weight_series(q: Rational, order: int) -> PowerSeries:
    """sum_lambda u^{|lambda|} / |Aut(lambda)| truncated at *order*.

    Equals 1/(u/q)_inf coefficientwise; this is the statement that the
    Cohen-Lenstra measure P_u has total mass 1.
    """
    q = Fraction(q)
    if q <= 1:
        raise ValueError("requires q > 1")
    cs = [Fraction(0)] * (order + 1)
    for s in range(order + 1):
        for lam in partitions_of(s):
            cs[s] += _raw_weight(lam, q)
    return PowerSeries(tuple(cs))


def product_over_irreducibles_series(q: int, order: int) -> PowerSeries:
    """The centralizer product over monic irreducibles phi != z.

    prod_{phi != z} sum_lambda u^{d(phi)|lambda|} / |Aut(lambda)|_{q -> q^{d(phi)}}

    The inner series depends only on d(phi), so degree-d irreducibles are
    grouped and the inner factor raised to the power irreducible_count(d, q)
    (minus 1 at d = 1, excluding the single polynomial z).  The resulting
    series equals 1/(1-u) identically.
    """
    if not isinstance(q, int) or q < 2:
        raise ValueError("requires integer q >= 2")
    if order < 0:
        raise ValueError("order must be >= 0")
    result = PowerSeries.one(order)
    for d in range(1, order + 1):
        count = irreducible_count(d, q)
        if d == 1:
            count -= 1  # exclude phi = z
        if count == 0:
            continue
        qd = Fraction(q) ** d
        cs = [Fraction(0)] * (order + 1)
        for s in range(order // d + 1):
            for lam in partitions_of(s):
                cs[d * s] += 1 / aut_order(lam, qd)
        result = result * PowerSeries(tuple(cs)) ** count
    return result
