"""Tests for partition statistics, automorphism orders, and partition sums."""

import math
from fractions import Fraction
from functools import lru_cache

import pytest

from clpartitions.partitions import (
    Partition,
    aut_order,
    aut_order_qpower,
    cl_weight,
    eq1_middle_series,
    eq2_middle_series,
    partitions_of,
    product_over_irreducibles_series,
    unnormalized_weight_series,
)
from clpartitions.series import geometric_series, gl_order, pochhammer_infinite_u_over_q


@lru_cache(maxsize=None)
def _count_partitions(n, max_part):
    """Independent recursive counter, kept separate from the enumerator."""
    if n == 0:
        return 1
    return sum(
        _count_partitions(n - k, k) for k in range(1, min(n, max_part) + 1)
    )


class TestPartitionType:
    def test_rejects_bad_parts(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))

    def test_conjugate_examples(self):
        assert Partition().conjugate() == Partition()
        assert Partition((3,)).conjugate() == Partition((1, 1, 1))
        assert Partition((2, 1)).conjugate() == Partition((2, 1))

    def test_multiplicity_examples(self):
        assert Partition((2, 1, 1)).multiplicity(1) == 2
        assert Partition((2, 1)).multiplicity(3) == 0
        assert Partition((2, 2, 1)).multiplicity(2) == 2

    @pytest.mark.parametrize("n", range(13))
    def test_conjugate_involution(self, n):
        for lam in partitions_of(n):
            assert lam.conjugate().conjugate() == lam

    @pytest.mark.parametrize("n", range(11))
    def test_size_identities(self, n):
        for lam in partitions_of(n):
            top = lam.parts[0] if lam.parts else 0
            assert sum(i * lam.multiplicity(i) for i in range(1, top + 1)) == n
            assert sum(lam.conjugate().parts) == n
            assert lam.conjugate_part(1) == lam.length
            for i in range(1, top + 2):
                assert lam.multiplicity(i) == (
                    lam.conjugate_part(i) - lam.conjugate_part(i + 1)
                )


class TestEnumeration:
    def test_zero(self):
        assert partitions_of(0) == (Partition(),)

    @pytest.mark.parametrize("n,count", [(4, 5), (8, 22)])
    def test_counts_vs_recursive_counter(self, n, count):
        assert _count_partitions(n, n) == count
        assert len(partitions_of(n)) == count

    def test_reverse_lex_order(self):
        got = [lam.parts for lam in partitions_of(4)]
        assert got == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]

    @pytest.mark.parametrize("n", range(1, 10))
    def test_no_duplicates(self, n):
        lams = partitions_of(n)
        assert len(set(lams)) == len(lams) == _count_partitions(n, n)


class TestAutOrder:
    def test_empty(self):
        assert aut_order(Partition(), 2) == 1

    def test_two_ones_matches_gl(self):
        # type (1,1) at q=2 is an elementary abelian group; its automorphism
        # group is GL(2, F_2)
        assert aut_order(Partition((1, 1)), 2) == 6 == gl_order(2, 2)

    def test_cyclic_four(self):
        # automorphisms of a cyclic group of order 4 = multiplication by a
        # unit residue; count them directly
        units = [k for k in range(1, 4) if math.gcd(k, 4) == 1]
        assert aut_order(Partition((2,)), 2) == len(units) == 2

    @pytest.mark.parametrize("q", [2, 3])
    @pytest.mark.parametrize("n", range(11))
    def test_integral_at_integer_q(self, n, q):
        for lam in partitions_of(n):
            val = aut_order(lam, q)
            assert val > 0 and val.denominator == 1

    def test_qpower_reduces_to_plain(self):
        lam = Partition((2, 1))
        assert aut_order_qpower(lam, 2, 1) == aut_order(lam, 2)

    def test_qpower_values(self):
        assert aut_order_qpower(Partition((1,)), 2, 2) == 3  # q^d - 1
        assert aut_order_qpower(Partition((1, 1)), 2, 2) == 180 == gl_order(2, 4)


class TestClWeight:
    def test_examples(self):
        u, q = Fraction(1, 2), 2
        assert cl_weight(Partition(), u, q) == 1
        assert cl_weight(Partition((1,)), u, q) == Fraction(1, 2)
        assert cl_weight(Partition((1, 1)), u, q) == Fraction(1, 24)

    def test_rejects_bad_u(self):
        with pytest.raises(ValueError):
            cl_weight(Partition(), Fraction(3, 2), 2)

    @pytest.mark.parametrize("q", [Fraction(2), Fraction(3), Fraction(5, 2)])
    def test_total_mass(self, q):
        # summed weights match 1/(u/q)_inf coefficientwise: P_u is a
        # probability measure
        got = unnormalized_weight_series(q, 8)
        assert got == pochhammer_infinite_u_over_q(q, 8).inverse()


class TestMiddleSeries:
    def test_eq1_leading(self):
        s = eq1_middle_series(2, 4)
        assert s.coeffs[0] == 1
        assert s.coeffs[1] == 3
        assert s.coeffs[2] == Fraction(20, 3)

    def test_eq2_leading(self):
        s = eq2_middle_series(2, 4)
        assert s.coeffs[0] == 1
        assert s.coeffs[1] == 1
        assert s.coeffs[2] == Fraction(5, 3)


class TestProductOverIrreducibles:
    def test_constant_term(self):
        assert product_over_irreducibles_series(2, 0).coeffs[0] == 1

    @pytest.mark.parametrize("q", [2, 3])
    def test_equals_geometric(self, q):
        assert product_over_irreducibles_series(q, 6) == geometric_series(6)

    def test_rejects_rational_q(self):
        with pytest.raises(ValueError):
            product_over_irreducibles_series(Fraction(5, 2), 4)
