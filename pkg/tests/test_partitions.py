import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from edgegap.errors import DomainError
from edgegap.partitions import (
    Partition,
    c_at_identity,
    d_prime,
    gen_pochhammer,
    h_norm,
    iter_partitions,
)


def brute_partitions(n, k):
    """All partitions of n with at most k parts via integer compositions."""
    out = set()

    def rec(rem, parts):
        if rem == 0:
            out.add(tuple(sorted(parts, reverse=True)))
            return
        if len(parts) == k:
            return
        for p in range(1, rem + 1):
            rec(rem - p, parts + [p])

    rec(n, [])
    return out


def arm_leg_table(parts):
    """Independent arm/leg computation from the diagram as a set of cells."""
    cells = {(i, j) for i, r in enumerate(parts) for j in range(r)}
    table = []
    for i, j in sorted(cells):
        arm = sum(1 for jj in range(j + 1, 100) if (i, jj) in cells)
        leg = sum(1 for ii in range(i + 1, 100) if (ii, j) in cells)
        table.append((arm, leg))
    return table


def schur_at_ones(parts, n):
    """Principal specialization s_kappa(1^n) by the hook-content formula."""
    val = Fraction(1)
    for (i, j), (arm, leg) in zip(
        sorted((i, j) for i, r in enumerate(parts) for j in range(r)), arm_leg_table(parts)
    ):
        val *= Fraction(n + j - i, arm + leg + 1)
    return val


small_partitions = st.integers(0, 6).flatmap(
    lambda w: st.sampled_from(list(iter_partitions(w, w or 1)))
)
alphas = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3, 7)])


class TestPartitionType:
    def test_rejects_increasing(self):
        with pytest.raises(DomainError):
            Partition((1, 2))

    def test_rejects_zero_part(self):
        with pytest.raises(DomainError):
            Partition((2, 0))

    def test_of_drops_trailing_zeros(self):
        assert Partition.of(3, 1, 0, 0) == Partition((3, 1))

    def test_weight_length(self):
        k = Partition.of(4, 2, 2, 1)
        assert k.weight() == 9 and k.length() == 4

    def test_conjugate(self):
        assert Partition.of(4, 2, 1).conjugate() == Partition.of(3, 2, 1, 1)

    @given(small_partitions)
    def test_conjugate_involution(self, k):
        assert k.conjugate().conjugate() == k


class TestIterPartitions:
    def test_weight_zero(self):
        assert list(iter_partitions(0, 5)) == [Partition()]

    def test_three_two(self):
        assert list(iter_partitions(3, 2)) == [Partition.of(3), Partition.of(2, 1)]

    def test_eight_four_count(self):
        assert len(list(iter_partitions(8, 4))) == 15 == len(brute_partitions(8, 4))

    @given(st.integers(0, 10), st.integers(1, 6))
    def test_matches_brute_force(self, n, k):
        got = [p.parts for p in iter_partitions(n, k)]
        assert len(got) == len(set(got))
        assert set(got) == brute_partitions(n, k)
        assert got == sorted(got, reverse=True)


class TestBoxProducts:
    def test_empty(self):
        assert d_prime(Partition(), 2) == 1 and h_norm(Partition(), 2) == 1

    def test_single_box(self):
        assert d_prime([1], Fraction(3, 2)) == Fraction(3, 2)
        assert h_norm([1], Fraction(3, 2)) == 1

    def test_h_two_alpha_two(self):
        assert h_norm([2], 2) == 3

    def test_d_prime_21_against_arm_leg_table(self):
        expected = math.prod(1 * (a + 1) + l for a, l in arm_leg_table((2, 1)))
        assert d_prime([2, 1], 1) == expected == 3

    @given(small_partitions)
    def test_d_prime_equals_h_at_alpha_one(self, k):
        assert d_prime(k, Fraction(1)) == h_norm(k, Fraction(1))

    @given(small_partitions)
    def test_doubling_identities(self, k):
        lhs2 = h_norm(k, Fraction(2)) * d_prime(k, Fraction(2))
        assert lhs2 == d_prime(k.doubled(), Fraction(1))
        lhs_half = 2 ** (2 * k.weight()) * h_norm(k, Fraction(1, 2)) * d_prime(k, Fraction(1, 2))
        assert lhs_half == d_prime(k.repeated(), Fraction(1))

    def test_float_log_space_matches_exact(self):
        k = Partition.of(12, 10, 9, 8, 5)
        assert d_prime(k, 0.5) == pytest.approx(float(d_prime(k, Fraction(1, 2))), rel=1e-12)


class TestPochhammer:
    def test_empty_and_single(self):
        assert gen_pochhammer(Fraction(7, 3), [], 2) == 1
        assert gen_pochhammer(Fraction(7, 3), [1], 2) == Fraction(7, 3)

    @given(st.fractions(-5, 5), alphas)
    def test_column_of_two(self, u, alpha):
        assert gen_pochhammer(u, [1, 1], alpha) == u * (u - 1 / alpha)

    @given(small_partitions, alphas)
    def test_polynomial_degree(self, k, alpha):
        """The (|k|+1)-th finite difference in u vanishes and the |k|-th is |k|!."""
        w = k.weight()
        vals = [gen_pochhammer(Fraction(u), k, alpha) for u in range(w + 2)]
        for _ in range(w):
            vals = [b - a for a, b in zip(vals, vals[1:])]
        assert vals[0] == math.factorial(w)
        assert vals[1] - vals[0] == 0

    def test_defined_at_poles_of_gamma_form(self):
        assert gen_pochhammer(-2, [3], 1) == 0
        assert gen_pochhammer(-2.0, [2], 1.0) == 2.0


class TestCAtIdentity:
    def test_empty(self):
        assert c_at_identity([], 2, 3) == 1

    @given(alphas, st.integers(1, 6))
    def test_single_box(self, alpha, n):
        assert c_at_identity([1], alpha, n) == n

    def test_too_many_parts(self):
        assert c_at_identity([1, 1, 1], 1, 2) == 0

    def test_21_schur_oracle(self):
        k = Partition.of(2, 1)
        expected = Fraction(math.factorial(3), d_prime(k, 1)) * schur_at_ones((2, 1), 3)
        assert c_at_identity(k, Fraction(1), 3) == expected == 16

    @given(small_partitions, st.integers(1, 4))
    def test_alpha_one_schur_oracle(self, k, n):
        expected = (
            Fraction(math.factorial(k.weight()), d_prime(k, 1)) * schur_at_ones(k.parts, n)
            if k.length() <= n
            else 0
        )
        assert c_at_identity(k, Fraction(1), n) == expected

    @given(small_partitions, alphas, st.integers(1, 5))
    def test_positive(self, k, alpha, n):
        if k.length() <= n:
            assert c_at_identity(k, alpha, n) > 0

    @given(st.integers(1, 7), alphas, st.integers(1, 4))
    def test_sum_over_level_is_power(self, w, alpha, n):
        """C's are normalized so their sum over |k| = w is (trace)^w = n^w."""
        assert sum(c_at_identity(k, alpha, n) for k in iter_partitions(w, n)) == n**w

    def test_float_large_weight_matches_exact(self):
        k = Partition.of(20, 15, 10)
        assert c_at_identity(k, 2.0, 4) == pytest.approx(float(c_at_identity(k, Fraction(2), 4)), rel=1e-11)
