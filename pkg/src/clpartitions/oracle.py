"""Brute-force ground truth over prime fields F_p.

Everything in this module is deliberately naive: counts are obtained by
enumerating matrices (lexicographically over row-major entry vectors) and
solving linear systems by Gaussian elimination mod p.  These counts are
the independent oracle against which the q-series and partition-sum
computations are checked, so no closed-form shortcuts are taken here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .partitions import Partition

DEFAULT_OUTER_BUDGET = 2**26
DEFAULT_INNER_BUDGET = 2**30

_SMALL_PRIMES = {2, 3, 5}


class BudgetExceededError(RuntimeError):
    """Enumeration would exceed the configured budget."""

    def __init__(self, message: str, required: int, budget: int) -> None:
        super().__init__(f"{message}: needs {required}, budget {budget}")
        self.required = required
        self.budget = budget


def _check_prime(p: int) -> None:
    if p not in _SMALL_PRIMES:
        raise ValueError(f"p must be a small prime (one of {sorted(_SMALL_PRIMES)})")


@dataclass(frozen=True)
class PrimeFieldMatrix:
    """n x n matrix over F_p, entries row-major in [0, p)."""

    n: int
    p: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_prime(self.p)
        if self.n < 0:
            raise ValueError("dimension must be non-negative")
        if len(self.entries) != self.n * self.n:
            raise ValueError("entry count must be n^2")
        if any(not 0 <= e < self.p for e in self.entries):
            raise ValueError("entries must be reduced mod p")

    @staticmethod
    def zero(n: int, p: int) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(n, p, (0,) * (n * n))

    @staticmethod
    def identity(n: int, p: int) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(
            n, p, tuple(1 if i == j else 0 for i in range(n) for j in range(n))
        )

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.n + j]

    def __matmul__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("dimension/modulus mismatch")
        n, p = self.n, self.p
        a, b = self.entries, other.entries
        out = [0] * (n * n)
        for i in range(n):
            row = a[i * n : (i + 1) * n]
            for j in range(n):
                out[i * n + j] = sum(row[k] * b[k * n + j] for k in range(n)) % p
        return PrimeFieldMatrix(n, p, tuple(out))

    def power(self, k: int) -> "PrimeFieldMatrix":
        result = PrimeFieldMatrix.identity(self.n, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def is_nilpotent(self) -> bool:
        """A^n = 0 (Cayley-Hamilton bound)."""
        return self.n == 0 or self.power(self.n).is_zero()


@dataclass(frozen=True)
class JordanZeroData:
    """Eigenvalue-0 Jordan statistics extracted from ranks of powers."""

    m: int  # number of Jordan blocks with eigenvalue 0
    d: int  # number of those blocks of size 1
    nilpotent_type: Optional[Partition]  # full type, only when A is nilpotent


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of a matrix over F_p by Gaussian elimination (destructive)."""
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def nullspace_mod_p(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right nullspace of a matrix over F_p (destructive)."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p for x, y in zip(rows[r], prow)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-rows[r][fc]) % p
        basis.append(vec)
    return basis


def rank(A: PrimeFieldMatrix) -> int:
    n = A.n
    rows = [list(A.entries[i * n : (i + 1) * n]) for i in range(n)]
    return rank_mod_p(rows, A.p)


def _annihilator_system(A: PrimeFieldMatrix) -> list[list[int]]:
    """Matrix of the linear map B -> (AB, BA) on vec(B), row-major vec.

    2n^2 rows (one per entry of AB then BA), n^2 columns.
    """
    n, p = A.n, A.p
    rows = []
    # (AB)_{ij} = sum_k A_{ik} B_{kj}
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = A.entry(i, k) % p
            rows.append(row)
    # (BA)_{ij} = sum_k B_{ik} A_{kj}
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[i * n + k] = A.entry(k, j) % p
            rows.append(row)
    return rows


def annihilator_dimension(A: PrimeFieldMatrix) -> int:
    """F_p-dimension of {B : AB = BA = 0}."""
    n = A.n
    if n == 0:
        return 0
    return n * n - rank_mod_p(_annihilator_system(A), A.p)


def annihilator_basis(A: PrimeFieldMatrix) -> list[tuple[int, ...]]:
    """Basis (as row-major entry vectors) of {B : AB = BA = 0}."""
    if A.n == 0:
        return []
    return [tuple(v) for v in nullspace_mod_p(_annihilator_system(A), A.p)]


def jordan_zero_data(A: PrimeFieldMatrix) -> JordanZeroData:
    """m, d, and (for nilpotent A) the full Jordan type, via ranks of powers.

    The conjugate column sizes of the eigenvalue-0 type are
    lambda'_i = rank(A^{i-1}) - rank(A^i), which stabilize to 0 once the
    rank sequence does.
    """
    n = A.n
    ranks = [n]
    power = PrimeFieldMatrix.identity(n, A.p)
    for _ in range(n):
        power = power @ A
        ranks.append(rank(power))
        if ranks[-1] == ranks[-2]:
            break
    cols = []
    for i in range(1, len(ranks)):
        diff = ranks[i - 1] - ranks[i]
        if diff == 0:
            break
        cols.append(diff)
    m = n - ranks[1] if n else 0
    d = (cols[0] - cols[1]) if len(cols) >= 2 else (cols[0] if cols else 0)
    nil_type = None
    if A.is_nilpotent():
        nil_type = Partition(tuple(cols)).conjugate() if cols else Partition()
    return JordanZeroData(m=m, d=d, nilpotent_type=nil_type)


def enumerate_matrices(n: int, p: int) -> Iterator[PrimeFieldMatrix]:
    """All of Mat_n(F_p), lexicographic over row-major entry vectors."""
    _check_prime(p)
    for entries in itertools.product(range(p), repeat=n * n):
        yield PrimeFieldMatrix(n, p, entries)


def _check_outer_budget(n: int, p: int, budget: int) -> None:
    required = p ** (n * n)
    if required > budget:
        raise BudgetExceededError("outer enumeration too large", required, budget)


def count_pairs(n: int, p: int, budget: int = DEFAULT_OUTER_BUDGET) -> int:
    """|{A, B in Mat_n(F_p) : AB = BA = 0}|.

    Sums p^{annihilator_dimension(A)} over all A; the inner B-count is the
    size of a linear solution space, so no inner enumeration is needed.
    """
    _check_prime(p)
    if n == 0:
        return 1
    _check_outer_budget(n, p, budget)
    return sum(p ** annihilator_dimension(A) for A in enumerate_matrices(n, p))


def count_nilpotent_pairs(
    n: int,
    p: int,
    budget: int = DEFAULT_OUTER_BUDGET,
    inner_budget: int = DEFAULT_INNER_BUDGET,
) -> int:
    """|{A, B in Nil_n(F_p) : AB = BA = 0}|.

    For each nilpotent A, enumerates the solution space of AB = BA = 0 from
    a nullspace basis and counts the nilpotent members, so the count is
    independent of any closed form for that quantity.
    """
    _check_prime(p)
    if n == 0:
        return 1
    _check_outer_budget(n, p, budget)
    total = 0
    inner_used = 0
    for A in enumerate_matrices(n, p):
        if not A.is_nilpotent():
            continue
        basis = annihilator_basis(A)
        dim = len(basis)
        inner_used += p**dim
        if inner_used > inner_budget:
            raise BudgetExceededError(
                "inner solution-space enumeration too large", inner_used, inner_budget
            )
        for coords in itertools.product(range(p), repeat=dim):
            entries = [0] * (n * n)
            for c, vec in zip(coords, basis):
                if c:
                    for idx, v in enumerate(vec):
                        if v:
                            entries[idx] = (entries[idx] + c * v) % p
            B = PrimeFieldMatrix(n, p, tuple(entries))
            if B.is_nilpotent():
                total += 1
    return total


def count_nilpotent_by_type(
    n: int, p: int, budget: int = DEFAULT_OUTER_BUDGET
) -> dict[Partition, int]:
    """Counts of nilpotent matrices in Mat_n(F_p) by Jordan type."""
    _check_prime(p)
    if n == 0:
        return {Partition(): 1}
    _check_outer_budget(n, p, budget)
    counts: dict[Partition, int] = {}
    for A in enumerate_matrices(n, p):
        if A.is_nilpotent():
            lam = jordan_zero_data(A).nilpotent_type
            assert lam is not None
            counts[lam] = counts.get(lam, 0) + 1
    return counts


def find_lemma2_counterexample(
    n: int, p: int, budget: int = DEFAULT_OUTER_BUDGET
) -> Optional[tuple[PrimeFieldMatrix, int, int]]:
    """First A (if any) with annihilator_dimension(A) != (n - rank(A))^2.

    Returns (A, computed dimension, expected m^2) or None on a clean pass.
    """
    _check_prime(p)
    _check_outer_budget(n, p, budget)
    for A in enumerate_matrices(n, p):
        m = n - rank(A)
        dim = annihilator_dimension(A)
        if dim != m * m:
            return (A, dim, m * m)
    return None


def find_lemma3_counterexample(
    n: int,
    p: int,
    budget: int = DEFAULT_OUTER_BUDGET,
    inner_budget: int = DEFAULT_INNER_BUDGET,
) -> Optional[tuple[PrimeFieldMatrix, int, int]]:
    """First nilpotent A whose nilpotent-annihilator count is not p^{m^2 - d}.

    Returns (A, enumerated count, expected count) or None on a clean pass.
    """
    _check_prime(p)
    _check_outer_budget(n, p, budget)
    inner_used = 0
    for A in enumerate_matrices(n, p):
        if not A.is_nilpotent():
            continue
        data = jordan_zero_data(A)
        basis = annihilator_basis(A)
        dim = len(basis)
        inner_used += p**dim
        if inner_used > inner_budget:
            raise BudgetExceededError(
                "inner solution-space enumeration too large", inner_used, inner_budget
            )
        found = 0
        for coords in itertools.product(range(p), repeat=dim):
            entries = [0] * (n * n)
            for c, vec in zip(coords, basis):
                if c:
                    for idx, v in enumerate(vec):
                        if v:
                            entries[idx] = (entries[idx] + c * v) % p
            if PrimeFieldMatrix(n, p, tuple(entries)).is_nilpotent():
                found += 1
        expected = p ** (data.m**2 - data.d)
        if found != expected:
            return (A, found, expected)
    return None
