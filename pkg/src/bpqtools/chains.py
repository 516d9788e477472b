"""Sphere chains, their intersection matrices and accompanying numbers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .hj import ContinuedFraction, fraction_from_json, fraction_to_json, hj_expand, mod_inverse


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class RationalMatrix:
    """Dense exact matrix; ``rows`` is a tuple of tuples of Fractions."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            cols = list(zip(*other.rows))
            return RationalMatrix(tuple(
                tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in cols)
                for row in self.rows))
        vec = tuple(other)
        if len(vec) != self.shape[1]:
            raise ValueError(f"dimension mismatch: {self.shape} times vector of length {len(vec)}")
        return tuple(sum((a * Fraction(b) for a, b in zip(row, vec) if a and b), Fraction(0))
                     for row in self.rows)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.rows)))

    def is_symmetric(self) -> bool:
        return self.rows == self.transpose().rows

    def column(self, j: int):
        return tuple(row[j] for row in self.rows)

    def inverse(self) -> "RationalMatrix":
        return exact_inverse(self)

    def to_json(self):
        return [[fraction_to_json(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data) -> "RationalMatrix":
        return cls(tuple(tuple(fraction_from_json(x) for x in row) for row in data))


def _reduce_row(row):
    g = gcd(*row)
    return [x // g for x in row] if g > 1 else row


def scaled_inverse(M) -> tuple:
    """Fraction-free Gaussian elimination: returns (N, d) with M^-1 = N_ij / d_i.

    Rows are scaled to integers, eliminated below the pivots, then above
    them from the bottom up.  Rows are kept gcd-reduced.  Banded inputs
    such as sphere-chain matrices cost O(m^2) row entries.
    """
    rows_in = M.rows if isinstance(M, RationalMatrix) else tuple(tuple(r) for r in M)
    n = len(rows_in)
    if any(len(r) != n for r in rows_in):
        raise ValueError("matrix is not square")
    rows = []
    for i, r in enumerate(rows_in):
        fr = [Fraction(x) for x in r]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        row = [int(x * den) for x in fr] + [0] * n
        row[n + i] = den
        rows.append(row)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c]), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        rows[c], rows[piv] = rows[piv], rows[c]
        prow = rows[c]
        P = prow[c]
        for r in range(c + 1, n):
            F = rows[r][c]
            if F:
                rows[r] = _reduce_row([P * x - F * y for x, y in zip(rows[r], prow)])
    for c in range(n - 1, -1, -1):
        prow = rows[c]
        P = prow[c]
        for r in range(c):
            F = rows[r][c]
            if F:
                rows[r] = _reduce_row([P * x - F * y for x, y in zip(rows[r], prow)])
    return tuple(tuple(rows[i][n:]) for i in range(n)), tuple(rows[i][i] for i in range(n))


def exact_inverse(M: RationalMatrix) -> RationalMatrix:
    """Exact inverse, M @ M^-1 = I."""
    N, d = scaled_inverse(M)
    return RationalMatrix(tuple(tuple(Fraction(x, d[i]) for x in row) for i, row in enumerate(N)))


def solve_profile(M: RationalMatrix, profile: Sequence) -> tuple:
    """The vector a with M a = profile."""
    profile = tuple(Fraction(x) for x in profile)
    if len(profile) != M.shape[0]:
        raise ValueError(f"profile of length {len(profile)} for a {M.shape} matrix")
    return exact_inverse(M) @ profile


@dataclass(frozen=True)
class SphereChain:
    """Linear chain of spheres; neighbours meet once, others are disjoint."""

    selfints: tuple
    role: str = "generic"

    def __post_init__(self):
        object.__setattr__(self, "selfints", tuple(int(s) for s in self.selfints))
        if self.role not in ("wahl", "divisor", "divisor-tail", "generic"):
            raise ValueError(f"unknown role {self.role!r}")

    @classmethod
    def from_cf(cls, cf, role="generic") -> "SphereChain":
        return cls(tuple(-b for b in cf), role)

    def __len__(self):
        return len(self.selfints)


def intersection_matrix(chain) -> RationalMatrix:
    """Tridiagonal matrix: self-intersections on the diagonal, 1 beside it."""
    s = chain.selfints if isinstance(chain, SphereChain) else tuple(chain)
    m = len(s)
    return RationalMatrix(tuple(
        tuple(s[i] if i == j else (1 if abs(i - j) == 1 else 0) for j in range(m))
        for i in range(m)))


@dataclass(frozen=True)
class AccompanyingNumbers:
    """Left (e) and right (f) accompanying numbers of n/a = [b_1,...,b_m].

    ``e[i]`` and ``f[i]`` are e_i and f_i for i = 0..m+1.
    """

    n: int
    a: int
    coeffs: tuple
    e: tuple
    f: tuple

    @property
    def m(self) -> int:
        return len(self.coeffs)


def accompanying(cf, n: int, a: int) -> AccompanyingNumbers:
    coeffs = tuple(cf)
    e = [0, 1]
    f = [n, a]
    for b in coeffs:
        e.append(b * e[-1] - e[-2])
        f.append(b * f[-1] - f[-2])
    if f[-1] != 0 or f[-2] != 1 or e[-1] != n:
        raise ValueError(f"{list(coeffs)} is not the expansion of {n}/{a}")
    return AccompanyingNumbers(n, a, coeffs, tuple(e), tuple(f))


def accompanying_of(n: int, a: int) -> AccompanyingNumbers:
    return accompanying(hj_expand(n, a), n, a)


def check_accompanying(acc: AccompanyingNumbers) -> list:
    """Names of violated invariants (empty when all hold)."""
    bad = []
    e, f, m, n = acc.e, acc.f, acc.m, acc.n
    if (e[0], e[1], f[0], f[1]) != (0, 1, n, acc.a):
        bad.append("initial values")
    if any(e[i + 1] <= e[i] for i in range(1, m + 1)):
        bad.append("e increasing")
    if any(f[i + 1] >= f[i] for i in range(m + 1)):
        bad.append("f decreasing")
    if any(gcd(e[i], e[i + 1]) != 1 or gcd(f[i], f[i + 1]) != 1 for i in range(m + 1)):
        bad.append("consecutive coprime")
    if m and n > 1 and e[m] != mod_inverse(acc.a, n):
        bad.append("e_m = a^-1 mod n")
    if (e[m + 1], f[m], f[m + 1]) != (n, 1, 0):
        bad.append("extremal values")
    if any(e[i + 1] * f[i] - e[i] * f[i + 1] != n for i in range(m + 1)):
        bad.append("e_{i+1} f_i - e_i f_{i+1} = n")
    if e[1] * f[1] - e[0] * f[2] != acc.a:
        bad.append("e_1 f_1 - e_0 f_2 = a")
    return bad


def second_identity_table(acc: AccompanyingNumbers) -> list:
    """Rows (i, e_i f_i - e_{i-1} f_{i+1}, a) for i = 1..m.

    The identity with right-hand side a is asserted only at i = 1; the
    rest of the table is diagnostic.
    """
    e, f = acc.e, acc.f
    return [(i, e[i] * f[i] - e[i - 1] * f[i + 1], acc.a) for i in range(1, acc.m + 1)]


def inverse_closed_form(acc: AccompanyingNumbers) -> RationalMatrix:
    """M^-1 with entries -e_i f_j / n for i <= j (symmetric)."""
    e, f, n, m = acc.e, acc.f, acc.n, acc.m
    return RationalMatrix(tuple(
        tuple(Fraction(-e[min(i, j)] * f[max(i, j)], n) for j in range(1, m + 1))
        for i in range(1, m + 1)))


def closed_form_matches_elimination(acc: AccompanyingNumbers) -> bool:
    """Compare -e_i f_j / n with the eliminated inverse entry by entry.

    Cross-multiplied in integers, so no Fractions are built.
    """
    N, d = scaled_inverse(intersection_matrix(SphereChain.from_cf(acc.coeffs)))
    e, f, n, m = acc.e, acc.f, acc.n, acc.m
    for i in range(m):
        di, ei = d[i], e[i + 1]
        row = N[i]
        for j in range(m):
            lo, hi = (ei, f[j + 1]) if i <= j else (e[j + 1], f[i + 1])
            if row[j] * n != -lo * hi * di:
                return False
    return True


def discrepancies(acc: AccompanyingNumbers) -> tuple:
    """k_j = -1 + (e_j + f_j)/n for j = 1..m."""
    return tuple(Fraction(acc.e[j] + acc.f[j], acc.n) - 1 for j in range(1, acc.m + 1))


def wahl_discrepancies_ok(ks) -> bool:
    return all(-1 < k <= 0 for k in ks)
