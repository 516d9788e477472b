"""Negative (Hirzebruch-Jung) continued fractions.

Everything here is exact integer arithmetic.  Coefficient positions in
docstrings and reports are 1-based, storage is an ordinary tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence, Union


class _ZeroTail:
    """Value of a chain whose evaluation divides by zero (projective infinity)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_TAIL"

    def __reduce__(self):
        return (_ZeroTail, ())


ZERO_TAIL = _ZeroTail()

Rational = Union[Fraction, int]


@dataclass(frozen=True)
class ContinuedFraction:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(b) for b in self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, item):
        return self.coeffs[item]

    @cached_property
    def value(self):
        return hj_evaluate(self)

    @property
    def is_minimal(self) -> bool:
        return all(b >= 2 for b in self.coeffs)

    def reversed(self) -> "ContinuedFraction":
        return ContinuedFraction(self.coeffs[::-1])

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "ContinuedFraction":
        return cls(tuple(data["coeffs"]))

    def __str__(self):
        return "[" + ",".join(str(b) for b in self.coeffs) + "]"


@dataclass(frozen=True)
class WahlData:
    """Wahl chain of p^2/(pq-1) together with the expansions it is spliced from."""

    p: int
    q: int
    wahl: ContinuedFraction
    xs: ContinuedFraction
    ys: ContinuedFraction

    @property
    def m(self) -> int:
        return len(self.wahl)


def fraction_to_json(f: Rational) -> dict:
    f = Fraction(f)
    return {"num": f.numerator, "den": f.denominator}


def fraction_from_json(data: dict) -> Fraction:
    return Fraction(data["num"], data["den"])


def _as_pair(n, a=None):
    if a is None:
        if isinstance(n, Fraction):
            return n.numerator, n.denominator
        if isinstance(n, tuple) and len(n) == 2:
            return int(n[0]), int(n[1])
        raise TypeError(f"expected a Fraction or a (num, den) pair, got {n!r}")
    return int(n), int(a)


def ext_gcd(a: int, b: int):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        k, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


def mod_inverse(a: int, n: int) -> int:
    """The unique 0 < a^-1 < n with a * a^-1 = 1 mod n (a^-1 = 1 when n = 1)."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if n == 1:
        return 1
    g, x, _ = ext_gcd(a % n, n)
    if g != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    return x % n


def hj_expand(n, a=None) -> ContinuedFraction:
    """Minimal HJ expansion of the reduced fraction n/a, 0 < a < n (or a = 1).

    >>> hj_expand(25, 9)
    ContinuedFraction(coeffs=(3, 5, 2))
    """
    n, a = _as_pair(n, a)
    if a < 1 or n < 1:
        raise ValueError(f"{n}/{a} is not a positive fraction")
    if gcd(n, a) != 1:
        raise ValueError(f"{n}/{a} is not reduced")
    if a > n or (a == n and n != 1):
        raise ValueError(f"{n}/{a} must satisfy 0 < a < n")
    coeffs = []
    while a > 0:
        b = -(-n // a)
        coeffs.append(b)
        n, a = a, b * a - n
    return ContinuedFraction(tuple(coeffs))


def cf_matrix_product(cf: Union[ContinuedFraction, Sequence[int]]):
    """Product of the factors [[b, -1], [1, 0]] as a 2x2 tuple of ints."""
    a11, a12, a21, a22 = 1, 0, 0, 1
    for b in cf:
        a11, a12, a21, a22 = a11 * b + a12, -a11, a21 * b + a22, -a21
    return ((a11, a12), (a21, a22))


def hj_evaluate(cf: Union[ContinuedFraction, Sequence[int]]):
    """Exact value of b_1 - 1/(b_2 - ...), or ZERO_TAIL if it is infinite.

    Evaluation is projective: a suffix that evaluates to 0 makes the next
    prefix infinite, and an infinite suffix contributes 0 to the entry
    before it.
    """
    coeffs = tuple(cf)
    if not coeffs:
        raise ValueError("cannot evaluate an empty continued fraction")
    (num, _), (den, _) = cf_matrix_product(coeffs)
    if den == 0:
        return ZERO_TAIL
    return Fraction(num, den)


def hj_dual(n, a=None) -> ContinuedFraction:
    """Expansion of the dual fraction n/(n-a)."""
    n, a = _as_pair(n, a)
    if a >= n:
        raise ValueError(f"dual of {n}/{a} needs 0 < a < n")
    return hj_expand(n, n - a)


def wahl_chain(p: int, q: int) -> WahlData:
    """Wahl chain of p^2/(pq-1), spliced from p/q and p/(p-q).

    The splice [x_1,...,x_{r-1}, x_r + y_s, y_{s-1},...,y_1] is compared
    with the direct expansion; (1, 1) gives the empty chain.
    """
    if (p, q) == (1, 1):
        empty = ContinuedFraction(())
        return WahlData(1, 1, empty, empty, empty)
    _check_pq(p, q)
    xs = hj_expand(p, q)
    ys = hj_dual(p, q)
    spliced = xs.coeffs[:-1] + (xs.coeffs[-1] + ys.coeffs[-1],) + ys.coeffs[-2::-1]
    direct = hj_expand(p * p, p * q - 1)
    if spliced != direct.coeffs:
        raise AssertionError(f"splice {spliced} != expansion {direct.coeffs} for ({p},{q})")
    return WahlData(p, q, direct, xs, ys)


def wahl_dual_chain(p: int, q: int) -> ContinuedFraction:
    """Expansion of p^2/(p(p-q)+1) = [y_1,...,y_s, 2, x_r,...,x_1]."""
    _check_pq(p, q)
    xs = hj_expand(p, q)
    ys = hj_dual(p, q)
    spliced = ys.coeffs + (2,) + xs.coeffs[::-1]
    direct = hj_expand(p * p, p * (p - q) + 1)
    if spliced != direct.coeffs:
        raise AssertionError(f"splice {spliced} != expansion {direct.coeffs} for ({p},{q})")
    return direct


def zero_chain(p: int, q: int) -> ContinuedFraction:
    """[x_1,...,x_r, 1, y_s,...,y_1] built from p/q and its dual."""
    _check_pq(p, q)
    xs = hj_expand(p, q)
    ys = hj_dual(p, q)
    return ContinuedFraction(xs.coeffs + (1,) + ys.coeffs[::-1])


def contract_one(cf: Union[ContinuedFraction, Sequence[int]], position: int) -> ContinuedFraction:
    """Blow down the entry 1 at the 1-based ``position``.

    Interior: (a, 1, b) -> (a-1, b-1).  An end entry only decrements its
    single neighbour, and [1] alone contracts to the empty chain.
    """
    coeffs = list(cf)
    if not 1 <= position <= len(coeffs):
        raise IndexError(f"position {position} out of range for a chain of length {len(coeffs)}")
    i = position - 1
    if coeffs[i] != 1:
        raise ValueError(f"entry at position {position} is {coeffs[i]}, not 1")
    if i > 0:
        coeffs[i - 1] -= 1
    if i < len(coeffs) - 1:
        coeffs[i + 1] -= 1
    del coeffs[i]
    return ContinuedFraction(tuple(coeffs))


def contraction_sequence(cf: Union[ContinuedFraction, Sequence[int]]):
    """Repeatedly contract entries equal to 1.

    Interior ones are preferred (leftmost first); end entries are used only
    when no interior 1 is left.  Returns the list of (chain, position)
    steps, ending with the final chain and position None.
    """
    chain = ContinuedFraction(tuple(cf))
    steps = []
    while True:
        coeffs = chain.coeffs
        if len(coeffs) <= 1 or any(b < 1 for b in coeffs):
            steps.append((chain, None))
            return steps
        interior = [i for i in range(1, len(coeffs) - 1) if coeffs[i] == 1]
        ends = [i for i in (0, len(coeffs) - 1) if coeffs[i] == 1]
        if interior:
            pos = interior[0] + 1
        elif ends:
            pos = ends[0] + 1
        else:
            steps.append((chain, None))
            return steps
        steps.append((chain, pos))
        chain = contract_one(chain, pos)


def zero_cf_check(cf: Union[ContinuedFraction, Sequence[int]]) -> bool:
    """True iff repeated one-contractions take the chain down to [0]."""
    final, _ = contraction_sequence(cf)[-1]
    return final.coeffs == (0,)


def _check_pq(p: int, q: int) -> None:
    if not (0 < q < p):
        raise ValueError(f"need 0 < q < p, got ({p},{q})")
    if gcd(p, q) != 1:
        raise ValueError(f"({p},{q}) is not coprime")


def coprime_pairs(max_p: int, min_p: int = 2):
    """All (p, q) with min_p <= p <= max_p, 0 < q < p, gcd(p, q) = 1."""
    for p in range(max(min_p, 2), max_p + 1):
        for q in range(1, p):
            if gcd(p, q) == 1:
                yield p, q
