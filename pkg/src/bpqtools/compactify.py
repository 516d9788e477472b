"""Compactifying divisor of B_{p,q} and the blow-down to a Hirzebruch surface."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .chains import (
    RationalMatrix,
    SphereChain,
    accompanying,
    exact_inverse,
    intersection_matrix,
)
from .hj import ContinuedFraction, _check_pq, hj_dual, hj_expand, mod_inverse, wahl_chain


@dataclass(frozen=True)
class CompactificationData:
    p: int
    q: int
    d0: int
    divisor: SphereChain
    dual_index_q2: int
    tail: ContinuedFraction
    distinguished_index: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.tail)

    @property
    def profile(self) -> tuple:
        return self.divisor.selfints

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "d0": self.d0,
            "divisor": list(self.profile),
            "distinguished_index": self.distinguished_index,
        }


def compute_d0(p: int, q: int) -> int:
    """The d0 with (pq-1) d0 < p^2 <= (pq-1)(d0+1); it equals b_1 - 1."""
    _check_pq(p, q)
    N = p * q - 1
    d0 = wahl_chain(p, q).wahl[0] - 1
    if not (N * d0 < p * p <= N * (d0 + 1)):
        raise AssertionError(f"d0 = {d0} violates the defining inequality for ({p},{q})")
    return d0


def dual_index_q2(p: int, q: int) -> int:
    """[q^2]^-1 mod (pq-1), computed as p^2 - d0 (pq-1)."""
    N = p * q - 1
    value = p * p - compute_d0(p, q) * N
    if N > 1 and value != mod_inverse(q * q % N, N):
        raise AssertionError(f"p^2 - d0(pq-1) = {value} is not [q^2]^-1 mod {N}")
    return value


def compactifying_divisor(p: int, q: int) -> CompactificationData:
    """Profile (+d0, -d1, ..., -dn) with D1 next to D0.

    For (2,1) the expansion of 1/1 is [1], which is exactly the (+3, -1)
    convention used to put X_{2,1} in the (n,1) family.
    """
    d0 = compute_d0(p, q)
    N = p * q - 1
    inv = dual_index_q2(p, q)
    tail = hj_expand(N, inv)
    divisor = SphereChain((d0,) + tuple(-d for d in tail), role="divisor")
    data = CompactificationData(p, q, d0, divisor, inv, tail)
    return CompactificationData(p, q, d0, divisor, inv, tail, distinguished_exceptional_index(p, q, data))


def reverse_tail(p: int, q: int) -> ContinuedFraction:
    """Expansion of (pq-1)/(q^2 mod (pq-1)), which is [d_n, ..., d_1]."""
    N = p * q - 1
    if N == 1:
        return hj_expand(1, 1)
    return hj_expand(N, q * q % N)


def distinguished_exceptional_index(p: int, q: int, data: CompactificationData = None) -> Optional[int]:
    """Index in D_1..D_n of the sphere met by the distinguished exceptional class.

    Absent for q = 1.  With y_j the first entry of p/(p-q) that is not 2,
    [x_1..x_r, 2, y_s..y_{j+1}, y_j - 1] must be [d_n, ..., d_1]; the
    connecting 2 sits at slot r+1 there, i.e. at index n - r.
    """
    _check_pq(p, q)
    if q == 1:
        return None
    xs = hj_expand(p, q).coeffs
    ys = hj_dual(p, q).coeffs
    j = next(i for i, y in enumerate(ys) if y != 2)
    built = xs + (2,) + ys[:j:-1] + (ys[j] - 1,)
    if data is None:
        data = compactifying_divisor(p, q)
    if built != data.tail.coeffs[::-1]:
        raise AssertionError(f"{built} is not the reverse of {data.tail.coeffs} for ({p},{q})")
    return data.n - len(xs)


def divisor_matrix(p: int, q: int) -> RationalMatrix:
    return intersection_matrix(compactifying_divisor(p, q).divisor)


def schur_top_left(p: int, q: int) -> Fraction:
    """Top-left entry of M_D^-1 from the scalar Schur complement d0 - (M_D'^-1)_11."""
    data = compactifying_divisor(p, q)
    tail_inv = exact_inverse(intersection_matrix(SphereChain.from_cf(data.tail)))
    return 1 / (data.d0 - tail_inv[0, 0])


def block_inverse(p: int, q: int, sign: int = -1) -> RationalMatrix:
    """M_D^-1 assembled from M_D'^-1 by Schur complements.

    The off-diagonal column is v/p^2 with v = sign (pq-1) M_D'^-1 e_1.
    sign = -1 is the corrected form and agrees with direct inversion;
    sign = +1 flips that column and disagrees with direct inversion.
    """
    data = compactifying_divisor(p, q)
    N = p * q - 1
    P2 = p * p
    acc = accompanying(data.tail, N, data.dual_index_q2)
    g, h, n = acc.e, acc.f, acc.m
    tinv = [[Fraction(-g[min(i, j)] * h[max(i, j)], N) for j in range(1, n + 1)] for i in range(1, n + 1)]
    v = [sign * N * tinv[i][0] for i in range(n)]
    rows = [[Fraction(N, P2)] + [x / P2 for x in v]]
    for i in range(n):
        rows.append([v[i] / P2] + [tinv[i][j] + v[i] * v[j] / (N * P2) for j in range(n)])
    return RationalMatrix(tuple(tuple(r) for r in rows))


def sign_audit(p: int, q: int) -> dict:
    """Compare both block forms of M_D^-1 with direct inversion."""
    direct = exact_inverse(divisor_matrix(p, q))
    corrected = block_inverse(p, q, -1)
    uncorrected = block_inverse(p, q, +1)
    first_col = direct.column(0)
    return {
        "p": p,
        "q": q,
        "corrected_matches": corrected == direct,
        "uncorrected_matches": uncorrected == direct,
        "first_column_positive": all(x > 0 for x in first_col),
        "top_left": direct[0, 0],
        "last_of_first_column": first_col[-1],
    }


@dataclass(frozen=True)
class ContractionStep:
    left: int
    chain: tuple
    right: int
    contracted: Optional[int] = None  # 1-based position in ``chain``


@dataclass(frozen=True)
class ContractionTrace:
    steps: tuple = field(default_factory=tuple)

    @property
    def count(self) -> int:
        return sum(1 for s in self.steps if s.contracted is not None)

    @property
    def final(self) -> ContractionStep:
        return self.steps[-1]

    def to_json(self):
        return [{"left": s.left, "chain": list(s.chain), "right": s.right, "contracted": s.contracted}
                for s in self.steps]


def contract_fibre(left: int, chain, right: int) -> ContractionTrace:
    """Blow down (-1)-spheres of a fibre chain between two sections.

    Self-intersections are given with their signs.  Each step removes the
    unique -1 and raises its neighbours by one, sections included.  At
    [-1, -1] the sphere on the ``left`` section side is contracted.
    Stops at the single 0-fibre; raises if the chain gets stuck.
    """
    chain = tuple(chain)
    steps = []
    while chain != (0,):
        ones = [i for i, s in enumerate(chain) if s == -1]
        if len(ones) == 1:
            i = ones[0]
        elif len(ones) == 2 and len(chain) == 2:
            i = 0
        else:
            raise AssertionError(f"stuck at {left} | {list(chain)} | {right}")
        steps.append(ContractionStep(left, chain, right, i + 1))
        new = list(chain)
        if i == 0:
            left += 1
        else:
            new[i - 1] += 1
        if i == len(new) - 1:
            right += 1
        else:
            new[i + 1] += 1
        del new[i]
        chain = tuple(new)
    steps.append(ContractionStep(left, chain, right, None))
    return ContractionTrace(tuple(steps))


def broken_fibre_chain(p: int, q: int) -> tuple:
    """Broken fibre of X_{p,q}, as self-intersections from the D_n side.

    [x_2..x_r, 1, y_s..y_{j+1}, y_j - 1] negated; empty for q = 1.
    """
    if q == 1:
        return ()
    xs = hj_expand(p, q).coeffs
    ys = hj_dual(p, q).coeffs
    j = next(i for i, y in enumerate(ys) if y != 2)
    return tuple(-x for x in xs[1:] + (1,) + ys[:j:-1] + (ys[j] - 1,))


def blowdown_to_hirzebruch(p: int, q: int) -> ContractionTrace:
    """Contract the broken fibre between D_n (-x_1) and D_0 (+d0).

    Ends at (-d0 | 0 | +d0), the Hirzebruch surface F_{d0}.  For q = 1
    the surface is already ruled and the trace has no steps.
    """
    data = compactifying_divisor(p, q)
    chain = broken_fibre_chain(p, q)
    if not chain:
        return ContractionTrace((ContractionStep(-data.tail[-1], (), data.d0, None),))
    trace = contract_fibre(-data.tail[-1], chain, data.d0)
    final = trace.final
    if (final.left, final.chain, final.right) != (-data.d0, (0,), data.d0):
        raise AssertionError(f"blow-down of ({p},{q}) ended at {final}")
    return trace
