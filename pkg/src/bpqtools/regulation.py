"""Homology arithmetic in the rational blow-up of X_{p,q}.

Classes are written in the basis D_0..D_n (compactifying divisor) and
C_1..C_m (Wahl chain).  The fibre F of X is carried as a separate
coefficient: F.D_0 = F.D_n = 1, F.F = 0 and F meets nothing else.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Optional

from .chains import (
    AccompanyingNumbers,
    RationalMatrix,
    SphereChain,
    accompanying,
    discrepancies,
    exact_inverse,
    intersection_matrix,
    inverse_closed_form,
)
from .compactify import (
    ContractionTrace,
    compactifying_divisor,
    contract_fibre,
)
from .hj import _check_pq, hj_expand, wahl_chain


@dataclass(frozen=True)
class BlowupBasis:
    ambient: tuple
    embedded: tuple
    M_D: RationalMatrix
    M_C: RationalMatrix
    acc_D: AccompanyingNumbers  # of the tail D_1..D_n
    acc_C: AccompanyingNumbers
    k: tuple

    @property
    def M_D_inv(self) -> RationalMatrix:
        return _divisor_part(*self.ambient)[1]

    @cached_property
    def M_C_inv(self) -> RationalMatrix:
        return inverse_closed_form(self.acc_C)

    @property
    def n(self) -> int:
        """Index of the last divisor sphere (D_0..D_n)."""
        return self.M_D.shape[0] - 1

    @property
    def m(self) -> int:
        return self.M_C.shape[0]

    def c_from_chi(self, chi) -> tuple:
        """M_C^-1 chi from the accompanying numbers, touching only the support of chi."""
        e, f, N = self.acc_C.e, self.acc_C.f, self.acc_C.n
        support = [(j, x) for j, x in enumerate(chi) if x]
        return tuple(
            Fraction(-sum(e[min(i, j) + 1] * f[max(i, j) + 1] * x for j, x in support), N)
            for i in range(self.m))


@lru_cache(maxsize=1024)
def _divisor_part(p: int, q: int):
    data = compactifying_divisor(p, q)
    M_D = intersection_matrix(data.divisor)
    acc_D = accompanying(data.tail, p * q - 1, data.dual_index_q2)
    return M_D, exact_inverse(M_D), acc_D


@lru_cache(maxsize=4096)
def blowup_basis(p: int, q: int, m: Optional[int] = None, n: Optional[int] = None) -> BlowupBasis:
    """Basis for ambient (p,q) and an embedded (m,n) Wahl chain (default (p,q))."""
    if m is None:
        m, n = p, q
    M_D, _, acc_D = _divisor_part(p, q)
    M_C, acc_C, k = _wahl_part(m, n)
    return BlowupBasis((p, q), (m, n), M_D, M_C, acc_D, acc_C, k)


@lru_cache(maxsize=4096)
def _wahl_part(m: int, n: int):
    wahl = wahl_chain(m, n).wahl
    acc_C = accompanying(wahl, m * m, m * n - 1)
    return intersection_matrix(SphereChain.from_cf(wahl, "wahl")), acc_C, discrepancies(acc_C)


@dataclass(frozen=True)
class HomologyClass:
    a: tuple
    c: tuple
    fibre: Fraction = Fraction(0)
    # intersection profiles M_D a and M_C c, kept when known
    xi: Optional[tuple] = field(default=None, compare=False)
    chi: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "c", tuple(Fraction(x) for x in self.c))
        object.__setattr__(self, "fibre", Fraction(self.fibre))

    @classmethod
    def from_profile(cls, basis: BlowupBasis, xi, chi) -> "HomologyClass":
        """The class with D-profile xi and C-profile chi (no fibre part)."""
        xi, chi = tuple(xi), tuple(chi)
        return cls(basis.M_D_inv @ xi, basis.c_from_chi(chi), 0, xi, chi)

    @classmethod
    def canonical(cls, basis: BlowupBasis) -> "HomologyClass":
        """K = -F - sum D_i + sum k_j C_j."""
        return cls((-1,) * (basis.n + 1), basis.k, -1)

    @classmethod
    def zero(cls, basis: BlowupBasis) -> "HomologyClass":
        return cls((0,) * (basis.n + 1), (0,) * basis.m)


def _dot(u, v):
    return sum((x * y for x, y in zip(u, v) if x and y), Fraction(0))


def _chain_apply(M: RationalMatrix, v) -> tuple:
    """M v for a tridiagonal chain matrix with unit off-diagonal."""
    k = len(v)
    return tuple(M[i, i] * v[i] + (v[i - 1] if i else 0) + (v[i + 1] if i < k - 1 else 0)
                 for i in range(k))


def pairing(x: HomologyClass, y: HomologyClass, basis: BlowupBasis) -> Fraction:
    if len(x.a) != basis.n + 1 or len(y.a) != basis.n + 1 or len(x.c) != basis.m or len(y.c) != basis.m:
        raise ValueError("class dimensions do not match the basis")
    xi = y.xi if y.xi is not None else _chain_apply(basis.M_D, y.a)
    chi = y.chi if y.chi is not None else _chain_apply(basis.M_C, y.c)
    value = _dot(x.a, xi) + _dot(x.c, chi)
    value += x.fibre * (y.a[0] + y.a[-1]) + y.fibre * (x.a[0] + x.a[-1])
    return value


def pairing_self(cls: HomologyClass, basis: BlowupBasis) -> Fraction:
    return pairing(cls, cls, basis)


def pairing_canonical(cls: HomologyClass, basis: BlowupBasis) -> Fraction:
    return pairing(HomologyClass.canonical(basis), cls, basis)


def adjunction_defect(cls: HomologyClass, basis: BlowupBasis) -> Fraction:
    """(C.C + K.C)/2 + 1, the total singularity contribution; 0 for embedded spheres."""
    return (pairing_self(cls, basis) + pairing_canonical(cls, basis)) / 2 + 1


def adjunction_rhs(basis: BlowupBasis, chi) -> Fraction:
    """(p^2+1)/(2p^2) - (k.chi + chi M_C^-1 chi)/2 for the profile xi = e_1.

    Equals 1 - adjunction_defect, so the adjunction identity reads rhs = 1.
    """
    p = basis.ambient[0]
    chi = tuple(Fraction(x) for x in chi)
    return Fraction(p * p + 1, 2 * p * p) - (_dot(basis.k, chi) + _dot(chi, basis.M_C_inv @ chi)) / 2


def unit(length: int, *ones) -> tuple:
    v = [0] * length
    for i in ones:
        v[i] += 1
    return tuple(v)


def profile_values(p: int, q: int) -> dict:
    """a_0 and a_n of a = M_D^-1 e_1."""
    basis = blowup_basis(p, q)
    a = basis.M_D_inv @ unit(basis.n + 1, 0)
    return {"a0": a[0], "an": a[-1],
            "ok": a[0] == Fraction(p * q - 1, p * p) and a[-1] == Fraction(1, p * p)}


def _chi_search(acc: AccompanyingNumbers, target_num: int, target_den: int, max_entry: int = 3):
    """All chi in {0..max_entry}^m with Q(chi) <= target, Q = -(k.chi + chi M^-1 chi)/2.

    Q is non-decreasing in every entry, which justifies the pruning.  All
    work is in integers scaled by 2 m^2.  Yields (chi, 2 m^2 Q).
    """
    m, N = acc.m, acc.n
    e, f = acc.e, acc.f
    lin = [N - e[j] - f[j] for j in range(1, m + 1)]

    def quad(i, j):
        lo, hi = (i, j) if i <= j else (j, i)
        return e[lo + 1] * f[hi + 1]

    # 2N Q(chi) = sum lin_j chi_j + sum_{i,j} quad(i,j) chi_i chi_j
    limit = target_num * 2 * N

    def rec(start, chi, support, value):
        yield tuple(chi), value
        for j in range(start, m):
            cross = sum(quad(i, j) * chi[i] for i in support)
            for v in range(1, max_entry + 1):
                new = value + lin[j] * v + 2 * v * cross + quad(j, j) * v * v
                if new * target_den > limit:
                    break
                chi[j] = v
                support.append(j)
                yield from rec(j + 1, chi, support, new)
                support.pop()
                chi[j] = 0

    yield from rec(0, [0] * m, [], 0)


def chi_candidates(basis: BlowupBasis, max_entry: int = 3):
    """Profiles chi with defect >= 0 for xi = e_1, split by zero defect.

    Returns (admissible, defect_zero).  The bound on entries is enough
    since each unit of chi costs at least (1 - 1/m^2)/2 against a budget
    of (1 - 1/p^2)/2.
    """
    p = basis.ambient[0]
    target = Fraction(p * p - 1, 2 * p * p)
    admissible, zero = [], []
    N = basis.acc_C.n
    for chi, scaled in _chi_search(basis.acc_C, target.numerator, target.denominator, max_entry):
        admissible.append(chi)
        if Fraction(scaled, 2 * N) == target:
            zero.append(chi)
    return admissible, zero


@dataclass
class UniqueIntersectionReport:
    p: int
    q: int
    defect_zero: list
    square_zero: list
    ok: bool

    def to_json(self):
        return {"p": self.p, "q": self.q, "defect_zero": [list(c) for c in self.defect_zero],
                "square_zero": [list(c) for c in self.square_zero], "ok": self.ok}


def verify_unique_intersection(p: int, q: int, max_entry: int = 3) -> UniqueIntersectionReport:
    """Zero defect and zero square together force chi = e_1.

    Candidates come from the bounded search; each is re-checked with the
    full class arithmetic.
    """
    basis = blowup_basis(p, q)
    m = basis.m
    _, zero = chi_candidates(basis, max_entry)
    xi = unit(basis.n + 1, 0)
    defect_zero, square_zero = [], []
    for chi in zero:
        cls = HomologyClass.from_profile(basis, xi, chi)
        if adjunction_defect(cls, basis) != 0:
            raise AssertionError(f"search and class arithmetic disagree at chi = {chi}")
        defect_zero.append(chi)
        if pairing_self(cls, basis) == 0:
            square_zero.append(chi)
    ends = {unit(m, 0), unit(m, m - 1)}
    ok = set(defect_zero) == ends and square_zero == [unit(m, 0)]
    return UniqueIntersectionReport(p, q, defect_zero, square_zero, ok)


def closed_form_defect(p: int, q: int, j: int) -> Fraction:
    """(e_j - 1)(f_j - 1)/(2p^2): defect of chi = e_j (1-based j), xi = e_1."""
    acc = accompanying(wahl_chain(p, q).wahl, p * p, p * q - 1)
    return Fraction((acc.e[j] - 1) * (acc.f[j] - 1), 2 * p * p)


def exclusion_check(p: int, q: int, max_support: int = 2, max_entry: int = 3) -> bool:
    """With xi = e_0 + e_n every non-zero chi has negative defect.

    Enumerates chi with at most ``max_support`` non-zero entries in
    1..max_entry and compares with (k.chi + chi M^-1 chi)/2.
    """
    from itertools import combinations, product

    basis = blowup_basis(p, q)
    m = basis.m
    xi = unit(basis.n + 1, 0, basis.n)
    for size in range(1, min(max_support, m) + 1):
        for support in combinations(range(m), size):
            for values in product(range(1, max_entry + 1), repeat=size):
                chi = [0] * m
                for i, v in zip(support, values):
                    chi[i] = v
                cls = HomologyClass.from_profile(basis, xi, chi)
                d = adjunction_defect(cls, basis)
                chi_f = tuple(Fraction(x) for x in chi)
                expected = (_dot(basis.k, chi_f) + _dot(chi_f, basis.M_C_inv @ chi_f)) / 2
                if d != expected or d >= 0:
                    return False
    return True


@dataclass(frozen=True)
class RulingSolution:
    """Broken ruling sum alpha_j C_j (j >= 2) + sum beta_i D_i (i >= 1) + epsilon E."""

    alpha: tuple
    beta: tuple
    epsilon: int
    r: int  # E meets C_r
    s: int  # E meets D_s
    candidates: tuple = field(default=(), compare=False)

    def to_json(self):
        return {"alpha": list(self.alpha), "beta": list(self.beta), "epsilon": self.epsilon,
                "r": self.r, "s": self.s}


def tail_chains(p: int, q: int):
    """(C', D') continued fractions with their fractions (n, a)."""
    b1 = wahl_chain(p, q).wahl[0]
    N = p * q - 1
    data = compactifying_divisor(p, q)
    c_tail = hj_expand(N, b1 * N - p * p) if (p, q) != (2, 1) else None
    return c_tail, (N, b1 * N - p * p), data.tail, (N, data.dual_index_q2)


def broken_ruling_solve(basis: BlowupBasis) -> RulingSolution:
    """Multiplicities of the broken ruling through C' and D'.

    Every attachment (r, s) is tried: the conditions alpha_2 = beta_1 = 1
    give epsilon = N/f'_r = N/h_s, and the multiplicities must be positive
    integers with T.E = 0.  Exactly one attachment, (m, n), survives.
    """
    if basis.ambient != basis.embedded:
        raise ValueError("the broken ruling is solved for ambient = embedded")
    p, q = basis.ambient
    N = p * q - 1
    if (p, q) == (2, 1):
        # C' is empty and D' = (D_1) with D_1^2 = -1; T = E + D_1
        return RulingSolution((), (1,), 1, 1, 1, ((1, 1),))
    c_tail, c_frac, d_tail, d_frac = tail_chains(p, q)
    acc_c = accompanying(c_tail, *c_frac)
    acc_d = accompanying(d_tail, *d_frac)
    inv_c = inverse_closed_form(acc_c)
    inv_d = inverse_closed_form(acc_d)
    lc, ld = acc_c.m, acc_d.m
    tried, good = [], []
    for r in range(1, lc + 1):
        for s in range(1, ld + 1):
            eps_c = Fraction(N, acc_c.f[r])
            eps_d = Fraction(N, acc_d.f[s])
            tried.append((r + 1, s))
            if eps_c != eps_d or eps_c.denominator != 1:
                continue
            eps = eps_c
            alpha = tuple(-eps * x for x in inv_c.column(r - 1))
            beta = tuple(-eps * x for x in inv_d.column(s - 1))
            if any(x.denominator != 1 or x <= 0 for x in alpha + beta):
                continue
            if alpha[0] != 1 or beta[0] != 1 or alpha[r - 1] + beta[s - 1] - eps != 0:
                continue
            good.append(RulingSolution(tuple(int(x) for x in alpha), tuple(int(x) for x in beta),
                                       int(eps), r + 1, s, ()))
    if len(good) != 1:
        raise AssertionError(f"({p},{q}): expected one consistent attachment, found {len(good)}")
    sol = good[0]
    return RulingSolution(sol.alpha, sol.beta, sol.epsilon, sol.r, sol.s, tuple(tried))


def ruling_intersections(p: int, q: int, sol: RulingSolution) -> dict:
    """T.X for every sphere X in the configuration C, D and E.

    E meets C_r and D_s; the chains are linear; C and D are disjoint.
    """
    wahl = wahl_chain(p, q).wahl
    data = compactifying_divisor(p, q)
    m, n = len(wahl), data.n
    cm = [0] * (m + 1)  # multiplicities on C_1..C_m (index 0 unused)
    for j, x in enumerate(sol.alpha, start=2):
        cm[j] = x
    dm = [0] * (n + 1)  # on D_0..D_n
    for i, x in enumerate(sol.beta, start=1):
        dm[i] = x
    c_self = [None] + [-b for b in wahl]
    d_self = list(data.profile)
    out = {}
    for j in range(1, m + 1):
        v = cm[j] * c_self[j] + (cm[j - 1] if j > 1 else 0) + (cm[j + 1] if j < m else 0)
        v += sol.epsilon if j == sol.r else 0
        out[f"C{j}"] = v
    for i in range(n + 1):
        v = dm[i] * d_self[i] + (dm[i - 1] if i > 0 else 0) + (dm[i + 1] if i < n else 0)
        v += sol.epsilon if i == sol.s else 0
        out[f"D{i}"] = v
    out["E"] = -sol.epsilon + cm[sol.r] + dm[sol.s]
    return out


def ruling_class_ok(p: int, q: int, sol: RulingSolution) -> bool:
    pairs = ruling_intersections(p, q, sol)
    return all(v == (1 if name in ("C1", "D0") else 0) for name, v in pairs.items())


def two_ruling_exclusion(p: int, q: int) -> bool:
    """f'_r < pq - 1 for every r, so alpha_2 = f'_r/(pq-1) = 1 is impossible."""
    if (p, q) == (2, 1):
        return True
    c_tail, c_frac, _, _ = tail_chains(p, q)
    acc = accompanying(c_tail, *c_frac)
    return all(acc.f[r] < p * q - 1 for r in range(1, acc.m + 1))


def shared_accompanying_check(p: int, q: int) -> bool:
    """Right accompanying numbers of C' and D' share exactly the value 1."""
    _check_pq(p, q)
    if (p, q) == (2, 1):
        raise ValueError("C' is empty for (2,1)")
    c_tail, c_frac, d_tail, d_frac = tail_chains(p, q)
    fc = set(accompanying(c_tail, *c_frac).f[1:-1])
    fd = set(accompanying(d_tail, *d_frac).f[1:-1])
    return fc & fd == {1}


def contraction_simulator(p: int, q: int) -> ContractionTrace:
    """Blow down [-b_2..-b_m, -1, -d_n..-d_1] between C_1 and D_0.

    Takes m + n - 1 steps and ends at (-d0 | 0 | +d0).
    """
    wahl = wahl_chain(p, q).wahl
    data = compactifying_divisor(p, q)
    m, n = len(wahl), data.n
    chain = tuple(-b for b in wahl[1:]) + (-1,) + tuple(-d for d in data.tail[::-1])
    trace = contract_fibre(-wahl[0], chain, data.d0)
    final = trace.final
    if trace.count != m + n - 1:
        raise AssertionError(f"({p},{q}): {trace.count} contractions, expected {m + n - 1}")
    if (final.left, final.chain, final.right) != (-data.d0, (0,), data.d0):
        raise AssertionError(f"({p},{q}): contraction ended at {final}")
    return trace


def betti_number(p: int, q: int) -> int:
    return len(wahl_chain(p, q).wahl) + compactifying_divisor(p, q).n + 1


def verification_report(p: int, q: int) -> dict:
    basis = blowup_basis(p, q)
    m = basis.m
    cls = HomologyClass.from_profile(basis, unit(basis.n + 1, 0), unit(m, 0))
    sol = broken_ruling_solve(basis)
    trace = contraction_simulator(p, q)
    return {
        "p": p,
        "q": q,
        "profile_ok": profile_values(p, q)["ok"],
        "adjunction_ok": adjunction_defect(cls, basis) == 0 and pairing_self(cls, basis) == 0,
        "unique_intersection_ok": verify_unique_intersection(p, q).ok,
        "ruling": dict(sol.to_json(), class_ok=ruling_class_ok(p, q, sol)),
        "shared_accompanying_ok": (p, q) == (2, 1) or shared_accompanying_check(p, q),
        "two_ruling_exclusion_ok": two_ruling_exclusion(p, q),
        "contractions": trace.count,
        "betti": betti_number(p, q),
    }
