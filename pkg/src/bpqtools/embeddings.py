"""Non-squeezing bounds for pin-balls and the classification of pinwheels in B_{p,q}."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .chains import accompanying, inverse_closed_form
from .hj import _check_pq, mod_inverse, wahl_chain
from .regulation import (
    HomologyClass,
    adjunction_defect,
    blowup_basis,
    chi_candidates,
    pairing_self,
    unit,
)

FIRST_AXIS = "first-axis"
SECOND_AXIS = "second-axis"


@dataclass(frozen=True)
class NonsqueezeQuery:
    p: int
    q: int
    alpha: Fraction
    lam: Fraction
    cylinder_kind: str = FIRST_AXIS

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.alpha <= 0 or self.lam <= 0:
            raise ValueError("alpha and lambda must be positive")
        if self.cylinder_kind not in (FIRST_AXIS, SECOND_AXIS):
            raise ValueError(f"unknown cylinder kind {self.cylinder_kind!r}")
        _check_pq(self.p, self.q)


@dataclass(frozen=True)
class Verdict:
    obstructed: bool
    bound: Fraction
    reason: str

    @property
    def label(self) -> str:
        return "obstructed" if self.obstructed else "embeddable-allowed"

    def to_json(self):
        return {"verdict": self.label, "bound": {"num": self.bound.numerator, "den": self.bound.denominator},
                "reason": self.reason}


def cm_direction(p: int, q: int) -> tuple:
    """Primitive direction of the last Wahl sphere C_m in the base diagram."""
    v = (p * p - (p * q + 1), p * q - (q * q + 1))
    if gcd(*v) != 1:
        raise AssertionError(f"direction {v} is not primitive")
    return v


def cm_area(p: int, q: int, t_alpha) -> Fraction:
    """Symplectic area t alpha p^2 / (p^2 - (pq+1)) of C_m."""
    _check_pq(p, q)
    den = p * p - (p * q + 1)
    if den == 0:
        raise AssertionError("p^2 = pq + 1 cannot happen for valid (p,q)")
    return Fraction(t_alpha) * p * p / den


def cm_coefficient(p: int, q: int) -> Fraction:
    """c_m = -(p^2 - (pq+1))/p^2 = -[pq-1]^-1 / p^2."""
    _check_pq(p, q)
    inv = mod_inverse(p * q - 1, p * p) if p > 1 else 1
    value = Fraction(-(p * p - (p * q + 1)), p * p)
    if value != Fraction(-inv, p * p):
        raise AssertionError("p^2 - (pq+1) is not the inverse of pq-1 mod p^2")
    return value


def cm_coefficient_from_matrix(p: int, q: int) -> Fraction:
    """(m, m) entry of M_C^-1, i.e. the coefficient of C_m in M_C^-1 e_m."""
    w = wahl_chain(p, q).wahl
    inv = inverse_closed_form(accompanying(w, p * p, p * q - 1))
    return inv[len(w) - 1, len(w) - 1]


def nonsqueeze_verdict(query: NonsqueezeQuery) -> Verdict:
    """B_{p,q}(alpha) into a pin-cylinder of size lambda is obstructed iff alpha > lambda.

    Positivity of the ruling area reads 0 <= lambda + c_m area(C_m), and
    c_m area(C_m) = -alpha exactly, for either cylinder.  At alpha = lambda
    the pin-ball diagram sits inside the cylinder diagram.
    """
    p, q = query.p, query.q
    slack = query.lam + cm_coefficient(p, q) * cm_area(p, q, query.alpha)
    if slack != query.lam - query.alpha:
        raise AssertionError("c_m area(C_m) did not cancel to -alpha")
    if slack < 0:
        return Verdict(True, query.lam, "alpha > lambda: the ruling would have negative area")
    return Verdict(False, query.lam, "alpha <= lambda: the pin-ball diagram includes into the cylinder diagram")


def cylinder_asymmetry_note(p: int, q: int) -> str:
    """Informational only: both cylinder kinds give the same bound here."""
    if p >= 3:
        return "both cylinders give the bound alpha <= lambda; they are not expected to be symplectomorphic for p >= 3"
    return "for p = 2 the two cylinders are related by the symmetry of the diagram"


@dataclass(frozen=True)
class ClassificationResult:
    p: int
    q: int
    admissible: frozenset
    candidates: tuple = ()

    def sorted(self) -> list:
        return sorted(self.admissible)

    def to_json(self):
        return {"p": self.p, "q": self.q, "admissible": [list(x) for x in self.sorted()],
                "candidates": [list(x) for x in self.candidates]}


def pinwheel_candidates(p: int) -> list:
    """(m, n) with m | p, m >= 2 and 0 < n < m coprime."""
    return [(m, n) for m in range(2, p + 1) if p % m == 0 for n in range(1, m) if gcd(m, n) == 1]


def pinwheel_adjunction_closed_form(p: int, m: int, e: int, f: int) -> Fraction:
    """-(1/l^2 - 1 + (e-1)(f-1)) / (2 m^2) with l = p/m."""
    l2 = Fraction(p, m) ** 2
    return -(1 / l2 - 1 + (e - 1) * (f - 1)) / (2 * m * m)


def embedded_pinwheel_ok(p: int, q: int, m: int, n: int) -> bool:
    """Is there a profile chi with zero defect and zero square in the mixed basis?

    The ambient divisor is that of (p,q); the Wahl chain is that of (m,n).
    """
    basis = blowup_basis(p, q, m, n)
    xi = unit(basis.n + 1, 0)
    acc = basis.acc_C
    _, zero = chi_candidates(basis)
    for chi in zero:
        cls = HomologyClass.from_profile(basis, xi, chi)
        d = adjunction_defect(cls, basis)
        if sum(chi) == 1:
            j = chi.index(1) + 1
            if d != pinwheel_adjunction_closed_form(p, m, acc.e[j], acc.f[j]):
                raise AssertionError(f"closed form disagrees at ({p},{q}) with ({m},{n}), j = {j}")
        if d == 0 and pairing_self(cls, basis) == 0:
            return True
    return False


def classify_pinwheels(p: int, q: int) -> ClassificationResult:
    _check_pq(p, q)
    cands = pinwheel_candidates(p)
    ok = frozenset(c for c in cands if embedded_pinwheel_ok(p, q, *c))
    if not ok <= {(p, q), (p, p - q)}:
        raise AssertionError(f"unexpected pinwheels {sorted(ok)} in B_({p},{q})")
    return ClassificationResult(p, q, ok, tuple(cands))
