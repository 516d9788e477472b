"""The ruling through the pinwheel of B_{4,1} and its broken fibre.

Run: python3 demos/03_regulation_b41.py
"""
from bpqtools.regulation import (
    HomologyClass, adjunction_defect, blowup_basis, broken_ruling_solve, contraction_simulator,
    pairing_self, ruling_intersections, unit, verify_unique_intersection,
)

p, q = 4, 1
basis = blowup_basis(p, q)
cls = HomologyClass.from_profile(basis, unit(basis.n + 1, 0), unit(basis.m, 0))
print(f"class with D-profile e_1 and C-profile e_1: square {pairing_self(cls, basis)}, "
      f"adjunction defect {adjunction_defect(cls, basis)}")
rep = verify_unique_intersection(p, q)
print(f"zero-defect profiles {rep.defect_zero}, of which square zero: {rep.square_zero}")

sol = broken_ruling_solve(basis)
print(f"\nbroken ruling: C-multiplicities {sol.alpha}, D-multiplicities {sol.beta}, E with {sol.epsilon}")
print(f"E meets C_{sol.r} and D_{sol.s}; intersections with the configuration:")
print("  " + ", ".join(f"{k}:{v}" for k, v in ruling_intersections(p, q, sol).items()))

print("\ncontracting the broken fibre between C_1 and D_0:")
for s in contraction_simulator(p, q).steps:
    print(f"  {s.left:>3} | {list(s.chain)} | {s.right:+d}")
