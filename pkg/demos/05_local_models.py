"""Numerical checks of the local formulas near a pinwheel.

Run: python3 demos/05_local_models.py
"""
import math

from bpqtools import local_models as lm

print("Lagrangian residual of the good collar (central differences, h = 1e-4):")
for p, q in [(2, 1), (5, 2), (7, 3)]:
    print(f"  ({p},{q}): {lm.lagrangian_check(p, q, 64):.2e}, observed order {lm.convergence_order(p, q):.3f}")
print(f"  exact residual: {lm.lagrangian_symbolic(5, 2)}")

pts = lm.random_points(100)
print(f"\nstraightening map with eta = sin: max |J^T Omega J - Omega| = {lm.straightening_check(math.sin, pts):.2e}")

worst, move = lm.quotient_action_residual(3, 1)
print(f"Z/3 action on z1 z2 = z3^3 + 1: residual {worst:.2e}, least displacement {move:.3f}")
