"""Continued fractions behind the Wahl singularity 1/25(1,9).

Run: python3 demos/01_continued_fractions.py
"""
from bpqtools.chains import accompanying, discrepancies, inverse_closed_form
from bpqtools.hj import contraction_sequence, hj_dual, hj_expand, wahl_chain, zero_chain

p, q = 5, 2
print(f"p/q = {p}/{q} = {list(hj_expand(p, q))}, dual p/(p-q) = {list(hj_dual(p, q))}")

w = wahl_chain(p, q)
print(f"Wahl chain p^2/(pq-1) = 25/9 = {list(w.wahl)}")
print("spliced from the two expansions: last x and last y are added, the y's reversed")

z = zero_chain(p, q)
print(f"\nzero chain {list(z)} blows down to [0]:")
for chain, pos in contraction_sequence(z):
    print(f"  {list(chain)}" + (f"  contract position {pos}" if pos else ""))

acc = accompanying(w.wahl, p * p, p * q - 1)
print(f"\naccompanying numbers e = {acc.e}, f = {acc.f}")
print("M^-1 from -e_i f_j / n:")
for row in inverse_closed_form(acc).rows:
    print("  " + "  ".join(f"{str(x):>7}" for x in row))
print(f"discrepancies k_j = {[str(k) for k in discrepancies(acc)]}  (all in (-1, 0])")
