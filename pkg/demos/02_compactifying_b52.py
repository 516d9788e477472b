"""Capping B_{5,2} to X_{5,2}: divisor, blow-down to F_2 and the base diagram.

Run: python3 demos/02_compactifying_b52.py [output.svg]
"""
import sys

from bpqtools.atf import compactification_diagram, divisor_profile_from_diagram, emit_svg
from bpqtools.compactify import blowdown_to_hirzebruch, compactifying_divisor, sign_audit

p, q = 5, 2
data = compactifying_divisor(p, q)
print(f"d0 = {data.d0}, [q^2]^-1 mod (pq-1) = {data.dual_index_q2}, tail = {list(data.tail)}")
print(f"divisor profile (D0, D1, ..., Dn) = {data.profile}")
print(f"distinguished exceptional sphere meets D_{data.distinguished_index}")

print("\nbroken fibre blow-down (left section | fibre chain | right section):")
for s in blowdown_to_hirzebruch(p, q).steps:
    print(f"  {s.left:>3} | {list(s.chain)} | {s.right:+d}")
print("ends at a 0-fibre between sections -2 and +2, so X_{5,2} blows down to F_2")

audit = sign_audit(p, q)
print(f"\nblock inverse of M_D: corrected sign matches = {audit['corrected_matches']}, "
      f"uncorrected sign matches = {audit['uncorrected_matches']}")

d = compactification_diagram(p, q)
print(f"\nself-intersections read off the diagram edges: {divisor_profile_from_diagram(d)}")
out = sys.argv[1] if len(sys.argv) > 1 else "compactify_5_2.svg"
with open(out, "w") as fh:
    fh.write(emit_svg(d))
print(f"diagram written to {out}")
