"""Pin-ball non-squeezing and which pinwheels fit inside B_{p,q}.

Run: python3 demos/04_embeddings.py
"""
from fractions import Fraction

from bpqtools.embeddings import NonsqueezeQuery, classify_pinwheels, cm_area, cm_coefficient, nonsqueeze_verdict

p, q = 5, 2
print(f"C_m has area t*alpha*{cm_area(p, q, 1)} and coefficient {cm_coefficient(p, q)}; "
      f"their product is -t*alpha")
for alpha in (Fraction(1, 2), Fraction(1), Fraction(3, 2)):
    v = nonsqueeze_verdict(NonsqueezeQuery(p, q, alpha, 1))
    print(f"  B_{{5,2}}({alpha}) into the pin-cylinder of size 1: {v.label}")

print("\npinwheels admitted by the intersection arithmetic:")
for p, q in [(5, 2), (7, 3), (8, 1), (12, 5)]:
    res = classify_pinwheels(p, q)
    print(f"  B_{{{p},{q}}}: candidates {len(res.candidates)}, admissible {res.sorted()}")
