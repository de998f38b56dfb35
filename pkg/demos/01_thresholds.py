"""Where the λ thresholds come from.

Each critical value is the boundary root of an integer polynomial in λ.
We print the catalog, then look at λ_k as k grows.
"""
from fractions import Fraction

from cantorcert.thresholds import lambda_k_brackets, named_threshold, threshold_table

# The catalog: every covering condition on a fixed pair of basic intervals,
# written as p(λ) >= 0, with an isolating bracket for the root of p.
for row in threshold_table():
    printed = "" if row["printed"] is None else f"(printed {float(row['printed']):g})"
    print(f"{row['id']:<18} {float(row['midpoint']):.6f} {printed:<16} {row['label']}")

# The constant for xy = t is the largest of the S_t roots; it is the Table 1 row 3 condition.
top = named_threshold("theorem_constant")
print("\nbinding constant lies in", [str(top.lo), str(top.hi)], f"≈ {float(top.midpoint):.6f}")

# λ_k climbs toward 1/2.  Brackets are refined until consecutive ones are disjoint,
# so the ordering below is certified, not read off rounded decimals.
brackets = lambda_k_brackets(12, Fraction(1, 10**8))
for k, b in enumerate(brackets, 2):
    print(f"λ_{k:<2} ≈ {float(b.midpoint):.8f}   1/2 - λ_k ≈ {float(Fraction(1, 2) - b.midpoint):.2e}")
