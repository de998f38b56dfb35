"""Gaps in f_k(C_λ, C_λ) seen through finite ranks.

The rank-m union of basic intervals contains the Cantor set, so the image
of that union contains the true image.  Gaps found at rank m are real gaps.
An image with no gaps at rank m says nothing on its own.
"""
from fractions import Fraction

from cantorcert.coverage import certify_fk_coverage, gap_report

third = Fraction(1, 3)

# At λ = 1/3, x^3 y already fills [0, 1] at rank 2 while x^4 y leaves two holes.
for k in (3, 4):
    rep = gap_report(k, third, 2)
    print(f"k={k}: union {rep.union}")
    for g in rep.gaps:
        print(f"      gap ({g.lo}, {g.hi})")

# Raising the rank can only shrink the union, so the k=4 gaps survive and more appear.
for m in range(1, 6):
    rep = gap_report(4, third, m)
    print(f"k=4, rank {m}: {len(rep.union)} parts, total gap length {float(sum(g.hi - g.lo for g in rep.gaps)):.5f}")

# The two verdicts agree: the lemma-based certificate fails at the same point.
cert = certify_fk_coverage(4, third)
print("\ncertificate:", "passed" if cert.passed else f"failed at {cert.first_failure.label}")

# Near λ_2 the finite-rank picture is gap-free, but only the certificate proves coverage.
for lam in ("0.45", "0.47"):
    rep = gap_report(2, Fraction(lam), 6)
    cert = certify_fk_coverage(2, Fraction(lam))
    print(f"λ={lam}: rank-6 gaps {len(rep.gaps)}, certificate passed {cert.passed}")
