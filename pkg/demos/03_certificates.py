"""Certificates for the three covering statements.

A certificate is a list of exact comparisons.  When all of them hold, the
covering lemmas turn them into a statement about the whole Cantor set.
"""
from fractions import Fraction

from cantorcert.coverage import certify

# xy = t has continuum many solutions for every t in (0, 1) once λ clears 0.4302.
print(certify("st", Fraction("0.4302")).summary())
print()

# Just below, three of the pair conditions break.
print(certify("st", Fraction("0.42")).summary())
print()

# x^2 y covers [0, 1] from λ_2 ≈ 0.4641 upward.
for lam in ("0.46", "0.47"):
    cert = certify("fk", Fraction(lam), k=2)
    print(f"f_2 at λ={lam}: {'certified' if cert.passed else 'not certified'}")

# The circle statement needs all four circle pairs; pair 3 binds at about 0.459.
for lam in ("0.45", "0.46"):
    cert = certify("circle", Fraction(lam))
    print(f"circle at λ={lam}: {'certified' if cert.passed else 'fails ' + cert.first_failure.label}")

# Certificates are plain JSON with every number as an exact "p/q" string.
print(certify("fk", Fraction("0.47"), k=2).to_json()[:400], "...")
