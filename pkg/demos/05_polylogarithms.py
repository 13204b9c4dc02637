"""
Polylogarithms from the two singular forms
==========================================

The inputs 1/z and 1/(1-z) generate the polylogarithms: the word
x0^{s-1}.x1 read outermost-first evaluates to Li_s. Starting the path
at the singular point 0 is allowed; the finitely many words whose
innermost integral diverges are excluded and reported.
"""

from fractions import Fraction

from ncfps import SegmentPath, chen_series, word_text

POLYLOG = {"x0": "1/z", "x1": "1/(1-z)"}

ev = chen_series(POLYLOG, SegmentPath(0, Fraction(1, 2)), 3, tol=1e-12)
print("excluded at the singular start:", sorted(word_text(w) for w in ev.excluded))

# Li_2(1/2) and Li_3(1/2) against their series oracles.
li2 = sum(Fraction(1, 2**n) / n**2 for n in range(1, 60))
li3 = sum(Fraction(1, 2**n) / n**3 for n in range(1, 60))
print("Li_2(1/2):", ev.coeff(("x0", "x1")), "oracle", float(li2))
print("Li_3(1/2):", ev.coeff(("x0", "x0", "x1")), "oracle", float(li3))

# The same words on a regular subinterval carry the full family, no
# exclusions, so every Hopf-algebraic check applies there.
ev = chen_series(POLYLOG, SegmentPath(Fraction(1, 4), Fraction(1, 2)), 3, tol=1e-12)
print("complete on [1/4, 1/2]:", not ev.excluded)
