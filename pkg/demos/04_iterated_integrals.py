"""
Iterated integrals of a word family
===================================

Evaluating every word up to a length bound over concrete input forms
gives the truncated signature of the path; the exponential and the
logarithm of the family certify its group-likeness numerically.
"""

import math
from fractions import Fraction

from ncfps import SegmentPath, chen_series, friedrichs_check, primitive_log_check, word_text

# Constant input 1 on [0, 1/2]: the word x0^n integrates to z^n/n!.
ev = chen_series({"x0": "1"}, SegmentPath(0, Fraction(1, 2)), 5, tol=1e-12)
for n in range(4):
    w = ("x0",) * n
    print(word_text(w), ev.coeff(w), "closed form", 0.5**n / math.factorial(n))

# The input 1/z on [1, 2] produces powers of log 2.
ev = chen_series({"x0": "1/z"}, SegmentPath(1, 2), 4, tol=1e-12)
print("log 2 ->", ev.coeff(("x0",)), math.log(2))

# Group-likeness: coefficients multiply along shuffles. The defect of the
# numerical family is the quadrature error, nothing more.
print("multiplicativity defect:", friedrichs_check(ev))

# Equivalently the logarithm of the family is primitive.
print("log primitivity defect :", primitive_log_check(ev))
