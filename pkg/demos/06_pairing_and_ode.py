"""
Pairing a rational series with the integral family
==================================================

A rational series paired against the iterated integrals of a segment is
a number. Two independent routes compute it: truncate the pairing with a
certified tail bound, or integrate the finite linear ODE the automaton
satisfies. A third, exact route eliminates the state and returns the
scalar linear ODE obeyed by the pairing as a function of the endpoint.
"""

import math
from fractions import Fraction

from ncfps import (
    SegmentPath,
    chen_series,
    derive_scalar_ode,
    minimize,
    pair_ode,
    pair_series,
    representation_of,
    scalar_ode_text,
)

# (x0)* against the constant input on [0, 1]: the pairing sums 1/n!.
rep = minimize(representation_of("x0*").embed_field())
path = SegmentPath(0, 1)
ev = chen_series({"x0": "1"}, path, 12, tol=1e-12)
value, tail, certified = pair_series(ev, rep)
print("series route:", value, "tail", tail, "certified", certified)
print("ode route   :", pair_ode(rep, {"x0": "1"}, path, tol=1e-12))
print("closed form :", math.e)

# The geometric series against 1/(1-z) on [0, 1/2] sums to 2.
rep = minimize(representation_of("x1*").embed_field())
inputs = {"x1": "1/(1-z)"}
ev = chen_series(inputs, SegmentPath(0, Fraction(1, 2)), 12, tol=1e-12)
print("geometric   :", pair_series(ev, rep).value)

# Eliminating the automaton state gives the scalar equation in closed form.
print("scalar ODE  :", scalar_ode_text(derive_scalar_ode(rep, inputs)))

# The dilogarithm generator satisfies an order-2 equation.
rep = minimize(representation_of("(x0.x1)*").embed_field())
coeffs = derive_scalar_ode(rep, {"x0": "1/z", "x1": "1/(1-z)"})
print("dilog ODE   :", scalar_ode_text(coeffs))
