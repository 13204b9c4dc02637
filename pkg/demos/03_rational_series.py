"""
Rational series as weighted automata
====================================
"""

from ncfps import classify, equal, minimize, representation_of, series_of, series_text

# A rational expression compiles to a linear representation (nu, mu, eta):
# a weighted automaton whose path weights are the series coefficients.
rep = representation_of("(x0.x1)*")
print("raw dim", rep.dim)

small = minimize(rep.embed_field())
print("minimal dim", small.dim)
print(small.to_json())

# The star of opposite parameters: both sides compile to automata and the
# decision procedure settles equality exactly, no truncation involved.
left = representation_of("(-1*x0.x1)* shuffle (x0.x1)*")
right = representation_of("(-4*x0.x0.x1.x1)*")
print("identity:", equal(left, right))

# Expansion cross-checks the compiled automaton against the series product.
print(series_text(series_of("(-1*x0.x1)* shuffle (x0.x1)*", 6).poly))

# The Lie algebra generated by the minimal letter matrices stratifies the
# rational series into four classes.
for text in ["(x0 + x1)*", "x0.x1", "x0* . x1 . (-1*x0)*", "(x0.x1)*"]:
    print(f"{text:24s} ->", classify(representation_of(text)))
