"""
Words, shuffles, and quasi-shuffles
===================================

The two alphabets and the three products on words: concatenation,
the shuffle, and the quasi-shuffle with its contraction terms.
"""

from fractions import Fraction

from ncfps import Alphabet, NCPolynomial, TruncatedSeries, series_text, shuffle_words, stuffle_words

# The finite alphabet x0 < x1; grading is word length.
X = Alphabet.x(2)
print("letters:", X.letters)

# Shuffling two words interleaves them in every order-preserving way.
for w, c in shuffle_words(("x0", "x1"), ("x1",)):
    print(c, ".".join(w))

# On the graded alphabet y1, y2, ... adjacent letters may also contract,
# adding their indices; that is the quasi-shuffle.
Y = Alphabet.y()
print([(".".join(w), c) for w, c in stuffle_words(("y1",), ("y2",))])

# Polynomials collect words with exact rational coefficients.
from ncfps import QQ

p = NCPolynomial(X, QQ, {("x0",): Fraction(1), ("x1",): Fraction(-2)})
q = NCPolynomial(X, QQ, {("x1",): Fraction(1, 3)})
print("conc    :", series_text(p * q))
print("shuffle :", series_text(p.shuffle(q)))

# A proper series has a Kleene star; truncation keeps everything exact.
s = TruncatedSeries(p, 4).star()
print("star    :", series_text(s.poly))
