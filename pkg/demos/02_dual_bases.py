"""
Lyndon words and the dual pairs of graded bases
===============================================

Lyndon words index a basis of brackets P_w whose graded dual S_w is
triangular on words; on the quasi-shuffle side the same construction
starts from the primitive projector images. The diagonal series then
factors as an ordered product of exponentials over Lyndon words.
"""

from ncfps import Alphabet, basis_table, basis_table_lines, lyndon_words, msr_check, word_text

X = Alphabet.x(2)

print("Lyndon words of length <= 4:")
print(" ", [word_text(w) for w in lyndon_words(X, 4)])

# The four families on all words up to grade 3, as a table.
table = basis_table(X, 3)
for line in basis_table_lines(table)[:8]:
    print(line)

# Orthonormality: the pairing of S_u against P_v is the Kronecker delta.
words = [w for w in X.words_up_to(3) if w]
def braket(a, b):
    return sum((a.terms[w] * b.terms[w] for w in a.terms.keys() & b.terms.keys()), 0)

assert all(braket(table.S[u], table.P[v]) == (1 if u == v else 0) for u in words for v in words)
print("dual pairing is orthonormal on all", len(words), "words of grade <= 3")

# Both diagonal-series factorizations hold exactly at the bound.
ok, report = msr_check(X, 3, table=table)
print("diagonal factorization:", ok, report)

Y = Alphabet.y()
ok, report = msr_check(Y, 4)
print("graded-alphabet factorization:", ok, report)
