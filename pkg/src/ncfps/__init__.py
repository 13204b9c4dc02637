"""Noncommutative formal power series: Hopf algebra combinatorics on words,
weighted-automaton representations of rational series, and evaluation of the
corresponding iterated integrals.

The package is organized in layers.  `words` fixes the two alphabets and the
word combinatorics; `series` adds polynomials and truncated series under
concatenation, shuffle, and quasi-shuffle; `bases` builds the dual pairs of
graded bases from Lyndon words; `automata` represents rational series by
finite linear machines and decides equality, minimality, and Lie type;
`diffring` and `chen` connect the algebra to analysis, evaluating words as
iterated integrals and deriving the scalar linear ODE a rational pairing
satisfies; `exprs` and `cli` expose the whole stack through a small
expression language.
"""

from .words import Alphabet, word_text, parse_word, lyndon_words, lyndon_factorization
from .rings import (
    QQ,
    QT,
    QZ,
    Poly,
    RatFun,
    RationalRing,
    PolynomialRing,
    RationalFunctionRing,
    ring_named,
    poly_text,
    poly_gcd,
    parse_ratfun_expr,
)
from .series import (
    NCPolynomial,
    TensorPoly,
    TruncatedSeries,
    shuffle_words,
    stuffle_words,
    deconcat,
    unshuffle,
    unstuffle,
    series_text,
    parse_series_text,
)
from .bases import (
    BasisTable,
    basis_P,
    basis_S,
    basis_Pi,
    basis_Sigma,
    basis_table,
    basis_table_lines,
    msr_check,
    eulerian_pi1,
    phi_pi1,
)
from .automata import (
    LinearRepresentation,
    rep_word,
    rep_polynomial,
    rep_scalar,
    rep_sum,
    rep_conc,
    rep_star,
    rep_shuffle,
    rep_stuffle,
    minimize,
    equal,
    kronecker_form,
    lie_closure,
    classify,
    nilpotent_decompose,
    sweedler_split,
)
from .diffring import q_l, q_l_explicit, specialize, independence_criterion, parse_input_assignment
from .chen import (
    InputFunction,
    SegmentPath,
    ChenEvaluation,
    chen_series,
    iterated_integral,
    friedrichs_check,
    primitive_log_check,
    flow_compose,
    PairingResult,
    pair_series,
    pair_ode,
    pair_ode_derivatives,
    derive_scalar_ode,
    scalar_ode_text,
)
from .exprs import parse_expression, series_of, representation_of, ExprSyntaxError

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "word_text",
    "parse_word",
    "lyndon_words",
    "lyndon_factorization",
    "QQ",
    "QT",
    "QZ",
    "Poly",
    "RatFun",
    "RationalRing",
    "PolynomialRing",
    "RationalFunctionRing",
    "ring_named",
    "poly_text",
    "poly_gcd",
    "parse_ratfun_expr",
    "NCPolynomial",
    "TensorPoly",
    "TruncatedSeries",
    "shuffle_words",
    "stuffle_words",
    "deconcat",
    "unshuffle",
    "unstuffle",
    "series_text",
    "parse_series_text",
    "BasisTable",
    "basis_P",
    "basis_S",
    "basis_Pi",
    "basis_Sigma",
    "basis_table",
    "basis_table_lines",
    "msr_check",
    "eulerian_pi1",
    "phi_pi1",
    "LinearRepresentation",
    "rep_word",
    "rep_polynomial",
    "rep_scalar",
    "rep_sum",
    "rep_conc",
    "rep_star",
    "rep_shuffle",
    "rep_stuffle",
    "minimize",
    "equal",
    "kronecker_form",
    "lie_closure",
    "classify",
    "nilpotent_decompose",
    "sweedler_split",
    "q_l",
    "q_l_explicit",
    "specialize",
    "independence_criterion",
    "parse_input_assignment",
    "InputFunction",
    "SegmentPath",
    "ChenEvaluation",
    "chen_series",
    "iterated_integral",
    "friedrichs_check",
    "primitive_log_check",
    "flow_compose",
    "PairingResult",
    "pair_series",
    "pair_ode",
    "pair_ode_derivatives",
    "derive_scalar_ode",
    "scalar_ode_text",
    "parse_expression",
    "series_of",
    "representation_of",
    "ExprSyntaxError",
]
