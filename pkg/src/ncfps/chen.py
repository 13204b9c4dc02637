"""Numeric evaluation of word-indexed iterated integrals along real segments.

Every letter of an X-type alphabet is assigned an integrable scalar control,
and each word w = x_{i_1} ... x_{i_k} denotes the iterated integral of the
corresponding controls over the ordered simplex of the segment.  The family of
all such coefficients is the signature-type evaluation driving the rest of the
toolkit: pairing it against a linear representation sums the series of a
rational generating function, and the same data feeds the group-likeness and
primitivity diagnostics.

The quadrature engine shares one composite Gauss-Legendre mesh across all
words.  On each panel the running integrand is projected on the Legendre basis
of its node values, which makes the panel antiderivative available at the
quadrature nodes themselves; the whole triangular family is then filled in by
word length, reusing every suffix.  The a-posteriori error of a coefficient is
the change under one global mesh refinement, and refinement repeats until the
worst estimate clears the requested tolerance.

A segment may start at an endpooint where some control blows up, as long as the
integrands stay integrable; the mesh is then graded geometrically toward that
endpoint.  Words whose innermost integral diverges there are excluded from bulk
evaluation and raise when requested individually.  Interior singularities and a
singular far endpoint are rejected outright: no regularization is attempted.
"""

import math
import re
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp

from .diffring import q_l, specialize
from .linalg import left_kernel
from .rings import QQ, QZ, Poly, RatFun, poly_gcd, poly_text
from .series import NCPolynomial, TensorPoly, TruncatedSeries, shuffle_words, unshuffle
from .words import Alphabet, parse_word, word_text


# ---------------------------------------------------------------------------
# double-precision coefficient ring, for numeric series manipulation


class FloatRing:
    """Double-precision stand-in for the exact coefficient descriptors."""

    name = "R"
    is_field = True

    zero = 0.0
    one = 1.0

    def coerce(self, x):
        if isinstance(x, (float, int, Fraction)):
            return float(x)
        raise TypeError(f"cannot coerce {x!r} into R")

    def parse(self, s):
        return float(s)

    def format(self, x):
        return repr(x)

    def invert(self, x):
        if x == 0.0:
            raise ZeroDivisionError("inverse of zero")
        return 1.0 / x

    def field(self):
        return self

    def embed(self, x):
        return x

    def __eq__(self, other):
        return isinstance(other, FloatRing)

    def __hash__(self):
        return hash("R")

    def __repr__(self):
        return "FloatRing()"


RR = FloatRing()


# ---------------------------------------------------------------------------
# the control catalog


def _poly_vals(p, z):
    out = np.zeros_like(z)
    for c in reversed(p.coeffs):
        out = out * z + float(c)
    return out


_INV_Z = QZ.parse("1/z")
_INV_1MZ = QZ.parse("1/(1-z)")
_POW_RE = re.compile(r"pow\(\s*z\s*,\s*([^)]+)\)\Z")


class InputFunction:
    """One scalar control attached to a letter.

    The catalog covers constants, 1/z, 1/(1-z), exp(z), real powers of z, and
    arbitrary rational functions of z.  Each kind knows its singular points,
    its vanishing order at a rational abscissa, and a sup bound on a segment;
    the bound is exact for the monotone catalog forms and a sampled estimate
    for general rational inputs.  Kinds that admit one also expose an exact
    rational-function view, which the symbolic pipeline requires.
    """

    __slots__ = ("kind", "value", "ratfun")

    def __init__(self, kind, value, ratfun):
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "ratfun", ratfun)

    def __setattr__(self, name, value):
        raise AttributeError("InputFunction is immutable")

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls("const", c, RatFun.const("z", c))

    @classmethod
    def inv_z(cls):
        return cls("inv_z", None, _INV_Z)

    @classmethod
    def inv_1mz(cls):
        return cls("inv_1mz", None, _INV_1MZ)

    @classmethod
    def exp(cls):
        return cls("exp", None, None)

    @classmethod
    def power(cls, a):
        if isinstance(a, float) and not math.isfinite(a):
            raise ValueError("power exponent must be finite")
        if isinstance(a, int):
            a = Fraction(a)
        exact = None
        if isinstance(a, Fraction) and a.denominator == 1:
            k = int(a)
            z = Poly.gen("z")
            exact = RatFun(z**k) if k >= 0 else RatFun(Poly.const("z", Fraction(1)), z ** (-k))
        return cls("pow", a, exact)

    @classmethod
    def rational(cls, f):
        if isinstance(f, str):
            f = QZ.parse(f)
        f = QZ.coerce(f)
        if f.is_const():
            return cls.const(f.const_value())
        if f == _INV_Z:
            return cls.inv_z()
        if f == _INV_1MZ:
            return cls.inv_1mz()
        return cls("rational", f, f)

    @classmethod
    def from_text(cls, s):
        s = s.strip()
        if s in ("exp", "exp(z)"):
            return cls.exp()
        m = _POW_RE.match(s)
        if m:
            body = m.group(1).strip()
            try:
                a = Fraction(body)
            except ValueError:
                a = float(body)
            return cls.power(a)
        return cls.rational(QZ.parse(s))

    @classmethod
    def of(cls, obj):
        if isinstance(obj, cls):
            return obj
        if isinstance(obj, str):
            return cls.from_text(obj)
        if isinstance(obj, (int, Fraction)):
            return cls.const(obj)
        if isinstance(obj, float):
            return cls.const(Fraction(obj))
        if isinstance(obj, (Poly, RatFun)):
            return cls.rational(QZ.coerce(obj))
        raise TypeError(f"cannot interpret {obj!r} as an input function")

    # -- pointwise evaluation

    def evaluate(self, z):
        k = self.kind
        if k == "const":
            return float(self.value)
        if k == "inv_z":
            return 1.0 / z
        if k == "inv_1mz":
            return 1.0 / (1.0 - z)
        if k == "exp":
            return math.exp(z)
        if k == "pow":
            return z ** float(self.value)
        return self._rat_eval(z)

    def _rat_eval(self, z):
        num = 0.0
        for c in reversed(self.value.num.coeffs):
            num = num * z + float(c)
        den = 0.0
        for c in reversed(self.value.den.coeffs):
            den = den * z + float(c)
        return num / den

    def eval_array(self, z):
        k = self.kind
        if k == "const":
            return np.full_like(z, float(self.value))
        if k == "inv_z":
            return 1.0 / z
        if k == "inv_1mz":
            return 1.0 / (1.0 - z)
        if k == "exp":
            return np.exp(z)
        if k == "pow":
            return z ** float(self.value)
        return _poly_vals(self.value.num, z) / _poly_vals(self.value.den, z)

    # -- analytic structure

    def vanishing_order_at(self, p):
        """Exponent of the leading behavior c*(z-p)^q near a rational point."""
        p = Fraction(p)
        k = self.kind
        if k == "const":
            return math.inf if self.value == 0 else 0
        if k == "inv_z":
            return -1 if p == 0 else 0
        if k == "inv_1mz":
            return -1 if p == 1 else 0
        if k == "exp":
            return 0
        if k == "pow":
            return float(self.value) if p == 0 else 0
        if self.value.is_zero():
            return math.inf
        return self.value.vanishing_order_at(p)

    def sup_on(self, lo, hi):
        """(bound on sup |u| over [lo, hi], whether the bound is exact)."""
        k = self.kind
        if k == "const":
            return abs(float(self.value)), True
        if k == "inv_z":
            if lo <= 0.0 <= hi:
                return math.inf, True
            return 1.0 / min(abs(lo), abs(hi)), True
        if k == "inv_1mz":
            if lo <= 1.0 <= hi:
                return math.inf, True
            return 1.0 / min(abs(1.0 - lo), abs(1.0 - hi)), True
        if k == "exp":
            return math.exp(hi), True
        if k == "pow":
            a = float(self.value)
            vals = []
            for e in (lo, hi):
                if e == 0.0:
                    if a < 0.0:
                        return math.inf, True
                    vals.append(1.0 if a == 0.0 else 0.0)
                else:
                    vals.append(abs(e) ** a if e > 0 else abs(e ** a))
            return max(vals), True
        zs = np.linspace(lo, hi, 513)
        den = _poly_vals(self.value.den, zs)
        if np.any(den == 0.0):
            return math.inf, True
        return float(np.max(np.abs(_poly_vals(self.value.num, zs) / den))), False

    def validate_on(self, path):
        """Check the control against a segment.

        Returns "regular" or "singular_start"; raises for an interior
        singularity, a singular far endpoint, a domain violation, or a
        denominator root that the exact arithmetic cannot locate.
        """
        lo, hi = path.lo_exact, path.hi_exact
        k = self.kind
        singular = ()
        status = "regular"
        if k == "inv_z":
            singular = (Fraction(0),)
        elif k == "inv_1mz":
            singular = (Fraction(1),)
        elif k == "pow":
            a = self.value
            fractional = isinstance(a, float) or a.denominator != 1
            if fractional and lo < 0:
                raise ValueError("fractional powers need a nonnegative segment")
            if a < 0:
                singular = (Fraction(0),)
            elif fractional and path.z0_exact == 0:
                # continuous but not smooth at the start; grade the mesh
                status = "singular_start"
        elif k == "rational":
            singular = tuple(self.value.den.rational_roots())
            self._scan_denominator(path, singular)
        for s in singular:
            if lo < s < hi:
                raise ValueError(f"input singular at {s}, inside the path")
            if s == path.z1_exact:
                raise ValueError(f"input singular at the far endpoint {s}")
            if s == path.z0_exact:
                status = "singular_start"
        return status

    def _scan_denominator(self, path, known):
        zs = np.linspace(path.lo, path.hi, 513)
        dv = _poly_vals(self.value.den, zs)
        scale = max(1.0, float(np.max(np.abs(dv))))
        knownf = [float(r) for r in known]
        flips = np.nonzero((np.sign(dv[:-1]) * np.sign(dv[1:]) < 0) | (np.abs(dv[:-1]) < 1e-12 * scale))[0]
        for i in flips:
            z = zs[i]
            if all(abs(z - r) > 1e-6 * (1.0 + abs(z)) for r in knownf):
                raise ValueError("denominator vanishes at a non-rational point on the path")

    def __repr__(self):
        if self.kind in ("const", "pow"):
            return f"InputFunction({self.kind!r}, {self.value!r})"
        if self.kind == "rational":
            return f"InputFunction({self.kind!r}, {QZ.format(self.value)})"
        return f"InputFunction({self.kind!r})"


# ---------------------------------------------------------------------------
# integration segments


def _exact_point(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, str)):
        return Fraction(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("path endpoints must be finite")
        return Fraction(v)
    raise TypeError(f"cannot interpret {v!r} as a path endpoint")


class SegmentPath:
    """Oriented real segment from z0 to z1.

    Endpoints are kept both as doubles and as exact rationals; the exact
    values drive all singularity placement tests, so that a path touching a
    catalog singularity is recognized reliably.
    """

    __slots__ = ("z0", "z1", "z0_exact", "z1_exact")

    def __init__(self, z0, z1):
        e0 = _exact_point(z0)
        e1 = _exact_point(z1)
        if e0 == e1:
            raise ValueError("path endpoints must differ")
        object.__setattr__(self, "z0", float(e0))
        object.__setattr__(self, "z1", float(e1))
        object.__setattr__(self, "z0_exact", e0)
        object.__setattr__(self, "z1_exact", e1)

    def __setattr__(self, name, value):
        raise AttributeError("SegmentPath is immutable")

    @classmethod
    def of(cls, obj):
        if isinstance(obj, cls):
            return obj
        if isinstance(obj, (tuple, list)) and len(obj) == 2:
            return cls(obj[0], obj[1])
        raise TypeError(f"cannot interpret {obj!r} as a path")

    @property
    def length(self):
        return abs(self.z1 - self.z0)

    @property
    def lo(self):
        return min(self.z0, self.z1)

    @property
    def hi(self):
        return max(self.z0, self.z1)

    @property
    def lo_exact(self):
        return min(self.z0_exact, self.z1_exact)

    @property
    def hi_exact(self):
        return max(self.z0_exact, self.z1_exact)

    def __repr__(self):
        return f"SegmentPath({self.z0!r}, {self.z1!r})"


# ---------------------------------------------------------------------------
# the shared quadrature mesh

_PANEL = 16


def _gauss_tables():
    x, w = np.polynomial.legendre.leggauss(_PANEL)
    p = np.zeros((_PANEL + 1, _PANEL))
    p[0] = 1.0
    p[1] = x
    for m in range(1, _PANEL):
        p[m + 1] = ((2 * m + 1) * x * p[m] - m * p[m - 1]) / (m + 1)
    # node values -> Legendre coefficients of the degree-15 interpolant; the
    # quadrature is exact to degree 31, so the projection is the interpolant
    coef = ((2.0 * np.arange(_PANEL) + 1.0) / 2.0)[:, None] * (w[None, :] * p[:_PANEL])
    anti = np.zeros((_PANEL, _PANEL))
    anti[:, 0] = x + 1.0
    for m in range(1, _PANEL):
        anti[:, m] = (p[m + 1] - p[m - 1]) / (2 * m + 1)
    return x, w, anti @ coef


_NODES, _WEIGHTS, _CUM = _gauss_tables()


class _Mesh:
    """Composite Gauss-Legendre mesh on the unit parameter interval."""

    __slots__ = ("breaks", "half", "t")

    def __init__(self, breaks):
        breaks = np.asarray(breaks, dtype=float)
        a, b = breaks[:-1], breaks[1:]
        self.breaks = breaks
        self.half = (b - a) / 2.0
        self.t = ((a + b) / 2.0)[:, None] + self.half[:, None] * _NODES[None, :]

    def refined(self):
        mid = (self.breaks[:-1] + self.breaks[1:]) / 2.0
        out = np.empty(self.breaks.size + mid.size)
        out[0::2] = self.breaks
        out[1::2] = mid
        return _Mesh(out)


def _initial_mesh(singular_start):
    if singular_start:
        pts = sorted({0.0, 1.0, 0.5, 0.625, 0.75, 0.875} | {4.0**-k for k in range(1, 9)})
        return _Mesh(pts)
    return _Mesh(np.linspace(0.0, 1.0, 9))


def _mesh_values(mesh, path, inputs, chain, p=1):
    """Coefficients of a suffix-closed, length-sorted family on one mesh.

    `p` reparametrizes the segment as z(s) = z0 + (z1 - z0) s^p; with p large
    enough every integrable integrand vanishes at a singular start, restoring
    panelwise polynomial accuracy there.
    """
    dz = path.z1 - path.z0
    if p == 1:
        zs = path.z0 + dz * mesh.t
        jac = dz
    else:
        zs = path.z0 + dz * mesh.t**p
        jac = dz * p * mesh.t ** (p - 1)
    needed = {w[0] for w in chain}
    u = {x: inputs[x].eval_array(zs) * jac for x in needed}
    vals = {(): np.ones_like(mesh.t)}
    out = {(): 1.0}
    for w in chain:
        g = u[w[0]] * vals[w[1:]]
        per_panel = (g @ _WEIGHTS) * mesh.half
        running = np.cumsum(per_panel)
        vals[w] = (running - per_panel)[:, None] + mesh.half[:, None] * (g @ _CUM.T)
        out[w] = float(running[-1])
    return out


def _adaptive_values(path, inputs, chain, tol, singular_start, p=1):
    mesh = _initial_mesh(singular_start)
    prev = _mesh_values(mesh, path, inputs, chain, p)
    worst = 0.0
    for _ in range(4):
        mesh = mesh.refined()
        cur = _mesh_values(mesh, path, inputs, chain, p)
        err = {w: abs(cur[w] - prev[w]) for w in chain}
        worst = max(err.values(), default=0.0)
        if worst <= tol:
            return cur, err
        prev = cur
    raise RuntimeError(f"quadrature error estimate {worst:.3e} exceeds the tolerance {tol:.3e}")


# ---------------------------------------------------------------------------
# integrability at a singular start


def _exponent_profile(word, orders):
    """(integrable, smallest stage exponent) from the order recursion.

    Walking the word from its innermost integral, each stage multiplies the
    accumulated antiderivative (leading exponent acc) by the control (leading
    exponent orders[x]) and integrates; an exponent of exactly -1 diverges
    logarithmically and is rejected.
    """
    acc = 0.0
    emin = math.inf
    for x in reversed(word):
        e = orders[x] + acc
        if not e > -1.0 + 1e-12:
            return False, emin
        emin = min(emin, e)
        acc = e + 1.0
    return True, emin


def _power_param(orders, emin):
    """Reparametrization power for a singular start.

    Integer control orders leave every integrable integrand analytic at the
    endpoint, so the graded mesh alone suffices.  Fractional orders get the
    power substitution lifting the smallest stage exponent to at least 2.
    """
    finite = [o for o in orders.values() if o != math.inf]
    if all(float(o).is_integer() for o in finite):
        return 1
    if not math.isfinite(emin):
        return 1
    return min(64, max(2, math.ceil(3.0 / (emin + 1.0))))


def _prepare_inputs(inputs, path):
    clean = {}
    for x, f in inputs.items():
        clean[x] = InputFunction.of(f)
    alphabet = Alphabet.from_letters(sorted(clean))
    singular_start = False
    for f in clean.values():
        if f.validate_on(path) == "singular_start":
            singular_start = True
    return clean, alphabet, singular_start


# ---------------------------------------------------------------------------
# evaluations


class ChenEvaluation:
    """All iterated-integral coefficients of one segment up to a length bound.

    `values` maps each included word to a double, `errors` to its a-posteriori
    quadrature estimate; the empty word carries exactly 1.  `excluded` lists
    the words dropped because their innermost integral diverges at a singular
    start endpoint.
    """

    __slots__ = ("alphabet", "inputs", "path", "bound", "values", "errors", "excluded")

    def __init__(self, alphabet, inputs, path, bound, values, errors, excluded):
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "inputs", dict(inputs))
        object.__setattr__(self, "path", path)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "values", dict(values))
        object.__setattr__(self, "errors", dict(errors))
        object.__setattr__(self, "excluded", frozenset(excluded))

    def __setattr__(self, name, value):
        raise AttributeError("ChenEvaluation is immutable")

    def coeff(self, w):
        w = tuple(w)
        if w in self.values:
            return self.values[w]
        if w in self.excluded:
            raise ValueError(f"{word_text(w)} diverges at the path endpoint")
        raise KeyError(word_text(w))

    def error(self, w):
        return self.errors[tuple(w)]

    def __repr__(self):
        return (
            f"ChenEvaluation({self.alphabet.name}, {self.path!r}, bound={self.bound}, "
            f"{len(self.values)} words)"
        )


def chen_series(inputs, path, bound, tol=1e-10):
    """Evaluate all words of length <= bound over the given controls.

    The triangular family is integrated in order of word length, each word
    reusing its immediate suffix, so the whole evaluation costs one quadrature
    sweep per word.  At a singular start endpoint, words with divergent
    innermost integrals are excluded rather than regularized.
    """
    path = SegmentPath.of(path)
    if bound < 0:
        raise ValueError("the length bound must be nonnegative")
    clean, alphabet, singular_start = _prepare_inputs(inputs, path)
    words = sorted(alphabet.words_up_to(bound, include_empty=False), key=lambda w: (len(w), alphabet.word_key(w)))
    excluded = set()
    p = 1
    if singular_start:
        orders = {x: f.vanishing_order_at(path.z0_exact) for x, f in clean.items()}
        emin = math.inf
        kept = []
        for w in words:
            ok, e = _exponent_profile(w, orders)
            if ok:
                kept.append(w)
                emin = min(emin, e)
            else:
                excluded.add(w)
        words = kept
        p = _power_param(orders, emin)
    out, err = _adaptive_values(path, clean, words, tol, singular_start, p)
    values = {(): 1.0}
    errors = {(): 0.0}
    for w in words:
        values[w] = out[w]
        errors[w] = err[w]
    return ChenEvaluation(alphabet, clean, path, bound, values, errors, excluded)


def iterated_integral(word, inputs, path, tol=1e-10):
    """One iterated integral, by integrating the suffix chain of the word."""
    if isinstance(word, str):
        word = parse_word(word)
    word = tuple(word)
    path = SegmentPath.of(path)
    clean, alphabet, singular_start = _prepare_inputs(inputs, path)
    alphabet.validate_word(word)
    if not word:
        return 1.0
    p = 1
    if singular_start:
        orders = {x: f.vanishing_order_at(path.z0_exact) for x, f in clean.items()}
        ok, emin = _exponent_profile(word, orders)
        if not ok:
            raise ValueError(f"{word_text(word)} is not integrable at the path endpoint")
        p = _power_param(orders, emin)
    chain = [word[i:] for i in range(len(word) - 1, -1, -1)]
    out, _ = _adaptive_values(path, clean, chain, tol, singular_start, p)
    return out[word]


# ---------------------------------------------------------------------------
# structural diagnostics


def friedrichs_check(ev, tol=None):
    """Worst multiplicativity defect |<S,u sh v> - <S,u><S,v>|.

    The defect of the exact evaluation vanishes identically; the returned
    maximum over all pairs with |u| + |v| <= bound measures the numerical
    quality of the evaluation.  `tol` is accepted so drivers can thread a
    target through to their reports; it does not affect the computation.
    """
    del tol
    vals = ev.values
    words = sorted(vals, key=len)
    worst = 0.0
    for i, u in enumerate(words):
        lu = len(u)
        for v in words[i:]:
            if lu + len(v) > ev.bound:
                continue
            acc = 0.0
            ok = True
            for w, c in shuffle_words(u, v):
                cw = vals.get(w)
                if cw is None:
                    # possible only for pairs mixing excluded structure
                    ok = False
                    break
                acc += c * cw
            if ok:
                worst = max(worst, abs(acc - vals[u] * vals[v]))
    return worst


def primitive_log_check(ev, tol=None):
    """Worst primitivity defect of the logarithm of the evaluation.

    The concatenation log of a group-like series is primitive for the
    coproduct dual to the shuffle; the returned maximum is the largest
    coefficient of the reduced coproduct of any homogeneous component of the
    log.  Needs the complete evaluation to length >= 2.
    """
    del tol
    if ev.bound < 2:
        raise ValueError("the primitivity check needs coefficients to length at least 2")
    if ev.excluded:
        raise ValueError("the primitivity check needs a complete evaluation; choose a path avoiding the singular endpoint")
    series = NCPolynomial(ev.alphabet, RR, dict(ev.values))
    logarithm = TruncatedSeries(series, ev.bound).log()
    one = NCPolynomial.one(ev.alphabet, RR)
    worst = 0.0
    for g in range(1, ev.bound + 1):
        h = logarithm.poly.homogeneous_component(g)
        if h.is_zero():
            continue
        defect = unshuffle(h) - TensorPoly.of(h, one) - TensorPoly.of(one, h)
        for c in defect.terms.values():
            worst = max(worst, abs(c))
    return worst


def flow_compose(second, first):
    """Coefficients along the concatenated path, from the two legs.

    `first` evaluates the leg entered first; `second` must start where it
    ends.  The composed coefficient of w sums second[u] * first[v] over all
    splittings w = uv, matching the evaluation along the full path.
    """
    if not isinstance(first, ChenEvaluation) or not isinstance(second, ChenEvaluation):
        raise TypeError("flow composition needs two evaluations")
    if first.alphabet != second.alphabet:
        raise ValueError("the legs use different alphabets")
    if abs(first.path.z1 - second.path.z0) > 1e-12:
        raise ValueError("the second leg must start where the first ends")
    bound = min(first.bound, second.bound)
    out = {}
    for w in sorted(first.alphabet.words_up_to(bound), key=lambda w: (len(w), first.alphabet.word_key(w))):
        acc = 0.0
        ok = True
        for i in range(len(w) + 1):
            cu = second.values.get(w[:i])
            cv = first.values.get(w[i:])
            if cu is None or cv is None:
                ok = False
                break
            acc += cu * cv
        if ok:
            out[w] = acc
    return out


# ---------------------------------------------------------------------------
# pairing with a linear representation


class PairingResult:
    """Value of a series-evaluation pairing with a certified tail bound."""

    __slots__ = ("value", "tail", "certified")

    def __init__(self, value, tail, certified):
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "certified", certified)

    def __setattr__(self, name, value):
        raise AttributeError("PairingResult is immutable")

    def __iter__(self):
        return iter((self.value, self.tail, self.certified))

    def __repr__(self):
        return f"PairingResult({self.value!r}, tail={self.tail!r}, certified={self.certified})"


def _inf_norm(m):
    if not m:
        return 0.0
    return max(sum(abs(float(c)) for c in row) for row in m)


def pair_series(ev, rep):
    """Sum the represented series against the evaluation, with a tail bound.

    The value truncates the pairing at the evaluation's length bound L; the
    tail uses |coefficient of w| <= (sup|u| * |path|)^|w| / |w|! (simplex
    volume) and the multiplicative sup matrix norm, giving
    ||nu||_1 ||eta||_inf c^(L+1)/(L+1)! e^c with c = (#letters) * max||mu(x)||
    * max sup|u_x| * |path|.  The bound is certified when every control's sup
    is exact; sampled sup estimates and unbounded controls clear the flag.
    """
    if rep.ring != QQ:
        raise ValueError("the pairing needs a representation with rational coefficients")
    if ev.excluded:
        raise ValueError("the pairing needs a complete evaluation; choose a path avoiding the singular endpoint")
    if rep.dim == 0:
        return PairingResult(0.0, 0.0, True)
    mats = {x: np.array([[float(c) for c in row] for row in rep.mu[x]]) for x in rep.mu}
    nu = np.array([float(c) for c in rep.nu])
    eta = np.array([float(c) for c in rep.eta])
    prefixes = {(): nu}

    def prefix(w):
        v = prefixes.get(w)
        if v is None:
            m = mats.get(w[-1])
            v = prefix(w[:-1]) @ m if m is not None else None
            prefixes[w] = v
        return v

    value = 0.0
    for w, c in ev.values.items():
        v = prefix(w)
        if v is not None:
            value += c * float(v @ eta)

    mu_norm = max((_inf_norm(rep.mu[x]) for x in ev.inputs if x in rep.mu), default=0.0)
    k = float(np.sum(np.abs(nu))) * float(np.max(np.abs(eta)))
    sup = 0.0
    certified = True
    for f in ev.inputs.values():
        s, exact = f.sup_on(ev.path.lo, ev.path.hi)
        certified = certified and exact
        sup = max(sup, s)
    c = len(ev.inputs) * mu_norm * sup * ev.path.length
    if math.isfinite(c):
        lead = c ** (ev.bound + 1) / math.factorial(ev.bound + 1)
        try:
            tail = k * lead * math.exp(c)
        except OverflowError:
            tail = math.inf
    else:
        tail = math.inf if k > 0.0 and mu_norm > 0.0 else 0.0
        certified = False
    if not math.isfinite(tail):
        certified = False
    return PairingResult(value, tail, certified)


def _ode_state(rep, inputs, path, tol):
    clean, _, singular_start = _prepare_inputs(inputs, path)
    if singular_start:
        raise ValueError("the flow evaluator needs controls regular on the closed segment")
    mats = {x: np.array([[float(c) for c in row] for row in rep.mu[x]]) for x in clean if x in rep.mu}
    eta = np.array([float(c) for c in rep.eta])
    if not mats:
        return clean, eta

    funcs = [(clean[x], m) for x, m in mats.items()]

    def rhs(z, q):
        acc = np.zeros_like(q)
        for f, m in funcs:
            acc += f.evaluate(z) * (m @ q)
        return acc

    rtol = max(tol, 1e-13)
    sol = solve_ivp(rhs, (path.z0, path.z1), eta, method="DOP853", rtol=rtol, atol=rtol / 10.0)
    if not sol.success:
        raise RuntimeError(f"flow integration failed: {sol.message}")
    return clean, sol.y[:, -1]


def pair_ode(rep, inputs, path, tol=1e-10):
    """Sum the represented series by integrating its linear state flow.

    The state q obeys dq/dz = (sum_x u_x(z) mu(x)) q from q(z0) = eta, and the
    value is nu . q(z1); this is the same pairing as `pair_series` without a
    truncation error, at the cost of a Runge-Kutta tolerance.
    """
    if rep.ring != QQ:
        raise ValueError("the pairing needs a representation with rational coefficients")
    path = SegmentPath.of(path)
    if rep.dim == 0:
        return 0.0
    _, q = _ode_state(rep, inputs, path, tol)
    nu = np.array([float(c) for c in rep.nu])
    return float(nu @ q)


# ---------------------------------------------------------------------------
# exact scalar differential equations


def _exact_controls(inputs):
    clean = {}
    for x, f in inputs.items():
        f = InputFunction.of(f)
        if f.ratfun is None:
            raise ValueError(f"the control for {x} must be a rational function of z")
        clean[x] = f
    return clean


def _multiplier_row(rep, alphabet, assignment, l, word_cache):
    """nu . (extension of mu to the specialized l-th derivation multiplier)."""
    p = specialize(q_l(alphabet, l), assignment)
    n = rep.dim
    row = [QZ.zero] * n
    for w, c in p.terms.items():
        vec = _multiplier_prefix(rep, w, word_cache)
        if vec is None:
            continue
        row = [row[j] + c * vec[j] for j in range(n)]
    return tuple(row)


def _multiplier_prefix(rep, w, word_cache):
    if w in word_cache:
        return word_cache[w]
    if not w:
        vec = tuple(QZ.coerce(c) for c in rep.nu)
    elif w[-1] not in rep.mu:
        vec = None
    else:
        prev = _multiplier_prefix(rep, w[:-1], word_cache)
        vec = _row_times_matrix(prev, rep.mu[w[-1]]) if prev is not None else None
    word_cache[w] = vec
    return vec


def _row_times_matrix(vec, m):
    n = len(vec)
    return tuple(sum((vec[i] * QZ.coerce(m[i][j]) for i in range(n)), QZ.zero) for j in range(n))


def _multiplier_rows(rep, inputs, count):
    clean = _exact_controls(inputs)
    alphabet = Alphabet.from_letters(sorted(clean))
    assignment = {x: f.ratfun for x, f in clean.items()}
    word_cache = {}
    return [_multiplier_row(rep, alphabet, assignment, l, word_cache) for l in range(count)]


def pair_ode_derivatives(rep, inputs, path, orders, tol=1e-10):
    """Endpoint derivatives d^l y for l = 0..orders, via the state flow.

    The l-th derivative of the pairing equals the specialized l-th multiplier
    row applied to the flow state, so one integration yields all orders.
    """
    if rep.ring != QQ:
        raise ValueError("the pairing needs a representation with rational coefficients")
    path = SegmentPath.of(path)
    if rep.dim == 0:
        return [0.0] * (orders + 1)
    _, q = _ode_state(rep, inputs, path, tol)
    rows = _multiplier_rows(rep, inputs, orders + 1)
    z = path.z1
    out = []
    for row in rows:
        out.append(float(sum(float(f(Fraction(z))) * qi for f, qi in zip(row, q))))
    return out


def _poly_lcm(a, b):
    g = poly_gcd(a, b)
    return (a * b) // g


def _normalize_ode(kernel_vector):
    den = Poly.const("z", Fraction(1))
    for f in kernel_vector:
        den = _poly_lcm(den, f.den)
    polys = [(f * RatFun(den)).num for f in kernel_vector]
    g = None
    for p in polys:
        if not p.is_zero():
            g = p if g is None else poly_gcd(g, p)
    polys = [p // g for p in polys]
    num = 0
    d = 1
    for p in polys:
        for c in p.coeffs:
            num = math.gcd(num, abs(c.numerator))
            d = d * c.denominator // math.gcd(d, c.denominator)
    if num:
        scale = Fraction(d, num)
        polys = [p * scale for p in polys]
    if polys[-1].leading() < 0:
        polys = [p * Fraction(-1) for p in polys]
    return polys


def derive_scalar_ode(rep, inputs, n_max=None):
    """Least-order scalar linear ODE satisfied by the pairing.

    Returns polynomial coefficients a_0..a_N with sum a_l(z) d^l y = 0, found
    as the first linear dependence among the specialized multiplier rows over
    Q(z); N never exceeds the representation dimension.  The coefficient list
    is normalized: denominators cleared, common polynomial factor removed,
    integer coefficients made setwise coprime, and the leading coefficient of
    the top-order term positive.
    """
    if rep.ring != QQ:
        raise ValueError("the representation must have rational coefficients")
    n = rep.dim
    if n == 0:
        return [Poly.const("z", Fraction(1))]
    if n_max is None:
        n_max = n
    if n_max < n:
        raise ValueError("the order cap must be at least the representation dimension")
    clean = _exact_controls(inputs)
    alphabet = Alphabet.from_letters(sorted(clean))
    assignment = {x: f.ratfun for x, f in clean.items()}
    word_cache = {}
    rows = []
    for l in range(n_max + 1):
        rows.append(_multiplier_row(rep, alphabet, assignment, l, word_cache))
        kernel = left_kernel(QZ, tuple(rows))
        if kernel:
            return _normalize_ode(kernel[0])
    raise RuntimeError("no dependence found below the order cap")


_ATOM_RE = re.compile(r"-?(\d+(/\d+)?|z(\^\d+)?|\d+(/\d+)?\*z(\^\d+)?)\Z")


def scalar_ode_text(coeffs):
    """Human-readable form of a scalar ODE coefficient list."""
    pieces = []
    for l in range(len(coeffs) - 1, -1, -1):
        p = coeffs[l]
        if p.is_zero():
            continue
        dy = "y" + ("'" * l if l <= 3 else f"^({l})")
        txt = poly_text(p)
        if txt == "1":
            pieces.append(("+", dy))
        elif txt == "-1":
            pieces.append(("-", dy))
        else:
            sign = "+"
            if txt.startswith("-") and _ATOM_RE.match(txt):
                sign, txt = "-", txt[1:]
            if not _ATOM_RE.match(txt):
                txt = f"({txt})"
            pieces.append((sign, f"{txt}*{dy}"))
    if not pieces:
        return "0 = 0"
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {'-' if sign == '-' else '+'} {body}"
    return out + " = 0"
