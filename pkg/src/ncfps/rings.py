"""Exact scalar arithmetic for series coefficients.

Coefficients live in one of three domains: the rationals Q, univariate
polynomials Q[v], or univariate rational functions Q(v).  Ring descriptor
objects bundle coercion, parsing and formatting so the series and automata
layers can treat scalars uniformly.

Rational functions are kept reduced (coprime numerator/denominator, monic
denominator), which makes equality a plain structural comparison.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

__all__ = [
    "Poly",
    "RatFun",
    "poly_gcd",
    "parse_poly_text",
    "poly_text",
    "RationalRing",
    "PolynomialRing",
    "RationalFunctionRing",
    "QQ",
    "QT",
    "QZ",
    "ring_named",
]


def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


class Poly:
    """Dense univariate polynomial over Q, coefficients in ascending degree.

    Immutable once built; trailing zero coefficients are stripped so the
    tuple of coefficients is a canonical form (the zero polynomial has an
    empty tuple).
    """

    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, var, c):
        return cls(var, (c,))

    @classmethod
    def gen(cls, var):
        return cls(var, (0, 1))

    @property
    def degree(self):
        # -1 for the zero polynomial
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_const(self):
        return len(self.coeffs) <= 1

    def const_value(self):
        if not self.is_const():
            raise ValueError(f"{self!r} is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.var != self.var:
                raise ValueError(f"mixed variables {self.var!r} and {other.var!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.var, _frac(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(self.var, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly(self.var, ())
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.var, Fraction(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        o = self._coerce(other)
        if o is None or o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(self.var, ()), self
        quo = [Fraction(0)] * (dq + 1)
        lead = o.coeffs[-1]
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] -= c * b
        return Poly(self.var, quo), Poly(self.var, rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def derivative(self):
        return Poly(self.var, tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def __call__(self, x):
        acc = 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            if isinstance(x, (int, Fraction)):
                acc = acc * x + c
            else:
                acc = acc * x + float(c)
        return acc

    def shifted(self, a):
        """Substitute var -> var + a (Taylor shift)."""
        a = _frac(a)
        z = Poly(self.var, (a, Fraction(1)))
        acc = Poly(self.var, ())
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly(self.var, tuple(c / lead for c in self.coeffs))

    def content(self):
        """Positive rational c with self/c having integer, setwise-coprime coefficients."""
        num = 0
        den = 1
        for c in self.coeffs:
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        if num == 0:
            return Fraction(0)
        return Fraction(num, den)

    def root_multiplicity(self, r):
        r = _frac(r)
        lin = Poly(self.var, (-r, Fraction(1)))
        mult = 0
        p = self
        while not p.is_zero():
            q, rem = p.divmod(lin)
            if not rem.is_zero():
                break
            mult += 1
            p = q
        return mult

    def rational_roots(self):
        """All rational roots with multiplicities, by the rational root theorem."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        roots = {}
        p = self
        m0 = p.root_multiplicity(Fraction(0))
        if m0:
            roots[Fraction(0)] = m0
            p = p // Poly(self.var, (Fraction(0), Fraction(1))) ** m0
        if p.degree < 1:
            return roots
        scale = 1
        for c in p.coeffs:
            scale = scale * c.denominator // math.gcd(scale, c.denominator)
        ints = [c * scale for c in p.coeffs]
        a0 = int(ints[0])
        an = int(ints[-1])
        for num in _divisors(abs(a0)):
            for den in _divisors(abs(an)):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if cand in roots:
                        continue
                    m = p.root_multiplicity(cand)
                    if m:
                        roots[cand] = m
        return roots

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        if not isinstance(other, Poly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_const():
            return hash(self.const_value())
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"Poly({poly_text(self)!r})"


def _divisors(n):
    if n == 0:
        return []
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def poly_gcd(a, b):
    """Monic gcd of two polynomials (1 if either is a nonzero constant)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RatFun:
    """Rational function over Q: coprime numerator/denominator, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            raise TypeError("RatFun numerator must be Poly")
        if den is None:
            den = Poly.const(num.var, Fraction(1))
        if not isinstance(den, Poly) or den.var != num.var:
            raise TypeError("RatFun denominator must be Poly in the same variable")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.const(num.var, Fraction(1))
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num // g
                den = den // g
            lead = den.leading()
            if lead != 1:
                inv = Fraction(1) / lead
                num = num * inv
                den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @property
    def var(self):
        return self.num.var

    @classmethod
    def const(cls, var, c):
        return cls(Poly.const(var, c))

    def is_zero(self):
        return self.num.is_zero()

    def is_const(self):
        return self.num.is_const() and self.den.is_const()

    def const_value(self):
        return self.num.const_value() / self.den.const_value()

    def is_polynomial(self):
        return self.den.degree == 0

    def _coerce(self, other):
        if isinstance(other, RatFun):
            if other.var != self.var:
                raise ValueError("mixed variables")
            return other
        if isinstance(other, Poly):
            return RatFun(other)
        if isinstance(other, (int, Fraction)):
            return RatFun.const(self.var, _frac(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inv(self):
        return 1 / self

    def derivative(self):
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def vanishing_order_at(self, p):
        """Order of vanishing at the rational point p (negative for a pole)."""
        p = _frac(p)
        if self.is_zero():
            raise ValueError("order of the zero function is undefined")
        return self.num.root_multiplicity(p) - self.den.root_multiplicity(p)

    def residue_at(self, p):
        """Exact residue at the rational point p, by shifted Laurent expansion."""
        p = _frac(p)
        num = self.num.shifted(p)
        den = self.den.shifted(p)
        k = 0
        cs = list(den.coeffs)
        while cs and cs[0] == 0:
            cs.pop(0)
            k += 1
        if k == 0:
            return Fraction(0)
        d0 = cs  # den / v^k, nonzero constant term
        n = list(num.coeffs) + [Fraction(0)] * k
        # power-series coefficients of num/d0 up to order k-1
        series = []
        for j in range(k):
            acc = n[j] if j < len(n) else Fraction(0)
            for i in range(j):
                acc -= series[i] * (d0[j - i] if j - i < len(d0) else Fraction(0))
            series.append(acc / d0[0])
        return series[k - 1]

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            o = self._coerce(other)
            return self.num == o.num and self.den == o.den
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.var == other.var and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.num)
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_polynomial():
            return f"RatFun({poly_text(self.num)!r})"
        return f"RatFun({poly_text(self.num)!r}, {poly_text(self.den)!r})"


# ---------------------------------------------------------------------------
# text forms
#
# Polynomials print with terms in descending degree and no interior spaces,
# e.g. "z^2-1", "3/2*z^3+z-5".  This is the form embedded in coefficient
# strings like "(z^2-1)/(z)".


def poly_text(p):
    if p.is_zero():
        return "0"
    pieces = []
    for d in range(p.degree, -1, -1):
        c = p.coeffs[d]
        if not c:
            continue
        mag = abs(c)
        if d == 0:
            body = str(mag)
        else:
            v = p.var if d == 1 else f"{p.var}^{d}"
            body = v if mag == 1 else f"{mag}*{v}"
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append(("+" if c > 0 else "-") + body)
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z])|(?P<op>[\^*+\-]))")


def _tokenize_poly(s):
    toks = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ValueError(f"bad polynomial text near {s[pos:]!r}")
            break
        if m.group("rat"):
            toks.append(("rat", Fraction(m.group("rat").replace(" ", ""))))
        elif m.group("name"):
            toks.append(("name", m.group("name")))
        else:
            toks.append(("op", m.group("op")))
        pos = m.end()
    return toks


def parse_poly_text(s, var):
    """Parse the compact polynomial form, e.g. "z^2-1" or "3/2*t^3+t-5"."""
    toks = _tokenize_poly(s)
    if not toks:
        raise ValueError("empty polynomial text")
    i = 0
    result = Poly(var, ())
    sign = 1
    if toks[0] == ("op", "-"):
        sign = -1
        i = 1
    elif toks[0] == ("op", "+"):
        i = 1
    while i < len(toks):
        coeff = Fraction(1)
        have_coeff = False
        if toks[i][0] == "rat":
            coeff = toks[i][1]
            have_coeff = True
            i += 1
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
        deg = 0
        if i < len(toks) and toks[i][0] == "name":
            if toks[i][1] != var:
                raise ValueError(f"unexpected variable {toks[i][1]!r}, ring uses {var!r}")
            deg = 1
            i += 1
            if i < len(toks) and toks[i] == ("op", "^"):
                i += 1
                if i >= len(toks) or toks[i][0] != "rat" or toks[i][1].denominator != 1:
                    raise ValueError("bad exponent")
                deg = int(toks[i][1])
                i += 1
        elif not have_coeff:
            raise ValueError(f"bad polynomial term near token {toks[i]!r}")
        term = [Fraction(0)] * deg + [sign * coeff]
        result = result + Poly(var, term)
        if i == len(toks):
            break
        if toks[i][0] != "op" or toks[i][1] not in "+-":
            raise ValueError(f"expected + or - at token {toks[i]!r}")
        sign = 1 if toks[i][1] == "+" else -1
        i += 1
    return result


_RATIONAL_RE = re.compile(r"^[+-]?\d+(\s*/\s*\d+)?$")

_EXPR_TOKEN = re.compile(
    r"\s*(?:(?P<rat>\d+(?:\s*/\s*\d+)?)|(?P<name>[A-Za-z])|(?P<op>[\^*+\-/()]))"
)


def _tokenize_expr(s):
    toks = []
    pos = 0
    while pos < len(s):
        m = _EXPR_TOKEN.match(s, pos)
        if not m:
            if s[pos:].strip():
                raise ValueError(f"bad expression near {s[pos:]!r}")
            break
        if m.group("rat"):
            toks.append(("rat", Fraction(m.group("rat").replace(" ", ""))))
        elif m.group("name"):
            toks.append(("name", m.group("name")))
        else:
            toks.append(("op", m.group("op")))
        pos = m.end()
    return toks


def parse_ratfun_expr(s, var):
    """Full arithmetic grammar over Q(var): `1/z`, `1/(1-z)`, `(z^2-1)/(z)`.

    Precedence: unary sign < +,- < *,/ < ^ with a nonnegative integer
    exponent.  Every value is exact.
    """
    toks = _tokenize_expr(s)
    if not toks:
        raise ValueError("empty expression")
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take():
        t = peek()
        pos[0] += 1
        return t

    def atom():
        t = take()
        if t is None:
            raise ValueError(f"truncated expression {s!r}")
        if t[0] == "rat":
            return RatFun.const(var, t[1])
        if t[0] == "name":
            if t[1] != var:
                raise ValueError(f"unexpected variable {t[1]!r}, expected {var!r}")
            return RatFun(Poly.gen(var))
        if t == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {s!r}")
            return v
        raise ValueError(f"unexpected token {t[1]!r} in {s!r}")

    def factor():
        base = atom()
        if peek() == ("op", "^"):
            take()
            e = take()
            if e is None or e[0] != "rat" or e[1].denominator != 1 or e[1] < 0:
                raise ValueError("exponent must be a nonnegative integer")
            out = RatFun.const(var, Fraction(1))
            for _ in range(int(e[1])):
                out = out * base
            return out
        return base

    def term():
        v = factor()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = factor()
            if op == "*":
                v = v * rhs
            else:
                if rhs.is_zero():
                    raise ValueError("division by zero in expression")
                v = v / rhs
        return v

    def expr():
        sign = 1
        while peek() in (("op", "+"), ("op", "-")):
            if take()[1] == "-":
                sign = -sign
        v = term()
        if sign < 0:
            v = -v
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            v = v + rhs if op == "+" else v - rhs
        return v

    out = expr()
    if pos[0] != len(toks):
        raise ValueError(f"trailing tokens in expression {s!r}")
    return out


# ---------------------------------------------------------------------------
# ring descriptors


class RationalRing:
    """Q with exact Fraction values."""

    name = "Q"
    is_field = True

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, Poly) and x.is_const():
            return x.const_value()
        if isinstance(x, RatFun) and x.is_const():
            return x.const_value()
        raise TypeError(f"cannot coerce {x!r} into Q")

    def parse(self, s):
        s = s.strip()
        if not _RATIONAL_RE.match(s):
            raise ValueError(f"bad rational literal {s!r}")
        return Fraction(s.replace(" ", ""))

    def format(self, x):
        return str(x)

    def invert(self, x):
        return Fraction(1) / x

    def field(self):
        return self

    def embed(self, x):
        return x

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalRing()"


class PolynomialRing:
    """Q[var]: univariate polynomials; not a field."""

    is_field = False

    def __init__(self, var):
        self.var = var
        self.name = f"Q[{var}]"
        self.zero = Poly(var, ())
        self.one = Poly.const(var, Fraction(1))

    def gen(self):
        return Poly.gen(self.var)

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.var != self.var:
                raise TypeError(f"polynomial in {x.var!r}, ring uses {self.var!r}")
            return x
        if isinstance(x, (int, Fraction)):
            return Poly.const(self.var, _frac(x))
        if isinstance(x, RatFun) and x.is_polynomial() and x.var == self.var:
            # reduced form has monic denominator, so a polynomial RatFun has den == 1
            return x.num
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def parse(self, s):
        v = parse_ratfun_expr(s, self.var)
        if not v.is_polynomial():
            raise ValueError(f"{s!r} is not a polynomial in {self.var}")
        return v.num

    def format(self, x):
        if x.is_const():
            return str(x.const_value())
        return f"({poly_text(x)})"

    def invert(self, x):
        # units of Q[v] are the nonzero constants
        if not x.is_const() or x.is_zero():
            raise ValueError(f"{x!r} is not a unit in {self.name}")
        return Poly.const(self.var, Fraction(1) / x.const_value())

    def field(self):
        return RationalFunctionRing(self.var)

    def embed(self, x):
        return RatFun(self.coerce(x))

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other.var == self.var

    def __hash__(self):
        return hash(("Q[]", self.var))

    def __repr__(self):
        return f"PolynomialRing({self.var!r})"


class RationalFunctionRing:
    """Q(var): univariate rational functions; a field."""

    is_field = True

    def __init__(self, var):
        self.var = var
        self.name = f"Q({var})"
        self.zero = RatFun(Poly(var, ()))
        self.one = RatFun(Poly.const(var, Fraction(1)))

    def gen(self):
        return RatFun(Poly.gen(self.var))

    def coerce(self, x):
        if isinstance(x, RatFun):
            if x.var != self.var:
                raise TypeError(f"rational function in {x.var!r}, ring uses {self.var!r}")
            return x
        if isinstance(x, Poly):
            if x.var != self.var:
                raise TypeError(f"polynomial in {x.var!r}, ring uses {self.var!r}")
            return RatFun(x)
        if isinstance(x, (int, Fraction)):
            return RatFun.const(self.var, _frac(x))
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def parse(self, s):
        return parse_ratfun_expr(s, self.var)

    def format(self, x):
        if x.is_polynomial():
            if x.num.is_const():
                return str(x.num.const_value())
            return f"({poly_text(x.num)})"
        return f"({poly_text(x.num)})/({poly_text(x.den)})"

    def invert(self, x):
        if x.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def field(self):
        return self

    def embed(self, x):
        return self.coerce(x)

    def __eq__(self, other):
        return isinstance(other, RationalFunctionRing) and other.var == self.var

    def __hash__(self):
        return hash(("Q()", self.var))

    def __repr__(self):
        return f"RationalFunctionRing({self.var!r})"


QQ = RationalRing()
QT = PolynomialRing("t")
QZ = RationalFunctionRing("z")

_RINGS = {
    "Q": QQ,
    "Q[t]": QT,
    "Q[z]": PolynomialRing("z"),
    "Q(t)": RationalFunctionRing("t"),
    "Q(z)": QZ,
}


def ring_named(name):
    try:
        return _RINGS[name]
    except KeyError:
        raise ValueError(f"unknown coefficient ring {name!r}") from None
