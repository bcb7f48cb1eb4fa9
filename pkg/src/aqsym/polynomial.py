"""Sparse multivariate polynomials and rational functions over Q.

Polynomials are stored as dicts mapping exponent tuples to nonzero
rational coefficients.  The coordinate functions of an n-dimensional
chart are named ``h1, h2, ..., hm`` (variable order ``h1 < h2 < ...``),
and the term order used for leading terms and canonical signs is graded
lexicographic: terms compare first by total degree, then by exponents of
the highest-numbered variable downwards.

``RatFunc`` is the fraction field.  Every rational function is kept in
canonical form: numerator and denominator coprime, denominator an
integer-primitive polynomial with positive leading coefficient.  This
makes equality a plain dict comparison and normalization idempotent.

Example
-------
>>> h2, h3, h4 = (Poly.var(i, 4) for i in (1, 2, 3))
>>> alpha2 = h2*h2 + h3*h3 + h4*h4
>>> (RatFunc(h2 * alpha2, alpha2)).num == h2
True
"""

from gmpy2 import mpq, mpz, gcd as _zgcd

from .errors import ZeroDenominator

__all__ = ["Poly", "RatFunc", "grlex_key", "as_ratfunc"]


def grlex_key(exps):
    """Sort key realizing the graded-lex order with h1 < h2 < ... < hm."""
    return (sum(exps), tuple(reversed(exps)))


class Poly:
    """Sparse polynomial in ``nvars`` variables with rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None, normalize=True):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif normalize:
            self.terms = {e: mpq(c) for e, c in terms.items() if c != 0}
        else:
            self.terms = terms

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {}, normalize=False)

    @classmethod
    def const(cls, c, nvars):
        c = mpq(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, normalize=False)

    @classmethod
    def one(cls, nvars):
        return cls.const(1, nvars)

    @classmethod
    def var(cls, i, nvars):
        """The coordinate function ``h{i+1}`` (0-based index *i*)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): mpq(1)}, normalize=False)

    @classmethod
    def monomial(cls, exps, c, nvars):
        c = mpq(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, {tuple(exps): c}, normalize=False)

    # -- basic queries ---------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self):
        if not self.terms:
            return mpq(0)
        return self.terms[(0,) * self.nvars]

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def leading(self):
        """(exponent tuple, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, type(mpq(0)), type(mpz(0)))):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, type(mpq(0)), type(mpz(0)))):
            return Poly.const(other, self.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(self.terms) < len(other.terms):
            self, other = other, self
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            if s is None:
                terms[e] = c
            else:
                s = s + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Poly(self.nvars, terms, normalize=False)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()},
                    normalize=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)), type(mpz(0)))):
            c = mpq(other)
            if c == 0:
                return Poly.zero(self.nvars)
            return Poly(self.nvars, {e: k * c for e, k in self.terms.items()},
                        normalize=False)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly.zero(self.nvars)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e)
                if s is None:
                    out[e] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Poly(self.nvars, out, normalize=False)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a Poly; use RatFunc")
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, type(mpq(0)), type(mpz(0)))):
            if other == 0:
                raise ZeroDenominator("division by zero")
            return self * mpq(1, other)
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self, i):
        """Partial derivative with respect to variable *i* (0-based)."""
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = e[:i] + (k - 1,) + e[i + 1:]
                out[e2] = out.get(e2, mpq(0)) + c * k
        return Poly(self.nvars, out)

    def eval(self, point):
        """Evaluate at a point given as a sequence of rationals."""
        total = mpq(0)
        powers = {}
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    p = powers.get(key)
                    if p is None:
                        p = mpq(point[i]) ** k
                        powers[key] = p
                    v = v * p
            total += v
        return total

    def eval_mod(self, point, p):
        """Evaluate at an integer point modulo prime *p* (coefficients may
        be rational; their denominators must be invertible mod p)."""
        total = 0
        for e, c in self.terms.items():
            v = int(c.numerator) % p
            d = int(c.denominator) % p
            if d != 1:
                v = v * pow(d, -1, p) % p
            for i, k in enumerate(e):
                if k:
                    v = v * pow(point[i] % p, k, p) % p
            total = (total + v) % p
        return total

    # -- integer normalization, gcd ------------------------------------------

    def primitive(self):
        """Write ``self = content * prim`` with *prim* integer-primitive and
        positive-leading under graded-lex.  Returns ``(prim, content)``;
        the zero polynomial yields ``(0, 0)``."""
        if not self.terms:
            return self, mpq(0)
        lcm = mpz(1)
        for c in self.terms.values():
            d = c.denominator
            g = _zgcd(lcm, d)
            lcm = lcm // g * d
        ints = {e: mpz(c * lcm) for e, c in self.terms.items()}
        g = mpz(0)
        for v in ints.values():
            g = _zgcd(g, v)
        lead = max(ints, key=grlex_key)
        sign = 1 if ints[lead] > 0 else -1
        g = g * sign
        prim = Poly(self.nvars, {e: mpq(v, g) for e, v in ints.items()},
                    normalize=False)
        return prim, mpq(g, lcm)

    def __str__(self):
        if not self.terms:
            return "0"
        def mono(e):
            parts = []
            for i, k in enumerate(e):
                if k == 1:
                    parts.append("h%d" % (i + 1))
                elif k > 1:
                    parts.append("h%d^%d" % (i + 1, k))
            return "*".join(parts)
        items = sorted(self.terms.items(), key=lambda t: grlex_key(t[0]),
                       reverse=True)
        out = []
        for e, c in items:
            m = mono(e)
            if not m:
                s = str(c)
            elif c == 1:
                s = m
            elif c == -1:
                s = "-" + m
            else:
                s = "%s*%s" % (c, m)
            if out and not s.startswith("-"):
                out.append("+" + s)
            else:
                out.append(s)
        return "".join(out)

    __repr__ = __str__


# --------------------------------------------------------------------------
# Exact division and gcd
# --------------------------------------------------------------------------

def poly_divexact(f, g):
    """Exact multivariate division ``f / g``; returns None when not exact."""
    if g.is_zero():
        raise ZeroDenominator("exact division by the zero polynomial")
    if f.is_zero():
        return Poly.zero(f.nvars)
    if g.is_constant():
        return f * (1 / g.constant_value())
    ge, gc = g.leading()
    rem = Poly(f.nvars, dict(f.terms), normalize=False)
    out = {}
    while rem.terms:
        re, rc = rem.leading()
        qe = tuple(a - b for a, b in zip(re, ge))
        if any(k < 0 for k in qe):
            return None
        qc = rc / gc
        out[qe] = qc
        rem = rem - Poly.monomial(qe, qc, f.nvars) * g
    return Poly(f.nvars, out)


def _min_exponents(f):
    it = iter(f.terms)
    m = list(next(it))
    for e in it:
        for i, k in enumerate(e):
            if k < m[i]:
                m[i] = k
    return tuple(m)


def _shift_down(f, shift):
    if not any(shift):
        return f
    return Poly(f.nvars,
                {tuple(a - b for a, b in zip(e, shift)): c
                 for e, c in f.terms.items()}, normalize=False)


def _univar_view(f, v):
    """Coefficients of f as a dict {degree in var v: Poly without v}."""
    out = {}
    for e, c in f.terms.items():
        k = e[v]
        e2 = e[:v] + (0,) + e[v + 1:]
        coeff = out.setdefault(k, {})
        coeff[e2] = coeff.get(e2, mpq(0)) + c
    return {k: Poly(f.nvars, t) for k, t in out.items() if any(t.values())}


def _from_univar(coeffs, v, nvars):
    terms = {}
    for k, poly in coeffs.items():
        for e, c in poly.terms.items():
            terms[e[:v] + (k,) + e[v + 1:]] = c
    return Poly(nvars, terms)


def _content_in(f, v):
    """gcd of the coefficients of f viewed as univariate in variable v."""
    cont = Poly.zero(f.nvars)
    for poly in _univar_view(f, v).values():
        cont = poly_gcd(cont, poly)
        if cont.is_constant() and not cont.is_zero():
            break
    return cont


def _prem(f, g, v):
    """Pseudo-remainder of f by g with respect to variable v."""
    df = f.degree_in(v)
    dg = g.degree_in(v)
    gv = _univar_view(g, v)
    lc_g = gv[dg]
    rem = f
    x = Poly.var(v, f.nvars)
    while not rem.is_zero() and rem.degree_in(v) >= dg:
        dr = rem.degree_in(v)
        rv = _univar_view(rem, v)
        lc_r = rv[dr]
        rem = rem * lc_g - g * lc_r * x ** (dr - dg)
    return rem


def poly_gcd(f, g):
    """gcd in Q[h1..hm], normalized integer-primitive with positive leading
    coefficient (graded-lex).  ``poly_gcd(0, 0) == 0``."""
    if f.is_zero():
        return g.primitive()[0] if not g.is_zero() else g
    if g.is_zero():
        return f.primitive()[0]
    f = f.primitive()[0]
    g = g.primitive()[0]
    if f.is_constant() or g.is_constant():
        return Poly.one(f.nvars)
    mf = _min_exponents(f)
    mg = _min_exponents(g)
    common = tuple(min(a, b) for a, b in zip(mf, mg))
    f = _shift_down(f, mf)
    g = _shift_down(g, mg)
    h = _gcd_shiftfree(f, g)
    if any(common):
        h = Poly(h.nvars,
                 {tuple(a + b for a, b in zip(e, common)): c
                  for e, c in h.terms.items()}, normalize=False)
    return h


def _gcd_shiftfree(f, g):
    if f.is_constant() or g.is_constant():
        return Poly.one(f.nvars)
    if f.terms == g.terms:
        return f
    # quick exact-division shortcuts
    if len(f.terms) >= len(g.terms):
        if poly_divexact(f, g) is not None:
            return g
    else:
        if poly_divexact(g, f) is not None:
            return f
    v = max(i for i in range(f.nvars)
            if f.degree_in(i) > 0 or g.degree_in(i) > 0)
    if f.degree_in(v) == 0:
        return poly_gcd(f, _content_in(g, v))
    if g.degree_in(v) == 0:
        return poly_gcd(_content_in(f, v), g)
    cf = _content_in(f, v)
    cg = _content_in(g, v)
    cont = poly_gcd(cf, cg)
    a = poly_divexact(f, cf)
    b = poly_divexact(g, cg)
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    while not b.is_zero() and b.degree_in(v) > 0:
        r = _prem(a, b, v)
        a = b
        if r.is_zero():
            b = r
        else:
            b = poly_divexact(r, _content_in(r, v))
            b = b.primitive()[0]
    if b.is_zero():
        prim = poly_divexact(a, _content_in(a, v)).primitive()[0]
    else:
        prim = Poly.one(f.nvars)
    return (cont * prim).primitive()[0]


# --------------------------------------------------------------------------
# Rational functions
# --------------------------------------------------------------------------

def as_ratfunc(x, nvars):
    """Coerce a scalar or Poly to a canonical RatFunc."""
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, Poly):
        return RatFunc(x, Poly.one(nvars))
    return RatFunc(Poly.const(x, nvars), Poly.one(nvars))


class RatFunc:
    """Canonical-form rational function num/den over Q[h1..hm]."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        if den is None:
            den = Poly.one(num.nvars)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c, nvars):
        return cls(Poly.const(c, nvars), Poly.one(nvars), reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, Poly.one(other.nvars), reduced=True)
        if isinstance(other, (int, type(mpq(0)), type(mpz(0)))):
            return RatFunc.const(other, self.num.nvars)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        b, d = self.den, other.den
        g = poly_gcd(b, d)
        if g.is_constant():
            num = self.num * d + other.num * b
            den = b * d
        else:
            b1 = poly_divexact(b, g)
            d1 = poly_divexact(d, g)
            num = self.num * d1 + other.num * b1
            den = b1 * d
        return RatFunc(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)), type(mpz(0)))):
            return RatFunc(self.num * other, self.den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc.const(0, self.num.nvars)
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        a = self.num if g1.is_constant() else poly_divexact(self.num, g1)
        d = other.den if g1.is_constant() else poly_divexact(other.den, g1)
        c = other.num if g2.is_constant() else poly_divexact(other.num, g2)
        b = self.den if g2.is_constant() else poly_divexact(self.den, g2)
        return RatFunc(a * c, b * d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDenominator("division by the zero rational function")
        return self * RatFunc(other.den, other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if k < 0:
            if self.num.is_zero():
                raise ZeroDenominator("negative power of zero")
            return RatFunc(self.den ** (-k), self.num ** (-k))
        return RatFunc(self.num ** k, self.den ** k)

    def derivative(self, i):
        num = self.num.derivative(i) * self.den - self.num * self.den.derivative(i)
        if self.den.is_constant():
            return RatFunc(num * (1 / self.den.constant_value()),
                           Poly.one(self.num.nvars))
        return RatFunc(num, self.den * self.den)

    def eval(self, point):
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDenominator("evaluation at a pole")
        return self.num.eval(point) / d

    def eval_mod(self, point, p):
        d = self.den.eval_mod(point, p)
        if d == 0:
            raise ZeroDenominator("evaluation at a pole (mod p)")
        return self.num.eval_mod(point, p) * pow(d, -1, p) % p

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _reduce(num, den):
    """Canonical form: coprime, denominator integer-primitive positive-leading."""
    if num.is_zero():
        return num, Poly.one(num.nvars)
    np_, nc = num.primitive()
    dp, dc = den.primitive()
    g = poly_gcd(np_, dp)
    if not g.is_constant():
        np_ = poly_divexact(np_, g)
        dp = poly_divexact(dp, g)
    return np_ * (nc / dc), dp
