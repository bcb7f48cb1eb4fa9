"""Exact rational scalars and modular-arithmetic helpers.

All exact computation in this package runs over arbitrary-precision
rationals.  We use gmpy2's ``mpq``/``mpz`` types throughout: they are
drop-in exact rationals with much faster arithmetic than
``fractions.Fraction``.

The module also provides the small number-theoretic utilities needed by
the modular fast paths (Chinese remaindering and rational
reconstruction).  Those fast paths never replace an exact certificate:
callers reconstruct a candidate and then verify it exactly.
"""

from gmpy2 import mpq, mpz, gcd as _gcd, isqrt

__all__ = [
    "QQ",
    "ZERO",
    "ONE",
    "rat",
    "is_rat",
    "numer",
    "denom",
    "lcm_denominators",
    "clear_denominators",
    "crt_pair",
    "rational_reconstruct",
    "MODULAR_PRIMES",
]

QQ = mpq
ZERO = mpq(0)
ONE = mpq(1)


def rat(p, q=1):
    """Build an exact rational from ints, strings like ``"3/4"``, or rationals."""
    if isinstance(p, str):
        return mpq(p) if q == 1 else mpq(p) / q
    return mpq(p, q)


def is_rat(x):
    """True if *x* is an exact rational/integer scalar."""
    return isinstance(x, (type(ZERO), type(mpz(0)), int))


def numer(x):
    return mpq(x).numerator


def denom(x):
    return mpq(x).denominator


def lcm_denominators(values):
    """Least common multiple of the denominators of an iterable of rationals."""
    lcm = mpz(1)
    for v in values:
        d = mpq(v).denominator
        g = _gcd(lcm, d)
        lcm = lcm // g * d
    return lcm


def clear_denominators(values):
    """Scale a list of rationals to coprime integers.

    Returns ``(ints, scale)`` where ``ints[i] == values[i] * scale`` and the
    integer entries have no common factor (unless all are zero).
    """
    values = [mpq(v) for v in values]
    lcm = lcm_denominators(values)
    ints = [mpz(v * lcm) for v in values]
    g = mpz(0)
    for v in ints:
        g = _gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
        scale = mpq(lcm, g)
    else:
        scale = mpq(lcm)
    return ints, scale


# ----------------------------------------------------------------------
# Modular helpers
# ----------------------------------------------------------------------

# Primes just below 2**20.  Residue matrices over these primes fit in
# int32/float64 with exact products: p**2 * 4096 < 2**53, so a float64 dot
# product of length <= 4096 over fully reduced residues is exact.
MODULAR_PRIMES = (
    1048573, 1048571, 1048559, 1048549, 1048517, 1048507, 1048447, 1048433,
    1048423, 1048391, 1048387, 1048367, 1048361, 1048357, 1048343, 1048309,
    1048291, 1048273, 1048261, 1048219, 1048217, 1048213, 1048193, 1048189,
    1048139, 1048129, 1048127, 1048123, 1048063, 1048051, 1048049, 1048043,
)


def crt_pair(r1, m1, r2, m2):
    """Combine residues ``x = r1 mod m1``, ``x = r2 mod m2`` (coprime moduli).

    Returns ``(r, m1*m2)`` with ``0 <= r < m1*m2``.
    """
    m1 = mpz(m1)
    m2 = mpz(m2)
    inv = pow(m1, -1, m2)
    t = ((mpz(r2) - mpz(r1)) * inv) % m2
    r = mpz(r1) + m1 * t
    m = m1 * m2
    return r % m, m


def rational_reconstruct(r, m):
    """Reconstruct p/q from its residue ``r`` mod ``m`` (Wang's algorithm).

    Finds p/q with ``p*q^{-1} = r (mod m)``, ``|p| <= sqrt(m/2)`` and
    ``0 < q <= sqrt(m/2)``, ``gcd(q, m) = 1``.  Returns an ``mpq`` or
    ``None`` when no such fraction exists (caller then adds more primes).
    """
    m = mpz(m)
    r = mpz(r) % m
    if r == 0:
        return mpq(0)
    bound = isqrt(m // 2)
    s0, s1 = m, r
    t0, t1 = mpz(0), mpz(1)
    while s1 > bound:
        q = s0 // s1
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound:
        return None
    if _gcd(t1, m) != 1:
        return None
    num, den = s1, t1
    if den < 0:
        num, den = -num, -den
    if _gcd(mpz(num), mpz(den)) != 1:
        return None
    return mpq(num, den)
