import random

import pytest
from gmpy2 import mpq

from aqsym.errors import ZeroDenominator
from aqsym.polynomial import Poly, RatFunc, poly_divexact, poly_gcd


def vars4():
    return [Poly.var(i, 4) for i in range(4)]


def alpha2():
    _, h2, h3, h4 = vars4()
    return h2 * h2 + h3 * h3 + h4 * h4


def test_poly_arithmetic():
    h1, h2, h3, h4 = vars4()
    p = (h1 + h2) * (h1 - h2)
    assert p == h1 * h1 - h2 * h2
    assert (h1 + 1) ** 3 == h1 ** 3 + 3 * h1 ** 2 + 3 * h1 + 1
    assert (p - p).is_zero()


def test_grlex_leading_term():
    h1, h2, h3, h4 = vars4()
    p = h1 * h3 + h2 * h2 + h1
    e, c = p.leading()
    # degree ties break towards the higher-numbered variable
    assert e == (1, 0, 1, 0) and c == 1


def test_derivative_and_eval():
    h1, h2, h3, h4 = vars4()
    p = h1 ** 2 * h2 + 3 * h4
    assert p.derivative(0) == 2 * h1 * h2
    assert p.derivative(1) == h1 ** 2
    assert p.derivative(2).is_zero()
    assert p.eval([mpq(2), mpq(3), mpq(0), mpq(1, 2)]) == 12 + mpq(3, 2)


def test_eval_mod():
    h1, h2, h3, h4 = vars4()
    p = h1 ** 2 * h2 / 3 + 7
    point = [5, 11, 0, 2]
    prime = 1048573
    want = (int(25 * 11) * pow(3, -1, prime) + 7) % prime
    assert p.eval_mod(point, prime) == want


def test_divexact():
    h1, h2, h3, h4 = vars4()
    f = (h1 + h2) * (h3 - 2 * h4) ** 2
    assert poly_divexact(f, h1 + h2) == (h3 - 2 * h4) ** 2
    assert poly_divexact(f, h1 + h3) is None


def test_gcd_simple():
    h1, h2, h3, h4 = vars4()
    a2 = alpha2()
    g = poly_gcd(h2 * a2, a2)
    assert g == a2
    assert poly_gcd(h2 ** 2, h3 ** 2) == 1
    assert poly_gcd(Poly.zero(4), a2) == a2


def test_gcd_random_products():
    rng = random.Random(99)
    h = vars4()
    for _ in range(25):
        def rnd_poly():
            p = Poly.const(rng.randint(1, 3), 4)
            for _ in range(rng.randint(1, 2)):
                v = h[rng.randrange(4)]
                p = p * (v + rng.randint(-2, 2))
            return p
        g, a, b = rnd_poly(), rnd_poly(), rnd_poly()
        got = poly_gcd(g * a, g * b)
        # gcd divides both and is divisible by g
        assert poly_divexact(g * a, got) is not None
        assert poly_divexact(g * b, got) is not None
        assert poly_divexact(got, poly_gcd(g, got)) is not None


def test_ratfunc_canonical_form():
    h1, h2, h3, h4 = vars4()
    a2 = alpha2()
    # denominator cancels completely
    f = RatFunc(h2 * a2, a2)
    assert f.num == h2 and f.den == 1
    # stays irreducible: (2 h2^2 - a2)/a2
    g = RatFunc(2 * h2 ** 2 - a2, a2)
    assert g.num == h2 ** 2 - h3 ** 2 - h4 ** 2
    assert g.den == a2
    # canonical form is idempotent / scale invariant
    g2 = RatFunc((2 * h2 ** 2 - a2) * -3, a2 * -3)
    assert g2 == g


def test_ratfunc_arithmetic():
    h1, h2, h3, h4 = vars4()
    a2 = alpha2()
    x = RatFunc(h2, a2)
    y = RatFunc(h3, a2)
    s = x + y
    assert s.num == h2 + h3 and s.den == a2
    assert (x * y).den == a2 * a2
    assert (x / y) == RatFunc(h2, h3)
    assert (x - x).is_zero()
    assert (1 + x).num == a2 + h2


def test_ratfunc_derivative_quotient_rule():
    h1, h2, h3, h4 = vars4()
    a2 = alpha2()
    f = RatFunc(h2, a2)
    df = f.derivative(1)
    assert df == RatFunc(a2 - 2 * h2 ** 2, a2 * a2)


def test_ratfunc_eval_and_poles():
    h1, h2, h3, h4 = vars4()
    a2 = alpha2()
    f = RatFunc(h2 ** 2, a2)
    assert f.eval([0, 1, 2, 0]) == mpq(1, 5)
    with pytest.raises(ZeroDenominator):
        f.eval([3, 0, 0, 0])
    with pytest.raises(ZeroDenominator):
        RatFunc(Poly.one(4), Poly.zero(4))


def test_ratfunc_power():
    h1, h2, h3, h4 = vars4()
    f = RatFunc(h2, h3)
    assert f ** -2 == RatFunc(h3 ** 2, h2 ** 2)
    assert f ** 0 == 1
