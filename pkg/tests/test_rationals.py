import random

import gmpy2
import pytest

from aqsym.rationals import (
    MODULAR_PRIMES, clear_denominators, crt_pair, rat,
    rational_reconstruct, lcm_denominators,
)


def test_rat_basics():
    assert rat(1, 2) + rat(1, 3) == rat(5, 6)
    assert rat("3/4") * 4 == 3
    assert rat(-6, 4) == rat(-3, 2)


def test_lcm_denominators():
    assert lcm_denominators([rat(1, 2), rat(1, 3), rat(5, 6)]) == 6


def test_clear_denominators():
    ints, scale = clear_denominators([rat(1, 2), rat(1, 3), rat(1, 6)])
    assert ints == [3, 2, 1]
    assert all(x * scale == y for x, y in zip([rat(1, 2), rat(1, 3), rat(1, 6)], ints))


def test_modular_primes_are_prime_and_wordsize():
    for p in MODULAR_PRIMES:
        assert gmpy2.is_prime(p)
        assert 2 ** 19 < p < 2 ** 20
    assert len(set(MODULAR_PRIMES)) == len(MODULAR_PRIMES)


def test_crt_pair():
    r, m = crt_pair(2, 3, 3, 5)
    assert m == 15 and r % 3 == 2 and r % 5 == 3


def test_rational_reconstruction_roundtrip():
    rng = random.Random(20260815)
    m = 1
    for p in MODULAR_PRIMES[:3]:
        m *= p
    for _ in range(200):
        num = rng.randint(-10 ** 6, 10 ** 6)
        den = rng.randint(1, 10 ** 6)
        q = rat(num, den)
        residue = int(q.numerator) * pow(int(q.denominator), -1, m) % m
        assert rational_reconstruct(residue, m) == q


def test_rational_reconstruction_failure_returns_none():
    # numerator too large for a single word-size prime
    p = MODULAR_PRIMES[0]
    q = rat(10 ** 9, 7)
    residue = int(q.numerator) * pow(7, -1, p) % p
    got = rational_reconstruct(residue, p)
    assert got is None or got != q
