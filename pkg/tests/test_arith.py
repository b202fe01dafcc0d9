import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from ternexp.arith import (
    DLOG_CAP,
    FactorizationError,
    FormRepresentation,
    NotPrimitiveRoot,
    PrimeModulus,
    eth_power_residue,
    factorize,
    find_primitive_root,
    index,
    index_profile,
    index_table,
    iroot,
    is_perfect_power,
    is_prime,
    legendre,
    mod_pow,
    multiplicative_order,
    predicted_w_of_negation,
    primes_up_to,
    primitive_roots,
    represent_form,
    v2,
    w,
)


# -- brute-force oracles ------------------------------------------------------


def brute_order(n, p):
    return next(t for t in range(1, p) if pow(n, t, p) == 1)


def brute_index(n, p, d):
    e = 1
    for i in range(1, p):
        e = e * d % p
        if e == n % p:
            return i


def brute_is_prime(n):
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def brute_residue(n, p, e):
    return any(pow(x, e, p) == n % p for x in range(1, p))


# -- valuations and powers ----------------------------------------------------


@pytest.mark.parametrize("n, expected", [(1, 0), (48, 4), (2**87, 87)])
def test_v2_examples(n, expected):
    assert v2(n) == expected


def test_v2_rejects_zero():
    with pytest.raises(ValueError):
        v2(0)


@given(st.integers(min_value=1, max_value=2**200))
def test_v2_definition(n):
    t = v2(n)
    assert n % 2**t == 0 and n % 2 ** (t + 1) != 0


@pytest.mark.parametrize("args, expected", [((2, 0, 7), 1), ((2, 9, 73), 1), ((3, 8, 17), 16)])
def test_mod_pow_examples(args, expected):
    base, e, m = args
    oracle = 1
    for _ in range(e):
        oracle = oracle * base % m
    assert oracle == expected
    assert mod_pow(*args) == expected


def test_mod_pow_rejects_small_modulus():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 1)


# -- primality and factoring --------------------------------------------------


def test_is_prime_matches_trial_division():
    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if brute_is_prime(n)]
    assert primes_up_to(3000) == [n for n in range(3000) if brute_is_prime(n)]


@pytest.mark.parametrize("n", [3215031751, 3825123056546413051, 318665857834031151167461])
def test_is_prime_rejects_strong_pseudoprimes(n):
    assert not is_prime(n)


@pytest.mark.parametrize("n", [2**61 - 1, 2**89 - 1, 2**127 - 1, 10**18 + 9])
def test_is_prime_large_primes(n):
    assert is_prime(n)


@given(st.integers(min_value=1, max_value=2**64))
@settings(max_examples=60, deadline=None)
def test_factorize_multiplies_back(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime(p) for p in f)


def test_factorize_cap():
    with pytest.raises(FactorizationError):
        factorize(2**81 + 1, max_bits=80)


def test_iroot_and_perfect_power():
    for n in range(0, 2000):
        for k in (2, 3, 5):
            r = iroot(n, k)
            assert r**k <= n < (r + 1) ** k
    powers = {m**k for m in range(2, 71) for k in range(2, 13) if m**k < 5000}
    assert {n for n in range(5000) if is_perfect_power(n)} == powers
    assert is_perfect_power(91**7) and not is_perfect_power(2**64 + 1)


def test_prime_modulus_invariants():
    m = PrimeModulus.of(97)
    assert m.factors == ((2, 5), (3, 1))
    with pytest.raises(ValueError):
        PrimeModulus(97, ((2, 5),))
    with pytest.raises(ValueError):
        PrimeModulus.of(91)


# -- orders and primitive roots -----------------------------------------------


@pytest.mark.parametrize("n, p, expected", [(1, 7, 1), (2, 7, 3), (3, 17, 16)])
def test_order_examples(n, p, expected):
    assert brute_order(n, p) == expected
    assert multiplicative_order(n, p) == expected


def test_order_rejects_zero_residue():
    with pytest.raises(ValueError):
        multiplicative_order(14, 7)


@pytest.mark.parametrize("p", primes_up_to(400)[1:])
def test_order_against_brute_force(p):
    for n in range(1, p):
        t = multiplicative_order(n, p)
        assert t == brute_order(n, p)
        assert (p - 1) % t == 0 and pow(n, t, p) == 1
        assert all(pow(n, t // r, p) != 1 for r in factorize(t))


@given(st.sampled_from([10**9 + 7, 2**61 - 1, 10**18 + 9, 2**89 - 1]), st.integers(2, 2**100))
@settings(max_examples=40, deadline=None)
def test_order_properties_large(p, n):
    if n % p == 0:
        return
    t = multiplicative_order(n, p)
    assert (p - 1) % t == 0 and pow(n, t, p) == 1
    assert all(pow(n, t // r, p) != 1 for r in factorize(t))


@pytest.mark.parametrize("p, expected", [(7, 3), (17, 3), (3, 2)])
def test_primitive_root_examples(p, expected):
    oracle = next(d for d in range(2, p) if brute_order(d, p) == p - 1)
    assert oracle == expected
    assert find_primitive_root(p) == expected


def test_primitive_roots_count():
    from math import gcd

    for p in primes_up_to(300)[1:]:
        phi = sum(1 for k in range(1, p) if gcd(k, p - 1) == 1)
        assert len(list(primitive_roots(p))) == phi


# -- discrete log and w -------------------------------------------------------


@pytest.mark.parametrize("n, expected", [(1, 16), (2, 14), (3, 1)])
def test_index_examples(n, expected):
    assert brute_index(n, 17, 3) == expected
    assert index(n, 17, 3) == expected


def test_index_rejects_non_primitive_and_cap():
    with pytest.raises(NotPrimitiveRoot):
        index(2, 17, 2)
    big = 2**61 - 1
    assert big >= DLOG_CAP
    with pytest.raises(ValueError):
        index(3, big, 37)


@pytest.mark.parametrize("p", [3, 5, 101, 257, 1009, 7919])
def test_bsgs_matches_enumeration(p):
    d = find_primitive_root(p)
    table = index_table(p, d)
    for n in range(1, p):
        assert index(n, p, d) == table[n]
        assert pow(d, table[n], p) == n


def test_bsgs_on_large_prime():
    p = 1000000007
    d = find_primitive_root(p)
    rng = random.Random(5)
    for _ in range(5):
        n = rng.randrange(1, p)
        i = index(n, p, d)
        assert 0 < i <= p - 1 and pow(d, i, p) == n


@pytest.mark.parametrize("n, expected", [(3, 0), (2, 1), (16, 3)])
def test_w_examples(n, expected):
    i = brute_index(n, 17, 3)
    assert min(v2(i), v2(16)) == expected
    assert w(n, 17) == expected


def w_by_power_residues(n, p):
    """w without discrete logs: largest j <= v2(p-1) with n a 2^j-th power."""
    j = 0
    while j < v2(p - 1) and pow(n, (p - 1) >> (j + 1), p) == 1:
        j += 1
    return j


@pytest.mark.parametrize("p", [3, 5, 17, 97, 193, 257, 641, 1153])
def test_w_matches_residue_oracle(p):
    for n in range(1, p):
        assert w(n, p) == w_by_power_residues(n, p)


def test_index_profile_fields():
    prof = index_profile(16, 17)
    assert (prof.d, prof.i, prof.w) == (3, 8, 3)
    assert pow(prof.d, prof.i, 17) == prof.n


@pytest.mark.parametrize("w_a, v, expected", [(0, 4, 0), (3, 4, 4), (4, 4, 3)])
def test_predicted_negation_examples(w_a, v, expected):
    assert predicted_w_of_negation(w_a, v) == expected


def test_predicted_negation_rejects():
    with pytest.raises(ValueError):
        predicted_w_of_negation(5, 4)


# -- residues -----------------------------------------------------------------


@pytest.mark.parametrize("n, p, expected", [(4, 7, 1), (2, 73, 1), (2, 5, -1), (0, 5, 0)])
def test_legendre_examples(n, p, expected):
    assert legendre(n, p) == expected


def test_legendre_counts_squares():
    for p in primes_up_to(200)[1:]:
        squares = {x * x % p for x in range(1, p)}
        for n in range(1, p):
            assert legendre(n, p) == (1 if n in squares else -1)


def test_eth_power_residue_examples():
    assert brute_residue(2, 257, 8) and eth_power_residue(2, 257, 8)
    assert pow(2, 12, 97) == 22
    assert not brute_residue(2, 97, 8) and not eth_power_residue(2, 97, 8)
    assert eth_power_residue(1, 97, 8)
    with pytest.raises(ValueError):
        eth_power_residue(2, 97, 5)


def test_eth_power_residue_brute_force():
    for p in primes_up_to(300)[1:]:
        for e in (d for d in range(1, p) if (p - 1) % d == 0):
            powers = {pow(x, e, p) for x in range(1, p)}
            for n in range(1, p):
                assert eth_power_residue(n, p, e) == (n in powers)


@pytest.mark.parametrize("p, k, expected", [(73, 64, (3, 1)), (257, 256, (1, 1)), (41, 64, None)])
def test_represent_form_examples(p, k, expected):
    rep = represent_form(p, k)
    assert (None if rep is None else (rep.a, rep.b)) == expected


def test_represent_form_brute_force():
    for p in primes_up_to(5000)[1:]:
        for k in (64, 256):
            reps = [(a, b) for b in range(1, 10) for a in range(0, 71) if a * a + k * b * b == p]
            got = represent_form(p, k)
            assert (got is not None) == bool(reps)
            if got:
                assert got.a**2 + k * got.b**2 == p and got.b >= 1


def test_form_representation_invariant():
    with pytest.raises(ValueError):
        FormRepresentation(73, 64, 2, 1)


@pytest.mark.slow
def test_w_independent_of_root_below_10k():
    from ternexp.suites import w_table

    for p in primes_up_to(10**4)[1:]:
        roots = list(primitive_roots(p))
        assert w_table(p, roots[0]) == w_table(p, roots[-1]), p
