"""Modular and 2-adic arithmetic on odd prime moduli.

Everything here works on Python ints of arbitrary size. Functions that need
the factorization of ``p - 1`` accept either a plain int (factored on demand)
or a :class:`PrimeModulus` that carries it.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union

DLOG_CAP = 1 << 50
TRIAL_LIMIT = 10**6
DEFAULT_MR_ROUNDS = 30

# Deterministic Miller-Rabin witnesses; valid for every n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FactorizationError(ArithmeticError):
    """Raised when an integer could not be completely factored."""


class NotPrimitiveRoot(ValueError):
    pass


# ---------------------------------------------------------------------------
# primes and factoring


def primes_up_to(n: int) -> list[int]:
    """All primes ``<= n`` by the sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_LIMIT))


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, rounds: int = DEFAULT_MR_ROUNDS) -> bool:
    """Miller-Rabin test.

    Deterministic below 2**64 (the fixed witness set is exact there). Above
    that, ``rounds`` extra pseudo-random witnesses are drawn from a generator
    seeded by ``n`` so the answer is reproducible.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_mr_round(n, d, s, a) for a in _MR_BASES):
        return False
    if n < (1 << 64):
        return True
    rng = random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(rounds))


def _pollard_brent(n: int, seed: int, budget: int) -> Optional[int]:
    rng = random.Random(seed)
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    steps = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        steps += r
        if steps > budget:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n: int, out: dict[int, int], budget: int) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out, budget)
        _split(r, out, budget)
        return
    for seed in range(1, 33):
        d = _pollard_brent(n, seed, budget)
        if d is not None and 1 < d < n:
            _split(d, out, budget)
            _split(n // d, out, budget)
            return
    raise FactorizationError(f"could not split composite {n}")


def factorize(n: int, max_bits: Optional[int] = None, rho_budget: int = 1 << 22) -> dict[int, int]:
    """Prime factorization ``{prime: exponent}`` of ``n >= 1``.

    Trial division by primes below 10**6, then Brent's variant of Pollard rho
    on the cofactor. Raises :class:`FactorizationError` rather than returning
    a partial answer.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    if max_bits is not None and n.bit_length() > max_bits:
        raise FactorizationError(f"{n} exceeds the {max_bits}-bit factoring cap")
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        _split(n, out, rho_budget)
    return dict(sorted(out.items()))


def radical(n: int, max_bits: Optional[int] = None) -> int:
    return math.prod(factorize(n, max_bits))


def iroot(n: int, k: int) -> int:
    """Floor of the real k-th root of ``n >= 0``."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_perfect_power(n: int) -> bool:
    """True if ``n = m**k`` for some integers m >= 2, k >= 2."""
    if n < 4:
        return False
    for k in primes_up_to(n.bit_length()):
        r = iroot(n, k)
        if r**k == n:
            return True
    return False


# ---------------------------------------------------------------------------
# prime moduli


@dataclass(frozen=True)
class PrimeModulus:
    """An odd prime ``p`` together with the factorization of ``p - 1``."""

    p: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")
        if math.prod(r**e for r, e in self.factors) != self.p - 1:
            raise ValueError("stored factorization does not multiply to p - 1")

    @classmethod
    def of(cls, p: int) -> "PrimeModulus":
        return _modulus_cached(p)

    @property
    def order(self) -> int:
        return self.p - 1

    @property
    def prime_divisors(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.factors)


@lru_cache(maxsize=4096)
def _modulus_cached(p: int) -> PrimeModulus:
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    return PrimeModulus(p, tuple(factorize(p - 1).items()))


Modulus = Union[int, PrimeModulus]


def as_modulus(m: Modulus) -> PrimeModulus:
    return m if isinstance(m, PrimeModulus) else PrimeModulus.of(m)


def _unit(n: int, p: int) -> int:
    r = n % p
    if r == 0:
        raise ValueError(f"{n} is not invertible modulo {p}")
    return r


# ---------------------------------------------------------------------------
# valuations, powers, orders


def v2(n: int) -> int:
    """Exponent of the largest power of 2 dividing ``n``."""
    if n < 1:
        raise ValueError("v2 is only defined here for n >= 1")
    return (n & -n).bit_length() - 1


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    return pow(base, exponent, modulus)


def multiplicative_order(n: int, modulus: Modulus) -> int:
    """Least ``t >= 1`` with ``n**t == 1 (mod p)``.

    Starts from ``p - 1`` and strips prime factors while the power stays 1.
    """
    m = as_modulus(modulus)
    n = _unit(n, m.p)
    t = m.order
    for r, _ in m.factors:
        while t % r == 0 and pow(n, t // r, m.p) == 1:
            t //= r
    return t


def is_primitive_root(d: int, modulus: Modulus) -> bool:
    m = as_modulus(modulus)
    d %= m.p
    if d == 0:
        return False
    return all(pow(d, m.order // r, m.p) != 1 for r in m.prime_divisors)


def find_primitive_root(modulus: Modulus) -> int:
    """Smallest ``d >= 2`` of order ``p - 1``."""
    m = as_modulus(modulus)
    for d in range(2, m.p):
        if is_primitive_root(d, m):
            return d
    raise AssertionError("unreachable: every prime has a primitive root")


def primitive_roots(modulus: Modulus) -> Iterator[int]:
    m = as_modulus(modulus)
    return (d for d in range(2, m.p) if is_primitive_root(d, m))


@lru_cache(maxsize=32)
def _baby_steps(p: int, d: int, width: int) -> dict[int, int]:
    table: dict[int, int] = {}
    e = 1
    for j in range(width):
        table.setdefault(e, j)
        e = e * d % p
    return table


def index(n: int, modulus: Modulus, d: int) -> int:
    """Discrete logarithm of ``n`` to base ``d`` in the range ``(0, p - 1]``.

    Baby-step giant-step, limited to ``p < 2**50``. The index of 1 is
    ``p - 1``, not 0.
    """
    m = as_modulus(modulus)
    p = m.p
    if p >= DLOG_CAP:
        raise ValueError(f"discrete log only supported for p < 2**50, got {p}")
    if not is_primitive_root(d, m):
        raise NotPrimitiveRoot(f"{d} is not a primitive root of {p}")
    n = _unit(n, p)
    d %= p
    width = math.isqrt(p - 1) + 1
    baby = _baby_steps(p, d, width)
    giant = pow(d, -width, p)
    g = n
    for i in range(width + 1):
        j = baby.get(g)
        if j is not None:
            e = (i * width + j) % m.order
            return e or m.order
        g = g * giant % p
    raise AssertionError("unreachable: d is a primitive root")


def index_table(modulus: Modulus, d: int) -> list[int]:
    """``table[n]`` is the index of ``n`` to base ``d``, for ``1 <= n < p``.

    O(p) enumeration of the powers of ``d``; entry 0 is unused.
    """
    m = as_modulus(modulus)
    if not is_primitive_root(d, m):
        raise NotPrimitiveRoot(f"{d} is not a primitive root of {m.p}")
    table = [0] * m.p
    e = 1
    for i in range(1, m.p):
        e = e * d % m.p
        table[e] = i
    return table


@dataclass(frozen=True)
class IndexProfile:
    modulus: PrimeModulus
    n: int
    d: int
    i: int
    w: int


def index_profile(n: int, modulus: Modulus, d: Optional[int] = None) -> IndexProfile:
    m = as_modulus(modulus)
    if d is None:
        d = find_primitive_root(m)
    i = index(n, m, d)
    return IndexProfile(m, n % m.p, d, i, min(v2(i), v2(m.order)))


def w(n: int, modulus: Modulus) -> int:
    """``min(v2(i), v2(p - 1))`` where ``i`` is the index of ``n``.

    The value does not depend on which primitive root defines the index.
    """
    return index_profile(n, modulus).w


def predicted_w_of_negation(w_a: int, v2_pm1: int) -> int:
    """The value of ``w(-a)`` implied by ``w(a)`` and ``v2(p - 1)``."""
    if v2_pm1 < 1:
        raise ValueError("v2(p - 1) is at least 1 for odd p")
    if not 0 <= w_a <= v2_pm1:
        raise ValueError(f"w must lie in [0, {v2_pm1}], got {w_a}")
    if w_a < v2_pm1 - 1:
        return w_a
    if w_a == v2_pm1 - 1:
        return v2_pm1
    return v2_pm1 - 1


# ---------------------------------------------------------------------------
# residues and representations


def legendre(n: int, p: int) -> int:
    r = pow(n, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def eth_power_residue(n: int, modulus: Modulus, e: int) -> bool:
    """Whether ``n`` is congruent to an e-th power modulo ``p`` (needs ``e | p - 1``)."""
    m = as_modulus(modulus)
    if e < 1 or m.order % e:
        raise ValueError(f"{e} does not divide {m.p} - 1")
    n = _unit(n, m.p)
    return pow(n, m.order // e, m.p) == 1


@dataclass(frozen=True)
class FormRepresentation:
    p: int
    k: int
    a: int
    b: int

    def __post_init__(self):
        if self.a * self.a + self.k * self.b * self.b != self.p:
            raise ValueError("a^2 + k*b^2 != p")


def represent_form(p: int, k: int) -> Optional[FormRepresentation]:
    """Find ``p = a**2 + k*b**2`` with ``a >= 0, b >= 1``; None if impossible.

    Scans b upward, so the representation returned has the smallest b.
    """
    if k not in (64, 256):
        raise ValueError("k must be 64 or 256")
    for b in range(1, math.isqrt(p // k) + 1):
        rest = p - k * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            return FormRepresentation(p, k, a, b)
    return None
