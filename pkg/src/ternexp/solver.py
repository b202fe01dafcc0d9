"""Bounded exhaustive search for solutions of ``a**x + b**y = c**z``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .arith import is_perfect_power, is_prime

S_MODE = "S"
N_MODE = "N"


class InvalidInstance(ValueError):
    pass


@dataclass(frozen=True)
class EquationInstance:
    """Bases of ``a**x + b**y = c**z``.

    S-mode: a, b, c distinct primes with a < b.
    N-mode: 1 < a < b, gcd(a, b) = 1, none of a, b, c a perfect power.
    """

    a: int
    b: int
    c: int
    mode: str = S_MODE

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if min(a, b, c) < 2:
            raise InvalidInstance("a, b, c must all be >= 2")
        if self.mode == S_MODE:
            for v in (a, b, c):
                if not is_prime(v):
                    raise InvalidInstance(f"{v} is not prime")
            if len({a, b, c}) != 3:
                raise InvalidInstance("a, b, c must be distinct")
            if a >= b:
                raise InvalidInstance("S-mode needs a < b")
        elif self.mode == N_MODE:
            if not a < b:
                raise InvalidInstance("N-mode needs 1 < a < b")
            if math.gcd(a, b) != 1:
                raise InvalidInstance(f"gcd({a}, {b}) != 1")
            for v in (a, b, c):
                if is_perfect_power(v):
                    raise InvalidInstance(f"{v} is a perfect power")
        else:
            raise InvalidInstance(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class SearchBounds:
    max_z: int = 25
    max_bits: int = 512

    def __post_init__(self):
        if self.max_z < 1 or self.max_bits < 1:
            raise ValueError("bounds must be positive")


@dataclass(frozen=True, order=True)
class SolutionTriple:
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class SolutionSet:
    instance: EquationInstance
    bounds: SearchBounds
    solutions: tuple[SolutionTriple, ...] = field(default_factory=tuple)
    exhaustive_within_bounds: bool = True

    def __len__(self) -> int:
        return len(self.solutions)

    def triples(self) -> list[tuple[int, int, int]]:
        return [(s.x, s.y, s.z) for s in self.solutions]


def is_power_of(r: int, b: int) -> Optional[int]:
    """``y >= 1`` with ``b**y == r``, else None."""
    if b < 2:
        raise ValueError("base must be >= 2")
    if r < b:
        return None
    if b == 2:
        return r.bit_length() - 1 if r & (r - 1) == 0 else None
    y = 0
    while r % b == 0:
        r //= b
        y += 1
    return y if r == 1 else None


def _scan_z(a: int, b: int, cz: int, z: int) -> list[SolutionTriple]:
    # Walk the larger base in the inner loop; the residual must be a pure
    # power of the other base. Result is the same whichever side is walked.
    swap = b > a
    walk, other = (b, a) if swap else (a, b)
    found = []
    e, t = 1, walk
    while t < cz:
        o = is_power_of(cz - t, other)
        if o is not None:
            found.append(SolutionTriple(o, e, z) if swap else SolutionTriple(e, o, z))
        e += 1
        t *= walk
    return found


def find_solutions(instance: EquationInstance, bounds: SearchBounds = SearchBounds()) -> SolutionSet:
    """Every solution with ``z <= max_z`` and ``c**z`` at most ``max_bits`` bits.

    Sorted by ``(z, x)``; each triple is re-verified before it is returned.
    """
    a, b, c = instance.a, instance.b, instance.c
    if c.bit_length() > bounds.max_bits:
        raise ValueError(f"max_bits={bounds.max_bits} is below the bit length of c")
    sols: list[SolutionTriple] = []
    cz = 1
    for z in range(1, bounds.max_z + 1):
        cz *= c
        if cz.bit_length() > bounds.max_bits:
            break
        sols.extend(_scan_z(a, b, cz, z))
    for s in sols:
        assert a**s.x + b**s.y == c**s.z
    sols.sort(key=lambda s: (s.z, s.x))
    return SolutionSet(instance, bounds, tuple(sols), True)


def count_solutions(instance: EquationInstance, bounds: SearchBounds = SearchBounds()) -> int:
    return len(find_solutions(instance, bounds))


def lemma21_scan(p: int, q: int, k: int, m_max: int, n_max: int) -> int:
    """Number of ``(m, n)`` in the box with ``q**n - p**m == 2**k``."""
    if p == q or p % 2 == 0 or q % 2 == 0:
        raise ValueError("p and q must be distinct odd primes")
    if k < 1:
        raise ValueError("k must be >= 1")
    target = 1 << k
    p_pows = {p**m: m for m in range(1, m_max + 1)}
    return sum(1 for n in range(1, n_max + 1) if q**n - target in p_pows)


def lemma22_scan(b: int, c: int, y_max: int, z_max: int) -> int:
    """Number of ``(z, y)`` with ``0 < |c**z - b**y| < max(c**(z/2), b**(y/2)) / 4``.

    Evaluated exactly as ``16 * (c**z - b**y)**2 < max(c**z, b**y)``.
    """
    if b < 2 or c < 2:
        raise ValueError("b and c must be >= 2")
    if b == c:
        raise ValueError("b == c is degenerate")
    count = 0
    for z in range(1, z_max + 1):
        cz = c**z
        for y in range(1, y_max + 1):
            by = b**y
            diff = cz - by
            if diff != 0 and 16 * diff * diff < (cz if cz > by else by):
                count += 1
    return count


# Known multi-solution instances: (label, a, b, c, mode, solutions).
PRIME_EXCEPTIONS = (
    ("i", 2, 3, 5, S_MODE, ((1, 1, 1), (4, 2, 2))),
    ("ii", 2, 3, 11, S_MODE, ((1, 2, 1), (3, 1, 1))),
    ("iii", 2, 5, 3, S_MODE, ((1, 2, 3), (2, 1, 2))),
    ("iv", 2, 7, 3, S_MODE, ((1, 1, 2), (5, 2, 4))),
    ("v", 3, 5, 2, S_MODE, ((1, 1, 3), (1, 3, 7), (3, 1, 5))),
    ("vi", 3, 13, 2, S_MODE, ((1, 1, 4), (5, 1, 8))),
)

COPRIME_EXCEPTIONS = (
    ("ii", 2, 3, 11, N_MODE, ((1, 2, 1), (3, 1, 1))),
    ("iii", 2, 3, 35, N_MODE, ((3, 3, 1), (5, 1, 1))),
    ("iv", 2, 3, 259, N_MODE, ((4, 5, 1), (8, 1, 1))),
    ("v", 2, 5, 3, N_MODE, ((1, 2, 3), (2, 1, 2))),
    ("vi", 2, 5, 133, N_MODE, ((3, 3, 1), (7, 1, 1))),
    ("vii", 2, 7, 3, N_MODE, ((1, 1, 2), (5, 2, 4))),
    ("viii", 2, 89, 91, N_MODE, ((1, 1, 1), (13, 1, 2))),
    ("ix", 2, 91, 8283, N_MODE, ((1, 2, 1), (13, 1, 1))),
    ("x", 3, 5, 2, N_MODE, ((1, 1, 3), (1, 3, 7), (3, 1, 5))),
    ("xi", 3, 10, 13, N_MODE, ((1, 1, 1), (7, 1, 3))),
    ("xii", 3, 13, 2, N_MODE, ((1, 1, 4), (5, 1, 8))),
    ("xiii", 3, 13, 2200, N_MODE, ((1, 3, 1), (7, 1, 1))),
)

# The infinite family (2, 2**r - 1, 2**r + 1), r >= 2, r != 3, checked for these r.
FAMILY_R = (2, 4, 5, 6, 7)


def family_instance(r: int) -> tuple[int, int, int, tuple[tuple[int, int, int], ...]]:
    return 2, 2**r - 1, 2**r + 1, ((1, 1, 1), (r + 2, 2, 2))


PRIME_EXCEPTION_TRIPLES = frozenset((a, b, c) for _, a, b, c, _, _ in PRIME_EXCEPTIONS)
