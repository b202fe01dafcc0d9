"""Necessary conditions on a prime pair (p, q) for ``2**x + p**y = q**z`` to
have two solutions, and abc-quality diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Optional, Union

from .arith import (
    FactorizationError,
    PrimeModulus,
    eth_power_residue,
    factorize,
    is_prime,
    multiplicative_order,
    v2,
)

P_FLOOR = 10**9
Q_FLOOR = 10**18
ABC_CAP_BITS = 80

NA = "n/a"
ERROR = "error"
Verdict = Union[bool, str]

CONDITIONS = ("cong48", "val_order", "order_parity", "octic")


class NotApplicable(ValueError):
    """A condition whose hypotheses exclude the given pair."""


@dataclass(frozen=True)
class CandidatePair:
    p: int
    q: int

    def __post_init__(self):
        for v in (self.p, self.q):
            if v < 3 or not is_prime(v):
                raise ValueError(f"{v} is not an odd prime")
        if self.p == self.q:
            raise ValueError("p and q must differ")

    @property
    def v2p(self) -> int:
        return v2(self.p - 1)

    @property
    def v2q(self) -> int:
        return v2(self.q - 1)


@dataclass(frozen=True)
class SolutionShape:
    """Exponents of a hypothetical pair of solutions
    ``2**x1 + p**y1 = q`` and ``2**x2 + p**y2 = q**z2``."""

    x1: int
    y1: int
    x2: int
    y2: int
    z2: int
    z1: int = 1

    def __post_init__(self):
        if self.z1 != 1:
            raise ValueError("first solution has z1 = 1")
        if min(self.x1, self.y1, self.x2, self.y2, self.z2) < 1:
            raise ValueError("exponents must be positive")
        if self.x1 % 2 or self.y1 % 2:
            raise ValueError("x1 and y1 must be even")
        if self.x2 % 2 or self.y2 % 2 == 0 or self.z2 % 2 == 0 or self.z2 <= 1:
            raise ValueError("need x2 even, y2 odd, z2 odd and > 1")


def cong48_check(pair: CandidatePair) -> bool:
    return pair.p % 48 == 1 and pair.q % 48 == 17


def valuation_check(pair: CandidatePair) -> bool:
    return pair.v2p % 2 == 0 and pair.v2p <= pair.v2q


def order_parity_check(pair: CandidatePair) -> bool:
    """At least one of ord_p(q), ord_q(p) is odd.

    Raises :class:`FactorizationError` if p - 1 or q - 1 cannot be factored.
    """
    mp, mq = PrimeModulus.of(pair.p), PrimeModulus.of(pair.q)
    return multiplicative_order(pair.q, mp) % 2 == 1 or multiplicative_order(pair.p, mq) % 2 == 1


def octic_check(pair: CandidatePair) -> bool:
    """2 is an eighth-power residue mod q, or v2(p-1) = v2(q-1) = 4."""
    if (pair.q - 1) % 8:
        raise NotApplicable(f"8 does not divide {pair.q} - 1")
    if pair.v2p == pair.v2q == 4:
        return True
    return eth_power_residue(2, pair.q, 8)


def theorem14_bounds(shape: SolutionShape, v2p: int, v2q: int) -> bool:
    if not (shape.x1 >= 28 or shape.x2 >= 88):
        return False
    if v2p == v2q <= 27 and shape.x2 < 88:
        return False
    if v2p < v2q and v2p <= 87 and shape.x1 < 28:
        return False
    return True


def shape_consistency(shape: SolutionShape, pair: CandidatePair) -> bool:
    """Exactly one of ``x1 = v2(p-1) = v2(q-1)`` or ``x2 = v2(p-1) < v2(q-1)``."""
    equal_case = shape.x1 == pair.v2p == pair.v2q
    split_case = shape.x2 == pair.v2p < pair.v2q
    return equal_case != split_case


def legacy_class(pair: CandidatePair) -> Optional[str]:
    """Which of the three older mod-24 classes the pair falls in, if any."""
    key = (pair.p % 24, pair.q % 24)
    return {(13, 5): "13,5", (13, 17): "13,17", (1, 17): "1,17"}.get(key)


@dataclass(frozen=True)
class SieveReport:
    pair: CandidatePair
    cong48: Verdict
    val_order: Verdict
    order_parity: Verdict
    octic: Verdict
    size_p: bool
    size_q: bool
    legacy_mod24: Optional[str]
    errors: tuple[tuple[str, str], ...] = ()

    @property
    def survives(self) -> bool:
        return all(getattr(self, name) is True for name in CONDITIONS)

    def verdicts(self) -> dict[str, Verdict]:
        return {name: getattr(self, name) for name in CONDITIONS}


def full_report(pair: CandidatePair) -> SieveReport:
    """Evaluate every condition independently; failures are recorded per condition."""
    checks = {
        "cong48": cong48_check,
        "val_order": valuation_check,
        "order_parity": order_parity_check,
        "octic": octic_check,
    }
    verdicts: dict[str, Verdict] = {}
    errors = []
    for name, fn in checks.items():
        try:
            verdicts[name] = fn(pair)
        except NotApplicable:
            verdicts[name] = NA
        except FactorizationError as exc:
            verdicts[name] = ERROR
            errors.append((name, str(exc)))
    return SieveReport(
        pair,
        size_p=pair.p > P_FLOOR,
        size_q=pair.q > Q_FLOOR,
        legacy_mod24=legacy_class(pair),
        errors=tuple(errors),
        **verdicts,
    )


# ---------------------------------------------------------------------------
# abc quality


@dataclass(frozen=True)
class AbcTriple:
    a_term: int
    b_term: int
    c_term: int
    rad: int
    Q: Decimal


def _quality(c: int, rad: int, prec: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        return Decimal(c).ln() / Decimal(rad).ln()


def abc_quality(a_term: int, b_term: int, c_term: int) -> AbcTriple:
    """``log(c) / log(rad(abc))`` for coprime ``a + b = c``.

    The quality is evaluated at two working precisions and must agree to
    20 places; the stored value is rounded to 15 places.
    """
    if min(a_term, b_term, c_term) < 1:
        raise ValueError("terms must be positive")
    if a_term + b_term != c_term:
        raise ValueError(f"{a_term} + {b_term} != {c_term}")
    if math.gcd(a_term, b_term) != 1:
        raise ValueError("a and b must be coprime")
    product = a_term * b_term * c_term
    primes = factorize(product, max_bits=ABC_CAP_BITS)
    rad = math.prod(primes)
    lo, hi = _quality(c_term, rad, 40), _quality(c_term, rad, 60)
    if abs(lo - hi) > Decimal("1e-20"):
        raise ArithmeticError("quality unstable across working precisions")
    return AbcTriple(a_term, b_term, c_term, rad, hi.quantize(Decimal("1e-15")))


def eq13_quality_bound(q_value: int, z2: int) -> float:
    """Lower bound ``z2 log q / (log 2 + 1.5 log q)`` on the quality of
    ``2**x2 + p**y2 = q**z2``; for ``z2 = 3`` this is
    ``2 - 2 log 2 / (1.5 log q + log 2)``."""
    if q_value < 2:
        raise ValueError("q must be >= 2")
    if z2 < 3 or z2 % 2 == 0:
        raise ValueError("z2 must be odd and >= 3")
    lq = math.log(q_value)
    return z2 * lq / (math.log(2) + 1.5 * lq)
