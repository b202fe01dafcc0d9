"""Continued fractions of square roots, their convergents, and Pell equations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional


def _require_nonsquare(D: int) -> int:
    if D < 2:
        raise ValueError(f"D must be >= 2, got {D}")
    r = math.isqrt(D)
    if r * r == D:
        raise ValueError(f"{D} is a perfect square")
    return r


@dataclass(frozen=True)
class SurdExpansion:
    """``sqrt(D) = [a0; period...]`` with the minimal period."""

    D: int
    a0: int
    period: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.period)

    def term(self, m: int) -> int:
        """Partial quotient ``a_m`` for any ``m >= 0``."""
        if m == 0:
            return self.a0
        return self.period[(m - 1) % self.s]

    def __str__(self) -> str:
        return f"[{self.a0}; {', '.join(map(str, self.period))}]"


@dataclass(frozen=True)
class Convergent:
    """The m-th convergent ``P/Q`` and ``k = (-1)**(m+1) * (P**2 - D*Q**2)``."""

    m: int
    P: int
    Q: int
    k: int


@dataclass(frozen=True)
class PellSolution:
    D: int
    h: int
    k: int
    norm: int
    fundamental: bool = False

    def __post_init__(self):
        if self.h * self.h - self.D * self.k * self.k != self.norm:
            raise ValueError(f"{self.h}^2 - {self.D}*{self.k}^2 != {self.norm}")


def sqrt_cf(D: int) -> SurdExpansion:
    """Periodic expansion of ``sqrt(D)`` via the integer (m, d, a) recurrence.

    The period closes when the (m, d) state returns to the state reached
    after the first step, which always gives the minimal period.
    """
    a0 = _require_nonsquare(D)
    m, d, a = 0, 1, a0
    terms = []
    start = None
    while True:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        if start is None:
            start = (m, d)
        elif (m, d) == start:
            break
        terms.append(a)
    return SurdExpansion(D, a0, tuple(terms))


def _convergents_of(exp: SurdExpansion, count: int) -> list[Convergent]:
    D = exp.D
    out = []
    p_prev, p = 1, exp.a0
    q_prev, q = 0, 1
    for m in range(count):
        if m:
            a = exp.term(m)
            p_prev, p = p, a * p + p_prev
            q_prev, q = q, a * q + q_prev
        sign = 1 if m % 2 else -1
        out.append(Convergent(m, p, q, sign * (p * p - q * q * D)))
    return out


def convergents(D: int, count: int) -> list[Convergent]:
    """The first ``count`` convergents of ``sqrt(D)``, indexed from 0."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return _convergents_of(sqrt_cf(D), count)


def k_periodicity_check(D: int, n_periods: int) -> bool:
    exp = sqrt_cf(D)
    s = exp.s
    ks = [c.k for c in _convergents_of(exp, s * (n_periods + 1))]
    return all(ks[n * s + j] == ks[j] for n in range(1, n_periods + 1) for j in range(s))


def lemma35_expected(p: int, n: int) -> tuple[SurdExpansion, tuple[Convergent, ...]]:
    """Closed-form expansion and first five convergents of ``sqrt(p**(2n) + 4)``.

    Built from the formulas in ``p`` and ``n`` alone, without running the
    expansion, so it can be checked against :func:`sqrt_cf`.
    """
    if p % 2 == 0:
        raise ValueError(f"p must be odd, got {p}")
    if p < 3:
        raise ValueError("p must be >= 3 (p = 1 gives a zero partial quotient)")
    if n < 1:
        raise ValueError("n must be >= 1")
    t = p**n
    D = t * t + 4
    half = (t - 1) // 2
    exp = SurdExpansion(D, t, (half, 1, 1, half, 2 * t))
    convs = (
        Convergent(0, t, 1, 4),
        Convergent(1, (t * t - t + 2) // 2, (t - 1) // 2, t),
        Convergent(2, (t * t + t + 2) // 2, (t + 1) // 2, t),
        Convergent(3, t * t + 2, t, 4),
        Convergent(4, (t * t + 3) * t // 2, (t * t + 1) // 2, 1),
    )
    return exp, convs


def pell_fundamental(D: int, norm: int) -> Optional[PellSolution]:
    """Fundamental solution of ``h**2 - D*k**2 = norm`` for ``norm`` in {1, -1}.

    Read off the convergent at the end of the first period; for an odd period
    that convergent has norm -1 and its square gives the +1 solution.
    """
    if norm not in (1, -1):
        raise ValueError("norm must be +1 or -1")
    exp = sqrt_cf(D)
    last = _convergents_of(exp, exp.s)[-1]
    h, k = last.P, last.Q
    odd = exp.s % 2 == 1
    if norm == -1:
        return PellSolution(D, h, k, -1, True) if odd else None
    if odd:
        h, k = h * h + D * k * k, 2 * h * k
    return PellSolution(D, h, k, 1, True)


def pell_powers(fund: PellSolution, count: int) -> list[PellSolution]:
    """``(h + k sqrt D)**j`` for ``j = 1..count``."""
    D, h1, k1 = fund.D, fund.h, fund.k
    out = []
    h, k = h1, k1
    for j in range(1, count + 1):
        out.append(PellSolution(D, h, k, fund.norm**j, j == 1))
        h, k = h * h1 + D * k * k1, h * k1 + k * h1
    return out


def _rad_divides(n: int, v: int) -> bool:
    """Whether every prime dividing ``n`` also divides ``v`` (no factoring)."""
    n = abs(n)
    g = math.gcd(n, v)
    while g > 1:
        while n % g == 0:
            n //= g
        g = math.gcd(n, g)
    return n == 1


def lemma32_check(D: int, n_powers: int) -> bool:
    """Every prime factor of ``h1`` divides ``V`` in the first ``n_powers``
    solutions ``(U, V)`` of ``U**2 - D*V**2 = 1``, where ``h1 + k1 sqrt D`` is
    the fundamental solution of the negative Pell equation."""
    neg = pell_fundamental(D, -1)
    if neg is None:
        raise ValueError(f"x^2 - {D} y^2 = -1 has no solution")
    pos = pell_fundamental(D, 1)
    return all(_rad_divides(neg.h, sol.k) for sol in pell_powers(pos, n_powers))


def small_norm_classification(D: int, y_bound: int) -> bool:
    """Every coprime ``(x, y)``, ``y <= y_bound``, with ``|x**2 - D*y**2| < sqrt(D)``
    has that norm among ``k_0 .. k_{s-1}``."""
    exp = sqrt_cf(D)
    ks = {c.k for c in _convergents_of(exp, exp.s)}
    for y in range(1, y_bound + 1):
        r = math.isqrt(y * y * D)
        for x in range(max(1, r - 1), r + 3):
            if math.gcd(x, y * D) != 1:
                continue
            norm = x * x - y * y * D
            if norm * norm < D and abs(norm) not in ks:
                return False
    return True
