"""Continued fractions, convergents, residues and Ostrowski digits.

Convergents use the standard initialization p_-1 = 1, q_-1 = 0, p_0 = a_0,
q_0 = 1, so that p_i/q_i really equals [a_0; a_1, ..., a_i].  Golden-mean
results are additionally exposed through the Fibonacci-indexed ladder
q_1 = q_2 = 1, q_3 = 2, ... so that index references in the rotation
lemmas line up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath

from .numutil import _MP_DPS


class InternalConsistencyError(AssertionError):
    """Two supposedly-equal evaluation routes disagreed beyond tolerance."""


@dataclass
class ContinuedFraction:
    """Partial quotients a_0, a_1, ... with their convergent table."""

    quotients: list
    exact: bool = True  # False when expansion of an inexact input was truncated
    p: list = field(init=False, repr=False)
    q: list = field(init=False, repr=False)

    def __post_init__(self):
        if not self.quotients:
            raise ValueError("need at least a_0")
        if self.quotients[0] < 0 or any(a < 1 for a in self.quotients[1:]):
            raise ValueError("require a_0 >= 0 and a_i >= 1 for i >= 1")
        p_prev, q_prev = 1, 0  # index -1
        p_cur, q_cur = self.quotients[0], 1
        self.p, self.q = [p_cur], [q_cur]
        for a in self.quotients[1:]:
            p_prev, p_cur = p_cur, a * p_cur + p_prev
            q_prev, q_cur = q_cur, a * q_cur + q_prev
            self.p.append(p_cur)
            self.q.append(q_cur)

    def __len__(self):
        return len(self.quotients)

    def convergents(self):
        """All (p_i, q_i) pairs, i = 0 .. m."""
        return list(zip(self.p, self.q))

    def convergent(self, i):
        if i == -1:
            return (1, 0)
        return (self.p[i], self.q[i])

    def value(self) -> Fraction:
        """Value of the final convergent."""
        return Fraction(self.p[-1], self.q[-1])

    def tail(self, n: int):
        """[a_{n+1}; a_{n+2}, ...] as an mpf (the complete quotient after index n)."""
        rest = self.quotients[n + 1:]
        if not rest:
            raise ValueError(f"no quotients beyond index {n}")
        with mpmath.workdps(_MP_DPS):
            t = mpmath.mpf(rest[-1])
            for a in reversed(rest[:-1]):
                t = a + 1 / t
            return t

    def __str__(self):
        if len(self.quotients) == 1:
            return f"[{self.quotients[0]}]"
        rest = ", ".join(str(a) for a in self.quotients[1:])
        return f"[{self.quotients[0]}; {rest}]"


def cf_expand(value, max_terms: int = 64, precision: Optional[int] = None) -> ContinuedFraction:
    """Expand a positive value into partial quotients.

    Exact rationals terminate exactly.  For fixed-point inputs pass the
    raw integer together with its precision; expansion then stops early
    once the remaining quotients could no longer be trusted (denominator
    growth eats the available bits), flagged via ``exact=False``.
    """
    if precision is not None:
        frac = Fraction(int(value), 1 << precision)
        q_cap = 1 << ((precision - 8) // 2)
    else:
        frac = Fraction(value)
        q_cap = None
    if frac <= 0:
        raise ValueError("value must be positive")
    quotients = []
    num, den = frac.numerator, frac.denominator
    q_prev, q_cur = 0, 1
    truncated = False
    while den and len(quotients) < max_terms:
        a, rem = divmod(num, den)
        if quotients:  # a_i >= 1 guaranteed for i >= 1 since 0 < den <= num
            q_prev, q_cur = q_cur, a * q_cur + q_prev
            if q_cap is not None and q_cur > q_cap:
                truncated = True
                break
        quotients.append(a)
        num, den = den, rem
    if den and len(quotients) >= max_terms:
        truncated = True
    return ContinuedFraction(quotients, exact=not truncated)


def convergents(cf: ContinuedFraction):
    return cf.convergents()


# --- golden mean -----------------------------------------------------------

GOLDEN_TERMS = 120  # q_120 = F_121 ~ 8.9e24, far past every desk-scale N


@lru_cache(maxsize=4)
def golden_cf(terms: int = GOLDEN_TERMS) -> ContinuedFraction:
    """phi = [1; 1, 1, ...] truncated to the given number of quotients."""
    return ContinuedFraction([1] * terms)


def golden_phi_fraction(bits: int = 192) -> Fraction:
    """phi = (1 + sqrt 5)/2 as an exact dyadic approximation (floor to `bits` bits)."""
    import math
    root5 = math.isqrt(5 << (2 * bits))
    return Fraction(root5 + (1 << bits), 1 << (bits + 1))


@lru_cache(maxsize=None)
def fibonacci(h: int) -> int:
    """F_h with F_0 = 0, F_1 = F_2 = 1; the golden ladder has q_h = F_h."""
    if h < 0:
        raise ValueError("h must be >= 0")
    a, b = 0, 1
    for _ in range(h):
        a, b = b, a + b
    return a


def phi_mpf():
    return (1 + mpmath.sqrt(5)) / 2


# --- residues --------------------------------------------------------------


def residue(z, cf: ContinuedFraction, n: int, tail=None,
            tolerance_bits: int = 56) -> Fraction:
    """z - p_n/q_n, cross-checked against the closed form.

    The closed form (-1)^n / (q_n (t q_n + q_{n-1})), with t the complete
    quotient after index n, must agree with direct subtraction within
    2^-tolerance_bits; disagreement signals an indexing bug and raises.
    Returns the direct difference as an exact Fraction of the given z.
    """
    if n < 0 or n >= len(cf):
        raise ValueError(f"index {n} outside convergent table")
    z = Fraction(z)
    p_n, q_n = cf.convergent(n)
    _, q_prev = cf.convergent(n - 1)
    direct = z - Fraction(p_n, q_n)
    with mpmath.workdps(_MP_DPS):
        if tail is None:
            tail = cf.tail(n) if n + 1 < len(cf) else None
        if tail is not None:
            closed = mpmath.mpf(-1) ** n / (q_n * (tail * q_n + q_prev))
            diff = abs(mpmath.mpf(direct.numerator) / direct.denominator - closed)
            if diff > mpmath.mpf(2) ** (-tolerance_bits):
                raise InternalConsistencyError(
                    f"residue routes disagree at n={n}: direct={float(direct)}, "
                    f"closed={float(closed)}")
    return direct


# --- Ostrowski representations --------------------------------------------


@dataclass
class OstrowskiRep:
    """Digits of N = sum_i b_i q_i over a denominator ladder.

    ``weights[i]`` and ``caps[i]`` give q_i and the admissible maximum of
    b_i; ``shifted[i]`` gives the next-lower ladder entry q_{i-1} used by
    the gap-count and ratio formulas.  For the golden mean the ladder is
    Fibonacci-indexed (q_1 = q_2 = 1) and ``indices`` carries that view.
    """

    n: int
    coeffs: list
    weights: list
    caps: list
    shifted: list
    indices: list

    def __post_init__(self):
        if sum(b * q for b, q in zip(self.coeffs, self.weights)) != self.n:
            raise ValueError("digits do not reconstruct N")
        for j in range(len(self.coeffs)):
            if not 0 <= self.coeffs[j] <= self.caps[j]:
                raise ValueError("digit outside its admissible range")
            if self.coeffs[j] == self.caps[j] and j > 0 and self.coeffs[j - 1] != 0:
                raise ValueError("maximal digit must be preceded by a zero digit")

    @property
    def top(self):
        """Position j of the highest nonzero digit."""
        for j in reversed(range(len(self.coeffs))):
            if self.coeffs[j]:
                return j
        raise ValueError("empty representation")

    def nonzero(self):
        return [(self.indices[j], self.coeffs[j])
                for j in reversed(range(len(self.coeffs))) if self.coeffs[j]]

    def __str__(self):
        return " ".join(f"{b}@{i}" for i, b in self.nonzero())


def _greedy(n: int, weights, caps):
    coeffs = [0] * len(weights)
    rem = n
    for j in reversed(range(len(weights))):
        b = min(rem // weights[j], caps[j])
        coeffs[j] = b
        rem -= b * weights[j]
    if rem:
        raise ValueError("ladder too short for N")
    return coeffs


def ostrowski(N: int, cf: ContinuedFraction) -> OstrowskiRep:
    """Greedy digits of N over the best-approximation denominators of cf.

    Ladder entries are the standard q_0 = 1, q_1, ..., with digit caps
    a_1 - 1 at q_0 and a_{j+1} at q_j; the greedy choice automatically
    satisfies the zero-after-maximal-digit constraint.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if len(cf) < 2:
        raise ValueError("need at least one partial quotient beyond a_0")
    if cf.q[-1] <= N:
        raise ValueError("convergent table too short for N")
    m = 0
    while cf.q[m + 1] <= N:
        m += 1
    weights = cf.q[:m + 1]
    caps = [cf.quotients[1] - 1] + [cf.quotients[j + 1] for j in range(1, m + 1)]
    coeffs = _greedy(N, weights, caps)
    shifted = [0] + cf.q[:m]  # q_{-1} = 0
    return OstrowskiRep(N, coeffs, weights, caps, shifted, list(range(m + 1)))


def golden_ostrowski(N: int) -> OstrowskiRep:
    """Zeckendorf digits of N over the Fibonacci ladder q_h = F_h.

    The two unit weights q_1 = q_2 = 1 are resolved greedily from the top,
    so a trailing 1 lands on the higher of the two indices.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    m = 2
    while fibonacci(m + 1) <= N:
        m += 1
    indices = list(range(1, m + 1))
    weights = [fibonacci(h) for h in indices]
    caps = [1] * len(indices)
    coeffs = _greedy(N, weights, caps)
    shifted = [fibonacci(h - 1) for h in indices]  # q_0 = 0
    return OstrowskiRep(N, coeffs, weights, caps, shifted, indices)


def lemma11_ratio(rep: OstrowskiRep) -> Fraction:
    """sum b_i q_i / sum b_i q_{i-1}; tends to phi for golden digits."""
    num = sum(b * q for b, q in zip(rep.coeffs, rep.weights))
    den = sum(b * q for b, q in zip(rep.coeffs, rep.shifted))
    if den == 0:
        raise ZeroDivisionError("all digit mass sits at the bottom of the ladder")
    return Fraction(num, den)


def lemma12_value(h: int):
    """(1 + 1/phi^2) * ||q_{h-1} phi|| * q_h on the Fibonacci ladder (-> 1)."""
    if h < 2:
        raise ValueError("h must be >= 2")
    q_h, q_h1, q_h2 = fibonacci(h), fibonacci(h - 1), fibonacci(h - 2)
    with mpmath.workdps(_MP_DPS):
        phi = phi_mpf()
        k = 1 / (phi * q_h1 + q_h2)  # ||q_{h-1} phi|| exactly, by the residue identity
        return float((1 + 1 / phi ** 2) * k * q_h)
