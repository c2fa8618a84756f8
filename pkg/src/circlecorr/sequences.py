"""Point families on the unit circle.

Supported kinds: van der Corput in base b (exact rational batches),
Kronecker rotations {n z} (golden mean or user-supplied z), {sqrt(n)},
and seeded i.i.d. uniform points on the fixed-point grid.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from .numutil import (DEFAULT_PRECISION, RationalPoint, UnitPoint,
                      _check_precision)

# floor(frac(phi) * 2^192); frac(phi) = (sqrt(5) - 1) / 2
_GOLDEN_BITS = 192
_GOLDEN_FRAC_192 = (math.isqrt(5 << (2 * _GOLDEN_BITS)) - (1 << _GOLDEN_BITS)) // 2

# exact vdc batches keep a common denominator b^k up to this bound
EXACT_DENOM_CAP = 1 << 120


def golden_raw(precision=DEFAULT_PRECISION) -> int:
    """frac(phi) rounded to the nearest P-bit grid point."""
    shift = _GOLDEN_BITS - precision
    return (_GOLDEN_FRAC_192 + (1 << (shift - 1))) >> shift


def resolve_z(z_spec, precision=DEFAULT_PRECISION) -> int:
    """Turn a rotation spec into a P-bit raw value of {z}.

    Accepts "golden", an exact Fraction (or "p/q" string), a decimal
    literal string with enough digits to pin down P+8 bits, or a raw
    integer already on the grid.
    """
    if z_spec == "golden":
        return golden_raw(precision)
    if isinstance(z_spec, int):
        return z_spec % (1 << precision)
    if isinstance(z_spec, Fraction):
        return UnitPoint.from_fraction(z_spec, precision).value
    if isinstance(z_spec, str):
        if "/" in z_spec:
            return UnitPoint.from_fraction(Fraction(z_spec), precision).value
        if "." not in z_spec:
            return UnitPoint.from_fraction(Fraction(int(z_spec)), precision).value
        frac_digits = len(z_spec.split(".")[1])
        if frac_digits * math.log2(10) < precision + 8:
            raise ValueError(
                f"decimal z needs >= {math.ceil((precision + 8) / math.log2(10))} "
                f"fractional digits for precision {precision}, got {frac_digits}")
        return UnitPoint.from_fraction(Fraction(z_spec), precision).value
    raise TypeError(f"unsupported z spec: {z_spec!r}")


@dataclass
class SequenceSpec:
    """Declarative description of a point family."""

    kind: str  # vdc | kronecker | sqrt_frac | iid
    base: int = 2
    include_zero: bool = True
    z_spec: Union[str, int, Fraction] = "golden"
    seed: int = 0
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.kind not in ("vdc", "kronecker", "sqrt_frac", "iid"):
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        if self.kind == "vdc" and self.base < 2:
            raise ValueError("vdc base must be >= 2")
        _check_precision(self.precision)


@dataclass
class FixedBatch:
    """Points on the 2^P grid; numpy uint64 when P=64, python ints otherwise."""

    precision: int
    raw: Union[np.ndarray, list]

    def __len__(self):
        return len(self.raw)

    @property
    def modulus(self):
        return 1 << self.precision

    def raw_list(self):
        return [int(v) for v in self.raw]

    def points(self):
        return [UnitPoint(int(v), self.precision) for v in self.raw]


@dataclass
class RationalBatch:
    """Exact points numerators[i] / base**exponent."""

    base: int
    exponent: int
    numerators: list = field(default_factory=list)

    def __len__(self):
        return len(self.numerators)

    @property
    def denominator(self):
        return self.base ** self.exponent

    def points(self):
        return [RationalPoint(n, self.base, self.exponent) for n in self.numerators]

    def to_fixed(self, precision=DEFAULT_PRECISION) -> FixedBatch:
        den = self.denominator
        scale = 1 << precision
        raw = [((n * scale * 2 + den) // (2 * den)) % scale for n in self.numerators]
        if precision == 64:
            return FixedBatch(precision, np.array(raw, dtype=np.uint64))
        return FixedBatch(precision, raw)


Batch = Union[FixedBatch, RationalBatch]


def vdc(n: int, base: int = 2) -> RationalPoint:
    """Radical inverse of n: reverse the base-b digits across the point."""
    if n < 0:
        raise ValueError("n must be >= 0")
    digits = 0
    rev = 0
    m = n
    while m:
        rev = rev * base + m % base
        m //= base
        digits += 1
    return RationalPoint(rev, base, digits)


def _num_digits(n: int, base: int) -> int:
    digits = 0
    while n:
        digits += 1
        n //= base
    return digits


def kronecker(n: int, z_spec="golden", precision=DEFAULT_PRECISION) -> UnitPoint:
    """{n z} on the fixed-point grid: (n * Z) mod 2^P."""
    if n < 0:
        raise ValueError("n must be >= 0")
    z = resolve_z(z_spec, precision)
    return UnitPoint(n * z, precision)


def sqrt_frac(n: int, precision=DEFAULT_PRECISION) -> UnitPoint:
    """{sqrt(n)} within 1 ulp; perfect squares give exactly 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    r = math.isqrt(n)
    if r * r == n:
        return UnitPoint(0, precision)
    whole = math.isqrt(n << (2 * precision))  # floor(sqrt(n) * 2^P)
    return UnitPoint(whole - (r << precision), precision)


def iid_uniform(count: int, seed: int, precision=DEFAULT_PRECISION) -> FixedBatch:
    """Seeded uniform draws on the 2^P grid; deterministic for a fixed seed."""
    if count < 0:
        raise ValueError("count must be >= 0")
    rng = random.Random(seed)
    raw = [rng.getrandbits(precision) for _ in range(count)]
    if precision == 64:
        return FixedBatch(precision, np.array(raw, dtype=np.uint64))
    return FixedBatch(precision, raw)


def _vdc_batch(base: int, N: int, include_zero: bool, precision: int) -> Batch:
    start = 0 if include_zero else 1
    last = start + N - 1
    k = _num_digits(last, base)
    if base ** k > EXACT_DENOM_CAP:
        raw = [vdc(n, base).to_unit_point(precision).value for n in range(start, start + N)]
        if precision == 64:
            return FixedBatch(precision, np.array(raw, dtype=np.uint64))
        return FixedBatch(precision, raw)
    nums = []
    for n in range(start, start + N):
        p = vdc(n, base)
        nums.append(p.numerator * base ** (k - p.exponent))
    return RationalBatch(base, k, nums)


def _kronecker_batch(z_spec, N: int, precision: int) -> FixedBatch:
    z = resolve_z(z_spec, precision)
    if precision == 64:
        n = np.arange(N, dtype=np.uint64)
        raw = n * np.uint64(z)  # wraps mod 2^64
        return FixedBatch(precision, raw)
    mod = 1 << precision
    return FixedBatch(precision, [(n * z) % mod for n in range(N)])


def generate(spec: SequenceSpec, N: int, start: int = 0) -> Batch:
    """First N points of the family described by spec.

    For vdc the batch is exact over the common denominator b^k (k = digits
    of the largest index) unless b^k exceeds the exact-mode cap, in which
    case a fixed-point batch is returned instead.  `start` offsets the
    index range for kronecker/sqrt_frac (points n = start .. start+N-1).
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if spec.kind == "vdc":
        return _vdc_batch(spec.base, N, spec.include_zero, spec.precision)
    if spec.kind == "kronecker":
        batch = _kronecker_batch(spec.z_spec, N + start, spec.precision)
        if start:
            return FixedBatch(spec.precision, batch.raw[start:])
        return batch
    if spec.kind == "sqrt_frac":
        raw = [sqrt_frac(n, spec.precision).value for n in range(start + 1, start + N + 1)]
        if spec.precision == 64:
            return FixedBatch(spec.precision, np.array(raw, dtype=np.uint64))
        return FixedBatch(spec.precision, raw)
    return iid_uniform(N, spec.seed, spec.precision)


def kronecker_orbit(z_spec, N: int, precision=DEFAULT_PRECISION,
                    first: int = 1) -> FixedBatch:
    """Points {n z} for n = first .. first+N-1 (default starts at n=1)."""
    batch = _kronecker_batch(z_spec, N + first, precision)
    return FixedBatch(precision, batch.raw[first:])
