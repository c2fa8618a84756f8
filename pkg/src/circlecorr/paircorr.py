"""Close-pair counting under the circle norm and the F statistic.

All counts are ordered-pair counts (l != m counted in both directions),
exact integers.  The fast path sorts once and counts clockwise neighbors
with a circular sweep; the naive path is a full distance matrix kept as
an independent oracle.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .numutil import Threshold, threshold_from
from .sequences import FixedBatch, RationalBatch

_U64 = np.uint64
_FULL64 = 1 << 64


def _raw_and_modulus(points):
    """Normalize any batch form to (raw values, modulus)."""
    if isinstance(points, FixedBatch):
        return points.raw, 1 << points.precision
    if isinstance(points, RationalBatch):
        return points.numerators, points.denominator
    raise TypeError(f"unsupported batch type {type(points).__name__}")


def _as_u64_array(raw):
    if isinstance(raw, np.ndarray):
        return raw.astype(np.uint64, copy=False)
    return np.array([int(v) for v in raw], dtype=np.uint64)


def _numpy_capable(raw, modulus):
    # moduli in (2^63, 2^64) would overflow the uint64 sweep arithmetic
    if modulus != _FULL64 and modulus > (1 << 63):
        return False
    if isinstance(raw, np.ndarray):
        return True
    return all(0 <= int(v) < modulus for v in raw)


# --- naive oracle ----------------------------------------------------------


def pair_count_naive(points, threshold_raw: int, modulus: Optional[int] = None) -> int:
    """O(N^2) ordered count of pairs with circle distance <= threshold.

    ``points`` is a batch or a plain sequence of raw integers (then
    ``modulus`` is required).  Kept deliberately independent of the
    sweep-based fast path.
    """
    if modulus is None:
        raw, modulus = _raw_and_modulus(points)
    else:
        raw = points
    n = len(raw)
    if n < 2:
        return 0
    if 2 * threshold_raw >= modulus:
        return n * (n - 1)
    if _numpy_capable(raw, modulus):
        a = _as_u64_array(raw)
        if modulus < _FULL64:
            # lift before subtracting: a uint64 wrap mod 2^64 would not
            # reduce correctly mod a modulus that does not divide 2^64
            d = (a[:, None] + _U64(modulus) - a[None, :]) % _U64(modulus)
            circ = np.minimum(d, _U64(modulus) - d)
            circ[np.diag_indices(n)] = 0
        else:
            d = a[:, None] - a[None, :]  # wraps exactly mod 2^64
            circ = np.minimum(d, _U64(0) - d)
        return int((circ <= _U64(threshold_raw)).sum()) - n
    vals = [int(v) % modulus for v in raw]
    count = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            d = (vals[i] - vals[j]) % modulus
            if min(d, modulus - d) <= threshold_raw:
                count += 1
    return count


# --- sorted circular sweep -------------------------------------------------


def _count_clockwise_numpy(a_sorted: np.ndarray, t: int, modulus: int,
                           per_point: bool = False):
    """For each i, # of j != i with (a_j - a_i) mod modulus <= t; a_sorted ascending."""
    n = len(a_sorted)
    t64 = _U64(t)
    if modulus == _FULL64:
        upper = a_sorted + t64  # wraps exactly mod 2^64
        wrapped = upper < a_sorted
    else:
        m64 = _U64(modulus)
        upper = a_sorted + t64
        wrapped = upper >= m64
        upper = np.where(wrapped, upper - m64, upper)
    right = np.searchsorted(a_sorted, upper, side="right")
    left = np.searchsorted(a_sorted, a_sorted, side="left")
    counts = np.where(wrapped, (n - left) + right - 1, right - left - 1)
    if per_point:
        return counts
    # each distinct-value pair registers in exactly one sweep direction,
    # so the ordered total doubles the sweep; equal-value pairs already
    # appear in both and must not be doubled
    dup = int((np.searchsorted(a_sorted, a_sorted, side="right") - left - 1).sum())
    return 2 * int(counts.sum()) - dup


def _count_clockwise_python(sorted_vals, t: int, modulus: int) -> int:
    n = len(sorted_vals)
    total = 0
    dup = 0
    for i, v in enumerate(sorted_vals):
        upper = v + t
        left = bisect.bisect_left(sorted_vals, v)
        dup += bisect.bisect_right(sorted_vals, v) - left - 1
        if upper >= modulus:
            total += (n - left) + bisect.bisect_right(sorted_vals, upper - modulus) - 1
        else:
            total += bisect.bisect_right(sorted_vals, upper) - left - 1
    return 2 * total - dup


def sorted_raw(points):
    """(sorted raw values, modulus) for a batch; numpy-backed when possible."""
    raw, modulus = _raw_and_modulus(points)
    if _numpy_capable(raw, modulus):
        return np.sort(_as_u64_array(raw)), modulus
    return sorted(int(v) % modulus for v in raw), modulus


def pair_count_fast(points, threshold_raw: int, modulus: Optional[int] = None,
                    presorted=None) -> int:
    """Ordered close-pair count via a sorted circular sweep; equals the naive count."""
    if modulus is None:
        if presorted is not None:
            raise ValueError("presorted input requires an explicit modulus")
        a, modulus = sorted_raw(points)
    elif presorted is not None:
        a = presorted
    else:
        a, _ = (np.sort(_as_u64_array(points)), modulus) \
            if _numpy_capable(points, modulus) else (sorted(points), modulus)
    n = len(a)
    if n < 2:
        return 0
    if 2 * threshold_raw >= modulus:
        return n * (n - 1)
    if isinstance(a, np.ndarray):
        return _count_clockwise_numpy(a, threshold_raw, modulus)
    return _count_clockwise_python(a, threshold_raw, modulus)


def per_point_counts(a_sorted: np.ndarray, threshold_raw: int, modulus: int) -> np.ndarray:
    """Clockwise+counterclockwise neighbor count per sorted point (ordered count shares)."""
    cw = _count_clockwise_numpy(a_sorted, threshold_raw, modulus, per_point=True)
    # counterclockwise neighbors of i are the points with i clockwise-within t;
    # recompute symmetrically by sweeping the reflected circle
    m = modulus if modulus < _FULL64 else 0
    if modulus == _FULL64:
        refl = np.sort(_U64(0) - a_sorted)
    else:
        refl = np.sort((_U64(m) - a_sorted) % _U64(m))
    ccw = _count_clockwise_numpy(refl, threshold_raw, modulus, per_point=True)
    # reflection reverses the sort order up to duplicates of 0; align by value
    order = np.searchsorted(refl, (_U64(0) - a_sorted) if modulus == _FULL64
                            else (_U64(m) - a_sorted) % _U64(m), side="left")
    return cw + ccw[order]


def min_pair_distance(points) -> int:
    """Minimum circle distance over all pairs, in raw units (sorted neighbors)."""
    a, modulus = sorted_raw(points)
    n = len(a)
    if n < 2:
        raise ValueError("need at least two points")
    if isinstance(a, np.ndarray):
        gaps = np.diff(a)
        wrap = (int(a[0]) - int(a[-1])) % modulus
        best = int(min(int(gaps.min()) if len(gaps) else wrap, wrap))
    else:
        gaps = [a[i + 1] - a[i] for i in range(n - 1)]
        gaps.append((a[0] - a[-1]) % modulus)
        best = min(gaps)
    return min(best, modulus - best)


# --- the F statistic -------------------------------------------------------


@dataclass
class PairCountResult:
    """Exact ordered close-pair count with its normalized statistic."""

    n: int
    alpha: float
    s: float
    threshold: Threshold
    ordered_pair_count: int
    ambiguous_pairs: int

    @property
    def f_value(self) -> float:
        return self.ordered_pair_count / self.n ** (2 - self.alpha)


def _exact_threshold_numerator(s: Fraction, N: int, alpha: Fraction, denominator: int) -> int:
    """Largest d with d/denominator <= s/N^alpha, by exact integer comparison."""
    an, ad = alpha.numerator, alpha.denominator
    sn, sd = s.numerator, s.denominator
    rhs = sn ** ad * denominator ** ad
    n_pow = N ** an

    def ok(d):
        return d ** ad * n_pow * sd ** ad <= rhs

    lo, hi = 0, denominator
    while lo < hi:  # max d in [lo, hi] with ok(d)
        mid = (lo + hi + 1) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid - 1
    return lo


def _to_exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


def f_stat(points, s, alpha, guard_ulps=4) -> PairCountResult:
    """Ordered count of pairs with ||x_l - x_m|| <= s/N^alpha, and F = count/N^(2-alpha).

    Rational batches are counted with exact integer comparisons against the
    exact threshold (no guard band); fixed-point batches use the rounded
    threshold and tally pairs within +-guard_ulps of it as ambiguous.
    """
    n = len(points)
    if n < 2:
        raise ValueError("need at least two points")
    if isinstance(points, RationalBatch):
        s_f, alpha_f = _to_exact(s), _to_exact(alpha)
        den = points.denominator
        d_max = _exact_threshold_numerator(s_f, n, alpha_f, den)
        a, modulus = sorted_raw(points)
        count = pair_count_fast(a, min(d_max, den // 2), modulus, presorted=a)
        thr = threshold_from(s_f, n, alpha_f, precision=64, guard_ulps=0)
        return PairCountResult(n, float(alpha), float(s), thr, count, 0)
    precision = points.precision
    thr = threshold_from(s, n, alpha, precision=precision, guard_ulps=guard_ulps)
    a, modulus = sorted_raw(points)
    t = thr.distance.value
    if thr.degenerate:
        return PairCountResult(n, float(alpha), float(s), thr, n * (n - 1), 0)
    count = pair_count_fast(a, t, modulus, presorted=a)
    g = guard_ulps
    hi = pair_count_fast(a, min(t + g, modulus // 2), modulus, presorted=a)
    lo = pair_count_fast(a, t - g - 1, modulus, presorted=a) if t > g else 0
    return PairCountResult(n, float(alpha), float(s), thr, count, hi - lo)


def f_stat_profile(spec, n_list: Sequence[int], alpha_list, s_list, guard_ulps=4):
    """Evaluate f_stat on prefixes of one generated sequence, cell by cell.

    The longest prefix is generated once; results come back in (N, alpha, s)
    lexicographic order.
    """
    from .sequences import generate
    n_list = list(n_list)
    if any(b > a for a, b in zip(n_list[1:], n_list)):
        raise ValueError("n_list must be ascending")
    full = generate(spec, n_list[-1])
    results = []
    for n in n_list:
        if isinstance(full, RationalBatch):
            prefix = RationalBatch(full.base, full.exponent, full.numerators[:n])
        else:
            prefix = FixedBatch(full.precision, full.raw[:n])
        for alpha in alpha_list:
            for s in s_list:
                results.append(f_stat(prefix, s, alpha, guard_ulps=guard_ulps))
    return results


def rescaling_identity_check(points, s, alpha1, alpha2) -> bool:
    """Count at s/N^alpha2 equals count at (s N^(alpha1-alpha2))/N^alpha1.

    Both thresholds are the same real number; computing each through the
    shared high-precision rounding in threshold_from makes the identity
    exact at finite N.
    """
    import mpmath
    from .numutil import _MP_DPS, _as_mpf
    if not _as_mpf(alpha1) >= _as_mpf(alpha2):
        raise ValueError("need alpha1 >= alpha2")
    n = len(points)
    direct = f_stat(points, s, alpha2, guard_ulps=0)
    if isinstance(points, RationalBatch):
        import math
        s1, a1, a2 = _to_exact(s), _to_exact(alpha1), _to_exact(alpha2)
        den = points.denominator
        # alpha1 route: threshold (s N^(a1-a2)) / N^a1, every power kept exact
        r = math.lcm(a1.denominator, a2.denominator)
        rhs = s1.numerator ** r * n ** int((a1 - a2) * r) * den ** r
        lhs_const = n ** int(a1 * r) * s1.denominator ** r
        lo, hi = 0, den
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid ** r * lhs_const <= rhs:
                lo = mid
            else:
                hi = mid - 1
        a_sorted, modulus = sorted_raw(points)
        via_count = pair_count_fast(a_sorted, min(lo, modulus // 2), modulus,
                                    presorted=a_sorted)
        return via_count == direct.ordered_pair_count
    with mpmath.workdps(_MP_DPS):
        s_prime = _as_mpf(s) * mpmath.power(n, _as_mpf(alpha1) - _as_mpf(alpha2))
        via = f_stat(points, s_prime, alpha1, guard_ulps=0)
    return via.ordered_pair_count == direct.ordered_pair_count
