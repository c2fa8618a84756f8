"""Gap structure of rotation orbits: census, prediction, window composition.

The census is purely empirical (exact raw gap lengths of a sorted batch);
the prediction side derives the admissible gap lengths of {nz}, n = 1..N,
from the Ostrowski digits of N.  The two paths stay independent so one
can verify the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import cf as cfmod
from .numutil import DEFAULT_PRECISION
from .paircorr import sorted_raw
from .sequences import kronecker_orbit, resolve_z


@dataclass
class GapCensus:
    """Distinct circular gap lengths (raw units) with multiplicities, ascending."""

    entries: list  # (length_raw, multiplicity)
    modulus: int
    n_points: int
    has_duplicates: bool = False

    @property
    def lengths(self):
        return [length for length, _ in self.entries]

    def total_length(self):
        return sum(length * mult for length, mult in self.entries)

    def total_gaps(self):
        return sum(mult for _, mult in self.entries)


def gap_census(points, merge_ulps: int = 0) -> GapCensus:
    """Sort a batch and tally its N circular gaps by exact raw length.

    ``merge_ulps`` optionally merges length groups closer than the given
    number of raw units (multiplicities add, the smaller length is kept).
    Duplicate points surface as zero-length gaps and set a flag.
    """
    a, modulus = sorted_raw(points)
    n = len(a)
    if n < 2:
        raise ValueError("census needs at least two points")
    if isinstance(a, np.ndarray):
        gaps = [int(g) for g in np.diff(a)]
    else:
        gaps = [a[i + 1] - a[i] for i in range(n - 1)]
    gaps.append((int(a[0]) - int(a[-1])) % modulus)
    counts = {}
    for g in gaps:
        counts[g] = counts.get(g, 0) + 1
    entries = sorted(counts.items())
    if merge_ulps:
        merged = [list(entries[0])]
        for length, mult in entries[1:]:
            if length - merged[-1][0] <= merge_ulps:
                merged[-1][1] += mult
            else:
                merged.append([length, mult])
        entries = [tuple(e) for e in merged]
    return GapCensus(entries, modulus, n, has_duplicates=entries[0][0] == 0)


def gap_classes(points) -> tuple:
    """(class per sorted-rank gap, census) with 0 = small, 1 = large, 2 = other.

    Gap i sits between sorted points of rank i and i+1 (mod N).  Classes
    come from the two smallest distinct census lengths.
    """
    a, modulus = sorted_raw(points)
    census = gap_census(points)
    small = census.lengths[0]
    large = census.lengths[1] if len(census.lengths) > 1 else None
    n = len(a)
    raw = [int(v) for v in a]
    classes = []
    for i in range(n):
        g = (raw[(i + 1) % n] - raw[i]) % modulus
        if g == small:
            classes.append(0)
        elif g == large:
            classes.append(1)
        else:
            classes.append(2)
    return classes, census


@dataclass
class GapPrediction:
    """Admissible gap lengths of {nz}, n = 1..N, in raw units.

    Derived from the unique decomposition N = m q_k + q_{k-1} + r
    (1 <= m <= a_{k+1}, 0 <= r < q_k) over the best-approximation
    denominators of z: with K_l = ||q_l z||, the short length is K_k, the
    middle one K_{k-1} - m K_k (absent when r = 0), and the long one is
    their sum.
    """

    l1: int  # K_{k-1} - m K_k
    l2: int  # K_k
    l3: int  # l1 + l2
    k: int
    m: int
    r: int
    modulus: int

    @property
    def lengths(self):
        return (self.l1, self.l2, self.l3)


def circle_norm_raw(value: int, modulus: int) -> int:
    v = value % modulus
    return min(v, modulus - v)


def gap_decomposition(N: int, denominators) -> tuple:
    """(k, m, r) with N = m q_k + q_{k-1} + r, 1 <= m, 0 <= r < q_k.

    ``denominators`` lists q_0, q_1, ... ascending (q_{-1} = 0 implied);
    k is the unique index with q_k + q_{k-1} <= N < q_{k+1} + q_k.
    """
    q = [0] + list(denominators)  # q[j] = q_{j-1}
    k = 0
    while k + 2 < len(q) and q[k + 2] + q[k + 1] <= N:
        k += 1
    if k + 2 >= len(q):
        raise ValueError("denominator ladder too short for N")
    m, r = divmod(N - q[k], q[k + 1])
    return k, m, r


def predict_gaps(z_spec, N: int, precision: int = DEFAULT_PRECISION,
                 cf: Optional[cfmod.ContinuedFraction] = None) -> GapPrediction:
    """Gap lengths L1, L2, L3 = L1 + L2 for the orbit {nz}, n = 1..N.

    K values are computed exactly on the fixed-point grid of z, so they
    are directly comparable to an empirical census of the same grid
    points.
    """
    if N < 2:
        raise ValueError("N must be >= 2")
    z_raw = resolve_z(z_spec, precision)
    modulus = 1 << precision
    if cf is None:
        if z_spec == "golden":
            cf = cfmod.golden_cf()
        else:
            cf = cfmod.cf_expand(z_raw, precision=precision)
    # q_i does not depend on a_0, so cf may describe z or {z} interchangeably
    denominators = cf.q
    k, m, r = gap_decomposition(N, denominators)
    while True:
        q_k = denominators[k]
        q_k1 = denominators[k - 1] if k >= 1 else 0
        kk = circle_norm_raw(q_k * z_raw, modulus)
        kk1 = circle_norm_raw(q_k1 * z_raw, modulus) if q_k1 else modulus
        l1 = kk1 - m * kk
        if l1 > 0 or k == 0:
            break
        # tied ladder entries (q_1 = q_0) can land the decomposition one
        # index too high, collapsing L1 to zero; step down once
        k -= 1
        m, r = divmod(N - (denominators[k - 1] if k >= 1 else 0), denominators[k])
    l2 = kk
    return GapPrediction(l1, l2, l1 + l2, k, m, r, modulus)


@dataclass
class IntervalComposition:
    """Gap classes inside the window (x_n*, x_{n+k}*] of a sorted orbit."""

    start_rank: int
    width: int
    small: int
    large: int
    other: int
    expected_large: int


def expected_large_gaps(k: int) -> int:
    """Digit-sum prediction sum b_i q_{i-1} for a window of k gaps.

    The Fibonacci ladder carries two unit weights (q_1 = q_2 = 1), so a
    number has several admissible digit strings.  The window count
    realizes the representation terminated at index 1: expanding the
    lowest Zeckendorf term down the ladder lowers the digit sum by one
    exactly when that term sits at an even index.  Verified exhaustively
    against brute-force window censuses up to N = 987.
    """
    rep = cfmod.golden_ostrowski(k)
    g = sum(b * q for b, q in zip(rep.coeffs, rep.shifted))
    lowest = min(i for i, _ in rep.nonzero())
    if lowest % 2 == 0:
        g -= 1
    return g


def interval_composition(points, n: int, k: int,
                         classes_census=None) -> IntervalComposition:
    """Count small/large gaps among the k gaps starting at sorted rank n.

    ``points`` must be a golden-rotation orbit at a Fibonacci size (at most
    two distinct gap lengths); ranks wrap modulo N with glued endpoints.
    """
    classes, census = classes_census if classes_census else gap_classes(points)
    if len(census.lengths) > 3:
        raise ValueError("more than three distinct gap lengths: not a rotation orbit")
    total = len(classes)
    if not 1 <= k <= total:
        raise ValueError("window width must be in 1..N")
    small = large = other = 0
    for i in range(n, n + k):
        c = classes[i % total]
        if c == 0:
            small += 1
        elif c == 1:
            large += 1
        else:
            other += 1
    return IntervalComposition(n % total, k, small, large, other,
                               expected_large_gaps(k))


@dataclass
class Lemma9Check:
    """Per-point normalized close-neighbor count against the (s/2, 4s) bounds."""

    l: int
    count: int
    normalized: float
    lower: float
    upper: float
    passed: bool
    vacuous: bool


def lemma9_bounds_check(l: int, N: int, s, alpha,
                        precision: int = DEFAULT_PRECISION) -> Lemma9Check:
    """Count m != l with ||x_l - x_m|| <= s/N^alpha in the golden orbit x_n = {n phi}.

    The count is normalized by N^(1-alpha): the full statistic's N^(2-alpha)
    normalization includes the factor N of choices of l.  When the threshold
    undercuts the minimal gap the count is zero and the check is vacuous.
    """
    from .numutil import threshold_from
    from .paircorr import min_pair_distance
    if not 1 <= l <= N:
        raise ValueError("need 1 <= l <= N")
    orbit = kronecker_orbit("golden", N, precision=precision)
    thr = threshold_from(s, N, alpha, precision=precision)
    t = thr.distance.value
    raw = orbit.raw
    modulus = 1 << precision
    x = int(raw[l - 1])
    if isinstance(raw, np.ndarray):
        a = np.sort(raw)
        count = _window_count(a, x, t, modulus)
    else:
        a = sorted(raw)
        count = sum(1 for v in a if circle_norm_raw(v - x, modulus) <= t) - 1
    normalized = count / N ** (1 - float(alpha))
    s_f = float(s)
    lower, upper = s_f / 2, 4 * s_f
    vacuous = count == 0 and t < min_pair_distance(orbit)
    return Lemma9Check(l, count, normalized, lower, upper,
                       lower < normalized < upper, vacuous)


def _window_count(a_sorted: np.ndarray, x: int, t: int, modulus: int) -> int:
    """# of points within circle distance t of x, excluding one copy of x itself."""
    lo = (x - t) % modulus
    hi = (x + t) % modulus
    if modulus == 1 << 64:
        lo, hi = np.uint64(lo), np.uint64(hi)
    n = len(a_sorted)
    if lo <= hi:
        count = int(np.searchsorted(a_sorted, hi, side="right")
                    - np.searchsorted(a_sorted, lo, side="left"))
    else:  # window wraps zero
        count = int(np.searchsorted(a_sorted, hi, side="right")
                    + n - np.searchsorted(a_sorted, lo, side="left"))
    return count - 1
