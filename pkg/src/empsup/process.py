"""Suprema and maximizing points of the uniform empirical process.

Two processes are handled, both built from the empirical distribution
function ``F_n`` of a sample on (0, 1):

* the standardized process ``sqrt(n) |F_n(t) - t| / sqrt(t (1 - t))`` on (0, 1)
* the plain process ``sqrt(n) |F_n(t) - t|`` on [0, 1]

Both are right-continuous with left limits and monotone between jumps in the
sense that the supremum over any constancy interval of ``F_n`` is reached at
one of its ends. The supremum is therefore found at an order statistic, either
as the value there or as the left limit there, which is what the ``O(n)``
kernels below exploit. :func:`grid_oracle_sup` checks that reduction by brute
force.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySample, InvalidAlpha, OutOfDomain

__all__ = [
    "Side",
    "Sample",
    "SupResult",
    "BoundarySplit",
    "order_statistics",
    "sup_weighted",
    "sup_unweighted",
    "sup_rows",
    "eval_process",
    "grid_oracle_sup",
    "boundary_split",
    "region_sups",
]


class Side(str, enum.Enum):
    """Which one-sided value of the process attains the supremum."""

    RIGHT_VALUE = "RightValue"
    LEFT_LIMIT = "LeftLimit"


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Sample:
    values: np.ndarray
    order_stats: np.ndarray

    @property
    def n(self) -> int:
        return int(self.values.size)

    def reflect(self) -> "Sample":
        """Return the sample mapped through ``x -> 1 - x``."""
        return order_statistics(1.0 - self.values)


@dataclass(frozen=True)
class SupResult:
    """Supremum of a process together with its (smallest) maximizing point.

    ``index`` is the 1-based rank of the order statistic at ``location``.
    ``side`` tells whether the value at ``location`` or the left limit there
    attains ``value``.
    """

    value: float
    location: float
    index: int
    side: Side


@dataclass(frozen=True)
class BoundarySplit:
    interior_sup: float
    boundary_sup: float
    alpha: float


def order_statistics(values) -> Sample:
    """Validate ``values`` and attach their sorted copy.

    Raises
    ------
    EmptySample
        If no values are given.
    OutOfDomain
        If any value lies outside the open unit interval (NaN included).
    """
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptySample("empty sample")
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise OutOfDomain("sample values must lie strictly inside (0, 1)")
    return Sample(values=_frozen(arr), order_stats=_frozen(np.sort(arr, kind="stable")))


def _gap(count, n, t):
    """``count/n - t``, rounded so that ``_gap(n - c, n, 1 - t) == -_gap(c, n, t)``
    bit for bit whenever ``1 - t`` is exact."""
    count = np.asarray(count)
    t = np.asarray(t, dtype=float)
    lower = count / n - t
    # 1 - t is exact for t >= 1/2
    upper = (1.0 - t) - (n - count) / n
    half = (2 * count - n) / (2 * n)
    out = np.where(t < 0.5, lower, np.where(t > 0.5, upper, half))
    return out if out.ndim else float(out)


def _branches(xs, weighted):
    # value at X_{i:n} and left limit there, signed and unscaled
    n = xs.shape[-1]
    i = np.arange(1, n + 1)
    right = _gap(i, n, xs)
    left = -_gap(i - 1, n, xs)
    if weighted:
        s = np.sqrt(xs * (1.0 - xs))
        right = right / s
        left = left / s
    return right, left


def sup_rows(xs, weighted=True):
    """Vectorized supremum over rows of sorted samples.

    Parameters
    ----------
    xs : ndarray, shape (R, n)
        Each row sorted nondecreasing, entries in (0, 1).
    weighted : bool
        Standardize by ``sqrt(t (1 - t))``.

    Returns
    -------
    value, location : ndarray of float, shape (R,)
    index : ndarray of int, shape (R,)
        1-based argmax rank; the smallest rank wins ties.
    left_side : ndarray of bool, shape (R,)
        True where the left limit attains the maximum (also on exact ties).
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    n = xs.shape[1]
    right, left = _branches(xs, weighted)
    if not weighted:
        right = np.abs(right)
        left = np.abs(left)
    best = np.maximum(right, left)
    r0 = np.argmax(best, axis=1)
    rows = np.arange(xs.shape[0])
    left_side = left[rows, r0] >= right[rows, r0]
    value = math.sqrt(n) * best[rows, r0]
    return value, xs[rows, r0], r0 + 1, left_side


def _single(sample: Sample, weighted: bool) -> SupResult:
    value, loc, idx, left_side = sup_rows(sample.order_stats[None, :], weighted)
    return SupResult(
        value=float(value[0]),
        location=float(loc[0]),
        index=int(idx[0]),
        side=Side.LEFT_LIMIT if left_side[0] else Side.RIGHT_VALUE,
    )


def sup_weighted(sample: Sample) -> SupResult:
    """Supremum and maximizer of the standardized process.

    Scans both one-sided values at every order statistic; ``O(n)`` on the
    sorted sample.
    """
    return _single(sample, True)


def sup_unweighted(sample: Sample) -> SupResult:
    """Supremum and maximizer of ``sqrt(n) |F_n(t) - t|`` over [0, 1].

    The process vanishes at 0 and 1 while the supremum is positive, so the
    maximizer is always an order statistic and ``index`` is never 0.
    """
    return _single(sample, False)


def eval_process(sample: Sample, t: float, side: Side = Side.RIGHT_VALUE, weighted: bool = True) -> float:
    """Evaluate the process, or its left limit, at a single point ``t``."""
    t = float(t)
    if weighted:
        if not 0.0 < t < 1.0:
            raise OutOfDomain(f"t={t} outside (0, 1)")
    elif not 0.0 <= t <= 1.0:
        raise OutOfDomain(f"t={t} outside [0, 1]")
    side = Side(side)
    how = "right" if side is Side.RIGHT_VALUE else "left"
    n = sample.n
    count = int(np.searchsorted(sample.order_stats, t, side=how))
    diff = abs(_gap(count, n, t))
    if weighted:
        diff = diff / math.sqrt(t * (1.0 - t))
    return math.sqrt(n) * diff


def grid_oracle_sup(sample: Sample, grid_points: int, weighted: bool = True) -> SupResult:
    """Brute-force supremum over a midpoint grid plus both sides of every order statistic.

    The grid is ``(k + 1/2) / grid_points`` for ``k = 0 .. grid_points - 1``.
    Candidates are ordered by location, the left limit before the value at the
    same location, and the first maximal candidate is returned. For a grid
    point ``index`` is the number of order statistics at or below it.
    """
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    xs = sample.order_stats
    n = sample.n
    grid = (np.arange(grid_points) + 0.5) / grid_points
    t = np.concatenate([grid, xs, xs])
    is_left = np.concatenate([np.zeros(grid_points + n, bool), np.ones(n, bool)])
    counts = np.where(
        is_left,
        np.searchsorted(xs, t, side="left"),
        np.searchsorted(xs, t, side="right"),
    )
    vals = np.sqrt(n) * np.abs(counts / n - t)
    if weighted:
        vals = vals / np.sqrt(t * (1.0 - t))
    # lexsort: last key is primary; LeftLimit (key 0) sorts first
    order = np.lexsort((~is_left, t))
    k = order[np.argmax(vals[order])]
    if k >= grid_points:
        index = (k - grid_points) % n + 1
    else:
        index = int(np.searchsorted(xs, t[k], side="right"))
    return SupResult(
        value=float(vals[k]),
        location=float(t[k]),
        index=int(index),
        side=Side.LEFT_LIMIT if is_left[k] else Side.RIGHT_VALUE,
    )


def region_sups(xs, alpha):
    """Unscaled standardized suprema over ``[alpha, 1 - alpha]`` and its complement.

    Works row-wise on sorted samples. ``alpha`` may equal 1/2, in which case
    the interior region is the single point 1/2. Results are *not* multiplied
    by ``sqrt(n)``, so they are suprema of ``|F_n(t) - t| / sqrt(t (1 - t))``.

    Returns
    -------
    interior, boundary : ndarray, shape (R,)
    """
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    n = xs.shape[1]
    a, b = alpha, 1.0 - alpha
    right, left = _branches(xs, True)
    right = np.abs(right)
    left = np.abs(left)

    def q(t, count):
        return np.abs(_gap(count, n, t)) / math.sqrt(t * (1.0 - t))

    q_a = q(a, np.sum(xs <= a, axis=1))
    q_a_minus = q(a, np.sum(xs < a, axis=1))
    q_b = q(b, np.sum(xs <= b, axis=1))

    neg = -np.inf
    r_in = np.where((xs >= a) & (xs <= b), right, neg).max(axis=1)
    l_in = np.where((xs > a) & (xs <= b), left, neg).max(axis=1)
    interior = np.maximum.reduce([r_in, l_in, q_a, q_b])

    r_out = np.where((xs < a) | (xs > b), right, neg).max(axis=1)
    l_out = np.where((xs <= a) | (xs > b), left, neg).max(axis=1)
    # near 0 and 1 the process tends to 0; the open ends contribute Q(a-) and Q(b+) = Q(b)
    boundary = np.maximum.reduce([r_out, l_out, q_a_minus, q_b])
    return interior, boundary


def boundary_split(sample: Sample, alpha: float) -> BoundarySplit:
    """Split the standardized supremum into an interior and a boundary part.

    Parameters
    ----------
    sample : Sample
    alpha : float
        Strictly between 0 and 1/2; the interior region is ``[alpha, 1 - alpha]``.

    Returns
    -------
    BoundarySplit
        Both suprema carry the ``sqrt(n)`` factor; their maximum equals
        ``sup_weighted(sample).value``.
    """
    if not 0.0 < alpha < 0.5:
        raise InvalidAlpha(f"alpha={alpha} outside (0, 1/2)")
    interior, boundary = region_sups(sample.order_stats[None, :], alpha)
    root_n = math.sqrt(sample.n)
    return BoundarySplit(
        interior_sup=float(root_n * interior[0]),
        boundary_sup=float(root_n * boundary[0]),
        alpha=float(alpha),
    )
