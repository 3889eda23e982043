"""Closed-form limit laws and finite-sample bounds.

Everything here is a pure, vectorized function of its arguments:

* Jaeschke-type norming constants and the two-sided Gumbel CDF
  ``exp(-2 exp(-y))`` that ``a_n V_n - b_n`` approaches;
* the maximal-inequality bound for the standardized process on
  ``[a, 1 - a]``;
* the theta-type series ``passage_kernel`` and the joint density of the
  location and size of the maximum of ``|B|`` for a Brownian bridge ``B``;
* the Kolmogorov CDF, which is the law of ``sup |B|``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidA, InvalidLambda, OutOfDomain, TooSmallN

__all__ = [
    "NormingConstants",
    "DensitySpec",
    "DensityIntegral",
    "norming_constants",
    "gumbel_cdf",
    "gumbel_quantile",
    "maximal_inequality_bound",
    "passage_kernel",
    "passage_partial_sums",
    "argmax_sup_density",
    "kolmogorov_cdf",
    "integrate_density",
    "cell_masses",
    "symmetric_unit_grid",
]

_SQRT_8_OVER_PI = math.sqrt(8.0 / math.pi)
# the series in passage_kernel is self-dual at u = pi/4
_DUAL_SWITCH = math.pi / 4.0


@dataclass(frozen=True)
class NormingConstants:
    a: float
    b: float
    n: int


@dataclass(frozen=True)
class DensitySpec:
    """Series controls for :func:`passage_kernel`.

    ``truncation_j`` is the largest series index summed; summation stops
    earlier once two consecutive terms are below ``term_tolerance``.
    """

    truncation_j: int = 50
    term_tolerance: float = 1e-15

    def __post_init__(self):
        if self.truncation_j < 1:
            raise ValueError("truncation_j must be >= 1")
        if not self.term_tolerance > 0:
            raise ValueError("term_tolerance must be positive")


DEFAULT_SPEC = DensitySpec()


@dataclass(frozen=True, eq=False)
class DensityIntegral:
    total: float
    y_nodes: np.ndarray
    x_marginal: np.ndarray


def norming_constants(n: int) -> NormingConstants:
    """Norming pair ``(a_n, b_n)`` with ``a_n = sqrt(2 log log n)``.

    Requires ``n >= 16`` so that ``log log log n`` is finite.
    """
    if n < 16:
        raise TooSmallN(f"n={n} < 16: log log log n undefined")
    ll = math.log(math.log(n))
    a = math.sqrt(2.0 * ll)
    b = 2.0 * ll + 0.5 * math.log(ll) - 0.5 * math.log(math.pi)
    return NormingConstants(a=a, b=b, n=int(n))


def gumbel_cdf(y):
    """CDF ``exp(-2 exp(-y))`` of the limiting law of ``a_n V_n - b_n``."""
    with np.errstate(over="ignore"):
        out = np.exp(-2.0 * np.exp(-np.asarray(y, dtype=float)))
    return out if out.ndim else float(out)


def gumbel_quantile(p):
    p = np.asarray(p, dtype=float)
    with np.errstate(divide="ignore"):
        out = -np.log(-np.log(p) / 2.0)
    return out if out.ndim else float(out)


def maximal_inequality_bound(n: int, a: float, lam: float) -> float:
    """Upper bound ``2 lam^-2 n^-1 (log((1-a)/a) + 1)``.

    Bounds ``P(sup_{a<=t<=1-a} |F_n(t)-t| / sqrt(t(1-t)) > lam)``; note the
    absence of a ``sqrt(n)`` factor in the statistic.
    """
    if not 0.0 < a <= 0.5:
        raise InvalidA(f"a={a} outside (0, 1/2]")
    if not lam > 0.0:
        raise InvalidLambda(f"lambda={lam} must be positive")
    if n < 1:
        raise ValueError("n must be >= 1")
    return 2.0 / (lam * lam) / n * (math.log((1.0 - a) / a) + 1.0)


def _alternating_sum(u, spec):
    # sum_{j>=0} (-1)^j (2j+1) exp(-(2j+1)^2 u), accumulated term by term so
    # each element's result does not depend on what it is batched with
    acc = np.zeros_like(u)
    active = np.ones(u.shape, dtype=bool)
    prev_small = np.zeros(u.shape, dtype=bool)
    for j in range(spec.truncation_j + 1):
        k = 2 * j + 1
        term = (-1.0) ** j * k * np.exp(-(k * k) * u)
        acc = np.where(active, acc + term, acc)
        small = np.abs(term) < spec.term_tolerance
        active &= ~(small & prev_small)
        prev_small = small
        if not active.any():
            break
    return acc


def passage_partial_sums(x, y, count: int):
    """Partial sums ``S_0 .. S_{count-1}`` of the direct series for
    :func:`passage_kernel`, prefactor included. Shape ``(count,) + shape``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    u = 0.5 * y * y / x
    pre = y * x**-1.5
    out = []
    acc = np.zeros(np.broadcast(x, y).shape)
    for j in range(count):
        k = 2 * j + 1
        acc = acc + (-1.0) ** j * k * np.exp(-(k * k) * u)
        out.append(pre * acc)
    return np.array(out)


def passage_kernel(x, y, spec: DensitySpec = DEFAULT_SPEC):
    """Theta-type series ``y x^{-3/2} sum_j (-1)^j (2j+1) exp(-(2j+1)^2 y^2 / (2x))``.

    For ``y^2 / (2x) < pi/4`` the direct series converges slowly, so the
    Jacobi-transformed form ``(pi/2)^{3/2} y^{-2} g(pi^2 x / (8 y^2))`` of the
    same function is summed instead. Tiny negative results from cancellation
    are clamped to zero.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(~(x > 0)) or np.any(~(y >= 0)):
        raise OutOfDomain("passage_kernel needs x > 0 and y >= 0")
    u = 0.5 * y * y / x
    dual = (u < _DUAL_SWITCH) & (y > 0)
    out = np.zeros(x.shape)

    direct = ~dual
    if direct.any():
        xd, yd = x[direct], y[direct]
        out[direct] = yd * xd**-1.5 * _alternating_sum(u[direct], spec)
    if dual.any():
        xs, ys = x[dual], y[dual]
        v = math.pi**2 * xs / (8.0 * ys * ys)
        out[dual] = (math.pi / 2.0) ** 1.5 / (ys * ys) * _alternating_sum(v, spec)
    out = np.maximum(out, 0.0)
    return out if out.ndim else float(out)


def argmax_sup_density(x, y, spec: DensitySpec = DEFAULT_SPEC):
    """Joint density of (argmax |B|, sup |B|) for a Brownian bridge ``B``.

    ``sqrt(8/pi) * psi(x, y) * psi(1 - x, y)`` on ``(0, 1) x [0, inf)``.
    The two kernel factors are multiplied first so that swapping ``x`` and
    ``1 - x`` reproduces the value bit for bit.
    """
    x = np.asarray(x, dtype=float)
    if np.any(~((x > 0) & (x < 1))):
        raise OutOfDomain("x must lie in (0, 1)")
    prod = passage_kernel(x, y, spec) * passage_kernel(1.0 - x, y, spec)
    out = _SQRT_8_OVER_PI * np.asarray(prod)
    return out if out.ndim else float(out)


def kolmogorov_cdf(y, terms: int = 50):
    """CDF of ``sup |B|`` for a Brownian bridge.

    Uses ``1 - 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 y^2)`` for ``y >= 1`` and the
    equivalent ``sqrt(2 pi)/y sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 y^2))`` below,
    where the first series converges slowly.
    """
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise OutOfDomain("kolmogorov_cdf needs y >= 0")
    out = np.zeros(y.shape)
    j = np.arange(1, terms + 1, dtype=float)[:, None]
    big = y >= 1.0
    if big.any():
        yb = y[big][None, :]
        s = np.sum((-1.0) ** (j - 1) * np.exp(-2.0 * j**2 * yb**2), axis=0)
        out[big] = 1.0 - 2.0 * s
    small = (y > 0) & ~big
    if small.any():
        ys = y[small][None, :]
        k = 2 * j - 1
        s = np.sum(np.exp(-(k**2) * math.pi**2 / (8.0 * ys**2)), axis=0)
        out[small] = math.sqrt(2.0 * math.pi) / ys[0] * s
    out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def integrate_density(
    spec: DensitySpec = DEFAULT_SPEC,
    y_max: float = 3.0,
    nodes_x: int = 256,
    nodes_y: int = 256,
) -> DensityIntegral:
    """Midpoint-rule mass of :func:`argmax_sup_density` on ``(0,1) x (0, y_max)``.

    Also returns the x-marginal ``int_0^1 f(x, y) dx`` at the y midpoints,
    which should match the Kolmogorov density.
    """
    if not y_max > 0:
        raise ValueError("y_max must be positive")
    if nodes_x < 16 or nodes_y < 16:
        raise ValueError("need at least 16 nodes per axis")
    x = (np.arange(nodes_x) + 0.5) / nodes_x
    y = (np.arange(nodes_y) + 0.5) * (y_max / nodes_y)
    f = argmax_sup_density(x[:, None], y[None, :], spec)
    marginal = f.sum(axis=0) / nodes_x
    total = float(marginal.sum() * (y_max / nodes_y))
    return DensityIntegral(total=total, y_nodes=y, x_marginal=marginal)


def cell_masses(x_edges, y_edges, spec: DensitySpec = DEFAULT_SPEC, nodes: int = 32, y_cap: float = 3.0):
    """Probability of each rectangle under :func:`argmax_sup_density`.

    Infinite y edges are cut at ``y_cap``; the mass above 3 is below 1e-7.
    Returns an array of shape ``(len(x_edges) - 1, len(y_edges) - 1)``.
    """
    x_edges = np.asarray(x_edges, dtype=float)
    y_edges = np.minimum(np.asarray(y_edges, dtype=float), y_cap)
    mid = (np.arange(nodes) + 0.5) / nodes
    out = np.zeros((x_edges.size - 1, y_edges.size - 1))
    for i in range(x_edges.size - 1):
        x0, x1 = x_edges[i], x_edges[i + 1]
        xs = x0 + (x1 - x0) * mid
        for j in range(y_edges.size - 1):
            y0, y1 = y_edges[j], y_edges[j + 1]
            if y1 <= y0:
                continue
            ys = y0 + (y1 - y0) * mid
            f = argmax_sup_density(xs[:, None], ys[None, :], spec)
            out[i, j] = f.mean() * (x1 - x0) * (y1 - y0)
    return out


def symmetric_unit_grid(num: int) -> np.ndarray:
    """``num`` midpoints in (0, 1), closed under ``x -> 1 - x`` in floating point.

    Lower-half points are rounded to multiples of ``2**-53`` so that ``1 - x``
    is exact; the upper half is built as ``1 - lower``.
    """
    if num < 1:
        raise ValueError("num must be >= 1")
    half = num // 2
    lower = np.round((np.arange(half) + 0.5) / num * 2.0**53) / 2.0**53
    middle = [0.5] if num % 2 else []
    return np.concatenate([lower, middle, (1.0 - lower)[::-1]])
