"""Seeded Monte Carlo experiments for the standardized empirical process.

Every replication draws its sample from its own stream, derived from
``(master_seed, n, replication)``. Results are therefore identical whatever
the chunking or number of worker threads.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import EmptySample, InvalidAlpha, TooFewRecords
from .limits import gumbel_cdf, gumbel_quantile, maximal_inequality_bound, norming_constants
from .process import Sample, Side, order_statistics, region_sups, sup_rows

__all__ = [
    "ExperimentConfig",
    "ReplicationRecord",
    "SimulationBatch",
    "Histogram2D",
    "MaximalInequalityReport",
    "ConvergenceRow",
    "replication_stream",
    "draw_sample",
    "simulate",
    "run_experiment",
    "ks_distance",
    "contingency_tv",
    "independence_tv",
    "alpha_for",
    "summarize",
    "convergence_table",
    "verify_maximal_inequality",
    "histogram2d",
    "tv_distance",
]

# rows per chunk are sized so a chunk holds about this many sample values
_CHUNK_VALUES = 1 << 20


@dataclass(frozen=True)
class ExperimentConfig:
    """Resolved experiment settings.

    ``alpha_rule`` is ``"loglog"`` for ``alpha_n = 1 / log log n`` or a fixed
    float in (0, 1/2). ``normalize`` attaches ``a_n V_n - b_n`` to weighted
    records and needs every ``n >= 16``.
    """

    n_values: tuple = (100,)
    replications: int = 1000
    master_seed: int = 0
    alpha_rule: Union[str, float] = "loglog"
    weighted: bool = True
    normalize: bool = True

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not self.n_values:
            raise ValueError("n_values is empty")
        if any(n < 1 for n in self.n_values):
            raise ValueError("every n must be >= 1")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be an unsigned 64-bit integer")
        if isinstance(self.alpha_rule, str):
            if self.alpha_rule != "loglog":
                raise InvalidAlpha(f"unknown alpha rule {self.alpha_rule!r}")
        elif not 0.0 < float(self.alpha_rule) < 0.5:
            raise InvalidAlpha(f"fixed alpha {self.alpha_rule} outside (0, 1/2)")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_values"] = list(self.n_values)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        return cls(**d)


@dataclass(frozen=True)
class ReplicationRecord:
    n: int
    replication: int
    v: float
    tau: float
    r_index: int
    r_over_n: float
    normalized: Optional[float]
    side: Side


@dataclass(frozen=True, eq=False)
class SimulationBatch:
    """Column arrays for all replications at one sample size."""

    n: int
    v: np.ndarray
    tau: np.ndarray
    r_index: np.ndarray
    left_side: np.ndarray
    normalized: Optional[np.ndarray]

    @property
    def r_over_n(self):
        return self.r_index / self.n


@dataclass(frozen=True, eq=False)
class Histogram2D:
    x_edges: np.ndarray
    y_edges: np.ndarray
    counts: np.ndarray

    def probabilities(self):
        return self.counts / self.counts.sum()


@dataclass(frozen=True)
class MaximalInequalityReport:
    lhs_hat: float
    stderr: float
    rhs: float
    passed: bool

    def to_dict(self):
        return {"lhs_hat": self.lhs_hat, "stderr": self.stderr, "rhs": self.rhs, "pass": self.passed}


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ks_to_gumbel: float
    mass_interior: float
    p_tau_le_half: float
    mean_v_over_an: float
    independence_tv: float


def replication_stream(master_seed: int, n: int, k: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(n), int(k)]))


def _uniforms(rng, n):
    u = rng.random(n)
    # random() is on [0, 1); an exact 0 is redrawn to stay inside (0, 1)
    zero = u == 0.0
    while zero.any():
        u[zero] = rng.random(int(zero.sum()))
        zero = u == 0.0
    return u


def draw_sample(master_seed: int, n: int, k: int) -> Sample:
    """Regenerate the sample of replication ``k`` at size ``n``."""
    return order_statistics(_uniforms(replication_stream(master_seed, n, k), n))


def _sorted_rows(master_seed, n, start, stop, reflect=False):
    rows = np.empty((stop - start, n))
    for r, k in enumerate(range(start, stop)):
        rows[r] = _uniforms(replication_stream(master_seed, n, k), n)
    if reflect:
        rows = 1.0 - rows
    rows.sort(axis=1, kind="stable")
    return rows


def _chunks(n, reps):
    size = max(1, min(reps, _CHUNK_VALUES // n))
    return [(s, min(s + size, reps)) for s in range(0, reps, size)]


def _map_chunks(fn, n, reps, workers):
    chunks = _chunks(n, reps)
    if workers <= 1:
        parts = [fn(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(fn, chunks))
    return parts


def simulate(config: ExperimentConfig, n: int, workers: int = 1, reflect: bool = False) -> SimulationBatch:
    """Run all replications of ``config`` at one sample size.

    ``reflect=True`` maps every generated sample through ``x -> 1 - x``
    before computing the supremum.
    """
    norming = None
    if config.weighted and config.normalize:
        norming = norming_constants(n)

    def work(chunk):
        rows = _sorted_rows(config.master_seed, n, *chunk, reflect=reflect)
        return sup_rows(rows, config.weighted)

    parts = _map_chunks(work, n, config.replications, workers)
    v, tau, idx, left = (np.concatenate(p) for p in zip(*parts))
    normalized = norming.a * v - norming.b if norming is not None else None
    return SimulationBatch(n=n, v=v, tau=tau, r_index=idx, left_side=left, normalized=normalized)


def _records(batch: SimulationBatch):
    out = []
    for k in range(batch.v.size):
        out.append(
            ReplicationRecord(
                n=batch.n,
                replication=k,
                v=float(batch.v[k]),
                tau=float(batch.tau[k]),
                r_index=int(batch.r_index[k]),
                r_over_n=int(batch.r_index[k]) / batch.n,
                normalized=None if batch.normalized is None else float(batch.normalized[k]),
                side=Side.LEFT_LIMIT if batch.left_side[k] else Side.RIGHT_VALUE,
            )
        )
    return out


def run_experiment(config: ExperimentConfig, workers: int = 1) -> list[ReplicationRecord]:
    """All replication records, ordered by ``n`` (config order) then replication index."""
    records = []
    for n in config.n_values:
        records.extend(_records(simulate(config, n, workers)))
    return records


def ks_distance(samples: Sequence[float], cdf: Callable) -> float:
    """Kolmogorov-Smirnov distance between the empirical law of ``samples`` and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=float))
    if x.size == 0:
        raise EmptySample("empty sample")
    N = x.size
    F = np.asarray(cdf(x), dtype=float) * np.ones(N)
    i = np.arange(1, N + 1)
    return float(max(np.max(np.abs(i / N - F)), np.max(np.abs(F - (i - 1) / N))))


def contingency_tv(indicator, values, y_edges) -> float:
    """Distance between a 2-by-k joint table and the product of its marginals.

    Half the sum of absolute cell differences. Pairs whose value falls outside
    ``y_edges`` are dropped.
    """
    indicator = np.asarray(indicator, dtype=bool)
    values = np.asarray(values, dtype=float)
    table = np.vstack(
        [np.histogram(values[~indicator], y_edges)[0], np.histogram(values[indicator], y_edges)[0]]
    ).astype(float)
    total = table.sum()
    if total == 0:
        raise TooFewRecords("no pairs inside the binning range")
    p = table / total
    prod = p.sum(axis=1, keepdims=True) * p.sum(axis=0, keepdims=True)
    return float(0.5 * np.abs(p - prod).sum())


def _default_y_edges():
    return np.concatenate([[-np.inf], gumbel_quantile([0.2, 0.4, 0.6, 0.8]), [np.inf]])


def independence_tv(records: Sequence[ReplicationRecord], x_cut: float = 0.5, y_edges=None) -> float:
    """Contingency distance between ``1{tau > x_cut}`` and the binned normalized supremum.

    Unweighted records, which carry no normalized value, are binned by ``v``.
    """
    if len(records) < 1000:
        raise TooFewRecords(f"need at least 1000 records, got {len(records)}")
    tau = np.array([r.tau for r in records])
    vals = np.array([r.v if r.normalized is None else r.normalized for r in records])
    edges = _default_y_edges() if y_edges is None else np.asarray(y_edges, dtype=float)
    return contingency_tv(tau > x_cut, vals, edges)


def alpha_for(n: int, rule) -> float:
    """Boundary width ``alpha_n`` for ``rule``.

    For ``"loglog"`` this is ``1 / log log n``, which is at least 1/2 (an empty
    interior) until ``n > exp(e^2)``, about 1618.
    """
    if isinstance(rule, str):
        if n <= math.e**math.e:
            raise InvalidAlpha(f"loglog rule needs n > e^e, got n={n}")
        return 1.0 / math.log(math.log(n))
    return float(rule)


def summarize(batch: SimulationBatch, alpha: float, y_edges=None) -> ConvergenceRow:
    if batch.normalized is None:
        raise ValueError("convergence rows need normalized weighted records")
    a_n = norming_constants(batch.n).a
    edges = _default_y_edges() if y_edges is None else np.asarray(y_edges, dtype=float)
    # (alpha, 1 - alpha) is empty once alpha >= 1/2
    interior = (batch.tau > alpha) & (batch.tau < 1.0 - alpha)
    return ConvergenceRow(
        n=batch.n,
        ks_to_gumbel=ks_distance(batch.normalized, gumbel_cdf),
        mass_interior=float(interior.mean()),
        p_tau_le_half=float((batch.tau <= 0.5).mean()),
        mean_v_over_an=float(np.mean(batch.v / a_n)),
        independence_tv=contingency_tv(batch.tau > 0.5, batch.normalized, edges),
    )


def convergence_table(config: ExperimentConfig, y_edges=None, workers: int = 1) -> list[ConvergenceRow]:
    """One row of trend diagnostics per sample size in ``config.n_values``."""
    ns = list(config.n_values)
    if ns != sorted(ns) or len(set(ns)) != len(ns):
        raise ValueError("n_values must be strictly increasing")
    if not (config.weighted and config.normalize):
        raise ValueError("convergence_table needs a weighted, normalized config")
    rows = []
    for n in ns:
        alpha = alpha_for(n, config.alpha_rule)
        rows.append(summarize(simulate(config, n, workers), alpha, y_edges))
    return rows


def verify_maximal_inequality(
    n: int, a: float, lam: float, replications: int, master_seed: int, workers: int = 1
) -> MaximalInequalityReport:
    """Monte Carlo check of the maximal inequality on ``[a, 1 - a]``.

    The statistic is the interior supremum of ``|F_n(t) - t| / sqrt(t(1-t))``
    *without* the ``sqrt(n)`` factor. Passes when the estimated exceedance
    probability is at most the bound plus three binomial standard errors.
    """
    rhs = maximal_inequality_bound(n, a, lam)
    if replications < 1:
        raise ValueError("replications must be >= 1")

    def work(chunk):
        interior, _ = region_sups(_sorted_rows(master_seed, n, *chunk), a)
        return np.count_nonzero(interior > lam)

    hits = sum(_map_chunks(work, n, replications, workers))
    p = hits / replications
    stderr = math.sqrt(p * (1.0 - p) / replications)
    return MaximalInequalityReport(lhs_hat=p, stderr=stderr, rhs=rhs, passed=bool(p <= rhs + 3.0 * stderr))


def histogram2d(x, y, x_edges, y_edges) -> Histogram2D:
    counts, xe, ye = np.histogram2d(np.asarray(x), np.asarray(y), bins=[x_edges, y_edges])
    return Histogram2D(x_edges=xe, y_edges=ye, counts=counts.astype(np.int64))


def tv_distance(p, q) -> float:
    """Half the L1 distance between two cell-probability arrays."""
    return float(0.5 * np.abs(np.asarray(p) - np.asarray(q)).sum())
