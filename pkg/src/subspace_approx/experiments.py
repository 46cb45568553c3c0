"""Experiment harness: best-approximation exponents and weighted lower bounds.

Random planes are drawn as graphs over the (1, 2) chart with matrix entries
uniform in the delta band. Every plane gets its own child seed, so a run is a
pure function of ``(config, seed)`` regardless of the worker count, and all
tables are emitted in sample order with 17 significant digits.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import asdict, dataclass, field
from typing import Any, Sequence

import numpy as np

from ._parallel import map_ordered
from .angles import Frame, PlaneLike, as_frame, psi_many
from .charts import GraphChart, sample_delta_band
from .enumeration import frame_table, heights_sq, level_minima, pluecker_table
from .series import OmegaFunction, check_series

DIRICHLET_SCHEMA = "dirichlet.v1"
LOWER_BOUND_SCHEMA = "lower-bound.v1"


def fmt(x: Any) -> str:
    """Deterministic text for a table cell (reals with 17 significant digits)."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return format(x, ".17g")
    return str(x)


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 0
    delta: float = 0.1
    h_sq_max: int = 100
    num_planes: int = 50
    epsilon_list: tuple[float, ...] = ()
    output: str | None = None
    w_max: int = 1 << 16

    def __post_init__(self) -> None:
        if not 0.0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")
        if self.h_sq_max < 1:
            raise ValueError("h_sq_max must be >= 1")
        if self.num_planes < 1:
            raise ValueError("num_planes must be >= 1")
        if self.w_max < 100:
            raise ValueError("w_max must be >= 100")
        object.__setattr__(self, "epsilon_list", tuple(float(e) for e in self.epsilon_list))
        if any(e <= 0 for e in self.epsilon_list):
            raise ValueError("epsilons must be positive")

    def as_dict(self) -> dict:
        d = asdict(self)
        # where the table is written does not affect its content
        d.pop("output")
        d["epsilon_list"] = list(self.epsilon_list)
        return d


def sample_planes(config: ExperimentConfig) -> list[GraphChart]:
    """``num_planes`` graph charts over (1, 2), uniform in the delta band."""
    out = []
    for ss in np.random.SeedSequence(config.seed).spawn(config.num_planes):
        ell = sample_delta_band(np.random.default_rng(ss), config.delta, 1)[0]
        out.append(GraphChart((1, 2), ((float(ell[0, 0]), float(ell[0, 1])), (float(ell[1, 0]), float(ell[1, 1])))))
    return out


@dataclass(frozen=True)
class Table:
    schema: str
    columns: tuple[str, ...]
    rows: list[tuple]
    config: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("schema",) + self.columns)
        for row in self.rows:
            w.writerow([self.schema] + [fmt(x) for x in row])
        return buf.getvalue()

    def to_json(self) -> str:
        def cell(x: Any) -> Any:
            if isinstance(x, (float, np.floating)):
                return float(fmt(x)) if math.isfinite(x) else fmt(x)
            if isinstance(x, (np.integer,)):
                return int(x)
            return x

        obj = {
            "schema": self.schema,
            "config": self.config,
            "rows": [dict(zip(self.columns, map(cell, r))) for r in self.rows],
            "summary": {k: cell(v) for k, v in self.summary.items()},
        }
        return json.dumps(obj, indent=1, sort_keys=False) + "\n"

    def render(self, fmt_name: str) -> str:
        if fmt_name == "csv":
            return self.to_csv()
        if fmt_name == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt_name!r}")


# --- best approximations -----------------------------------------------------


def running_minima(plane: PlaneLike, h_sq_max: int) -> tuple[np.ndarray, np.ndarray]:
    """``(levels, psi_min)``: for each non-empty height level ``l``, the smallest
    angle from ``plane`` to a rational plane of squared height ``<= l``."""
    table = pluecker_table(h_sq_max)
    if len(table) == 0:
        raise ValueError("empty enumeration")
    values = psi_many(plane, frame_table(h_sq_max))
    levels = heights_sq(table)
    best, _ = level_minima(values, levels, h_sq_max)
    nonempty = np.nonzero(np.isfinite(best))[0]
    return nonempty, np.minimum.accumulate(best[nonempty])


def loglog_slope(h_sq: np.ndarray, psi_min: np.ndarray) -> float:
    """Least-squares slope of ``log psi_min`` against ``log H``, dropping ``H = 1``
    and exact hits ``psi = 0``."""
    h_sq = np.asarray(h_sq, dtype=float)
    psi_min = np.asarray(psi_min, dtype=float)
    keep = (h_sq > 1) & (psi_min > 0)
    if keep.sum() < 2:
        return math.nan
    x = 0.5 * np.log(h_sq[keep])
    y = np.log(psi_min[keep])
    return float(np.polyfit(x, y, 1)[0])


def dirichlet_experiment(config: ExperimentConfig, workers: int | None = None) -> Table:
    """Best-approximation angle against height for random planes.

    One row per (sample, non-empty height level): ``hsq``, the running
    minimum ``psi_min`` over all rational planes with ``H^2 <= hsq``, and
    ``psi_min * H^3``. The summary holds the largest ``psi_min * H^3`` and the
    pooled log-log slope of ``psi_min`` against ``H``.
    """
    planes = sample_planes(config)
    pluecker_table(config.h_sq_max)  # build the cached tables once, outside the pool
    frame_table(config.h_sq_max)

    def one(chart: GraphChart):
        return running_minima(chart, config.h_sq_max)

    rows, all_h, all_psi = [], [], []
    for i, (levels, mins) in enumerate(map_ordered(one, planes, workers)):
        for lv, m in zip(levels, mins):
            rows.append((i, int(lv), float(m), float(m) * float(lv) ** 1.5))
        all_h.append(levels)
        all_psi.append(mins)
    hs, ps = np.concatenate(all_h), np.concatenate(all_psi)
    summary = {
        "max_psi_h3": max(r[3] for r in rows),
        "slope": loglog_slope(hs, ps),
        "rows": len(rows),
    }
    return Table(DIRICHLET_SCHEMA, ("sample", "hsq", "psi_min", "psi_h3"), rows, config.as_dict(), summary)


# --- weighted lower bound ----------------------------------------------------


@dataclass(frozen=True)
class LowerBound:
    value: float
    hsq: int
    pluecker: tuple[int, ...]


def lower_bound_constant(plane: PlaneLike | Frame, omega: OmegaFunction, h_sq_max: int) -> LowerBound:
    """``min_B psi(A, B) / omega(H(B))`` over all rational ``B`` with ``H(B)^2 <= h_sq_max``."""
    table = pluecker_table(h_sq_max)
    if len(table) == 0:
        raise ValueError("empty enumeration")
    levels = heights_sq(table)
    weights = np.asarray(omega(np.sqrt(np.arange(1, h_sq_max + 1, dtype=float))), dtype=float)
    if np.any(weights[levels - 1] <= 0):
        raise ValueError("omega vanishes at an enumerated height")
    ratios = psi_many(as_frame(plane), frame_table(h_sq_max)) / weights[levels - 1]
    k = int(np.argmin(ratios))
    return LowerBound(float(ratios[k]), int(levels[k]), tuple(int(x) for x in table[k]))


def lower_bound_experiment(config: ExperimentConfig, omega: OmegaFunction, workers: int | None = None) -> Table:
    """Empirical distribution of ``c(A) = min_B psi(A, B) / omega(H(B))``.

    Warns (does not fail) when the series check for ``omega`` does not say
    ``converges``.
    """
    verdict = check_series(omega, config.w_max)
    if verdict.classification != "converges":
        warnings.warn(f"omega series check: {verdict.classification}", RuntimeWarning, stacklevel=2)
    planes = sample_planes(config)
    pluecker_table(config.h_sq_max)
    frame_table(config.h_sq_max)
    results = map_ordered(lambda c: lower_bound_constant(c, omega, config.h_sq_max), planes, workers)
    rows = [(i, r.value, r.hsq, " ".join(map(str, r.pluecker))) for i, r in enumerate(results)]
    values = np.array([r.value for r in results])
    q1, q2, q3 = np.quantile(values, [0.25, 0.5, 0.75])
    summary = {
        "omega": omega.spec,
        "series": verdict.classification,
        "min": float(values.min()),
        "q1": float(q1),
        "median": float(q2),
        "q3": float(q3),
        "max": float(values.max()),
    }
    cfg = config.as_dict() | {"omega": omega.spec}
    return Table(LOWER_BOUND_SCHEMA, ("sample", "c_value", "argmin_hsq", "argmin_pluecker"), rows, cfg, summary)


# --- counting ----------------------------------------------------------------


def counting_slope(h_values: Sequence[int]) -> tuple[list[int], float]:
    """Cumulative counts at heights ``H`` (integers) and the log-log slope of count vs ``H``."""
    from .enumeration import cumulative_count

    counts = [cumulative_count(h * h) for h in h_values]
    slope = float(np.polyfit(np.log(np.asarray(h_values, dtype=float)), np.log(counts), 1)[0])
    return counts, slope
