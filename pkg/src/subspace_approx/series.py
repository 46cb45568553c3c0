"""Weight functions omega and the series ``sum_j j * omega(sqrt j)``.

The series decides whether the union of angular neighborhoods of all rational
planes, with radii ``omega(H(B))``, is summable. Its partial sums are also
rewritten by summation by parts over height levels, which gives an exact
identity that is checked numerically here.
"""
from __future__ import annotations

import ast
import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np

#: dyadic block-sum ratio at or below which the series is called convergent
CONVERGE_RATIO = 0.98
#: ratio at or above which it is called divergent
DIVERGE_RATIO = 0.999
#: number of trailing block ratios the verdict looks at
RATIO_WINDOW = 3
#: slack allowed when checking that omega is non-increasing
MONOTONE_RTOL = 1e-12

_EXPR_FUNCS = {
    "log": np.log,
    "log2": np.log2,
    "log10": np.log10,
    "exp": np.exp,
    "sqrt": np.sqrt,
    "abs": np.abs,
}
_EXPR_CONSTS = {"pi": math.pi, "e": math.e}
_EXPR_NODES = (
    ast.Expression, ast.BinOp, ast.UnaryOp, ast.Call, ast.Name, ast.Load, ast.Constant,
    ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow, ast.USub, ast.UAdd,
)


def _compile_expr(text: str) -> Callable[[np.ndarray], np.ndarray]:
    tree = ast.parse(text, mode="eval")
    for node in ast.walk(tree):
        if not isinstance(node, _EXPR_NODES):
            raise ValueError(f"unsupported syntax in omega expression: {type(node).__name__}")
        if isinstance(node, ast.Name) and node.id not in _EXPR_FUNCS and node.id not in _EXPR_CONSTS and node.id != "j":
            raise ValueError(f"unknown name in omega expression: {node.id}")
        if isinstance(node, ast.Call) and not (isinstance(node.func, ast.Name) and node.func.id in _EXPR_FUNCS):
            raise ValueError("only log, log2, log10, exp, sqrt, abs may be called")
    code = compile(tree, "<omega>", "eval")
    names = {"__builtins__": {}, **_EXPR_FUNCS, **_EXPR_CONSTS}

    def fn(j: np.ndarray) -> np.ndarray:
        out = eval(code, names, {"j": j})  # noqa: S307 - AST whitelisted above
        return np.broadcast_to(np.asarray(out, dtype=float), np.shape(j)).copy()

    return fn


@dataclass(frozen=True)
class OmegaFunction:
    """Positive non-increasing weight ``omega(j)`` for real ``j >= 1``.

    Build one with :meth:`parse` from ``pow:<beta>``, ``table:<path>`` or
    ``expr:<formula in j>``.
    """

    kind: str
    spec: str
    exponent: float | None = None
    table: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False, compare=False)
    _fn: Callable[[np.ndarray], np.ndarray] | None = field(default=None, repr=False, compare=False)

    @classmethod
    def power(cls, beta: float) -> "OmegaFunction":
        beta = float(beta)
        if not beta > 0:
            raise ValueError("power exponent must be positive")
        return cls("power", f"pow:{beta!r}", exponent=beta)

    @classmethod
    def from_table(cls, path: str | Path) -> "OmegaFunction":
        js, ws = [], []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    j, w = float(row[0]), float(row[1])
                except ValueError:
                    if not js:
                        continue  # header
                    raise
                js.append(j)
                ws.append(w)
        j_arr, w_arr = np.array(js), np.array(ws)
        if len(j_arr) < 2:
            raise ValueError("omega table needs at least two rows")
        if np.any(np.diff(j_arr) <= 0):
            raise ValueError("omega table j column must be strictly increasing")
        if j_arr[0] > 1.0:
            raise ValueError("omega table must start at j <= 1")
        return cls("table", f"table:{path}", table=(j_arr, w_arr))

    @classmethod
    def from_expr(cls, text: str) -> "OmegaFunction":
        return cls("expr", f"expr:{text}", _fn=_compile_expr(text))

    @classmethod
    def parse(cls, text: str) -> "OmegaFunction":
        kind, _, rest = text.partition(":")
        if not rest:
            raise ValueError(f"omega must look like pow:B, table:PATH or expr:F, got {text!r}")
        if kind == "pow":
            return cls.power(float(rest))
        if kind == "table":
            return cls.from_table(rest)
        if kind == "expr":
            return cls.from_expr(rest)
        raise ValueError(f"unknown omega kind {kind!r}")

    @property
    def domain_max(self) -> float:
        return float(self.table[0][-1]) if self.kind == "table" else math.inf

    def __call__(self, j):
        arr = np.asarray(j, dtype=float)
        if np.any(arr < 1.0):
            raise ValueError("omega is defined for j >= 1")
        if self.kind == "power":
            out = arr ** (-self.exponent)
        elif self.kind == "table":
            js, ws = self.table
            if np.any(arr > js[-1]):
                raise ValueError(f"omega table covers j <= {js[-1]}")
            out = np.interp(arr, js, ws)
        else:
            out = self._fn(arr)
        return float(out) if np.ndim(j) == 0 else out


def check_monotone(omega: OmegaFunction, points: np.ndarray) -> None:
    """Raise if ``omega`` is negative or increases anywhere on ``points`` (sorted)."""
    w = np.asarray(omega(points), dtype=float)
    if not np.all(np.isfinite(w)):
        raise ValueError("omega is not finite on the sample grid")
    if np.any(w < 0):
        raise ValueError("omega is negative on the sample grid")
    rise = w[1:] > w[:-1] * (1 + MONOTONE_RTOL) + 1e-300
    if np.any(rise):
        k = int(np.argmax(rise))
        raise ValueError(f"omega is not non-increasing: omega({points[k]:g}) < omega({points[k + 1]:g})")


@dataclass(frozen=True)
class SeriesVerdict:
    classification: str  # "converges" | "diverges" | "inconclusive"
    method: str  # "analytic" | "ratio-test"
    partial_sums: tuple[tuple[int, float], ...]
    block_ratios: tuple[float, ...]

    def __post_init__(self) -> None:
        ws = [w for w, _ in self.partial_sums]
        if any(b <= a for a, b in zip(ws, ws[1:])):
            raise ValueError("partial sums must be indexed by strictly increasing W")


def doubling_schedule(w_max: int) -> list[int]:
    ws, w = [], 1
    while w <= w_max:
        ws.append(w)
        w *= 2
    if ws[-1] != w_max:
        ws.append(w_max)
    return ws


def series_terms(omega: OmegaFunction, w_max: int) -> np.ndarray:
    """``j * omega(sqrt j)`` for ``j = 1..w_max``."""
    j = np.arange(1, w_max + 1, dtype=float)
    return j * np.asarray(omega(np.sqrt(j)), dtype=float)


def check_series(omega: OmegaFunction, w_max: int = 1 << 20) -> SeriesVerdict:
    """Classify ``sum_j j * omega(sqrt j)``.

    Power weights ``j^-beta`` give terms ``j^(1 - beta/2)``, so the series
    converges iff ``beta > 4``; that verdict is exact. Other weights use the
    dyadic block sums ``S_k = sum_{2^(k-1) < j <= 2^k}``: the series is called
    convergent when the last :data:`RATIO_WINDOW` ratios ``S_k / S_(k-1)`` are
    all ``<= CONVERGE_RATIO`` and not increasing, divergent when they are all
    ``>= DIVERGE_RATIO``, and inconclusive otherwise.
    """
    w_max = int(w_max)
    if w_max < 100:
        raise ValueError("w_max must be >= 100")
    if omega.kind == "table":
        w_max = min(w_max, int(math.floor(omega.domain_max**2)))
        if w_max < 100:
            raise ValueError("omega table must cover j up to at least 10")
    j = np.arange(1, w_max + 1, dtype=float)
    check_monotone(omega, np.sqrt(j))
    terms = series_terms(omega, w_max)
    cums = np.cumsum(terms)
    partial = tuple((w, float(cums[w - 1])) for w in doubling_schedule(w_max))

    k_max = int(math.log2(w_max))
    blocks = [float(terms[0])] + [float(terms[(1 << (k - 1)):(1 << k)].sum()) for k in range(1, k_max + 1)]
    ratios = tuple(b / a if a > 0 else math.inf for a, b in zip(blocks, blocks[1:]))

    if omega.kind == "power":
        verdict = "converges" if omega.exponent > 4 else "diverges"
        return SeriesVerdict(verdict, "analytic", partial, ratios)
    tail = ratios[-RATIO_WINDOW:]
    if all(r <= CONVERGE_RATIO for r in tail) and all(b <= a + 1e-3 for a, b in zip(tail, tail[1:])):
        verdict = "converges"
    elif all(r >= DIVERGE_RATIO for r in tail):
        verdict = "diverges"
    else:
        verdict = "inconclusive"
    return SeriesVerdict(verdict, "ratio-test", partial, ratios)


def weighted_count_direct(counts: Mapping[int, int], omega: OmegaFunction, w: int) -> float:
    """``sum_{l <= w} N(sqrt l) * omega(sqrt l)`` over height levels ``l``."""
    return math.fsum(counts.get(l, 0) * float(omega(math.sqrt(l))) for l in range(1, w + 1))


def weighted_count_by_parts(counts: Mapping[int, int], omega: OmegaFunction, w: int) -> float:
    """The same sum after summation by parts:
    ``sum_{l < w} C(l) (omega(sqrt l) - omega(sqrt(l+1))) + C(w) omega(sqrt w)``,
    with ``C`` the cumulative count."""
    om = [float(omega(math.sqrt(l))) for l in range(1, w + 2)]
    cum, parts = 0, []
    for l in range(1, w + 1):
        cum += counts.get(l, 0)
        if l < w:
            parts.append(cum * (om[l - 1] - om[l]))
    parts.append(cum * om[w - 1])
    return math.fsum(parts)
