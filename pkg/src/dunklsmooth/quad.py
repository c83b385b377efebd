"""Radial grids, nu_lam-weighted quadrature, and weighted Lp norms.

Grids are composite rules on [0, rmax] with geometric panel refinement toward
the origin so the fractional weight t^(2*lam+1) is resolved; all nodes are
strictly positive, which is what lets frequency symbols with a singularity at
zero be evaluated safely downstream.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .weights import measure_constants

__all__ = [
    "RadialGrid",
    "RadialFunction",
    "NuIntegral",
    "GRID_KINDS",
    "DEFAULT_RMAX",
    "DEFAULT_N",
    "make_grid",
    "default_grid",
    "nu_weights",
    "integrate_nu",
    "lp_norm",
    "save_radial_csv",
    "load_radial_csv",
]

GRID_KINDS = ("gauss-legendre-composite", "clenshaw-curtis")
DEFAULT_RMAX = 30.0
DEFAULT_N = 2048

# Fraction of the |integrand| nu-mass allowed in the outermost tenth
# [0.9*rmax, rmax] before an integral is flagged truncation-suspect.
TAIL_WARN_FRACTION = 1e-8


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Quadrature nodes/weights on (0, rmax] (plain Lebesgue weights).

    ``panel_edges`` records the composite-rule breakpoints (when known), so
    integrals over [sigma, rmax] can re-rule the one panel a cut at sigma
    would otherwise split.
    """

    nodes: np.ndarray
    weights: np.ndarray
    rmax: float
    kind: str = "gauss-legendre-composite"
    panel_edges: tuple[float, ...] = ()
    key: str = field(init=False, repr=False)

    def __post_init__(self) -> None:
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)
        if nodes.ndim != 1 or weights.shape != nodes.shape:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if not (np.all(np.diff(nodes) > 0) and nodes[0] > 0 and nodes[-1] <= self.rmax):
            raise ValueError("nodes must be strictly increasing inside (0, rmax]")
        if np.any(weights <= 0):
            raise ValueError("weights must be positive")
        digest = hashlib.sha1(nodes.tobytes() + weights.tobytes()).hexdigest()[:16]
        object.__setattr__(self, "key", f"{digest}:{nodes.size}:{self.rmax!r}")

    @property
    def n(self) -> int:
        return int(self.nodes.size)


@dataclass(frozen=True, eq=False)
class RadialFunction:
    """Samples of a radial profile f0(t) on a RadialGrid."""

    grid: RadialGrid
    values: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        values = np.asarray(self.values)
        if values.shape != self.grid.nodes.shape:
            raise ValueError("values must match the grid node count")
        object.__setattr__(self, "values", values)


class NuIntegral(NamedTuple):
    """Value of a nu_lam integral plus a truncation-suspicion flag."""

    value: float
    tail_fraction: float
    truncated: bool

    def __float__(self) -> float:
        return self.value


@lru_cache(maxsize=64)
def _gauss_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(m)
    return x, w


@lru_cache(maxsize=64)
def _fejer_rule(m: int) -> tuple[np.ndarray, np.ndarray]:
    # Open Chebyshev (Fejer-1) rule on [-1, 1]: interior nodes only, positive
    # weights, interpolatory exactness of degree m-1.
    k = np.arange(1, m + 1)
    theta = (2 * k - 1) * np.pi / (2 * m)
    x = np.cos(theta)
    j = np.arange(1, m // 2 + 1)
    corr = 2.0 * np.sum(
        np.cos(2.0 * np.outer(j, theta)) / (4.0 * j[:, None] ** 2 - 1.0), axis=0
    )
    w = (2.0 / m) * (1.0 - corr)
    order = np.argsort(x)
    return x[order], w[order]


def make_grid(rmax: float, n: int, kind: str = "gauss-legendre-composite") -> RadialGrid:
    """Composite quadrature grid on [0, rmax] with 2^-j panel refinement at 0.

    Node budget n is split as evenly as possible across the panels, with the
    remainder going to the outermost (longest) ones.
    """
    rmax = float(rmax)
    if not (rmax > 0):
        raise ValueError(f"rmax must be positive, got {rmax!r}")
    if int(n) != n or n < 16:
        raise ValueError(f"n must be an integer >= 16, got {n!r}")
    if kind not in GRID_KINDS:
        raise ValueError(f"kind must be one of {GRID_KINDS}, got {kind!r}")
    n = int(n)
    levels = min(12, max(1, n // 16))
    edges = [0.0] + [rmax * 2.0 ** (-j) for j in range(levels, -1, -1)]
    panels = len(edges) - 1
    counts = [n // panels] * panels
    for i in range(n - sum(counts)):
        counts[panels - 1 - (i % panels)] += 1
    rule = _gauss_rule if kind == "gauss-legendre-composite" else _fejer_rule
    nodes_parts = []
    weights_parts = []
    for (a, b), m in zip(zip(edges[:-1], edges[1:]), counts):
        x, w = rule(m)
        nodes_parts.append(0.5 * (b - a) * (x + 1.0) + a)
        weights_parts.append(0.5 * (b - a) * w)
    return RadialGrid(
        nodes=np.concatenate(nodes_parts),
        weights=np.concatenate(weights_parts),
        rmax=rmax,
        kind=kind,
        panel_edges=tuple(edges),
    )


@lru_cache(maxsize=8)
def _default_grid_cached(rmax: float, n: int, kind: str) -> RadialGrid:
    return make_grid(rmax, n, kind)


def default_grid() -> RadialGrid:
    """The desk-scale grid every stated tolerance refers to (rmax=30, n=2048)."""
    return _default_grid_cached(DEFAULT_RMAX, DEFAULT_N, "gauss-legendre-composite")


_NU_CACHE: dict[tuple[str, float], np.ndarray] = {}


def nu_weights(grid: RadialGrid, lam: float) -> np.ndarray:
    """Quadrature weights of d nu_lam on the grid: b_lam * w_i * t_i^(2*lam+1)."""
    lam = float(lam)
    cached = _NU_CACHE.get((grid.key, lam))
    if cached is None:
        b = measure_constants(lam).b_lambda
        cached = b * grid.weights * grid.nodes ** (2.0 * lam + 1.0)
        if len(_NU_CACHE) > 32:
            _NU_CACHE.clear()
        _NU_CACHE[(grid.key, lam)] = cached
    return cached


def _tail_fraction(grid: RadialGrid, abs_contrib: np.ndarray) -> float:
    mass = float(np.sum(abs_contrib))
    if mass <= 0.0:
        return 0.0
    boundary = float(np.sum(abs_contrib[grid.nodes >= 0.9 * grid.rmax]))
    return boundary / mass


def integrate_nu(f: RadialFunction, lam: float) -> NuIntegral:
    """Integral of a real profile against d nu_lam, truncated to [0, rmax].

    The result is flagged when the outermost tenth of the interval carries
    more than 1e-8 of the total |integrand| mass (truncation suspicion).
    """
    if np.iscomplexobj(f.values):
        raise TypeError("nu-integration expects a real profile")
    w = nu_weights(f.grid, lam)
    contrib = w * f.values
    abs_contrib = np.abs(contrib)
    tail = _tail_fraction(f.grid, abs_contrib)
    return NuIntegral(
        value=float(np.sum(contrib)),
        tail_fraction=tail,
        truncated=tail > TAIL_WARN_FRACTION,
    )


def lp_norm(f: RadialFunction, p: float, lam: float) -> float:
    """Weighted norm ||f||_{p, nu_lam}; p = inf means the grid max of |f|
    (a lower bound of the true sup; comparisons use it on both sides).

    For a radial function on R^d this radial norm equals the full weighted
    Lp norm, which is the contract callers rely on.
    """
    if p == math.inf:
        return float(np.max(np.abs(f.values))) if f.values.size else 0.0
    p = float(p)
    if p < 1.0:
        raise ValueError(f"p must be >= 1 or inf, got {p!r}")
    w = nu_weights(f.grid, lam)
    return float(np.sum(w * np.abs(f.values) ** p) ** (1.0 / p))


def save_radial_csv(f: RadialFunction, path: str | Path, lam: float) -> None:
    """Write node,value rows with a `# lambda=... rmax=... n=...` header."""
    lines = [f"# lambda={float(lam)!r} rmax={float(f.grid.rmax)!r} n={f.grid.n}"]
    lines.append("node,value")
    for t, v in zip(f.grid.nodes, f.values):
        lines.append(f"{float(t)!r},{float(v)!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def _parse_header(line: str, expected: tuple[str, ...]) -> dict[str, str]:
    if not line.startswith("#"):
        raise ValueError("missing CSV header line")
    fields = dict(tok.split("=", 1) for tok in line[1:].split())
    for name in expected:
        if name not in fields:
            raise ValueError(f"CSV header missing field {name!r}")
    return fields


def load_radial_csv(path: str | Path) -> tuple[RadialFunction, float]:
    """Read a radial CSV written by :func:`save_radial_csv`.

    The grid is rebuilt from the header (rmax, n) via make_grid and checked
    against the stored nodes, so only grids this package produces round-trip.
    """
    lines = Path(path).read_text().strip().splitlines()
    fields = _parse_header(lines[0], ("lambda", "rmax", "n"))
    lam = float(fields["lambda"])
    rmax = float(fields["rmax"])
    n = int(fields["n"])
    rows = [ln for ln in lines[1:] if ln and not ln.startswith("#") and ln != "node,value"]
    data = np.array([[float(x) for x in ln.split(",")] for ln in rows])
    if data.shape[0] != n:
        raise ValueError(f"expected {n} rows, found {data.shape[0]}")
    grid = None
    for kind in GRID_KINDS:
        cand = make_grid(rmax, n, kind)
        if np.allclose(cand.nodes, data[:, 0], rtol=0, atol=1e-12 * rmax):
            grid = cand
            break
    if grid is None:
        raise ValueError("node set does not match any make_grid construction")
    return RadialFunction(grid=grid, values=data[:, 1]), lam
