"""Approximation-theory functionals.

Best approximation by bandlimited functions, the fractional modulus of
smoothness, computable K-functional surrogates, and the bound evaluators of
the inverse direction (cumulative best-approximation sums, Marchaud-type
integrals).

The true K-functional infimum over the whole Sobolev class is not computable;
this module provides the two computable surrogates the harness certifies
against each other: the realization (objective at a near-best bandlimited
approximant of type 1/t) and a candidate-family upper bound (smoothing
projections P_sigma over a geometric sigma grid, plus sharp spectral
truncations at p = 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .operators import make_eta, vallee_poussin
from .quad import RadialFunction, RadialGrid, lp_norm, nu_weights
from .special import jm_multiplier
from .transforms import (
    Spectrum,
    _kernel_matrix,
    bandlimit_project,
    hankel,
    spectral_tail_l2,
)
from .weights import WeightParams

__all__ = [
    "SmoothnessQuery",
    "ModulusResult",
    "BestApprox",
    "RealizationResult",
    "modulus",
    "diff_norm",
    "best_approx",
    "realization",
    "realization_candidate_min",
    "k_functional_upper",
    "inverse_bound",
    "marchaud_bound",
]


@dataclass(frozen=True)
class SmoothnessQuery:
    """One validated smoothness evaluation point (used by the sweep harness)."""

    f: RadialFunction
    params: WeightParams
    p: float
    m: float
    r: float
    scale: float

    def __post_init__(self) -> None:
        if not (self.p == math.inf or self.p >= 1):
            raise ValueError(f"p must be >= 1 or inf, got {self.p!r}")
        if not (self.m > 0):
            raise ValueError(f"difference order m must be positive, got {self.m!r}")
        if self.r < 0:
            raise ValueError(f"derivative half-power r must be >= 0, got {self.r!r}")
        if not (self.scale > 0):
            raise ValueError(f"scale must be positive, got {self.scale!r}")


# --------------------------------------------------------------------------
# batched physical norms
# --------------------------------------------------------------------------


def _norms_of_columns(phys: np.ndarray, grid: RadialGrid, lam: float, p: float) -> np.ndarray:
    """Lp(nu_lam) norm of each column of an (n, k) physical-sample matrix."""
    if p == math.inf:
        return np.max(np.abs(phys), axis=0)
    p = float(p)
    if p < 1.0:
        raise ValueError(f"p must be >= 1 or inf, got {p!r}")
    w = nu_weights(grid, lam)
    return np.sum(w[:, None] * np.abs(phys) ** p, axis=0) ** (1.0 / p)


def _inverse_batch(fhat: Spectrum, symbols: np.ndarray) -> np.ndarray:
    """Physical samples of invH(symbol_j * fhat), one column per symbol."""
    mat = _kernel_matrix(fhat.lam, fhat.grid, fhat.grid)
    return mat @ (fhat.values[:, None] * symbols)


def _spectral_l2(values: np.ndarray, grid: RadialGrid, lam: float) -> float:
    return float(np.sqrt(np.sum(nu_weights(grid, lam) * np.abs(values) ** 2)))


def diff_norm(
    f: RadialFunction,
    t: float,
    m: float,
    p: float,
    params: WeightParams,
    r: float = 0.0,
    fhat: Spectrum | None = None,
) -> float:
    """|| Delta_t^m (-Lap)^(r/2) f ||_{p, nu}; m = 0 (or r = 0) drops that factor.

    One code path for every p: invert the symbol-multiplied spectrum, then
    measure the norm on the physical grid.
    """
    lam = params.lambda_k
    fhat = hankel(f, lam) if fhat is None else fhat
    sym = np.ones_like(fhat.grid.nodes)
    if r > 0:
        sym = sym * fhat.grid.nodes**r
    if m > 0:
        if not (t > 0):
            raise ValueError("difference step must be positive when m > 0")
        sym = sym * jm_multiplier(lam, m, t * fhat.grid.nodes)
    phys = _inverse_batch(fhat, sym[:, None])
    return float(_norms_of_columns(phys, fhat.grid, lam, p)[0])


class ModulusResult(NamedTuple):
    """Modulus value and the step attaining the discretized sup."""

    value: float
    t_max: float


def modulus(
    f: RadialFunction,
    delta: float,
    m: float,
    p: float,
    params: WeightParams,
    samples: int = 24,
    fhat: Spectrum | None = None,
) -> ModulusResult:
    """Fractional modulus of smoothness sup_{0 < t <= delta} ||Delta_t^m f||_p.

    The sup is discretized on the quarter-octave grid delta * 2^(-j/4),
    j = 0..samples; nested delta values share sample points, which keeps the
    modulus exactly nondecreasing in delta along such sweeps.  The value is
    a lower bound of the true sup within grid slack.
    """
    if not (delta > 0):
        raise ValueError(f"delta must be positive, got {delta!r}")
    if not (m > 0):
        raise ValueError(f"order m must be positive, got {m!r}")
    lam = params.lambda_k
    fhat = hankel(f, lam) if fhat is None else fhat
    t_grid = delta * 2.0 ** (-np.arange(samples + 1) / 4.0)
    syms = jm_multiplier(lam, m, np.multiply.outer(fhat.grid.nodes, t_grid))
    phys = _inverse_batch(fhat, syms)
    norms = _norms_of_columns(phys, fhat.grid, lam, p)
    idx = int(np.argmax(norms))
    return ModulusResult(value=float(norms[idx]), t_max=float(t_grid[idx]))


class BestApprox(NamedTuple):
    """Best-approximation value, the bandlimited approximant, near-best flag."""

    value: float
    g_star: Spectrum
    near_best: bool


def best_approx(f: RadialFunction, sigma: float, p: float, params: WeightParams) -> BestApprox:
    """Distance from f to the bandlimited class of spherical type sigma.

    p = 2: exact minimizer by sharp spectral truncation (Parseval); the error
    is the spectral tail mass beyond sigma.  Other p: the smoothing
    projection at sigma/2 (output bandlimited to sigma) is a near-best
    approximant, so the returned value is an upper bound, flagged
    ``near_best=True``.
    """
    if not (sigma > 0):
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    lam = params.lambda_k
    fhat = hankel(f, lam)
    if p == 2:
        g = bandlimit_project(fhat, sigma)
        return BestApprox(value=spectral_tail_l2(f, lam, sigma), g_star=g, near_best=False)
    g = vallee_poussin(fhat, sigma / 2.0)
    mat = _kernel_matrix(lam, fhat.grid, fhat.grid)
    diff = RadialFunction(grid=f.grid, values=f.values - mat @ g.values)
    return BestApprox(value=lp_norm(diff, p, lam), g_star=g, near_best=True)


class RealizationResult(NamedTuple):
    """K-objective at a (near-)best bandlimited approximant of type 1/t."""

    value: float
    approx_error: float
    derivative_term: float
    sigma_used: float


def _objective_terms(
    f: RadialFunction,
    g: Spectrum,
    t: float,
    r: float,
    p: float,
    lam: float,
    approx_error: float | None = None,
) -> RealizationResult:
    """||f - g||_p + t^r ||(-Lap)^(r/2) g||_p for a bandlimited candidate g."""
    mat = _kernel_matrix(lam, g.grid, g.grid)
    gv = g.values
    if approx_error is None:
        if p == 2:
            approx_error = _spectral_l2(hankel(f, lam).values - gv, g.grid, lam)
        else:
            diff = RadialFunction(grid=f.grid, values=f.values - mat @ gv)
            approx_error = lp_norm(diff, p, lam)
    if p == 2:
        deriv = _spectral_l2(g.grid.nodes**r * gv, g.grid, lam)
    else:
        deriv = lp_norm(RadialFunction(grid=f.grid, values=mat @ (g.grid.nodes**r * gv)), p, lam)
    term = t**r * deriv
    return RealizationResult(
        value=approx_error + term,
        approx_error=approx_error,
        derivative_term=term,
        sigma_used=1.0 / t,
    )


def realization(
    f: RadialFunction, t: float, r: float, p: float, params: WeightParams
) -> RealizationResult:
    """Realization of the K-functional at scale t.

    Evaluates ||f - g*||_p + t^r ||(-Lap)^(r/2) g*||_p with g* the
    (near-)best approximant of spherical type 1/t; bandlimited functions lie
    in every Sobolev class, so the derivative term is always finite.
    """
    if not (t > 0 and r > 0):
        raise ValueError("t and r must be positive")
    lam = params.lambda_k
    ba = best_approx(f, 1.0 / t, p, params)
    return _objective_terms(f, ba.g_star, t, r, p, lam, approx_error=ba.value)


def _geom(lo: float, hi: float, points: int) -> np.ndarray:
    return np.geomspace(lo, hi, points)


_ETA = make_eta()


def _eta_symbols(nodes: np.ndarray, sigmas: np.ndarray) -> np.ndarray:
    """Smoothing-cutoff symbols eta(r / sigma), one column per sigma."""
    return _ETA(nodes[:, None] / sigmas[None, :])


def k_functional_upper(
    f: RadialFunction,
    t: float,
    r: float,
    p: float,
    params: WeightParams,
    points: int = 9,
    fhat: Spectrum | None = None,
) -> float:
    """Candidate-family upper bound on the K-functional K_r(t, f)_p.

    Minimizes the K-objective over smoothing projections P_sigma(f) with
    sigma on a geometric grid spanning [1/(4t), 4/t] (and, at p = 2, sharp
    spectral truncations at the same scales).  An upper bound on the true
    infimum by construction.
    """
    if not (t > 0 and r > 0):
        raise ValueError("t and r must be positive")
    lam = params.lambda_k
    fhat = hankel(f, lam) if fhat is None else fhat
    grid = fhat.grid
    nodes = grid.nodes
    sigmas = _geom(1.0 / (4.0 * t), 4.0 / t, points)
    eta_syms = _eta_symbols(nodes, sigmas)
    best = math.inf
    if p == 2:
        fv = fhat.values
        w = nu_weights(grid, lam)
        for j in range(sigmas.size):
            gv = fv * eta_syms[:, j]
            approx = math.sqrt(float(np.sum(w * np.abs(fv - gv) ** 2)))
            deriv = math.sqrt(float(np.sum(w * np.abs(nodes**r * gv) ** 2)))
            best = min(best, approx + t**r * deriv)
            # sharp truncation candidate at the same scale
            mask = (nodes <= sigmas[j]).astype(float)
            gv2 = fv * mask
            approx2 = math.sqrt(float(np.sum(w * np.abs(fv - gv2) ** 2)))
            deriv2 = math.sqrt(float(np.sum(w * np.abs(nodes**r * gv2) ** 2)))
            best = min(best, approx2 + t**r * deriv2)
        return best
    smooth_phys = _inverse_batch(fhat, eta_syms)
    deriv_phys = _inverse_batch(fhat, eta_syms * nodes[:, None] ** r)
    approx_norms = _norms_of_columns(f.values[:, None] - smooth_phys, grid, lam, p)
    deriv_norms = _norms_of_columns(deriv_phys, grid, lam, p)
    return float(np.min(approx_norms + t**r * deriv_norms))


def _plateau_symbols(nodes: np.ndarray, sigma_max: float, widths: Sequence[float]) -> np.ndarray:
    """Smooth cutoffs that are 1 up to (1-w) sigma_max and 0 beyond sigma_max.

    The usual eta(r/sigma) family fixes the transition at [sigma, 2 sigma];
    for restricted-bandlimit candidates the transition placement is a free
    tradeoff (wide transition = small kernel norm, late transition = small
    approximation error), so several widths are offered as candidates.
    """
    cols = []
    for w in widths:
        a = (1.0 - w) * sigma_max
        x = (nodes - a) / (sigma_max - a)
        cols.append(_ETA(1.0 + np.clip(x, 0.0, 1.0)))
    return np.stack(cols, axis=1)


def realization_candidate_min(
    f: RadialFunction,
    t: float,
    r: float,
    p: float,
    params: WeightParams,
    points: int = 7,
) -> float:
    """Candidate-grid approximation of the restricted K-infimum over the
    bandlimited class of type 1/t.

    Candidates: P_sigma(f) for sigma in [1/(8t), 1/(2t)] (their outputs are
    bandlimited to 2*sigma <= 1/t), variable-width plateau cutoffs vanishing
    at 1/t, sharp truncations up to 1/t at p = 2, and the realization
    approximant itself.
    """
    if not (t > 0 and r > 0):
        raise ValueError("t and r must be positive")
    lam = params.lambda_k
    fhat = hankel(f, lam)
    grid = fhat.grid
    nodes = grid.nodes
    best = realization(f, t, r, p, params).value
    sigmas = _geom(1.0 / (8.0 * t), 1.0 / (2.0 * t), points)
    syms = np.concatenate(
        [
            _eta_symbols(nodes, sigmas),
            _plateau_symbols(nodes, 1.0 / t, (0.3, 0.5, 0.7, 0.9)),
        ],
        axis=1,
    )
    if p == 2:
        fv = fhat.values
        w = nu_weights(grid, lam)
        for j in range(syms.shape[1]):
            gv = fv * syms[:, j]
            approx = math.sqrt(float(np.sum(w * np.abs(fv - gv) ** 2)))
            deriv = math.sqrt(float(np.sum(w * np.abs(nodes**r * gv) ** 2)))
            best = min(best, approx + t**r * deriv)
        for sigma in _geom(1.0 / (2.0 * t), 1.0 / t, 5):
            mask = (nodes <= sigma).astype(float)
            gv = fv * mask
            approx = math.sqrt(float(np.sum(w * np.abs(fv - gv) ** 2)))
            deriv = math.sqrt(float(np.sum(w * np.abs(nodes**r * gv) ** 2)))
            best = min(best, approx + t**r * deriv)
        return best
    smooth_phys = _inverse_batch(fhat, syms)
    deriv_phys = _inverse_batch(fhat, syms * nodes[:, None] ** r)
    approx_norms = _norms_of_columns(f.values[:, None] - smooth_phys, grid, lam, p)
    deriv_norms = _norms_of_columns(deriv_phys, grid, lam, p)
    return min(best, float(np.min(approx_norms + t**r * deriv_norms)))


def inverse_bound(
    E_values: Sequence[tuple[int, float]] | dict[int, float], n: int, m: float
) -> float:
    """Weighted cumulative best-approximation sum n^-m sum_{j<=n} (j+1)^(m-1) E_j.

    Requires E_j for every j = 0..n; a missing index is an error.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not (m > 0):
        raise ValueError(f"m must be positive, got {m!r}")
    table = dict(E_values)
    missing = [j for j in range(int(n) + 1) if j not in table]
    if missing:
        raise ValueError(f"missing best-approximation values for j={missing}")
    total = sum((j + 1.0) ** (m - 1.0) * float(table[j]) for j in range(int(n) + 1))
    return float(n) ** (-m) * total


def marchaud_bound(
    f: RadialFunction,
    delta: float,
    m: float,
    p: float,
    params: WeightParams,
    t_grid: np.ndarray | None = None,
) -> float:
    """Marchaud-type right-hand side delta^m (||f||_p + int_delta^1 t^-m K dt/t).

    K at order m+1 is replaced by realization values on a log grid; the
    integral is a trapezoid rule in log t.
    """
    if not (0 < delta < 1):
        raise ValueError(f"delta must lie in (0, 1), got {delta!r}")
    if not (m > 0):
        raise ValueError(f"m must be positive, got {m!r}")
    lam = params.lambda_k
    if t_grid is None:
        t_grid = np.geomspace(delta, 1.0, 17)
    t_grid = np.asarray(t_grid, dtype=float)
    kvals = np.array([realization(f, t, m + 1.0, p, params).value for t in t_grid])
    integrand = t_grid ** (-m) * kvals
    integral = float(np.trapezoid(integrand, x=np.log(t_grid)))
    return delta**m * (lp_norm(f, p, lam) + integral)
