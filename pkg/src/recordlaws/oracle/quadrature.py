"""Adaptive quadrature over ordered simplices z < x_1 < ... < x_n < y.

Integrands are products of one-variable factors ``g_1(x_1) ... g_n(x_n)``.
The nested integral is evaluated from the right: ``h_n(x) = int_x^y g_n``,
``h_j(x) = int_x^y g_j(t) h_{j+1}(t) dt`` and the answer is ``h_1(z)``. All
levels share one composite Gauss-Legendre panel grid, and each ``h_j`` is
known at every node through a per-panel spectral integration matrix, so the
inner integrals are reused by the outer level instead of recomputed.
Panels whose Legendre coefficients have not decayed are bisected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import legendre as L

from ..dist import Distribution
from ..errors import DomainError

__all__ = [
    "HazardProduct",
    "GammaKernel",
    "ADR1Kernel",
    "QuadratureConfig",
    "QuadratureResult",
    "simplex_quadrature",
    "nested_integral",
]

ORDER = 16
MAX_DEPTH = 4


@lru_cache(maxsize=None)
def _rule(order: int):
    """Nodes, weights, coefficient map and right-integration matrix on [-1, 1]."""
    s, w = L.leggauss(order)
    V = L.legvander(s, order - 1)
    Vinv = np.linalg.inv(V)
    anti = np.empty((order, order))
    for k in range(order):
        e = np.zeros(order)
        e[k] = 1.0
        c = L.legint(e)
        anti[:, k] = L.legval(1.0, c) - L.legval(s, c)
    return s, w, Vinv, anti @ Vinv


@dataclass(frozen=True)
class HazardProduct:
    """Factor r(x) in every variable; integrates to (R(y) - R(z))^n / n!."""

    def factors(self, dist: Distribution, n: int) -> list[Callable]:
        return [_hazard_fn(dist)] * n


@dataclass(frozen=True)
class GammaKernel:
    """Factor F(x_j)^(k_j - 1) f(x_j) in variable j, over the whole support."""

    k: tuple[int, ...]

    def factors(self, dist: Distribution, n: int) -> list[Callable]:
        if len(self.k) != n:
            raise ValueError(f"{len(self.k)} exponents for depth {n}")
        return [_gamma_fn(dist, kj) for kj in self.k]


@dataclass(frozen=True)
class ADR1Kernel:
    """Joint record density with the last record pinned at ``y``.

    Integrating the first n variables gives the density of X^(n+1) at ``y``.
    """

    y: float

    def factors(self, dist: Distribution, n: int) -> list[Callable]:
        fy = float(dist.pdf(self.y))
        r = _hazard_fn(dist)
        out = [r] * n
        if n:
            out[-1] = lambda x, r=r: r(x) * fy
        return out

    def empty_value(self, dist: Distribution) -> float:
        return float(dist.pdf(self.y))


def _hazard_fn(dist: Distribution) -> Callable:
    def r(x):
        x = np.asarray(x, dtype=float)
        tail = np.asarray(dist.tail(x), dtype=float)
        f = np.asarray(dist.pdf(x), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(tail > 0, f / tail, np.inf)
        if np.any(np.isinf(out) & (f > 0)):
            raise DomainError("hazard is unbounded inside the integration region")
        return np.where(np.isinf(out), 0.0, out)

    return r


def _gamma_fn(dist: Distribution, k: int) -> Callable:
    if k < 1:
        raise ValueError("exponents must be >= 1")

    def g(x):
        x = np.asarray(x, dtype=float)
        return np.asarray(dist.cdf(x), dtype=float) ** (k - 1) * np.asarray(dist.pdf(x), dtype=float)

    return g


@dataclass(frozen=True)
class QuadratureConfig:
    dist: Distribution
    n: int
    bounds: tuple = (None, None)
    abs_tolerance: float = 1e-8
    max_subdivisions: int = 2**14

    def __post_init__(self):
        if not self.abs_tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.n <= MAX_DEPTH:
            raise ValueError(f"depth must be in 0..{MAX_DEPTH}, got {self.n}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    converged: bool
    panels: int

    def __float__(self) -> float:
        return self.value


def _domain_map(a: float, b: float):
    """Monotone map from [0, 1] (or [a, b]) onto [a, b], with its derivative."""
    if math.isfinite(a) and math.isfinite(b):
        return (a, b), (lambda t: t), (lambda t: np.ones_like(t))
    if math.isfinite(a):
        return (0.0, 1.0), (lambda t: a + t / (1 - t)), (lambda t: 1 / (1 - t) ** 2)
    if math.isfinite(b):
        return (0.0, 1.0), (lambda t: b - (1 - t) / t), (lambda t: 1 / t**2)
    return (0.0, 1.0), (lambda t: np.tan(np.pi * (t - 0.5))), (lambda t: np.pi / np.cos(np.pi * (t - 0.5)) ** 2)


def nested_integral(factors: Sequence[Callable], a: float, b: float, abs_tolerance: float = 1e-8,
                    max_subdivisions: int = 2**14, order: int = ORDER) -> QuadratureResult:
    """Integral of prod g_j(x_j) over a < x_1 < ... < x_n < b (``a``, ``b`` may be infinite)."""
    n = len(factors)
    if n == 0:
        return QuadratureResult(1.0, 0.0, True, 0)
    if not a < b:
        return QuadratureResult(0.0, 0.0, True, 0)
    (lo, hi), phi, dphi = _domain_map(a, b)
    s, _, Vinv, M = _rule(order)
    edges = np.linspace(lo, hi, 9)
    value, err, converged = 0.0, math.inf, False
    while True:
        left, right = edges[:-1], edges[1:]
        half = 0.5 * (right - left)
        t = (0.5 * (left + right))[:, None] + half[:, None] * s[None, :]
        x = phi(t)
        jac = dphi(t)
        h = np.ones_like(t)
        panel_err = np.zeros(len(left))
        for g in reversed(factors):
            v = g(x) * jac * h
            coef = v @ Vinv.T
            # size of the two highest Legendre modes ~ local truncation error
            panel_err = np.maximum(panel_err, half * (np.abs(coef[:, -1]) + np.abs(coef[:, -2])))
            within = (v @ M.T) * half[:, None]
            totals = 2 * half * coef[:, 0]
            after = np.concatenate([np.cumsum(totals[::-1])[::-1][1:], [0.0]])
            h = within + after[:, None]
        new_value = float(totals.sum())
        err = float(panel_err.sum())
        budget = abs_tolerance * (2 * half) / (hi - lo)
        bad = panel_err > 0.1 * budget
        converged = not bad.any() or abs(new_value - value) < 0.01 * abs_tolerance and err < abs_tolerance
        value = new_value
        if converged or len(edges) - 1 + bad.sum() > max_subdivisions:
            break
        mids = 0.5 * (left[bad] + right[bad])
        edges = np.sort(np.concatenate([edges, mids]))
    return QuadratureResult(value, err, bool(converged), len(edges) - 1)


def simplex_quadrature(cfg: QuadratureConfig, integrand) -> QuadratureResult:
    """Integrate ``integrand`` over the ordered region inside ``cfg.bounds``.

    Bounds left as ``None`` default to the endpoints of ``cfg.dist``; a
    :class:`GammaKernel` always uses the whole support. When the tolerance
    is not met within ``max_subdivisions`` panels the best estimate comes
    back with ``converged=False``.
    """
    lep, uep, _ = cfg.dist.endpoints()
    z, y = cfg.bounds if cfg.bounds is not None else (None, None)
    if isinstance(integrand, GammaKernel):
        z, y = None, None
    if isinstance(integrand, ADR1Kernel):
        y = integrand.y
        if cfg.n == 0:
            return QuadratureResult(integrand.empty_value(cfg.dist), 0.0, True, 0)
    a = float(lep) if z is None else float(z)
    b = float(uep) if y is None else float(y)
    return nested_integral(integrand.factors(cfg.dist, cfg.n), a, b,
                           cfg.abs_tolerance, cfg.max_subdivisions)
