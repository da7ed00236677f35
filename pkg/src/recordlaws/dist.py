"""Probability laws: cdf, density/mass, hazard, cumulative hazard, endpoints, quantile.

Continuous variants evaluate with numpy and accept arrays. Discrete variants
evaluate scalars with plain Python arithmetic so that ``Fraction`` parameters
give exact rational results; their quantile also accepts arrays.

    >>> d = Geometric(Fraction(1, 2))
    >>> d.pdf(3), d.hazard(5)
    (Fraction(1, 8), Fraction(1, 1))
"""

from __future__ import annotations

import json
import math
from abc import ABC, abstractmethod
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, NamedTuple

import numpy as np

from .errors import DomainError, InvalidDistribution

__all__ = [
    "Distribution",
    "Endpoints",
    "Exponential",
    "UniformCont",
    "Geometric",
    "FiniteDiscrete",
    "TabulatedContinuous",
    "uniform_on",
    "cdf_eval",
    "pdf_eval",
    "hazard_eval",
    "cum_hazard_eval",
    "quantile",
    "endpoints",
    "from_dict",
    "parse_distribution",
]

_PROB_SUM_TOL = 1e-12


class Endpoints(NamedTuple):
    lep: float
    uep: float
    uep_atom_mass: Any


def _scalar(v):
    if isinstance(v, np.ndarray) and v.ndim == 0:
        return float(v)
    return v


class Distribution(ABC):
    """Common interface. ``tail(x)`` is 1 - F(x) computed without cancellation."""

    is_discrete: bool = False
    approximate_density: bool = False

    @abstractmethod
    def cdf(self, x): ...

    @abstractmethod
    def pdf(self, x): ...

    @abstractmethod
    def tail(self, x): ...

    @abstractmethod
    def quantile(self, u): ...

    @abstractmethod
    def endpoints(self) -> Endpoints: ...

    @abstractmethod
    def to_dict(self) -> dict: ...

    def hazard(self, x):
        """r(x) = f(x) / (1 - F(x)); raises DomainError where F(x) = 1."""
        t = self.tail(x)
        if np.any(np.asarray(t, dtype=float) <= 0):
            raise DomainError(f"hazard undefined where F(x) = 1 (x={x!r})")
        return self.pdf(x) / t

    def cum_hazard(self, x):
        """R(x) = -log(1 - F(x)); raises DomainError where F(x) = 1."""
        t = np.asarray(self.tail(x), dtype=float)
        if np.any(t <= 0):
            raise DomainError(f"cumulative hazard undefined where F(x) = 1 (x={x!r})")
        return _scalar(-np.log(t))

    def quantile_upper(self, v):
        """Generalized inverse at ``u = 1 - v``, for tail probabilities ``v`` in (0, 1)."""
        return self.quantile(1.0 - np.asarray(v, dtype=float))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_json_number)


def _json_number(v):
    if isinstance(v, Fraction):
        return float(v)
    raise TypeError(f"not JSON serializable: {v!r}")


# -- continuous ------------------------------------------------------------


@dataclass(frozen=True)
class Exponential(Distribution):
    theta: float = 1.0

    def __post_init__(self):
        if not self.theta > 0:
            raise InvalidDistribution(f"rate must be positive, got {self.theta}")

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.where(x < 0, 0.0, -np.expm1(-self.theta * np.maximum(x, 0.0))))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.where(x < 0, 0.0, self.theta * np.exp(-self.theta * np.maximum(x, 0.0))))

    def tail(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.exp(-self.theta * np.maximum(x, 0.0)))

    def hazard(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.where(x < 0, 0.0, float(self.theta)))

    def cum_hazard(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(self.theta * np.maximum(x, 0.0))

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        return _scalar(-np.log1p(-u) / self.theta)

    def quantile_upper(self, v):
        return _scalar(-np.log(np.asarray(v, dtype=float)) / self.theta)

    def endpoints(self) -> Endpoints:
        return Endpoints(0.0, math.inf, 0)

    def to_dict(self) -> dict:
        return {"dist": "exponential", "theta": self.theta}


@dataclass(frozen=True)
class UniformCont(Distribution):
    a: float = 0.0
    b: float = 1.0

    def __post_init__(self):
        if not self.a < self.b:
            raise InvalidDistribution(f"need a < b, got a={self.a}, b={self.b}")

    @property
    def width(self) -> float:
        return float(self.b - self.a)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.clip((x - self.a) / self.width, 0.0, 1.0))

    def pdf(self, x):
        # density on [a, b); the right endpoint is where F reaches 1
        x = np.asarray(x, dtype=float)
        return _scalar(np.where((x >= self.a) & (x < self.b), 1.0 / self.width, 0.0))

    def tail(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar(np.clip((self.b - x) / self.width, 0.0, 1.0))

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        return _scalar(self.a + u * self.width)

    def endpoints(self) -> Endpoints:
        return Endpoints(float(self.a), float(self.b), 0)

    def to_dict(self) -> dict:
        return {"dist": "uniform", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class TabulatedContinuous(Distribution):
    """Piecewise-linear cdf through ``(grid[i], cdf_values[i])``.

    The density is a central finite difference of the tabulated cdf, so it is
    only approximate (``approximate_density`` is True).
    """

    grid: tuple
    cdf_values: tuple
    approximate_density: bool = field(default=True, init=False)

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        c = np.asarray(self.cdf_values, dtype=float)
        if g.ndim != 1 or g.shape != c.shape or g.size < 2:
            raise InvalidDistribution("grid and cdf_values must be 1-D of equal length >= 2")
        if np.any(np.diff(g) <= 0):
            raise InvalidDistribution("grid must be strictly increasing")
        if np.any(np.diff(c) < 0) or c[0] < 0 or c[-1] > 1:
            raise InvalidDistribution("cdf_values must be nondecreasing within [0, 1]")
        if c[0] != 0 or c[-1] != 1:
            raise InvalidDistribution("cdf_values must start at 0 and reach 1")
        object.__setattr__(self, "grid", tuple(float(v) for v in g))
        object.__setattr__(self, "cdf_values", tuple(float(v) for v in c))
        object.__setattr__(self, "_g", g)
        object.__setattr__(self, "_c", c)
        dens = np.empty_like(g)
        dens[1:-1] = (c[2:] - c[:-2]) / (g[2:] - g[:-2])
        dens[0] = (c[1] - c[0]) / (g[1] - g[0])
        dens[-1] = (c[-1] - c[-2]) / (g[-1] - g[-2])
        object.__setattr__(self, "_dens", dens)

    def cdf(self, x):
        return _scalar(np.interp(np.asarray(x, dtype=float), self._g, self._c, left=0.0, right=1.0))

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self._g[0]) & (x <= self._g[-1])
        return _scalar(np.where(inside, np.interp(x, self._g, self._dens), 0.0))

    def tail(self, x):
        return _scalar(1.0 - np.asarray(self.cdf(x)))

    def quantile(self, u):
        u = np.asarray(u, dtype=float)
        g, c = self._g, self._c
        i = np.clip(np.searchsorted(c, u, side="left"), 1, len(c) - 1)
        lo, hi = c[i - 1], c[i]
        frac = np.where(hi > lo, (u - lo) / np.where(hi > lo, hi - lo, 1.0), 1.0)
        x = g[i - 1] + np.clip(frac, 0.0, 1.0) * (g[i] - g[i - 1])
        return _scalar(np.where(u <= c[0], g[0], x))

    def endpoints(self) -> Endpoints:
        c = self._c
        lep = self._g[np.searchsorted(c, 0.0, side="right") - 1]
        uep = self._g[np.searchsorted(c, 1.0, side="left")]
        return Endpoints(float(lep), float(uep), 0)

    def to_dict(self) -> dict:
        return {"dist": "tabulated", "grid": list(self.grid), "cdf": list(self.cdf_values)}


# -- discrete --------------------------------------------------------------


class _DiscreteBase(Distribution):
    is_discrete = True

    def cum_hazard(self, x):
        t = self.tail(x)
        if t <= 0:
            raise DomainError(f"cumulative hazard undefined where F(x) = 1 (x={x!r})")
        return -math.log(t)

    def hazard(self, x):
        t = self.tail(x)
        if t <= 0:
            raise DomainError(f"hazard undefined where F(x) = 1 (x={x!r})")
        return self.pdf(x) / t

    @abstractmethod
    def atoms(self, tail_tol: float = 1e-12) -> tuple[list, list, Any]:
        """Support points and masses, truncated once the remaining tail is below ``tail_tol``.

        Returns ``(values, probs, leftover)`` where ``leftover`` is the mass
        of the support beyond the last listed point.
        """

    def support_below(self, y) -> list:
        """Support points strictly below ``y`` (finite for every variant here)."""
        vals, _, _ = self.atoms_upto(y)
        return [v for v in vals if v < y]

    @abstractmethod
    def atoms_upto(self, y) -> tuple[list, list, Any]: ...


@dataclass(frozen=True)
class Geometric(_DiscreteBase):
    """Number of Bernoulli(p) trials up to and including the first success."""

    p: Any = 0.5

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise InvalidDistribution(f"p must lie in (0, 1), got {self.p}")

    @property
    def q(self):
        return 1 - self.p

    def cdf(self, x):
        if isinstance(x, np.ndarray):
            k = np.floor(x)
            return np.where(k < 1, 0.0, -np.expm1(np.maximum(k, 0) * math.log1p(-float(self.p))))
        if x < 1:
            return 0 * self.p
        return 1 - self.q ** math.floor(x)

    def pdf(self, x):
        if x < 1 or x != math.floor(x):
            return 0 * self.p
        return self.q ** (int(x) - 1) * self.p

    def tail(self, x):
        if x < 1:
            return 1 + 0 * self.p
        return self.q ** math.floor(x)

    def quantile(self, u):
        uarr = np.asarray(u, dtype=float)
        lq = math.log1p(-float(self.p))
        k = np.maximum(np.ceil(np.log1p(-uarr) / lq), 1.0)
        # float rounding can land one step off the infimum
        k = np.where((k > 1) & (-np.expm1((k - 1) * lq) >= uarr), k - 1, k)
        k = np.where(-np.expm1(k * lq) < uarr, k + 1, k)
        return _scalar(k)

    def endpoints(self) -> Endpoints:
        return Endpoints(1.0, math.inf, 0)

    def atoms(self, tail_tol: float = 1e-12):
        vals, probs = [], []
        k = 1
        while self.tail(k - 1) >= tail_tol:
            vals.append(k)
            probs.append(self.pdf(k))
            k += 1
        return vals, probs, self.tail(k - 1)

    def atoms_upto(self, y):
        top = max(0, math.floor(y))
        vals = list(range(1, top + 1))
        return vals, [self.pdf(k) for k in vals], self.tail(top)

    def to_dict(self) -> dict:
        return {"dist": "geometric", "p": self.p}


@dataclass(frozen=True)
class FiniteDiscrete(_DiscreteBase):
    support: tuple
    probs: tuple

    def __post_init__(self):
        support, probs = tuple(self.support), tuple(self.probs)
        if len(support) == 0 or len(support) != len(probs):
            raise InvalidDistribution("support and probs must be nonempty and of equal length")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise InvalidDistribution("support must be strictly increasing")
        if any(not p > 0 for p in probs):
            raise InvalidDistribution("probabilities must be positive")
        if abs(sum(probs) - 1) > _PROB_SUM_TOL:
            raise InvalidDistribution(f"probabilities sum to {sum(probs)}, not 1")
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "probs", probs)
        # strict tails summed from the top: tails[i] = P(X > support[i])
        tails = [0 * probs[0]] * len(probs)
        acc = 0 * probs[0]
        for i in range(len(probs) - 1, -1, -1):
            tails[i] = acc
            acc = acc + probs[i]
        object.__setattr__(self, "_tails", tuple(tails))
        object.__setattr__(self, "_mass", dict(zip(support, probs)))
        object.__setattr__(self, "_cum", np.cumsum(np.asarray(probs, dtype=float)))

    def _index_le(self, x) -> int:
        return bisect_right(self.support, x) - 1

    def cdf(self, x):
        if isinstance(x, np.ndarray):
            i = np.searchsorted(np.asarray(self.support, dtype=float), x, side="right") - 1
            return np.where(i < 0, 0.0, 1.0 - np.asarray(self._tails, dtype=float)[np.maximum(i, 0)])
        i = self._index_le(x)
        if i < 0:
            return 0 * self.probs[0]
        return 1 - self._tails[i]

    def pdf(self, x):
        return self._mass.get(x, 0 * self.probs[0])

    def tail(self, x):
        i = self._index_le(x)
        if i < 0:
            return 1 + 0 * self.probs[0]
        return self._tails[i]

    def quantile(self, u):
        uarr = np.asarray(u, dtype=float)
        i = np.minimum(np.searchsorted(self._cum, uarr, side="left"), len(self.support) - 1)
        return _scalar(np.asarray(self.support, dtype=float)[i])

    def endpoints(self) -> Endpoints:
        return Endpoints(self.support[0], self.support[-1], self.probs[-1])

    def atoms(self, tail_tol: float = 1e-12):
        return list(self.support), list(self.probs), 0 * self.probs[0]

    def atoms_upto(self, y):
        i = self._index_le(y)
        vals = list(self.support[: i + 1])
        return vals, list(self.probs[: i + 1]), self.tail(y)

    def to_dict(self) -> dict:
        return {"dist": "finite", "support": list(self.support), "probs": list(self.probs)}


def uniform_on(m: int, exact: bool = True) -> FiniteDiscrete:
    """Discrete uniform law on {1, ..., m}."""
    if m < 1:
        raise InvalidDistribution("m must be at least 1")
    p = Fraction(1, m) if exact else 1.0 / m
    return FiniteDiscrete(tuple(range(1, m + 1)), (p,) * m)


# -- functional aliases ------------------------------------------------------


def cdf_eval(d: Distribution, x):
    return d.cdf(x)


def pdf_eval(d: Distribution, x):
    return d.pdf(x)


def hazard_eval(d: Distribution, x):
    return d.hazard(x)


def cum_hazard_eval(d: Distribution, x):
    return d.cum_hazard(x)


def quantile(d: Distribution, u):
    """Generalized inverse inf{x : F(x) >= u} for u in (0, 1)."""
    return d.quantile(u)


def endpoints(d: Distribution) -> Endpoints:
    return d.endpoints()


# -- construction from JSON / shorthand --------------------------------------


def _number(text: str):
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    value = float(text)
    if value.is_integer() and "." not in text and "e" not in text.lower():
        return int(value)
    return value


def _json_value(v):
    if isinstance(v, str):
        return _number(v)
    return v


def from_dict(spec: dict) -> Distribution:
    """Build a distribution from its JSON object form.

    Examples: ``{"dist": "exponential", "theta": 1.0}``,
    ``{"dist": "finite", "support": [1, 2], "probs": [0.4, 0.6]}``.
    Numeric strings such as ``"1/4"`` are read as exact fractions.
    """
    kind = str(spec.get("dist", "")).lower()
    try:
        if kind in ("exponential", "exp"):
            return Exponential(_json_value(spec.get("theta", 1.0)))
        if kind in ("uniform", "unif"):
            return UniformCont(_json_value(spec.get("a", 0.0)), _json_value(spec.get("b", 1.0)))
        if kind in ("geometric", "geom"):
            return Geometric(_json_value(spec["p"]))
        if kind in ("finite", "discrete"):
            support = [_json_value(v) for v in spec["support"]]
            probs = [_json_value(v) for v in spec["probs"]]
            return FiniteDiscrete(tuple(support), tuple(probs))
        if kind in ("tabulated", "table"):
            return TabulatedContinuous(tuple(spec["grid"]), tuple(spec.get("cdf", spec.get("cdf_values"))))
    except KeyError as exc:
        raise InvalidDistribution(f"missing field {exc} for {kind!r}") from None
    raise InvalidDistribution(f"unknown distribution {spec.get('dist')!r}")


def parse_distribution(text: str) -> Distribution:
    """Parse JSON or the shorthand grammar.

    Shorthand::

        exp:THETA                  exponential with rate THETA
        unif:A,B                   continuous uniform on [A, B]
        geom:P                     geometric on {1, 2, ...}
        dunif:M                    discrete uniform on {1, ..., M}
        finite:X1,X2,...@P1,P2,... finite law (omit "@..." for equal masses)

    Numbers written as ``a/b`` are exact fractions.
    """
    text = text.strip()
    if text.startswith("{"):
        return from_dict(json.loads(text))
    name, _, args = text.partition(":")
    name = name.strip().lower()
    try:
        if name in ("exp", "exponential"):
            return Exponential(_number(args) if args else 1.0)
        if name in ("unif", "uniform"):
            a, b = (args or "0,1").split(",")
            return UniformCont(_number(a), _number(b))
        if name in ("geom", "geometric"):
            return Geometric(_number(args))
        if name == "dunif":
            return uniform_on(int(args))
        if name == "finite":
            pts, _, masses = args.partition("@")
            support = [_number(v) for v in pts.split(",")]
            if masses:
                probs = [_number(v) for v in masses.split(",")]
            else:
                probs = [Fraction(1, len(support))] * len(support)
            return FiniteDiscrete(tuple(support), tuple(probs))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidDistribution(f"cannot parse distribution {text!r}: {exc}") from None
    raise InvalidDistribution(f"unknown distribution shorthand {text!r}")

