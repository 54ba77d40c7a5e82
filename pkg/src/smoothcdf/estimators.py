"""The five CDF estimators behind one evaluate/quantile interface.

Every fit function sorts and validates its sample once and returns an
immutable fitted object; evaluation is vectorized over the query points.
The smooth half-line estimator is evaluated through its finite
incomplete-gamma representation: with c_i = ceil(m X_i),

    Fhat(x) = (1/n) sum_i P(c_i, m x),

where P is the regularized lower incomplete gamma function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from .special import hermite_basis, poisson_log_pmf

__all__ = [
    "QuantileBracketError",
    "EmpiricalCDF",
    "SzaszEstimator",
    "BernsteinEstimator",
    "KernelCDF",
    "HermiteHalfEstimator",
    "edf_fit",
    "szasz_fit",
    "bernstein_fit",
    "kernel_fit",
    "hermite_half_fit",
    "hermite_half_standardized_fit",
    "fit_from_spec",
]

_X_MAX = 1e6  # quantile bracketing gives up past this point


class QuantileBracketError(RuntimeError):
    """No x <= x_max reaches the requested probability level."""


def _as_sample(values, lower=0.0, upper=None, what="sample"):
    x = np.sort(np.asarray(values, dtype=float).ravel())
    if x.size == 0:
        raise ValueError(f"{what} must not be empty")
    if not np.all(np.isfinite(x)):
        raise ValueError(f"{what} must be finite")
    if lower is not None and x[0] < lower:
        raise ValueError(f"{what} values must be >= {lower}")
    if upper is not None and x[-1] > upper:
        raise ValueError(f"{what} values must be <= {upper}")
    return x


def _check_level(p):
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError("quantile level must lie in (0, 1)")
    return p


def _bisect_increasing(f, p, lo, hi, tol=1e-10):
    # invariant: f(lo) < p <= f(hi); returns inf{x: f(x) >= p} within tol
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) >= p:
            hi = mid
        else:
            lo = mid
    return hi


def _bracket_upward(f, p, lo, hi):
    # double the span above lo until f(hi) >= p or the cap is hit
    while f(hi) < p:
        if hi >= _X_MAX:
            raise QuantileBracketError(
                f"estimator never reaches level {p} below x = {_X_MAX:g}")
        hi = min(_X_MAX, lo + 2.0 * (hi - lo))
    return hi


@dataclass(frozen=True)
class EmpiricalCDF:
    """Step-function estimator: fraction of observations <= x."""

    sample: np.ndarray
    kind: str = field(default="edf", init=False)

    @property
    def n(self):
        return self.sample.size

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        out = np.searchsorted(self.sample, x, side="right") / self.n
        return float(out) if out.ndim == 0 else out

    def quantile(self, p):
        # inf{x: F_n(x) >= p} is the ceil(n p)-th order statistic; the tiny
        # slack guards against n*p landing one ulp above an integer
        p = _check_level(p)
        return float(self.sample[math.ceil(self.n * p - 1e-9) - 1])


@dataclass(frozen=True)
class SzaszEstimator:
    """Poisson-smoothed CDF estimator on [0, inf)."""

    sample: np.ndarray
    m: int
    gamma_shapes: np.ndarray  # c_i = max(1, ceil(m X_i)), one per observation
    kind: str = field(default="szasz", init=False)

    @property
    def n(self):
        return self.sample.size

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0):
            raise ValueError("evaluation points must be >= 0")
        scalar = x.ndim == 0
        flat = np.atleast_1d(x).ravel()
        out = np.empty(flat.size)
        shapes = self.gamma_shapes.astype(float)
        step = max(1, 2_000_000 // max(1, self.n))
        for i in range(0, flat.size, step):
            block = flat[i:i + step]
            out[i:i + step] = sp.gammainc(shapes[:, None], self.m * block[None, :]).mean(axis=0)
        return float(out[0]) if scalar else out.reshape(x.shape)

    def density(self, x):
        """Derivative of the fitted CDF, a Poisson-weight mixture density."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0):
            raise ValueError("evaluation points must be >= 0")
        scalar = x.ndim == 0
        flat = np.atleast_1d(x).ravel()
        k = (self.gamma_shapes - 1).astype(float)
        logp = poisson_log_pmf(k[:, None], self.m * flat[None, :])
        out = self.m * np.exp(logp).mean(axis=0)
        return float(out[0]) if scalar else out.reshape(x.shape)

    def quantile(self, p):
        p = _check_level(p)
        hi0 = 2.0 * float(self.sample[-1]) + 10.0 / self.m
        hi = _bracket_upward(self.evaluate, p, 0.0, max(hi0, 1.0 / self.m))
        return _bisect_increasing(self.evaluate, p, 0.0, hi)


@dataclass(frozen=True)
class BernsteinEstimator:
    """Polynomial CDF estimator on [0, 1] with binomial weights."""

    sample: np.ndarray
    m: int
    orders: np.ndarray  # ceil(m X_i) in [0, m]
    kind: str = field(default="bernstein", init=False)

    @property
    def n(self):
        return self.sample.size

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0) or np.any(x > 1.0):
            raise ValueError("evaluation points must lie in [0, 1]")
        scalar = x.ndim == 0
        flat = np.atleast_1d(x).ravel()
        # P(Bin(m, x) >= c) = I_x(c, m - c + 1); the c = 0 rows contribute 1
        c = self.orders.astype(float)
        pos = c > 0
        out = np.full((self.n, flat.size), 1.0)
        if np.any(pos):
            out[pos] = sp.betainc(c[pos, None], self.m - c[pos, None] + 1.0, flat[None, :])
        out = out.mean(axis=0)
        return float(out[0]) if scalar else out.reshape(x.shape)

    def quantile(self, p):
        p = _check_level(p)
        if self.evaluate(0.0) >= p:
            return 0.0
        return _bisect_increasing(self.evaluate, p, 0.0, 1.0)


@dataclass(frozen=True)
class KernelCDF:
    """Gaussian-kernel CDF estimator, smooth and strictly increasing."""

    sample: np.ndarray
    h: float
    kind: str = field(default="kernel", init=False)

    @property
    def n(self):
        return self.sample.size

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        flat = np.atleast_1d(x).ravel()
        out = sp.ndtr((flat[None, :] - self.sample[:, None]) / self.h).mean(axis=0)
        return float(out[0]) if scalar else out.reshape(x.shape)

    def quantile(self, p):
        p = _check_level(p)
        span = self.h
        lo = float(self.sample[0]) - span
        while self.evaluate(lo) >= p:
            span *= 2.0
            lo = float(self.sample[0]) - span
            if lo <= -_X_MAX:
                raise QuantileBracketError("no lower bracket above -1e6")
        hi0 = 2.0 * abs(float(self.sample[-1])) + 10.0 * self.h
        hi = _bracket_upward(self.evaluate, p, lo, hi0)
        return _bisect_increasing(self.evaluate, p, lo, hi)


@dataclass(frozen=True)
class HermiteHalfEstimator:
    """Truncated Hermite-series density estimate integrated from 0.

    Not a proper CDF: the truncation keeps the limit at infinity away from
    one and the curve need not be monotone.  ``clip`` restricts evaluations
    to [0, 1] for consumers that need a distribution function; MISE
    experiments use the raw curve.
    """

    sample: np.ndarray
    order_max: int
    coef: np.ndarray  # a_hat_k = mean of h_k at the (rescaled) observations
    scale: float = 1.0
    clip: bool = False
    kind: str = field(default="hermite_half", init=False)

    @property
    def n(self):
        return self.sample.size

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0):
            raise ValueError("evaluation points must be >= 0")
        scalar = x.ndim == 0
        flat = np.atleast_1d(x).ravel() / self.scale
        _, integrals = hermite_basis(flat, self.order_max)
        out = self.coef @ integrals
        if self.clip:
            out = np.clip(out, 0.0, 1.0)
        return float(out[0]) if scalar else out.reshape(x.shape)

    def quantile(self, p):
        # generalized inf over a possibly non-monotone curve: locate the
        # first upcrossing on a grid, then bisect inside that cell
        p = _check_level(p)
        hi = 2.0 * float(self.sample[-1]) + 10.0 * self.scale
        while True:
            grid = np.linspace(0.0, hi, 4097)
            vals = self.evaluate(grid)
            above = np.nonzero(vals >= p)[0]
            if above.size:
                break
            if hi >= _X_MAX:
                raise QuantileBracketError(
                    f"estimate never reaches level {p} below x = {_X_MAX:g}")
            hi = min(_X_MAX, 2.0 * hi)
        j = above[0]
        if j == 0:
            return 0.0
        return _bisect_increasing(self.evaluate, p, grid[j - 1], grid[j])


def edf_fit(values):
    """Empirical distribution function of a sample."""
    return EmpiricalCDF(_as_sample(values, lower=None))


def szasz_fit(values, m):
    """Fit the Poisson-smoothed estimator of order m on non-negative data.

    An observation exactly at 0 is assigned c_i = 1 (its smallest
    well-defined incomplete-gamma order); for continuous models the event
    has probability zero.
    """
    m = _check_order(m)
    x = _as_sample(values)
    shapes = np.maximum(1, np.ceil(m * x)).astype(np.int64)
    return SzaszEstimator(x, m, shapes)


def bernstein_fit(values, m):
    """Fit the Bernstein polynomial estimator on data in [0, 1]."""
    m = _check_order(m)
    x = _as_sample(values, upper=1.0)
    orders = np.ceil(m * x).astype(np.int64).clip(0, m)
    return BernsteinEstimator(x, m, orders)


def kernel_fit(values, h):
    """Fit the Gaussian-kernel CDF estimator with bandwidth h > 0."""
    h = float(h)
    if h <= 0.0:
        raise ValueError("bandwidth must be positive")
    return KernelCDF(_as_sample(values, lower=None), h)


def hermite_half_fit(values, order_max, clip=False):
    """Fit the half-line Hermite estimator with N + 1 series terms."""
    order_max = int(order_max)
    if order_max < 0:
        raise ValueError("order_max must be >= 0")
    x = _as_sample(values)
    values_matrix, _ = hermite_basis(x, order_max)
    coef = values_matrix.mean(axis=1)
    return HermiteHalfEstimator(x, order_max, coef, scale=1.0, clip=clip)


def hermite_half_standardized_fit(values, order_max, mu, sigma, clip=False):
    """Hermite estimator fitted to scale-standardized data z = x / sigma.

    Experimental: only the known true scale is used (a location shift would
    move mass off [0, inf)); ``mu`` is accepted for interface completeness.
    The estimate at x is the plain fit on z_i = X_i / sigma read at x / sigma,
    so rescaling data and query point together leaves the output unchanged.
    """
    del mu
    sigma = float(sigma)
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    order_max = int(order_max)
    if order_max < 0:
        raise ValueError("order_max must be >= 0")
    x = _as_sample(values)
    values_matrix, _ = hermite_basis(x / sigma, order_max)
    coef = values_matrix.mean(axis=1)
    return HermiteHalfEstimator(x, order_max, coef, scale=sigma, clip=clip)


def fit_from_spec(spec, values, dist=None):
    """Fit an estimator from its JSON config form.

    Examples: {"kind": "szasz", "m": 50}, {"kind": "kernel", "h": 0.05},
    {"kind": "hermite_half", "N": 20, "standardize": true}.  Standardized
    Hermite fits take mu/sigma from the spec or from ``dist``.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("estimator spec must be a dict with a 'kind' key")
    kind = spec["kind"]
    if kind == "edf":
        return edf_fit(values)
    if kind == "szasz":
        return szasz_fit(values, spec["m"])
    if kind == "bernstein":
        return bernstein_fit(values, spec["m"])
    if kind == "kernel":
        return kernel_fit(values, spec["h"])
    if kind == "hermite_half":
        if spec.get("standardize", False):
            mu = spec.get("mu", dist.mean if dist is not None else None)
            sigma = spec.get("sigma", dist.sd if dist is not None else None)
            if sigma is None:
                raise ValueError("standardized hermite fit needs sigma (or a model)")
            return hermite_half_standardized_fit(values, spec["N"], mu, sigma,
                                                 clip=spec.get("clip", False))
        return hermite_half_fit(values, spec["N"], clip=spec.get("clip", False))
    raise ValueError(f"unknown estimator kind: {kind!r}")


def _check_order(m):
    m = int(m)
    if m < 1:
        raise ValueError("order m must be a positive integer")
    return m
