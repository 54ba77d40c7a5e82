"""Ground-truth distributions for the simulation study.

Each model carries the analytic CDF, density, density derivative, quantile
and a seeded sampler.  Sampling is per-draw inverse transform on a Philox
counter-based stream, so a (seed, n) pair fully determines the output on
any platform and samples are returned sorted ascending.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special as sp

__all__ = [
    "TrueDistribution",
    "MixtureSpec",
    "make_exponential",
    "make_weibull_mixture",
    "make_beta",
    "sample",
    "distribution_from_spec",
]


@dataclass(frozen=True)
class TrueDistribution:
    """A known distribution exposing everything the experiments need.

    ``support`` is (0, inf) for the half-line models and (0, 1) for beta.
    ``mean`` and ``sd`` are the analytic moments; the standardized Hermite
    estimator uses ``sd`` as its known true scale.
    """

    name: str
    support: tuple[float, float]
    cdf: Callable[[np.ndarray], np.ndarray]
    pdf: Callable[[np.ndarray], np.ndarray]
    pdf_prime: Callable[[np.ndarray], np.ndarray]
    quantile: Callable[[np.ndarray], np.ndarray]
    mean: float
    sd: float
    # draws n variates from an already-seeded Generator, unsorted
    _draw: Callable[[np.random.Generator, int], np.ndarray] = field(repr=False)
    spec: dict = field(default_factory=dict)


@dataclass(frozen=True)
class MixtureSpec:
    """Weibull mixture components as (weight, shape, scale) triples."""

    components: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        comps = tuple((float(w), float(a), float(b)) for w, a, b in self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("mixture needs at least one component")
        weights = np.array([c[0] for c in comps])
        if np.any(weights <= 0.0):
            raise ValueError("mixture weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-12:
            raise ValueError("mixture weights must sum to 1")
        if any(c[1] <= 0.0 or c[2] <= 0.0 for c in comps):
            raise ValueError("Weibull shape and scale must be positive")


def make_exponential(rate):
    """Exponential distribution with rate parameter, F(x) = 1 - exp(-rate*x)."""
    rate = float(rate)
    if rate <= 0.0:
        raise ValueError("rate must be positive")

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0.0, -np.expm1(-rate * x), 0.0)

    def pdf(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, rate * np.exp(-rate * x), 0.0)

    def pdf_prime(x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0.0, -rate * rate * np.exp(-rate * x), 0.0)

    def quantile(p):
        p = _check_prob(p)
        with np.errstate(divide="ignore"):  # p = 1 maps to +inf
            return -np.log1p(-p) / rate

    def draw(rng, n):
        return -np.log1p(-rng.random(n)) / rate

    return TrueDistribution(
        name=f"exponential(rate={rate:g})",
        support=(0.0, math.inf),
        cdf=cdf,
        pdf=pdf,
        pdf_prime=pdf_prime,
        quantile=quantile,
        mean=1.0 / rate,
        sd=1.0 / rate,
        _draw=draw,
        spec={"kind": "exponential", "rate": rate},
    )


def _weibull_cdf(x, shape, scale):
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore"):
        t = np.where(x > 0.0, (x / scale) ** shape, 0.0)
    return -np.expm1(-t)


def _weibull_pdf(x, shape, scale):
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(x > 0.0, (x / scale) ** shape, 0.0)
        out = np.where(x > 0.0, (shape / scale) * (x / scale) ** (shape - 1.0) * np.exp(-t), 0.0)
    if shape == 1.0:
        out = np.where(np.asarray(x) == 0.0, 1.0 / scale, out)
    return out


def _weibull_pdf_prime(x, shape, scale):
    # f'(x) = f(x) * [(shape-1)/x - shape/scale * (x/scale)^(shape-1)];
    # unbounded at 0 when 1 < shape < 2, callers stay in the interior.
    x = np.asarray(x, dtype=float)
    f = _weibull_pdf(x, shape, scale)
    with np.errstate(divide="ignore", invalid="ignore"):
        term = (shape - 1.0) / x - (shape / scale) * (x / scale) ** (shape - 1.0)
        out = np.where(x > 0.0, f * term, 0.0)
    if shape == 1.0:
        out = np.where(x == 0.0, -1.0 / scale**2, out)
    return out


def make_weibull_mixture(spec):
    """Mixture of Weibull(shape, scale) components.

    ``spec`` is a MixtureSpec or an iterable of (weight, shape, scale)
    triples.  Weibull(1, 1) is the unit exponential, so a single
    (1.0, 1, 1) component reduces to Exp(1).
    """
    if not isinstance(spec, MixtureSpec):
        spec = MixtureSpec(tuple(tuple(c) for c in spec))
    weights = np.array([c[0] for c in spec.components])
    shapes = np.array([c[1] for c in spec.components])
    scales = np.array([c[2] for c in spec.components])
    cumw = np.cumsum(weights)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        parts = [w * _weibull_cdf(x, a, b) for w, a, b in spec.components]
        return np.sum(parts, axis=0)

    def pdf(x):
        parts = [w * _weibull_pdf(x, a, b) for w, a, b in spec.components]
        return np.sum(parts, axis=0)

    def pdf_prime(x):
        parts = [w * _weibull_pdf_prime(x, a, b) for w, a, b in spec.components]
        return np.sum(parts, axis=0)

    def quantile(p):
        p = _check_prob(p)
        scalar = p.ndim == 0
        p = np.atleast_1d(p)
        # bracket by the component quantiles, then plain bisection:
        # F_mix(min_i q_i(p)) <= p <= F_mix(max_i q_i(p))
        with np.errstate(divide="ignore"):
            qs = np.stack([b * (-np.log1p(-p)) ** (1.0 / a) for a, b in zip(shapes, scales)])
        lo, hi = qs.min(axis=0), qs.max(axis=0)
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            below = cdf(mid) < p
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
            if np.max(hi - lo) < 1e-14 * max(1.0, float(np.max(hi))):
                break
        out = 0.5 * (lo + hi)
        return float(out[0]) if scalar else out

    def draw(rng, n):
        # per-draw: one uniform picks the component, one inverts its CDF
        u_comp = rng.random(n)
        u_inv = rng.random(n)
        idx = np.searchsorted(cumw, u_comp, side="right").clip(max=len(cumw) - 1)
        return scales[idx] * (-np.log1p(-u_inv)) ** (1.0 / shapes[idx])

    means = scales * sp.gamma(1.0 + 1.0 / shapes)
    second = scales**2 * sp.gamma(1.0 + 2.0 / shapes)
    mean = float(np.sum(weights * means))
    var = float(np.sum(weights * second) - mean**2)

    name = "+".join(f"{w:g}*Weibull({a:g},{b:g})" for w, a, b in spec.components)
    return TrueDistribution(
        name=name,
        support=(0.0, math.inf),
        cdf=cdf,
        pdf=pdf,
        pdf_prime=pdf_prime,
        quantile=quantile,
        mean=mean,
        sd=math.sqrt(var),
        _draw=draw,
        spec={"kind": "weibull_mixture", "components": [list(c) for c in spec.components]},
    )


def make_beta(alpha, beta):
    """Beta(alpha, beta) on [0, 1]."""
    alpha = float(alpha)
    beta = float(beta)
    if alpha <= 0.0 or beta <= 0.0:
        raise ValueError("beta parameters must be positive")
    lognc = sp.betaln(alpha, beta)

    def cdf(x):
        x = np.asarray(x, dtype=float)
        xc = np.clip(x, 0.0, 1.0)
        return sp.betainc(alpha, beta, xc)

    def pdf(x):
        x = np.asarray(x, dtype=float)
        inside = (x > 0.0) & (x < 1.0)
        xs = np.where(inside, x, 0.5)
        vals = np.exp((alpha - 1.0) * np.log(xs) + (beta - 1.0) * np.log1p(-xs) - lognc)
        return np.where(inside, vals, 0.0)

    def pdf_prime(x):
        x = np.asarray(x, dtype=float)
        inside = (x > 0.0) & (x < 1.0)
        xs = np.where(inside, x, 0.5)
        f = np.exp((alpha - 1.0) * np.log(xs) + (beta - 1.0) * np.log1p(-xs) - lognc)
        term = (alpha - 1.0) / xs - (beta - 1.0) / (1.0 - xs)
        return np.where(inside, f * term, 0.0)

    def quantile(p):
        p = _check_prob(p)
        out = sp.betaincinv(alpha, beta, p)
        return float(out) if out.ndim == 0 else out

    def draw(rng, n):
        return sp.betaincinv(alpha, beta, rng.random(n))

    s = alpha + beta
    return TrueDistribution(
        name=f"beta({alpha:g},{beta:g})",
        support=(0.0, 1.0),
        cdf=cdf,
        pdf=pdf,
        pdf_prime=pdf_prime,
        quantile=quantile,
        mean=alpha / s,
        sd=math.sqrt(alpha * beta / (s * s * (s + 1.0))),
        _draw=draw,
        spec={"kind": "beta", "alpha": alpha, "beta": beta},
    )


def sample(dist, seed, n):
    """n i.i.d. draws from ``dist``, sorted ascending.

    Deterministic given (seed, n): the stream is Philox keyed by ``seed``
    and every model consumes a fixed number of uniforms per draw.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF)))
    values = dist._draw(rng, n)
    values.sort()
    return values


def distribution_from_spec(spec):
    """Build a TrueDistribution from its JSON config form.

    Accepted shapes:
        {"kind": "exponential", "rate": 2}
        {"kind": "weibull_mixture", "components": [[0.5, 1, 1], [0.5, 4, 4]]}
        {"kind": "beta", "alpha": 3, "beta": 3}
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("distribution spec must be a dict with a 'kind' key")
    kind = spec["kind"]
    if kind == "exponential":
        return make_exponential(spec["rate"])
    if kind == "weibull_mixture":
        return make_weibull_mixture(spec["components"])
    if kind == "beta":
        return make_beta(spec["alpha"], spec["beta"])
    raise ValueError(f"unknown distribution kind: {kind!r}")


def _check_prob(p):
    p = np.asarray(p, dtype=float)
    if np.any(p < 0.0) or np.any(p > 1.0):
        raise ValueError("probabilities must lie in [0, 1]")
    return p
