"""Worth distributions: the four supported families with pdf, cdf, quantile.

Spread parameters are STANDARD DEVIATIONS throughout the package (a normal
``spread`` of 2 means sigma = 2); the same convention applies to the noisy
measurement model.  All operations are pure; specs are frozen values safe
to share across threads.

JSON forms::

    {"family": "std_normal"}
    {"family": "normal", "mean": 0, "spread": 1}
    {"family": "uniform", "lo": 0, "hi": 1}
    {"family": "pareto", "alpha": 2}
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _normal


class DistributionError(ValueError):
    """Invalid distribution parameters or out-of-domain argument."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DistributionError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class StandardNormal:
    """Unit normal; the reference law for standardized expected maxima."""


@dataclass(frozen=True)
class Normal:
    mean: float
    spread: float  # standard deviation, > 0

    def __post_init__(self):
        object.__setattr__(self, "mean", _require_finite("mean", self.mean))
        object.__setattr__(self, "spread", _require_finite("spread", self.spread))
        if self.spread <= 0:
            raise DistributionError(f"spread must be > 0, got {self.spread}")


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", _require_finite("lo", self.lo))
        object.__setattr__(self, "hi", _require_finite("hi", self.hi))
        if not self.hi > self.lo:
            raise DistributionError(f"need hi > lo, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Pareto:
    """Power-law worth on x > 1 with density alpha * x**(-1-alpha)."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _require_finite("alpha", self.alpha))
        if self.alpha <= 0:
            raise DistributionError(f"alpha must be > 0, got {self.alpha}")


DistributionSpec = StandardNormal | Normal | Uniform | Pareto


def _as_array(x):
    arr = np.asarray(x, dtype=np.float64)
    return arr, arr.ndim == 0


def _ret(arr, scalar):
    return float(arr) if scalar else arr


def pdf(spec: DistributionSpec, x):
    """Density at x; zero outside the support."""
    arr, scalar = _as_array(x)
    if isinstance(spec, StandardNormal):
        out = _normal.norm_pdf_np(arr)
    elif isinstance(spec, Normal):
        out = _normal.norm_pdf_np((arr - spec.mean) / spec.spread) / spec.spread
    elif isinstance(spec, Uniform):
        inside = (arr >= spec.lo) & (arr <= spec.hi)
        out = np.where(inside, 1.0 / (spec.hi - spec.lo), 0.0)
    elif isinstance(spec, Pareto):
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(arr > 1.0, spec.alpha * arr ** (-1.0 - spec.alpha), 0.0)
    else:
        raise TypeError(f"not a distribution spec: {spec!r}")
    return _ret(out, scalar)


def cdf(spec: DistributionSpec, x):
    """Cumulative probability at x, clamped to [0, 1] outside the support."""
    arr, scalar = _as_array(x)
    if isinstance(spec, StandardNormal):
        out = _normal.norm_cdf_np(arr)
    elif isinstance(spec, Normal):
        out = _normal.norm_cdf_np((arr - spec.mean) / spec.spread)
    elif isinstance(spec, Uniform):
        out = np.clip((arr - spec.lo) / (spec.hi - spec.lo), 0.0, 1.0)
    elif isinstance(spec, Pareto):
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(arr > 1.0, 1.0 - arr ** (-spec.alpha), 0.0)
    else:
        raise TypeError(f"not a distribution spec: {spec!r}")
    return _ret(out, scalar)


def quantile(spec: DistributionSpec, u):
    """Inverse cdf for 0 < u < 1.

    Raises DistributionError outside the open interval; the normal branch is
    the high-accuracy inverse shared with the Monte-Carlo sampler.
    """
    arr, scalar = _as_array(u)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DistributionError("quantile argument must lie strictly in (0, 1)")
    if isinstance(spec, StandardNormal):
        out = _normal.norm_ppf_np(arr)
    elif isinstance(spec, Normal):
        out = spec.mean + spec.spread * _normal.norm_ppf_np(arr)
    elif isinstance(spec, Uniform):
        out = spec.lo + (spec.hi - spec.lo) * arr
    elif isinstance(spec, Pareto):
        out = (1.0 - arr) ** (-1.0 / spec.alpha)
    else:
        raise TypeError(f"not a distribution spec: {spec!r}")
    return _ret(out, scalar)


def quantile_upper(spec: DistributionSpec, v):
    """quantile(spec, 1 - v) evaluated without forming 1 - v.

    Quadrature panels hug u = 1 far below float spacing of 1.0, so the upper
    half of the mesh works in the distance-from-one coordinate v.
    """
    arr, scalar = _as_array(v)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise DistributionError("upper-quantile distance must lie strictly in (0, 1)")
    if isinstance(spec, StandardNormal):
        out = -_normal.norm_ppf_np(arr)
    elif isinstance(spec, Normal):
        out = spec.mean - spec.spread * _normal.norm_ppf_np(arr)
    elif isinstance(spec, Uniform):
        out = spec.hi - (spec.hi - spec.lo) * arr
    elif isinstance(spec, Pareto):
        out = arr ** (-1.0 / spec.alpha)
    else:
        raise TypeError(f"not a distribution spec: {spec!r}")
    return _ret(out, scalar)


def mean(spec: DistributionSpec) -> float:
    """Population mean; DistributionError when it does not exist."""
    if isinstance(spec, StandardNormal):
        return 0.0
    if isinstance(spec, Normal):
        return spec.mean
    if isinstance(spec, Uniform):
        return 0.5 * (spec.lo + spec.hi)
    if isinstance(spec, Pareto):
        if spec.alpha <= 1.0:
            raise DistributionError(
                f"Pareto mean is infinite for alpha <= 1 (alpha={spec.alpha})"
            )
        return spec.alpha / (spec.alpha - 1.0)
    raise TypeError(f"not a distribution spec: {spec!r}")


def has_finite_mean(spec: DistributionSpec) -> bool:
    return not (isinstance(spec, Pareto) and spec.alpha <= 1.0)


def support(spec: DistributionSpec) -> tuple[float, float]:
    if isinstance(spec, (StandardNormal, Normal)):
        return (-math.inf, math.inf)
    if isinstance(spec, Uniform):
        return (spec.lo, spec.hi)
    if isinstance(spec, Pareto):
        return (1.0, math.inf)
    raise TypeError(f"not a distribution spec: {spec!r}")


def spec_to_dict(spec: DistributionSpec) -> dict:
    if isinstance(spec, StandardNormal):
        return {"family": "std_normal"}
    if isinstance(spec, Normal):
        return {"family": "normal", "mean": spec.mean, "spread": spec.spread}
    if isinstance(spec, Uniform):
        return {"family": "uniform", "lo": spec.lo, "hi": spec.hi}
    if isinstance(spec, Pareto):
        return {"family": "pareto", "alpha": spec.alpha}
    raise TypeError(f"not a distribution spec: {spec!r}")


def spec_from_dict(data: dict) -> DistributionSpec:
    if not isinstance(data, dict) or "family" not in data:
        raise DistributionError("distribution JSON needs a 'family' key")
    family = data["family"]
    try:
        if family == "std_normal":
            return StandardNormal()
        if family == "normal":
            return Normal(mean=data["mean"], spread=data["spread"])
        if family == "uniform":
            return Uniform(lo=data["lo"], hi=data["hi"])
        if family == "pareto":
            return Pareto(alpha=data["alpha"])
    except KeyError as exc:
        raise DistributionError(f"missing field {exc} for family {family!r}") from None
    except TypeError as exc:
        raise DistributionError(str(exc)) from None
    raise DistributionError(f"unknown distribution family {family!r}")


_PRESETS = {
    "std_normal": StandardNormal(),
    "uniform01": Uniform(0.0, 1.0),
}


def spec_from_text(text: str) -> DistributionSpec:
    """Parse a CLI-style distribution argument: preset name or JSON object."""
    name = text.strip()
    if name in _PRESETS:
        return _PRESETS[name]
    if name.startswith("{"):
        import json

        try:
            return spec_from_dict(json.loads(name))
        except ValueError as exc:
            if isinstance(exc, DistributionError):
                raise
            raise DistributionError(f"bad distribution JSON: {exc}") from None
    raise DistributionError(
        f"unknown distribution {text!r} (presets: {sorted(_PRESETS)}, or a JSON object)"
    )
