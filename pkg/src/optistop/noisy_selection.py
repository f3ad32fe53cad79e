"""Selection under measurement error.

Worth is normal with mean ``worth_mean`` and standard deviation
``worth_spread``; each measurement adds independent zero-mean normal error
with standard deviation ``error_spread``.  (Both spreads are STANDARD
DEVIATIONS, not variances.)  Internally everything runs in return
coordinates, i.e. worth minus its mean; user-facing results add the mean
back.

With measured value w, the expected true return is shrunk to
(a^2/(a^2+b^2)) * w, and picking the item that *measures* largest out of n
earns the ideal expected gain times the degradation factor
a / sqrt(a^2 + b^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import order_stats
from ._normal import norm_pdf_np
from .distributions import StandardNormal


class DegenerateModelError(ValueError):
    """Raised where a zero error spread collapses a density to a point mass."""


@dataclass(frozen=True)
class NoisyModel:
    worth_mean: float = 0.0
    worth_spread: float = 1.0
    error_spread: float = 0.0

    def __post_init__(self):
        for name in ("worth_mean", "worth_spread", "error_spread"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.worth_spread <= 0:
            raise ValueError(f"worth_spread must be > 0, got {self.worth_spread}")
        if self.error_spread < 0:
            raise ValueError(f"error_spread must be >= 0, got {self.error_spread}")

    @property
    def measured_spread(self) -> float:
        """Standard deviation of measured values: sqrt(a^2 + b^2)."""
        return math.hypot(self.worth_spread, self.error_spread)

    @property
    def degradation(self) -> float:
        """Fraction of the ideal selection gain that survives the noise."""
        return self.worth_spread / self.measured_spread

    @property
    def posterior_spread(self) -> float:
        """Spread of true return given a measurement: ab / sqrt(a^2 + b^2)."""
        return self.worth_spread * self.error_spread / self.measured_spread

    @property
    def shrinkage(self) -> float:
        """Posterior-mean multiplier on a measured value: a^2 / (a^2 + b^2)."""
        a2 = self.worth_spread * self.worth_spread
        return a2 / (a2 + self.error_spread * self.error_spread)

    def to_dict(self) -> dict:
        return {"mu": self.worth_mean, "a": self.worth_spread, "b": self.error_spread}

    @classmethod
    def from_dict(cls, data: dict) -> "NoisyModel":
        try:
            return cls(
                worth_mean=data["mu"], worth_spread=data["a"], error_spread=data["b"]
            )
        except KeyError as exc:
            raise ValueError(f"noisy model JSON is missing field {exc}") from None


def degradation_factor(model: NoisyModel) -> float:
    """a / sqrt(a^2 + b^2): 1 for perfect measurement, ~a/b for b >> a."""
    return model.degradation


def posterior_mean_return(model: NoisyModel, w: float) -> float:
    """Expected true return given measured return w (both mean-centered)."""
    return model.shrinkage * w


def measured_density(model: NoisyModel, w):
    """Density of measured returns: normal with spread sqrt(a^2 + b^2)."""
    s = model.measured_spread
    return norm_pdf_np(w / s) / s


def conditional_return_density(model: NoisyModel, x, w):
    """Density of the true return at x, given measured return w.

    Normal with mean shrinkage * w and the posterior spread; undefined as a
    density when the error spread is zero (the conditional is a point mass;
    use posterior_mean_return instead).
    """
    if model.error_spread == 0:
        raise DegenerateModelError(
            "conditional return density degenerates to a point mass at b = 0"
        )
    sigma = model.posterior_spread
    return norm_pdf_np((x - model.shrinkage * w) / sigma) / sigma


def expected_selected_worth(model: NoisyModel, n: int, tol: float = order_stats.DEFAULT_TOL) -> float:
    """Expected true worth of the item measuring largest among n."""
    if not float(n).is_integer() or n < 1:
        raise ValueError(f"sample size must be an integer >= 1, got {n!r}")
    if n == 1:
        return model.worth_mean
    kappa = order_stats.expected_max(StandardNormal(), int(n), tol)
    return model.worth_mean + model.degradation * model.worth_spread * kappa
