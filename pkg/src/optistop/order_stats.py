"""Order-statistic distributions and expected maxima.

The central quantity is the expected maximum of n i.i.d. draws,

    K(n) = n * Int x * cdf(x)**(n-1) * pdf(x) dx
         = n * Int_0^1 quantile(u) * u**(n-1) du,

evaluated by graded-panel quadrature in the quantile domain (see
``_quadrature``).  The Pareto family gets the exact beta-function value of
the same integral instead, since its algebraic quantile singularity defeats
fixed grading near alpha = 1 and the closed form is both exact and cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import special as _sp

from . import distributions as dist
from ._quadrature import expected_max_quad
from .distributions import DistributionSpec, Pareto

DEFAULT_TOL = 1e-9


class DivergenceError(ValueError):
    """The requested expectation is infinite (Pareto with alpha <= 1)."""


def _check_n(n) -> int:
    if not float(n).is_integer() or n < 1:
        raise ValueError(f"sample size must be an integer >= 1, got {n!r}")
    return int(n)


def _pareto_expected_max(alpha: float, n: int) -> float:
    # n * B(n, 1 - 1/alpha) in log space; exact for any n, requires alpha > 1
    frac = 1.0 / alpha
    return float(
        np.exp(_sp.gammaln(n + 1) + _sp.gammaln(1.0 - frac) - _sp.gammaln(n + 1 - frac))
    )


@lru_cache(maxsize=200_000)
def _expected_max_cached(spec: DistributionSpec, n: int, tol: float) -> float:
    if isinstance(spec, Pareto):
        if spec.alpha <= 1.0:
            raise DivergenceError(
                f"mean of maximum is infinite for Pareto alpha <= 1 (alpha={spec.alpha})"
            )
        return _pareto_expected_max(spec.alpha, n)
    return expected_max_quad(spec, n, tol)


def expected_max(spec: DistributionSpec, n: int, tol: float = DEFAULT_TOL) -> float:
    """Expected value of the largest of n i.i.d. draws from spec."""
    return _expected_max_cached(spec, _check_n(n), float(tol))


def marginal_worth(spec: DistributionSpec, n: int, tol: float = DEFAULT_TOL) -> float:
    """Expected improvement from the n-th sample: K(n) - K(n-1), n >= 2."""
    n = _check_n(n)
    if n < 2:
        raise ValueError("marginal worth is defined for n >= 2")
    return expected_max(spec, n, tol) - expected_max(spec, n - 1, tol)


def order_statistic_cdf(spec: DistributionSpec, n: int, k: int, x):
    """P(k-th smallest of n draws <= x); reduces to cdf(x)**n at k = n."""
    n = _check_n(n)
    if not float(k).is_integer() or not 1 <= k <= n:
        raise ValueError(f"order index must satisfy 1 <= k <= n, got k={k!r}")
    k = int(k)
    p = dist.cdf(spec, x)
    # P(Binomial(n, p) >= k), via the regularized incomplete beta function
    return _sp.betainc(k, n - k + 1, p)


def max_density(spec: DistributionSpec, n: int, x):
    """Density of the sample maximum: n * cdf(x)**(n-1) * pdf(x)."""
    n = _check_n(n)
    return n * dist.cdf(spec, x) ** (n - 1) * dist.pdf(spec, x)


def vdw_approx_max(spec: DistributionSpec, n: int):
    """Quantile-matching approximation of the expected maximum.

    Solves cdf(K) = n/(n+1); exact for the uniform family and increasingly
    good for large n elsewhere.
    """
    n = _check_n(n)
    return dist.quantile(spec, n / (n + 1.0))


def affine_expected_max(
    base: DistributionSpec, scale: float, shift: float, n: int, tol: float = DEFAULT_TOL
) -> float:
    """Expected maximum of shift + scale * X for X distributed as base."""
    if not scale > 0:
        raise ValueError(f"scale must be > 0, got {scale}")
    return shift + scale * expected_max(base, n, tol)


@dataclass(frozen=True)
class RankitTable:
    """Expected maxima K(1..max_n) for one distribution, one quadrature sweep.

    The quadrature mesh depends only on its order, so the sweep reuses a
    single set of quantile evaluations for every n.  ``to_csv`` emits the
    ``n,K_n,k_n`` table (marginal blank at n = 1).
    """

    spec: DistributionSpec
    max_n: int
    values: tuple[float, ...]
    tolerance: float

    @classmethod
    def compute(
        cls, spec: DistributionSpec, max_n: int, tol: float = DEFAULT_TOL
    ) -> "RankitTable":
        max_n = _check_n(max_n)
        values = tuple(expected_max(spec, n, tol) for n in range(1, max_n + 1))
        if np.any(np.diff(values) <= 0):
            raise RuntimeError(
                f"expected maxima must increase strictly in n; got a violation for {spec!r}"
            )
        return cls(spec=spec, max_n=max_n, values=values, tolerance=float(tol))

    def expected_max(self, n: int) -> float:
        if not 1 <= n <= self.max_n:
            raise ValueError(f"n={n} outside table range 1..{self.max_n}")
        return self.values[n - 1]

    def marginal(self, n: int) -> float:
        if not 2 <= n <= self.max_n:
            raise ValueError(f"marginals cover 2..{self.max_n}, got n={n}")
        return self.values[n - 1] - self.values[n - 2]

    def rows(self) -> list[tuple[int, float, float | None]]:
        out = []
        for i, k_n in enumerate(self.values):
            n = i + 1
            out.append((n, k_n, None if n == 1 else k_n - self.values[i - 1]))
        return out

    def to_csv(self) -> str:
        lines = ["n,K_n,k_n"]
        for n, total, marginal in self.rows():
            tail = "" if marginal is None else format(marginal, ".12g")
            lines.append(f"{n},{format(total, '.12g')},{tail}")
        return "\n".join(lines) + "\n"
