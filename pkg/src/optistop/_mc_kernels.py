"""Numba-compiled Monte-Carlo block kernels.

Importable only when numba is present; ``mc_oracle`` picks between this
module and ``_mc_numpy`` (same function names, same signatures, same
counter-based draw indexing) based on the active backend.

Randomness is a stateless splitmix64 hash of (seed, global draw index), so
any partition of trials into blocks and threads replays the identical
stream.  Normals come from the shared high-accuracy inverse cdf.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from ._normal import norm_ppf, v_plus_scalar

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_HALF_ULP53 = 0.5
_INV53 = 2.0 ** -53


@njit(cache=True, nogil=True)
def _unit(seed, k):
    """Uniform draw in the open interval (0,1) for global draw index k."""
    z = seed + (k + _ONE) * _GOLD
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return ((z >> _S11) + _HALF_ULP53) * _INV53


@njit(cache=True, nogil=True)
def _draw(seed, k, fam, p1, p2):
    """Inverse-cdf draw for family code fam (0 std normal, 1 normal(p1,p2),
    2 uniform(p1,p2), 3 pareto(p1))."""
    u = _unit(seed, k)
    if fam == 0:
        return norm_ppf(u)
    elif fam == 1:
        return p1 + p2 * norm_ppf(u)
    elif fam == 2:
        return p1 + (p2 - p1) * u
    return (1.0 - u) ** (-1.0 / p1)


@njit(cache=True, nogil=True)
def expected_max_block(seed, start, count, n, fam, p1, p2):
    s = 0.0
    s2 = 0.0
    for t in range(count):
        base = np.uint64(start + t) * np.uint64(n)
        m = _draw(seed, base, fam, p1, p2)
        for i in range(1, n):
            x = _draw(seed, base + np.uint64(i), fam, p1, p2)
            if x > m:
                m = x
        s += m
        s2 += m * m
    return s, s2


@njit(cache=True, nogil=True)
def selection_block(seed, start, count, n, a, b):
    """True return of the item measuring largest; ties keep the first index."""
    s = 0.0
    s2 = 0.0
    for t in range(count):
        base = np.uint64(start + t) * np.uint64(n)
        best_w = -math.inf
        best_x = 0.0
        for i in range(n):
            k = (base + np.uint64(i)) * _TWO
            x = a * norm_ppf(_unit(seed, k))
            w = x + b * norm_ppf(_unit(seed, k + _ONE))
            if w > best_w:
                best_w = w
                best_x = x
        s += best_x
        s2 += best_x * best_x
    return s, s2


@njit(cache=True, nogil=True)
def one_more_block(seed, start, count, w0, a, b, shrink):
    """Improvement h(W) from a single extra draw against best-so-far w0."""
    s = 0.0
    s2 = 0.0
    for t in range(count):
        k = np.uint64(start + t) * _TWO
        x = a * norm_ppf(_unit(seed, k))
        w = x + b * norm_ppf(_unit(seed, k + _ONE))
        h = shrink * (w - w0) if w > w0 else 0.0
        s += h
        s2 += h * h
    return s, s2


@njit(cache=True, nogil=True)
def policy_planned_block(seed, start, count, n, a, b, mu, c):
    s = 0.0
    s2 = 0.0
    total_cost = 0.0 if n == 1 else n * c
    for t in range(count):
        base = np.uint64(start + t) * np.uint64(n)
        best_w = -math.inf
        best_x = 0.0
        for i in range(n):
            k = (base + np.uint64(i)) * _TWO
            x = a * norm_ppf(_unit(seed, k))
            w = x + b * norm_ppf(_unit(seed, k + _ONE))
            if w > best_w:
                best_w = w
                best_x = x
        net = mu + best_x - total_cost
        s += net
        s2 += net * net
    return s, s2


@njit(cache=True, nogil=True)
def policy_lookahead_block(seed, start, count, max_n, a, b, mu, c):
    """Sample while the one-more value beats the per-item cost (myopic rule)."""
    s = 0.0
    s2 = 0.0
    s_meas = math.sqrt(a * a + b * b)
    a_eta = a * a / s_meas
    for t in range(count):
        base = np.uint64(start + t) * np.uint64(max_n)
        k = base * _TWO
        best_x = a * norm_ppf(_unit(seed, k))
        best_w = best_x + b * norm_ppf(_unit(seed, k + _ONE))
        taken = 1
        for step in range(1, max_n):
            if a_eta * v_plus_scalar(best_w / s_meas) <= c:
                break
            k = (base + np.uint64(step)) * _TWO
            x = a * norm_ppf(_unit(seed, k))
            w = x + b * norm_ppf(_unit(seed, k + _ONE))
            taken += 1
            if w > best_w:
                best_w = w
                best_x = x
        net = mu + best_x - (0.0 if taken == 1 else taken * c)
        s += net
        s2 += net * net
    return s, s2
