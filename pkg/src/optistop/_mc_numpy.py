"""Pure-NumPy Monte-Carlo block kernels.

Fallback twin of ``_mc_kernels``: identical function names, signatures,
and counter-based draw indexing, so both backends replay the same uniform
stream for a given seed.  Selected via OPTISTOP_BACKEND=numpy or
automatically when numba is unavailable.
"""

from __future__ import annotations

import math

import numpy as np

from ._normal import norm_ppf_np, v_plus_np

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_TWO = np.uint64(2)
_INV53 = 2.0 ** -53

# Trials are processed in slabs capped at this many draw cells to bound the
# temporary arrays; slab boundaries depend only on n, never on workers.
_MAX_CELLS = 1 << 21


def _unit(seed, ks):
    """Uniform draws in (0,1) for an array of global draw indices."""
    z = seed + (ks + _ONE) * _GOLD
    z = (z ^ (z >> _S30)) * _MIX1
    z = (z ^ (z >> _S27)) * _MIX2
    z = z ^ (z >> _S31)
    return ((z >> _S11) + 0.5) * _INV53


def _draw(seed, ks, fam, p1, p2):
    u = _unit(seed, ks)
    if fam == 0:
        return norm_ppf_np(u)
    if fam == 1:
        return p1 + p2 * norm_ppf_np(u)
    if fam == 2:
        return p1 + (p2 - p1) * u
    return (1.0 - u) ** (-1.0 / p1)


def _slabs(count: int, n: int):
    rows = max(1, _MAX_CELLS // max(1, n))
    for lo in range(0, count, rows):
        yield lo, min(rows, count - lo)


def _finish(values):
    return float(np.sum(values)), float(np.sum(values * values))


def expected_max_block(seed, start, count, n, fam, p1, p2):
    out = np.empty(count)
    for lo, rows in _slabs(count, n):
        trials = np.arange(start + lo, start + lo + rows, dtype=np.uint64)
        ks = trials[:, None] * np.uint64(n) + np.arange(n, dtype=np.uint64)
        out[lo : lo + rows] = _draw(seed, ks, fam, p1, p2).max(axis=1)
    return _finish(out)


def _measured_pairs(seed, trials, n, a, b):
    """X and W = X + error for draw indices 2*(trial*n + i) and its successor."""
    ks = (trials[:, None] * np.uint64(n) + np.arange(n, dtype=np.uint64)) * _TWO
    x = a * norm_ppf_np(_unit(seed, ks))
    w = x + b * norm_ppf_np(_unit(seed, ks + _ONE))
    return x, w


def selection_block(seed, start, count, n, a, b):
    out = np.empty(count)
    for lo, rows in _slabs(count, 2 * n):
        trials = np.arange(start + lo, start + lo + rows, dtype=np.uint64)
        x, w = _measured_pairs(seed, trials, n, a, b)
        pick = np.argmax(w, axis=1)  # first index wins exact ties
        out[lo : lo + rows] = x[np.arange(rows), pick]
    return _finish(out)


def one_more_block(seed, start, count, w0, a, b, shrink):
    trials = np.arange(start, start + count, dtype=np.uint64)
    ks = trials * _TWO
    x = a * norm_ppf_np(_unit(seed, ks))
    w = x + b * norm_ppf_np(_unit(seed, ks + _ONE))
    h = np.where(w > w0, shrink * (w - w0), 0.0)
    return _finish(h)


def policy_planned_block(seed, start, count, n, a, b, mu, c):
    out = np.empty(count)
    total_cost = 0.0 if n == 1 else n * c
    for lo, rows in _slabs(count, 2 * n):
        trials = np.arange(start + lo, start + lo + rows, dtype=np.uint64)
        x, w = _measured_pairs(seed, trials, n, a, b)
        pick = np.argmax(w, axis=1)
        out[lo : lo + rows] = mu + x[np.arange(rows), pick] - total_cost
    return _finish(out)


def policy_lookahead_block(seed, start, count, max_n, a, b, mu, c):
    s_meas = math.sqrt(a * a + b * b)
    a_eta = a * a / s_meas

    trials = np.arange(start, start + count, dtype=np.uint64)
    base = trials * np.uint64(max_n)
    ks = base * _TWO
    best_x = a * norm_ppf_np(_unit(seed, ks))
    best_w = best_x + b * norm_ppf_np(_unit(seed, ks + _ONE))
    taken = np.ones(count, dtype=np.int64)

    active = np.arange(count)
    for step in range(1, max_n):
        keep = a_eta * v_plus_np(best_w[active] / s_meas) > c
        active = active[keep]
        if active.size == 0:
            break
        ks = (base[active] + np.uint64(step)) * _TWO
        x = a * norm_ppf_np(_unit(seed, ks))
        w = x + b * norm_ppf_np(_unit(seed, ks + _ONE))
        taken[active] += 1
        better = w > best_w[active]
        idx = active[better]
        best_w[idx] = w[better]
        best_x[idx] = x[better]

    net = mu + best_x - np.where(taken == 1, 0.0, taken * c)
    return _finish(net)
