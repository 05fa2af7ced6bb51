"""Log-domain grid machinery.

Everything on (0, inf) is handled through the substitution t = e^s.  All
accumulation happens on log-values, so products of rapidly growing and
decaying factors (t^a * e^{b t} and friends) never overflow before they
cancel.  Integrals outside the working window [e^-S, e^S] are estimated
by fitting a local power law at the window edges.
"""

from __future__ import annotations

import math

import numpy as np

NEG_INF = -math.inf
LOG10 = math.log(10.0)

# Slopes within this margin of the critical exponent 0 are treated as
# divergent: a borderline tail cannot be resolved numerically anyway.
_SLOPE_TOL = 1e-9


def log_nodes(cfg, lo: float = 0.0, hi: float = math.inf):
    """Log-spaced nodes covering (lo, hi) clipped to the working window.

    Returns (s, t) with t = exp(s).  Density is cfg.sup_grid points per
    decade, at least 16 nodes total.
    """
    slo = max(math.log(lo), -cfg.S) if lo > 0 else -cfg.S
    shi = min(math.log(hi), cfg.S) if hi != math.inf else cfg.S
    if slo >= shi:
        shi = slo + 1e-6
    n = max(16, int(round((shi - slo) / LOG10 * cfg.sup_grid)) + 1)
    s = np.linspace(slo, shi, n)
    return s, np.exp(s)


def _panel_logmass(li: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Log of trapezoid panel masses of exp(li) over s, along the last axis."""
    ds = np.diff(s)
    with np.errstate(invalid="ignore"):
        return np.logaddexp(li[..., :-1], li[..., 1:]) + np.log(ds / 2.0)


def log_trapz(li: np.ndarray, s: np.ndarray) -> np.ndarray:
    """log of the trapezoid integral of exp(li) ds along the last axis."""
    lm = _panel_logmass(li, s)
    with np.errstate(invalid="ignore"):
        out = _logsumexp_last(lm)
    return out


def _logsumexp_last(lm: np.ndarray) -> np.ndarray:
    m = np.max(lm, axis=-1)
    safe_m = np.where(np.isfinite(m), m, 0.0)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        acc = np.log(np.sum(np.exp(lm - safe_m[..., None]), axis=-1)) + safe_m
    out = np.where(np.isfinite(m), acc, m)  # all -inf -> -inf, any +inf -> +inf
    return out


def log_cumtrapz(li: np.ndarray, s: np.ndarray, log_head: float = NEG_INF) -> np.ndarray:
    """Log of head + cumulative trapezoid integral of exp(li) ds at each node."""
    lm = _panel_logmass(li, s)
    out = np.empty_like(li)
    out[..., 0] = log_head
    if np.isposinf(log_head):
        out[...] = math.inf
        return out
    np.logaddexp.accumulate(np.concatenate([[log_head], lm]), out=out)
    return out


def log_suffix_cumtrapz(li: np.ndarray, s: np.ndarray, log_tail: float = NEG_INF) -> np.ndarray:
    """Log of (integral from each node to the right end) + tail."""
    rev = log_cumtrapz(li[::-1], -s[::-1], log_head=log_tail)
    return rev[::-1]


def _edge_slope(li: np.ndarray, s: np.ndarray, left: bool) -> tuple[float, float, float]:
    """Local power-law fit at a window edge.

    Returns (slope, log_value_at_edge, s_edge); slope is d(log g)/d(log t).
    If no usable finite samples exist near the edge, log_value is -inf.
    """
    idx = np.arange(li.shape[-1])
    finite = np.isfinite(li)
    if not finite.any():
        return 0.0, NEG_INF, s[0] if left else s[-1]
    if left:
        i0 = idx[finite][0]
        if i0 != 0:
            return 0.0, NEG_INF, s[0]
        span = min(li.shape[-1] - 1, max(4, int(round((s.shape[0] - 1) * LOG10 / (s[-1] - s[0])))))
        i1 = i0 + span
        if not np.isfinite(li[i1]):
            return 0.0, NEG_INF, s[0]
        slope = (li[i1] - li[i0]) / (s[i1] - s[i0])
        return slope, li[i0], s[i0]
    i0 = idx[finite][-1]
    if i0 != li.shape[-1] - 1:
        return 0.0, NEG_INF, s[-1]
    span = min(li.shape[-1] - 1, max(4, int(round((s.shape[0] - 1) * LOG10 / (s[-1] - s[0])))))
    i1 = i0 - span
    if not np.isfinite(li[i1]):
        return 0.0, NEG_INF, s[-1]
    slope = (li[i0] - li[i1]) / (s[i0] - s[i1])
    return slope, li[i0], s[i0]


def log_head_estimate(li: np.ndarray, s: np.ndarray) -> float:
    """Log of the integral of exp(li) ds over (-inf, s_0), power-law fit.

    li is the log of the ds-integrand (Jacobian included), so the head
    converges exactly when its s-slope at the left edge is positive:
    integral = exp(lv) / slope.  +inf when the fit says divergent.
    """
    slope, lv, _ = _edge_slope(li, s, left=True)
    if lv == NEG_INF:
        return NEG_INF
    if np.isposinf(lv):
        return math.inf
    if slope <= _SLOPE_TOL:
        return math.inf
    return lv - math.log(slope)


def log_tail_estimate(li: np.ndarray, s: np.ndarray) -> float:
    """Log of the integral of exp(li) ds over (s_end, inf), power-law fit.

    Converges exactly when the s-slope at the right edge is negative:
    integral = exp(lv) / (-slope).  +inf when the fit says divergent.
    """
    slope, lv, _ = _edge_slope(li, s, left=False)
    if lv == NEG_INF:
        return NEG_INF
    if np.isposinf(lv):
        return math.inf
    if slope >= -_SLOPE_TOL:
        return math.inf
    return lv - math.log(-slope)


def running_logmax(li: np.ndarray) -> np.ndarray:
    """Prefix maxima along the last axis."""
    return np.maximum.accumulate(li, axis=-1)


def suffix_logmax(li: np.ndarray) -> np.ndarray:
    """Suffix maxima along the last axis."""
    return np.maximum.accumulate(li[..., ::-1], axis=-1)[..., ::-1]
