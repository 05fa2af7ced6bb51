"""Weight transforms and structural checks.

The characterizations are built from a small set of weight transforms:
the head/tail averaging operators A and A*, the cumulative norm V with
its normalized kernel, fundamental functions of a representation
density, and the densities of the Stieltjes differentials that the
closed forms integrate against.  Everything returns lazy RealFun
objects so the transforms compose (the recipes nest them three deep).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import grids
from .conventions import INF
from .errors import DegenerateOperator, DivergentRepresentation
from .exponents import Exponent, arrow, dual_exponent
from .realfun import (
    DEFAULT_CFG,
    FULL,
    Interval,
    QuadratureConfig,
    RealFun,
    as_fun,
    constant,
    from_log_callable,
    powerof,
    product,
)

__all__ = [
    "op_A", "op_A_star", "big_V", "cal_V", "kernel_A",
    "FundamentalSpec", "fundamental_function",
    "MonotoneReport", "LimitReport",
    "is_quasiconcave", "is_admissible", "is_nondegenerate",
    "stieltjes_density", "stieltjes_tail_density",
    "head_integral_fun", "tail_integral_fun", "running_sup_fun", "suffix_sup_fun",
]

NEG_INF = -math.inf
_BIG = 1e30


def _sanitize(lv: np.ndarray) -> np.ndarray:
    """Clip infinities so np.interp never mixes inf endpoints into NaN."""
    return np.clip(np.nan_to_num(lv, nan=-_BIG, posinf=_BIG, neginf=-_BIG), -_BIG, _BIG)


def _desanitize(lv: np.ndarray) -> np.ndarray:
    out = np.asarray(lv, dtype=float)
    out = np.where(out >= _BIG / 2, INF, out)
    out = np.where(out <= -_BIG / 2, NEG_INF, out)
    return out


def _interp_fun(s: np.ndarray, lv: np.ndarray, label: str) -> RealFun:
    """RealFun interpolating log-values over log-abscissae, flat outside."""
    lv = _sanitize(lv)

    def logf(t):
        st = np.log(np.maximum(np.asarray(t, dtype=float), 1e-300))
        return _desanitize(np.interp(st, s, lv))

    return from_log_callable(logf, label=label)


def head_integral_fun(g: RealFun, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """x -> integral of g over (0, x), as a lazy RealFun.

    Uses the family's closed-form primitive when available; otherwise a
    memoized cumulative trapezoid on the working grid.
    """
    probe = g.primitive_log(np.array([1.0]))
    if probe is not None:
        return from_log_callable(
            lambda t: g.primitive_log(np.asarray(t, dtype=float)),
            label=f"head({g.describe()})")
    s, t = grids.log_nodes(cfg)
    li = g.logv(t) + s
    lv = grids.log_cumtrapz(li, s, log_head=grids.log_head_estimate(li, s))
    return _interp_fun(s, lv, f"head({g.describe()})")


def tail_integral_fun(g: RealFun, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """x -> integral of g over (x, inf), as a lazy RealFun."""
    probe = g.tail_log(np.array([1.0]))
    if probe is not None:
        return from_log_callable(
            lambda t: g.tail_log(np.asarray(t, dtype=float)),
            label=f"tail({g.describe()})")
    s, t = grids.log_nodes(cfg)
    li = g.logv(t) + s
    lv = grids.log_suffix_cumtrapz(li, s, log_tail=grids.log_tail_estimate(li, s))
    return _interp_fun(s, lv, f"tail({g.describe()})")


def running_sup_fun(g: RealFun, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """x -> esssup of g over (0, x), via the memoized grid prefix maxima."""
    s, t = grids.log_nodes(cfg)
    return _interp_fun(s, grids.running_logmax(g.logv(t)), f"runsup({g.describe()})")


def suffix_sup_fun(g: RealFun, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """x -> esssup of g over (x, inf)."""
    s, t = grids.log_nodes(cfg)
    return _interp_fun(s, grids.suffix_logmax(g.logv(t)), f"sufsup({g.describe()})")


def _finite(e) -> float:
    e = e if isinstance(e, Exponent) else Exponent(e)
    if e.is_inf:
        raise ValueError("operator exponents must be finite")
    return float(e)


def op_A(u, q, p, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """A_{q,p}(u)(x) = (int_0^x u^q)^(-1/p) * u(x)^((q-p)/p)."""
    qf, pf = _finite(q), _finite(p)
    uf = as_fun(u)
    P = head_integral_fun(powerof(uf, qf), cfg)
    if P.logv(np.array([math.exp(cfg.S)]))[0] == NEG_INF:
        raise DegenerateOperator("head integral of u^q vanishes on the window")
    return product(powerof(P, -1.0 / pf), powerof(uf, (qf - pf) / pf))


def op_A_star(u, q, p, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """A*_{q,p}(u)(x) = (int_x^inf u^q)^(1/p) * u(x)^((p-q)/p)."""
    qf, pf = _finite(q), _finite(p)
    uf = as_fun(u)
    T = tail_integral_fun(powerof(uf, qf), cfg)
    if np.isposinf(T.logv(np.array([math.exp(cfg.S)]))[0]):
        raise DegenerateOperator("tail integral of u^q diverges on the window")
    return product(powerof(T, 1.0 / pf), powerof(uf, (pf - qf) / pf))


def big_V(v, p, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """V(x) = ||v||_{p',(0,x)}, non-decreasing in x."""
    pd = dual_exponent(p if isinstance(p, Exponent) else Exponent(p))
    vf = as_fun(v)
    if pd.is_inf:
        return running_sup_fun(vf, cfg)
    pdf = float(pd)
    return powerof(head_integral_fun(powerof(vf, pdf), cfg), 1.0 / pdf)


def cal_V(V: RealFun, x, t):
    """V(x) / (V(x) + V(t)), evaluated in log space; in (0, 1)."""
    lx = V.logv(np.asarray(x, dtype=float))
    lt = V.logv(np.asarray(t, dtype=float))
    with np.errstate(invalid="ignore"):
        out = np.exp(lx - np.logaddexp(lx, lt))
    # both arguments in a zero or infinite region: split evenly
    return np.where(np.isnan(out), 0.5, out)


def kernel_A(a: RealFun, x, t):
    """a(x) / (a(x) + a(t)) for a non-decreasing a."""
    return cal_V(as_fun(a), x, t)


@dataclass(frozen=True)
class FundamentalSpec:
    """An admissible-candidate U together with a representation density w."""

    U: RealFun
    w: RealFun


def fundamental_function(spec: FundamentalSpec, t: float,
                         cfg: QuadratureConfig = DEFAULT_CFG) -> float:
    """phi(t) = U(t) * int_0^inf w(tau) / (U(tau) + U(t)) dtau."""
    s, tau = grids.log_nodes(cfg)
    lUt = spec.U.logv(np.array([float(t)]))[0]
    li = spec.w.logv(tau) - np.logaddexp(spec.U.logv(tau), lUt) + s
    tot = grids.log_trapz(li, s)
    tot = np.logaddexp(tot, grids.log_head_estimate(li, s))
    tot = np.logaddexp(tot, grids.log_tail_estimate(li, s))
    if np.isposinf(tot):
        raise DivergentRepresentation(f"representation integral diverges at t = {t:g}")
    lv = lUt + tot
    return 0.0 if lv == NEG_INF else float(np.exp(lv))


@dataclass(frozen=True)
class MonotoneReport:
    ok: bool
    increase_defect: float   # worst factor by which f drops below its past max
    decrease_defect: float   # worst factor by which f/a exceeds its past min


@dataclass(frozen=True)
class LimitReport:
    ok: bool
    statuses: tuple  # per-check "pass" | "fail" | "inconclusive"
    witnesses: tuple  # per-check sampled log-values


def _trend_samples(kmax: int = 40) -> np.ndarray:
    return 2.0 ** np.arange(-kmax, kmax + 1, dtype=float)


def is_quasiconcave(f: RealFun, a, cfg: QuadratureConfig = DEFAULT_CFG,
                    slack: float = 10.0) -> MonotoneReport:
    """Sampled check that f is equivalent to an increasing function while
    f/a is equivalent to a decreasing one, within the given factor."""
    t = _trend_samples()
    lf = _sanitize(f.logv(t))
    la = _sanitize(as_fun(a).logv(t))
    up = float(np.max(np.maximum.accumulate(lf) - lf))
    ld = lf - la
    down = float(np.max(ld - np.minimum.accumulate(ld)))
    tol = math.log(slack)
    return MonotoneReport(ok=(up <= tol and down <= tol),
                          increase_defect=math.exp(min(up, 700.0)),
                          decrease_defect=math.exp(min(down, 700.0)))


def is_admissible(U: RealFun, cfg: QuadratureConfig = DEFAULT_CFG) -> LimitReport:
    """U continuous and strictly increasing with U(0+) = 0, U(inf) = inf."""
    t = _trend_samples()
    lv = U.logv(t)
    strict = bool(np.all(np.diff(lv) > 0)) and bool(np.all(np.isfinite(lv)))
    l1 = float(U.logv(np.array([1.0]))[0])
    zero_at_0 = lv[0] < l1 - math.log(1e6)
    inf_at_inf = lv[-1] > l1 + math.log(1e6)
    statuses = ("pass" if strict else "fail",
                "pass" if zero_at_0 else "fail",
                "pass" if inf_at_inf else "fail")
    return LimitReport(ok=all(s == "pass" for s in statuses),
                       statuses=statuses, witnesses=(tuple(lv[:3]), tuple(lv[-3:])))


def _limit_zero_status(lv: np.ndarray) -> str:
    """Decide whether the sampled log-values tend to -inf (limit 0).

    lv is ordered toward the limit point.  A clean negative slope over
    the last decade of samples is a pass; a clean non-negative one is a
    fail; anything non-monotone is inconclusive.
    """
    lv = _sanitize(np.asarray(lv, dtype=float))
    span = min(10, lv.size - 1)
    steps = np.diff(lv[-(span + 1):])
    slope = float(np.mean(steps))
    if slope <= -0.05:
        return "pass"
    if np.any(steps > 0.25) and np.any(steps < -0.25):
        return "inconclusive"
    return "fail"


def is_nondegenerate(phi, U: RealFun, cfg: QuadratureConfig = DEFAULT_CFG) -> LimitReport:
    """The four vanishing limits of non-degenerate U-quasiconcavity.

    phi may be a RealFun or a scalar callable; limits are estimated by
    extrapolation along t = 2^(+-k), k <= 40.
    """
    if isinstance(phi, RealFun):
        def lphi(t):
            return phi.logv(t)
    else:
        def lphi(t):
            with np.errstate(divide="ignore"):
                return np.log(np.array([float(phi(x)) for x in np.atleast_1d(t)]))
    ks = np.arange(0, 41, dtype=float)
    t_small = 2.0 ** (-ks)
    t_large = 2.0 ** ks
    ls, ll = lphi(t_small), lphi(t_large)
    lUs, lUl = U.logv(t_small), U.logv(t_large)
    checks = (
        ls,          # phi(t) -> 0 as t -> 0+
        -ll,         # 1/phi(t) -> 0 as t -> inf
        ll - lUl,    # phi(t)/U(t) -> 0 as t -> inf
        lUs - ls,    # U(t)/phi(t) -> 0 as t -> 0+
    )
    statuses = tuple(_limit_zero_status(c) for c in checks)
    return LimitReport(ok=all(s == "pass" for s in statuses),
                       statuses=statuses,
                       witnesses=tuple(tuple(_sanitize(c)[-3:]) for c in checks))


def stieltjes_density(u, r, p, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """Density of d(-||u||_{r,(0,t)}^{-(r->p)}).

    Computed by differentiating the head primitive directly:
    ((r->p)/r) * (int_0^t u^r)^(-(r->p)/r - 1) * u(t)^r.
    """
    rf = _finite(r)
    e = arrow(r, p)
    if e.is_inf:
        raise ValueError("requires p < r so that r->p is finite")
    ef = float(e)
    uf = as_fun(u)
    P = head_integral_fun(powerof(uf, rf), cfg)
    if P.logv(np.array([math.exp(cfg.S)]))[0] == NEG_INF:
        raise DegenerateOperator("head integral of u^r vanishes on the window")
    return product(constant(ef / rf), powerof(P, -ef / rf - 1.0), powerof(uf, rf))


def stieltjes_tail_density(w, q, cfg: QuadratureConfig = DEFAULT_CFG) -> RealFun:
    """Density of d(-||w||_{q,(t,inf)}^{q'}) for q < 1.

    Computed as (q'/q) * (int_t^inf w^q)^(q'/q - 1) * w(t)^q.
    """
    qe = q if isinstance(q, Exponent) else Exponent(q)
    qd = dual_exponent(qe)
    if qd.is_inf:
        raise ValueError("requires q != 1 so that q' is finite")
    qf, qdf = float(qe), float(qd)
    wf = as_fun(w)
    T = tail_integral_fun(powerof(wf, qf), cfg)
    if np.isposinf(T.logv(np.array([math.exp(cfg.S)]))[0]):
        raise DegenerateOperator("tail integral of w^q diverges on the window")
    return product(constant(qdf / qf), powerof(T, qdf / qf - 1.0), powerof(wf, qf))
