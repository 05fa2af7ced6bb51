"""Brute-force lower bounds for multiplier and embedding norms.

The multiplier quasi-norm is a supremum of ||f*g||_Y / ||g||_X over
nontrivial test functions g.  Sampling the ratio over a structured
candidate family gives a certified-up-to-quadrature lower bound for any
closed form to be checked against.  Candidates mimic the extremal
shapes the characterizations are built from: head, tail and band
indicators, power bumps, and piecewise-constant profiles on dyadic
breakpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import EmptyFamily
from .realfun import (
    DEFAULT_CFG,
    QuadratureConfig,
    RealFun,
    constant,
    expfam,
    funsum,
    indicator,
    power,
    product,
)
from .spaces import SpaceSpec, space_norm, space_norm3

__all__ = ["Candidate", "CandidateFamily", "OracleResult",
           "default_family", "brute_force_multiplier", "enrich"]


@dataclass(frozen=True)
class Candidate:
    """One test function, rebuildable from (kind, params).

    kinds: head (0,t); tail (t,inf); band (s,t); bump t^gamma on (s,t);
    step = piecewise-constant levels on dyadic breakpoints.
    """

    kind: str
    params: tuple

    def build(self) -> RealFun:
        if self.kind == "head":
            (t,) = self.params
            return indicator(0.0, t)
        if self.kind == "tail":
            (t,) = self.params
            return indicator(t, math.inf)
        if self.kind == "band":
            lo, hi = self.params
            return indicator(lo, hi)
        if self.kind == "bump":
            lo, hi, gamma = self.params
            return product(power(1.0, gamma), indicator(lo, hi))
        if self.kind == "step":
            edges, levels = self.params
            parts = [product(constant(c), indicator(a, b))
                     for a, b, c in zip(edges[:-1], edges[1:], levels) if c > 0.0]
            if not parts:
                return constant(1.0)
            return funsum(*parts)
        if self.kind == "decay":
            gamma, rate = self.params
            return expfam(1.0, gamma, rate)
        raise ValueError(f"unknown candidate kind {self.kind!r}")

    def describe(self) -> str:
        return f"{self.kind}{self.params}"


@dataclass(frozen=True)
class CandidateFamily:
    candidates: tuple
    seed: int

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class OracleResult:
    lower_bound: float
    argmax: Candidate | None
    evaluated: int
    skipped: int


def _lattice(rng, n, lo=-4.0, hi=4.0):
    return np.sort(10.0 ** rng.uniform(lo, hi, size=n))


def default_family(seed: int = 0, size: int = 60) -> CandidateFamily:
    """Seeded mix of indicator, bump, step and decay candidates."""
    rng = np.random.default_rng(seed)
    cands = []
    # deterministic log lattice first so small families stay spread out
    for t in (1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3):
        cands.append(Candidate("head", (t,)))
        cands.append(Candidate("tail", (t,)))
    while len(cands) < size:
        kind = rng.choice(["head", "tail", "band", "bump", "step", "decay"])
        if kind == "head" or kind == "tail":
            cands.append(Candidate(kind, (float(10.0 ** rng.uniform(-4, 4)),)))
        elif kind == "band":
            lo = float(10.0 ** rng.uniform(-4, 3))
            cands.append(Candidate(kind, (lo, lo * float(10.0 ** rng.uniform(0.1, 2.0)))))
        elif kind == "bump":
            lo = float(10.0 ** rng.uniform(-4, 3))
            hi = lo * float(10.0 ** rng.uniform(0.1, 2.0))
            cands.append(Candidate(kind, (lo, hi, float(rng.uniform(-2.0, 2.0)))))
        elif kind == "decay":
            cands.append(Candidate(kind, (float(rng.uniform(-1.0, 4.0)),
                                          -float(10.0 ** rng.uniform(-1.5, 0.5)))))
        else:
            k0 = int(rng.integers(-12, 4))
            nlev = int(rng.integers(2, 7))
            edges = tuple(2.0 ** (k0 + 2 * np.arange(nlev + 1, dtype=float)))
            levels = tuple(float(10.0 ** rng.uniform(-2, 2)) for _ in range(nlev))
            cands.append(Candidate("step", (edges, levels)))
    return CandidateFamily(candidates=tuple(cands[:max(size, len(cands))]), seed=seed)


def _norm(spec: SpaceSpec, g: RealFun, cfg: QuadratureConfig) -> float:
    fn = space_norm if spec.arity == 2 else space_norm3
    return fn(spec, g, cfg)


def brute_force_multiplier(f: RealFun, X: SpaceSpec, Y: SpaceSpec,
                           fam: CandidateFamily,
                           cfg: QuadratureConfig = DEFAULT_CFG) -> OracleResult:
    """Max of ||f*g||_Y / ||g||_X over the family.

    Candidates whose source norm is zero or infinite are skipped: they
    carry no information about the supremum.  The result is a lower
    bound of the true multiplier norm up to quadrature error.
    """
    best, best_cand = -1.0, None
    evaluated = skipped = 0
    for cand in fam.candidates:
        g = cand.build()
        den = _norm(X, g, cfg)
        if not (0.0 < den < math.inf):
            skipped += 1
            continue
        num = _norm(Y, product(f, g), cfg)
        evaluated += 1
        ratio = num / den
        if ratio > best:
            best, best_cand = ratio, cand
    if evaluated == 0:
        raise EmptyFamily("no candidate has a nontrivial source norm")
    return OracleResult(lower_bound=best, argmax=best_cand,
                        evaluated=evaluated, skipped=skipped)


def _perturb(cand: Candidate, rng) -> Candidate:
    jit = lambda x: float(x * 2.0 ** rng.uniform(-1.0, 1.0))
    if cand.kind in ("head", "tail"):
        return Candidate(cand.kind, (jit(cand.params[0]),))
    if cand.kind == "band":
        lo, hi = cand.params
        lo2 = jit(lo)
        return Candidate("band", (lo2, max(jit(hi), lo2 * 1.05)))
    if cand.kind == "bump":
        lo, hi, gamma = cand.params
        lo2 = jit(lo)
        return Candidate("bump", (lo2, max(jit(hi), lo2 * 1.05),
                                  float(gamma + rng.uniform(-0.5, 0.5))))
    if cand.kind == "decay":
        gamma, rate = cand.params
        return Candidate("decay", (float(gamma + rng.uniform(-0.5, 0.5)), jit(rate)))
    edges, levels = cand.params
    new_levels = tuple(jit(c) for c in levels)
    return Candidate("step", (tuple(jit(e) for e in edges) if rng.random() < 0.5
                              else edges, new_levels))


def enrich(fam: CandidateFamily, f: RealFun, X: SpaceSpec, Y: SpaceSpec,
           rounds: int = 1, per_round: int = 10,
           cfg: QuadratureConfig = DEFAULT_CFG) -> CandidateFamily:
    """Local search around the current argmax.

    Each round evaluates the family, perturbs the best candidate and
    appends the variants.  The output family is a superset of the
    input, so the brute-force value never decreases.
    """
    for k in range(rounds):
        rng = np.random.default_rng((fam.seed, k))
        res = brute_force_multiplier(f, X, Y, fam, cfg)
        extra = tuple(_perturb(res.argmax, rng) for _ in range(per_round))
        fam = replace(fam, candidates=fam.candidates + extra)
    return fam
