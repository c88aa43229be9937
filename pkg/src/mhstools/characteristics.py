"""Method-of-characteristics solver for linear transport equations.

Solves a . grad(psi) = c for psi by integrating the characteristic ODE
dp/dt = a(p) backwards from each target point until it crosses the initial
surface, then carrying the initial datum forward with the constant source.
Integration is fixed-step RK4, batched over all targets; the crossing inside
the bracketing step is located by bisection on the step fraction.  A rerun at
half step supplies a Richardson error estimate per point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import Domain, SampleSet
from .fields import ScalarField, VectorField


@dataclass(frozen=True)
class InitialCurve:
    """Initial data psi = data on the level set surface = 0."""

    surface: ScalarField
    data: ScalarField


@dataclass(frozen=True)
class CharacteristicsProblem:
    advecting: VectorField
    source: float
    initial: InitialCurve
    domain: Domain | None = None


@dataclass(frozen=True)
class CharacteristicResult:
    point: np.ndarray
    value: float
    error_estimate: float
    ok: bool
    message: str = ""


_SURFACE_TOL = 1e-13


def _rk4(f, p: np.ndarray, h) -> np.ndarray:
    """One RK4 step of dp/dt = f(p); h is a scalar or per-row array."""
    if np.ndim(h) == 1:
        h = h[:, None]
    k1 = f(p)
    k2 = f(p + 0.5 * h * k1)
    k3 = f(p + 0.5 * h * k2)
    k4 = f(p + h * k3)
    return p + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _trace(prob: CharacteristicsProblem, pts: np.ndarray, h: float, max_time: float):
    """Flow every point along its characteristic to the initial surface.

    Each target is integrated both backwards and forwards (the surface may
    lie on either side); the first crossing wins.  Returns hit points, the
    signed flow time from the hit point to the target, an ok mask and
    per-point failure messages.
    """
    a = prob.advecting
    surf = prob.initial.surface
    n = pts.shape[0]

    # lanes 0..n-1 flow backwards (dp/dtau = -a), lanes n..2n-1 forwards
    sign = np.concatenate([np.full(n, -1.0), np.full(n, 1.0)])

    def f(p):
        return a.values(p)

    p = np.vstack([pts, pts]).astype(float)
    t = np.zeros(2 * n)
    hit_p = np.zeros_like(p)
    hit_t = np.full(2 * n, np.inf)
    done = np.zeros(2 * n, dtype=bool)
    failed = np.zeros(2 * n, dtype=bool)
    msg = [""] * (2 * n)

    with np.errstate(all="ignore"):
        s = surf.values(p)
        on_surface = np.abs(s) < _SURFACE_TOL
        hit_p[on_surface] = p[on_surface]
        hit_t[on_surface] = 0.0
        done |= on_surface
        failed |= ~np.isfinite(s)

        nmax = int(max_time / h) + 1
        for _ in range(nmax):
            active = ~done & ~failed
            # a lane may stop once its twin has already hit
            twin_done = done[: n] | done[n:]
            active &= ~np.concatenate([twin_done, twin_done])
            if not active.any():
                break
            idx = np.flatnonzero(active)
            pa = p[idx]
            if prob.domain is not None:
                inside = prob.domain.contains(pa)
                out = idx[~inside]
                if out.size:
                    failed[out] = True
                    for i in out:
                        msg[i] = "characteristic left the domain"
                    idx = idx[inside]
                    pa = p[idx]
                    if idx.size == 0:
                        continue
            hrow = sign[idx] * h
            p_new = _rk4(f, pa, hrow)
            s_new = surf.values(p_new)
            bad = ~np.isfinite(p_new).all(axis=1) | ~np.isfinite(s_new)
            if bad.any():
                fb = idx[bad]
                failed[fb] = True
                for i in fb:
                    msg[i] = "evaluation failed along the characteristic"
            crossed = (s[idx] * s_new <= 0.0) & ~bad
            if crossed.any():
                ci = idx[crossed]
                frac = _bisect_fraction(f, surf, p[ci], s[ci], sign[ci] * h)
                hit_p[ci] = _rk4(f, p[ci], sign[ci] * h * frac)
                hit_t[ci] = t[ci] + h * frac
                done[ci] = True
            keep = ~crossed & ~bad
            ki = idx[keep]
            p[ki] = p_new[keep]
            s[ki] = s_new[keep]
            t[ki] += h

    # merge the two directions: earliest crossing wins
    out_p = np.zeros((n, 3))
    out_t = np.zeros(n)
    ok = np.zeros(n, dtype=bool)
    out_msg = [""] * n
    for i in range(n):
        cand = []
        if done[i]:
            cand.append((hit_t[i], hit_p[i], hit_t[i]))  # backward: target ahead of hit
        if done[n + i]:
            cand.append((hit_t[n + i], hit_p[n + i], -hit_t[n + i]))
        if cand:
            cand.sort(key=lambda c: c[0])
            _, out_p[i], out_t[i] = cand[0]
            ok[i] = True
        else:
            out_msg[i] = (
                msg[i]
                or msg[n + i]
                or "step budget exhausted before reaching the initial surface"
            )
    return out_p, out_t, ok, out_msg


def _bisect_fraction(f, surf, p0: np.ndarray, s0: np.ndarray, h: float) -> np.ndarray:
    """Per-row step fraction in (0, 1] at which the surface is crossed."""
    lo = np.zeros(p0.shape[0])
    hi = np.ones(p0.shape[0])
    for _ in range(52):
        mid = 0.5 * (lo + hi)
        sm = surf.values(_rk4(f, p0, h * mid))
        left = s0 * sm > 0.0
        lo[left] = mid[left]
        hi[~left] = mid[~left]
    return 0.5 * (lo + hi)


def solve_characteristics(
    prob: CharacteristicsProblem,
    targets: SampleSet | np.ndarray,
    step: float = 1e-3,
    max_time: float = 50.0,
) -> list[CharacteristicResult]:
    """psi at each target point, with a Richardson error estimate."""
    pts = targets.points if isinstance(targets, SampleSet) else np.asarray(targets, float)
    if pts.ndim == 1:
        pts = pts[None, :]

    hit1, t1, ok1, msg1 = _trace(prob, pts, step, max_time)
    hit2, t2, ok2, msg2 = _trace(prob, pts, step / 2.0, max_time)
    with np.errstate(all="ignore"):
        d1 = prob.initial.data.values(hit1)
        d2 = prob.initial.data.values(hit2)
    v1 = d1 + prob.source * t1
    v2 = d2 + prob.source * t2
    ok = ok1 & ok2 & np.isfinite(v1) & np.isfinite(v2)
    err = np.abs(v1 - v2) / 15.0

    out = []
    for i in range(pts.shape[0]):
        if ok[i]:
            out.append(CharacteristicResult(pts[i].copy(), float(v2[i]), float(err[i]), True))
        else:
            message = msg1[i] or msg2[i] or "initial data evaluation failed"
            out.append(
                CharacteristicResult(pts[i].copy(), float("nan"), float("nan"), False, message)
            )
    return out
