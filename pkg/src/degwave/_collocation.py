"""Damped-Newton collocation for the travelling-wave boundary-value problem.

Discretization on a uniform grid over [-L, L] containing x = 0:

- u-equation rows: centered second-order differences of
  u'' + c u' - u + w - gamma k u (1-w) = 0, with Robin closures
  u'(-L) = -mu (1-u) and u'(+L) = lambda_R u (one-sided second order).
- w-equation rows (eps = 0): the first-order equation c w' = -k u (1-w)
  is equivalent to d/dx log(1-w) = (k/c) u, so adjacent nodes satisfy
  (1-w_i) = (1-w_{i+1}) exp(-(k/c)(h/2)(u_i + u_{i+1})) exactly up to
  trapezoid error in the exponent.  These chain rows keep w inside (0, 1],
  monotone, and free of grid-scale oscillation even when k/c is large and
  1-w underflows behind the front.  The absolute level is pinned at the
  last node by a Robin row w'(+L) = lambda_R w; when that system stalls
  (on long slowly-decaying grids its soft tail mode lets line searches
  thrash), the solve retries with the algebraic tail balance
  w = k/(c |lambda_R|) u as the closure, which is exact there to relative
  O(u_edge) and suppresses the stall at a small cost in the pointwise
  w-residual of the returned profile.
- w-equation rows (eps > 0): centered differences of
  eps w'' + c w' + eps (u - w) + k u (1-w) = 0 with Robin closures at the
  rates of the linearized system (left: the positive root of
  eps m^2 + c m - (k+eps) = 0, which tends to k/c as eps -> 0; right: the
  slow negative root of the quartic obtained by eliminating the coupled
  linearization at the leading edge).

Translation invariance makes the plain Jacobian numerically singular (the
boundary rows break it only at the e^{-mu L} level), so Newton runs on a
bordered system: unknowns (U, tau), equations F(U) + tau T(U) = 0 plus the
phase row u(0) = 1/2, where T is the discrete translation tangent of the
current iterate.  The product-form w rows and the differenced u rows carry
different O(h^2) truncation errors, so they disagree at O(h^2 k) about the
sub-grid offset of the front: the bordered iteration then converges to
F = -tau T with a small nonzero tau instead of to F = 0.  That tangential
component is pure translation gauge, and convergence is judged on the
residual orthogonal to T (plus the linear phase row, which any full step
satisfies to roundoff).

lambda_R is lambda_infinity(k) when c = c_infinity (the selected decay,
fast root for k > k0) and the slow negative cubic root otherwise.  The
domain [-L_left, L_right] is asymmetric: L_left = max(40, 12/mu) resolves
the approach to (1, 1), while the right end stops where the initial guess
falls to about 1e-13 (growing if the solved tail turns out fatter): deep
enough for the decay-rate fit band, and past it the tail is an exact
exponential anyway.

Initial guesses: resampled shooting output at c = c_infinity, and for
other speeds a direct Newton solve seeded by the minimal-speed wave, with
recursive bisection in c on failure so every retry starts from the
nearest wave already computed.  Just above c_infinity the slow-decay tail
amplitude grows from zero and the Jacobian is soft along that mode, so
Newton there needs both a close seed and a few non-monotone steps.  For
k above about 100 no cold start lands in Newton's basin (the reaction
layer thins like 1/nu), so the solver walks a geometric ladder in k,
reseeding each rung with the previous wave.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import partial

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.sparse import csc_matrix
from scipy.sparse.linalg import splu

from .dispersion import (
    ModelParams,
    RootClass,
    c_infinity,
    dispersion_roots,
    lambda_infinity,
    minimal_speed,
    mu_nu,
)
from .errors import InternalConsistencyError, InvalidSpeed, NoConvergence
from .profiles import Method, ShootingConfig, WaveProfile, shoot_reduced_wave

__all__ = ["BvpConfig", "solve_tw_bvp", "solve_tw_bvp_eps"]

_CINF_MATCH_RTOL = 1e-9
# above this k, reach the target by continuation in k from this anchor:
# the reaction layer is too thin for any cold seed to land in Newton's basin
_K_LADDER_START = 100.0
_EXP_ARG_CAP = 50.0  # keeps chain factors finite for wandering Newton iterates
# drop grid nodes past the point where the initial guess falls below this:
# near c_infinity the slow-tail amplitude is O(c - c_infinity), so a cutoff
# by rate alone can land the grid end anywhere (see module docstring)
_EDGE_FLOOR = 1e-13
# a solved edge value above this means the truncation guess cut the true
# tail short (profiles tolerate a right edge up to 1e-4); the solve then
# repeats on a grid extended from the solved wave
_EDGE_EXTEND_TRIGGER = 1e-5
_MAX_BISECT_DEPTH = 7


@dataclass(frozen=True)
class BvpConfig:
    """Controls for the collocation solves.

    L and h default to resolution-based choices (see module docstring); a
    seed profile, when given, replaces the shooting/continuation start.
    """

    L: float | None = None
    h: float | None = None
    newton_tol: float = 1e-10
    max_iter: int = 40
    seed: WaveProfile | None = None


def _lambda_right(c: float, params: ModelParams) -> float:
    """Decay rate imposed at +L: the selected root at c_infinity, slow root above."""
    ci = c_infinity(params.gamma)
    if abs(c - ci) <= _CINF_MATCH_RTOL * ci:
        return lambda_infinity(params)
    roots = dispersion_roots(c, params)
    if roots.discriminant_class is RootClass.COMPLEX_PAIR:
        raise InvalidSpeed(
            f"no real decay rate at c={c}: negative roots form a complex pair"
        )
    return float(roots.lambda_slow.real)


def _grid(L_left: float, L_right: float, h: float) -> tuple[np.ndarray, int]:
    i0 = int(math.ceil(L_left / h))
    n_right = int(math.ceil(L_right / h))
    x = (np.arange(i0 + n_right + 1) - i0) * h
    return x, i0


def _auto_L(lam_r: float, mu: float) -> tuple[float, float]:
    # the right cap allows ~34 e-foldings from amplitude one; the grid that
    # is actually used ends where the seed hits _EDGE_FLOOR (deep enough for
    # every decay diagnostic, shallow enough that the w-chain factors stay
    # resolvable), growing toward the cap if the solved tail comes out fatter
    return max(40.0, 12.0 / mu), 34.0 / abs(lam_r)


def _auto_h(c: float, params: ModelParams, lam_r: float, nu: float) -> float:
    # resolve every exponential scale, and keep the trapezoid exponent step
    # of the w-chain small where u ~ 1; eps > 0 adds the c/eps layer rate
    h = min(1e-3, 0.25 * c / params.k, 0.05 / abs(lam_r), 0.05 / nu)
    if params.eps > 0.0:
        h = min(h, 0.05 * params.eps / c)
    return h


def _chain_w(x: np.ndarray, u: np.ndarray, c: float, params: ModelParams, w_end: float) -> np.ndarray:
    """Exact-integrator solution of c w' = -k u (1-w) given u, anchored at +L."""
    h = x[1] - x[0]
    steps = (params.k / c) * (h / 2.0) * (u[:-1] + u[1:])
    # log(1-w) decreases leftward; accumulate in log space to underflow cleanly
    log_tail = np.concatenate(([0.0], np.cumsum(steps[::-1])))[::-1]
    with np.errstate(under="ignore"):
        one_minus_w = (1.0 - w_end) * np.exp(-np.minimum(log_tail, 745.0))
    one_minus_w[log_tail >= 745.0] = 0.0
    return 1.0 - one_minus_w


def _gs_u_solve(
    x: np.ndarray,
    w: np.ndarray,
    c: float,
    params: ModelParams,
    mu: float,
    lam_r: float,
) -> np.ndarray:
    """Exact solve of the u rows given w; they are linear in u."""
    n = len(x)
    h = x[1] - x[0]
    g, k = params.gamma, params.k
    rows = np.concatenate([
        [0, 0, 0],
        np.arange(1, n - 1), np.arange(1, n - 1), np.arange(1, n - 1),
        [n - 1] * 3,
    ])
    cols = np.concatenate([
        [0, 1, 2],
        np.arange(0, n - 2), np.arange(1, n - 1), np.arange(2, n),
        [n - 1, n - 2, n - 3],
    ])
    vals = np.concatenate([
        [-1.5 / h - mu, 2.0 / h, -0.5 / h],
        np.full(n - 2, 1.0 / h**2 - c / (2.0 * h)),
        -2.0 / h**2 - 1.0 - g * k * (1.0 - w[1:-1]),
        np.full(n - 2, 1.0 / h**2 + c / (2.0 * h)),
        [1.5 / h - lam_r, -2.0 / h, 0.5 / h],
    ])
    rhs = np.concatenate([[-mu], -w[1:-1], [0.0]])
    A = csc_matrix((vals, (rows, cols)), shape=(n, n))
    return splu(A).solve(rhs)


def _polish(
    x: np.ndarray,
    i0: int,
    u: np.ndarray,
    w: np.ndarray,
    c: float,
    params: ModelParams,
    mu: float,
    lam_r: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Drive the Newton iterate to an exact discrete root, then re-pin the phase.

    On the phase slice the differenced u rows and the product-form w chain
    disagree at O(h^2 k) about the sub-grid offset of the front, so the
    bordered iteration stops with a small residual along the translation
    tangent.  An exact root of the discrete system (chain closed by the
    tail balance) exists within a sub-grid translation: alternating the
    exact triangular chain solve for w given u with the exact linear solve
    of the u rows given w contracts onto it (the gamma k in the u-row
    diagonal balances the k in the chain sensitivity, giving a loop gain
    well under 1).  A spline resample then restores u(0) = 1/2; shifting
    along the root's own profile costs only O(h^4) interpolation error.
    Bails out to the input iterate if the sweeps do not contract.
    """
    u_in, w_in = u, w
    delta0 = None
    for _ in range(30):
        w_end = min(1.0, (params.k / (c * abs(lam_r))) * u[-1])
        w_new = _chain_w(x, u, c, params, w_end)
        u_new = _gs_u_solve(x, w_new, c, params, mu, lam_r)
        delta = max(
            float(np.max(np.abs(u_new - u))), float(np.max(np.abs(w_new - w)))
        )
        u, w = u_new, w_new
        if delta0 is None:
            delta0 = delta
        elif delta > delta0:
            return u_in, w_in
        if delta < 1e-12:
            break
    else:
        if delta > 1e-9:
            return u_in, w_in
    spl_u = CubicSpline(x, u)
    spl_w = CubicSpline(x, w)
    s = 0.0
    for _ in range(6):
        err = float(spl_u(s)) - 0.5
        if abs(err) < 1e-14:
            break
        s -= err / float(spl_u(s, 1))
    h = x[1] - x[0]
    if abs(s) > h:
        # the root family should sit within a node of the phase slice;
        # a larger shift means the sweeps walked somewhere else
        return u_in, w_in
    u = spl_u(x + s)
    w = spl_w(x + s)
    return u, w


def _seed_from_profile(
    x: np.ndarray, seed: WaveProfile, mu: float, lam_r: float
) -> np.ndarray:
    """Resample a seed's u onto the grid, extending by its asymptotic tails."""
    u = np.interp(x, seed.x, seed.u)
    left = x < seed.x[0]
    if np.any(left):
        u[left] = 1.0 - (1.0 - seed.u[0]) * np.exp(mu * (x[left] - seed.x[0]))
    right = x > seed.x[-1]
    if np.any(right):
        u[right] = seed.u[-1] * np.exp(lam_r * (x[right] - seed.x[-1]))
    return np.clip(u, 1e-300, 1.0 - 1e-15)


def _assemble(
    x: np.ndarray,
    u: np.ndarray,
    w: np.ndarray,
    c: float,
    params: ModelParams,
    mu: float,
    lam_r: float,
    robin_close: bool = True,
):
    """Residual vector and sparse Jacobian of the eps = 0 collocation system.

    Unknown ordering: [u_0..u_{n-1}, w_0..w_{n-1}].  Row layout: u rows
    0..n-1 (left Robin, interior, right Robin), w rows n..2n-1 (chain rows
    for i = 0..n-2, then one closure row pinning the absolute level of the
    chain).  The closure is either a one-sided Robin row w'(+L) = lambda_R w
    (the discretization that stays consistent with the u rows, preferred) or
    the algebraic tail balance w = k/(c |lambda_R|) u of c w' = -k u (1-w)
    (exact to relative O(u_edge) and immune to the soft-tail-mode
    stagnation that the Robin row suffers on long slowly-decaying grids).
    """
    n = len(x)
    h = x[1] - x[0]
    g, k = params.gamma, params.k
    F = np.empty(2 * n)

    # u rows
    F[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h) + mu * (1.0 - u[0])
    F[1 : n - 1] = (
        (u[2:] - 2.0 * u[1:-1] + u[:-2]) / h**2
        + c * (u[2:] - u[:-2]) / (2.0 * h)
        - u[1:-1]
        + w[1:-1]
        - g * k * u[1:-1] * (1.0 - w[1:-1])
    )
    F[n - 1] = (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * h) - lam_r * u[-1]

    # w chain rows: (1-w_i) - (1-w_{i+1}) E_i = 0
    expo = np.minimum((k / c) * (h / 2.0) * (u[:-1] + u[1:]), _EXP_ARG_CAP)
    expo = np.maximum(expo, -_EXP_ARG_CAP)
    E = np.exp(-expo)
    F[n : 2 * n - 1] = (1.0 - w[:-1]) - (1.0 - w[1:]) * E
    rho = k / (c * abs(lam_r))
    if robin_close:
        F[2 * n - 1] = (3.0 * w[-1] - 4.0 * w[-2] + w[-3]) / (2.0 * h) - lam_r * w[-1]
    else:
        F[2 * n - 1] = w[-1] - rho * u[-1]

    rows, cols, vals = [], [], []

    def add(r, cl, v):
        rows.append(np.asarray(r, dtype=np.int64))
        cols.append(np.asarray(cl, dtype=np.int64))
        vals.append(np.asarray(v, dtype=float))

    # u left Robin
    add([0, 0, 0], [0, 1, 2], [-1.5 / h - mu, 2.0 / h, -0.5 / h])
    # u interior
    i = np.arange(1, n - 1)
    add(i, i - 1, np.full(n - 2, 1.0 / h**2 - c / (2.0 * h)))
    add(i, i, -2.0 / h**2 - 1.0 - g * k * (1.0 - w[1:-1]))
    add(i, i + 1, np.full(n - 2, 1.0 / h**2 + c / (2.0 * h)))
    add(i, n + i, 1.0 + g * k * u[1:-1])
    # u right Robin
    add([n - 1] * 3, [n - 1, n - 2, n - 3], [1.5 / h - lam_r, -2.0 / h, 0.5 / h])
    # w chain rows
    r = np.arange(n, 2 * n - 1)
    j = np.arange(n - 1)
    dEdu = (1.0 - w[1:]) * E * (k / c) * (h / 2.0)
    add(r, n + j, np.full(n - 1, -1.0))
    add(r, n + j + 1, E)
    add(r, j, dEdu)
    add(r, j + 1, dEdu)
    # w tail closure
    if robin_close:
        add(
            [2 * n - 1] * 3,
            [2 * n - 1, 2 * n - 2, 2 * n - 3],
            [1.5 / h - lam_r, -2.0 / h, 0.5 / h],
        )
    else:
        add([2 * n - 1] * 2, [2 * n - 1, n - 1], [1.0, -rho])

    return F, (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))


def _assemble_eps(
    x: np.ndarray,
    u: np.ndarray,
    w: np.ndarray,
    c: float,
    params: ModelParams,
    mu: float,
    lam_r: float,
    m_w: float,
):
    """Residual and Jacobian triplets for the eps > 0 system (w second order)."""
    n = len(x)
    h = x[1] - x[0]
    g, k, eps = params.gamma, params.k, params.eps
    F = np.empty(2 * n)

    F[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h) + mu * (1.0 - u[0])
    F[1 : n - 1] = (
        (u[2:] - 2.0 * u[1:-1] + u[:-2]) / h**2
        + c * (u[2:] - u[:-2]) / (2.0 * h)
        - u[1:-1]
        + w[1:-1]
        - g * k * u[1:-1] * (1.0 - w[1:-1])
    )
    F[n - 1] = (3.0 * u[-1] - 4.0 * u[-2] + u[-3]) / (2.0 * h) - lam_r * u[-1]

    F[n] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2.0 * h) + m_w * (1.0 - w[0])
    F[n + 1 : 2 * n - 1] = (
        eps * (w[2:] - 2.0 * w[1:-1] + w[:-2]) / h**2
        + c * (w[2:] - w[:-2]) / (2.0 * h)
        + eps * (u[1:-1] - w[1:-1])
        + k * u[1:-1] * (1.0 - w[1:-1])
    )
    F[2 * n - 1] = (3.0 * w[-1] - 4.0 * w[-2] + w[-3]) / (2.0 * h) - lam_r * w[-1]

    rows, cols, vals = [], [], []

    def add(r, cl, v):
        rows.append(np.asarray(r, dtype=np.int64))
        cols.append(np.asarray(cl, dtype=np.int64))
        vals.append(np.asarray(v, dtype=float))

    add([0, 0, 0], [0, 1, 2], [-1.5 / h - mu, 2.0 / h, -0.5 / h])
    i = np.arange(1, n - 1)
    add(i, i - 1, np.full(n - 2, 1.0 / h**2 - c / (2.0 * h)))
    add(i, i, -2.0 / h**2 - 1.0 - g * k * (1.0 - w[1:-1]))
    add(i, i + 1, np.full(n - 2, 1.0 / h**2 + c / (2.0 * h)))
    add(i, n + i, 1.0 + g * k * u[1:-1])
    add([n - 1] * 3, [n - 1, n - 2, n - 3], [1.5 / h - lam_r, -2.0 / h, 0.5 / h])

    add([n] * 3, [n, n + 1, n + 2], [-1.5 / h - m_w, 2.0 / h, -0.5 / h])
    r = n + i
    add(r, n + i - 1, np.full(n - 2, eps / h**2 - c / (2.0 * h)))
    add(r, n + i, -2.0 * eps / h**2 - eps - k * u[1:-1])
    add(r, n + i + 1, np.full(n - 2, eps / h**2 + c / (2.0 * h)))
    add(r, i, eps + k * (1.0 - w[1:-1]))
    add(
        [2 * n - 1] * 3,
        [2 * n - 1, 2 * n - 2, 2 * n - 3],
        [1.5 / h - lam_r, -2.0 / h, 0.5 / h],
    )

    return F, (np.concatenate(rows), np.concatenate(cols), np.concatenate(vals))


def _newton(
    x: np.ndarray,
    i0: int,
    u0: np.ndarray,
    w0: np.ndarray,
    c: float,
    params: ModelParams,
    mu: float,
    lam_r: float,
    cfg: BvpConfig,
    assemble,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Bordered damped Newton; returns (u, w, iterations) or raises NoConvergence."""
    n = len(x)
    h = x[1] - x[0]
    u, w = u0.copy(), w0.copy()
    # second differences hit the roundoff floor ~ eps/h^2; don't demand more
    tol = max(cfg.newton_tol, 64.0 * np.finfo(float).eps / h**2)
    # the phase row is linear, so any full Newton step satisfies it exactly;
    # require it far below the residual floor
    phase_tol = 1e-11

    def residual_norm(uu, ww):
        F, _ = assemble(x, uu, ww, c, params, mu, lam_r)
        phase = uu[i0] - 0.5
        return F, float(max(np.max(np.abs(F)), abs(phase)))

    def gauge_converged(F, nr, uu, ww):
        # the product-form w rows and the differenced u rows disagree at
        # O(h^2 k) about the sub-grid offset of the front, so instead of
        # reaching F = 0 the bordered iteration can stall at F = -tau T
        # with tau != 0.  That component is pure translation gauge; once
        # progress has stopped, judge the iterate by the residual
        # orthogonal to the tangent.  (Only at a stall: mid-flight
        # tangential residuals are still reducible, and accepting them
        # leaves a real excursion along the soft near-translation mode.)
        if nr > 1e-2 or abs(uu[i0] - 0.5) > phase_tol:
            return False
        t = np.concatenate([np.gradient(uu, h), np.gradient(ww, h)])
        tn = np.linalg.norm(t)
        if tn == 0:
            return False
        t = t / tn
        return np.max(np.abs(F - (F @ t) * t)) <= tol

    F, nr = residual_norm(u, w)
    iters = 0
    # full steps that transiently raise the residual: near the solution the
    # soft tail-amplitude direction makes Newton non-monotone while the
    # error still contracts, so allow a few increases, bounded relative to
    # the best residual reached so far
    nonmono_budget = 3
    best = nr
    stalled = 0
    for _ in range(cfg.max_iter + 1):
        phase_ok = abs(u[i0] - 0.5) <= phase_tol
        if nr <= tol and phase_ok:
            return u, w, iters
        if stalled >= 5 and gauge_converged(F, nr, u, w):
            return u, w, iters
        # translation tangent (border column)
        t = np.concatenate([np.gradient(u, h), np.gradient(w, h)])
        tn = np.linalg.norm(t)
        if tn > 0:
            t = t / tn
        if iters >= cfg.max_iter:
            break
        iters += 1
        _, (rows, cols, vals) = assemble(x, u, w, c, params, mu, lam_r)
        m = 2 * n + 1
        rows_a = np.concatenate([rows, np.arange(2 * n), [2 * n]])
        cols_a = np.concatenate([cols, np.full(2 * n, 2 * n), [i0]])
        vals_a = np.concatenate([vals, t, [1.0]])
        J = csc_matrix((vals_a, (rows_a, cols_a)), shape=(m, m))
        G = np.concatenate([F, [u[i0] - 0.5]])
        try:
            step = splu(J).solve(-G)
        except RuntimeError as exc:  # singular factorization
            raise NoConvergence(f"linear solve failed: {exc}", residual=nr) from exc

        du, dw = step[:n], step[n : 2 * n]
        lam = 1.0
        accepted = False
        while lam >= 1.0 / 64.0:
            uu = u + lam * du
            ww = w + lam * dw
            Fn, nn = residual_norm(uu, ww)
            if np.isfinite(nn) and nn <= (1.0 - 0.25 * lam) * nr + tol:
                u, w, F, nr = uu, ww, Fn, nn
                accepted = True
                if nn < best:
                    # only progress past the previous best re-arms the
                    # bounce budget, else accept/bounce pairs cycle forever
                    nonmono_budget = 3
                break
            if lam == 1.0 and nonmono_budget > 0 and np.isfinite(nn) and nn <= 100.0 * best:
                u, w, F, nr = uu, ww, Fn, nn
                accepted = True
                nonmono_budget -= 1
                break
            lam *= 0.5
        # meaningful progress re-arms the stall counter that gates the
        # gauge-convergence test; microscopic accepts do not
        if nr < best * (1.0 - 1e-3):
            stalled = 0
        else:
            stalled += 1
        best = min(best, nr)
        if not accepted:
            if nr <= 8.0 * tol and abs(u[i0] - 0.5) <= phase_tol:
                # stuck at the evaluation roundoff floor, close enough
                return u, w, iters
            if gauge_converged(F, nr, u, w):
                return u, w, iters
            raise NoConvergence(
                f"Newton stagnated at residual {nr:.3e} (speed c={c} may be below the wave range)",
                residual=nr,
            )
    if gauge_converged(F, nr, u, w):
        return u, w, iters
    raise NoConvergence(
        f"Newton did not reach tolerance within {cfg.max_iter} iterations "
        f"(residual {nr:.3e})",
        residual=nr,
    )


def _truncate_at_floor(x: np.ndarray, u0: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Drop right-edge nodes where the initial guess is below _EDGE_FLOOR."""
    above = np.flatnonzero(u0 > _EDGE_FLOOR)
    j = int(above[-1]) if above.size else len(x) - 1
    return x[: j + 1], u0[: j + 1]


def _splice_tail(x: np.ndarray, y: np.ndarray, lam_r: float, floor: float) -> np.ndarray:
    """Replace the sub-roundoff right tail by its exact exponential continuation.

    Direct solves cannot represent tail values below ~1e-16 of the profile
    scale; beyond the last node above `floor` the discrete values are noise
    of random sign.  The true tail is the pure exponential at rate lambda_R,
    so continue with it from the last trustworthy node.  The floor sits well
    below the decay-fit band, leaving every diagnostic untouched.
    """
    above = np.flatnonzero(y > floor)
    if above.size == 0 or above[-1] == len(y) - 1:
        return y
    j = int(above[-1])
    y = y.copy()
    with np.errstate(under="ignore"):
        y[j + 1 :] = y[j] * np.exp(lam_r * (x[j + 1 :] - x[j]))
    # keep strictly positive even past exp underflow
    np.maximum(y[j + 1 :], 5e-324, out=y[j + 1 :])
    return y


def _check_speed(c: float, params: ModelParams) -> None:
    if not (c > 0.0):
        raise InvalidSpeed("wave speed must be positive (standing waves are ruled out)")
    lower = minimal_speed(params).lower
    if c < lower * (1.0 - 1e-12):
        raise InvalidSpeed(
            f"c={c} is below the proven lower bound {lower:.12g} for these parameters"
        )


def solve_tw_bvp(c: float, params: ModelParams, config: BvpConfig | None = None) -> WaveProfile:
    """Travelling wave at speed c by damped-Newton collocation.

    Seeds from the reduced-system shooting wave at c = c_infinity and solves
    at the target speed directly, bisecting the speed gap on failure; a
    caller-supplied seed profile (config.seed) bypasses all of that, and for
    k > 100 the solve walks a geometric ladder in k first.  Raises
    InvalidSpeed below the proven lower speed bound and NoConvergence when
    Newton stagnates (the expected outcome for speeds below the actual
    minimal speed).
    """
    cfg = config or BvpConfig()
    _check_speed(c, params)
    if params.eps != 0.0:
        params = ModelParams(gamma=params.gamma, k=params.k)
    ci = c_infinity(params.gamma)

    if cfg.seed is not None:
        return _solve_at(c, params, cfg)[0]
    if params.k > _K_LADDER_START:
        # continuation in k: the wave sharpens toward the sharp-interface
        # limit gradually, so climb from the anchor and let failed rungs
        # split at the geometric midpoint (the profile drifts like 1/sqrt(k))
        anchor = ModelParams(gamma=params.gamma, k=_K_LADDER_START)
        prof = solve_tw_bvp(c, anchor, cfg)
        return _reach_k(params.k, _K_LADDER_START, prof, c, params.gamma, cfg)
    if abs(c - ci) <= _CINF_MATCH_RTOL * ci:
        return _solve_at(c, params, cfg)[0]

    # direct solve seeded by the minimal-speed wave covers most targets;
    # when it fails, bisect in c recursively so every retry is anchored on
    # the nearest wave already computed
    prof, _ = _solve_at(ci, params, cfg)
    return _reach(c, ci, prof, params, cfg)


def _reach(
    c: float,
    c_anchor: float,
    anchor: WaveProfile,
    params: ModelParams,
    cfg: BvpConfig,
    depth: int = 0,
) -> WaveProfile:
    """Solve at c from the anchor wave, bisecting the speed gap on failure."""
    try:
        return _solve_at(c, params, replace(cfg, seed=anchor))[0]
    except NoConvergence:
        if depth >= _MAX_BISECT_DEPTH or abs(c - c_anchor) < 1e-6:
            raise
    mid = 0.5 * (c_anchor + c)
    prof_mid = _reach(mid, c_anchor, anchor, params, cfg, depth + 1)
    return _reach(c, mid, prof_mid, params, cfg, depth + 1)


def _reach_k(
    k: float,
    k_anchor: float,
    anchor: WaveProfile,
    c: float,
    gamma: float,
    cfg: BvpConfig,
    depth: int = 0,
) -> WaveProfile:
    """Solve at degradation rate k from the anchor wave, bisecting on failure."""
    try:
        return _solve_at(c, ModelParams(gamma=gamma, k=k), replace(cfg, seed=anchor))[0]
    except NoConvergence:
        if depth >= _MAX_BISECT_DEPTH or k / k_anchor < 1.0 + 1e-6:
            raise
    mid = math.sqrt(k_anchor * k)
    prof_mid = _reach_k(mid, k_anchor, anchor, c, gamma, cfg, depth + 1)
    return _reach_k(k, mid, prof_mid, c, gamma, cfg, depth + 1)


def _solve_at(c: float, params: ModelParams, cfg: BvpConfig) -> tuple[WaveProfile, int]:
    """Single Newton solve at fixed c with the configured or default seed."""
    mu, nu = mu_nu(c, params)
    lam_r = _lambda_right(c, params)
    L_left, L_right = (cfg.L, cfg.L) if cfg.L is not None else _auto_L(lam_r, mu)
    h = cfg.h if cfg.h is not None else _auto_h(c, params, lam_r, nu)

    seed = cfg.seed
    if seed is None:
        seed = shoot_reduced_wave(params, ShootingConfig(dx=min(2e-4, h)))
    iters = 0
    for _ in range(4):
        x, i0 = _grid(L_left, L_right, h)
        u0 = _seed_from_profile(x, seed, mu, lam_r)
        if cfg.L is None:
            x, u0 = _truncate_at_floor(x, u0)
        w_end = min(1.0, (params.k / (c * abs(lam_r))) * u0[-1])
        w0 = _chain_w(x, u0, c, params, w_end)
        try:
            u, w, its = _newton(x, i0, u0, w0, c, params, mu, lam_r, cfg, _assemble)
        except NoConvergence:
            # the Robin chain closure stagnates on long slowly-decaying
            # grids (soft tail mode); the algebraic tail balance does not
            u, w, its = _newton(
                x, i0, u0, w0, c, params, mu, lam_r, cfg,
                partial(_assemble, robin_close=False),
            )
        iters += its
        if cfg.L is not None or u[-1] <= _EDGE_EXTEND_TRIGGER or x[-1] >= L_right:
            break
        # the solved slow tail came out fatter than the seed predicted, so
        # the truncated grid ended too soon; reseed with the solved wave
        # (its edge value anchors the next floor crossing) and go longer
        seed = WaveProfile(x=x, u=u, w=w, c=c, method=Method.COLLOCATION_BVP, params=params)

    u, w = _polish(x, i0, u, w, c, params, mu, lam_r)
    u = _splice_tail(x, u, lam_r, 1e-12)
    w = _splice_tail(x, w, lam_r, 1e-12)
    w = np.minimum.accumulate(np.minimum(w, 1.0))
    prof = WaveProfile(
        x=x, u=u, w=w, c=c, method=Method.COLLOCATION_BVP, params=params
    )
    prof.validate()
    return prof, iters


def _lambda_right_eps(c: float, params: ModelParams, lam_r0: float) -> float:
    """Slow decaying rate at +infinity for the eps > 0 linearization.

    Eliminating the coupled linearization at (0,0) gives the quartic
    (m^2 + c m - a)(eps m^2 + c m - eps) - (eps + k) = 0 with a = 1 + gamma k;
    the admissible rate is the negative real root continuing the eps = 0
    slow root.
    """
    eps, k = params.eps, params.k
    a = 1.0 + params.gamma * k
    coeffs = [
        eps,
        c * (1.0 + eps),
        c**2 - eps - a * eps,
        -c * (eps + a),
        a * eps - eps - k,
    ]
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-9 * np.maximum(1.0, np.abs(roots.real))].real
    neg = real[real < 0.0]
    if neg.size == 0:
        raise NoConvergence(f"no negative decay rate for eps={eps}, c={c}")
    return float(neg[np.argmin(np.abs(neg - lam_r0))])


def solve_tw_bvp_eps(
    c: float, eps: float, params: ModelParams, config: BvpConfig | None = None
) -> WaveProfile:
    """Travelling wave of the eps-regularized system at speed c.

    Seeds from the eps = 0 solution at the same c and, if the direct solve
    stagnates, walks eps up in factor-of-two stages.  The admissible range
    0 < eps < 1/(2 gamma) is enforced by the parameter type.
    """
    cfg = config or BvpConfig()
    p_eps = ModelParams(gamma=params.gamma, k=params.k, eps=eps)
    if eps <= 0.0:
        raise ValueError("eps must be positive; use solve_tw_bvp for eps = 0")
    _check_speed(c, p_eps)

    base = cfg.seed if cfg.seed is not None else solve_tw_bvp(c, params, cfg)

    stages = [eps]
    while stages[0] > 0.02:
        stages.insert(0, stages[0] / 2.0)
    seed = base
    prof = None
    for e in stages:
        prof = _solve_eps_at(c, e, p_eps, replace(cfg, seed=seed))
        seed = prof
    return prof


def _solve_eps_at(c: float, eps: float, params: ModelParams, cfg: BvpConfig) -> WaveProfile:
    p = ModelParams(gamma=params.gamma, k=params.k, eps=eps)
    mu, nu = mu_nu(c, p)
    lam_r0 = _lambda_right(c, ModelParams(gamma=p.gamma, k=p.k))
    lam_r = _lambda_right_eps(c, p, lam_r0)
    # left-tail w rate: positive root of eps m^2 + c m - (k + eps) = 0
    m_w = 2.0 * (p.k + eps) / (c + math.sqrt(c**2 + 4.0 * eps * (p.k + eps)))
    if cfg.L is not None:
        L_left, L_right = cfg.L, cfg.L
    else:
        L_left, L_right = _auto_L(lam_r, mu)
        L_left = max(L_left, 12.0 / m_w)
    h = cfg.h if cfg.h is not None else _auto_h(c, p, lam_r, nu)
    x, i0 = _grid(L_left, L_right, h)

    if cfg.seed is None:
        raise InternalConsistencyError("eps solve requires a seed profile")
    u0 = _seed_from_profile(x, cfg.seed, mu, lam_r)
    if cfg.L is None:
        x, u0 = _truncate_at_floor(x, u0)
    if np.array_equal(cfg.seed.x, x):
        w0 = cfg.seed.w.copy()
    else:
        w0 = np.interp(x, cfg.seed.x, cfg.seed.w)
        w0[x < cfg.seed.x[0]] = 1.0 - (1.0 - cfg.seed.w[0]) * np.exp(
            m_w * (x[x < cfg.seed.x[0]] - cfg.seed.x[0])
        )
        w0[x > cfg.seed.x[-1]] = cfg.seed.w[-1] * np.exp(
            lam_r * (x[x > cfg.seed.x[-1]] - cfg.seed.x[-1])
        )
    w0 = np.clip(w0, 1e-300, 1.0)

    def assemble(xx, uu, ww, cc, pp, mmu, llam):
        return _assemble_eps(xx, uu, ww, cc, pp, mmu, llam, m_w)

    u, w, _ = _newton(x, i0, u0, w0, c, p, mu, lam_r, cfg, assemble)

    u = _splice_tail(x, u, lam_r, 1e-12)
    w = _splice_tail(x, w, lam_r, 1e-12)
    w = np.minimum.accumulate(np.minimum(w, 1.0))
    prof = WaveProfile(x=x, u=u, w=w, c=c, method=Method.EPS_COLLOCATION_BVP, params=p)
    prof.validate()
    return prof
