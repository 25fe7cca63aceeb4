"""Travelling-wave profiles and their diagnostics.

Three constructions of the wave pair (u, w) at speed c:

- `shoot_reduced_wave`: at the sharp-interface speed c_infinity the second
  derivative drops out of a reduced first-order system, whose heteroclinic
  orbit from (1,1) to (0,0) is one-dimensional and robust; a single backward
  integration from the stable eigendirection lands on it without any
  shooting-parameter search.
- `solve_tw_bvp` / `solve_tw_bvp_eps`: damped-Newton collocation for the
  full second-order system on a truncated domain (see `_collocation`).
- `stefan_wave`: closed form of the large-degradation (sharp interface)
  limit profile.

Diagnostics operate on any stored profile: finite-difference residuals of
the travelling-wave equations, exponential decay-rate fits of the tails,
the proven a-priori slope/curvature bounds, the integral mass identity
integral(u*(1-w)) = c/k, and the ratio functionals whose infimum over
admissible pairs characterizes the regularized minimal speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .dispersion import ModelParams, c_infinity, mu_nu
from .errors import (
    DerivativeFloorError,
    FileFormatError,
    MonotonicityError,
    NoWaveBelowMinimalSpeed,
    TruncationError,
    WindowTooShort,
)

__all__ = [
    "Method",
    "Side",
    "Component",
    "WaveProfile",
    "StefanWave",
    "DecayFit",
    "VolpertReport",
    "BoundsReport",
    "ShootingConfig",
    "reduced_rhs",
    "shoot_reduced_wave",
    "full_tw_residual",
    "stefan_wave",
    "fit_decay_rate",
    "nearest_left_rate",
    "check_apriori_bounds",
    "mass_identity",
    "volpert_functionals",
    "volpert_from_profile",
    "trial_pair",
    "save_profile",
    "read_profile_csv",
    "load_profile",
]


class Method(Enum):
    REDUCED_SHOOTING = "ReducedShooting"
    COLLOCATION_BVP = "CollocationBVP"
    EPS_COLLOCATION_BVP = "EpsCollocationBVP"


class Side(Enum):
    PLUS_INFINITY = "PlusInfinity"
    MINUS_INFINITY = "MinusInfinity"


class Component(Enum):
    U = "u"
    W = "w"
    ONE_MINUS_U = "1-u"
    ONE_MINUS_W = "1-w"


# Validation tolerances.  Strict profile monotonicity and 0 < u,w < 1 hold in
# exact arithmetic, but w saturates to 1.0 in double precision far behind the
# front (1-w underflows at rate k/c); strictness is therefore enforced only
# where per-node decrements are representable.
_NORMALIZATION_TOL = 1e-10
_W_SATURATION = 1e-12  # flats allowed where 1-w (or the value itself) is below this
_U_FLOOR = 1e-300  # flats allowed once u underflows toward the subnormal range
_LEFT_VALUE_MIN = 0.99
_RIGHT_VALUE_MAX = 1e-4


@dataclass(frozen=True)
class WaveProfile:
    """A travelling-wave profile sampled on a grid, normalized to u(0) = 1/2."""

    x: np.ndarray
    u: np.ndarray
    w: np.ndarray
    c: float
    method: Method
    params: ModelParams

    @property
    def eps(self) -> float:
        return self.params.eps

    def center_index(self) -> int:
        i = int(np.argmin(np.abs(self.x)))
        if abs(self.x[i]) > 1e-9:
            raise ValueError("profile grid does not contain x = 0")
        return i

    def validate(self) -> None:
        """Raise if the stored profile violates its structural invariants."""
        x, u, w = self.x, self.u, self.w
        if not (len(x) == len(u) == len(w)) or len(x) < 5:
            raise ValueError("profile arrays must share a length of at least 5")
        if np.any(np.diff(x) <= 0):
            raise ValueError("grid must be strictly increasing")
        i0 = self.center_index()
        if abs(u[i0] - 0.5) > _NORMALIZATION_TOL:
            raise ValueError(f"normalization u(0)=1/2 violated: u(0)={u[i0]!r}")
        if np.any(u <= 0.0) or np.any(u >= 1.0):
            raise ValueError("u must lie strictly inside (0, 1)")
        if np.any(w <= 0.0) or np.any(w > 1.0):
            raise ValueError("w must lie in (0, 1]")
        if np.any(np.diff(u) > 0.0):
            raise MonotonicityError("u must be non-increasing")
        if np.any((np.diff(u) >= 0.0) & (u[1:] > _U_FLOOR)):
            raise MonotonicityError("u must be strictly decreasing above the float floor")
        if np.any(np.diff(w) > 0.0):
            raise MonotonicityError("w must be non-increasing")
        # Strict decrease is only required where the per-node decrement
        # (k/c)(1-w)dx stays above one ulp of 1.0; closer to saturation the
        # stored doubles legitimately go flat.
        resolvable = (w[:-1] < 1.0 - _W_SATURATION) & (w[1:] > _W_SATURATION)
        if np.any((np.diff(w) >= 0.0) & resolvable):
            raise MonotonicityError("w must be strictly decreasing away from saturation")
        if u[0] <= _LEFT_VALUE_MIN:
            raise TruncationError(f"left tail truncated too early: u[0]={u[0]}")
        if u[-1] >= _RIGHT_VALUE_MAX:
            raise TruncationError(f"right tail truncated too early: u[-1]={u[-1]}")


@dataclass(frozen=True)
class StefanWave:
    """Closed-form sharp-interface wave at speed c >= c_infinity.

    In interface coordinates (interface at x = 0):
        u(x) = 1 - exp(alpha*x) for x <= 0, 0 for x > 0
        w(x) = 1 for x < 0, beta*exp(-x/(c*gamma)) for x >= 0
    x_half = -log(2)/alpha is where u = 1/2; the *_normalized evaluators
    shift the wave so that value sits at the origin.
    """

    c: float
    gamma: float
    alpha: float
    beta: float

    @property
    def x_half(self) -> float:
        return -math.log(2.0) / self.alpha

    def u(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x < 0.0, -np.expm1(self.alpha * np.minimum(x, 0.0)), 0.0)

    def w(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(
            x < 0.0, 1.0, self.beta * np.exp(-np.maximum(x, 0.0) / (self.c * self.gamma))
        )

    def u_normalized(self, x):
        """u in the u(0)=1/2 frame (interface sits at -x_half > 0)."""
        return self.u(np.asarray(x, dtype=float) + self.x_half)

    def w_normalized(self, x):
        return self.w(np.asarray(x, dtype=float) + self.x_half)


@dataclass(frozen=True)
class DecayFit:
    """Least-squares exponential fit log(value) = rate*x + intercept on a tail window."""

    rate: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    n_nodes: int
    side: Side
    component: Component


@dataclass(frozen=True)
class VolpertReport:
    """Grid suprema of the two ratio functionals; their max bounds the wave speed."""

    phi1_max: float
    phi2_max: float
    eps: float
    n_admissible_phi1: int
    n_admissible_phi2: int

    @property
    def speed_bound(self) -> float:
        return max(self.phi1_max, self.phi2_max)


@dataclass(frozen=True)
class BoundsReport:
    """Worst margins of the proven a-priori profile bounds (negative = violated).

    margin_u_mu:  min of u' + mu*(1-u)        (bound u' >= -mu*(1-u))
    margin_u_nu:  min of u' + nu*u            (bound u' >= -nu*u)
    margin_u_pp:  min of (c*mu+1+gamma*k) - |u''|
    margin_w:     min of w' + (k/c)*(1-w)     (bound w' >= -(k/c)*(1-w))
    """

    margin_u_mu: float
    margin_u_nu: float
    margin_u_pp: float
    margin_w: float
    all_hold: bool


@dataclass(frozen=True)
class ShootingConfig:
    """Controls for the reduced-system backward shooting integration."""

    dx: float = 2e-4  # resampling step of the stored profile
    delta: float = 1e-8  # offset along the stable eigendirection at the leading edge
    tol_left: float = 1e-6  # stop once u > 1 - tol_left
    x_budget: float = 400.0  # max backward distance before TruncationError
    rtol: float = 1e-10
    atol: float = 1e-18
    # dense-output accuracy degrades on long accepted steps, polluting second
    # differences of the resampled profile; cap the step well below that regime
    max_step: float = 0.05
    ivp_method: str = "DOP853"


def reduced_rhs(u, w, params: ModelParams):
    """Right-hand side of the reduced first-order system at c = c_infinity.

    u' = gamma*c_inf*(u - w)
    w' = -k*gamma*(1+gamma)*c_inf * u*(1-w)
    """
    ci = c_infinity(params.gamma)
    du = params.gamma * ci * (u - w)
    dw = -params.k * params.gamma * (1.0 + params.gamma) * ci * u * (1.0 - w)
    return du, dw


def shoot_reduced_wave(params: ModelParams, config: ShootingConfig | None = None) -> WaveProfile:
    """Wave at c = c_infinity by backward integration of the reduced system.

    Starts a distance delta from the origin along the normalized stable
    eigenvector v = (-1/2 + sqrt(1/4 + k*(1+gamma)), k*(1+gamma)) and
    integrates backward until u exceeds 1 - tol_left.  Deviations from the
    connecting orbit shrink backward in x (the unstable mode decays), so no
    parameter search is needed.  The orbit is then resampled on a uniform
    grid shifted so u(0) = 1/2.
    """
    cfg = config or ShootingConfig()
    g, k = params.gamma, params.k
    ci = c_infinity(g)

    kg = k * (1.0 + g)
    v = np.array([-0.5 + math.sqrt(0.25 + kg), kg])
    v /= np.linalg.norm(v)
    y0 = cfg.delta * v

    def rhs(_x, y):
        du, dw = reduced_rhs(y[0], y[1], params)
        return (du, dw)

    def hit_left(_x, y):
        return y[0] - (1.0 - cfg.tol_left)

    hit_left.terminal = True

    sol = solve_ivp(
        rhs,
        (0.0, -cfg.x_budget),
        y0,
        method=cfg.ivp_method,
        rtol=cfg.rtol,
        atol=cfg.atol,
        max_step=cfg.max_step,
        dense_output=True,
        events=hit_left,
    )
    if not sol.success:
        raise TruncationError(f"backward integration failed: {sol.message}")
    if len(sol.t_events[0]) == 0:
        raise TruncationError(
            f"orbit did not reach u > {1.0 - cfg.tol_left} within x_budget={cfg.x_budget}"
        )
    x_left = float(sol.t_events[0][0])

    x_half = brentq(lambda x: sol.sol(x)[0] - 0.5, x_left, 0.0, xtol=1e-14, rtol=8.9e-16)

    j_min = math.ceil((x_left - x_half) / cfg.dx)
    j_max = math.floor((0.0 - x_half) / cfg.dx)
    xi = np.arange(j_min, j_max + 1, dtype=float) * cfg.dx
    vals = sol.sol(xi + x_half)
    u = np.ascontiguousarray(vals[0])
    w_raw = np.ascontiguousarray(vals[1])

    # Any genuine rise means the integrator left the connecting orbit; ulp-level
    # jitter where w hugs 1.0 (true slope below roundoff) is projected away.
    if np.any(np.diff(u) >= 0.0) or np.any(np.diff(w_raw) >= 1e-8):
        raise MonotonicityError("shooting produced a non-monotone orbit; integrator misconfigured")
    w = np.minimum.accumulate(np.minimum(w_raw, 1.0))

    profile = WaveProfile(x=xi, u=u, w=w, c=ci, method=Method.REDUCED_SHOOTING, params=params)
    profile.validate()
    return profile


def _fd_derivatives(x: np.ndarray, y: np.ndarray):
    """Centered three-point first and second derivatives at interior nodes.

    Supports non-uniform grids; reduces to the classic stencils when uniform.
    """
    hl = x[1:-1] - x[:-2]
    hr = x[2:] - x[1:-1]
    y0, y1, y2 = y[:-2], y[1:-1], y[2:]
    d1 = (-hr / (hl * (hl + hr))) * y0 + ((hr - hl) / (hl * hr)) * y1 + (hl / (hr * (hl + hr))) * y2
    d2 = 2.0 * (y0 / (hl * (hl + hr)) - y1 / (hl * hr) + y2 / (hr * (hl + hr)))
    return d1, d2


def full_tw_residual(profile: WaveProfile) -> tuple[float, float]:
    """Sup-norm residuals of the travelling-wave equations at interior nodes.

    u-equation: u'' + c*u' - u + w - gamma*k*u*(1-w)
    w-equation: c*w' + k*u*(1-w)            for eps = 0
                eps*w'' + c*w' + eps*(u-w) + k*u*(1-w)   for eps > 0

    Derivatives are centered finite differences on the stored grid, so the
    residual measures the profile against an independent discretization.
    """
    p = profile.params
    x, u, w, c = profile.x, profile.u, profile.w, profile.c
    du, ddu = _fd_derivatives(x, u)
    dw, ddw = _fd_derivatives(x, w)
    ui, wi = u[1:-1], w[1:-1]
    res_u = ddu + c * du - ui + wi - p.gamma * p.k * ui * (1.0 - wi)
    if p.eps > 0.0:
        res_w = p.eps * ddw + c * dw + p.eps * (ui - wi) + p.k * ui * (1.0 - wi)
    else:
        res_w = c * dw + p.k * ui * (1.0 - wi)
    return float(np.max(np.abs(res_u))), float(np.max(np.abs(res_w)))


def stefan_wave(c: float, gamma: float) -> StefanWave:
    """Closed-form sharp-interface wave; raises below the minimal speed.

    The interface jump condition gamma*c*(1-beta) = alpha fixes beta, and
    beta >= 0 (hence an admissible tissue profile) exactly when
    c >= c_infinity(gamma).
    """
    from .dispersion import alpha_beta

    ci = c_infinity(gamma)
    if c < ci * (1.0 - 1e-14):
        raise NoWaveBelowMinimalSpeed(
            f"no sharp-interface wave below c_infinity={ci}: requested c={c}"
        )
    alpha, beta = alpha_beta(c, gamma)
    return StefanWave(c=c, gamma=gamma, alpha=alpha, beta=max(beta, 0.0))


# Decay-fit window: values inside this band avoid both the nonlinear core of
# the profile and the floating-point floor.
_FIT_VALUE_LO = 1e-10
_FIT_VALUE_HI = 1e-2
_FIT_MIN_NODES = 20


def _component_values(profile: WaveProfile, component: Component) -> np.ndarray:
    if component is Component.U:
        return profile.u
    if component is Component.W:
        return profile.w
    if component is Component.ONE_MINUS_U:
        return 1.0 - profile.u
    return 1.0 - profile.w


def fit_decay_rate(profile: WaveProfile, side: Side, component: Component) -> DecayFit:
    """Least-squares exponential rate of a tail component.

    Finds the contiguous run of nodes adjacent to the requested end where the
    value lies in [1e-10, 1e-2], then fits log(value) against x on the
    quarter of that run nearest the end (the most asymptotic segment, least
    contaminated by the nonlinear core).  Raises WindowTooShort when fewer
    than 20 nodes qualify.
    """
    vals = _component_values(profile, component)
    mask = (vals >= _FIT_VALUE_LO) & (vals <= _FIT_VALUE_HI)
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        raise WindowTooShort(f"no nodes with {component.value} in the fit band")
    if side is Side.PLUS_INFINITY:
        # contiguous run ending at the rightmost qualifying node
        end = idx[-1]
        start = end
        while start > 0 and mask[start - 1]:
            start -= 1
    else:
        start = idx[0]
        end = start
        while end < len(mask) - 1 and mask[end + 1]:
            end += 1
    run = end - start + 1
    if run < _FIT_MIN_NODES:
        raise WindowTooShort(f"decay-fit window has {run} nodes; need >= {_FIT_MIN_NODES}")
    keep = max(_FIT_MIN_NODES, run // 4)
    if side is Side.PLUS_INFINITY:
        start = end - keep + 1
    else:
        end = start + keep - 1
    sel = slice(start, end + 1)
    n = end - start + 1

    xs = profile.x[sel]
    ys = np.log(vals[sel])
    rate, intercept = np.polyfit(xs, ys, 1)
    pred = rate * xs + intercept
    ss_res = float(np.sum((ys - pred) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(
        rate=float(rate),
        intercept=float(intercept),
        r_squared=r2,
        window=(float(xs[0]), float(xs[-1])),
        n_nodes=n,
        side=side,
        component=component,
    )


def nearest_left_rate(profile: WaveProfile, component: Component = Component.ONE_MINUS_W) -> tuple[DecayFit, str]:
    """Fit a -infinity tail rate and report which candidate it is nearer to.

    The proven left-tail rates are mu (for 1-u) and k/c (for 1-w) when k >= 1,
    but for 0 < k < 1 the theory only narrows the rate to one of the two.
    This helper asserts nothing: it returns the fit plus the label "mu" or
    "k/c" of the closer candidate.  Note the k/c rate is observable in double
    precision only when k/c and mu are within a few multiples of each other;
    for large k the 1-w tail saturates before its asymptotic regime.
    """
    fit = fit_decay_rate(profile, Side.MINUS_INFINITY, component)
    mu, _ = mu_nu(profile.c, profile.params)
    koc = profile.params.k / profile.c
    label = "mu" if abs(fit.rate - mu) <= abs(fit.rate - koc) else "k/c"
    return fit, label


_BOUND_SLACK = 1e-6


def check_apriori_bounds(profile: WaveProfile) -> BoundsReport:
    """Verify the proven slope and curvature bounds; violations are data, not errors."""
    p = profile.params
    c = profile.c
    mu, nu = mu_nu(c, p)
    du, ddu = _fd_derivatives(profile.x, profile.u)
    dw, _ = _fd_derivatives(profile.x, profile.w)
    ui, wi = profile.u[1:-1], profile.w[1:-1]

    upp_cap = c * mu + 1.0 + p.gamma * p.k
    m_mu = float(np.min(du + mu * (1.0 - ui)))
    m_nu = float(np.min(du + nu * ui))
    m_pp = float(np.min(upp_cap - np.abs(ddu)))
    m_w = float(np.min(dw + (p.k / c) * (1.0 - wi)))

    ok = (
        m_mu >= -_BOUND_SLACK * max(1.0, mu)
        and m_nu >= -_BOUND_SLACK * max(1.0, nu)
        and m_pp >= -_BOUND_SLACK * max(1.0, upp_cap)
        and m_w >= -_BOUND_SLACK * max(1.0, p.k / c)
    )
    return BoundsReport(margin_u_mu=m_mu, margin_u_nu=m_nu, margin_u_pp=m_pp, margin_w=m_w, all_hold=ok)


def mass_identity(profile: WaveProfile) -> float:
    """Trapezoid quadrature of integral u*(1-w) dx; equals c/k on an exact wave."""
    return float(np.trapezoid(profile.u * (1.0 - profile.w), profile.x))


# Nodes with |slope| below this fraction of the max slope are excluded from
# the ratio functionals (the ratios degenerate to 0/0 in the flat tails).
# On an exact wave the ratio is constant, so trimming loses nothing, while a
# numerator noise level delta perturbs the reported sup by at most
# delta / (floor * max|slope|); 1e-3 keeps that under 1e-4 for resampled
# integrator output.
_DERIVATIVE_FLOOR = 1e-3


def volpert_functionals(
    x: np.ndarray,
    rho: np.ndarray,
    sigma: np.ndarray,
    eps: float,
    params: ModelParams,
) -> VolpertReport:
    """Grid suprema of the two speed-characterizing ratio functionals.

    phi1 = sup (rho'' - rho + sigma - gamma*k*rho*(1-sigma)) / (-rho')
    phi2 = sup (eps*sigma'' + eps*(rho-sigma) + k*rho*(1-sigma)) / (-sigma')

    On an exact eps=0 wave both ratios are identically the wave speed; on any
    admissible decreasing pair max(phi1, phi2) is an upper bound for the
    regularized minimal speed.  Nodes whose slope magnitude falls below
    1e-3 * max|slope| are excluded.
    """
    x = np.asarray(x, dtype=float)
    rho = np.asarray(rho, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    g, k = params.gamma, params.k

    drho, ddrho = _fd_derivatives(x, rho)
    dsig, ddsig = _fd_derivatives(x, sigma)
    ri, si = rho[1:-1], sigma[1:-1]

    max1 = float(np.max(-drho))
    max2 = float(np.max(-dsig))
    # slopes must be resolvable above the finite-difference roundoff floor
    # (an exactly flat input still yields ~ulp/h stencil noise, not zeros)
    h_med = float(np.median(np.diff(x)))
    noise1 = 64.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(rho)))) / h_med
    noise2 = 64.0 * np.finfo(float).eps * max(1.0, float(np.max(np.abs(sigma)))) / h_med
    if max1 <= noise1 or max2 <= noise2:
        raise DerivativeFloorError("profiles must be decreasing somewhere")
    adm1 = -drho >= _DERIVATIVE_FLOOR * max1
    adm2 = -dsig >= _DERIVATIVE_FLOOR * max2
    if not np.any(adm1) or not np.any(adm2):
        raise DerivativeFloorError("no grid nodes above the derivative floor")

    num1 = ddrho - ri + si - g * k * ri * (1.0 - si)
    num2 = eps * ddsig + eps * (ri - si) + k * ri * (1.0 - si)
    phi1 = float(np.max(num1[adm1] / (-drho[adm1])))
    phi2 = float(np.max(num2[adm2] / (-dsig[adm2])))
    return VolpertReport(
        phi1_max=phi1,
        phi2_max=phi2,
        eps=eps,
        n_admissible_phi1=int(np.count_nonzero(adm1)),
        n_admissible_phi2=int(np.count_nonzero(adm2)),
    )


def volpert_from_profile(profile: WaveProfile, eps: float | None = None) -> VolpertReport:
    """Ratio functionals evaluated on a computed wave (rho = u, sigma = w)."""
    e = profile.eps if eps is None else eps
    return volpert_functionals(profile.x, profile.u, profile.w, e, profile.params)


def trial_pair(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Admissible decreasing trial pair with unit-rate exponential tails.

    rho = sigma = 1/(1+exp(x)): behaves as exp(-x) for x >> 1 and 1-exp(x)
    for x << -1, is smooth and strictly decreasing, and satisfies
    rho*(1-rho) = -rho', which makes the ratio functionals closed-form:
    phi2 = k + eps*(2*rho-1) <= k + eps.  Used to certify a finite,
    eps-uniform upper bound for the regularized minimal speed.
    """
    x = np.asarray(x, dtype=float)
    v = 1.0 / (1.0 + np.exp(x))
    return v, v.copy()


# ---------------------------------------------------------------------------
# Serialization: CSV with 17 significant digits plus a key=value sidecar.

_CSV_HEADER = "x,u,w"
_SIDECAR_SUFFIX = ".meta"


def _sidecar_path(path) -> Path:
    return Path(str(path) + _SIDECAR_SUFFIX)


def save_profile(profile: WaveProfile, path) -> Path:
    """Write the profile as CSV `x,u,w` (17 significant digits, round-trip
    exact) plus a `<path>.meta` sidecar with parameters and residuals.
    Returns the sidecar path."""
    path = Path(path)
    with path.open("w") as f:
        f.write(_CSV_HEADER + "\n")
        for xi, ui, wi in zip(profile.x, profile.u, profile.w):
            f.write(f"{xi:.17g},{ui:.17g},{wi:.17g}\n")
    res_u, res_w = full_tw_residual(profile)
    meta = _sidecar_path(path)
    with meta.open("w") as f:
        f.write("format = degwave-profile-v1\n")
        f.write(f"gamma = {profile.params.gamma:.17g}\n")
        f.write(f"k = {profile.params.k:.17g}\n")
        f.write(f"eps = {profile.params.eps:.17g}\n")
        f.write(f"c = {profile.c:.17g}\n")
        f.write(f"method = {profile.method.value}\n")
        f.write(f"n_nodes = {len(profile.x)}\n")
        f.write(f"residual_u = {res_u:.17g}\n")
        f.write(f"residual_w = {res_w:.17g}\n")
    return meta


def read_profile_csv(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a profile CSV, validating the `x,u,w` header."""
    path = Path(path)
    try:
        with path.open() as f:
            header = f.readline().strip()
            if header != _CSV_HEADER:
                raise FileFormatError(f"expected header '{_CSV_HEADER}', got '{header}'")
            data = np.loadtxt(f, delimiter=",", ndmin=2)
    except OSError as exc:
        raise FileFormatError(f"cannot read profile file {path}: {exc}") from exc
    except ValueError as exc:
        raise FileFormatError(f"malformed profile CSV {path}: {exc}") from exc
    if data.shape[1] != 3:
        raise FileFormatError(f"expected 3 columns in {path}, got {data.shape[1]}")
    return data[:, 0].copy(), data[:, 1].copy(), data[:, 2].copy()


def load_profile(path) -> WaveProfile:
    """Reload a saved profile (CSV plus sidecar); bit-exact round trip."""
    x, u, w = read_profile_csv(path)
    meta_path = _sidecar_path(path)
    fields: dict[str, str] = {}
    try:
        for line in meta_path.read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
    except OSError as exc:
        raise FileFormatError(f"cannot read profile sidecar {meta_path}: {exc}") from exc
    try:
        params = ModelParams(
            gamma=float(fields["gamma"]), k=float(fields["k"]), eps=float(fields["eps"])
        )
        c = float(fields["c"])
        method = Method(fields["method"])
    except (KeyError, ValueError) as exc:
        raise FileFormatError(f"incomplete or invalid sidecar {meta_path}: {exc}") from exc
    return WaveProfile(x=x, u=u, w=w, c=c, method=method, params=params)
