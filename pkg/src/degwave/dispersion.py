"""Closed-form dispersion analysis of the tissue-degradation wave model.

The model couples a diffusing degrader concentration u with the degraded
tissue fraction w:

    u_t = u_xx - u + w - gamma*k*u*(1-w)
    w_t = k*u*(1-w)

A right-moving front u(x-ct), w(x-ct) decays exponentially ahead of itself,
exp(lambda*x) with lambda < 0, and substituting that tail into the
travelling-wave equations gives the dispersion cubic

    lambda^3 + c*lambda^2 - (1+gamma*k)*lambda - k/c = 0.

This module owns the model parameters and every closed-form quantity built
on that cubic: the sharp-interface (large-degradation) minimal speed c_inf,
the regime threshold k_zero, the Stefan-wave tail coefficients alpha/beta,
the a-priori tail rates mu/nu, the speed-versus-decay curve c_bar, the
linear (marginal-stability) selection point, the reduced-system decay rate
lambda_infinity, and the minimal-speed bounds.  Everything here is a pure
function of (gamma, k, c, lambda); heavier numerics live in `profiles` and
`pdesim`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InternalConsistencyError

__all__ = [
    "ModelParams",
    "RootClass",
    "SelectionRegime",
    "DispersionAnalysis",
    "LinearSelectionPoint",
    "SpeedBounds",
    "DecayOrdering",
    "c_infinity",
    "k_zero",
    "alpha_beta",
    "mu_nu",
    "dispersion_cubic",
    "dispersion_roots",
    "c_bar",
    "linear_selection_point",
    "lambda_infinity",
    "lambda_infinity_star",
    "minimal_speed",
    "decay_ordering",
]


@dataclass(frozen=True)
class ModelParams:
    """Model constants: stoichiometric ratio gamma, degradation rate k.

    eps is the diffusion regularization of the tissue equation; eps = 0 is
    the physical (non-diffusing tissue) model.  Admissible range for the
    regularized analysis is 0 <= eps < 1/(2*gamma).
    """

    gamma: float
    k: float
    eps: float = 0.0

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if not self.k > 0:
            raise ValueError(f"k must be positive, got {self.k}")
        if not 0.0 <= self.eps < 1.0 / (2.0 * self.gamma):
            raise ValueError(
                f"eps must lie in [0, 1/(2*gamma)) = [0, {1.0 / (2.0 * self.gamma)}), "
                f"got {self.eps}"
            )


class RootClass(Enum):
    """Structure of the two non-positive dispersion roots ahead of the front."""

    TWO_REAL = "TwoReal"
    DOUBLE_ROOT = "DoubleRoot"
    COMPLEX_PAIR = "ComplexPair"


class SelectionRegime(Enum):
    NONLINEAR_SELECTION = "NonlinearSelection"
    UNRESOLVED = "Unresolved"


# Two negative roots closer than this (relative to 1+|lambda|) are one double root.
DOUBLE_ROOT_RTOL = 1e-7


@dataclass(frozen=True)
class DispersionAnalysis:
    """Roots of the dispersion cubic at a given speed.

    lambda_plus is the unique positive root (growth behind the front).  The
    remaining pair, sorted by real part, is stored in negative_roots; its
    structure is summarized by discriminant_class.
    """

    c: float
    lambda_plus: float
    negative_roots: tuple[complex, complex]
    discriminant_class: RootClass

    @property
    def lambda_fast(self) -> float:
        """Most negative real root (fastest decay).  Undefined for a complex pair."""
        if self.discriminant_class is RootClass.COMPLEX_PAIR:
            raise ValueError("complex root pair has no real decay rates")
        return self.negative_roots[0].real

    @property
    def lambda_slow(self) -> float:
        """Least negative real root (slowest decay).  Undefined for a complex pair."""
        if self.discriminant_class is RootClass.COMPLEX_PAIR:
            raise ValueError("complex root pair has no real decay rates")
        return self.negative_roots[1].real


@dataclass(frozen=True)
class LinearSelectionPoint:
    """Tangency point of the speed-versus-decay curve: c_lin = min c_bar."""

    c_lin: float
    lambda_lin: float


@dataclass(frozen=True)
class SpeedBounds:
    """Proven bracket for the minimal wave speed; exact is set when the bracket closes."""

    lower: float
    upper: float
    exact: float | None
    regime: SelectionRegime


@dataclass(frozen=True)
class DecayOrdering:
    """The three decay rates at c = c_infinity and their strict ordering.

    relation is '>' when k < k_zero (lambda_inf > lambda_lin > lambda_star),
    '=' at k = k_zero, '<' when k > k_zero.
    """

    lambda_inf: float
    lambda_lin: float
    lambda_star: float
    relation: str


def c_infinity(gamma: float) -> float:
    """Minimal speed of the sharp-interface limit: 1/sqrt(gamma*(1+gamma))."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return 1.0 / math.sqrt(gamma * (1.0 + gamma))


def k_zero(gamma: float) -> float:
    """Regime threshold (1+2*gamma)/gamma**2 separating the two selection regimes."""
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return (1.0 + 2.0 * gamma) / (gamma * gamma)


def alpha_beta(c: float, gamma: float) -> tuple[float, float]:
    """Sharp-interface tail coefficients at speed c.

    alpha is the positive root of alpha^2 + c*alpha - 1 = 0 (rate of the
    degrader tail behind the interface), beta = 1 - alpha/(gamma*c) is the
    tissue value just ahead of it.  beta >= 0 exactly when c >= c_infinity.
    """
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    alpha = -0.5 * c + math.sqrt(0.25 * c * c + 1.0)
    beta = 1.0 - alpha / (gamma * c)
    return alpha, beta


def mu_nu(c: float, params: ModelParams) -> tuple[float, float]:
    """A-priori tail rates for the degrader profile.

    mu > 0 solves mu^2 + c*mu - 1 = 0 (decay of 1-u far behind the front),
    nu > 0 solves nu^2 - c*nu - (1+gamma*k) = 0 (steepest admissible slope:
    u' >= -nu*u everywhere).
    """
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    a = 1.0 + params.gamma * params.k
    mu = -0.5 * c + math.sqrt(0.25 * c * c + 1.0)
    nu = 0.5 * c + math.sqrt(0.25 * c * c + a)
    return mu, nu


def dispersion_cubic(lam: float, c: float, params: ModelParams) -> float:
    """Residual of the dispersion cubic lambda^3 + c*lambda^2 - (1+gamma*k)*lambda - k/c."""
    a = 1.0 + params.gamma * params.k
    return lam**3 + c * lam**2 - a * lam - params.k / c


def _positive_root(c: float, a: float, q: float) -> float:
    """Unique positive root of p(x) = x^3 + c*x^2 - a*x - q (a, q, c > 0).

    Safeguarded Newton: keep a sign-change bracket, start from sqrt(a), fall
    back to bisection whenever a Newton step leaves the bracket.  p is convex
    on x > 0 once past the inflection, so this converges fast and never
    escapes.
    """

    def p(x):
        return x * (x * (x + c) - a) - q

    def dp(x):
        return x * (3.0 * x + 2.0 * c) - a

    lo = 0.0  # p(0) = -q < 0
    hi = max(math.sqrt(a), 1.0)
    while p(hi) <= 0.0:
        lo = hi
        hi *= 2.0
        if hi > 1e200:  # pragma: no cover - unreachable for finite inputs
            raise InternalConsistencyError("positive cubic root bracket failed")

    x = math.sqrt(a)
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    for _ in range(200):
        fx = p(x)
        if fx > 0.0:
            hi = x
        elif fx < 0.0:
            lo = x
        else:
            return x
        d = dp(x)
        x_new = x - fx / d if d != 0.0 else 0.5 * (lo + hi)
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) <= 1e-16 * max(1.0, abs(x)):
            return x_new
        x = x_new
    return x


def dispersion_roots(c: float, params: ModelParams) -> DispersionAnalysis:
    """All three roots of the dispersion cubic at speed c.

    The positive root lambda_plus is found by safeguarded Newton from the
    initial guess sqrt(1+gamma*k); the remaining pair comes from the deflated
    quadratic lambda^2 + (c+lambda_plus)*lambda + k/(c*lambda_plus) = 0,
    evaluated with the larger-magnitude root first to avoid cancellation.
    """
    if not c > 0:
        raise ValueError(f"c must be positive, got {c}")
    a = 1.0 + params.gamma * params.k
    q = params.k / c
    lam_plus = _positive_root(c, a, q)

    # Deflated quadratic: both remaining roots have negative real part since
    # b = c + lam_plus > 0 and q2 = k/(c*lam_plus) > 0.
    b = c + lam_plus
    q2 = params.k / (c * lam_plus)
    disc = b * b - 4.0 * q2
    sep = math.sqrt(abs(disc))  # |lam1 - lam2| for either sign of disc
    tol = DOUBLE_ROOT_RTOL * (1.0 + 0.5 * b)
    if sep <= tol:
        root = -0.5 * b
        pair = (complex(root), complex(root))
        cls = RootClass.DOUBLE_ROOT
    elif disc > 0.0:
        fast = -0.5 * (b + math.sqrt(disc))
        slow = q2 / fast  # product of the pair equals q2
        pair = (complex(fast), complex(slow))
        cls = RootClass.TWO_REAL
    else:
        im = 0.5 * math.sqrt(-disc)
        pair = (complex(-0.5 * b, -im), complex(-0.5 * b, im))
        cls = RootClass.COMPLEX_PAIR
    return DispersionAnalysis(c=c, lambda_plus=lam_plus, negative_roots=pair, discriminant_class=cls)


def c_bar(lam: float, params: ModelParams) -> float:
    """Speed at which a tail of rate lam < 0 satisfies the dispersion cubic.

    c_bar(lam) = -(lam - (1+gamma*k)/lam)/2
                 + sqrt((lam - (1+gamma*k)/lam)^2/4 + k/lam^2)

    Diverges as lam -> 0- and lam -> -inf; its unique minimum over lam < 0
    is the linear selection point.
    """
    if not lam < 0:
        raise ValueError(f"lam must be negative, got {lam}")
    a = 1.0 + params.gamma * params.k
    s = lam - a / lam
    return -0.5 * s + math.sqrt(0.25 * s * s + params.k / (lam * lam))


def linear_selection_point(params: ModelParams) -> LinearSelectionPoint:
    """Minimum of c_bar over lam < 0 (marginal-stability speed).

    The tangency conditions reduce to closed forms:
        3*lambda_lin^2 = -(1+gamma*k) + 2*sqrt((1+gamma*k)^2 + 3k)
        lambda_lin * c_lin = (1+gamma*k) - sqrt((1+gamma*k)^2 + 3k)
    with lambda_lin < 0.
    """
    a = 1.0 + params.gamma * params.k
    root = math.sqrt(a * a + 3.0 * params.k)
    lam_lin = -math.sqrt((-a + 2.0 * root) / 3.0)
    c_lin = (a - root) / lam_lin
    return LinearSelectionPoint(c_lin=c_lin, lambda_lin=lam_lin)


def lambda_infinity(params: ModelParams) -> float:
    """Decay rate of the wave built from the reduced first-order system at c_infinity.

    Stable eigenvalue of that system at the leading edge:
        lambda_inf = c_inf*gamma*(1/2 - sqrt(1/4 + k*(1+gamma))) < 0.
    """
    ci = c_infinity(params.gamma)
    return ci * params.gamma * (0.5 - math.sqrt(0.25 + params.k * (1.0 + params.gamma)))


def lambda_infinity_star(gamma: float) -> float:
    """The k-independent root -1/(gamma*c_infinity) = -sqrt((1+gamma)/gamma).

    A root of the dispersion cubic at c = c_infinity for every k.
    """
    if not gamma > 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    return -math.sqrt((1.0 + gamma) / gamma)


def minimal_speed(params: ModelParams) -> SpeedBounds:
    """Proven bracket for the minimal travelling-wave speed.

    For k >= k_zero(gamma) the bracket closes: the minimal speed equals
    c_infinity exactly (nonlinear selection).  Below k_zero only the bracket
    [c_lin, c_infinity] is proven; no point value is asserted.
    """
    ci = c_infinity(params.gamma)
    if params.k >= k_zero(params.gamma):
        return SpeedBounds(lower=ci, upper=ci, exact=ci, regime=SelectionRegime.NONLINEAR_SELECTION)
    c_lin = linear_selection_point(params).c_lin
    return SpeedBounds(lower=c_lin, upper=ci, exact=None, regime=SelectionRegime.UNRESOLVED)


# Slack for verifying the strict ordering chain; violations beyond this signal a bug.
_ORDERING_SLACK = 1e-11


def decay_ordering(params: ModelParams) -> DecayOrdering:
    """Ordering of (lambda_inf(k), lambda_lin(k), lambda_star) at c = c_infinity.

    k < k_zero:  lambda_inf > lambda_lin > lambda_star
    k = k_zero:  all three coincide
    k > k_zero:  lambda_inf < lambda_lin < lambda_star

    Raises InternalConsistencyError if the computed values violate the chain
    for the regime of k; that indicates a numerical bug, not a valid outcome.
    """
    li = lambda_infinity(params)
    ll = linear_selection_point(params).lambda_lin
    ls = lambda_infinity_star(params.gamma)
    k0 = k_zero(params.gamma)
    scale = max(1.0, abs(li), abs(ll), abs(ls))
    slack = _ORDERING_SLACK * scale

    if abs(params.k - k0) <= 1e-9 * max(1.0, k0):
        relation = "="
        ok = abs(li - ll) <= 1e-6 * scale and abs(ll - ls) <= 1e-6 * scale
    elif params.k < k0:
        relation = ">"
        ok = li >= ll - slack and ll >= ls - slack
    else:
        relation = "<"
        ok = li <= ll + slack and ll <= ls + slack
    if not ok:
        raise InternalConsistencyError(
            f"decay-rate ordering violated for gamma={params.gamma}, k={params.k}: "
            f"lambda_inf={li}, lambda_lin={ll}, lambda_star={ls}"
        )
    return DecayOrdering(lambda_inf=li, lambda_lin=ll, lambda_star=ls, relation=relation)
