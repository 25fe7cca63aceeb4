"""Closed-form dispersion analysis: frozen values, identities, and random sweeps."""

import math

import numpy as np
import pytest

from degwave import (
    ModelParams,
    RootClass,
    SelectionRegime,
    alpha_beta,
    c_bar,
    c_infinity,
    decay_ordering,
    dispersion_roots,
    k_zero,
    lambda_infinity,
    lambda_infinity_star,
    linear_selection_point,
    minimal_speed,
    mu_nu,
)
from degwave.dispersion import dispersion_cubic

SQRT2 = math.sqrt(2.0)

# Frozen 20-digit oracle values (computed independently in 40-digit arithmetic).
LAM_LIN_G1K1 = -1.0474576558074923
C_LIN_G1K1 = 0.6164939532250365
LAM_LIN_G1K10 = -2.1273153233507733
C_LIN_G1K10 = 0.6055546694485476
SLOW_ROOT_C1_K10 = -0.9018327595437879
FAST_ROOT_C1_K10 = -3.3793898576681589
PLUS_ROOT_C1_K10 = 3.2812226172119467
NU_CINF_K3 = 2.3845629917522639


def random_params(n=200, seed=20260817):
    rng = np.random.default_rng(seed)
    gammas = 10.0 ** rng.uniform(-1, 1, n)
    ks = 10.0 ** rng.uniform(-1, 2, n)
    return [ModelParams(g, k) for g, k in zip(gammas, ks)]


def test_model_params_validation():
    with pytest.raises(ValueError):
        ModelParams(0.0, 1.0)
    with pytest.raises(ValueError):
        ModelParams(1.0, -2.0)
    with pytest.raises(ValueError):
        ModelParams(1.0, 1.0, eps=0.5)  # 1/(2*gamma) = 0.5 is excluded
    ModelParams(1.0, 1.0, eps=0.499)
    ModelParams(1.0, 1.0, eps=0.0)


def test_c_infinity_and_k_zero():
    assert c_infinity(1.0) == pytest.approx(1.0 / SQRT2, abs=1e-15)
    assert k_zero(1.0) == 3.0
    assert k_zero(0.5) == pytest.approx(8.0, abs=1e-13)
    with pytest.raises(ValueError):
        c_infinity(-1.0)
    with pytest.raises(ValueError):
        k_zero(0.0)


def test_alpha_beta_golden_values():
    # gamma=1, c=1: alpha is the golden-ratio conjugate.
    alpha, beta = alpha_beta(1.0, 1.0)
    assert alpha == pytest.approx(0.6180339887498949, abs=1e-15)
    assert beta == pytest.approx(0.3819660112501051, abs=1e-15)
    # interface jump identity gamma*c*(1-beta) = alpha
    assert 1.0 * 1.0 * (1.0 - beta) == pytest.approx(alpha, abs=1e-14)


def test_beta_sign_characterizes_c_infinity():
    # beta >= 0 exactly when c >= c_infinity, sampled on a c-grid
    for gamma in (0.3, 1.0, 2.5):
        ci = c_infinity(gamma)
        for c in np.linspace(0.2 * ci, 3.0 * ci, 41):
            _, beta = alpha_beta(float(c), gamma)
            if c >= ci * (1 + 1e-12):
                assert beta >= -1e-12
            elif c <= ci * (1 - 1e-12):
                assert beta < 0
        _, beta_at = alpha_beta(ci, gamma)
        assert abs(beta_at) < 1e-12


def test_mu_nu_quadratics():
    p = ModelParams(1.0, 3.0)
    c = 1.0 / SQRT2
    mu, nu = mu_nu(c, p)
    assert mu * mu + c * mu - 1.0 == pytest.approx(0.0, abs=1e-14)
    assert nu * nu - c * nu - (1.0 + p.gamma * p.k) == pytest.approx(0.0, abs=1e-13)
    assert nu == pytest.approx(NU_CINF_K3, abs=1e-14)
    # alpha and mu solve the same quadratic
    alpha, _ = alpha_beta(c, 1.0)
    assert alpha == mu


def test_dispersion_roots_frozen_values():
    p = ModelParams(1.0, 10.0)
    r = dispersion_roots(c_infinity(1.0), p)
    assert r.discriminant_class is RootClass.TWO_REAL
    assert r.lambda_fast == pytest.approx(-2.0 * SQRT2, rel=1e-12)
    assert r.lambda_slow == pytest.approx(-SQRT2, rel=1e-12)
    assert r.lambda_plus == pytest.approx(2.5 * SQRT2, rel=1e-12)

    r1 = dispersion_roots(1.0, p)
    assert r1.lambda_slow == pytest.approx(SLOW_ROOT_C1_K10, rel=1e-12)
    assert r1.lambda_fast == pytest.approx(FAST_ROOT_C1_K10, rel=1e-12)
    assert r1.lambda_plus == pytest.approx(PLUS_ROOT_C1_K10, rel=1e-12)


def test_dispersion_roots_classification():
    p = ModelParams(1.0, 10.0)
    c_lin = linear_selection_point(p).c_lin
    assert dispersion_roots(0.9 * c_lin, p).discriminant_class is RootClass.COMPLEX_PAIR
    assert dispersion_roots(c_lin, p).discriminant_class is RootClass.DOUBLE_ROOT
    assert dispersion_roots(1.1 * c_lin, p).discriminant_class is RootClass.TWO_REAL
    with pytest.raises(ValueError):
        dispersion_roots(0.9 * c_lin, p).lambda_slow  # noqa: B018
    with pytest.raises(ValueError):
        dispersion_roots(-1.0, p)


def test_roots_match_companion_matrix():
    # Cross-check against the rearranged formulation (numpy companion roots).
    for p in random_params(50, seed=7):
        for c in (0.5 * c_infinity(p.gamma), c_infinity(p.gamma), 2.0, 5.0):
            r = dispersion_roots(c, p)
            ref = np.sort_complex(np.roots([1.0, c, -(1.0 + p.gamma * p.k), -p.k / c]))
            mine = np.sort_complex(np.array([*r.negative_roots, r.lambda_plus]))
            scale = np.abs(ref).max()
            assert np.allclose(mine, ref, atol=1e-8 * scale)


def test_vieta_identities_random():
    # root sum = -c and root product = k/c across 200 random parameter draws
    for p in random_params():
        c = 1.7 * c_infinity(p.gamma)
        r = dispersion_roots(c, p)
        s = r.lambda_plus + r.negative_roots[0] + r.negative_roots[1]
        prod = r.lambda_plus * r.negative_roots[0] * r.negative_roots[1]
        assert abs(s - (-c)) <= 1e-10 * max(1.0, abs(c), abs(r.lambda_plus))
        assert abs(prod - p.k / c) <= 1e-10 * max(1.0, p.k / c)


def test_cubic_residual_of_roots_random():
    for p in random_params(100, seed=3):
        c = 1.3 * c_infinity(p.gamma)
        r = dispersion_roots(c, p)
        scale = max(abs(r.lambda_plus) ** 3, (1 + p.gamma * p.k) * abs(r.lambda_plus), p.k / c)
        assert abs(dispersion_cubic(r.lambda_plus, c, p)) <= 1e-10 * scale


def test_c_bar_inverts_dispersion_roots():
    # c_bar(lam) returns the speed whose cubic has lam as a root
    for p in random_params(60, seed=11):
        c = 1.4 * c_infinity(p.gamma)
        r = dispersion_roots(c, p)
        if r.discriminant_class is not RootClass.TWO_REAL:
            continue
        for lam in (r.lambda_fast, r.lambda_slow):
            assert c_bar(lam, p) == pytest.approx(c, rel=1e-9)


def test_c_bar_rearranged_variant():
    # quadratic-in-c rearrangement of the cubic, used only as a cross-check
    for p in random_params(60, seed=13):
        lam = -0.8 * abs(lambda_infinity(p))
        t = lam**3 - (1.0 + p.gamma * p.k) * lam
        c_ref = (-t + math.sqrt(t * t + 4.0 * lam * lam * p.k)) / (2.0 * lam * lam)
        assert c_bar(lam, p) == pytest.approx(c_ref, rel=1e-11)


def test_c_bar_domain_and_divergence():
    p = ModelParams(1.0, 10.0)
    with pytest.raises(ValueError):
        c_bar(0.5, p)
    lp = linear_selection_point(p)
    assert c_bar(lp.lambda_lin * 1e-3, p) > 100.0 * lp.c_lin
    assert c_bar(lp.lambda_lin * 1e3, p) > 100.0 * lp.c_lin


def test_linear_selection_point_frozen_values():
    lp1 = linear_selection_point(ModelParams(1.0, 1.0))
    assert lp1.lambda_lin == pytest.approx(LAM_LIN_G1K1, rel=1e-14)
    assert lp1.c_lin == pytest.approx(C_LIN_G1K1, rel=1e-14)
    lp10 = linear_selection_point(ModelParams(1.0, 10.0))
    assert lp10.lambda_lin == pytest.approx(LAM_LIN_G1K10, rel=1e-14)
    assert lp10.c_lin == pytest.approx(C_LIN_G1K10, rel=1e-14)


def test_linear_selection_point_is_tangency():
    # (c_lin, lambda_lin) satisfies both the cubic and its lambda-derivative
    for p in random_params(100, seed=5):
        lp = linear_selection_point(p)
        a = 1.0 + p.gamma * p.k
        res = dispersion_cubic(lp.lambda_lin, lp.c_lin, p)
        dres = 3.0 * lp.lambda_lin**2 + 2.0 * lp.lambda_lin * lp.c_lin - a
        scale = max(1.0, a * abs(lp.lambda_lin))
        assert abs(res) <= 1e-10 * scale
        assert abs(dres) <= 1e-9 * scale
        # and it is the minimum of c_bar on a local stencil
        for fac in (0.97, 1.03):
            assert c_bar(lp.lambda_lin * fac, p) >= lp.c_lin - 1e-12


def test_lambda_infinity_star_is_root_for_all_k():
    for p in random_params(100, seed=9):
        ci = c_infinity(p.gamma)
        ls = lambda_infinity_star(p.gamma)
        a = 1.0 + p.gamma * p.k
        scale = max(abs(ls) ** 3, a * abs(ls), p.k / ci)
        assert abs(dispersion_cubic(ls, ci, p)) <= 1e-10 * scale
        assert ls == pytest.approx(-1.0 / (p.gamma * ci), rel=1e-13)


def test_lambda_infinity_is_root_and_cbar_closes():
    for p in random_params(100, seed=15):
        ci = c_infinity(p.gamma)
        li = lambda_infinity(p)
        a = 1.0 + p.gamma * p.k
        scale = max(abs(li) ** 3, a * abs(li), p.k / ci)
        assert abs(dispersion_cubic(li, ci, p)) <= 1e-10 * scale
        assert c_bar(li, p) == pytest.approx(ci, rel=1e-9)


def test_threshold_k_zero_collapses_everything():
    # at k = k_zero all three rates coincide and c_lin = c_infinity
    for gamma in (0.25, 1.0, 4.0):
        p = ModelParams(gamma, k_zero(gamma))
        li = lambda_infinity(p)
        lp = linear_selection_point(p)
        ls = lambda_infinity_star(gamma)
        assert abs(li - lp.lambda_lin) <= 1e-10 * abs(ls)
        assert abs(lp.lambda_lin - ls) <= 1e-10 * abs(ls)
        assert abs(lp.c_lin - c_infinity(gamma)) <= 1e-12
        r = dispersion_roots(c_infinity(gamma), p)
        assert r.discriminant_class is RootClass.DOUBLE_ROOT
        assert abs(r.negative_roots[0].real - r.negative_roots[1].real) <= 1e-6


def test_minimal_speed_regimes():
    below = minimal_speed(ModelParams(1.0, 1.0))
    assert below.regime is SelectionRegime.UNRESOLVED
    assert below.exact is None
    assert below.lower == pytest.approx(C_LIN_G1K1, rel=1e-13)
    assert below.upper == pytest.approx(1.0 / SQRT2, rel=1e-14)
    assert below.lower <= below.upper

    above = minimal_speed(ModelParams(1.0, 10.0))
    assert above.regime is SelectionRegime.NONLINEAR_SELECTION
    assert above.exact == c_infinity(1.0)  # bit-for-bit same evaluation path
    assert above.lower == above.upper == above.exact

    boundary = minimal_speed(ModelParams(1.0, 3.0))
    assert boundary.regime is SelectionRegime.NONLINEAR_SELECTION


def test_minimal_speed_bracket_random():
    for p in random_params():
        b = minimal_speed(p)
        assert b.lower <= b.upper + 1e-14
        lp = linear_selection_point(p)
        assert b.lower >= lp.c_lin - 1e-12
        assert b.upper <= c_infinity(p.gamma) + 1e-14
        if b.exact is not None:
            assert b.regime is SelectionRegime.NONLINEAR_SELECTION


def test_decay_ordering_regimes():
    assert decay_ordering(ModelParams(1.0, 1.0)).relation == ">"
    assert decay_ordering(ModelParams(1.0, 3.0)).relation == "="
    assert decay_ordering(ModelParams(1.0, 10.0)).relation == "<"
    o = decay_ordering(ModelParams(1.0, 1.0))
    assert o.lambda_inf == pytest.approx(-1.0 / SQRT2, rel=1e-13)
    assert o.lambda_inf > o.lambda_lin > o.lambda_star


def test_decay_ordering_random():
    for p in random_params():
        o = decay_ordering(p)
        k0 = k_zero(p.gamma)
        if abs(p.k - k0) <= 1e-9 * max(1.0, k0):
            assert o.relation == "="
        elif p.k < k0:
            assert o.relation == ">"
        else:
            assert o.relation == "<"
