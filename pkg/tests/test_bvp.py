"""Collocation boundary-value solves: convergence, rates, and error paths."""

import numpy as np
import pytest

from degwave import (
    BvpConfig,
    ModelParams,
    c_infinity,
    dispersion_roots,
    fit_decay_rate,
    linear_selection_point,
    mass_identity,
    mu_nu,
    solve_tw_bvp,
    solve_tw_bvp_eps,
)
from degwave.errors import InvalidSpeed, NoConvergence
from degwave.profiles import Component, Side, full_tw_residual, shoot_reduced_wave

GAMMA = 1.0
CI = c_infinity(GAMMA)


def sup_distance(prof, other):
    """Sup distance of two profiles on the intersection of their grids."""
    lo = max(prof.x[0], other.x[0])
    hi = min(prof.x[-1], other.x[-1])
    xs = other.x[(other.x >= lo) & (other.x <= hi)]
    du = np.interp(xs, prof.x, prof.u) - np.interp(xs, other.x, other.u)
    dw = np.interp(xs, prof.x, prof.w) - np.interp(xs, other.x, other.w)
    return float(np.max(np.abs(du))), float(np.max(np.abs(dw)))


# ---------------------------------------------------------------------------
# cross-validation against the independent shooting construction


@pytest.mark.parametrize("k", [5.0, 10.0, 50.0])
def test_matches_shooting_at_minimal_speed(k):
    # two unrelated discretizations of the same wave; observed distances are
    # a few 1e-6 or better, asserted at the contract tolerance
    prof = solve_tw_bvp(CI, ModelParams(gamma=GAMMA, k=k))
    sh = shoot_reduced_wave(ModelParams(gamma=GAMMA, k=k))
    du, dw = sup_distance(prof, sh)
    assert du < 1e-4
    assert dw < 1e-4


def test_full_residual_small(bvp_c1_k10):
    res_u, res_w = full_tw_residual(bvp_c1_k10)
    assert res_u < 1e-6
    # the w evaluator re-differences the chain-form solution, so its own
    # O(h^2) truncation error dominates; observed ~1e-5 at h=1e-3
    assert res_w < 1e-4


def test_phase_normalization(bvp_c1_k10):
    i0 = bvp_c1_k10.center_index()
    assert bvp_c1_k10.x[i0] == 0.0
    assert abs(bvp_c1_k10.u[i0] - 0.5) < 1e-10


# ---------------------------------------------------------------------------
# tail decay rates against the dispersion roots


def test_plus_infinity_rate_matches_slow_root(bvp_c1_k10):
    fit = fit_decay_rate(bvp_c1_k10, Side.PLUS_INFINITY, Component.U)
    ref = dispersion_roots(1.0, ModelParams(gamma=GAMMA, k=10.0)).lambda_slow
    assert abs(fit.rate - ref) / abs(ref) < 0.02  # observed ~2e-4


def test_minimal_speed_wave_decays_at_fast_root(bvp_ci_k10):
    # k=10 > k0=3: the selected wave is pushed and decays at the fast root
    fit = fit_decay_rate(bvp_ci_k10, Side.PLUS_INFINITY, Component.U)
    roots = dispersion_roots(CI, ModelParams(gamma=GAMMA, k=10.0))
    assert abs(fit.rate - roots.lambda_fast) / abs(roots.lambda_fast) < 0.02
    # and is well separated from the slow root
    assert abs(fit.rate - roots.lambda_slow) > 0.5


def test_rates_nondecreasing_in_c(bvp_ci_k10, bvp_c1_k10):
    # faster waves decay slower at +infinity (rate increases toward 0)
    mid = solve_tw_bvp(0.85, ModelParams(gamma=GAMMA, k=10.0))
    rates = [
        fit_decay_rate(p, Side.PLUS_INFINITY, Component.U).rate
        for p in (bvp_ci_k10, mid, bvp_c1_k10)
    ]
    assert rates[0] <= rates[1] + 1e-6
    assert rates[1] <= rates[2] + 1e-6


def test_left_rate_tracks_mu_and_decreases_in_c(bvp_c1_k10):
    # 1-u at -infinity decays at mu(c), which is decreasing in c
    rates = []
    for prof in (
        bvp_c1_k10,
        solve_tw_bvp(1.2, ModelParams(gamma=GAMMA, k=10.0)),
    ):
        fit = fit_decay_rate(prof, Side.MINUS_INFINITY, Component.ONE_MINUS_U)
        mu, _ = mu_nu(prof.c, prof.params)
        assert abs(fit.rate - mu) / mu < 0.02
        rates.append(fit.rate)
    assert rates[0] > rates[1]
    # at c=1 the rate equals (sqrt(5)-1)/2 exactly
    assert abs(rates[0] - 0.6180339887) < 0.02 * 0.618


# ---------------------------------------------------------------------------
# speed gating and failure modes


@pytest.mark.parametrize("c", [0.5, 0.0, -1.0])
def test_speeds_below_proven_bound_rejected(c):
    with pytest.raises(InvalidSpeed):
        solve_tw_bvp(c, ModelParams(gamma=GAMMA, k=10.0))


def test_below_conjectured_minimum_is_attempted():
    # k=1 < k0: speeds in [c_lin, c_infinity) are above the proven lower
    # bound, so the solver must try them; stagnation there is reported as
    # NoConvergence, never as a precondition violation
    params = ModelParams(gamma=GAMMA, k=1.0)
    sel = linear_selection_point(params)
    c = 0.5 * (sel.c_lin + CI)
    cfg = BvpConfig(L=20.0, h=5e-3, max_iter=12)
    try:
        prof = solve_tw_bvp(c, params, cfg)
    except NoConvergence:
        pass
    else:
        assert abs(prof.c - c) < 1e-12


# ---------------------------------------------------------------------------
# mass identity on collocation waves


def test_mass_identity_minimal_speed(bvp_ci_k10):
    assert abs(mass_identity(bvp_ci_k10) - CI / 10.0) / (CI / 10.0) < 0.005


def test_mass_identity_k100():
    prof = solve_tw_bvp(1.0, ModelParams(gamma=GAMMA, k=100.0))
    assert abs(mass_identity(prof) - 0.01) / 0.01 < 0.005


# ---------------------------------------------------------------------------
# continuation in k above the ladder anchor


def test_large_k_ladder_path():
    prof = solve_tw_bvp(1.0, ModelParams(gamma=GAMMA, k=150.0))
    assert abs(mass_identity(prof) * 150.0 - 1.0) < 0.01
    res_u, _ = full_tw_residual(prof)
    assert res_u < 1e-5


# ---------------------------------------------------------------------------
# the eps-regularized system


def test_eps_profiles_converge_to_limit(bvp_c1_k10):
    params = ModelParams(gamma=GAMMA, k=10.0)
    cfg = BvpConfig(seed=bvp_c1_k10)
    dists = []
    for eps in (0.1, 0.05, 0.01):
        prof = solve_tw_bvp_eps(1.0, eps, params, cfg)
        du, dw = sup_distance(prof, bvp_c1_k10)
        dists.append(max(du, dw))
    assert dists[0] > dists[1] > dists[2]
    assert dists[2] < 0.05  # observed ~0.011


def test_eps_zero_rejected():
    with pytest.raises(ValueError):
        solve_tw_bvp_eps(1.0, 0.0, ModelParams(gamma=GAMMA, k=10.0))


def test_eps_above_admissible_range_rejected():
    with pytest.raises(ValueError):
        ModelParams(gamma=GAMMA, k=10.0, eps=0.5)
    with pytest.raises(ValueError):
        solve_tw_bvp_eps(1.0, 0.6, ModelParams(gamma=GAMMA, k=10.0))


# ---------------------------------------------------------------------------
# configuration plumbing


def test_explicit_domain_and_step():
    cfg = BvpConfig(L=25.0, h=2e-3)
    prof = solve_tw_bvp(CI, ModelParams(gamma=GAMMA, k=10.0), cfg)
    assert prof.x[0] == pytest.approx(-25.0, abs=2e-3)
    assert prof.x[-1] == pytest.approx(25.0, abs=2e-3)
    assert np.allclose(np.diff(prof.x), 2e-3)


def test_seeded_solve_converges_fast(bvp_c1_k10):
    prof = solve_tw_bvp(1.05, ModelParams(gamma=GAMMA, k=10.0), BvpConfig(seed=bvp_c1_k10))
    assert abs(prof.c - 1.05) == 0.0
    res_u, _ = full_tw_residual(prof)
    assert res_u < 1e-6
