"""Shared fixtures: expensive wave constructions reused across test modules."""

import pytest

from degwave import ModelParams, c_infinity, solve_tw_bvp
from degwave.profiles import shoot_reduced_wave


@pytest.fixture(scope="session")
def wave_g1_k10():
    return shoot_reduced_wave(ModelParams(gamma=1.0, k=10.0))


@pytest.fixture(scope="session")
def wave_g1_k1():
    return shoot_reduced_wave(ModelParams(gamma=1.0, k=1.0))


@pytest.fixture(scope="session")
def bvp_ci_k10():
    return solve_tw_bvp(c_infinity(1.0), ModelParams(gamma=1.0, k=10.0))


@pytest.fixture(scope="session")
def bvp_c1_k10():
    return solve_tw_bvp(1.0, ModelParams(gamma=1.0, k=10.0))
