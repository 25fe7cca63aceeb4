"""Travelling waves of a bacterial tissue-degradation reaction-diffusion model.

Library layout:

- `dispersion`: model parameters and all closed-form speed/decay analysis.
- `profiles`: travelling-wave profiles (reduced-system shooting, collocation
  boundary-value solves, sharp-interface closed form), profile diagnostics
  (residuals, decay fits, a-priori bounds, mass identity, ratio functionals),
  and CSV serialization.
- `pdesim`: time-dependent front simulation, front tracking, speed
  estimation, and the radial supersolution check.
- `experiments`: reproducible parameter studies built on the above.
- `cli`: command-line entry points (`degwave dispersion|profile|simulate|study`).
"""

from .dispersion import (
    DecayOrdering,
    DispersionAnalysis,
    LinearSelectionPoint,
    ModelParams,
    RootClass,
    SelectionRegime,
    SpeedBounds,
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
from .profiles import (
    BoundsReport,
    Component,
    DecayFit,
    Method,
    ShootingConfig,
    Side,
    StefanWave,
    VolpertReport,
    WaveProfile,
    check_apriori_bounds,
    fit_decay_rate,
    full_tw_residual,
    load_profile,
    mass_identity,
    nearest_left_rate,
    save_profile,
    shoot_reduced_wave,
    stefan_wave,
    trial_pair,
    volpert_from_profile,
    volpert_functionals,
)
from ._collocation import BvpConfig, solve_tw_bvp, solve_tw_bvp_eps

__version__ = "0.1.0"
