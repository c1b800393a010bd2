"""Pseudo-spectral ZK/SEM solver, diagnostics and estimate probes."""

from ._core import (
    ConfigError,
    Grid2D,
    SemzkError,
    bilinear_bound,
    bump_eta,
    bump_zeta,
    cli,
    conserved_I1,
    conserved_I2,
    dyadic_weight,
    evolve,
    forward_transform,
    instability,
    inverse_transform,
    l2_norm,
    mixed_norm,
    multiplier,
    nonlinear_sem,
    nonlinear_zk,
    picard_solve,
    poisson_residual,
    potential_profile,
    project_PN,
    propagate,
    read_snapshot,
    resolve_config,
    simulate,
    sobolev_norm,
    soliton_bench,
    soliton_profile,
    solve_potential,
    suggested_dt,
    write_snapshot,
)

__version__ = "1.0.0"
