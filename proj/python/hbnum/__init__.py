"""Hierarchical Bayesian regression for SNARC and numerical distance effects."""

from ._core import (
    Bounds,
    DegenerateDesignError,
    DegenerateSampleError,
    ModelSpec,
    ParseError,
    Posterior,
    SamplerConfig,
    fit,
    hpdi,
    kde_density,
    load_trials,
    mean_ci,
    nde_spec,
    ols_fit,
    one_sample_t,
    posterior_mode,
    rhat,
    run_cli,
    savage_dickey_bf,
    simulate,
    snarc_spec,
    tail_prob,
)

__all__ = [
    "Bounds",
    "DegenerateDesignError",
    "DegenerateSampleError",
    "ModelSpec",
    "ParseError",
    "Posterior",
    "SamplerConfig",
    "fit",
    "hpdi",
    "kde_density",
    "load_trials",
    "mean_ci",
    "nde_spec",
    "ols_fit",
    "one_sample_t",
    "posterior_mode",
    "rhat",
    "run_cli",
    "savage_dickey_bf",
    "simulate",
    "snarc_spec",
    "tail_prob",
]
