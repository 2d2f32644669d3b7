"""Pseudospectral laboratory for i u_t + P(D) u = lambda |u|^(2 sigma) u."""

from ._mdnls import (
    ConfigError,
    Grid,
    ScalingPlan,
    Symbol,
    compute_scaling,
    evolve,
    free_propagate,
    inverse_transform,
    lebesgue_norm,
    make_symbol,
    parse_symbol,
    resolve_config,
    run,
    run_cli,
    sobolev_norm,
    symbol_keys,
    transform,
)

__all__ = [
    "ConfigError",
    "Grid",
    "ScalingPlan",
    "Symbol",
    "compute_scaling",
    "evolve",
    "free_propagate",
    "inverse_transform",
    "lebesgue_norm",
    "make_symbol",
    "parse_symbol",
    "resolve_config",
    "run",
    "run_cli",
    "sobolev_norm",
    "symbol_keys",
    "transform",
]
