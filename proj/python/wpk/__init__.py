from ._wpk import (
    ConfigError,
    Quaternion,
    ResonanceError,
    command_names,
    evolve_A,
    exp_j,
    flat_hilbert,
    fractional_derivative,
    hamiltonian,
    hnls_coefficients,
    kernel_values,
    mass,
    mode_filter,
    resonance_denominator,
    run,
    triple_product_pair,
)

__all__ = [
    "ConfigError",
    "Quaternion",
    "ResonanceError",
    "command_names",
    "evolve_A",
    "exp_j",
    "flat_hilbert",
    "fractional_derivative",
    "hamiltonian",
    "hnls_coefficients",
    "kernel_values",
    "mass",
    "mode_filter",
    "resonance_denominator",
    "run",
    "triple_product_pair",
]
