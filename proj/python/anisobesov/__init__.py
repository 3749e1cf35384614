"""Anisotropic dyadic frequency layering, layerwise smoothness norms and
band-limited approximation on regular grids.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    Grid,
    Profile,
    block_norm,
    definition_norm,
    feasible_layer_count,
    forward_transform,
    fourier_section,
    inverse_transform,
    layer_decompose,
    load_field,
    lower_bound_witness,
    lp_norm,
    modulus_of_smoothness,
    nikolskii_check,
    random_band_limited,
    save_field,
    shell_field,
    shell_indicator_field,
    sinc_lp_constant,
    spectral_derivative,
    theoretical_rate,
    truncation_error,
)

__all__ = [
    "Grid",
    "Profile",
    "block_norm",
    "definition_norm",
    "feasible_layer_count",
    "forward_transform",
    "fourier_section",
    "inverse_transform",
    "layer_decompose",
    "load_field",
    "lower_bound_witness",
    "lp_norm",
    "modulus_of_smoothness",
    "nikolskii_check",
    "random_band_limited",
    "save_field",
    "shell_field",
    "shell_indicator_field",
    "sinc_lp_constant",
    "spectral_derivative",
    "theoretical_rate",
    "truncation_error",
]

__version__ = "0.1.0"
