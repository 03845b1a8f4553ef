"""Profile-based shell reconstruction of large-time wave fields.

The heavy lifting lives in the C++ extension ``shellrec._core``; this package
re-exports its public surface.
"""

from ._core import (
    ConfigError,
    ConvergenceRecord,
    DispersionSpec,
    FourierField,
    Grid1D,
    ProfileFamily,
    Regularizer,
    ResolutionError,
    ShellField,
    SphereQuadrature,
    a_term,
    evolve,
    fresnel_oracle,
    g_term,
    oscillatory_integral,
    pointwise_convergence_study,
    qhat_polar,
    reconstruct,
    reference_solution,
    restrict_profiles,
    restrict_profiles_regularized,
    shell,
    stationary_phase_functional,
)

__all__ = [
    "ConfigError",
    "ConvergenceRecord",
    "DispersionSpec",
    "FourierField",
    "Grid1D",
    "ProfileFamily",
    "Regularizer",
    "ResolutionError",
    "ShellField",
    "SphereQuadrature",
    "a_term",
    "evolve",
    "fresnel_oracle",
    "g_term",
    "oscillatory_integral",
    "pointwise_convergence_study",
    "qhat_polar",
    "reconstruct",
    "reference_solution",
    "restrict_profiles",
    "restrict_profiles_regularized",
    "shell",
    "stationary_phase_functional",
]

__version__ = "0.1.0"
