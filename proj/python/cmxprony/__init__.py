"""Prony fits and connected-moments expansions from exact Hamiltonian moments."""

from fractions import Fraction

from . import _cmxprony
from ._cmxprony import (
    ConfigError,
    DegenerateProblem,
    SolverError,
    catalog_names,
    cmx,
    exact_C2_ho,
    exact_E_ho,
    prony,
    run,
    zfit,
)

__all__ = [
    "ConfigError",
    "DegenerateProblem",
    "SolverError",
    "catalog_names",
    "cmx",
    "connected_moments",
    "exact_C2_ho",
    "exact_E_ho",
    "moments",
    "prony",
    "run",
    "zfit",
]


def moments(model, highest=13):
    """Exact moments mu_0..mu_J as Fractions."""
    return [Fraction(v) for v in _cmxprony.moments(model, highest)]


def connected_moments(model, highest=13):
    """Exact connected moments I_1..I_J as Fractions."""
    return [Fraction(v) for v in _cmxprony.connected_moments(model, highest)]
