"""Anisotropic XY block Hamiltonian: spectra, Gibbs vorticity fields and degrees."""

import json

from ._core import (
    DEFAULT_PHASE,
    CalibrationError,
    Lattice,
    __version__,
    analytic_degree,
    contour_degree,
    eigenvalues,
    hamiltonian,
    presets,
    vorticity,
)
from ._core import run as _run


def run(command, config=None, out=""):
    """Run a command with a config dict (or preset name) and return the parsed summary."""
    if config is None:
        config = {}
    elif isinstance(config, str):
        config = {"preset": config}
    return json.loads(_run(command, json.dumps(config), str(out)))


__all__ = [
    "DEFAULT_PHASE",
    "CalibrationError",
    "Lattice",
    "__version__",
    "analytic_degree",
    "contour_degree",
    "eigenvalues",
    "hamiltonian",
    "presets",
    "run",
    "vorticity",
]
