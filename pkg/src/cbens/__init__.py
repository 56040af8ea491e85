"""Circular-type beta ensembles via coefficient sequences.

Samples circular, real-orthogonal and circular-Jacobi beta ensembles through
their (modified) Verblunsky coefficients, computes spectra of rank-one
truncations and multiplicative perturbations of the associated five-diagonal
unitary matrices, simulates the limiting random analytic functions by SDE
integration, and checks the finite-size identities and beta=2 determinantal
predictions against exact oracles and Monte Carlo tests.
"""

__version__ = "0.1.0"

from . import cli, cmv, coeffs, dirac, limits, roots, sampling, stats, verify

__all__ = [
    "cli",
    "cmv",
    "coeffs",
    "dirac",
    "limits",
    "roots",
    "sampling",
    "stats",
    "verify",
    "__version__",
]
