"""
Brown Measure Toolkit - numerical Brown measure of free multiplicative Brownian motion.

Computes the domain Sigma_t, the density of the Brown measure of b_t, its
relation to Biane's measure nu_t on the unit circle, the Hamilton-Jacobi
characteristics behind both, and compares them with simulated GL(N) and U(N)
Brownian motions.
"""

__version__ = "0.1.0"

from .errors import BrownMeasureError, DomainError

__all__ = ["BrownMeasureError", "DomainError", "__version__"]
