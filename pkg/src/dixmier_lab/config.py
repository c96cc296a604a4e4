"""Tolerance constants shared across the package.

Everything is binary64; the values below are the only place where numerical
thresholds are set.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # Quadrature vs Beta closed form for radial moments.
    quadrature_moment: float = 1e-12
    # Gram entries vs brute-force quadrature.
    gram_oracle: float = 1e-8
    # Closed-form monomial spectrum vs banded eigensolver.
    monomial_vs_eigensolver: float = 1e-10
    reproducing_kernel: float = 1e-8
    projection_orthogonality: float = 1e-10
    mobius_invariance: float = 1e-6
    parseval: float = 1e-12
    # Eigenvalues below -psd_slack * max eigenvalue flag a non-PSD Gram.
    psd_slack: float = 1e-10
    # Sandwich slack for the e / e^-1 window comparisons.
    sandwich_slack: float = 0.05
    # RMS (in log space) above which a power-law tail fit is not trusted.
    tail_fit_rms: float = 0.01
    # Estimator agreement, relative.
    estimator_agreement: float = 0.05


TOL = Tolerances()
