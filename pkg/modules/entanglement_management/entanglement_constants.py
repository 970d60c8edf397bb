"""Constants for the covariance-matrix entanglement measures.

This module contains the tolerances and error messages used by the
entanglement package. Moments use hbar = 1 and momentum p = -i d/dx.
"""

# Separability threshold of the smallest partially transposed symplectic eigenvalue
VACUUM_EIGENVALUE = 0.5

# Basis order of the covariance matrix
BASIS_LABELS = ("X1", "P1", "X2", "P2")

# Tolerances
SYMMETRY_RTOL = 1e-14
DISCRIMINANT_RTOL = 1e-10
SCHMIDT_IDENTITY_RTOL = 1e-9
SCALES_CONSISTENCY_RTOL = 1e-10

# Error messages
MATRIX_SHAPE_ERROR = "covariance matrix must be 4x4"
MATRIX_SYMMETRY_ERROR = "covariance matrix must be symmetric"
NEGATIVE_DISCRIMINANT_ERROR = "partial-transpose discriminant is negative beyond tolerance"
NON_POSITIVE_EIGENVALUE_ERROR = "symplectic eigenvalues must be positive"
SCHMIDT_MISMATCH_ERROR = "z-dependent and closed-form Schmidt numbers disagree"
SCALES_MISMATCH_ERROR = "scales were not derived from these experiment parameters"
