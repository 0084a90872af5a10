"""Numerical tolerances and defaults shared across the package."""

# eigenvalues with |mu| below this are treated as exact zeros
ZERO_SNAP = 1e-8
# slack allowed when comparing a measured spectrum against a proved bound
BOUND_TOL = 1e-8
# relative residual allowed in the cochain identities
IDENTITY_RTOL = 1e-8
# relative residual allowed in weight balance
BALANCE_RTOL = 1e-10
# Jacobi stops once off-diagonal Frobenius mass drops below this fraction of the total
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 64
# asymmetry allowed after conjugating by square-root weights
SYMMETRY_TOL = 1e-8

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 16
