"""Central tolerance constants.

Single source of truth for the numerical thresholds used by the library and
its test suite: structural validation (Hermiticity, trace, positivity) at
1e-9, spectral reconstruction at 1e-9, unitarity at 1e-10, and exact-value
assertions at 1e-12.
"""

STRUCTURAL = 1e-9
RECONSTRUCTION = 1e-9
UNITARY = 1e-10
EXACT = 1e-12

# Cyclic Jacobi eigensolver: relative off-diagonal norm target and sweep cap.
JACOBI_OFFDIAG = 1e-12
JACOBI_MAX_SWEEPS = 100

# Gram-Schmidt completion: orthonormality check and dependent-candidate skip.
ORTHONORMAL = 1e-10
COMPLETION_SKIP = 1e-8

# Derivative-free search: simplex collapse threshold and passivity default.
SIMPLEX_DIAMETER = 1e-8
PASSIVE_DEFAULT = 1e-9

# Search harness reporting: controls must reach CONTROL_REACHED before a
# nonzero search floor (NOGO_FLOOR) is reported as evidence.
CONTROL_REACHED = 1e-6
NOGO_FLOOR = 1e-2
