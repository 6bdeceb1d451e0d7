"""
Library-wide defaults and thresholds.

Everything here can be overridden per call or through the run
configuration; these are the values used when nothing is given.
"""

from __future__ import annotations

import math

# -------------------------------------------------------------------
# Exact integer arithmetic
# -------------------------------------------------------------------
INTEGER_CAPACITY_BITS = 128

# -------------------------------------------------------------------
# Census
# -------------------------------------------------------------------
MAX_CENSUS_HORIZON = 10**9
MAX_CENSUS_BYTES = 2 * 1024**3
ORACLE_MAX_HORIZON = 10**5
CENSUS_CHUNK = 1 << 16

# -------------------------------------------------------------------
# Dimension
# -------------------------------------------------------------------
DEFAULT_BISECTION_TOL = 1e-6
MAX_BISECTION_ITER = 60
DEFAULT_RATIO_GRID_POINTS = 17
MAX_CYLINDERS = 2_000_000
AUTO_DEPTH_CYLINDERS = 200_000

# admissibility thresholds on the dimension
THRESHOLD_T1 = 1.0 - 5.0 / (math.sqrt(369.0) + 23.0)
THRESHOLD_T2 = 7.0 / 8.0
THRESHOLD_T3 = 1.0 - 1.0 / (8.0 + math.sqrt(34.0))

# -------------------------------------------------------------------
# Ensemble / factorization
# -------------------------------------------------------------------
EPS0_UPPER = 1.0 / 2500.0
DEFAULT_EPS0 = 1e-4
DEFAULT_Q0_OVERRIDE = 10.0
DEFAULT_WINDOW_RATIO = 2.0
MAX_WINDOW_RATIO = 10.0
MAX_ENSEMBLE_MEMBERS = 2_000_000
MIN_LADDER_DEPTH = 10

# -------------------------------------------------------------------
# Exponential sums
# -------------------------------------------------------------------
DEFAULT_NU = 1.5
DEFAULT_GRID = 8
DEFAULT_STABILITY_TOL = 5e-2
# arc-cover cost grows like grid * N^2
ARC_COVER_MAX_HORIZON = 2 * 10**4
EVAL_CHUNK_ELEMENTS = 4_000_000
QUADRATURE_OVERSAMPLE = 20
MAX_QUADRATURE_DOUBLINGS = 6
SUBSET_MIN_SIZE = 11
SUBSET_BRUTEFORCE_MAX = 16

# -------------------------------------------------------------------
# Output
# -------------------------------------------------------------------
FLOAT_SIGNIFICANT_DIGITS = 17
