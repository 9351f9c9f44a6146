"""
Configuration settings for gapdex
"""

# Seeds
DEFAULT_SEED = 0
SEED_ENV_VAR = "GAPDEX_SEED"

# Simulation defaults
DEFAULT_N = 1000
DEFAULT_REPS = 10000
DEFAULT_GRID = "-2:4:0.5"
DEFAULT_WORKERS = 1
REPLICATE_CHUNK_SIZE = 500

# Numerical settings
TIE_RTOL = 1e-12  # components this close to the max count as tied
TRUNCATED_ASYMPTOTIC_SWITCH = 20.0  # above this, moments come from the scaled excess density
QUAD_LIMIT = 200

# Verification settings
LEMMA_SLACK_SE = 3.0
MAX_EXCLUSION_FRACTION = 0.001
KS_CONFIDENCE = 0.99
HALF_LIMIT_TOLERANCE = 0.03
HALF_LIMIT_POINTS = (-1.0, 0.0, 1.0, 2.0)
SKEWNESS_LIMIT = 2.0
SKEWNESS_LIMIT_TOLERANCE = 0.06  # skewness(10) is about 1.947
SKEWNESS_LIMIT_POINT = 10.0

# Max-spacing scaling
MAX_SPACING_MIN_N = 100
MAX_SPACING_TOP_J = 10
MAX_SPACING_KS_THRESHOLD = 0.15
MAX_SPACING_TREND_START = 1000

# Inequality grids
MILLS_GRID_POINTS = 200
MILLS_GRID_LOW = 1e-3
MILLS_GRID_HIGH = 12.0
RATIO_GRID_X = 60
RATIO_GRID_EPS = 30
RATIO_X_MAX = 6.0
RATIO_EPS_MAX = 3.0
MONOTONICITY_EPS = (0.25, 1.0, 4.0)
MONOTONICITY_POINTS = 400

# Power check
POWER_SEPARATION = 6.0
POWER_ALPHA = 0.05

# Per-check defaults for `verify` when --n/--reps/--sizes are not given
LEMMA31_EPS = (0.5, 1.0, 2.0)
LEMMA31_N = 1000
LEMMA31_REPS = 10000
HALF_LIMIT_N = 2000
HALF_LIMIT_REPS = 20000
UNIFORM_RATIO_N = 50
UNIFORM_RATIO_REPS = 200
MAX_SPACING_SIZES = (1000, 10000)
MAX_SPACING_REPS = 2000
REMAINDER_SIZES = (100, 1000, 10000)
REMAINDER_REPS = 1000
POWER_N = 500
POWER_REPS = 200

# Projection scan
DEFAULT_DIRECTIONS = 100

# Output
TOP_COMPONENTS = 5

# Exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

