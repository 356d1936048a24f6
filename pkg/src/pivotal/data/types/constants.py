SUM_TOLERANCE = 1e-9
BOUND_TOLERANCE = 1e-12
SNAP_TOLERANCE = 1e-12

ENUMERATION_LIMIT = 14
COMPARISON_LIMIT = 10

SIGMA_RADIUS = 4.0
MIN_MC_TRIALS = 1000

DEFAULT_JOBS = 1
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_PRECISION = 6

MAX_SEED = 2**64
