from config.environment import env_float, env_int

# Sampling plan defaults for the difference-quotient engine
DEFAULT_T0 = env_float("T0", 1e-2)
DEFAULT_RATIO = env_float("RATIO", 0.5)
DEFAULT_COUNT = env_int("COUNT", 32)
DEFAULT_LIMIT_TOL = env_float("LIMIT_TOL", 1e-5)
DEFAULT_CLUSTER_TOL = env_float("CLUSTER_TOL", 1e-4)

# Dot products below this are treated as zero by the orthogonality test
ORTHOGONALITY_TOL = env_float("ORTHOGONALITY_TOL", 1e-12)

# Interval endpoints compared against reference values (replay corpus)
COMPARISON_TOL = env_float("COMPARISON_TOL", 2e-4)

# Thread pool size for gradient fan-out; 1 keeps it sequential
GRADIENT_WORKERS = env_int("GRADIENT_WORKERS", 4)

