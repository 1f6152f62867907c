"""
Tolerances, budgets and worker defaults.

Values here are module constants; the two environment variables named in
`ids` override the enumeration budget and the default worker count.
"""

import logging
import os

from . import ids

logger = logging.getLogger(__name__)

# Comparisons
RELATIVE_TOL = 1e-9
INVERTIBILITY_TOL = 1e-12
WITNESS_TOL = 1e-6
ANGLE_TOL = 1e-8
EIGEN_CLUSTER_TOL = 1e-6

# Word products
DEFAULT_WORD_BUDGET = 10**8
PRODUCT_NORM_FLOOR = 1e-300
PRODUCT_NORM_CEILING = 1e300

# Level sums are split into subtrees below a prefix of this many words at
# most; the split depends on (N, n) only so sums are worker-independent.
PARTITION_TARGET = 256

# Attractor sampling draws words in fixed-size chunks, one child seed each
SAMPLE_CHUNK = 4096


def _int_from_env(name, default):
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(float(raw))
    except ValueError:
        logger.warning("ignoring %s=%r (not a number)", name, raw)
        return default
    if value < 1:
        logger.warning("ignoring %s=%r (must be positive)", name, raw)
        return default
    return value


def word_budget(override=None):
    """Enumeration budget: explicit override, then environment, then default."""
    if override is not None:
        return int(override)
    return _int_from_env(ids.ENV_WORD_BUDGET, DEFAULT_WORD_BUDGET)


def thread_count(override=None):
    """Worker count: explicit override, then environment, then CPU count."""
    if override is not None:
        return max(1, int(override))
    return _int_from_env(ids.ENV_THREADS, os.cpu_count() or 1)
