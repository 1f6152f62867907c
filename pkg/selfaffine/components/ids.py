"""
Identifiers for the selfaffine toolkit
"""

# Subcommands
PRESSURE = "pressure"
DIMAFF = "dimaff"
GIBBS = "gibbs"
DISTINCT = "distinct"
QM = "qm"
IRRED = "irred"
SEPARATION = "separation"
ATTRACTOR = "attractor"
THM2 = "thm2"
CURVE = "curve"

# Named fixtures
FIXTURE_THM1 = "thm1"
FIXTURE_THM2 = "thm2"
FIXTURE_EQ1 = "eq1-3x3"

# Output formats
OUT_JSON = "json"
OUT_CSV = "csv"

# Exit codes
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_OVERFLOW = 2

# Report envelope
SCHEMA_VERSION = 1
REPORT_SCHEMA = "schema_version"
REPORT_LIBRARY = "library_version"
REPORT_CONFIG_HASH = "config_hash"
REPORT_SEED = "seed"
REPORT_LEVEL = "level"
REPORT_TOLERANCE = "tolerance"
REPORT_COMMAND = "command"
REPORT_SYSTEM = "system"
REPORT_RESULT = "result"

# Invariant-subspace search modes
MODE_SINGLE = "single"
MODE_FINITE_UNION = "finite_union"

# Environment overrides
ENV_WORD_BUDGET = "SELFAFFINE_WORD_BUDGET"
ENV_THREADS = "SELFAFFINE_THREADS"
