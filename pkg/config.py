"""
Configuration settings for the magmatic quotient workbench
"""

import os

from dotenv import load_dotenv

# Base directory
BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# Overrides from a local .env file, if present
load_dotenv(os.path.join(BASE_DIR, ".env"))


def _env_int(name, default):
    """Read an integer setting from the environment."""
    value = os.environ.get(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {value!r}")


# =============================================================================
# Storage
# =============================================================================
DATA_DIR = os.path.join(BASE_DIR, "data")
GOLDEN_DIR = os.path.join(BASE_DIR, "golden")
REPORTS_DIR = os.path.join(DATA_DIR, "reports")

# =============================================================================
# Enumeration Budgets
# =============================================================================
MAX_ENUM_ARITY = _env_int("MAGQUOT_MAX_ENUM_ARITY", 13)  # Largest arity enumerated exhaustively
MAX_LINEAR_ARITY = _env_int("MAGQUOT_MAX_LINEAR_ARITY", 8)  # Largest arity for ideal spaces
DIRECT_FILTER_MAX_ARITY = 10  # Above this, normal forms are counted by the automaton

# =============================================================================
# Completion Settings
# =============================================================================
COMPLETION_MAX_ARITY = _env_int("MAGQUOT_COMPLETION_MAX_ARITY", 14)
COMPLETION_MAX_STEPS = _env_int("MAGQUOT_COMPLETION_MAX_STEPS", 10000)  # Max added rules
BACKTRACK_MAX_NODES = _env_int("MAGQUOT_BACKTRACK_MAX_NODES", 2000)  # Search nodes before giving up
CERTIFY_EXHAUSTIVE_MAX_DEGREE = 10  # Exhaustive branching scan stops here

# =============================================================================
# Verification Settings
# =============================================================================
RANDOM_SEED = _env_int("MAGQUOT_RANDOM_SEED", 20240601)
RANDOM_GENERATOR_PAIRS = 20  # Seeded generator pairs in the Grassmann suite
REALIZATION_CHECK_ARITY = 8  # Total arity for exhaustive realization checks
RANDOM_AXIOM_SAMPLES = _env_int("MAGQUOT_RANDOM_AXIOM_SAMPLES", 10000)  # Random operad-axiom triples
ORACLE_CHECK_ARITY = _env_int("MAGQUOT_ORACLE_CHECK_ARITY", 12)  # Oracle dimensions in verify suites
TABLE_CHECK_ARITY = 10  # Rows of the CAs dimension table checked by the oracle
STABLE_REGIME_MAX_ARITY = 25  # CAs(3) normal forms n + 3 checked up to here
ABSORBING_CHECK_ARITY = 14  # Type-B absorption checked for results up to here
LINEAR_CHECK_ARITY = 7  # Grassmann check on the As / AAs pair

# =============================================================================
# CLI Settings
# =============================================================================
DEFAULT_N_MAX = _env_int("MAGQUOT_DEFAULT_N_MAX", 10)

# Exit codes
EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_INPUT_ERROR = 2
EXIT_VERIFY_FAILED = 3
