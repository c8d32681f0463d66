"""
Lie Workbench - Centralized Configuration Module

Loads resource caps and operational settings from environment variables with
sensible defaults. Caps bound the size of a run; they never change results.
"""

import json
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# ============================================================================
# RESOURCE CAPS
# ============================================================================

# Admissible colored partitions per degree
MAX_PARTITIONS = int(os.getenv('WORKBENCH_MAX_PARTITIONS', '200000'))

# PBW words per degree slice of the vacuum module
MAX_SLICE_DIM = int(os.getenv('WORKBENCH_MAX_SLICE_DIM', '60000'))

# Candidate weights per degree in the character oracle
MAX_WEIGHTS = int(os.getenv('WORKBENCH_MAX_WEIGHTS', '200000'))

# ============================================================================
# EXECUTION
# ============================================================================

N_JOBS = int(os.getenv('WORKBENCH_N_JOBS', '1'))
LOG_LEVEL = os.getenv('WORKBENCH_LOG_LEVEL', 'INFO').upper()

# ============================================================================
# PROPERTY SUITES
# ============================================================================

PROPERTY_SAMPLES = int(os.getenv('WORKBENCH_PROPERTY_SAMPLES', '10000'))
DEFAULT_SEED = int(os.getenv('WORKBENCH_DEFAULT_SEED', '20240601'))

# ============================================================================
# FILE PATHS & DIRECTORIES
# ============================================================================

OUTPUT_DIR = os.getenv('WORKBENCH_OUTPUT_DIR', 'reports')
DEFAULT_CONFIG_PATH = os.getenv(
    'WORKBENCH_CONFIG_FILE',
    str(Path(__file__).parent / 'config' / 'default_config.json'),
)


def load_default_config(path=None):
    """Read the JSON run configuration (grids, logging and output sections)."""
    with open(path or DEFAULT_CONFIG_PATH, 'r', encoding='utf-8') as f:
        return json.load(f)


def validate_resource_caps(cap_keys=('MAX_PARTITIONS', 'MAX_SLICE_DIM', 'MAX_WEIGHTS', 'N_JOBS')):
    """
    Validate that resource caps are positive integers.

    Args:
        cap_keys: Configuration variable names to check

    Raises:
        ValueError: If any cap is missing or not positive
    """
    missing = []
    invalid = []

    for key in cap_keys:
        value = globals().get(key)
        if value is None:
            missing.append(key)
        elif not isinstance(value, int) or value <= 0:
            invalid.append(f"{key}={value}")

    if missing or invalid:
        error_msg = "Configuration validation failed:\n"
        if missing:
            error_msg += f"Missing configuration: {', '.join(missing)}\n"
        if invalid:
            error_msg += f"Caps must be positive integers: {', '.join(invalid)}\n"
        error_msg += "\nPlease update your .env file (WORKBENCH_* variables)."
        raise ValueError(error_msg)


def ensure_directories(*extra):
    """Create the reports directory and any extra ones if they don't exist."""
    directories = [
        OUTPUT_DIR,
        *extra,
    ]

    for directory in directories:
        Path(directory).mkdir(parents=True, exist_ok=True)
