"""
Engine Configuration Module

Load run settings from config.env (and .env overrides).
"""

import os
from dotenv import load_dotenv

# Load config.env first, then .env (so .env can override if needed)
load_dotenv('config.env')
load_dotenv('.env', override=True)

_TRUTHY = {'1', 'true', 'yes', 'on'}


def _get_int(key, default):
    raw = os.getenv(key, '').strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{key} must be an integer, got {raw!r}")


def get_default_seed():
    """Get the default seed for generators, bench and case search"""
    return _get_int('BROOKS_SEED', 0)


def get_debug_checks():
    """Validate after every mutating proof step when enabled"""
    return os.getenv('BROOKS_DEBUG_CHECKS', 'false').strip().lower() in _TRUTHY


def get_log_level():
    """Get log level name for the CLI"""
    return os.getenv('BROOKS_LOG_LEVEL', 'WARNING').strip().upper() or 'WARNING'


def get_oracle_budget():
    """Get node budget for the exact oracle (None = unlimited)"""
    budget = _get_int('BROOKS_ORACLE_BUDGET', 0)
    return budget if budget > 0 else None


def get_case_search_budget():
    """Get attempt budget for targeted case instance search"""
    return _get_int('BROOKS_CASE_SEARCH_BUDGET', 400)


def get_regular_retries():
    """Get retry cap of the pairing model"""
    return _get_int('BROOKS_REGULAR_RETRIES', 1000)


# Export commonly used values
DEFAULT_SEED = get_default_seed()
DEBUG_CHECKS = get_debug_checks()
LOG_LEVEL = get_log_level()
ORACLE_BUDGET = get_oracle_budget()
CASE_SEARCH_BUDGET = get_case_search_budget()
REGULAR_RETRIES = get_regular_retries()
