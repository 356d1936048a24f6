"""
Runtime settings: numeric tolerances, enumeration limits and worker counts.

Defaults live in ``pivotal.data.types.constants``; each one can be overridden
through a ``PIVOTAL_*`` environment variable.
"""

import os
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Optional

from cerberus import Validator

from pivotal.data.types import constants
from pivotal.errors import InvalidDocument

ENV_PREFIX = "PIVOTAL_"

SETTINGS_SCHEMA = {
    "sum_tolerance": {"type": "float", "coerce": float, "min": 0.0, "max": 1e-3},
    "bound_tolerance": {"type": "float", "coerce": float, "min": 0.0, "max": 1e-3},
    "snap_tolerance": {"type": "float", "coerce": float, "min": 0.0, "max": 1e-6},
    "enumeration_limit": {"type": "integer", "coerce": int, "min": 1, "max": 24},
    "jobs": {"type": "integer", "coerce": int, "min": 1},
    "log_level": {
        "type": "string",
        "coerce": str.upper,
        "allowed": ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
    },
}


@dataclass(frozen=True)
class Settings:
    """
    Tolerances and limits shared by every module.

    Attributes:
        sum_tolerance: Absolute slack on Σw = 1 and Σx = k.
        bound_tolerance: Slack on the per-weight bound wⁱ ≤ 1/k.
        snap_tolerance: Distance from 0 or 1 under which a coordinate is decided.
        enumeration_limit: Largest n accepted by the exact enumeration oracle.
        jobs: Default number of Monte Carlo worker processes.
        log_level: Root log level used by the command-line tool.
    """

    sum_tolerance: float = constants.SUM_TOLERANCE
    bound_tolerance: float = constants.BOUND_TOLERANCE
    snap_tolerance: float = constants.SNAP_TOLERANCE
    enumeration_limit: int = constants.ENUMERATION_LIMIT
    jobs: int = constants.DEFAULT_JOBS
    log_level: str = constants.DEFAULT_LOG_LEVEL

    @staticmethod
    def from_env(env: Optional[Mapping[str, str]] = None) -> "Settings":
        """
        Builds settings from ``PIVOTAL_*`` variables of the given mapping.

        Args:
            env: The environment to read, ``os.environ`` when omitted.

        Returns: The validated settings.
        """
        env = os.environ if env is None else env
        document: dict[str, Any] = {}
        for key in SETTINGS_SCHEMA:
            raw = env.get(f"{ENV_PREFIX}{key.upper()}")
            if raw is not None and raw != "":
                document[key] = raw

        v = Validator(SETTINGS_SCHEMA)
        if not v.validate(document):
            raise InvalidDocument(f"invalid {ENV_PREFIX}* settings: {v.errors}")
        return Settings(**v.document)


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return Settings.from_env()
