"""Check registry for the verify suite."""

from .check_config import CheckConfig, CheckRunner
from .check_01 import CONFIG as CHECK_01
from .check_02 import CONFIG as CHECK_02
from .check_03 import CONFIG as CHECK_03
from .check_04 import CONFIG as CHECK_04
from .check_05 import CONFIG as CHECK_05
from .check_06 import CONFIG as CHECK_06
from .check_07 import CONFIG as CHECK_07
from .check_08 import CONFIG as CHECK_08
from .check_09 import CONFIG as CHECK_09
from .check_10 import CONFIG as CHECK_10

# Check registry mapping check IDs to configurations
CHECK_REGISTRY: dict[int, CheckConfig] = {
    config.check_id: config
    for config in (
        CHECK_01, CHECK_02, CHECK_03, CHECK_04, CHECK_05,
        CHECK_06, CHECK_07, CHECK_08, CHECK_09, CHECK_10,
    )
}


def get_check_config(check_id: int) -> CheckConfig:
    """Get configuration for a specific check.

    Args:
        check_id: The check number (1-10)

    Returns:
        CheckConfig for the requested check

    Raises:
        ValueError: If check_id is not found in registry
    """
    if check_id not in CHECK_REGISTRY:
        raise ValueError(
            f"Unknown check: {check_id}. Available checks: {sorted(CHECK_REGISTRY.keys())}"
        )
    return CHECK_REGISTRY[check_id]


def get_all_checks() -> list[int]:
    """Get list of all available check IDs.

    Returns:
        Sorted list of check IDs
    """
    return sorted(CHECK_REGISTRY.keys())


__all__ = ["CheckConfig", "CheckRunner", "get_check_config", "get_all_checks", "CHECK_REGISTRY"]
