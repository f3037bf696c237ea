"""
Reference predictors: smart persistence and the single-station MLP
"""

from .persistence import (
    CLEAR_SKY_GUARD,
    DAY_HOURS,
    SmartPersistenceState,
    clear_sky_ratio,
    smart_persistence_36h,
    smart_persistence_batch,
    source_hours,
)
from .mlp import mlp_baseline_spec, mlp_baseline_train

__all__ = [
    "CLEAR_SKY_GUARD",
    "DAY_HOURS",
    "SmartPersistenceState",
    "clear_sky_ratio",
    "smart_persistence_36h",
    "smart_persistence_batch",
    "source_hours",
    "mlp_baseline_spec",
    "mlp_baseline_train",
]
