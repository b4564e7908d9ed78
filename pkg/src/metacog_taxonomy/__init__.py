"""Scenario taxonomy tooling: notation, enumeration, filters, FCA and trajectories."""
from .enumeration import (
    Catalog,
    CatalogEntry,
    TierLabel,
    appendix2_catalog,
    enumerate_space,
    find_duplicates,
    table1_catalog,
)
from .filters import PipelineConfig, StageReport, run_pipeline, shipped_config
from .model import Arrangement, InternalNode, InvalidScenario, Scenario, Shortcut, attributes_of, hamming
from .notation import NotationError, NotationStyle, format_scenario, parse, parse_scenario, topology_id
from .trajectory import Threshold, Trajectory, classify_tier, make_trajectory, shortest_paths

__version__ = "0.1.0"


def __getattr__(name):
    # the estimators pull in scikit-learn, so load them on first use
    if name in ("ScenarioEncoder", "TierClassifier"):
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

__all__ = [
    "Scenario", "Arrangement", "InternalNode", "Shortcut", "InvalidScenario", "attributes_of", "hamming",
    "parse", "parse_scenario", "format_scenario", "NotationStyle", "NotationError", "topology_id",
    "enumerate_space", "Catalog", "CatalogEntry", "TierLabel", "appendix2_catalog", "table1_catalog",
    "find_duplicates", "PipelineConfig", "StageReport", "run_pipeline", "shipped_config",
    "ScenarioEncoder", "TierClassifier", "Threshold", "Trajectory", "classify_tier", "make_trajectory",
    "shortest_paths", "__version__",
]
