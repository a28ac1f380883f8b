"""Object replica detection on memory traces.

The heavy lifting lives in the `_repscope` extension: trace generation,
sampled detection, the exhaustive oracle, ranking, and the replication
bound formulas.
"""

from ._repscope import (  # noqa: F401
    SUSPECT_THRESHOLD,
    ConfigInvalid,
    DetectConfig,
    GenConfig,
    LabelMismatch,
    MalformedRecord,
    NoComparisons,
    detect_file,
    detect_text,
    generate_trace,
    lower_bound,
    oracle_file,
    prob_a,
    report_from_json,
    run_e2e,
    theta,
    upper_bound,
    __version__,
)

__all__ = [
    "SUSPECT_THRESHOLD",
    "ConfigInvalid",
    "DetectConfig",
    "GenConfig",
    "LabelMismatch",
    "MalformedRecord",
    "NoComparisons",
    "detect_file",
    "detect_text",
    "generate_trace",
    "lower_bound",
    "oracle_file",
    "prob_a",
    "report_from_json",
    "run_e2e",
    "theta",
    "upper_bound",
    "__version__",
]
