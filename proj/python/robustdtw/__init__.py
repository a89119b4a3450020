"""Noise- and outlier-robust time-series dissimilarity toolkit."""

from ._robustdtw import (
    DtwResult,
    GraphDetrendConfig,
    LevelTrace,
    LofConfig,
    LofResult,
    PeriodicityConfig,
    PeriodicityResult,
    RobustDtwConfig,
    RobustDtwResult,
    RobustStats,
    SolverConfig,
    TimeSeries,
    TrendDecomposition,
    ValidationError,
    auc_score,
    biweight_scale,
    detect_outliers,
    detect_periodicity,
    distance_matrix,
    dtw_exact,
    fast_dtw,
    generate,
    inject_noise,
    iqr_filter,
    lof_scores,
    mad,
    make_outlier_corpus,
    measure_distance,
    measure_distance_matrix,
    median,
    robust_dtw,
    robust_normalize,
    robust_stats,
    robust_trend,
    slice_segments,
    upsample_trend,
)

__all__ = [
    "DtwResult",
    "GraphDetrendConfig",
    "LevelTrace",
    "LofConfig",
    "LofResult",
    "PeriodicityConfig",
    "PeriodicityResult",
    "RobustDtwConfig",
    "RobustDtwResult",
    "RobustStats",
    "SolverConfig",
    "TimeSeries",
    "TrendDecomposition",
    "ValidationError",
    "auc_score",
    "biweight_scale",
    "detect_outliers",
    "detect_periodicity",
    "distance_matrix",
    "dtw_exact",
    "fast_dtw",
    "generate",
    "inject_noise",
    "iqr_filter",
    "lof_scores",
    "mad",
    "make_outlier_corpus",
    "measure_distance",
    "measure_distance_matrix",
    "median",
    "robust_dtw",
    "robust_normalize",
    "robust_stats",
    "robust_trend",
    "slice_segments",
    "upsample_trend",
]
