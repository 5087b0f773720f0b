"""Statistical randomness battery (frequency, runs, rank, spectral, serial, ...)."""

from .battery import IMPLEMENTED_TESTS, NOT_IMPLEMENTED, BatteryReport, run_battery
from .randomness import (
    ALPHA,
    StreamTooShortError,
    TestResult,
    approximate_entropy_test,
    block_frequency_test,
    cumulative_sums_test,
    dft_spectral_test,
    frequency_test,
    linear_complexity_test,
    longest_run_test,
    nonoverlapping_template_test,
    rank_test,
    runs_test,
    serial_test,
)

__all__ = [
    "ALPHA",
    "BatteryReport",
    "IMPLEMENTED_TESTS",
    "NOT_IMPLEMENTED",
    "StreamTooShortError",
    "TestResult",
    "approximate_entropy_test",
    "block_frequency_test",
    "cumulative_sums_test",
    "dft_spectral_test",
    "frequency_test",
    "linear_complexity_test",
    "longest_run_test",
    "nonoverlapping_template_test",
    "rank_test",
    "run_battery",
    "runs_test",
    "serial_test",
]
