"""Run the whole test battery over one stream and aggregate the verdicts."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import randomness as r
from .randomness import ALPHA, StreamTooShortError, TestResult, as_bits

DEFAULT_CONFIG: dict[str, dict] = {
    "block_frequency": {"m": 100},
    "serial": {"m": 16},
    "approximate_entropy": {"m": 10},
    "nonoverlapping_template": {"template": "000000001", "n_blocks": 8},
    "linear_complexity": {"M": 500},
}

# Row name -> (callable, fixed keyword arguments)
_ROWS = (
    ("frequency", r.frequency_test, {}),
    ("block_frequency", r.block_frequency_test, {}),
    ("cumulative_sums_forward", r.cumulative_sums_test, {"direction": "forward"}),
    ("cumulative_sums_reverse", r.cumulative_sums_test, {"direction": "reverse"}),
    ("runs", r.runs_test, {}),
    ("longest_run", r.longest_run_test, {}),
    ("rank", r.rank_test, {}),
    ("dft_spectral", r.dft_spectral_test, {}),
    ("nonoverlapping_template", r.nonoverlapping_template_test, {}),
    ("serial", r.serial_test, {}),
    ("approximate_entropy", r.approximate_entropy_test, {}),
    ("linear_complexity", r.linear_complexity_test, {}),
)

IMPLEMENTED_TESTS = tuple(name for name, *_ in _ROWS)

NOT_IMPLEMENTED = (
    "universal",
    "lempel_ziv_complexity",
    "overlapping_template",
    "random_excursions",
    "random_excursions_variant",
)


@dataclass
class BatteryReport:
    stream_length: int
    results: list[TestResult]
    not_implemented: tuple[str, ...] = field(default=NOT_IMPLEMENTED)

    @property
    def all_passed(self) -> bool:
        return all(res.passed for res in self.results)

    def __getitem__(self, name: str) -> TestResult:
        for res in self.results:
            if res.name == name:
                return res
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "stream_length": self.stream_length,
            "alpha": ALPHA,
            "all_passed": self.all_passed,
            "results": [res.to_dict() for res in self.results],
            "not_implemented": list(self.not_implemented),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"stream length: {self.stream_length} bits (alpha = {ALPHA})"]
        for res in self.results:
            params = ", ".join(
                f"{k}={_fmt(v)}" for k, v in res.parameters.items() if not isinstance(v, list)
            )
            if res.skipped:
                lines.append(f"{res.name:<60} {'-':>8}  SKIPPED ({res.skipped})")
                continue
            verdict = "SUCCESS" if res.passed else "FAILURE"
            label = f"{res.name} ({params})" if params else res.name
            lines.append(f"{label:<60} {res.p_value:.6f}  {verdict}")
        for name in self.not_implemented:
            lines.append(f"{name:<60} {'-':>8}  not implemented")
        return "\n".join(lines)


def _fmt(value) -> str:
    return f"{value:.6f}" if isinstance(value, float) else str(value)


def run_battery(stream, config: dict | None = None) -> BatteryReport:
    """Run every implemented test, in a fixed order.

    ``config`` overrides per-test keyword arguments by section name, e.g.
    ``{"serial": {"m": 8}}``; unspecified sections keep the defaults. A test
    whose length minimum is not met is reported as skipped with the reason.
    """
    bits = as_bits(stream)
    merged = {k: dict(v) for k, v in DEFAULT_CONFIG.items()}
    for section, options in (config or {}).items():
        if section not in IMPLEMENTED_TESTS:
            raise KeyError(f"unknown battery section {section!r}")
        merged.setdefault(section, {}).update(options)

    results = []
    for name, func, fixed in _ROWS:
        kwargs = {**fixed, **merged.get(name, {})}
        try:
            res = func(bits, **kwargs)
        except StreamTooShortError as exc:
            res = TestResult(name, None, kwargs, skipped=str(exc))
        res.name = name
        results.append(res)
    return BatteryReport(int(bits.size), results)
