"""Report containers shared by the series diagnostics.

A SeriesReport captures, for one scan over the label j: the per-term log-polar
values, consecutive magnitude ratios, partial sums, the predicted and measured
tail ratios, and a Cauchy convergence verdict.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from statistics import median
from typing import Any, Optional, Sequence

VERDICT_CONVERGED = "converged"
VERDICT_DIVERGED = "diverged"
VERDICT_INCONCLUSIVE = "inconclusive"

RATIO_TAIL_COUNT = 10  # tail ratios entering the empirical-limit median


@dataclass(frozen=True)
class TermRecord:
    j: int
    log_mag: float
    phase: float
    ratio: Optional[float] = None

    def to_json_dict(self) -> dict:
        return {"j": self.j, "log_mag": self.log_mag, "phase": self.phase, "ratio": self.ratio}


@dataclass(frozen=True)
class SeriesReport:
    params: dict[str, Any]
    terms: tuple[TermRecord, ...]
    partial_sums: tuple[complex, ...]
    verdict: str
    cauchy_delta: Optional[float] = None
    predicted_limit: Optional[float] = None
    empirical_limit: Optional[float] = None
    relative_deviation: Optional[float] = None
    extras: dict[str, Any] = field(default_factory=dict)

    @property
    def term_ratios(self) -> list[float]:
        return [t.ratio for t in self.terms if t.ratio is not None]

    def to_json_dict(self) -> dict:
        # infinities become strings so the output stays strict JSON
        return _jsonify(
            {
                "params": self.params,
                "terms": [t.to_json_dict() for t in self.terms],
                "partial_sums": [[s.real, s.imag] for s in self.partial_sums],
                "verdict": self.verdict,
                "cauchy_delta": self.cauchy_delta,
                "predicted_limit": self.predicted_limit,
                "empirical_limit": self.empirical_limit,
                "relative_deviation": self.relative_deviation,
                "extras": self.extras,
            }
        )


SERIES_CSV_COLUMNS = ["j", "log_mag", "phase", "ratio", "partial_re", "partial_im"]


def series_csv_rows(report: SeriesReport) -> list[list]:
    rows = []
    for t, s in zip(report.terms, report.partial_sums):
        rows.append([t.j, t.log_mag, t.phase, t.ratio if t.ratio is not None else "", s.real, s.imag])
    return rows


def _jsonify(obj: Any) -> Any:
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return "-inf" if obj < 0 else "inf"
    return obj


def cauchy_verdict(
    partial_sums: Sequence[complex], tolerance: float, window: int
) -> tuple[str, Optional[float]]:
    """Converged iff |S_J - S_{J-window}| < tolerance at the last index."""
    if len(partial_sums) <= window:
        return VERDICT_INCONCLUSIVE, None
    delta = abs(partial_sums[-1] - partial_sums[-1 - window])
    if math.isnan(delta):
        return VERDICT_INCONCLUSIVE, delta
    return (VERDICT_CONVERGED if delta < tolerance else VERDICT_INCONCLUSIVE), delta


def empirical_tail_ratio(ratios: Sequence[float], tail: int = RATIO_TAIL_COUNT) -> Optional[float]:
    """Median of the last `tail` ratios; robust to oscillatory transients."""
    usable = [r for r in ratios if r is not None and math.isfinite(r)]
    if not usable:
        return None
    return float(median(usable[-tail:]))


__all__ = [
    "RATIO_TAIL_COUNT",
    "SERIES_CSV_COLUMNS",
    "SeriesReport",
    "TermRecord",
    "VERDICT_CONVERGED",
    "VERDICT_DIVERGED",
    "VERDICT_INCONCLUSIVE",
    "cauchy_verdict",
    "empirical_tail_ratio",
    "series_csv_rows",
]
