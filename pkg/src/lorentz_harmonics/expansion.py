"""Partial sums and convergence verdicts for the coefficient series: the
fixed-m diagonal sum, the full triple sum collapsed over the Kronecker delta,
the norm-identity series with its closed-form target, the divergent
multiplicity-weighted variant, and the synthesis operator that rebuilds a
function from a coefficient table.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .parallel import ordered_map
from .principal_series import EpsilonDomainError, diagonal_coefficient
from .reports import (
    SeriesReport,
    TermRecord,
    VERDICT_DIVERGED,
    VERDICT_INCONCLUSIVE,
    cauchy_verdict,
    empirical_tail_ratio,
)

PI_SQUARED_OVER_6 = math.pi**2 / 6.0


class SingularTauError(ValueError):
    """tau = +/- i makes 1 + tau^2 vanish; the norm series has no target there."""


def _check_tau_regular(tau: complex) -> complex:
    tau = complex(tau)
    if 1.0 + tau * tau == 0:
        raise SingularTauError("tau = i or -i is outside the norm-identity domain")
    return tau


@dataclass(frozen=True)
class ExpansionConfig:
    """Parameters of a fixed-m diagonal scan."""

    tau: complex
    m: int
    epsilon: float
    j_max: int
    cauchy_tolerance: float = 1e-6
    cauchy_window: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", complex(self.tau))
        if self.epsilon <= 0.0:
            raise EpsilonDomainError("epsilon must be positive")
        if self.j_max < 1:
            raise ValueError("j_max must be positive")
        if self.cauchy_tolerance <= 0.0 or self.cauchy_window < 1:
            raise ValueError("invalid Cauchy settings")


@dataclass(frozen=True)
class CoefficientTable:
    """Synthesis coefficients c_j for one fixed m, with finite support."""

    m: int
    entries: dict[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for j, v in dict(self.entries).items():
            j = int(j)
            if j < 0:
                raise ValueError("coefficient labels must be non-negative")
            clean[j] = complex(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def geometric(cls, m: int, ratio: float, j_max: int) -> "CoefficientTable":
        j0 = max(abs(int(m)), 1)
        return cls(m=int(m), entries={j: complex(ratio**j) for j in range(j0, int(j_max) + 1)})

    def get(self, j: int) -> complex:
        return self.entries.get(int(j), 0j)

    def support(self) -> list[int]:
        return sorted(self.entries)

    def tail_ratio(self) -> Optional[float]:
        """Median |c_{j+1}/c_j| over the top of the support; None if undefined."""
        js = self.support()
        ratios = []
        for a, b in zip(js, js[1:]):
            if b == a + 1 and self.entries[a] != 0:
                ratios.append(abs(self.entries[b]) / abs(self.entries[a]))
        return empirical_tail_ratio(ratios)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "entries": [
                {"j": j, "re": v.real, "im": v.imag} for j, v in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoefficientTable":
        return cls(
            m=int(data["m"]),
            entries={int(e["j"]): complex(e["re"], e["im"]) for e in data["entries"]},
        )


def partial_sum_diagonal(cfg: ExpansionConfig, *, workers: int = 1) -> SeriesReport:
    """Partial sums of the fixed-m diagonal coefficient series at one boost.

    The scan starts at j = max(|m|, 1); for m = 0 the j = 0 coefficient (which
    the formula leaves nonzero) is reported separately in extras["j0_value"].
    """
    if cfg.epsilon == 1.0:
        raise EpsilonDomainError("partial sums require eps != 1")
    j_start = max(abs(cfg.m), 1)
    js = list(range(j_start, cfg.j_max + 1))
    coeffs = ordered_map(
        lambda j: diagonal_coefficient(j, cfg.m, cfg.tau, cfg.epsilon), js, workers
    )
    terms: list[TermRecord] = []
    partials: list[complex] = []
    running = 0j
    prev_log = None
    for j, c in zip(js, coeffs):
        ratio = None if prev_log is None or c.is_zero else math.exp(c.log_mag - prev_log)
        prev_log = None if c.is_zero else c.log_mag
        terms.append(TermRecord(j, c.log_mag, c.phase, ratio))
        running += c.to_complex()
        partials.append(running)
    verdict, delta = cauchy_verdict(partials, cfg.cauchy_tolerance, cfg.cauchy_window)
    extras = {}
    if cfg.m == 0:
        extras["j0_value"] = diagonal_coefficient(0, 0, cfg.tau, cfg.epsilon).to_complex()
    return SeriesReport(
        params={
            "kind": "diagonal_sum", "m": cfg.m, "tau": cfg.tau, "epsilon": cfg.epsilon,
            "j_max": cfg.j_max, "j_start": j_start,
            "informational": complex(cfg.tau).imag != 0.0,
        },
        terms=tuple(terms),
        partial_sums=tuple(partials),
        verdict=verdict,
        cauchy_delta=delta,
        empirical_limit=empirical_tail_ratio([t.ratio for t in terms]),
        extras=extras,
    )


def triple_blocks(
    tau: complex, epsilon: float, j_max: int, *, workers: int = 1
) -> list[complex]:
    """Inner column sums sum_{|m| <= j} D_j(m) for j = 0 .. j_max."""

    def block(j: int) -> complex:
        return sum(
            (diagonal_coefficient(j, m, tau, epsilon).to_complex() for m in range(-j, j + 1)),
            0j,
        )

    return ordered_map(block, range(0, int(j_max) + 1), workers)


def partial_sum_triple(
    tau: complex,
    epsilon: float,
    j_max: int,
    *,
    cauchy_tolerance: float = 1e-6,
    cauchy_window: int = 10,
    workers: int = 1,
) -> SeriesReport:
    """Partial sums over j of the inner column sums of the full triple series
    (the off-diagonal terms vanish identically, leaving 2j+1 terms per block).
    """
    epsilon = float(epsilon)
    if epsilon == 1.0:
        raise EpsilonDomainError("partial sums require eps != 1")
    blocks = triple_blocks(tau, epsilon, j_max, workers=workers)
    terms: list[TermRecord] = []
    partials: list[complex] = []
    running = 0j
    prev = None
    for j, b in enumerate(blocks):
        lm = math.log(abs(b)) if b != 0 else -math.inf
        ratio = None if prev is None or b == 0 else math.exp(lm - prev)
        prev = lm if b != 0 else None
        terms.append(TermRecord(j, lm, np.angle(b) if b != 0 else 0.0, ratio))
        running += b
        partials.append(running)
    verdict, delta = cauchy_verdict(partials, cauchy_tolerance, cauchy_window)
    return SeriesReport(
        params={
            "kind": "triple_sum", "tau": complex(tau), "epsilon": epsilon, "j_max": int(j_max),
            "informational": complex(tau).imag != 0.0,
        },
        terms=tuple(terms),
        partial_sums=tuple(partials),
        verdict=verdict,
        cauchy_delta=delta,
        empirical_limit=empirical_tail_ratio([t.ratio for t in terms]),
    )


@dataclass(frozen=True)
class NormIdentityReport:
    computed: complex
    target: complex
    deviation: float
    tail_bound: float
    j_max: int

    def to_json_dict(self) -> dict:
        return {
            "computed": [self.computed.real, self.computed.imag],
            "target": [self.target.real, self.target.imag],
            "deviation": self.deviation,
            "tail_bound": self.tail_bound,
            "j_max": self.j_max,
        }


def norm_identity(tau: complex, j_max: int) -> NormIdentityReport:
    """Truncation of sum_{j>=1} 1/(j^2 (1 + tau^2)) against the closed form
    (pi^2/6) / (1 + tau^2).

    The sum starts at j = 1 by convention (the j = 0 coefficient is excluded
    from norm-type sums).  Raises SingularTauError at tau = +/- i.
    """
    tau = _check_tau_regular(tau)
    j_max = int(j_max)
    if j_max < 1:
        raise ValueError("j_max must be positive")
    denom = 1.0 + tau * tau
    # ascending magnitudes: sum small terms first
    js = np.arange(j_max, 0, -1, dtype=float)
    base = float(np.sum(1.0 / (js * js)))
    computed = base / denom
    target = PI_SQUARED_OVER_6 / denom
    return NormIdentityReport(
        computed=complex(computed),
        target=complex(target),
        deviation=abs(complex(computed) - complex(target)),
        tail_bound=1.0 / (j_max * abs(denom)),
        j_max=j_max,
    )


@dataclass(frozen=True)
class GrowthReport:
    checkpoints: tuple[int, ...]
    partial_sums: tuple[complex, ...]
    increments: tuple[complex, ...]
    model_increments: tuple[complex, ...]
    relative_deviations: tuple[float, ...]
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "checkpoints": list(self.checkpoints),
            "partial_sums": [[s.real, s.imag] for s in self.partial_sums],
            "increments": [[s.real, s.imag] for s in self.increments],
            "model_increments": [[s.real, s.imag] for s in self.model_increments],
            "relative_deviations": list(self.relative_deviations),
            "verdict": self.verdict,
        }


def divergence_probe(
    tau: complex,
    checkpoints: Sequence[int],
    *,
    cauchy_tolerance: float = 1e-6,
) -> GrowthReport:
    """Partial sums of sum_j (2j+1)/(j^2 (1+tau^2)) at the checkpoints, with
    increments compared to the logarithmic growth model 2 ln(J2/J1)/(1+tau^2).

    Verdict 'diverged' when the top increment both exceeds 10x the Cauchy
    tolerance and fits the logarithmic model; 'inconclusive' otherwise.
    """
    tau = _check_tau_regular(tau)
    cps = sorted(int(c) for c in checkpoints)
    if len(cps) < 2 or cps[0] < 1:
        raise ValueError("need at least two positive checkpoints")
    denom = 1.0 + tau * tau
    sums = []
    running = 0.0
    prev = 0
    for cp in cps:
        js = np.arange(prev + 1, cp + 1, dtype=float)
        running += float(np.sum((2.0 * js + 1.0) / (js * js)))
        sums.append(running / denom)
        prev = cp
    increments = [b - a for a, b in zip(sums, sums[1:])]
    models = [2.0 * math.log(b / a) / denom for a, b in zip(cps, cps[1:])]
    rels = [abs(i - m) / abs(m) for i, m in zip(increments, models)]
    grows = abs(increments[-1]) > 10.0 * cauchy_tolerance
    fits = rels[-1] < 0.25
    return GrowthReport(
        checkpoints=tuple(cps),
        partial_sums=tuple(complex(s) for s in sums),
        increments=tuple(complex(i) for i in increments),
        model_increments=tuple(complex(m) for m in models),
        relative_deviations=tuple(rels),
        verdict=VERDICT_DIVERGED if (grows and fits) else VERDICT_INCONCLUSIVE,
    )


def synthesize(
    table: CoefficientTable,
    tau: complex,
    epsilon: float,
    j_max: int,
    *,
    cauchy_tolerance: float = 1e-6,
    cauchy_window: int = 10,
    workers: int = 1,
) -> SeriesReport:
    """Partial sums of sum_j j^2 (1 + tau^2) c_j D_j(m) at one boost.

    Convergence is expected whenever the coefficient tail ratio stays at or
    below 1 (on top of the coefficient ratio limit < 1); tables violating that
    decay check trigger a warning, not an error.
    """
    tau = complex(tau)
    _check_tau_regular(tau)
    epsilon = float(epsilon)
    if epsilon == 1.0:
        raise EpsilonDomainError("synthesis requires eps != 1")
    tr = table.tail_ratio()
    if tr is not None and tr > 1.0 + 1e-9:
        warnings.warn(
            f"coefficient table tail ratio {tr:.3f} exceeds 1; the synthesis "
            "series may diverge",
            stacklevel=2,
        )
    m = table.m
    j_start = max(abs(m), 1)
    js = list(range(j_start, int(j_max) + 1))
    factor = 1.0 + tau * tau

    def term(j: int) -> complex:
        c = table.get(j)
        if c == 0:
            return 0j
        return (j * j) * factor * c * diagonal_coefficient(j, m, tau, epsilon).to_complex()

    vals = ordered_map(term, js, workers)
    terms: list[TermRecord] = []
    partials: list[complex] = []
    running = 0j
    prev = None
    for j, v in zip(js, vals):
        lm = math.log(abs(v)) if v != 0 else -math.inf
        ratio = None if prev is None or v == 0 else math.exp(lm - prev)
        prev = lm if v != 0 else None
        terms.append(TermRecord(j, lm, np.angle(v) if v != 0 else 0.0, ratio))
        running += v
        partials.append(running)
    verdict, delta = cauchy_verdict(partials, cauchy_tolerance, cauchy_window)
    return SeriesReport(
        params={
            "kind": "synthesis", "m": m, "tau": tau, "epsilon": epsilon,
            "j_max": int(j_max), "j_start": j_start,
            "coefficient_tail_ratio": tr,
            "informational": tau.imag != 0.0,
        },
        terms=tuple(terms),
        partial_sums=tuple(partials),
        verdict=verdict,
        cauchy_delta=delta,
        empirical_limit=empirical_tail_ratio([t.ratio for t in terms]),
    )


__all__ = [
    "CoefficientTable",
    "ExpansionConfig",
    "GrowthReport",
    "NormIdentityReport",
    "PI_SQUARED_OVER_6",
    "SingularTauError",
    "divergence_probe",
    "norm_identity",
    "partial_sum_diagonal",
    "partial_sum_triple",
    "synthesize",
    "triple_blocks",
]
