"""SL(2,C) principal-series matrix coefficients at the simple labels
(k = j, rho = tau * j), and their D'Alembert ratio diagnostics.

Two evaluation routes are provided: the general double-sum coefficient formula
(used as a small-j oracle) and the simplified diagonal form

    D_j(m, tau, eps) = eps^{2(m+j+1+i tau j/2)}
                       * 2F1(j+1+i tau j/2, m+j+1; 2j+2; 1-eps^4),

whose only group dependence is the boost parameter eps of the Cartan
decomposition.  Coefficients are exact (series evaluation) up to
EXACT_J_LIMIT and switch to the large-j asymptotic beyond it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .logcomplex import LogComplexValue, log_sum
from .parallel import ordered_map
from .reports import (
    SeriesReport,
    TermRecord,
    cauchy_verdict,
    empirical_tail_ratio,
)
from .special import hyp2f1, watson_asymptotic_2f1

EXACT_J_LIMIT = 64

PATH_EXACT = "exact"
PATH_ASYMPTOTIC = "asymptotic"

TRACK_M_EQUALS_J = "m_equals_j"
TRACK_M_EQUALS_0 = "m_equals_0"


class IndexRangeError(ValueError):
    """Coefficient index outside its admissible range."""


class EpsilonDomainError(ValueError):
    """Boost parameter outside the operation's domain."""


@dataclass(frozen=True)
class PrincipalSeriesLabel:
    """Representation labels (k, rho)."""

    k: int
    rho: complex

    def __post_init__(self) -> None:
        rho = complex(self.rho)
        if not (math.isfinite(rho.real) and math.isfinite(rho.imag)):
            raise ValueError("rho must be finite")
        object.__setattr__(self, "rho", rho)

    @classmethod
    def simple(cls, j: int, tau: complex) -> "PrincipalSeriesLabel":
        """The constrained labels k = j, rho = tau * j."""
        return cls(k=int(j), rho=complex(tau) * int(j))


@dataclass(frozen=True)
class CoefficientIndex:
    """Row/column labels (j m, j' n) of a general matrix coefficient."""

    j: int
    j_prime: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.j < 0 or self.j_prime < 0:
            raise IndexRangeError("j and j_prime must be non-negative")
        jmin = min(self.j, self.j_prime)
        if abs(self.m) > jmin or abs(self.n) > jmin:
            raise IndexRangeError("|m| and |n| must not exceed min(j, j_prime)")

    @classmethod
    def diagonal(cls, j: int, m: int) -> "CoefficientIndex":
        return cls(j=j, j_prime=j, m=m, n=m)


def evaluation_path(j: int) -> str:
    """Which route diagonal_coefficient takes for this j under method='auto'."""
    return PATH_EXACT if j <= EXACT_J_LIMIT else PATH_ASYMPTOTIC


def _boost_power(j: int, m: int, tau: complex, epsilon: float) -> LogComplexValue:
    # eps^{2(m+j+1) + i tau j}; |eps^{i tau j}| = eps^{-Im(tau) j}
    log_eps = math.log(epsilon)
    exponent = complex(2 * (m + j + 1), 0.0) + 1j * complex(tau) * j
    return LogComplexValue.from_log(exponent * log_eps)


def diagonal_coefficient(
    j: int,
    m: int,
    tau: complex,
    epsilon: float,
    method: str = "auto",
) -> LogComplexValue:
    """Diagonal coefficient at the simple labels, as a function of the boost
    parameter alone.

    j = 0 is evaluated by the same formula (value eps^2 * 2F1(1,1;2;1-eps^4),
    which tends to 1 as eps -> 1); norm-type sums exclude it by convention and
    report it separately.  method: 'auto' (exact up to EXACT_J_LIMIT, then
    asymptotic), 'exact', or 'asymptotic'.
    """
    j = int(j)
    m = int(m)
    tau = complex(tau)
    epsilon = float(epsilon)
    if j < 0:
        raise IndexRangeError("j must be non-negative")
    if abs(m) > j:
        raise IndexRangeError(f"|m| = {abs(m)} exceeds j = {j}")
    if epsilon <= 0.0:
        raise EpsilonDomainError("epsilon must be positive")
    if method == "auto":
        method = PATH_EXACT if j <= EXACT_J_LIMIT else PATH_ASYMPTOTIC
    if method not in (PATH_EXACT, PATH_ASYMPTOTIC):
        raise ValueError(f"unknown method {method!r}")

    power = _boost_power(j, m, tau, epsilon)
    if method == PATH_EXACT:
        a = j + 1 + 0.5j * tau * j
        f = hyp2f1(a, m + j + 1, 2 * j + 2, 1.0 - epsilon**4)
    else:
        f = watson_asymptotic_2f1(j, m, tau, epsilon)
    return power * f


def admissible_pairs(label: PrincipalSeriesLabel, idx: CoefficientIndex) -> list[tuple[int, int]]:
    """The (d, d') summation support of the general coefficient formula:
    all pairs keeping every factorial argument non-negative."""
    k, j, jp, m = label.k, idx.j, idx.j_prime, idx.m
    lo = max(0, -(k + m))
    pairs = []
    for d in range(lo, min(j - m, j - k) + 1):
        for dp in range(lo, min(jp - m, jp - k) + 1):
            if j + jp - d - dp - m - k >= 0:
                pairs.append((d, dp))
    return pairs


def duc_hieu_general(
    label: PrincipalSeriesLabel,
    idx: CoefficientIndex,
    epsilon: float,
) -> LogComplexValue:
    """General principal-series matrix coefficient (Duc-Hieu 1967 closed form):
    Kronecker delta in (m, n), a square-root factorial block, and a double sum
    over (d, d') of signed factorial ratios times boost powers times 2F1
    evaluations.

    Exact but O(j^2) hypergeometric evaluations per call; intended as an
    independent oracle at small j rather than a production route.
    """
    epsilon = float(epsilon)
    if epsilon <= 0.0:
        raise EpsilonDomainError("epsilon must be positive")
    k = label.k
    rho = complex(label.rho)
    j, jp, m, n = idx.j, idx.j_prime, idx.m, idx.n
    if abs(k) > min(j, jp):
        raise IndexRangeError("|k| must not exceed min(j, j_prime)")
    if m != n:
        return LogComplexValue.zero()

    lg = math.lgamma
    log_pref = 0.5 * (
        math.log(2 * j + 1.0)
        + math.log(2 * jp + 1.0)
        + lg(j + m + 1) + lg(jp + m + 1) + lg(j - m + 1) + lg(jp - m + 1)
        + lg(j + k + 1) + lg(jp + k + 1) + lg(j - k + 1) + lg(jp - k + 1)
    ) - lg(j + jp + 2)

    log_eps = math.log(epsilon)
    terms: list[LogComplexValue] = []
    for d, dp in admissible_pairs(label, idx):
        log_num = lg(d + dp + m + k + 1) + lg(j + jp - d - dp - m - k + 1)
        log_den = (
            lg(d + 1) + lg(dp + 1)
            + lg(j - m - d + 1) + lg(jp - m - dp + 1)
            + lg(k + m + d + 1) + lg(k + m + dp + 1)
            + lg(j - k - d + 1) + lg(jp - k - dp + 1)
        )
        power = LogComplexValue.from_log(
            (complex(2 * (2 * dp + m + k + 1), 0.0) + 1j * rho) * log_eps
        )
        f = hyp2f1(jp + 1 + 0.5j * rho, d + dp + m + k + 1, j + jp + 2, 1.0 - epsilon**4)
        term = LogComplexValue(log_num - log_den, math.pi * ((d + dp) % 2)) * power * f
        terms.append(term)
    return LogComplexValue(log_pref, 0.0) * log_sum(terms)


def predicted_diagonal_ratio(epsilon: float) -> float:
    """Closed-form tail ratio 4 eps^2 / (eps^2 + 1)^2; invariant under
    eps -> 1/eps and < 1 for every eps != 1."""
    e2 = float(epsilon) ** 2
    return 4.0 * e2 / (e2 + 1.0) ** 2


def predicted_boundary_ratio(track: str, epsilon: float) -> float:
    """Closed-form tail ratio of the bounding sums: eps^2/(eps^2+1)^2 on the
    m = j track, 4 eps^2/(eps^2+1)^2 on the m = 0 track."""
    e2 = float(epsilon) ** 2
    if track == TRACK_M_EQUALS_J:
        return e2 / (e2 + 1.0) ** 2
    if track == TRACK_M_EQUALS_0:
        return 4.0 * e2 / (e2 + 1.0) ** 2
    raise ValueError(f"unknown track {track!r}")


def _scan_params(**kw) -> dict:
    out = dict(kw)
    tau = complex(kw.get("tau", 0.0))
    out["tau"] = tau
    # closed-form comparisons are asserted for real tau only
    out["informational"] = tau.imag != 0.0
    return out


def ratio_test(
    m: int,
    tau: complex,
    epsilon: float,
    j_max: int,
    *,
    cauchy_tolerance: float = 1e-6,
    cauchy_window: int = 10,
    workers: int = 1,
) -> SeriesReport:
    """Consecutive-magnitude ratios |D_{j+1}/D_j| of the diagonal coefficients
    for fixed m, against the closed-form limit 4 eps^2/(eps^2+1)^2.

    The empirical limit is the median of the last 10 ratios.  j runs from
    max(|m|, 1) so every term is well defined.
    """
    m = int(m)
    epsilon = float(epsilon)
    j_max = int(j_max)
    if epsilon == 1.0:
        raise EpsilonDomainError("ratio diagnostics require eps != 1")
    if j_max < abs(m) + 8:
        raise ValueError("j_max must be at least |m| + 8")
    j_start = max(abs(m), 1)
    js = list(range(j_start, j_max + 1))
    coeffs = ordered_map(lambda j: diagonal_coefficient(j, m, tau, epsilon), js, workers)

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

    predicted = predicted_diagonal_ratio(epsilon)
    empirical = empirical_tail_ratio([t.ratio for t in terms])
    deviation = None if empirical is None else abs(empirical - predicted) / predicted
    verdict, delta = cauchy_verdict(partials, cauchy_tolerance, cauchy_window)
    return SeriesReport(
        params=_scan_params(
            kind="diagonal_ratio", m=m, tau=tau, epsilon=epsilon,
            j_max=j_max, j_start=j_start,
        ),
        terms=tuple(terms),
        partial_sums=tuple(partials),
        verdict=verdict,
        cauchy_delta=delta,
        predicted_limit=predicted,
        empirical_limit=empirical,
        relative_deviation=deviation,
    )


def _boundary_term_log(track: str, j: int, tau: complex, epsilon: float) -> float:
    omega = complex(tau).imag
    if track == TRACK_M_EQUALS_J:
        m = j
        pref = math.log(j + 1.0) + (2 * (2 * j + 1) - omega * j) * math.log(epsilon)
    else:
        m = 0
        pref = math.log(float(j)) + (2 * (j + 1) - omega * j) * math.log(epsilon)
    if j <= EXACT_J_LIMIT:
        f = hyp2f1(j + 1 + 0.5j * complex(tau) * j, m + j + 1, 2 * j + 2, 1.0 - epsilon**4)
    else:
        f = watson_asymptotic_2f1(j, m, tau, epsilon)
    return pref + f.log_mag


def boundary_ratio_test(
    track: str,
    tau: complex,
    epsilon: float,
    j_max: int,
    *,
    cauchy_tolerance: float = 1e-6,
    cauchy_window: int = 10,
    workers: int = 1,
) -> SeriesReport:
    """Term-ratio diagnostics of the two bounding sums that dominate the full
    triple sum: (j+1) |eps-power| |2F1| with the column index pinned to j
    (track 'm_equals_j'), or j |eps-power| |2F1| with it pinned to 0 (track
    'm_equals_0').  Terms are absolute values, so the report's phases are 0.
    """
    if track not in (TRACK_M_EQUALS_J, TRACK_M_EQUALS_0):
        raise ValueError(f"unknown track {track!r}")
    epsilon = float(epsilon)
    j_max = int(j_max)
    if epsilon == 1.0:
        raise EpsilonDomainError("ratio diagnostics require eps != 1")
    if j_max < 9:
        raise ValueError("j_max too small for a tail estimate")
    js = list(range(1, j_max + 1))
    logs = ordered_map(lambda j: _boundary_term_log(track, j, tau, epsilon), js, workers)

    terms: list[TermRecord] = []
    partials: list[complex] = []
    running = 0.0
    prev = None
    for j, lt in zip(js, logs):
        ratio = None if prev is None else math.exp(lt - prev)
        prev = lt
        terms.append(TermRecord(j, lt, 0.0, ratio))
        running += math.exp(lt)
        partials.append(complex(running))

    predicted = predicted_boundary_ratio(track, epsilon)
    empirical = empirical_tail_ratio([t.ratio for t in terms])
    deviation = None if empirical is None else abs(empirical - predicted) / predicted
    verdict, delta = cauchy_verdict(partials, cauchy_tolerance, cauchy_window)
    return SeriesReport(
        params=_scan_params(
            kind="boundary_ratio", track=track, tau=tau, epsilon=epsilon, j_max=j_max,
        ),
        terms=tuple(terms),
        partial_sums=tuple(partials),
        verdict=verdict,
        cauchy_delta=delta,
        predicted_limit=predicted,
        empirical_limit=empirical,
        relative_deviation=deviation,
    )


__all__ = [
    "CoefficientIndex",
    "EXACT_J_LIMIT",
    "EpsilonDomainError",
    "IndexRangeError",
    "PATH_ASYMPTOTIC",
    "PATH_EXACT",
    "PrincipalSeriesLabel",
    "TRACK_M_EQUALS_0",
    "TRACK_M_EQUALS_J",
    "admissible_pairs",
    "boundary_ratio_test",
    "diagonal_coefficient",
    "duc_hieu_general",
    "evaluation_path",
    "predicted_boundary_ratio",
    "predicted_diagonal_ratio",
    "ratio_test",
]
