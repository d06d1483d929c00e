"""Special functions: complex log-gamma, Pochhammer symbols, the Gauss
hypergeometric function for complex parameters and real argument, and the
large-parameter asymptotic used for boost coefficients beyond the exact
evaluation window.

All magnitude-critical results come back as LogComplexValue.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .logcomplex import LogComplexValue

MAX_SERIES_TERMS = 100_000
SERIES_TAIL_REL = 1e-17
_BLOCK = 192

# Lanczos approximation, g = 607/128, 15 coefficients (Godfrey's set).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_LOG_SQRT_2PI = 0.91893853320467274178


class GammaPoleError(ValueError):
    """log_gamma evaluated at a non-positive integer."""


class Hyp2F1DomainError(ValueError):
    """Hypergeometric parameters or argument outside the supported domain."""


class SeriesConvergenceError(RuntimeError):
    """A hypergeometric series failed to reach tolerance within the term cap."""


def _is_nonpositive_integer(z: complex, tol: float = 1e-12) -> bool:
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    r = round(z.real)
    return r <= 0 and abs(z.real - r) <= tol


def _log_sin_pi(z: complex) -> complex:
    """log(sin(pi z)) stable against overflow for large |Im z|."""
    if abs(z.imag) < 20.0:
        return cmath.log(cmath.sin(cmath.pi * z))
    # sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); keep the dominant exponential
    if z.imag > 0:
        # |e^{-i pi z}| dominates
        return (
            -1j * cmath.pi * z
            + cmath.log(1 - cmath.exp(2j * cmath.pi * z))
            - cmath.log(2j)
            + 1j * cmath.pi
        )
    return 1j * cmath.pi * z + cmath.log(1 - cmath.exp(-2j * cmath.pi * z)) - cmath.log(2j)


def log_gamma(z: complex) -> complex:
    """Principal-branch log Gamma for complex z.

    Raises GammaPoleError at the poles z = 0, -1, -2, ...
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise GammaPoleError(f"log_gamma pole at z = {z}")
    if z.real < 0.5:
        # reflection: log G(z) = log pi - log sin(pi z) - log G(1 - z)
        return math.log(math.pi) - _log_sin_pi(z) - log_gamma(1.0 - z)
    zm = z - 1.0
    s = complex(_LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        s += _LANCZOS_C[k] / (zm + k)
    t = zm + _LANCZOS_G + 0.5
    return _LOG_SQRT_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(s)


def pochhammer(q: complex, n: int) -> LogComplexValue:
    """Rising factorial (q)_n = q (q+1) ... (q+n-1) as a log-space product.

    (q)_0 = 1 for any q; a zero factor yields an exact LogComplexValue zero.
    """
    if n < 0:
        raise ValueError("pochhammer order must be a natural number")
    q = complex(q)
    log_mag = 0.0
    phase = 0.0
    for k in range(n):
        f = q + k
        if f == 0:
            return LogComplexValue.zero()
        log_mag += math.log(abs(f))
        phase += cmath.phase(f)
    return LogComplexValue(log_mag, phase)


@dataclass(frozen=True)
class Hyp2F1Params:
    """Parameters of 2F1(a, b; c; z) with real argument z."""

    a: complex
    b: complex
    c: complex
    z: float

    def __post_init__(self) -> None:
        if _is_nonpositive_integer(self.c):
            raise Hyp2F1DomainError(f"c = {self.c} is a non-positive integer")
        if not math.isfinite(self.z):
            raise Hyp2F1DomainError("z must be finite")


def _sum_series(
    a: complex,
    b: complex,
    c: complex,
    w: float,
    *,
    max_terms: int = MAX_SERIES_TERMS,
    tail_rel: float = SERIES_TAIL_REL,
) -> LogComplexValue:
    """Sum the defining series sum_n (a)_n (b)_n / ((c)_n n!) w^n.

    Terms are generated blockwise with a log-space cumulative product so that
    growth phases far beyond double range cannot overflow; block sums are
    accumulated with Kahan compensation, so the summation error stays bounded
    independent of the term count.  Stops once the running term drops below
    tail_rel relative to the partial sum on the decaying side of the peak.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    w = float(w)
    if w == 0.0:
        return LogComplexValue.one()

    acc = 1.0 + 0j       # partial sum relative to exp(offset), seeded with n = 0
    comp = 0j            # Kahan compensation at the same scale
    offset = 0.0
    log_t = 0.0          # absolute log-magnitude of the current term
    ph_t = 0.0
    n = 1
    converged = False
    while n <= max_terms:
        hi = min(n + _BLOCK, max_terms + 1)
        ns = np.arange(n, hi, dtype=float)
        ratios = (a + (ns - 1.0)) * (b + (ns - 1.0)) / ((c + (ns - 1.0)) * ns) * w
        with np.errstate(divide="ignore"):
            log_r = np.log(np.abs(ratios))
        cl = log_t + np.cumsum(log_r)
        cp = ph_t + np.cumsum(np.angle(ratios))
        top = float(np.max(cl))
        if top == -math.inf:
            converged = True  # series terminated exactly (polynomial case)
            break
        rel = np.exp(cl - top) * np.exp(1j * cp)
        block = complex(rel.sum())
        # fold the block into the accumulator, rebasing to the larger offset
        if top > offset:
            scale = math.exp(offset - top)
            acc *= scale
            comp *= scale
            offset = top
            add = block
        else:
            add = block * math.exp(top - offset)
        y = add - comp
        t2 = acc + y
        comp = (t2 - acc) - y
        acc = t2

        log_t = float(cl[-1])
        # keep the carried phase small so exp(i ph) stays accurate over long runs
        ph_t = math.remainder(float(cp[-1]), 2.0 * math.pi)
        n = hi
        last_ratio = float(np.abs(ratios[-1]))
        if log_t == -math.inf:
            converged = True
            break
        sum_log = offset + (math.log(abs(acc)) if acc != 0 else -math.inf)
        if last_ratio < 1.0 and log_t <= math.log(tail_rel) + sum_log:
            converged = True
            break
    if not converged:
        raise SeriesConvergenceError(
            f"hypergeometric series did not reach tolerance within {max_terms} terms"
        )
    if acc == 0:
        return LogComplexValue.zero()
    return LogComplexValue(offset + math.log(abs(acc)), cmath.phase(acc))


def hyp2f1(a, b=None, c=None, z=None) -> LogComplexValue:
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.

    Accepts either a single Hyp2F1Params or the four parameters.  Route
    selection: the defining series is summed directly for z in (0, 1) (it
    converges for every |z| < 1 and, for the coefficient family used here,
    its terms carry no sign cancellation for real labels); for z < 0 the
    Pfaff transformation maps onto a series at z/(z-1) in (0, 1).
    """
    if isinstance(a, Hyp2F1Params):
        p = a
    else:
        p = Hyp2F1Params(complex(a), complex(b), complex(c), float(z))
    if p.z >= 1.0:
        raise Hyp2F1DomainError(f"argument z = {p.z} outside the supported range z < 1")
    if p.z == 0.0:
        return LogComplexValue.one()
    if p.z > 0.0:
        return _sum_series(p.a, p.b, p.c, p.z)
    w = p.z / (p.z - 1.0)
    core = _sum_series(p.c - p.a, p.b, p.c, w)
    # Pfaff prefactor (1 - z)^(-b); 1 - z > 1 is real so the log is exact
    pref = LogComplexValue.from_log(-p.b * math.log1p(-p.z))
    return pref * core


def watson_asymptotic_2f1(
    j: int,
    m: int,
    tau: complex,
    epsilon: float,
    branch: str = "minus",
) -> LogComplexValue:
    """Leading large-j term approximating 2F1(j+1+i*tau*j/2, m+j+1; 2j+2; 1-eps^4).

    Evaluated entirely in log space.  For eps < 1 the factors eps^4 - 1 and
    eps^2 - 1 are written as (1 - eps^4) e^{s i pi} and (1 - eps^2) e^{s i pi}
    with a common sign s selected by `branch` ("minus" for e^{-i pi}, which is
    the default, "plus" for e^{+i pi}).  Because the two branched factors enter
    with exactly opposite exponents, the two choices give identical values; the
    switch is retained as an explicit configuration point.

    The O(1/j) correction is omitted.  The approximation error vanishes like
    1/j only when Im(a)/j stays negligible, i.e. for tau = 0; for tau != 0 the
    parameters grow with j and the leading term acquires a persistent
    magnitude defect of order exp(const * Re(tau^2) * j).
    """
    j = int(j)
    m = int(m)
    tau = complex(tau)
    epsilon = float(epsilon)
    if j < 1:
        raise ValueError("asymptotic evaluation needs j >= 1")
    if abs(m) > j:
        raise ValueError(f"|m| = {abs(m)} exceeds j = {j}")
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if epsilon == 1.0:
        raise Hyp2F1DomainError(
            "asymptotic form degenerates at eps = 1 (z = 0); use hyp2f1 instead"
        )
    if branch not in ("minus", "plus"):
        raise ValueError("branch must be 'minus' or 'plus'")
    sigma = -1.0 if branch == "minus" else 1.0

    s = (1.0 + j) + 0.5j * tau * j
    if epsilon > 1.0:
        log_e4m1 = complex(math.log(epsilon**4 - 1.0))
        log_e2m1 = complex(math.log(epsilon**2 - 1.0))
    else:
        log_e4m1 = math.log(1.0 - epsilon**4) + sigma * 1j * math.pi
        log_e2m1 = math.log(1.0 - epsilon**2) + sigma * 1j * math.pi
    log_e2p1 = math.log(epsilon**2 + 1.0)

    log_val = (
        -s * log_e4m1
        + (1.0 + 1j * tau * j) * math.log(2.0)
        + log_gamma(2.0 + 2.0 * j)
        + 0.5 * math.log(math.pi)
        - 0.5 * math.log(j)
        - log_gamma(m + 1.0 + j)
        - log_gamma(1.0 - m + j)
        + s * (log_e2m1 - log_e2p1)
        + (-0.5 - 0.5j * tau * j + m) * (math.log(2.0) - log_e2p1)
        + (-m - 0.5j * tau * j - 0.5) * (math.log(2.0 * epsilon**2) - log_e2p1)
    )
    return LogComplexValue.from_log(log_val)


__all__ = [
    "GammaPoleError",
    "Hyp2F1DomainError",
    "Hyp2F1Params",
    "SeriesConvergenceError",
    "MAX_SERIES_TERMS",
    "SERIES_TAIL_REL",
    "hyp2f1",
    "log_gamma",
    "pochhammer",
    "watson_asymptotic_2f1",
]
