"""Complex values stored as (log-magnitude, phase).

Coefficients in this library involve Gamma(2j+2)-scale factors and powers like
eps^(4j) that overflow double precision long before j reaches interesting
values, so everything magnitude-critical is carried in log-polar form and only
converted to an ordinary complex number on explicit request.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable

TWO_PI = 2.0 * math.pi

# exp() overflows just above this; used by to_complex() overflow checks
_LOG_MAX_DOUBLE = math.log(1.7976931348623157e308)


def wrap_phase(phi: float) -> float:
    """Wrap an angle into (-pi, pi]."""
    y = math.fmod(phi + math.pi, TWO_PI)
    if y <= 0.0:
        y += TWO_PI
    return y - math.pi


@dataclass(frozen=True)
class LogComplexValue:
    """A complex number w represented as (log|w|, arg w).

    log_mag = -inf encodes an exact zero, in which case phase is 0 by
    convention.  phase is always wrapped into (-pi, pi].
    """

    log_mag: float
    phase: float = 0.0

    def __post_init__(self) -> None:
        if math.isnan(self.log_mag) or math.isnan(self.phase):
            raise ValueError("LogComplexValue fields must not be NaN")
        if self.log_mag == -math.inf:
            object.__setattr__(self, "phase", 0.0)
        else:
            object.__setattr__(self, "phase", wrap_phase(self.phase))

    @classmethod
    def zero(cls) -> "LogComplexValue":
        return cls(-math.inf, 0.0)

    @classmethod
    def one(cls) -> "LogComplexValue":
        return cls(0.0, 0.0)

    @classmethod
    def from_complex(cls, w: complex) -> "LogComplexValue":
        w = complex(w)
        if w == 0:
            return cls.zero()
        return cls(math.log(abs(w)), cmath.phase(w))

    @classmethod
    def from_log(cls, log_value: complex) -> "LogComplexValue":
        """Build from log(w): real part is log|w|, imaginary part the phase."""
        log_value = complex(log_value)
        return cls(log_value.real, log_value.imag)

    @property
    def is_zero(self) -> bool:
        return self.log_mag == -math.inf

    def to_complex(self) -> complex:
        """Convert to a linear-space complex number.

        Raises OverflowError when the magnitude is not representable in double
        precision; callers opt into that risk explicitly.
        """
        if self.is_zero:
            return 0j
        if self.log_mag > _LOG_MAX_DOUBLE:
            raise OverflowError(
                f"log-magnitude {self.log_mag:.6g} exceeds double-precision range"
            )
        return cmath.rect(math.exp(self.log_mag), self.phase)

    def abs(self) -> float:
        """|w| as a float; returns inf when not representable."""
        if self.is_zero:
            return 0.0
        try:
            return math.exp(self.log_mag)
        except OverflowError:
            return math.inf

    def __mul__(self, other: "LogComplexValue") -> "LogComplexValue":
        if not isinstance(other, LogComplexValue):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LogComplexValue.zero()
        return LogComplexValue(self.log_mag + other.log_mag, self.phase + other.phase)

    def __truediv__(self, other: "LogComplexValue") -> "LogComplexValue":
        if not isinstance(other, LogComplexValue):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by an exact LogComplexValue zero")
        if self.is_zero:
            return LogComplexValue.zero()
        return LogComplexValue(self.log_mag - other.log_mag, self.phase - other.phase)

    def conjugate(self) -> "LogComplexValue":
        return LogComplexValue(self.log_mag, -self.phase)

    def negated(self) -> "LogComplexValue":
        if self.is_zero:
            return self
        return LogComplexValue(self.log_mag, self.phase + math.pi)

    def powered(self, exponent: float) -> "LogComplexValue":
        """Principal-branch real power."""
        if self.is_zero:
            if exponent <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return self
        return LogComplexValue(exponent * self.log_mag, exponent * self.phase)


def log_sum(values: Iterable[LogComplexValue]) -> LogComplexValue:
    """Sum LogComplexValues without leaving log-representable range.

    The largest magnitude is factored out, the remainder summed linearly with
    math.fsum on real and imaginary parts.
    """
    vals = [v for v in values if not v.is_zero]
    if not vals:
        return LogComplexValue.zero()
    top = max(v.log_mag for v in vals)
    re = math.fsum(math.exp(v.log_mag - top) * math.cos(v.phase) for v in vals)
    im = math.fsum(math.exp(v.log_mag - top) * math.sin(v.phase) for v in vals)
    s = complex(re, im)
    if s == 0:
        return LogComplexValue.zero()
    return LogComplexValue(top + math.log(abs(s)), cmath.phase(s))
