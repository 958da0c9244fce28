"""Dispersion parameters (a, b, c, d) and regime classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass


def sgn(x: float) -> int:
    """Sign function: +1, 0 or -1."""
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


class Regime(enum.Enum):
    BOTH_POSITIVE = "BothPositive"  # b > 0 and d > 0
    MIXED_OR_ZERO = "MixedOrZero"   # bd = 0, admissible
    EXCLUDED = "Excluded"


# The five excluded sign patterns, as predicates on (a, b, c, d).
_EXCLUDED_CASES = [
    ("a=b=0, d>0, c<0", lambda a, b, c, d: a == 0 and b == 0 and d > 0 and c < 0),
    ("a=b=c=d=0", lambda a, b, c, d: a == 0 and b == 0 and c == 0 and d == 0),
    ("a=d=0, b>0, c<0", lambda a, b, c, d: a == 0 and d == 0 and b > 0 and c < 0),
    ("a=b=d=0, c<0", lambda a, b, c, d: a == 0 and b == 0 and d == 0 and c < 0),
    ("b=d=0, c<0, a<0", lambda a, b, c, d: b == 0 and d == 0 and c < 0 and a < 0),
]

EXCLUDED_CASE_NAMES = [name for name, _ in _EXCLUDED_CASES]


@dataclass(frozen=True)
class AbcdParams:
    """The four dispersion coefficients with a <= 0, c <= 0, b >= 0, d >= 0."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.a > 0 or self.c > 0:
            raise ValueError(f"a and c must be nonpositive, got a={self.a}, c={self.c}")
        if self.b < 0 or self.d < 0:
            raise ValueError(f"b and d must be nonnegative, got b={self.b}, d={self.d}")

    @property
    def regime(self) -> Regime:
        for _, matches in _EXCLUDED_CASES:
            if matches(self.a, self.b, self.c, self.d):
                return Regime.EXCLUDED
        if self.b > 0 and self.d > 0:
            return Regime.BOTH_POSITIVE
        return Regime.MIXED_OR_ZERO

    @property
    def excluded_case(self) -> str | None:
        """Name of the matched excluded pattern, or None if admissible."""
        for name, matches in _EXCLUDED_CASES:
            if matches(self.a, self.b, self.c, self.d):
                return name
        return None

    def require_admissible(self) -> "AbcdParams":
        if self.regime is Regime.EXCLUDED:
            raise ValueError(
                f"parameters (a,b,c,d)=({self.a},{self.b},{self.c},{self.d}) fall in "
                f"excluded case '{self.excluded_case}'; the excluded cases are: "
                + "; ".join(EXCLUDED_CASE_NAMES)
            )
        return self
