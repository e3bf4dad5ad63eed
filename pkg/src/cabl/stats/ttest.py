"""Pooled two-sample t-test from summary statistics or raw values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .special import t_two_sided_p


@dataclass(frozen=True)
class TwoSampleInput:
    """One sample, as mean / standard error of the mean / n.

    Reported standard errors convert to sample standard deviations via
    ``sd = se * sqrt(n)``.
    """

    mean: float
    se: float
    n: int
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.se < 0:
            raise ValueError(f"se must be >= 0, got {self.se}")

    @classmethod
    def from_values(cls, values: Sequence[float], label: Optional[str] = None) -> "TwoSampleInput":
        n = len(values)
        if n < 2:
            raise ValueError(f"need n >= 2 values, got {n}")
        mean = sum(values) / n
        var = sum((v - mean) ** 2 for v in values) / (n - 1)
        return cls(mean=mean, se=math.sqrt(var / n), n=n, label=label)

    @property
    def sd(self) -> float:
        return self.se * math.sqrt(self.n)


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p_two_sided: float


def pooled_t_test(a: TwoSampleInput, b: TwoSampleInput) -> TTestResult:
    """Classic pooled-variance two-sample t-test, two-sided p.

    Swapping the samples flips the sign of t and leaves p unchanged.
    """
    df = a.n + b.n - 2
    if df <= 0:
        raise ValueError(f"pooled df must be > 0, got {df}")
    pooled_var = ((a.n - 1) * a.sd**2 + (b.n - 1) * b.sd**2) / df
    se_diff = math.sqrt(pooled_var * (1.0 / a.n + 1.0 / b.n))
    diff = a.mean - b.mean
    if se_diff == 0.0:
        t = 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        return TTestResult(t=t, df=df, p_two_sided=1.0 if diff == 0.0 else 0.0)
    t = diff / se_diff
    return TTestResult(t=t, df=df, p_two_sided=t_two_sided_p(t, df))
