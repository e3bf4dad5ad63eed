"""Measurement uncertainty and activation-analysis reduction.

Counting-statistics sigmas, replicate summaries, relative bias
application, and the small amount of physics needed to reduce
irradiate-decay-count measurements: decay factors, comparator-standard
concentrations and gamma self-absorption losses.

All functions are pure and safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import ParseError
from .model import ElementSeries


def poisson_sigma(counts: int) -> float:
    """Standard deviation of a single gross count: ``sqrt(counts)``."""
    if not isinstance(counts, int) or isinstance(counts, bool):
        raise ValueError(f"counts must be an integer, got {counts!r}")
    if counts < 0:
        raise ValueError(f"counts must be >= 0, got {counts}")
    return math.sqrt(counts)


class ReplicateSummary(NamedTuple):
    """Mean, standard error of the mean, df and n of replicate values."""

    mean: float
    se: float
    df: int
    n: int


def replicate_summary(values: Sequence[float]) -> ReplicateSummary:
    """Summarize n >= 2 replicate measurements.

    ``se`` is the sample standard deviation divided by ``sqrt(n)``;
    ``df`` is ``n - 1``.
    """
    n = len(values)
    if n < 2:
        raise ValueError(f"need at least 2 replicates, got {n}")
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return ReplicateSummary(mean=mean, se=math.sqrt(var / n), df=n - 1, n=n)


def apply_bias(s: ElementSeries, c: float) -> ElementSeries:
    """Rescale a series by ``(1 + c)``; df and n are unchanged.

    Exactly inverted by a correction of ``-c / (1 + c)``.
    """
    if c <= -1:
        raise ValueError(f"correction must be > -1, got {c}")
    factor = 1.0 + c
    return ElementSeries(
        element=s.element, mean=s.mean * factor, se=s.se * factor, df=s.df, n=s.n
    )


@dataclass(frozen=True)
class DecaySchedule:
    """Irradiate/decay/count timing for one activation product.

    All durations in seconds: ``t_irradiate`` in flux, ``t_decay``
    between removal and counting, ``t_count`` on the detector.
    """

    half_life: float
    t_irradiate: float
    t_decay: float
    t_count: float

    def __post_init__(self) -> None:
        for name in ("half_life", "t_irradiate", "t_decay", "t_count"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be > 0")

    @property
    def decay_constant(self) -> float:
        return math.log(2.0) / self.half_life


def decay_factor(d: DecaySchedule) -> float:
    """Activate-decay-count factor, in seconds.

    ``(1 - exp(-lam*Ti)) * exp(-lam*Td) * (1 - exp(-lam*Tc)) / lam``
    with ``lam = ln 2 / half_life``: saturation during irradiation,
    decay over the delay, and the integrated count-period activity.
    Strictly positive; vanishes as the delay grows or the half-life
    shrinks to zero.
    """
    lam = d.decay_constant
    saturation = -math.expm1(-lam * d.t_irradiate)
    delay = math.exp(-lam * d.t_decay)
    counted = -math.expm1(-lam * d.t_count)
    return saturation * delay * counted / lam


def comparator_concentration(
    sample_counts: float,
    sample_mass_mg: float,
    std_counts: float,
    std_mass_ug: float,
    sample_schedule: DecaySchedule,
    std_schedule: DecaySchedule,
) -> float:
    """Concentration in ppm by ratio to a co-irradiated standard.

    The standard carries a known element mass (micrograms); the sample
    mass is in milligrams.  Count rates are normalized by each
    schedule's decay factor, so shared flux cancels and the schedules
    need not be identical.  ppm is micrograms of analyte per gram of
    sample.
    """
    if sample_counts < 0:
        raise ValueError("sample_counts must be >= 0")
    if sample_mass_mg <= 0 or std_mass_ug <= 0:
        raise ValueError("masses must be > 0")
    if std_counts <= 0:
        raise ZeroDivisionError("standard counts must be > 0")
    sample_rate = sample_counts / decay_factor(sample_schedule)
    std_rate = std_counts / decay_factor(std_schedule)
    sample_mass_g = sample_mass_mg / 1000.0
    return (std_mass_ug / sample_mass_g) * (sample_rate / std_rate)


@dataclass(frozen=True)
class AttenuationEntry:
    """Linear gamma attenuation in lead at one energy (per cm)."""

    energy_kev: float
    mu_linear_per_cm: float

    def __post_init__(self) -> None:
        if self.energy_kev <= 0:
            raise ValueError("energy must be > 0")
        if self.mu_linear_per_cm <= 0:
            raise ValueError("mu_linear must be > 0")


#: Linear attenuation coefficients of bullet lead at the four indicator
#: gamma energies (Cu 511, As 559, Sb 564, Ag 657 keV).  Mass
#: coefficients log-log interpolated from the Hubbell & Seltzer (NIST)
#: photon attenuation tables for Pb (0.4/0.5/0.6/0.8 MeV grid points
#: 0.2323, 0.1614, 0.1248, 0.08870 cm^2/g), times density 11.35 g/cm^3.
DEFAULT_ATTENUATION: tuple[AttenuationEntry, ...] = (
    AttenuationEntry(511.0, 1.776513),
    AttenuationEntry(559.0, 1.565200),
    AttenuationEntry(564.0, 1.545663),
    AttenuationEntry(657.0, 1.271831),
)


def self_absorption_loss(mean_max_dimension_mm: float, entry: AttenuationEntry) -> float:
    """Fraction of gamma intensity lost inside the specimen itself.

    Uses an effective path of half the mean maximum linear dimension
    (midpoint-emission approximation): ``1 - exp(-mu * L/2)``.  Strictly
    increasing in the dimension, tending to 0 as ``mu -> 0``.
    """
    if mean_max_dimension_mm <= 0:
        raise ValueError("dimension must be > 0")
    path_cm = (mean_max_dimension_mm / 10.0) / 2.0
    return -math.expm1(-entry.mu_linear_per_cm * path_cm)


ATTENUATION_HEADER = ["energy_kev", "mu_linear_per_cm"]


def parse_attenuation_csv(text: str) -> tuple[AttenuationEntry, ...]:
    """Parse an attenuation table: ``energy_kev,mu_linear_per_cm``."""
    import csv
    import io

    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ATTENUATION_HEADER:
        raise ParseError(
            f"attenuation table must start with header {','.join(ATTENUATION_HEADER)}"
        )
    entries = []
    for i, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise ParseError("expected 2 columns", line=i)
        try:
            entries.append(AttenuationEntry(float(row[0]), float(row[1])))
        except ValueError as exc:
            raise ParseError(str(exc), line=i) from exc
    return tuple(entries)
