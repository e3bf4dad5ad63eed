"""Core domain types for comparative bullet lead analysis.

Concentrations are plain ppm throughout; there is no unit-conversion
layer.  Every type here is an immutable value object, safe to share
between threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Optional


class Element(enum.Enum):
    """The seven-element panel used for bullet lead comparisons."""

    SB = "Sb"
    AG = "Ag"
    AS = "As"
    CU = "Cu"
    BI = "Bi"
    SN = "Sn"
    CD = "Cd"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_symbol(cls, symbol: str) -> "Element":
        for member in cls:
            if member.value == symbol:
                return member
        valid = ", ".join(m.value for m in cls)
        raise ValueError(f"unknown element symbol {symbol!r} (panel: {valid})")


class Location(enum.Enum):
    """Radial sampling location of a measurement within a bullet."""

    OUTER = "outer"
    MIDDLE = "middle"
    INNER = "inner"
    UNLABELED = "unlabeled"

    def __str__(self) -> str:
        return self.value


class Basis(enum.Enum):
    """How a measurement's uncertainty arises."""

    POISSON_SINGLE = "poisson_single"
    REPLICATE_MEMBER = "replicate_member"

    def __str__(self) -> str:
        return self.value


class Kind(enum.Enum):
    """What physical object a specimen is."""

    FRAGMENT = "fragment"
    BULLET = "bullet"
    BULLET_SECTION = "bullet_section"

    def __str__(self) -> str:
        return self.value


class Boundary(enum.Enum):
    """Whether touching intervals count as overlapping."""

    CLOSED = "closed"
    OPEN = "open"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RawMeasurement:
    """One measured concentration row, before aggregation.

    ``poisson_single`` rows carry their own counting-statistics sigma;
    ``replicate_member`` rows carry none (the standard error comes from
    replication when rows sharing a key are aggregated).
    """

    specimen_id: str
    element: Element
    value: float
    sigma: Optional[float]
    location: Location = Location.UNLABELED
    basis: Basis = Basis.POISSON_SINGLE

    def __post_init__(self) -> None:
        if self.value <= 0:
            raise ValueError(f"concentration must be > 0, got {self.value}")
        if self.basis is Basis.POISSON_SINGLE:
            if self.sigma is None or self.sigma < 0:
                raise ValueError("poisson_single rows need sigma >= 0")
        elif self.sigma is not None:
            raise ValueError("replicate_member rows must not carry sigma")


@dataclass(frozen=True)
class ElementSeries:
    """Summary of one element's measurements on one specimen.

    ``se`` is the standard error of the mean.  ``df`` is ``n - 1`` for
    replicate-based series and ``None`` for the single-observation
    counting-statistics case, which has no traditional degrees of
    freedom; tests that need df must refuse such series rather than
    invent them.
    """

    element: Element
    mean: float
    se: float
    df: Optional[int] = None
    n: int = 1

    def __post_init__(self) -> None:
        if self.mean <= 0:
            raise ValueError(f"mean must be > 0, got {self.mean}")
        if self.se < 0:
            raise ValueError(f"se must be >= 0, got {self.se}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.df is not None and self.df != self.n - 1:
            raise ValueError(f"df must be n-1 or None, got df={self.df} n={self.n}")


def series_interval(s: ElementSeries, k: float) -> tuple[float, float]:
    """Return the ``mean +/- k*se`` interval of a series, in ppm.

    The interval is symmetric about the mean with width exactly
    ``2*k*se``.
    """
    if k <= 0:
        raise ValueError(f"k must be > 0, got {k}")
    half = k * s.se
    return (s.mean - half, s.mean + half)


@dataclass(frozen=True)
class Specimen:
    """A fragment, bullet or bullet section with its per-element series.

    ``location`` is set when every underlying row shares one labeled
    radial location (it drives location-based selection, e.g. comparing
    outer against middle sections); it is ``None`` for whole objects
    and mixed/unlabeled data.
    """

    id: str
    kind: Kind
    lot: Optional[str] = None
    series: Mapping[Element, ElementSeries] = field(default_factory=dict)
    location: Optional[Location] = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("specimen id must be nonempty")
        for element, s in self.series.items():
            if s.element is not element:
                raise ValueError(
                    f"series keyed {element.value} carries element {s.element.value}"
                )
        object.__setattr__(self, "series", MappingProxyType(dict(self.series)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Specimen):
            return NotImplemented
        return (
            self.id == other.id
            and self.kind == other.kind
            and self.lot == other.lot
            and self.location == other.location
            and dict(self.series) == dict(other.series)
        )

    def elements(self) -> tuple[Element, ...]:
        return tuple(self.series)


@dataclass(frozen=True)
class BiasCorrection:
    """A relative correction range ``[c_lo, c_hi]`` for one element.

    A correction ``c`` rescales a series by ``(1 + c)``; the range
    expresses that the true correction is only known to an interval.
    """

    element: Element
    c_lo: float
    c_hi: float

    def __post_init__(self) -> None:
        if self.c_lo > self.c_hi:
            raise ValueError(f"c_lo {self.c_lo} > c_hi {self.c_hi}")
        if self.c_lo <= -1:
            raise ValueError("corrections must stay > -1")


#: Default corrections: antimony measurements read low by 2% to 5.4%
#: against certified standards; silver by a flat 5.5%.
DEFAULT_BIAS: Mapping[Element, BiasCorrection] = MappingProxyType(
    {
        Element.SB: BiasCorrection(Element.SB, 0.02, 0.054),
        Element.AG: BiasCorrection(Element.AG, 0.055, 0.055),
    }
)


@dataclass(frozen=True)
class MatchCriterion:
    """A configured indistinguishability rule.

    Two specimens match when, for every element of the panel, their
    ``mean +/- k*se`` intervals intersect.  ``closed`` boundary counts
    exactly touching intervals as a match; ``open`` does not.  When a
    bias table is present, the corrections are applied to the first
    (questioned) specimen of a comparison.
    """

    k: float
    elements: tuple[Element, ...]
    bias: Optional[Mapping[Element, BiasCorrection]] = None
    boundary: Boundary = Boundary.CLOSED

    def __post_init__(self) -> None:
        if self.k <= 0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if not self.elements:
            raise ValueError("element panel must be nonempty")
        ordered = tuple(sorted(set(self.elements), key=lambda e: e.value))
        object.__setattr__(self, "elements", ordered)
        if self.bias is not None:
            for element, corr in self.bias.items():
                if corr.element is not element:
                    raise ValueError(
                        f"bias keyed {element.value} is for {corr.element.value}"
                    )
            object.__setattr__(self, "bias", MappingProxyType(dict(self.bias)))

    def bias_for(self, element: Element) -> Optional[BiasCorrection]:
        if self.bias is None:
            return None
        return self.bias.get(element)


PRESET_NAMES = ("guinn4", "nrc2")


def criterion_preset(
    name: str,
    elements: tuple[Element, ...] | None = None,
    bias: Mapping[Element, BiasCorrection] | None = None,
) -> MatchCriterion:
    """Build one of the named criterion presets.

    ``guinn4``: +/- 4 standard errors on the silver/antimony panel, no
    bias correction, closed boundary.  ``nrc2``: +/- 2 standard errors,
    bias correction on (defaults to :data:`DEFAULT_BIAS`), closed
    boundary; the panel is configurable and defaults to silver/antimony.
    """
    panel = elements or (Element.SB, Element.AG)
    if name == "guinn4":
        return MatchCriterion(k=4.0, elements=panel)
    if name == "nrc2":
        return MatchCriterion(k=2.0, elements=panel, bias=bias or DEFAULT_BIAS)
    raise ValueError(f"unknown preset {name!r} (have: {', '.join(PRESET_NAMES)})")
