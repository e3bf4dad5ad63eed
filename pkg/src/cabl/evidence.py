"""Evidence evaluation for "how many bullets" questions.

A box of cartridges is modeled as disjoint compositional groups; the
probability that m bullets drawn uniformly without replacement span at
least g distinct groups follows the multivariate hypergeometric law and
is computed exactly by inclusion-exclusion over group subsets.  The
likelihood ratio compares that span probability under the competing
draw counts, and posterior odds are prior odds times the ratio.

All probabilities are exact rationals (Python integers make this cheap
at any box size), so the published 53.3%/80% figures are reproduced
without tolerance questions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional


@dataclass(frozen=True)
class BoxModel:
    """Compositional group sizes within one box of cartridges."""

    group_sizes: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.group_sizes:
            raise ValueError("need at least one group")
        if any(not isinstance(s, int) or s <= 0 for s in self.group_sizes):
            raise ValueError(f"group sizes must be positive integers, got {self.group_sizes}")

    @property
    def total(self) -> int:
        return sum(self.group_sizes)

    @property
    def n_groups(self) -> int:
        return len(self.group_sizes)


@lru_cache(maxsize=4096)
def _subset_sums_by_cardinality(sizes: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Member totals of every group subset, bucketed by subset size."""
    n_groups = len(sizes)
    buckets: list[list[int]] = [[] for _ in range(n_groups + 1)]
    for mask in range(1 << n_groups):
        members = sum(sizes[i] for i in range(n_groups) if mask >> i & 1)
        buckets[mask.bit_count()].append(members)
    return tuple(tuple(b) for b in buckets)


@lru_cache(maxsize=4096)
def _span_counts(sizes: tuple[int, ...], draws: int) -> tuple[int, ...]:
    """Number of draw-subsets touching exactly j groups, for j = 0..G.

    Mobius inversion of the "draw stays inside subset S" counts
    C(members(S), draws), aggregated by subset cardinality: a subset T
    of size u lies under C(G-u, j-u) supersets of size j, with sign
    (-1)^(j-u).
    """
    n_groups = len(sizes)
    inside = [
        sum(math.comb(members, draws) for members in bucket)
        for bucket in _subset_sums_by_cardinality(sizes)
    ]
    return tuple(
        sum(
            (-1) ** (j - u) * math.comb(n_groups - u, j - u) * inside[u]
            for u in range(j + 1)
        )
        for j in range(n_groups + 1)
    )


def p_span_at_least(box: BoxModel, draws: int, min_groups: int) -> Fraction:
    """P(an m-draw without replacement touches >= g distinct groups).

    Exact by inclusion-exclusion over group subsets with multivariate
    hypergeometric counts.  Nondecreasing in ``draws`` and nonincreasing
    in ``min_groups``; equal to 1 whenever g = 1.
    """
    if draws < 1 or draws > box.total:
        raise ValueError(f"draws must be in [1, {box.total}], got {draws}")
    if min_groups < 1 or min_groups > box.n_groups:
        raise ValueError(
            f"min_groups must be in [1, {box.n_groups}], got {min_groups}"
        )
    if min_groups == 1:
        return Fraction(1)
    favorable = sum(_span_counts(box.group_sizes, draws)[min_groups:])
    return Fraction(favorable, math.comb(box.total, draws))


@dataclass(frozen=True)
class EvidenceResult:
    """Span probabilities, their ratio, and optional posterior odds."""

    p_given_t: Fraction
    p_given_not_t: Fraction
    likelihood_ratio: Fraction
    posterior_odds: Optional[Fraction] = None

    def as_dict(self) -> dict:
        out = {
            "p_given_t": float(self.p_given_t),
            "p_given_t_exact": str(self.p_given_t),
            "p_given_not_t": float(self.p_given_not_t),
            "p_given_not_t_exact": str(self.p_given_not_t),
            "likelihood_ratio": float(self.likelihood_ratio),
            "likelihood_ratio_exact": str(self.likelihood_ratio),
        }
        if self.posterior_odds is not None:
            out["posterior_odds"] = float(self.posterior_odds)
            out["posterior_odds_exact"] = str(self.posterior_odds)
        return out


def likelihood_ratio(
    box: BoxModel, observed_groups: int, draws_t: int, draws_not_t: int
) -> EvidenceResult:
    """Ratio of span probabilities under the two draw-count hypotheses.

    ``draws_t`` bullets under the hypothesis T, ``draws_not_t`` under
    its complement; the evidence is "the draw spans at least
    ``observed_groups`` groups".
    """
    p_t = p_span_at_least(box, draws_t, observed_groups)
    p_not_t = p_span_at_least(box, draws_not_t, observed_groups)
    if p_not_t == 0:
        raise ValueError(
            "likelihood ratio undefined: evidence has zero probability under not-T"
        )
    return EvidenceResult(
        p_given_t=p_t, p_given_not_t=p_not_t, likelihood_ratio=p_t / p_not_t
    )


def posterior_odds(lr: Fraction | float, prior_odds: Fraction | float) -> Fraction:
    """Posterior odds = likelihood ratio times prior odds."""
    lr = Fraction(lr)
    prior = Fraction(prior_odds)
    if lr <= 0 or prior <= 0:
        raise ValueError("likelihood ratio and prior odds must be > 0")
    return lr * prior
