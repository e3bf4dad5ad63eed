"""Partitioning specimens into compositional groups.

The pairwise match relation is not transitive (intervals can chain), so
two grouping modes exist: connected components of the match graph,
which reproduces the published two-group classification, and maximal
cliques, which surface the chaining artifacts.  Every output is
deterministically ordered, and each nontransitive triple (a matched to
b, b matched to c, a unmatched to c) is reported as a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .matching import match_specimens
from .model import MatchCriterion, Specimen

MODES = ("connected_components", "maximal_cliques")


@dataclass(frozen=True)
class GroupingResult:
    """Groups, the match adjacency, and non-transitivity witnesses.

    In ``connected_components`` mode the groups partition the specimen
    set; in ``maximal_cliques`` mode they may overlap, and that overlap
    is itself informative.
    """

    groups: tuple[tuple[str, ...], ...]
    adjacency: Mapping[str, tuple[str, ...]]
    mode: str
    nontransitive_triples: tuple[tuple[str, str, str], ...]

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "groups": [list(g) for g in self.groups],
            "adjacency": {k: list(v) for k, v in sorted(self.adjacency.items())},
            "nontransitive_triples": [list(t) for t in self.nontransitive_triples],
        }


def _match_adjacency(
    specimens: list[Specimen], criterion: MatchCriterion
) -> dict[str, set[str]]:
    # canonical pair order (smaller id first) keeps biased criteria deterministic
    adjacency: dict[str, set[str]] = {s.id: set() for s in specimens}
    by_id = {s.id: s for s in specimens}
    ids = sorted(by_id)
    for i, id_a in enumerate(ids):
        for id_b in ids[i + 1 :]:
            if match_specimens(by_id[id_a], by_id[id_b], criterion).matched:
                adjacency[id_a].add(id_b)
                adjacency[id_b].add(id_a)
    return adjacency


def _connected_components(adjacency: dict[str, set[str]]) -> list[set[str]]:
    seen: set[str] = set()
    components = []
    for start in sorted(adjacency):
        if start in seen:
            continue
        stack = [start]
        component = set()
        while stack:
            node = stack.pop()
            if node in component:
                continue
            component.add(node)
            stack.extend(adjacency[node] - component)
        seen |= component
        components.append(component)
    return components


def _maximal_cliques(adjacency: dict[str, set[str]]) -> list[set[str]]:
    cliques: list[set[str]] = []

    def extend(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            cliques.append(set(r))
            return
        pivot = max(p | x, key=lambda v: len(adjacency[v]))
        for v in sorted(p - adjacency[pivot]):
            extend(r | {v}, p & adjacency[v], x & adjacency[v])
            p = p - {v}
            x = x | {v}

    extend(set(), set(adjacency), set())
    return cliques


def _nontransitive_triples(
    adjacency: dict[str, set[str]]
) -> tuple[tuple[str, str, str], ...]:
    triples = []
    ids = sorted(adjacency)
    for i, a in enumerate(ids):
        for c in ids[i + 1 :]:
            if c in adjacency[a]:
                continue
            for b in sorted(adjacency[a] & adjacency[c]):
                triples.append((a, b, c))
    return tuple(sorted(triples))


def group(
    specimens: Iterable[Specimen],
    criterion: MatchCriterion,
    mode: str = "connected_components",
) -> GroupingResult:
    """Group specimens by the pairwise match relation.

    Groups are ordered by their smallest member id and each group's
    members are sorted, so results are independent of input order.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    spec_list = list(specimens)
    ids = [s.id for s in spec_list]
    if len(set(ids)) != len(ids):
        raise ValueError("specimen ids must be unique within a grouping run")
    adjacency = _match_adjacency(spec_list, criterion)
    if mode == "connected_components":
        raw_groups = _connected_components(adjacency)
    else:
        raw_groups = _maximal_cliques(adjacency)
    groups = tuple(sorted(tuple(sorted(g)) for g in raw_groups))
    return GroupingResult(
        groups=groups,
        adjacency={k: tuple(sorted(v)) for k, v in adjacency.items()},
        mode=mode,
        nontransitive_triples=_nontransitive_triples(adjacency),
    )


@dataclass(frozen=True)
class MatchRate:
    """Within-lot pairwise match summary."""

    pairs_total: int
    pairs_matched: int

    @property
    def rate(self) -> float:
        return self.pairs_matched / self.pairs_total if self.pairs_total else 0.0


def within_box_match_rate(
    specimens: Iterable[Specimen], criterion: MatchCriterion
) -> MatchRate:
    """Fraction of same-lot unordered pairs that match the criterion.

    Specimens without a lot never share one and contribute no pairs.
    """
    spec_list = sorted(specimens, key=lambda s: s.id)
    if not spec_list:
        raise ValueError("need at least one specimen")
    total = 0
    matched = 0
    for i, a in enumerate(spec_list):
        for b in spec_list[i + 1 :]:
            if a.lot is None or a.lot != b.lot:
                continue
            total += 1
            if match_specimens(a, b, criterion).matched:
                matched += 1
    return MatchRate(pairs_total=total, pairs_matched=matched)
