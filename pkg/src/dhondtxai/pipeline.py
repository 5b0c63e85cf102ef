"""The electoral pipeline: exclusion, alliances, votes, threshold, seats.

Importance scores flow through five stages before apportionment:

    exclude -> form alliances -> distribute votes -> threshold -> redistribute

Vote counts are integers throughout.  Shares are floored, never rounded up,
and the per-entity flooring loss (strictly less than one vote each) is left
uncorrected: apportionment over ~1e8 votes is insensitive to it.  Share
computations go through ``fractions.Fraction`` so that a share which is
mathematically a whole number of votes never loses a vote to binary
rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .apportion import Entity, SeatAllocation, dhondt_allocate
from .errors import (
    AllBelowThreshold,
    OverlappingAlliances,
    UnknownFeature,
    EmptyResult,
    ZeroTotalImportance,
)

__all__ = [
    "Alliance",
    "PipelineConfig",
    "VoteTable",
    "PipelineResult",
    "exclude_features",
    "form_alliances",
    "distribute_votes",
    "apply_threshold",
    "redistribute_votes",
    "run_pipeline",
]


@dataclass(frozen=True)
class Alliance:
    """A named group of features voting as one entity."""

    name: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class PipelineConfig:
    """User parameters controlling the election."""

    total_votes: int = 100_000_000
    total_seats: int = 600
    threshold_percent: float = 0.0
    excluded: frozenset[str] = frozenset()
    alliances: tuple[Alliance, ...] = ()

    def __post_init__(self) -> None:
        if self.total_seats < 1:
            raise ValueError("total_seats must be >= 1")
        if self.total_votes < self.total_seats:
            raise ValueError("total_votes must be >= total_seats")
        if not 0.0 <= self.threshold_percent <= 100.0:
            raise ValueError("threshold_percent must be in [0, 100]")


@dataclass(frozen=True)
class VoteTable:
    """Integer votes per entity at one pipeline stage.

    ``stage`` is "initial" or "post-threshold".  ``threshold_vote`` and
    ``below_threshold`` are populated only after the threshold stage.
    """

    importances: dict[str, float]
    votes: dict[str, int]
    stage: str
    threshold_vote: int | None = None
    below_threshold: tuple[str, ...] = ()


@dataclass(frozen=True)
class PipelineResult:
    """Everything a report needs: all intermediate tables plus the seats."""

    entities: dict[str, float]
    membership: dict[str, tuple[str, ...]]
    initial: VoteTable
    final: VoteTable
    allocation: SeatAllocation
    baseline_allocation: SeatAllocation
    config: PipelineConfig

    @property
    def thresholded(self) -> bool:
        return self.config.threshold_percent > 0.0


def exclude_features(
    importances: Mapping[str, float], excluded: Iterable[str]
) -> dict[str, float]:
    """Drop the named features, preserving the order of the rest."""
    excluded = set(excluded)
    unknown = excluded - importances.keys()
    if unknown:
        raise UnknownFeature(
            "cannot exclude unknown feature(s): " + ", ".join(sorted(unknown))
        )
    kept = {name: v for name, v in importances.items() if name not in excluded}
    if not kept:
        raise EmptyResult("exclusion removed every feature")
    return kept


def form_alliances(
    importances: Mapping[str, float], alliances: Sequence[Alliance]
) -> tuple[dict[str, float], dict[str, tuple[str, ...]]]:
    """Merge each alliance into a single entity scoring the member sum.

    Non-allied features pass through unchanged.  An alliance appears at the
    position of its first member.  Returns the entity-level importances and
    a membership map (every entity id -> its constituent feature names).
    """
    claimed: dict[str, str] = {}
    for a in alliances:
        if not a.members:
            raise ValueError(f"alliance {a.name!r} has no members")
        if a.name in importances:
            raise OverlappingAlliances(
                f"alliance name {a.name!r} collides with a feature name"
            )
        for m in a.members:
            if m not in importances:
                raise UnknownFeature(f"alliance {a.name!r} names unknown feature {m!r}")
            if m in claimed:
                raise OverlappingAlliances(
                    f"feature {m!r} belongs to both {claimed[m]!r} and {a.name!r}"
                )
            claimed[m] = a.name

    by_name = {a.name: a for a in alliances}
    entities: dict[str, float] = {}
    membership: dict[str, tuple[str, ...]] = {}
    for name, value in importances.items():
        if name not in claimed:
            entities[name] = value
            membership[name] = (name,)
        else:
            alliance = by_name[claimed[name]]
            if alliance.name not in entities:
                entities[alliance.name] = sum(importances[m] for m in alliance.members)
                membership[alliance.name] = alliance.members
    return entities, membership


def distribute_votes(entities: Mapping[str, float], total_votes: int) -> VoteTable:
    """Split ``total_votes`` proportionally to importance, flooring shares."""
    for name, v in entities.items():
        if v < 0:
            raise ValueError(f"negative importance for {name!r}")
    total = sum(Fraction(v) for v in entities.values())
    if total <= 0:
        raise ZeroTotalImportance("importance scores sum to zero")
    votes = {
        name: int(Fraction(v) * total_votes / total) for name, v in entities.items()
    }
    return VoteTable(importances=dict(entities), votes=votes, stage="initial")


def apply_threshold(
    table: VoteTable, threshold_percent: float, total_votes: int
) -> tuple[set[str], set[str], int]:
    """Classify entities against the minimum vote requirement.

    Returns (above, below, threshold_vote) with
    threshold_vote = floor(threshold_percent / 100 * total_votes).
    A zero threshold keeps everyone.
    """
    threshold_vote = int(Fraction(threshold_percent) * total_votes / 100)
    if threshold_percent == 0.0:
        return set(table.votes), set(), threshold_vote
    below = {name for name, v in table.votes.items() if v < threshold_vote}
    above = set(table.votes) - below
    if not above:
        raise AllBelowThreshold(
            f"every entity is below the threshold of {threshold_vote} votes"
        )
    return above, below, threshold_vote


def redistribute_votes(
    table: VoteTable,
    above: set[str],
    below: set[str],
    threshold_vote: int = 0,
) -> VoteTable:
    """Hand the below-threshold vote pool to the survivors, by importance.

    Each survivor j gains floor(importance_j / sum(above importances) * pool).
    Below-threshold entities leave the table but stay on record.
    """
    if not above:
        raise AllBelowThreshold("no entity survived the threshold")
    pool = sum(table.votes[name] for name in below)
    above_importance = sum(Fraction(table.importances[name]) for name in above)
    votes: dict[str, int] = {}
    importances: dict[str, float] = {}
    for name, initial in table.votes.items():
        if name in below:
            continue
        gain = int(Fraction(table.importances[name]) / above_importance * pool)
        votes[name] = initial + gain
        importances[name] = table.importances[name]
    return VoteTable(
        importances=importances,
        votes=votes,
        stage="post-threshold",
        threshold_vote=threshold_vote,
        below_threshold=tuple(name for name in table.votes if name in below),
    )


def run_pipeline(
    importances: Mapping[str, float], config: PipelineConfig
) -> PipelineResult:
    """Run the full election and keep every intermediate table."""
    kept = exclude_features(importances, config.excluded)
    entities, membership = form_alliances(kept, config.alliances)
    initial = distribute_votes(entities, config.total_votes)
    above, below, threshold_vote = apply_threshold(
        initial, config.threshold_percent, config.total_votes
    )
    final = redistribute_votes(initial, above, below, threshold_vote)
    allocation = dhondt_allocate(
        (Entity(name, v) for name, v in final.votes.items()), config.total_seats
    )
    if below:
        baseline = dhondt_allocate(
            (Entity(name, v) for name, v in initial.votes.items()),
            config.total_seats,
        )
    else:
        baseline = allocation
    return PipelineResult(
        entities=entities,
        membership=membership,
        initial=initial,
        final=final,
        allocation=allocation,
        baseline_allocation=baseline,
        config=config,
    )
