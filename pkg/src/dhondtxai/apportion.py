"""Iterative D'Hondt (highest-averages) seat allocation.

Seats are awarded one at a time to the entity with the largest current
quotient votes/(seats_held + 1).  All quotient comparisons are exact:
integer cross-multiplication, never floating point, so allocations over
vote counts in the hundreds of millions are reproducible bit for bit.

Tie rule (the underlying method leaves ties open): equal quotients go to
the entity with more raw votes, remaining ties to the lexicographically
smaller entity id.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping

from .errors import EmptyElectorate, InvalidSeatCount

__all__ = [
    "Entity",
    "AllocationRound",
    "SeatAllocation",
    "quotient",
    "dhondt_allocate",
    "divisor_oracle_allocate",
]


@dataclass(frozen=True)
class Entity:
    """One competitor: a feature, an alliance, or a party."""

    id: str
    votes: int

    def __post_init__(self) -> None:
        if self.votes < 0:
            raise ValueError(f"entity {self.id!r} has negative votes")


@dataclass(frozen=True)
class AllocationRound:
    """One seat award: seat number (1-based), winner, winning quotient."""

    round: int
    winner: str
    quotient: Fraction


@dataclass(frozen=True)
class SeatAllocation:
    """Final seat counts per entity, summing to ``total_seats``.

    ``log`` records every award in order; the divisor oracle omits it.
    """

    seats: dict[str, int]
    total_seats: int
    log: tuple[AllocationRound, ...] | None = None


def quotient(votes: int, seats_held: int) -> Fraction:
    """Exact seat ratio votes/(seats_held + 1)."""
    return Fraction(votes, seats_held + 1)


def _check(entities: list[Entity], total_seats: int) -> None:
    if total_seats < 1:
        raise InvalidSeatCount(f"total_seats must be >= 1, got {total_seats}")
    if not entities or all(e.votes == 0 for e in entities):
        raise EmptyElectorate("no entity has a positive vote count")
    seen = set()
    for e in entities:
        if e.id in seen:
            raise ValueError(f"duplicate entity id {e.id!r}")
        seen.add(e.id)


def dhondt_allocate(
    entities: Iterable[Entity], total_seats: int
) -> SeatAllocation:
    """Allocate ``total_seats`` seats by iterative highest averages.

    Returns seat counts for every entity (zero-vote entities are admitted
    and simply never win) plus the full round-by-round log.
    """
    ents = list(entities)
    _check(ents, total_seats)

    ids = [e.id for e in ents]
    votes = [e.votes for e in ents]
    n = len(ents)
    held = [0] * n
    # current quotient of entity i is votes[i] / den[i]
    den = [1] * n
    log: list[AllocationRound] = []

    for seat_no in range(1, total_seats + 1):
        best = 0
        for i in range(1, n):
            # votes[i]/den[i] vs votes[best]/den[best], cross-multiplied
            lhs = votes[i] * den[best]
            rhs = votes[best] * den[i]
            if lhs > rhs:
                best = i
            elif lhs == rhs:
                if votes[i] > votes[best] or (
                    votes[i] == votes[best] and ids[i] < ids[best]
                ):
                    best = i
        log.append(
            AllocationRound(seat_no, ids[best], Fraction(votes[best], den[best]))
        )
        held[best] += 1
        den[best] = held[best] + 1

    return SeatAllocation(
        seats=dict(zip(ids, held)), total_seats=total_seats, log=tuple(log)
    )


def divisor_oracle_allocate(
    entities: Iterable[Entity], total_seats: int
) -> SeatAllocation:
    """Independent check: D'Hondt via its divisor formulation.

    Finds a divisor d with sum(floor(v_i / d)) == total_seats by binary
    search over the candidate quotients v_i/j, then resolves boundary ties
    with the same (votes, id) rule as the iterative allocator.  Exact
    arithmetic throughout: quotients are compared as integers after
    rescaling by lcm(1..total_seats).
    """
    ents = list(entities)
    _check(ents, total_seats)

    ids = [e.id for e in ents]
    votes = [e.votes for e in ents]
    n = len(ents)

    scale = lcm(*range(1, total_seats + 1))

    # candidate divisors, as integer keys c = (v/j) * scale
    keys = sorted(
        {v * (scale // j) for v in votes if v > 0 for j in range(1, total_seats + 1)}
    )

    def seats_at(c: int) -> int:
        # number of quotients >= c/scale == sum of floor(v_i * scale / c)
        return sum(v * scale // c for v in votes)

    # largest key c with seats_at(c) >= total_seats; seats_at decreases in c
    lo, hi = 0, len(keys) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if seats_at(keys[mid]) >= total_seats:
            lo = mid
        else:
            hi = mid - 1
    c = keys[lo]

    base = [v * scale // c for v in votes]
    excess = sum(base) - total_seats
    if excess > 0:
        # entities whose last seat sits exactly on the boundary quotient
        boundary = [i for i in range(n) if base[i] > 0 and votes[i] * scale == c * base[i]]
        # same preference order as the iterative rule; the tail gives seats back
        boundary.sort(key=lambda i: (-votes[i], ids[i]))
        for i in boundary[len(boundary) - excess:]:
            base[i] -= 1

    return SeatAllocation(
        seats=dict(zip(ids, base)), total_seats=total_seats, log=None
    )


def allocation_from_votes(votes: Mapping[str, int], total_seats: int) -> SeatAllocation:
    """Convenience wrapper: allocate straight from an id -> votes mapping."""
    return dhondt_allocate(
        (Entity(name, v) for name, v in votes.items()), total_seats
    )
