"""Pairwise head-to-head tallies and center-squeeze diagnosis.

Bullet ballots rank their candidate above everyone else and express no
preference among the rest; full rankings place first above second above
the remaining candidates.  The default ``ranked-only`` basis uses just
those patterns.  The ``include-ties`` basis additionally lets a two-way
top overvote prefer both of its pair over outsiders while abstaining
within the pair; all-way overvotes never contribute on either basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import CondensedProfile
from .irv import tabulate_irv

RANKED_ONLY = "ranked-only"
INCLUDE_TIES = "include-ties"

# Rank grids per pattern: lower rank wins the pair, absence ranks below
# every present candidate, equal (or jointly absent) means no preference.
_TOP = 0
_SECOND = 1


@dataclass(frozen=True)
class PairwiseTally:
    """Head-to-head counts over every candidate pair.

    For each ordered pair ``(a, b)``, ``prefers[(a, b)]`` counts ballots
    ranking ``a`` above ``b``; ``no_preference`` holds the remainder, so
    the three numbers for a pair always sum to ``total``.
    """

    candidates: tuple[str, ...]
    basis: str
    prefers: dict[tuple[str, str], int]
    no_preference: dict[frozenset[str], int]
    total: int

    def pair_share(self, a: str, b: str) -> Fraction | None:
        """Share of the two-way vote won by ``a`` against ``b``."""
        two_way = self.prefers[(a, b)] + self.prefers[(b, a)]
        if two_way == 0:
            return None
        return Fraction(self.prefers[(a, b)], two_way)


@dataclass(frozen=True)
class CondorcetReport:
    """Condorcet winner/loser plus the two-way share for each ordered pair."""

    winner: str | None
    loser: str | None
    margins: dict[tuple[str, str], Fraction]


@dataclass(frozen=True)
class CenterSqueeze:
    """Whether instant-runoff counting eliminated the Condorcet winner."""

    squeezed: bool
    condorcet_winner: str | None
    irv_winner: str
    condorcet_winner_eliminated_in_round: int | None


def pairwise_tallies(profile: CondensedProfile, basis: str = RANKED_ONLY) -> PairwiseTally:
    """Tally every head-to-head contest implied by the profile."""
    if basis not in (RANKED_ONLY, INCLUDE_TIES):
        raise ValueError(f"unknown basis {basis!r}")

    weighted_grids: list[tuple[dict[str, int], int]] = []
    for c, n in profile.bullet.items():
        weighted_grids.append(({c: _TOP}, n))
    for (first, second), n in profile.full.items():
        weighted_grids.append(({first: _TOP, second: _SECOND}, n))
    if basis == INCLUDE_TIES:
        for pair, n in profile.over2.items():
            weighted_grids.append(({c: _TOP for c in pair}, n))

    prefers: dict[tuple[str, str], int] = {}
    no_preference: dict[frozenset[str], int] = {}
    for a, b in profile.candidate_pairs():
        above_a = above_b = neither = 0
        for grid, n in weighted_grids:
            rank_a = grid.get(a)
            rank_b = grid.get(b)
            if rank_a is not None and (rank_b is None or rank_a < rank_b):
                above_a += n
            elif rank_b is not None and (rank_a is None or rank_b < rank_a):
                above_b += n
            else:
                neither += n
        prefers[(a, b)] = above_a
        prefers[(b, a)] = above_b
        no_preference[frozenset((a, b))] = neither

    total = sum(n for _, n in weighted_grids)
    return PairwiseTally(profile.candidates, basis, prefers, no_preference, total)


def condorcet_winner_loser(tally: PairwiseTally) -> CondorcetReport:
    """Identify the candidates beating (losing to) every rival, if any."""
    winner = loser = None
    for c in tally.candidates:
        others = [x for x in tally.candidates if x != c]
        if others and all(tally.prefers[(c, x)] > tally.prefers[(x, c)] for x in others):
            winner = c
        if others and all(tally.prefers[(x, c)] > tally.prefers[(c, x)] for x in others):
            loser = c

    margins = {}
    for a, b in tally.prefers:
        share = tally.pair_share(a, b)
        if share is not None:
            margins[(a, b)] = share
    return CondorcetReport(winner=winner, loser=loser, margins=margins)


def detect_center_squeeze(
    profile: CondensedProfile, *, break_ties_by_roster: bool = False
) -> CenterSqueeze:
    """Diagnose whether the Condorcet winner fell before the final round.

    Uses the ranked-only basis; propagates the tabulator's tie error.
    """
    report = condorcet_winner_loser(pairwise_tallies(profile, RANKED_ONLY))
    outcome = tabulate_irv(profile, break_ties_by_roster=break_ties_by_roster)

    eliminated_in = None
    if report.winner is not None:
        for rnd in outcome.rounds:
            if rnd.eliminated == report.winner:
                eliminated_in = rnd.round_index
                break
    return CenterSqueeze(
        squeezed=eliminated_in is not None,
        condorcet_winner=report.winner,
        irv_winner=outcome.winner,
        condorcet_winner_eliminated_in_round=eliminated_in,
    )
