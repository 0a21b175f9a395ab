"""Approval-voting counterfactual over a three-candidate profile.

The behavioral model: bullet voters approve exactly their candidate;
two-way top-overvote voters approve both pair members; all-way
overvoters are excluded; voters with a full ranking always approve
their first choice, never their third, and approve their second choice
at a per-group rate ``p``.  Group scores are therefore affine in each
rate, and everything here is computed in exact rational arithmetic --
rounding happens only at display time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import CondensedProfile
from .errors import UnattainableError
from .rational import bounded_rational, exact_rational

Group = tuple[str, str]  # (first choice, second choice)


def _require_three(profile: CondensedProfile) -> None:
    if len(profile.candidates) != 3:
        raise ValueError(
            f"this model needs exactly 3 candidates, got {len(profile.candidates)}"
        )


@dataclass(frozen=True)
class ApprovalScenario:
    """Second-choice approval rate per full-ranking group, each in [0, 1]."""

    rates: dict[Group, Fraction]

    def __post_init__(self) -> None:
        checked = {
            g: bounded_rational(p, Fraction(0), Fraction(1), f"approval rate for {g[0]}>{g[1]}")
            for g, p in self.rates.items()
        }
        object.__setattr__(self, "rates", checked)

    @classmethod
    def uniform(cls, profile: CondensedProfile, p) -> "ApprovalScenario":
        return cls({g: p for g in profile.ranking_groups()})

    @classmethod
    def for_profile(cls, profile: CondensedProfile, rates: dict[Group, object]) -> "ApprovalScenario":
        """Scenario over all of the profile's groups; unlisted groups get 0."""
        groups = profile.ranking_groups()
        unknown = set(rates) - set(groups)
        if unknown:
            raise ValueError(f"rate given for unknown group {sorted(unknown)[0]!r}")
        return cls({g: rates.get(g, 0) for g in groups})


@dataclass(frozen=True)
class ApprovalOutcome:
    """Exact expected scores plus approvals-per-ballot diagnostics.

    ``winners`` lists every candidate achieving the top score (more than
    one entry means an exact tie, which is never broken silently).
    ``mean_approvals_ranking_voters`` averages over full-ranking voters
    only (their guaranteed first approval plus the modeled second-choice
    rate); ``mean_approvals_all_voters`` divides total approvals by
    every ballot that approves at least one candidate.
    """

    scores: dict[str, Fraction]
    winners: tuple[str, ...]
    mean_approvals_ranking_voters: Fraction
    mean_approvals_all_voters: Fraction


@dataclass(frozen=True)
class ApprovalRange:
    """Vote range per candidate: everyone at rate 0 vs everyone at rate 1."""

    minimum: dict[str, int]
    maximum: dict[str, int]


def _base_votes(profile: CondensedProfile) -> dict[str, int]:
    # Guaranteed approvals: first-place support including two-way ties.
    return profile.first_place_totals(include_top_ties=True)


def approval_range(profile: CondensedProfile) -> ApprovalRange:
    """Minimum and maximum possible approval count per candidate."""
    _require_three(profile)
    base = _base_votes(profile)
    second = profile.second_place_totals()
    return ApprovalRange(
        minimum=dict(base),
        maximum={c: base[c] + second[c] for c in profile.candidates},
    )


def _winners(scores: dict[str, Fraction], order: tuple[str, ...]) -> tuple[str, ...]:
    top = max(scores.values())
    return tuple(c for c in order if scores[c] == top)


def evaluate_approval(profile: CondensedProfile, scenario: ApprovalScenario) -> ApprovalOutcome:
    """Exact expected approval scores under the scenario."""
    _require_three(profile)
    scores = {c: Fraction(n) for c, n in _base_votes(profile).items()}
    second_approvals = Fraction(0)
    for (first, second), p in scenario.rates.items():
        n = profile.full_count(first, second)
        scores[second] += p * n
        second_approvals += p * n

    rankers = sum(profile.full.values())
    mean_rankers = 1 + second_approvals / rankers if rankers else Fraction(1)
    participating = profile.total_valid_ranked + sum(profile.over2.values())
    total_approvals = sum(scores.values())
    mean_all = total_approvals / participating if participating else Fraction(0)

    return ApprovalOutcome(
        scores=scores,
        winners=_winners(scores, profile.candidates),
        mean_approvals_ranking_voters=mean_rankers,
        mean_approvals_all_voters=mean_all,
    )


def uniform_threshold(profile: CondensedProfile, riser: str, leader: str) -> Fraction | None:
    """Least uniform rate at which ``riser`` catches ``leader``, if any.

    The scores are affine in the uniform rate, so the crossing solves
    exactly: ``p* = (base_leader - base_riser) / (slope_riser -
    slope_leader)``.  Returns ``None`` when no rate in [0, 1] suffices.
    """
    if riser == leader:
        raise ValueError("riser and leader must differ")
    for c in (riser, leader):
        if c not in profile.candidates:
            raise ValueError(f"{c!r} is not on the roster")
    base = _base_votes(profile)
    slope = profile.second_place_totals()
    gap = base[leader] - base[riser]
    if gap <= 0:
        return Fraction(0)
    rise = slope[riser] - slope[leader]
    if rise <= 0:
        return None
    p = Fraction(gap, rise)
    return p if p <= 1 else None


def min_second_votes_to_clinch(profile: CondensedProfile, candidate: str, from_group: Group) -> int:
    """Fewest second-choice approvals from one group that guarantee victory.

    The target is to strictly exceed every rival's maximum possible
    count.  Raises :class:`UnattainableError` (carrying the required
    number) when the group is too small to supply it.
    """
    if from_group[1] != candidate:
        raise ValueError(
            f"group {from_group[0]}>{from_group[1]} does not rank {candidate!r} second"
        )
    rng = approval_range(profile)
    target = max(n for c, n in rng.maximum.items() if c != candidate)
    needed = max(target - rng.minimum[candidate] + 1, 0)
    group_size = profile.full_count(*from_group)
    if needed > group_size:
        raise UnattainableError(
            f"{candidate} needs {needed} second-choice votes to clinch, but the "
            f"{from_group[0]}>{from_group[1]} group has only {group_size} voters",
            required=needed,
        )
    return needed


def sweep_uniform(
    profile: CondensedProfile,
    grid_step,
    *,
    start=0,
    end=1,
) -> list[tuple[Fraction, tuple[str, ...]]]:
    """Winners at every uniform rate ``start, start+step, ...`` up to ``end``."""
    step = exact_rational(grid_step, "grid step")
    if not 0 < step <= 1:
        raise ValueError(f"grid step must lie in (0, 1], got {step}")
    start = bounded_rational(start, Fraction(0), Fraction(1), "grid start")
    end = bounded_rational(end, Fraction(0), Fraction(1), "grid end")
    if start > end:
        raise ValueError("grid start must not exceed grid end")

    points: list[tuple[Fraction, tuple[str, ...]]] = []
    k = 0
    while (p := start + k * step) <= end:
        outcome = evaluate_approval(profile, ApprovalScenario.uniform(profile, p))
        points.append((p, outcome.winners))
        k += 1
    return points
