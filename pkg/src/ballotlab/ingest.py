"""Reading and writing ballot files.

Two formats are supported:

* **Raw cast-vote-record document** -- a UTF-8 JSON object
  ``{"candidates": [...], "ballots": [[["A"], ["B"], []], ...]}`` where
  each ballot is an array of rank positions and each rank position an
  array of mark strings.  Write-in marks carry the ``WRITEIN:`` prefix.

* **Condensed profile file** -- UTF-8 CSV with header ``pattern,count``
  and one row per preference pattern: ``bullet:<C>``, ``full:<C1>><C2>``,
  ``over2:<C1>+<C2>``, ``over3:<C1>+...+<Cn>`` (the whole roster), and
  ``blank``.  Missing patterns read as zero.  Candidate names must not
  contain ``,``, ``>`` or ``+``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import (
    CondensedProfile,
    RankedBallot,
    classify_ballot,
    condense,
    is_write_in,
    validate_roster,
)
from .errors import ParseError

MAX_COUNT = 2**63 - 1  # counts must fit a 64-bit signed integer

_RESERVED = (",", ">", "+")


@dataclass(frozen=True)
class RawCvrDocument:
    """A parsed raw cast-vote-record: roster plus one ballot per voter."""

    candidates: tuple[str, ...]
    ballots: tuple[RankedBallot, ...]


def parse_raw(data: bytes) -> RawCvrDocument:
    """Parse and structurally validate a raw CVR document."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"raw document is not UTF-8: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"raw document syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc

    if not isinstance(doc, dict):
        raise ParseError("raw document must be a JSON object")
    unknown = set(doc) - {"candidates", "ballots"}
    if unknown:
        raise ParseError(f"raw document has unknown field {sorted(unknown)[0]!r}")
    if "candidates" not in doc or "ballots" not in doc:
        raise ParseError("raw document needs both 'candidates' and 'ballots'")

    if not isinstance(doc["candidates"], list) or not all(
        isinstance(c, str) for c in doc["candidates"]
    ):
        raise ParseError("'candidates' must be an array of strings")
    try:
        roster = validate_roster(doc["candidates"])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    roster_set = frozenset(roster)

    if not isinstance(doc["ballots"], list):
        raise ParseError("'ballots' must be an array")
    ballots = []
    rank_positions: int | None = None
    for i, raw_ballot in enumerate(doc["ballots"]):
        if not isinstance(raw_ballot, list):
            raise ParseError(f"ballot {i} must be an array of rank positions")
        if rank_positions is None:
            rank_positions = len(raw_ballot)
        elif len(raw_ballot) != rank_positions:
            raise ParseError(
                f"ballot {i} has {len(raw_ballot)} rank positions, expected {rank_positions}"
            )
        ranks = []
        for j, raw_rank in enumerate(raw_ballot):
            if not isinstance(raw_rank, list) or not all(
                isinstance(m, str) for m in raw_rank
            ):
                raise ParseError(f"ballot {i} rank {j + 1} must be an array of mark strings")
            for mark in raw_rank:
                if not is_write_in(mark) and mark not in roster_set:
                    raise ParseError(
                        f"ballot {i} rank {j + 1}: mark {mark!r} names no roster candidate"
                    )
            ranks.append(frozenset(raw_rank))
        ballots.append(RankedBallot(tuple(ranks)))
    return RawCvrDocument(candidates=roster, ballots=tuple(ballots))


def ingest(doc: RawCvrDocument) -> CondensedProfile:
    """Classify every ballot in a raw document and condense the result."""
    classified = (classify_ballot(b, doc.candidates) for b in doc.ballots)
    return condense(classified, doc.candidates)


def _check_name(name: str) -> str:
    for ch in _RESERVED:
        if ch in name:
            raise ParseError(
                f"candidate name {name!r} contains reserved character {ch!r}"
            )
    return name


def _parse_count(text: str, line_no: int) -> int:
    try:
        count = int(text)
    except ValueError as exc:
        raise ParseError(f"line {line_no}: count {text!r} is not an integer") from exc
    if count < 0:
        raise ParseError(f"line {line_no}: count {count} is negative")
    if count > MAX_COUNT:
        raise ParseError(f"line {line_no}: count {count} exceeds 64-bit range")
    return count


def parse_condensed(data: bytes) -> CondensedProfile:
    """Parse a condensed profile file.

    The roster is the candidates' order of first appearance across the
    pattern rows, which matches the order :func:`write_condensed` emits.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"condensed file is not UTF-8: {exc}") from exc

    lines = text.split("\n")
    if not lines or lines[0].strip() != "pattern,count":
        raise ParseError("condensed file must start with header 'pattern,count'")

    roster: list[str] = []

    def register(name: str) -> str:
        _check_name(name)
        if not name.strip():
            raise ParseError("pattern names an empty candidate")
        if name not in roster:
            roster.append(name)
        return name

    seen: set[str] = set()
    bullet: dict[str, int] = {}
    full: dict[tuple[str, str], int] = {}
    over2: dict[frozenset[str], int] = {}
    over3 = 0
    over3_names: tuple[str, ...] | None = None
    blank = 0

    for line_no, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise ParseError(f"line {line_no}: expected 'pattern,count', got {line!r}")
        token, raw_count = fields
        if token in seen:
            raise ParseError(f"line {line_no}: duplicate pattern {token!r}")
        seen.add(token)
        count = _parse_count(raw_count, line_no)

        if token == "blank":
            blank = count
        elif token.startswith("bullet:"):
            bullet[register(token[len("bullet:"):])] = count
        elif token.startswith("full:"):
            parts = token[len("full:"):].split(">")
            if len(parts) != 2 or parts[0] == parts[1]:
                raise ParseError(f"line {line_no}: malformed pattern {token!r}")
            full[(register(parts[0]), register(parts[1]))] = count
        elif token.startswith("over2:"):
            parts = token[len("over2:"):].split("+")
            if len(parts) != 2 or parts[0] == parts[1]:
                raise ParseError(f"line {line_no}: malformed pattern {token!r}")
            over2[frozenset(register(p) for p in parts)] = count
        elif token.startswith("over3:"):
            parts = token[len("over3:"):].split("+")
            if len(parts) < 2 or len(set(parts)) != len(parts):
                raise ParseError(f"line {line_no}: malformed pattern {token!r}")
            over3 = count
            over3_names = tuple(register(p) for p in parts)
        else:
            raise ParseError(f"line {line_no}: unknown pattern {token!r}")

    if over3_names is not None and set(over3_names) != set(roster):
        raise ParseError(
            "all-overvote pattern must list the whole roster, got "
            f"{list(over3_names)!r} with roster {roster!r}"
        )
    try:
        return CondensedProfile(tuple(roster), bullet, full, over2, over3, blank)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def write_condensed(profile: CondensedProfile) -> bytes:
    """Serialize a profile with every pattern spelled out, roster order.

    ``parse_condensed(write_condensed(p)) == p`` for all profiles.
    """
    for name in profile.candidates:
        _check_name(name)
    lines = ["pattern,count"]
    for c in profile.candidates:
        lines.append(f"bullet:{c},{profile.bullet_count(c)}")
    for first, second in profile.ranking_groups():
        lines.append(f"full:{first}>{second},{profile.full_count(first, second)}")
    for a, b in profile.candidate_pairs():
        lines.append(f"over2:{a}+{b},{profile.over2_count(a, b)}")
    if len(profile.candidates) >= 2:
        lines.append(f"over3:{'+'.join(profile.candidates)},{profile.over3}")
    lines.append(f"blank,{profile.blank_count}")
    return ("\n".join(lines) + "\n").encode("utf-8")
