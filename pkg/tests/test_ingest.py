import pytest

from ballotlab import (
    CondensedProfile,
    ParseError,
    ingest,
    parse_condensed,
    parse_raw,
    write_condensed,
)

from .conftest import alaska


def raw_doc(ballots, candidates=("A", "B", "C")):
    import json

    return json.dumps({"candidates": list(candidates), "ballots": ballots}).encode()


class TestParseRaw:
    def test_basic_document(self):
        doc = parse_raw(raw_doc([[["A"], ["B"], []]]))
        assert doc.candidates == ("A", "B", "C")
        assert len(doc.ballots) == 1
        assert doc.ballots[0].ranks == (frozenset(["A"]), frozenset(["B"]), frozenset())

    def test_overvote_rank(self):
        doc = parse_raw(raw_doc([[["A", "B"], [], []]]))
        assert doc.ballots[0].ranks[0] == frozenset(["A", "B"])

    def test_unknown_candidate_token(self):
        with pytest.raises(ParseError, match="names no roster candidate"):
            parse_raw(raw_doc([[["D"], [], []]]))

    def test_write_in_token_is_accepted(self):
        doc = parse_raw(raw_doc([[["WRITEIN:zz"], [], []]]))
        assert doc.ballots[0].ranks[0] == frozenset(["WRITEIN:zz"])

    def test_ragged_ballots(self):
        with pytest.raises(ParseError, match="rank positions"):
            parse_raw(raw_doc([[["A"], [], []], [["B"], []]]))

    def test_unknown_field_rejected(self):
        with pytest.raises(ParseError, match="unknown field"):
            parse_raw(b'{"candidates": ["A", "B"], "ballots": [], "extra": 1}')

    def test_syntax_error_reports_position(self):
        with pytest.raises(ParseError, match=r"line 1, column"):
            parse_raw(b'{"candidates": [')

    def test_duplicate_candidates_rejected(self):
        with pytest.raises(ParseError, match="distinct"):
            parse_raw(raw_doc([], candidates=("A", "A")))


class TestIngest:
    def test_small_document(self):
        doc = parse_raw(raw_doc([
            [["A"], ["B"], ["C"]],
            [["A"], [], []],
            [["A", "B"], [], []],
        ]))
        profile = ingest(doc)
        assert profile.full_count("A", "B") == 1
        assert profile.bullet_count("A") == 1
        assert profile.over2_count("A", "B") == 1
        assert profile.blank_count == 0

    def test_blank_ballots_counted(self):
        doc = parse_raw(raw_doc([[[], [], []], [["WRITEIN:q"], [], []]]))
        profile = ingest(doc)
        assert profile.blank_count == 2
        assert profile.total_with_any_mark == 0

    def test_zero_ballots(self):
        assert ingest(parse_raw(raw_doc([]))) == CondensedProfile.zero(("A", "B", "C"))

    def test_partitions_input(self):
        doc = parse_raw(raw_doc([
            [["A"], ["C"], []],
            [["B", "C"], [], []],
            [[], [], []],
            [["A", "B", "C"], [], []],
        ]))
        profile = ingest(doc)
        total = profile.total_with_any_mark + profile.blank_count
        assert total == len(doc.ballots)


class TestCondensedFile:
    def test_single_row(self):
        profile = parse_condensed(b"pattern,count\nfull:Palin>Begich,34117\n")
        assert profile.full_count("Palin", "Begich") == 34117
        assert profile.candidates == ("Palin", "Begich")

    def test_empty_file_is_zero_profile(self):
        profile = parse_condensed(b"pattern,count\n")
        assert profile.candidates == ()
        assert profile.total_with_any_mark == 0

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_condensed(b"bullet:A,1\n")

    def test_duplicate_pattern(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_condensed(b"pattern,count\nbullet:A,1\nbullet:A,2\n")

    def test_negative_count(self):
        with pytest.raises(ParseError, match="negative"):
            parse_condensed(b"pattern,count\nbullet:A,-4\n")

    def test_malformed_pattern(self):
        with pytest.raises(ParseError, match="unknown pattern"):
            parse_condensed(b"pattern,count\ntriple:A,1\n")

    def test_malformed_full_pattern(self):
        with pytest.raises(ParseError, match="malformed"):
            parse_condensed(b"pattern,count\nfull:A>A,1\n")

    def test_overlarge_count(self):
        with pytest.raises(ParseError, match="64-bit"):
            parse_condensed(f"pattern,count\nbullet:A,{2**63}\n".encode())

    def test_all_overvote_must_cover_roster(self):
        data = b"pattern,count\nbullet:A,1\nbullet:B,1\nbullet:C,1\nover3:A+B,5\n"
        with pytest.raises(ParseError, match="whole roster"):
            parse_condensed(data)

    def test_round_trip_alaska(self, alaska_profile):
        assert parse_condensed(write_condensed(alaska_profile)) == alaska_profile

    def test_write_is_deterministic(self, alaska_profile):
        assert write_condensed(alaska_profile) == write_condensed(alaska())


class TestShippedFixture:
    def test_matches_published_counts(self, alaska_csv):
        profile = parse_condensed(alaska_csv.read_bytes())
        assert profile == alaska()

    def test_totals(self, alaska_csv):
        profile = parse_condensed(alaska_csv.read_bytes())
        assert profile.total_with_any_mark == 188985
        assert profile.total_valid_ranked == 188751
