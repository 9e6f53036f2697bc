"""Wire formats: rational strings, JSON documents, CSV ingestion."""

import json
from fractions import Fraction
from random import Random

import pytest

from tropmean import (
    NEG_INF,
    ParseError,
    PolytropeMatrix,
    SampleSet,
    canonicalize,
    exact_frechet,
    find_certificate,
)
from tropmean.serialize import (
    certificate_from_json,
    certificate_to_json,
    format_rational,
    load_points,
    matrix_from_json,
    matrix_to_json,
    parse_rational,
    point_from_json,
    point_to_json,
    result_to_json,
)
from support import rand_point

F = Fraction


def test_rational_strings_round_trip():
    assert format_rational(F(3)) == "3"
    assert format_rational(F(-7, 2)) == "-7/2"
    assert parse_rational("22/7") == F(22, 7)
    assert parse_rational(" -4 ") == F(-4)
    assert parse_rational("2.5") == F(5, 2)


def test_parse_rational_failures():
    with pytest.raises(ParseError):
        parse_rational("one half")
    with pytest.raises(ParseError):
        parse_rational("1/0")


def test_point_round_trip():
    rng = Random("serialize:points")
    for _ in range(40):
        p = rand_point(rng, rng.randint(2, 6))
        assert point_from_json(point_to_json(p)) == p
    with pytest.raises(ParseError):
        point_from_json(["0"])
    with pytest.raises(ParseError):
        point_from_json("0,1")


def test_matrix_round_trip_with_bottom_entries():
    mat = PolytropeMatrix.from_rows(
        [
            [F(0), F(1), NEG_INF],
            [F(-4), F(0), F(5, 2)],
            [NEG_INF, F(3), F(0)],
        ]
    )
    doc = matrix_to_json(mat)
    assert doc["entries"][0][2] is None
    back = matrix_from_json(doc)
    assert back.entries == mat.entries


def test_matrix_json_validation():
    with pytest.raises(ParseError):
        matrix_from_json({"n": 2})
    with pytest.raises(ParseError):
        matrix_from_json({"n": 2, "entries": [["0", "1"]]})
    with pytest.raises(ParseError):
        matrix_from_json({"entries": [["0"], ["1", "2"]]})


def test_certificate_round_trip_uses_one_based_indices():
    s = SampleSet.from_rows([(-3, 0, 0), (0, -6, 0), (0, 0, -12)])
    cert = find_certificate(s, canonicalize([0, 0, -1]))
    doc = certificate_to_json(cert)
    assert doc["c_star"] == "186"
    assert [g["sample"] for g in doc["weights"]] == [1, 2, 3]
    for group in doc["weights"]:
        for item in group["pieces"]:
            assert 1 <= item["i"] <= 3 and 1 <= item["k"] <= 3
    back = certificate_from_json(json.loads(json.dumps(doc)), s)
    assert back == cert


def test_certificate_json_rejects_mismatched_constants():
    s = SampleSet.from_rows([(0, 0, 0), (0, 1, 2)])
    result = exact_frechet(s)
    doc = certificate_to_json(result.certificate)
    doc["weights"][0]["pieces"][0]["c"] = "999"
    with pytest.raises(ParseError):
        certificate_from_json(doc, s)


def test_result_document_shape():
    s = SampleSet.from_rows([(0, 0, 0), (0, 1, 2)])
    result = exact_frechet(s)
    doc = result_to_json(result)
    assert doc["min_sum"] == "2"
    assert doc["exact"] is True
    assert doc["mean"] == point_to_json(result.mean)
    assert doc["distances"] == ["1", "1"]
    assert {tuple(v) for v in doc["pseudovertices"]} == {
        ("0", "0", "1"),
        ("0", "1", "1"),
    }
    assert "certificate" in doc
    json.dumps(doc)  # the document is plain JSON data


def test_load_points_json_forms():
    s, options = load_points('{"points": [[0, 1], ["1/2", 3]]}')
    assert s.m == 2 and s.n == 2
    assert s[1] == canonicalize([F(1, 2), F(3)])
    assert options == {}
    s, options = load_points('{"points": [[0, 1]], "options": {"tol": "1/9"}}')
    assert options == {"tol": "1/9"}
    s, _ = load_points("[[0, 1], [2, 3]]")
    assert s.m == 2


def test_load_points_decimals_are_exact():
    s, _ = load_points('{"points": [[0, 0.1], [0, 0.2]]}')
    assert s[0].coords == (F(0), F(1, 10))
    assert s[1].coords == (F(0), F(1, 5))


def test_load_points_csv():
    s, options = load_points("0, 1, 2\n\n3, 4, 5\n")
    assert options == {}
    assert s.m == 2
    assert s[1] == canonicalize([3, 4, 5])
    s, _ = load_points("1/2,0\n-3,0.25\n")
    assert s[1] == canonicalize([F(-3), F(1, 4)])


def test_load_points_error_positions():
    with pytest.raises(ParseError, match="line 1"):
        load_points('{"points": [[0, 1]')
    with pytest.raises(ParseError, match="line 2"):
        load_points("0,1\n0,x\n")
    with pytest.raises(ParseError):
        load_points('{"values": [[0, 1]]}')
    with pytest.raises(ParseError):
        load_points('{"points": []}')
    with pytest.raises(ParseError):
        load_points("")
    with pytest.raises(ParseError):
        load_points('{"points": [[0, 1], [0, 1, 2]]}')
    with pytest.raises(ParseError):
        load_points('{"points": [[true, false]]}')
