import json

import pytest

from foldcube import MatchingFormatError, build_folded_hypercube, build_hypercube, dimension_class, phi_map
from foldcube.formats import (
    certificate_digest,
    parse_certificate,
    parse_edge_list,
    parse_matching,
    witness_json,
    write_certificate,
    write_edge_list,
    write_matching,
)
from foldcube.isomorphism import find_noniso_witness


def test_edge_list_fq3_header_and_lines():
    text = write_edge_list(build_folded_hypercube(3))
    lines = text.split("\n")
    assert lines[0] == "8 16"
    assert lines[1] == "000 001"
    assert text.endswith("\n") and "\r" not in text
    body = lines[1:-1]
    assert body == sorted(body)
    assert all(line == line.rstrip() and line.split()[0] < line.split()[1] for line in body)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_edge_list_roundtrip(n):
    for g in (build_hypercube(n), build_folded_hypercube(max(n, 2))):
        assert parse_edge_list(write_edge_list(g)) == g


def test_edge_list_bad_count():
    with pytest.raises(ValueError):
        parse_edge_list("4 3\n00 01\n")


def test_matching_roundtrip_bytes():
    text = write_matching(dimension_class(4, 3))
    assert write_matching(parse_matching(text)) == text
    assert text.splitlines()[0] == "0000 0010"


def test_matching_duplicate_endpoint_line_number():
    with pytest.raises(MatchingFormatError) as err:
        parse_matching("000 001\n010 011\n001 101\n")
    assert err.value.line == 3
    assert "line 3" in str(err.value)


def test_matching_bad_label():
    with pytest.raises(MatchingFormatError) as err:
        parse_matching("000 001\n01 011\n", n=3)
    assert err.value.line == 2


def test_certificate_roundtrip():
    phi = phi_map(4, 2)
    text = write_certificate(phi)
    assert text.splitlines()[4] == "0100 1111"
    assert parse_certificate(text) == phi
    assert len(certificate_digest(phi)) == 64


def test_witness_json(mixed_fq4):
    payload = json.loads(witness_json(find_noniso_witness(4, mixed_fq4), 4))
    assert payload == {
        "kind": "common_neighbor_violation",
        "vertices": ["0000", "0011"],
        "common_neighbors": ["0010"],
        "matching_edge": "0001 0011",
    }
