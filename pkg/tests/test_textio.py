from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hypercomm.exact_matrix import Mat
from hypercomm.field import make_field
from hypercomm.textio import (
    ParseError,
    format_instance,
    format_matrix,
    format_pair,
    parse_instance,
    parse_matrix,
    parse_pair,
)


@pytest.mark.parametrize("desc", ["gf 5", "gf 2 2", "gf 3 2", "gf 2 3 1,1,0,1", "q"])
def test_matrix_roundtrip(desc):
    F = make_field(desc)
    M = Mat.random(F, 3, random.Random(0))
    assert parse_matrix(format_matrix(M)) == M


def test_rational_entries():
    F = make_field("q")
    M = Mat(F, [[Fraction(1, 2), -3], [0, Fraction(-7, 5)]])
    text = format_matrix(M)
    assert "1/2" in text and "-7/5" in text
    assert parse_matrix(text) == M


def test_instance_roundtrip(gf9):
    rng = random.Random(1)
    A, B = Mat.random(gf9, 3, rng), Mat.random(gf9, 3, rng)
    inst = parse_instance(format_instance(A, B))
    assert inst.A == A and inst.B == B and inst.n == 3 and inst.field == gf9


def test_pair_roundtrip_with_and_without_header(gf5):
    rng = random.Random(2)
    A1, A2 = Mat.random(gf5, 2, rng), Mat.random(gf5, 2, rng)
    text = format_pair(A1, A2)
    assert parse_pair(text) == (A1, A2)
    body = "\n".join(text.splitlines()[4:])
    assert parse_pair(body, gf5, 2) == (A1, A2)


def test_comments_and_blank_lines_ignored():
    text = "# an instance\ngf 5\n\n2\n# A\n1 2\n3 4\n\n0 1\n0 0\n"
    inst = parse_instance(text)
    assert inst.B == Mat(inst.field, [[0, 1], [0, 0]])


@pytest.mark.parametrize(
    "text, line",
    [
        ("gf 4\n2\n1 0\n0 1\n1 0\n0 1\n", 1),
        ("gf 5\nx\n", 2),
        ("gf 5\n2\n1 0\n0 1 2\n1 0\n0 1\n", 4),
        ("gf 5\n2\n1 0\n0 1\n0 0\n0 0\n", 5),
        ("gf 5\n2\n1 0\n0 y\n1 0\n0 1\n", 4),
        ("gf 5\n2\n1 0\n0 1\n1 0\n", 5),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_instance(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)
