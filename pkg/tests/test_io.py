import pytest
from hypothesis import given
from hypothesis import strategies as st

from sftprop.algebra import ZPLUS, ZPLUS_T, IntPoly, SemiringMatrix, int_matrix, render_matrix
from sftprop.io import MatrixParseError, matrix_from_json, matrix_to_json, parse_matrix, read_matrix


def test_parse_basic():
    assert parse_matrix("1 1\n1 0\n") == int_matrix([[1, 1], [1, 0]])


def test_comments_and_blank_lines():
    text = "# fibonacci\n\n1 1   # first row\n1 0\n"
    assert parse_matrix(text) == int_matrix([[1, 1], [1, 0]])


def test_parse_polynomial_entries():
    m = parse_matrix("0 t\n2t^2+t 1", ZPLUS_T)
    assert m[0, 1] == IntPoly((0, 1))
    assert m[1, 0] == IntPoly((0, 1, 2))


@pytest.mark.parametrize(
    "text, line, column",
    [("1 2\n3 x", 2, 3), ("1 2\n3", 2, 1), ("1 -2", 1, 3), ("  1 t", 1, 5)],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(MatrixParseError) as info:
        parse_matrix(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(info.value)


@pytest.mark.parametrize("text", ["", "\n\n", "# only a comment\n"])
def test_empty_document_rejected(text):
    with pytest.raises(MatrixParseError):
        parse_matrix(text)


def test_read_matrix_prefixes_path(tmp_path):
    p = tmp_path / "bad.mat"
    p.write_text("1 q\n")
    with pytest.raises(MatrixParseError) as info:
        read_matrix(str(p))
    assert str(info.value).startswith(str(p) + ": line 1, column 3")


def test_json_round_trip_with_empty_shapes():
    for m in (int_matrix([[2]]), SemiringMatrix.zeros(0, 3), SemiringMatrix.zeros(2, 0)):
        assert matrix_from_json(matrix_to_json(m)) == m


entries = st.lists(st.lists(st.integers(0, 20), min_size=3, max_size=3), min_size=1, max_size=4)
poly_entries = st.lists(
    st.lists(st.lists(st.integers(0, 3), max_size=3).map(IntPoly), min_size=2, max_size=2), min_size=1, max_size=3
)


@given(entries)
def test_document_round_trip(rows):
    m = SemiringMatrix.from_rows(rows, ZPLUS)
    once = parse_matrix(render_matrix(m))
    assert once == m
    assert parse_matrix(render_matrix(once)) == once


@given(poly_entries)
def test_polynomial_document_round_trip(rows):
    m = SemiringMatrix.from_rows(rows, ZPLUS_T)
    assert parse_matrix(render_matrix(m), ZPLUS_T) == m
