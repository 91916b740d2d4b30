import pytest

from deltamod import matio
from deltamod.constructions import lower_bound_matrix
from deltamod.exactmat import DimensionError, ExactMatrix


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_round_trip(tmp_path, fmt):
    M = lower_bound_matrix(3, 4)
    path = tmp_path / f"m.{fmt}"
    matio.write_matrix(M, path, fmt)
    assert matio.read_matrix(path) == M


def test_text_comments_and_blank_lines():
    text = "# a comment\n2 2\n\n1 0  # first row\n0 1\n"
    assert matio.parse(text) == ExactMatrix.identity(2)


def test_header_mismatch():
    with pytest.raises(DimensionError):
        matio.parse_text("2 2\n1 0\n")


def test_json_without_columns():
    M = matio.from_json_obj({"rows": 3, "cols": 0, "data": [[], [], []]})
    assert M.shape == (3, 0)
