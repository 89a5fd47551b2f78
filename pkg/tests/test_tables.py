import io

import pytest

from ediffract import ResultTable


def test_csv_layout():
    table = ResultTable(("n", "value"), [(1, 0.5), (2, 0.25)])
    assert table.to_csv() == "n,value\n1,0.5\n2,0.25\n"


def test_twelve_significant_digits():
    table = ResultTable(("x",), [(1.0 / 3.0,)])
    assert table.to_csv().splitlines()[1] == "0.333333333333"


def test_large_and_small_floats_use_exponent():
    table = ResultTable(("x", "y"), [(1.814672637114951e16, 5e-10)])
    row = table.to_csv().splitlines()[1]
    assert row == "1.81467263711e+16,5e-10"


def test_ints_and_bools_render_plainly():
    table = ResultTable(("n", "ok"), [(-3, True), (7, False)])
    assert table.to_csv().splitlines()[1:] == ["-3,1", "7,0"]


def test_column_accessor():
    table = ResultTable(("a", "b"), [(1, 2.0), (3, 4.0)])
    assert table.column("b") == [2.0, 4.0]
    with pytest.raises(KeyError):
        table.column("c")


def test_ragged_rows_rejected():
    with pytest.raises(ValueError):
        ResultTable(("a", "b"), [(1,)])


def test_write_stream():
    table = ResultTable(("a",), [(1,)])
    buf = io.StringIO()
    table.write(buf)
    assert buf.getvalue() == "a\n1\n"


def test_empty_table_still_has_header():
    assert ResultTable(("a", "b"), []).to_csv() == "a,b\n"
