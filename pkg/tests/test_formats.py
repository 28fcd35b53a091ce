import numpy as np
import pytest

from catalog_store import write_algebra
from errors import ParseError
from extensions import verify_rlce
from formats import emit_mla, emit_rlce, parse_mla, parse_rlce, read_mla, read_rlce
import fixtures

Z2_TEXT = """\
# Z2 with trivial star
mla 1
order 2   # two elements
names 1 g
group
0 1
1   0
star
0 0
0 0
"""

PLAIN = "mla 1\norder 2\ngroup\n0 1\n1 0\nstar\n0 0\n0 0\n"


def test_hand_written_file_with_comments():
    A = parse_mla(Z2_TEXT, name="z2")
    assert A.order == 2
    assert A.names == ("1", "g")
    assert A.name == "z2"
    assert A.group_table.tolist() == [[0, 1], [1, 0]]
    assert emit_mla(A) == "mla 1\norder 2\nnames 1 g\ngroup\n0 1\n1 0\nstar\n0 0\n0 0\n"


def test_emitted_fixture_reads_back(d4b):
    text = emit_mla(d4b)
    A = parse_mla(text.encode("utf-8"))
    assert np.array_equal(A.group_table, d4b.group_table)
    assert np.array_equal(A.star_table, d4b.star_table)
    assert A.names == d4b.names
    assert emit_mla(A) == text


@pytest.mark.parametrize(
    "text, line, column, fragment",
    [
        ("mlb 1\n", 1, 1, "bad header"),
        ("mla 2\norder 2\n", 1, 5, "unsupported version 2"),
        ("mla 1\norder x\n", 2, 7, "positive integer"),
        ("mla 1\norder 2\nnames a\n", 3, 8, "takes 2 value(s)"),
        ("mla 1\norder 2\ngroup\n0\n1 0\n", 4, 2, "expected 2 entries, found 1"),
        ("mla 1\norder 2\ngroup\n0 x\n", 4, 3, "not a non-negative integer"),
        ("mla 1\norder 2\ngroup\n0 5\n", 4, 3, "out of range"),
        ("mla 1\norder 2\ngroup\n0 1\n1 0\nstar\n0 0\n", 8, 1, "unexpected end of input"),
        (PLAIN + "extra\n", 9, 1, "unexpected content 'extra'"),
        ("mla 1\norder 2\ngroup\n1 0\n0 1\nstar\n0 0\n0 0\n", 4, 1, "identity must be element 0"),
    ],
    ids=["header", "version", "order", "names", "row-length", "non-integer", "range", "eof", "trailing", "identity"],
)
def test_parse_errors_carry_positions(text, line, column, fragment):
    with pytest.raises(ParseError) as exc:
        parse_mla(text)
    assert (exc.value.line, exc.value.column) == (line, column)
    assert fragment in exc.value.reason


def test_non_utf8_input():
    with pytest.raises(ParseError) as exc:
        parse_mla(b"mla 1\n\xff\n")
    assert exc.value.line == 1


def test_read_mla_names_by_stem(tmp_path, v4a):
    write_algebra(tmp_path / "v4a.mla", v4a)
    assert read_mla(str(tmp_path / "v4a.mla")).name == "v4a"


# =================
# [.rlce]
# =================

def _write_extension(tmp_path, name, E):
    write_algebra(tmp_path / f"{name}.L.mla", E.L)
    write_algebra(tmp_path / f"{name}.G.mla", E.G)
    path = tmp_path / f"{name}.rlce"
    path.write_text(emit_rlce(E, f"{name}.L.mla", f"{name}.G.mla"), encoding="utf-8")
    return path


def test_rlce_fixture_reads_back(tmp_path, seeds):
    name, E = seeds[3]
    path = _write_extension(tmp_path, name, E)
    back = read_rlce(str(path))
    assert back.name == name
    assert back.H.indices() == E.H.indices()
    assert np.array_equal(back.tau.map, E.tau.map)
    assert np.array_equal(back.action.brk_lg, E.action.brk_lg)
    assert verify_rlce(back).ok


def test_rlce_missing_algebra_file(tmp_path):
    path = tmp_path / "broken.rlce"
    path.write_text("rlce 1\nL nope.mla\n", encoding="utf-8")
    with pytest.raises(ParseError) as exc:
        read_rlce(str(path))
    assert (exc.value.line, exc.value.column) == (2, 3)
    assert "cannot load 'nope.mla'" in exc.value.reason


def test_rlce_errors_in_referenced_file_are_wrapped():
    def loader(ref):
        return parse_mla("mlb 1\n")

    with pytest.raises(ParseError) as exc:
        parse_rlce("rlce 1\nL l.mla\n", loader)
    assert exc.value.line == 2
    assert "in l.mla" in exc.value.reason


@pytest.mark.parametrize(
    "body, line, column",
    [
        ("H 0 1 2 3\ntau 0 1 2\n", 5, 10),
        ("H 0 9\n", 4, 5),
        ("tau 0 1 2 3\n", 4, 1),
    ],
    ids=["tau-length", "h-range", "missing-h"],
)
def test_rlce_parse_errors(body, line, column):
    algebras = {"l": fixtures.v4a(), "g": fixtures.v4a()}
    with pytest.raises(ParseError) as exc:
        parse_rlce("rlce 1\nL l\nG g\n" + body, algebras.__getitem__)
    assert (exc.value.line, exc.value.column) == (line, column)
