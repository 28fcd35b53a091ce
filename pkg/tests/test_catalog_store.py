import json

import numpy as np

from catalog_store import INDEX_NAME, RUNS_NAME, load_entry, read_index, read_runs, write_algebra, write_catalog
from enumeration import build_catalog


def test_write_catalog_index_and_runs(tmp_path):
    entries = build_catalog(4)
    index = write_catalog(entries, tmp_path, 4)
    assert index == tmp_path / INDEX_NAME
    rows = read_index(tmp_path)
    assert [r[0] for r in rows] == [f"{e.name}.mla" for e in entries]
    assert rows[-1][1] == "V4"
    assert "order=4" in rows[-1][2]

    A = load_entry(tmp_path, rows[-1][0])
    assert np.array_equal(A.star_table, entries[-1].algebra.star_table)

    write_catalog(entries[:1], tmp_path, 1)
    runs = read_runs(tmp_path)
    assert [r["max_order"] for r in runs] == [4, 1]
    assert runs[0]["structures"] == 6 and runs[0]["failures"] == 0


def test_runs_log_is_bounded(tmp_path):
    entries = build_catalog(1)
    for _ in range(105):
        write_catalog(entries, tmp_path, 1)
    lines = (tmp_path / RUNS_NAME).read_text(encoding="utf-8").splitlines()
    assert len(lines) == 100
    assert json.loads(lines[-1])["structures"] == 1


def test_missing_catalog_reads_empty(tmp_path):
    assert read_index(tmp_path / "none") == []
    assert read_runs(tmp_path / "none") == []


def test_write_algebra_is_canonical(tmp_path, v4a):
    path = tmp_path / "sub" / "v4a.mla"
    write_algebra(path, v4a)
    assert path.read_bytes().startswith(b"mla 1\norder 4\n")
    assert not list((tmp_path / "sub").glob("tmp*"))
