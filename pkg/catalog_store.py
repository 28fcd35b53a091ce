import json, os, threading, tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterable, List, Tuple

try:
    import fcntl  # type: ignore
except ImportError:  # pragma: no cover
    fcntl = None  # type: ignore

from common_utils import utc_now_iso
from enumeration import CatalogEntry
from formats import emit_mla, read_mla
from mla_core import FiniteMLA

INDEX_NAME = "index.txt"
RUNS_NAME = "runs.jsonl"
_LOCK_NAME = ".catalog.lock"
_RUNS_LIMIT = 100
_MEM_LOCK = threading.Lock()


@contextmanager
def _locked(out_dir: Path) -> Any:
    with _MEM_LOCK:
        out_dir.mkdir(parents=True, exist_ok=True)
        if fcntl:
            with open(out_dir / _LOCK_NAME, "w") as lock_fp:
                fcntl.flock(lock_fp, fcntl.LOCK_EX)
                try:
                    yield
                finally:
                    fcntl.flock(lock_fp, fcntl.LOCK_UN)
        else:  # pragma: no cover
            yield


def _write_unlocked(path: Path, payload: str) -> None:
    with tempfile.NamedTemporaryFile("w", delete=False, dir=path.parent, encoding="utf-8", newline="\n") as tmp:
        tmp.write(payload)
        tmp.flush()
        os.fsync(tmp.fileno())
        temp_name = tmp.name
    os.replace(temp_name, path)


def _append_run_unlocked(out_dir: Path, record: Dict[str, Any]) -> None:
    path = out_dir / RUNS_NAME
    lines: List[str] = []
    if path.exists():
        try:
            with open(path, "r", encoding="utf-8") as fp:
                lines = fp.readlines()
        except Exception:
            lines = []
    lines.append(json.dumps(record, ensure_ascii=False) + "\n")
    if len(lines) > _RUNS_LIMIT:
        lines = lines[-_RUNS_LIMIT:]
    _write_unlocked(path, "".join(lines))


def index_line(file_name: str, entry: CatalogEntry) -> str:
    return "\t".join((file_name, entry.group, ",".join(entry.flags())))


def write_algebra(path: Path, A: FiniteMLA) -> None:
    path = Path(path)
    with _locked(path.parent):
        _write_unlocked(path, emit_mla(A))


# 카탈로그 전체를 out_dir 에 기록: 구조마다 .mla 한 개 + index.txt
def write_catalog(entries: Iterable[CatalogEntry], out_dir: Path, max_order: int) -> Path:
    out_dir = Path(out_dir)
    entries = list(entries)
    with _locked(out_dir):
        lines: List[str] = []
        for entry in entries:
            file_name = f"{entry.name}.mla"
            _write_unlocked(out_dir / file_name, emit_mla(entry.algebra))
            lines.append(index_line(file_name, entry))
        index = out_dir / INDEX_NAME
        _write_unlocked(index, "".join(line + "\n" for line in lines))
        _append_run_unlocked(out_dir, {
            "ts": utc_now_iso(),
            "max_order": max_order,
            "structures": len(entries),
            "failures": sum(1 for e in entries if not e.structure_ok),
        })
    return index


def read_index(out_dir: Path) -> List[Tuple[str, str, List[str]]]:
    out_dir = Path(out_dir)
    with _locked(out_dir):
        path = out_dir / INDEX_NAME
        if not path.exists():
            return []
        with open(path, "r", encoding="utf-8") as fp:
            raw = fp.read().splitlines()
    out: List[Tuple[str, str, List[str]]] = []
    for line in raw:
        parts = line.split("\t")
        if len(parts) != 3:
            continue
        out.append((parts[0], parts[1], [f for f in parts[2].split(",") if f]))
    return out


def read_runs(out_dir: Path, limit: int = 20) -> List[Dict[str, Any]]:
    path = Path(out_dir) / RUNS_NAME
    with _locked(Path(out_dir)):
        if not path.exists():
            return []
        with open(path, "r", encoding="utf-8") as fp:
            lines = fp.readlines()
    out: List[Dict[str, Any]] = []
    for line in lines[-limit:]:
        try:
            out.append(json.loads(line))
        except Exception:
            continue
    return out


def load_entry(out_dir: Path, file_name: str) -> FiniteMLA:
    return read_mla(str(Path(out_dir) / file_name))
