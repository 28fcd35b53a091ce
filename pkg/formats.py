# formats.py
# ---------------------------------------------
# 텍스트 파일 형식 (손으로 작성 가능, 정규 출력은 공백 1칸 + "\n")
#  - .mla  : "mla 1" / "order n" / [names ...] / group n행 / star n행
#  - .rlce : "rlce 1" / L <path> / G <path> / H ... / tau ... / act_gl, brk_gl, act_lg, brk_lg
#  - '#' 이후는 주석. 모든 구조 오류는 ParseError(줄, 열)
# ---------------------------------------------

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, List, Optional, Tuple, Union

import numpy as np

from actions import MutualAction
from errors import ParseError
from extensions import RelativeExtension
from mla_core import ElemSet, FiniteMLA, MLAHom

MLA_HEADER = ("mla", "1")
RLCE_HEADER = ("rlce", "1")
_TOKEN = re.compile(r"\S+")

Loader = Callable[[str], FiniteMLA]


@dataclass
class _Line:
    number: int
    tokens: List[Tuple[int, str]]  # (1-based column, token)

    @property
    def words(self) -> List[str]:
        return [t for _, t in self.tokens]

    def column(self, i: int) -> int:
        if i < len(self.tokens):
            return self.tokens[i][0]
        if not self.tokens:
            return 1
        col, tok = self.tokens[-1]
        return col + len(tok)


class _Reader:
    def __init__(self, data: Union[bytes, str]):
        if isinstance(data, bytes):
            try:
                data = data.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(f"input is not UTF-8 ({exc.reason})", 1) from exc
        self.lines: List[_Line] = []
        total = 0
        for number, raw in enumerate(data.splitlines(), start=1):
            total = number
            text = raw.split("#", 1)[0]
            tokens = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(text)]
            if tokens:
                self.lines.append(_Line(number, tokens))
        self.end_line = total + 1
        self.pos = 0

    def next(self, expecting: str) -> _Line:
        if self.pos >= len(self.lines):
            raise ParseError(f"unexpected end of input, expected {expecting}", self.end_line)
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def peek(self) -> Optional[_Line]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def done(self) -> None:
        line = self.peek()
        if line is not None:
            raise ParseError(f"unexpected content '{line.words[0]}' after the last block", line.number, line.column(0))

    def keyword(self, word: str, arity: Optional[int] = 0) -> _Line:
        line = self.next(f"'{word}'")
        if line.words[0] != word:
            raise ParseError(f"expected '{word}', found '{line.words[0]}'", line.number, line.column(0))
        if arity is not None and len(line.tokens) != arity + 1:
            raise ParseError(
                f"'{word}' takes {arity} value(s), found {len(line.tokens) - 1}", line.number, line.column(arity + 1)
            )
        return line

    def header(self, expected: Tuple[str, str]) -> None:
        line = self.next("a header")
        if line.words[0] != expected[0]:
            raise ParseError(f"bad header: expected '{expected[0]} {expected[1]}'", line.number, line.column(0))
        if line.words[1:] != [expected[1]]:
            found = " ".join(line.words[1:]) or "nothing"
            raise ParseError(f"unsupported version {found}, expected {expected[1]}", line.number, line.column(1))


def _index(line: _Line, i: int, bound: int, what: str) -> int:
    col, tok = line.tokens[i]
    if not tok.isdigit():
        raise ParseError(f"{what}: '{tok}' is not a non-negative integer", line.number, col)
    value = int(tok)
    if value >= bound:
        raise ParseError(f"{what}: index {value} out of range for order {bound}", line.number, col)
    return value


def _indices(line: _Line, start: int, count: Optional[int], bound: int, what: str) -> List[int]:
    n = len(line.tokens) - start
    if count is not None and n != count:
        raise ParseError(f"{what}: expected {count} entries, found {n}", line.number, line.column(start + min(n, count)))
    return [_index(line, i, bound, what) for i in range(start, len(line.tokens))]


def _matrix(rd: _Reader, word: str, rows: int, cols: int, bound: int) -> Tuple[np.ndarray, List[_Line]]:
    rd.keyword(word)
    out = np.zeros((rows, cols), dtype=np.int64)
    lines: List[_Line] = []
    for r in range(rows):
        line = rd.next(f"row {r + 1} of the {word} block")
        if not line.words[0].isdigit():
            raise ParseError(
                f"{word} block has {r} row(s), expected {rows}", line.number, line.column(0)
            )
        out[r] = _indices(line, 0, cols, bound, f"{word} row {r + 1}")
        lines.append(line)
    return out, lines


# =================
# [.mla]
# =================

def parse_mla(data: Union[bytes, str], name: str = "") -> FiniteMLA:
    rd = _Reader(data)
    rd.header(MLA_HEADER)
    line = rd.keyword("order", 1)
    col, tok = line.tokens[1]
    if not tok.isdigit() or int(tok) < 1:
        raise ParseError(f"order must be a positive integer, found '{tok}'", line.number, col)
    n = int(tok)
    names: Optional[Tuple[str, ...]] = None
    nxt = rd.peek()
    if nxt is not None and nxt.words[0] == "names":
        line = rd.keyword("names", n)
        names = tuple(line.words[1:])
    group, rows = _matrix(rd, "group", n, n, n)
    star, _ = _matrix(rd, "star", n, n, n)
    rd.done()

    ar = np.arange(n)
    if not np.array_equal(group[0], ar):
        j = int(np.flatnonzero(group[0] != ar)[0])
        raise ParseError(f"identity must be element 0: 0*{j} = {group[0, j]}", rows[0].number, rows[0].column(j))
    bad = np.flatnonzero(group[:, 0] != ar)
    if bad.size:
        r = int(bad[0])
        raise ParseError(f"identity must be element 0: {r}*0 = {group[r, 0]}", rows[r].number, rows[r].column(0))
    return FiniteMLA(group, star, names, name)


def _rows(table: np.ndarray) -> List[str]:
    return [" ".join(str(int(v)) for v in row) for row in table]


def emit_mla(A: FiniteMLA) -> str:
    out = [" ".join(MLA_HEADER), f"order {A.order}"]
    if A.names is not None:
        out.append("names " + " ".join(A.names))
    out.append("group")
    out.extend(_rows(A.group_table))
    out.append("star")
    out.extend(_rows(A.star_table))
    return "\n".join(out) + "\n"


# =================
# [.rlce]
# =================

def _load(loader: Loader, line: _Line) -> FiniteMLA:
    path = line.words[1]
    try:
        return loader(path)
    except ParseError as exc:
        raise ParseError(f"in {path}: {exc}", line.number, line.column(1)) from exc
    except OSError as exc:
        raise ParseError(f"cannot load '{path}': {exc.strerror or exc}", line.number, line.column(1)) from exc


def parse_rlce(data: Union[bytes, str], loader: Loader, name: str = "") -> RelativeExtension:
    """Assemble the extension; verification is left to the caller."""
    rd = _Reader(data)
    rd.header(RLCE_HEADER)
    L = _load(loader, rd.keyword("L", 1))
    G = _load(loader, rd.keyword("G", 1))
    nl, ng = L.order, G.order
    line = rd.keyword("H", None)
    h = _indices(line, 1, None, ng, "H")
    line = rd.keyword("tau", None)
    tau = _indices(line, 1, nl, ng, "tau")
    act_gl, _ = _matrix(rd, "act_gl", ng, nl, nl)
    brk_gl, _ = _matrix(rd, "brk_gl", ng, nl, nl)
    act_lg, _ = _matrix(rd, "act_lg", nl, ng, ng)
    brk_lg, _ = _matrix(rd, "brk_lg", nl, ng, ng)
    rd.done()
    action = MutualAction(G, L, act_gl, act_lg, brk_gl, brk_lg)
    return RelativeExtension(L, G, MLAHom(L, G, np.array(tau)), ElemSet.of(G, h), action, name)


def emit_rlce(E: RelativeExtension, l_path: str, g_path: str) -> str:
    act = E.action
    out = [" ".join(RLCE_HEADER), f"L {l_path}", f"G {g_path}"]
    out.append(" ".join(["H"] + [str(i) for i in E.H]))
    out.append(" ".join(["tau"] + [str(int(v)) for v in E.tau.map]))
    for word, table in (("act_gl", act.act_gl), ("brk_gl", act.brk_gl), ("act_lg", act.act_lg), ("brk_lg", act.brk_lg)):
        out.append(word)
        out.extend(_rows(table))
    return "\n".join(out) + "\n"


def read_mla(path: str) -> FiniteMLA:
    p = Path(path)
    return parse_mla(p.read_bytes(), name=p.stem)


def read_rlce(path: str) -> RelativeExtension:
    """Referenced algebra paths resolve relative to the .rlce file."""
    p = Path(path)
    base = p.resolve().parent

    def loader(ref: str) -> FiniteMLA:
        target = Path(ref)
        return read_mla(str(target if target.is_absolute() else base / target))

    return parse_rlce(p.read_bytes(), loader, name=p.stem)
