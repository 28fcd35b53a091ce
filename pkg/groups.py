# groups.py
# ---------------------------------------------
# 내장 유한군 곱셈표 (Cayley table) 모음 + 군 수준 알고리즘
#  - 순환군, 정이면체군, 사원수/dicyclic 군, 기본 아벨 2-군, 대칭/교대군, 직접곱
#  - builtin_groups(max_order): 위수 12 이하 모든 군 (동형 유형별 1개, 고정 표)
#  - element_orders / subgroup_closure / generating_sequence
#  - iter_group_isomorphisms: 생성원 이미지 백트래킹 + Cayley 그래프 BFS 확장
# ---------------------------------------------
# 규약: 항등원은 인덱스 0, table[i, j] = i·j
# ---------------------------------------------

from __future__ import annotations

import itertools
import logging
import re
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from common_utils import iter_bits
from errors import StructureError

log = logging.getLogger("GROUPS")


@dataclass(frozen=True, eq=False)
class GroupTable:
    name: str
    table: np.ndarray
    names: Tuple[str, ...]

    @property
    def order(self) -> int:
        return int(self.table.shape[0])


def _from_elements(name: str, elements: Sequence, mul: Callable, label: Callable) -> GroupTable:
    # elements[0] 은 항등원이어야 한다
    index: Dict = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[mul(a, b)]
    table.setflags(write=False)
    return GroupTable(name, table, tuple(label(e) for e in elements))


def _power_label(symbol: str, k: int) -> str:
    if k == 0:
        return ""
    return symbol if k == 1 else f"{symbol}^{k}"


# =================
# [군 생성기]
# =================

def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise StructureError("cyclic group order must be positive")
    return _from_elements(
        f"Z{n}", list(range(n)), lambda a, b: (a + b) % n,
        lambda k: _power_label("g", k) or "1",
    )


# 1 정이면체군 D_m (위수 2m): 인덱스 i + m·j 는 b^i a^j, 관계 a b = b⁻¹ a
def dihedral(m: int) -> GroupTable:
    if m < 2:
        raise StructureError("dihedral group needs m >= 2")
    elements = [(i, j) for j in range(2) for i in range(m)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        return ((i + (k if j == 0 else -k)) % m, (j + l) % 2)

    return _from_elements(
        f"D{m}", elements, mul,
        lambda e: (_power_label("b", e[0]) + _power_label("a", e[1])) or "1",
    )


# 2 dicyclic 군 Dic_m (위수 4m): x^i y^j, x^{2m} = 1, y² = x^m, y x y⁻¹ = x⁻¹. Dic_2 = Q8
def dicyclic(m: int) -> GroupTable:
    if m < 2:
        raise StructureError("dicyclic group needs m >= 2")
    n2 = 2 * m
    elements = [(i, j) for j in range(2) for i in range(n2)]

    def mul(x, y):
        (i, j), (k, l) = x, y
        e = i + (k if j == 0 else -k)
        if j + l == 2:
            return ((e + m) % n2, 0)
        return (e % n2, j + l)

    name = "Q8" if m == 2 else f"Dic{m}"
    return _from_elements(
        name, elements, mul,
        lambda e: (_power_label("x", e[0]) + _power_label("y", e[1])) or "1",
    )


def quaternion() -> GroupTable:
    return dicyclic(2)


# 3 기본 아벨 2-군 (Z2)^k: 인덱스의 비트 i 가 생성원 'a','b','c',... 에 대응 (V4: 1=a, 2=b, 3=ab)
def elementary_abelian(k: int) -> GroupTable:
    letters = "abcdefgh"
    if not 1 <= k <= len(letters):
        raise StructureError(f"elementary abelian rank must be in 1..{len(letters)}")
    name = "V4" if k == 2 else f"Z2^{k}"
    return _from_elements(
        name, list(range(1 << k)), lambda a, b: a ^ b,
        lambda x: "".join(letters[i] for i in iter_bits(x)) or "1",
    )


def klein_four() -> GroupTable:
    return elementary_abelian(2)


def _cycle_label(p: Tuple[int, ...]) -> str:
    seen = set()
    parts: List[str] = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x + 1)
            x = p[x]
        parts.append("(" + "".join(str(c) for c in cycle) + ")")
    return "".join(parts) or "1"


def _compose(p: Tuple[int, ...], q: Tuple[int, ...]) -> Tuple[int, ...]:
    # (p·q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(q)))


def _is_even(p: Tuple[int, ...]) -> bool:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2 == 0


# 4 대칭군 S_n: 순열을 사전식 정렬 (S3: 0=1, 1=(23), 2=(12), 3=(123), 4=(132), 5=(13))
def symmetric(n: int) -> GroupTable:
    if n < 1:
        raise StructureError("symmetric group degree must be positive")
    return _from_elements(f"S{n}", list(itertools.permutations(range(n))), _compose, _cycle_label)


def alternating(n: int) -> GroupTable:
    if n < 1:
        raise StructureError("alternating group degree must be positive")
    perms = [p for p in itertools.permutations(range(n)) if _is_even(p)]
    return _from_elements(f"A{n}", perms, _compose, _cycle_label)


# 5 직접곱: (a, b) 의 인덱스 = a·|B| + b
def direct_product_group(A: GroupTable, B: GroupTable, name: Optional[str] = None) -> GroupTable:
    m = B.order
    ta, tb = A.table, B.table
    table = (ta[:, None, :, None] * m + tb[None, :, None, :]).reshape(A.order * m, A.order * m)
    table.setflags(write=False)
    names = tuple(f"({a},{b})" for a in A.names for b in B.names)
    return GroupTable(name or f"{A.name}x{B.name}", table, names)


# =================
# [내장 목록]
# =================

def builtin_groups(max_order: int = 12) -> List[GroupTable]:
    """Every group of order <= max_order (capped at 12), one pinned table per isomorphism type."""
    makers: List[Tuple[int, Callable[[], GroupTable]]] = [
        (1, lambda: cyclic(1)),
        (2, lambda: cyclic(2)),
        (3, lambda: cyclic(3)),
        (4, lambda: cyclic(4)),
        (4, klein_four),
        (5, lambda: cyclic(5)),
        (6, lambda: cyclic(6)),
        (6, lambda: symmetric(3)),
        (7, lambda: cyclic(7)),
        (8, lambda: cyclic(8)),
        (8, lambda: direct_product_group(cyclic(4), cyclic(2))),
        (8, lambda: elementary_abelian(3)),
        (8, lambda: dihedral(4)),
        (8, quaternion),
        (9, lambda: cyclic(9)),
        (9, lambda: direct_product_group(cyclic(3), cyclic(3))),
        (10, lambda: cyclic(10)),
        (10, lambda: dihedral(5)),
        (11, lambda: cyclic(11)),
        (12, lambda: cyclic(12)),
        (12, lambda: direct_product_group(cyclic(6), cyclic(2))),
        (12, lambda: alternating(4)),
        (12, lambda: dihedral(6)),
        (12, lambda: dicyclic(3)),
    ]
    return [make() for order, make in makers if order <= max_order]


_NAME_PATTERNS: List[Tuple[str, Callable[[int], GroupTable]]] = [
    (r"Z(\d+)", cyclic),
    (r"D(\d+)", dihedral),
    (r"Dic(\d+)", dicyclic),
    (r"S(\d+)", symmetric),
    (r"A(\d+)", alternating),
    (r"Z2\^(\d+)", elementary_abelian),
]


def group_by_name(name: str) -> GroupTable:
    key = name.strip()
    if key == "V4":
        return klein_four()
    if key == "Q8":
        return quaternion()
    for g in builtin_groups(12):
        if g.name == key:
            return g
    for pattern, make in _NAME_PATTERNS:
        m = re.fullmatch(pattern, key)
        if m:
            return make(int(m.group(1)))
    raise StructureError(f"unknown group name: {name!r}")


# =================
# [군 수준 알고리즘]
# =================

def element_orders(table: np.ndarray) -> np.ndarray:
    n = table.shape[0]
    ar = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    power = ar.copy()
    for k in range(1, n + 1):
        orders[(orders == 0) & (power == 0)] = k
        if orders.all():
            break
        power = table[power, ar]
    return orders


# 곱셈에 대한 닫힘 (유한군이므로 역원은 자동 포함)
def subgroup_closure(rows: List[List[int]], bits: int) -> int:
    bits |= 1
    members = list(iter_bits(bits))
    frontier = list(members)
    while frontier:
        new: List[int] = []
        for x in frontier:
            row = rows[x]
            for y in members:
                for z in (row[y], rows[y][x]):
                    if not (bits >> z) & 1:
                        bits |= 1 << z
                        new.append(z)
        members.extend(new)
        frontier = new
    return bits


def generating_sequence(table: np.ndarray) -> List[int]:
    """Greedy by index: take the least element outside the subgroup generated so far."""
    rows = table.tolist()
    n = len(rows)
    full = (1 << n) - 1
    gens: List[int] = []
    current = 1
    for x in range(1, n):
        if current == full:
            break
        if not (current >> x) & 1:
            gens.append(x)
            current = subgroup_closure(rows, current | (1 << x))
    return gens


def iter_group_isomorphisms(
    table_a: np.ndarray,
    table_b: np.ndarray,
    admissible: Optional[Callable[[int, int], bool]] = None,
) -> Iterator[np.ndarray]:
    """Yield every group isomorphism A -> B in lexicographic order of generator images.

    ``admissible(x, y)`` may veto assigning x -> y; it is consulted for every element,
    generators and BFS-derived elements alike.
    """
    na, nb = table_a.shape[0], table_b.shape[0]
    if na != nb:
        return
    ord_a, ord_b = element_orders(table_a), element_orders(table_b)
    if sorted(ord_a.tolist()) != sorted(ord_b.tolist()):
        return
    rows_a, rows_b = table_a.tolist(), table_b.tolist()
    oa, ob = ord_a.tolist(), ord_b.tolist()
    gens = generating_sequence(table_a)
    if admissible is not None and not admissible(0, 0):
        return

    def extend(mp: List[int], used: List[bool], upto: int) -> bool:
        # gens[:upto] 로 생성되는 부분군 전체로 BFS 확장, 모순이면 False
        active = gens[:upto]
        queue = deque(x for x in range(na) if mp[x] >= 0)
        while queue:
            x = queue.popleft()
            for s in active:
                z = rows_a[x][s]
                w = rows_b[mp[x]][mp[s]]
                if mp[z] >= 0:
                    if mp[z] != w:
                        return False
                    continue
                if used[w] or oa[z] != ob[w] or (admissible is not None and not admissible(z, w)):
                    return False
                mp[z] = w
                used[w] = True
                queue.append(z)
        return True

    def search(i: int, mp: List[int], used: List[bool]) -> Iterator[np.ndarray]:
        if i == len(gens):
            yield np.array(mp, dtype=np.int64)
            return
        g = gens[i]
        for y in range(nb):
            if used[y] or ob[y] != oa[g]:
                continue
            if admissible is not None and not admissible(g, y):
                continue
            mp2, used2 = list(mp), list(used)
            mp2[g] = y
            used2[y] = True
            if extend(mp2, used2, i + 1):
                yield from search(i + 1, mp2, used2)

    mp0 = [-1] * na
    used0 = [False] * nb
    mp0[0] = 0
    used0[0] = True
    yield from search(0, mp0, used0)


def automorphisms(table: np.ndarray) -> List[np.ndarray]:
    return list(iter_group_isomorphisms(table, table))
