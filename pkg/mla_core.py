# mla_core.py
# ---------------------------------------------
# 유한 곱셈 리 대수(multiplicative Lie algebra) 핵심 모델
#  - FiniteMLA: 군 곱셈표 + ⋆ 곱셈표 + 원소 이름 (원소 0 = 항등원)
#  - ElemSet: 비트셋으로 표현한 부분집합 (부분대수/아이디얼의 공통 화폐)
#  - MLAHom: 두 곱을 보존하는 원소 사상
#  - 검증: 군 공리 → ⋆ 항등식 1~5 → 준동형 (numpy 브로드캐스팅으로 전수 검사)
#  - 구성: 몫 대수, 직접곱, 유도 부분대수, TrivStar / Comm 빌더
# ---------------------------------------------
# 규약:
#  - ᵍh = g h g⁻¹, [g,h] = g h g⁻¹ h⁻¹
#  - 위반 보고는 항상 사전식 최소 witness (np.argwhere 의 첫 행)
#  - 모든 값은 생성 후 불변 (테이블은 write=False)
# ---------------------------------------------

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from common_utils import bits_from, bits_sort_key, bits_to_mask, format_elements, iter_bits, popcount
from errors import NotAnIdealError, NotASubalgebraError, StructureError

log = logging.getLogger("CORE")


# =================
# [검증 리포트]
# =================

class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    VACUOUS = "vacuous"


@dataclass
class Finding:
    check: str
    status: Status
    detail: str = ""
    witness: Tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    def render(self) -> str:
        line = f"[{self.status.value.upper():7s}] {self.check}"
        if self.detail:
            line += f": {self.detail}"
        if self.witness:
            line += f" (witness {', '.join(str(w) for w in self.witness)})"
        return line


@dataclass
class Report:
    """Ordered list of pass/fail/vacuous findings plus free-form facts."""

    title: str
    findings: List[Finding] = field(default_factory=list)
    facts: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.findings)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failure(self) -> Optional[Finding]:
        for f in self.findings:
            if not f.ok:
                return f
        return None

    def check(self, name: str, passed: bool, detail: str = "", witness: Sequence[Any] = ()) -> bool:
        status = Status.PASS if passed else Status.FAIL
        self.findings.append(Finding(name, status, detail, tuple(int(w) for w in witness)))
        return bool(passed)

    def vacuous(self, name: str, detail: str = "") -> None:
        self.findings.append(Finding(name, Status.VACUOUS, detail))

    def extend(self, other: "Report", prefix: str = "") -> bool:
        for f in other.findings:
            self.findings.append(dataclasses.replace(f, check=f"{prefix}{f.check}"))
        for key, value in other.facts.items():
            self.facts[f"{prefix}{key}"] = value
        return other.ok

    def status_of(self, name: str) -> Optional[Status]:
        for f in self.findings:
            if f.check == name:
                return f.status
        return None

    def render(self) -> List[str]:
        lines = [f"== {self.title}: {'PASS' if self.ok else 'FAIL'}"]
        lines.extend("  " + f.render() for f in self.findings)
        return lines


def first_witness(mask: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(x) for x in np.argwhere(mask)[0])


# =================
# [FiniteMLA]
# =================

def _as_table(raw: Any, label: str) -> np.ndarray:
    try:
        arr = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise StructureError(f"{label} table is not a rectangular integer array: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise StructureError(f"{label} table must be a non-empty n×n array, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False, repr=False)
class FiniteMLA:
    group_table: np.ndarray
    star_table: np.ndarray
    names: Optional[Tuple[str, ...]] = None
    name: str = ""

    def __post_init__(self) -> None:
        g = _as_table(self.group_table, "group")
        s = _as_table(self.star_table, "star")
        if g.shape != s.shape:
            raise StructureError(f"group table is {g.shape} but star table is {s.shape}")
        n = g.shape[0]
        for label, t in (("group", g), ("star", s)):
            bad = (t < 0) | (t >= n)
            if bad.any():
                i, j = first_witness(bad)
                raise StructureError(f"{label} table entry ({i},{j}) = {t[i, j]} is not an index < {n}")
            t.setflags(write=False)
        object.__setattr__(self, "group_table", g)
        object.__setattr__(self, "star_table", s)
        if self.names is not None:
            names = tuple(str(x) for x in self.names)
            if len(names) != n:
                raise StructureError(f"{len(names)} names given for {n} elements")
            if len(set(names)) != n:
                raise StructureError("element names must be distinct")
            object.__setattr__(self, "names", names)

    def __repr__(self) -> str:
        return f"FiniteMLA({self.name or '?'}, order={self.order})"

    @property
    def order(self) -> int:
        return int(self.group_table.shape[0])

    @property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def labels(self) -> Tuple[str, ...]:
        if self.names is not None:
            return self.names
        return ("1",) + tuple(f"g{i}" for i in range(1, self.order))

    # 역원: 행에서 0 이 나오는 열 (군 검증 이후에만 의미가 있음)
    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.group_table == 0, axis=1)
        inv.setflags(write=False)
        return inv

    # conj[a, b] = a b a⁻¹
    @cached_property
    def conj_table(self) -> np.ndarray:
        G = self.group_table
        c = G[G, self.inverse[:, None]]
        c.setflags(write=False)
        return c

    # comm[a, b] = a b a⁻¹ b⁻¹
    @cached_property
    def comm_table(self) -> np.ndarray:
        c = self.group_table[self.conj_table, self.inverse[None, :]]
        c.setflags(write=False)
        return c

    # 클로저 루프용 파이썬 리스트 사본
    @cached_property
    def group_rows(self) -> List[List[int]]:
        return self.group_table.tolist()

    @cached_property
    def star_rows(self) -> List[List[int]]:
        return self.star_table.tolist()

    @cached_property
    def conj_rows(self) -> List[List[int]]:
        return self.conj_table.tolist()

    @cached_property
    def inverse_list(self) -> List[int]:
        return self.inverse.tolist()

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.group_table, self.group_table.T))

    @property
    def has_trivial_star(self) -> bool:
        return not bool(self.star_table.any())

    def mul(self, a: int, b: int) -> int:
        return int(self.group_table[a, b])

    def star(self, a: int, b: int) -> int:
        return int(self.star_table[a, b])

    def conj(self, a: int, b: int) -> int:
        return int(self.conj_table[a, b])

    def format_set(self, subset: Union["ElemSet", int, Iterable[int]]) -> str:
        return format_elements(self.labels, as_bits(self, subset))

    def renamed(self, name: str) -> "FiniteMLA":
        return dataclasses.replace(self, name=name)


# =================
# [ElemSet]
# =================

@dataclass(frozen=True)
class ElemSet:
    parent: FiniteMLA = field(compare=False, repr=False)
    bits: int = 0

    @classmethod
    def of(cls, parent: FiniteMLA, indices: Iterable[int]) -> "ElemSet":
        return cls(parent, as_bits(parent, list(indices)))

    @classmethod
    def full(cls, parent: FiniteMLA) -> "ElemSet":
        return cls(parent, parent.full_bits)

    @classmethod
    def identity(cls, parent: FiniteMLA) -> "ElemSet":
        return cls(parent, 1)

    def __contains__(self, i: object) -> bool:
        return isinstance(i, (int, np.integer)) and i >= 0 and bool((self.bits >> int(i)) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def indices(self) -> List[int]:
        return list(iter_bits(self.bits))

    def mask(self) -> np.ndarray:
        return bits_to_mask(self.bits, self.parent.order)

    def __le__(self, other: "ElemSet") -> bool:
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElemSet") -> bool:
        return self <= other and self.bits != other.bits

    def __and__(self, other: "ElemSet") -> "ElemSet":
        return ElemSet(self.parent, self.bits & other.bits)

    def __or__(self, other: "ElemSet") -> "ElemSet":
        return ElemSet(self.parent, self.bits | other.bits)

    @property
    def is_full(self) -> bool:
        return self.bits == self.parent.full_bits

    @property
    def is_trivial(self) -> bool:
        return self.bits == 1

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return bits_sort_key(self.bits)

    def render(self) -> str:
        return format_elements(self.parent.labels, self.bits)

    def __str__(self) -> str:
        return self.render()


def as_bits(A: FiniteMLA, subset: Union[ElemSet, int, Iterable[int]]) -> int:
    if isinstance(subset, ElemSet):
        bits = subset.bits
    elif isinstance(subset, (int, np.integer)):
        bits = int(subset)
    else:
        bits = bits_from(subset)
    if bits < 0 or bits >> A.order:
        raise StructureError(f"subset {bits:#x} has members outside a carrier of order {A.order}")
    return bits


# =================
# [MLAHom]
# =================

@dataclass(frozen=True, eq=False, repr=False)
class MLAHom:
    source: FiniteMLA
    target: FiniteMLA
    map: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.map, dtype=np.int64)
        if arr.ndim != 1 or arr.shape[0] != self.source.order:
            raise StructureError(
                f"map has shape {arr.shape} but the source has order {self.source.order}"
            )
        bad = (arr < 0) | (arr >= self.target.order)
        if bad.any():
            x = int(np.flatnonzero(bad)[0])
            raise StructureError(f"map({x}) = {arr[x]} is outside a target of order {self.target.order}")
        arr.setflags(write=False)
        object.__setattr__(self, "map", arr)

    def __repr__(self) -> str:
        return f"MLAHom({self.source.name or '?'} -> {self.target.name or '?'})"

    @classmethod
    def identity(cls, A: FiniteMLA) -> "MLAHom":
        return cls(A, A, np.arange(A.order))

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def image(self, subset: Union[ElemSet, int, Iterable[int]]) -> ElemSet:
        idx = list(iter_bits(as_bits(self.source, subset)))
        return ElemSet(self.target, bits_from(self.map[idx].tolist()))

    def preimage(self, subset: Union[ElemSet, int, Iterable[int]]) -> ElemSet:
        mask = bits_to_mask(as_bits(self.target, subset), self.target.order)
        return ElemSet(self.source, bits_from(np.flatnonzero(mask[self.map]).tolist()))

    def kernel(self) -> ElemSet:
        return self.preimage(1)

    @property
    def is_injective(self) -> bool:
        return len(np.unique(self.map)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(np.unique(self.map)) == self.target.order

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def inverse(self) -> "MLAHom":
        if not self.is_bijective:
            raise StructureError("only a bijective map has an inverse")
        inv = np.empty(self.target.order, dtype=np.int64)
        inv[self.map] = np.arange(self.source.order)
        return MLAHom(self.target, self.source, inv)

    # self 다음 other: (other ∘ self)
    def then(self, other: "MLAHom") -> "MLAHom":
        if other.source.order != self.target.order:
            raise StructureError("maps do not compose: orders differ")
        return MLAHom(self.source, other.target, other.map[self.map])


# =================
# [검증]
# =================

# 1 군 공리 검사: 라틴 방진 → 항등원(0) → 결합법칙 → 역원 순서
def verify_group(A: FiniteMLA) -> Report:
    rep = Report(f"group axioms: {A.name or 'algebra'}")
    rep.facts["order"] = A.order
    G = A.group_table
    n = A.order
    ar = np.arange(n)

    row_ok = (np.sort(G, axis=1) == ar).all(axis=1)
    if not row_ok.all():
        i = int(np.flatnonzero(~row_ok)[0])
        seen = set()
        j = 0
        for j, v in enumerate(G[i].tolist()):
            if v in seen:
                break
            seen.add(v)
        rep.check("latin-square", False, f"row {i} is not a permutation (repeat at column {j})", (i, j))
        return rep
    eq = G[:, None, :] == G[None, :, :]
    earlier = np.tril(np.ones((n, n), dtype=bool), k=-1)
    clash = (eq & earlier[:, :, None]).any(axis=1)
    if clash.any():
        i, j = first_witness(clash)
        rep.check("latin-square", False, f"row {i} repeats an entry of an earlier row in column {j}", (i, j))
        return rep
    rep.check("latin-square", True)

    bad = (G[0] != ar) | (G[:, 0] != ar)
    if not rep.check("identity-at-0", not bad.any(), "element 0 must be a two-sided identity",
                     first_witness(bad) if bad.any() else ()):
        return rep

    lhs = G[G]
    rhs = G[ar[:, None, None], G[None, :, :]]
    bad = lhs != rhs
    if not rep.check("associativity", not bad.any(), "(ab)c != a(bc)" if bad.any() else "",
                     first_witness(bad) if bad.any() else ()):
        return rep

    inv = A.inverse
    bad = (G[ar, inv] != 0) | (G[inv, ar] != 0)
    rep.check("inverses", not bad.any(), "element without two-sided inverse" if bad.any() else "",
              first_witness(bad) if bad.any() else ())
    return rep


def _star_identity_masks(A: FiniteMLA) -> Iterator[Tuple[int, np.ndarray]]:
    # 항등식을 번호 순서대로 하나씩 계산 (앞에서 실패하면 뒤는 계산하지 않음)
    G, S, C = A.group_table, A.star_table, A.conj_table
    n = A.order
    ar = np.arange(n)
    yield 1, S[ar, ar] != 0
    g = ar[:, None, None]
    h = ar[None, :, None]
    k = ar[None, None, :]
    # g⋆(hk) = (g⋆h)·ʰ(g⋆k)
    yield 2, S[g, G[h, k]] != G[S[g, h], C[h, S[g, k]]]
    # (gh)⋆k = ᵍ(h⋆k)·(g⋆k)
    yield 3, S[G[g, h], k] != G[C[g, S[h, k]], S[g, k]]
    # ((g⋆h)⋆ʰk)((h⋆k)⋆ᵏg)((k⋆g)⋆ᵍh) = 1
    t1 = S[S[g, h], C[h, k]]
    t2 = S[S[h, k], C[k, g]]
    t3 = S[S[k, g], C[g, h]]
    yield 4, G[G[t1, t2], t3] != 0
    # ᵏ(g⋆h) = ᵏg⋆ᵏh
    yield 5, C[k, S[g, h]] != S[C[k, g], C[k, h]]


_IDENTITY_TEXT = {
    1: "g*g = 1",
    2: "g*(hk) = (g*h)·h(g*k)",
    3: "(gh)*k = g(h*k)·(g*k)",
    4: "((g*h)*hk)((h*k)*kg)((k*g)*gh) = 1",
    5: "k(g*h) = kg*kh",
}


def star_violation(A: FiniteMLA) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Lowest-numbered failing identity and its lexicographically least witness, or None."""
    for idx, bad in _star_identity_masks(A):
        if bad.any():
            return idx, first_witness(bad)
    return None


# 2 ⋆ 항등식 1~5 검사 (전제: 군 공리 통과)
def verify_star_axioms(A: FiniteMLA, check_group: bool = True) -> Report:
    rep = verify_group(A) if check_group else Report("")
    rep.title = f"star identities: {A.name or 'algebra'}"
    if not rep.ok:
        return rep
    for idx, bad in _star_identity_masks(A):
        if not rep.check(f"identity-{idx}", not bad.any(), _IDENTITY_TEXT[idx],
                         first_witness(bad) if bad.any() else ()):
            return rep
    # 유도 성질: g⋆1 = 1⋆g = 1
    S = A.star_table
    bad = (S[:, 0] != 0) | (S[0, :] != 0)
    rep.check("star-identity-element", not bad.any(), "g*1 = 1 = 1*g",
              first_witness(bad) if bad.any() else ())
    return rep


# 3 준동형 검사: 군 곱 보존 → ⋆ 보존
def verify_hom(f: MLAHom) -> Report:
    rep = Report(f"homomorphism {f.source.name or '?'} -> {f.target.name or '?'}")
    M = f.map
    A, B = f.source, f.target
    bad = M[A.group_table] != B.group_table[M[:, None], M[None, :]]
    if not rep.check("preserves-product", not bad.any(), "f(xy) != f(x)f(y)" if bad.any() else "",
                     first_witness(bad) if bad.any() else ()):
        return rep
    bad = M[A.star_table] != B.star_table[M[:, None], M[None, :]]
    rep.check("preserves-lie-product", not bad.any(), "f(x*y) != f(x)*f(y)" if bad.any() else "",
              first_witness(bad) if bad.any() else ())
    return rep


# =================
# [닫힘 위반 판정] - structure 모듈과 몫 구성에서 공용
# =================

def subalgebra_violation(A: FiniteMLA, subset: Union[ElemSet, int, Iterable[int]]) -> Optional[Tuple[str, Tuple[int, ...]]]:
    mask = bits_to_mask(as_bits(A, subset), A.order)
    if not mask[0]:
        return "identity", (0,)
    idx = np.flatnonzero(mask)
    for kind, table in (("product", A.group_table), ("lie-product", A.star_table)):
        bad = ~mask[table[np.ix_(idx, idx)]]
        if bad.any():
            i, j = first_witness(bad)
            return kind, (int(idx[i]), int(idx[j]))
    bad = ~mask[A.inverse[idx]]
    if bad.any():
        return "inverse", (int(idx[np.flatnonzero(bad)[0]]),)
    return None


def ideal_violation(A: FiniteMLA, subset: Union[ElemSet, int, Iterable[int]]) -> Optional[Tuple[str, Tuple[int, ...]]]:
    found = subalgebra_violation(A, subset)
    if found:
        return found
    mask = bits_to_mask(as_bits(A, subset), A.order)
    idx = np.flatnonzero(mask)
    for kind, table in (("conjugation", A.conj_table), ("star-absorption", A.star_table)):
        bad = ~mask[table[:, idx]]
        if bad.any():
            g, j = first_witness(bad)
            return kind, (int(g), int(idx[j]))
    return None


# =================
# [구성]
# =================

# 4 몫 대수: 잉여류는 최소 원소 인덱스 순으로 정렬
def quotient(A: FiniteMLA, K: Union[ElemSet, int, Iterable[int]]) -> Tuple[FiniteMLA, MLAHom]:
    bits = as_bits(A, K)
    found = ideal_violation(A, bits)
    if found:
        kind, witness = found
        raise NotAnIdealError(f"{A.format_set(bits)} is not an ideal: {kind} closure fails at {witness}", witness)
    kidx = np.array(list(iter_bits(bits)), dtype=np.int64)
    least = A.group_table[:, kidx].min(axis=1)
    reps = np.unique(least)
    proj = np.searchsorted(reps, least)
    Q = proj[A.group_table[np.ix_(reps, reps)]]
    QS = proj[A.star_table[np.ix_(reps, reps)]]
    if len(kidx) == 1:
        names = A.names
    else:
        names = tuple(f"[{A.labels[r]}]" for r in reps.tolist())
    Qa = FiniteMLA(Q, QS, names, name=f"{A.name or 'A'}/{len(kidx)}")
    log.debug("quotient %s by %s -> order %d", A.name, A.format_set(bits), Qa.order)
    return Qa, MLAHom(A, Qa, proj)


# 5 직접곱: (a, b) 의 인덱스 = a·|B| + b
def direct_product(A: FiniteMLA, B: FiniteMLA, name: Optional[str] = None) -> FiniteMLA:
    n, m = A.order, B.order
    GA, GB = A.group_table, B.group_table
    SA, SB = A.star_table, B.star_table
    G = (GA[:, None, :, None] * m + GB[None, :, None, :]).reshape(n * m, n * m)
    S = (SA[:, None, :, None] * m + SB[None, :, None, :]).reshape(n * m, n * m)
    names = tuple(f"({a},{b})" for a in A.labels for b in B.labels)
    return FiniteMLA(G, S, names, name or f"{A.name or 'A'}x{B.name or 'B'}")


def product_projection(A: FiniteMLA, B: FiniteMLA, P: FiniteMLA, first: bool = True) -> MLAHom:
    m = B.order
    ar = np.arange(P.order)
    return MLAHom(P, A, ar // m) if first else MLAHom(P, B, ar % m)


def product_inclusion(A: FiniteMLA, B: FiniteMLA, P: FiniteMLA) -> MLAHom:
    return MLAHom(A, P, np.arange(A.order) * B.order)


@dataclass(frozen=True, eq=False)
class Inclusion:
    algebra: FiniteMLA
    embedding: MLAHom
    locate: np.ndarray  # 부모 인덱스 → 부분대수 인덱스 (밖이면 -1)

    @property
    def members(self) -> np.ndarray:
        return self.embedding.map


# 6 부분대수를 독립 FiniteMLA 로 (원소 순서 = 부모 인덱스 오름차순)
def induced_subalgebra(A: FiniteMLA, S: Union[ElemSet, int, Iterable[int]], name: Optional[str] = None) -> Inclusion:
    bits = as_bits(A, S)
    found = subalgebra_violation(A, bits)
    if found:
        kind, witness = found
        raise NotASubalgebraError(f"{A.format_set(bits)} is not a subalgebra: {kind} closure fails at {witness}", witness)
    idx = np.array(list(iter_bits(bits)), dtype=np.int64)
    pos = np.full(A.order, -1, dtype=np.int64)
    pos[idx] = np.arange(len(idx))
    sub = FiniteMLA(
        pos[A.group_table[np.ix_(idx, idx)]],
        pos[A.star_table[np.ix_(idx, idx)]],
        tuple(A.labels[i] for i in idx.tolist()),
        name or f"{A.name or 'A'}[{len(idx)}]",
    )
    pos.setflags(write=False)
    return Inclusion(sub, MLAHom(sub, A, idx), pos)


# =================
# [빌더] - TrivStar(G), Comm(G), 자명 대수
# =================

def _group_parts(group: Any) -> Tuple[np.ndarray, Optional[Tuple[str, ...]], str]:
    if isinstance(group, FiniteMLA):
        return group.group_table, group.names, group.name or "G"
    if hasattr(group, "table"):
        return np.asarray(group.table), getattr(group, "names", None), getattr(group, "name", "G")
    return np.asarray(group), None, "G"


def trivial_star(group: Any, name: Optional[str] = None) -> FiniteMLA:
    table, names, gname = _group_parts(group)
    return FiniteMLA(table, np.zeros_like(table), names, name or f"TrivStar({gname})")


def commutator_star(group: Any, name: Optional[str] = None) -> FiniteMLA:
    table, names, gname = _group_parts(group)
    base = FiniteMLA(table, np.zeros_like(table), names, gname)
    return FiniteMLA(table, base.comm_table, names, name or f"Comm({gname})")


def trivial_algebra(name: str = "1") -> FiniteMLA:
    return FiniteMLA([[0]], [[0]], ("1",), name)
