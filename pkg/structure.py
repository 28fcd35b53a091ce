# structure.py
# ---------------------------------------------
# 부분대수/아이디얼 격자와 구조 불변량
#  - 비트셋(int) 클로저: gen_subalgebra / gen_ideal / gen_subgroup
#  - all_subalgebras: {1} 에서 출발한 확장 DFS + 방문 집합 (powerset 스캔 아님)
#  - 중심(Z, LZ, MZ), 쌍 교환자 ^M[G,H], 쌍 중심, 하강/상승 중심열
#  - Frattini 부분대수, 비생성원, 곱셈 정규화자와 그 탑
#  - structure_report: 정리들을 실제 입력 위에서 점검 (PASS / FAIL / VACUOUS)
# ---------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

import config_store
from common_utils import bits_from, bits_sort_key, bits_to_mask, iter_bits, mask_to_bits
from errors import EnumerationBoundError, InvariantViolation, NotAnIdealError, NotASubalgebraError
from groups import subgroup_closure
from mla_core import (
    ElemSet,
    FiniteMLA,
    Report,
    as_bits,
    ideal_violation,
    induced_subalgebra,
    quotient,
    subalgebra_violation,
)

log = logging.getLogger("STRUCTURE")

SubsetLike = Union[ElemSet, int, Iterable[int]]


@dataclass
class SeriesResult:
    terms: List[ElemSet] = field(default_factory=list)
    stabilized: bool = False
    class_index: Optional[int] = None

    def render(self) -> List[str]:
        return [str(t) for t in self.terms]


# =================
# [클로저]
# =================

def _close(A: FiniteMLA, bits: int, seeds: Sequence[int], ideal: bool) -> int:
    # bits 는 seeds 를 제외하면 이미 닫혀 있다고 가정 (seeds = 전체 원소면 일반 클로저)
    G, S, C = A.group_rows, A.star_rows, A.conj_rows
    n = A.order
    members = list(iter_bits(bits))
    frontier = list(seeds)
    while frontier:
        new: List[int] = []
        for x in frontier:
            gx, sx = G[x], S[x]
            for y in members:
                for z in (gx[y], G[y][x], sx[y]):
                    if not (bits >> z) & 1:
                        bits |= 1 << z
                        new.append(z)
            if ideal:
                for c in range(n):
                    for z in (C[c][x], S[c][x]):
                        if not (bits >> z) & 1:
                            bits |= 1 << z
                            new.append(z)
        members.extend(new)
        frontier = new
    return bits


def gen_subalgebra(A: FiniteMLA, S: SubsetLike) -> ElemSet:
    bits = as_bits(A, S) | 1
    return ElemSet(A, _close(A, bits, list(iter_bits(bits)), ideal=False))


def gen_ideal(A: FiniteMLA, S: SubsetLike) -> ElemSet:
    bits = as_bits(A, S) | 1
    return ElemSet(A, _close(A, bits, list(iter_bits(bits)), ideal=True))


def gen_subgroup(A: FiniteMLA, S: SubsetLike) -> ElemSet:
    return ElemSet(A, subgroup_closure(A.group_rows, as_bits(A, S)))


def is_subalgebra(A: FiniteMLA, S: SubsetLike) -> bool:
    return subalgebra_violation(A, S) is None


def is_ideal(A: FiniteMLA, S: SubsetLike) -> bool:
    return ideal_violation(A, S) is None


def _require_ideal(A: FiniteMLA, H: SubsetLike) -> int:
    bits = as_bits(A, H)
    found = ideal_violation(A, bits)
    if found:
        kind, witness = found
        raise NotAnIdealError(f"{A.format_set(bits)} is not an ideal: {kind} closure fails at {witness}", witness)
    return bits


# 두 부분집합의 곱집합 {hk}
def product_set(A: FiniteMLA, H: SubsetLike, K: SubsetLike) -> ElemSet:
    hi = np.array(list(iter_bits(as_bits(A, H))), dtype=np.int64)
    ki = np.array(list(iter_bits(as_bits(A, K))), dtype=np.int64)
    values = np.unique(A.group_table[np.ix_(hi, ki)])
    return ElemSet(A, bits_from(values.tolist()))


# =================
# [격자]
# =================

def _check_bound(A: FiniteMLA, what: str) -> None:
    bound = config_store.max_order()
    if A.order > bound:
        raise EnumerationBoundError(what, A.order, bound)


def all_subalgebras(A: FiniteMLA) -> List[ElemSet]:
    """Every subalgebra, sorted by (size, member indices)."""
    _check_bound(A, "all_subalgebras")
    n = A.order
    seen = {1}
    stack = [1]
    while stack:
        s = stack.pop()
        for x in range(1, n):
            if (s >> x) & 1:
                continue
            t = _close(A, s | (1 << x), [x], ideal=False)
            if t not in seen:
                seen.add(t)
                stack.append(t)
    log.debug("%s: %d subalgebras", A.name, len(seen))
    return [ElemSet(A, b) for b in sorted(seen, key=bits_sort_key)]


def all_ideals(A: FiniteMLA, subalgebras: Optional[List[ElemSet]] = None) -> List[ElemSet]:
    subs = subalgebras if subalgebras is not None else all_subalgebras(A)
    return [s for s in subs if is_ideal(A, s)]


def _maximal_within(subs: Sequence[ElemSet], top: int) -> List[ElemSet]:
    proper = [s for s in subs if s.bits != top and s.bits & ~top == 0]
    return [s for s in proper if not any(s < t for t in proper)]


def maximal_subalgebras(A: FiniteMLA, subalgebras: Optional[List[ElemSet]] = None) -> List[ElemSet]:
    subs = subalgebras if subalgebras is not None else all_subalgebras(A)
    return _maximal_within(subs, A.full_bits)


# H 안에서의 Frattini (부모 격자에서 H 의 부분대수만 골라 계산)
def frattini_within(subs: Sequence[ElemSet], H: ElemSet) -> ElemSet:
    maximal = _maximal_within(subs, H.bits)
    bits = H.bits
    for m in maximal:
        bits &= m.bits
    return ElemSet(H.parent, bits)


def frattini(A: FiniteMLA, subalgebras: Optional[List[ElemSet]] = None) -> ElemSet:
    subs = subalgebras if subalgebras is not None else all_subalgebras(A)
    return frattini_within(subs, ElemSet.full(A))


def non_generators(A: FiniteMLA, subalgebras: Optional[List[ElemSet]] = None) -> ElemSet:
    """g is a non-generator iff no maximal subalgebra M has <M, g> = A with g outside M."""
    subs = subalgebras if subalgebras is not None else all_subalgebras(A)
    bits = A.full_bits
    for m in maximal_subalgebras(A, subs):
        for g in iter_bits(A.full_bits & ~m.bits):
            if not (bits >> g) & 1:
                continue
            joined = _close(A, m.bits | (1 << g), [g], ideal=False)
            if joined != A.full_bits:
                raise InvariantViolation(
                    f"maximal subalgebra {m} together with {A.labels[g]} does not generate the algebra", (g,)
                )
            bits &= ~(1 << g)
    return ElemSet(A, bits)


def non_generators_direct(A: FiniteMLA) -> ElemSet:
    """Definition-level computation over every subset; only usable at small order."""
    n = A.order
    full = A.full_bits
    generated = [_close(A, x | 1, list(iter_bits(x | 1)), ideal=False) == full for x in range(1 << n)]
    bits = full
    for x in range(1 << n):
        if not generated[x]:
            continue
        for g in iter_bits(x):
            if not generated[x & ~(1 << g)]:
                bits &= ~(1 << g)
    return ElemSet(A, bits)


# =================
# [중심 / 교환자]
# =================

def centers(A: FiniteMLA) -> Tuple[ElemSet, ElemSet, ElemSet]:
    z = mask_to_bits((A.comm_table == 0).all(axis=1))
    lz = mask_to_bits((A.star_table == 0).all(axis=1))
    out = (ElemSet(A, z), ElemSet(A, lz), ElemSet(A, z & lz))
    for label, s in zip(("Z", "LZ", "MZ"), out):
        found = ideal_violation(A, s)
        if found:
            raise InvariantViolation(f"{label} = {s} is not an ideal ({found[0]})", found[1])
    return out


def multiplicative_center(A: FiniteMLA) -> ElemSet:
    return centers(A)[2]


# ^M[G, H]: [g,h] 와 g⋆h 로 생성되는 아이디얼
def pair_commutator(A: FiniteMLA, H: SubsetLike) -> ElemSet:
    bits = _require_ideal(A, H)
    idx = list(iter_bits(bits))
    gens = np.union1d(A.comm_table[:, idx].ravel(), A.star_table[:, idx].ravel())
    return gen_ideal(A, gens.tolist())


def pair_center(A: FiniteMLA, H: SubsetLike) -> ElemSet:
    bits = _require_ideal(A, H)
    mask = bits_to_mask(bits, A.order)
    mask &= (A.comm_table == 0).all(axis=0) & (A.star_table == 0).all(axis=0)
    out = ElemSet(A, mask_to_bits(mask))
    mz = multiplicative_center(A)
    if not is_ideal(A, out) or not out <= mz:
        raise InvariantViolation(f"pair center {out} is not an ideal inside MZ = {mz}")
    return out


# =================
# [중심열]
# =================

def lower_central_series(A: FiniteMLA, plain: bool = False) -> SeriesResult:
    """M_0 = A, M_{i+1} = ^M[A, M_i].

    With ``plain=True`` the steps after the first use the subgroup generated by the
    group commutators [g, m] only.
    """
    current = ElemSet.full(A)
    terms = [current]
    while True:
        if plain and len(terms) > 1:
            idx = list(iter_bits(current.bits))
            nxt = gen_subgroup(A, np.unique(A.comm_table[:, idx]).tolist())
        else:
            nxt = pair_commutator(A, current)
        terms.append(nxt)
        if nxt == current:
            break
        current = nxt
    class_index = next((i for i, t in enumerate(terms) if t.is_trivial), None)
    return SeriesResult(terms, True, class_index)


def nilpotency_class(A: FiniteMLA) -> Optional[int]:
    return lower_central_series(A).class_index


def is_nilpotent(A: FiniteMLA) -> bool:
    return nilpotency_class(A) is not None


# Z_0 = {1}, Z_{i+1} = A/Z_i 의 곱셈 중심의 역상
def upper_central_series(A: FiniteMLA) -> SeriesResult:
    current = ElemSet.identity(A)
    terms = [current]
    while True:
        Q, proj = quotient(A, current)
        nxt = proj.preimage(multiplicative_center(Q))
        terms.append(nxt)
        if nxt == current:
            break
        current = nxt
    class_index = next((i for i, t in enumerate(terms) if t.is_full), None)
    return SeriesResult(terms, True, class_index)


# =================
# [정규화자]
# =================

def normalizer(A: FiniteMLA, H: SubsetLike) -> ElemSet:
    bits = as_bits(A, H)
    found = subalgebra_violation(A, bits)
    if found:
        raise NotASubalgebraError(f"{A.format_set(bits)} is not a subalgebra ({found[0]})", found[1])
    mask = bits_to_mask(bits, A.order)
    idx = np.flatnonzero(mask)
    ok = mask[A.conj_table[:, idx]].all(axis=1) & mask[A.star_table[:, idx]].all(axis=1)
    out = ElemSet(A, mask_to_bits(ok))
    if not is_subalgebra(A, out) or not ElemSet(A, bits) <= out:
        raise InvariantViolation(f"normalizer of {A.format_set(bits)} is not a subalgebra containing it")
    return out


def normalizer_tower(A: FiniteMLA, H: SubsetLike) -> SeriesResult:
    current = ElemSet(A, as_bits(A, H))
    terms = [current]
    while True:
        nxt = normalizer(A, current)
        if nxt == current:
            break
        terms.append(nxt)
        current = nxt
    class_index = next((i for i, t in enumerate(terms) if t.is_full), None)
    return SeriesResult(terms, True, class_index)


def normalizer_condition(A: FiniteMLA, subalgebras: Optional[List[ElemSet]] = None) -> Optional[ElemSet]:
    """First proper subalgebra equal to its own normalizer, or None when the condition holds."""
    subs = subalgebras if subalgebras is not None else all_subalgebras(A)
    for h in subs:
        if not h.is_full and normalizer(A, h) == h:
            return h
    return None


def is_proper_star(A: FiniteMLA) -> bool:
    return bool(A.star_table.any()) and not np.array_equal(A.star_table, A.comm_table)


# =================
# [구조 리포트]
# =================

def _is_prime(n: int) -> bool:
    return n > 1 and all(n % p for p in range(2, int(n ** 0.5) + 1))


def structure_report(A: FiniteMLA) -> Report:
    subs = all_subalgebras(A)
    full = ElemSet.full(A)
    ideals = all_ideals(A, subs)
    maximal = maximal_subalgebras(A, subs)
    phi = frattini(A, subs)
    z, lz, mz = centers(A)
    derived = pair_commutator(A, full)
    lower = lower_central_series(A)
    plain = lower_central_series(A, plain=True)
    upper = upper_central_series(A)
    cls = lower.class_index

    rep = Report(f"structure: {A.name or 'algebra'}")
    rep.facts.update({
        "order": A.order,
        "subalgebras": len(subs),
        "ideals": len(ideals),
        "maximal": [str(m) for m in maximal],
        "frattini": str(phi),
        "Z": str(z),
        "LZ": str(lz),
        "MZ": str(mz),
        "commutator": str(derived),
        "lower_series": lower.render(),
        "upper_series": upper.render(),
        "nilpotency_class": cls,
        "proper_star": is_proper_star(A),
    })
    if [t.bits for t in plain.terms] != [t.bits for t in lower.terms]:
        rep.facts["plain_lower_series_divergence"] = plain.render()

    # -- 무조건 성립해야 하는 명제 --
    bad = None
    for h in subs:
        nh = normalizer(A, h)
        if not (is_subalgebra(A, nh) and h <= nh):
            bad = h
            break
    rep.check("normalizer-is-subalgebra", bad is None, str(bad) if bad else "",
              bad.indices() if bad else ())

    ng = non_generators(A, subs)
    detail = f"frattini {phi}, non-generators {ng}"
    same = ng == phi
    if A.order <= config_store.direct_nongen_max():
        direct = non_generators_direct(A)
        same = same and direct == phi
        detail += f", by definition {direct}"
    rep.check("frattini-equals-non-generators", same, detail)

    inter = mz & derived
    outside = list(iter_bits(inter.bits & ~phi.bits))
    rep.check("center-commutator-in-frattini", not outside, f"MZ ∩ ^M[G,G] = {inter}", outside[:1])

    # HK 는 부분대수 (H 부분대수, K 아이디얼)
    hk_bad = None
    for h in subs:
        for k in ideals:
            if not is_subalgebra(A, product_set(A, h, k)):
                hk_bad = (h, k)
                break
        if hk_bad:
            break
    rep.check("subalgebra-times-ideal-is-subalgebra", hk_bad is None,
              f"H = {hk_bad[0]}, K = {hk_bad[1]}" if hk_bad else "")

    # K ⊆ Φ ⇔ HK = G 인 진부분대수 H 가 없음
    lemma1_bad = None
    for k in ideals:
        supplemented = any(not h.is_full and product_set(A, h, k).is_full for h in subs)
        if (k <= phi) == supplemented:
            lemma1_bad = k
            break
    rep.check("frattini-lemma-ideal-supplement", lemma1_bad is None, str(lemma1_bad) if lemma1_bad else "")

    # K ⊆ Φ(H) ⇒ K ⊆ Φ(G)
    lemma2_bad = None
    for h in subs:
        phi_h = frattini_within(subs, h)
        for k in ideals:
            if k <= phi_h and not k <= phi:
                lemma2_bad = (h, k)
                break
        if lemma2_bad:
            break
    rep.check("frattini-lemma-subalgebra", lemma2_bad is None,
              f"H = {lemma2_bad[0]}, K = {lemma2_bad[1]}" if lemma2_bad else "")

    # 멱영 아이디얼 K: Φ(K) ⊆ Φ(G)
    nilpotent_ideals = 0
    lemma3_bad = None
    for k in ideals:
        if nilpotency_class(induced_subalgebra(A, k).algebra) is None:
            continue
        nilpotent_ideals += 1
        if not frattini_within(subs, k) <= phi:
            lemma3_bad = k
            break
    if nilpotent_ideals == 0:
        rep.vacuous("frattini-lemma-nilpotent-ideal", "no nilpotent ideal")
    else:
        rep.check("frattini-lemma-nilpotent-ideal", lemma3_bad is None, str(lemma3_bad) if lemma3_bad else "")

    if len(subs) == 2 or A.order == 1:
        rep.check("no-proper-subalgebra-prime-order", A.order == 1 or _is_prime(A.order), f"order {A.order}")
    else:
        rep.vacuous("no-proper-subalgebra-prime-order", "has proper nontrivial subalgebras")

    # -- 멱영일 때만 --
    nilpotent_checks = (
        "normalizer-tower-reaches-algebra",
        "normalizer-condition",
        "maximal-subalgebras-are-ideals",
        "commutator-in-frattini",
        "commutator-supplement-is-whole",
    )
    if cls is None:
        for name in nilpotent_checks:
            rep.vacuous(name, "not nilpotent")
        return rep

    def _steps(h: ElemSet) -> int:
        reached = normalizer_tower(A, h).class_index
        return cls + 1 if reached is None else reached

    slow = next((h for h in subs if _steps(h) > cls), None)
    rep.check("normalizer-tower-reaches-algebra", slow is None,
              f"class {cls}" + (f", tower of {slow} too slow" if slow else ""))
    stuck = normalizer_condition(A, subs)
    rep.check("normalizer-condition", stuck is None, str(stuck) if stuck else "")
    not_ideal = next((m for m in maximal if not is_ideal(A, m)), None)
    rep.check("maximal-subalgebras-are-ideals", not_ideal is None, str(not_ideal) if not_ideal else "")
    rep.check("commutator-in-frattini", derived <= phi, f"^M[G,G] = {derived}")
    supp = next((h for h in subs if not h.is_full and product_set(A, derived, h).is_full), None)
    rep.check("commutator-supplement-is-whole", supp is None, str(supp) if supp else "")
    return rep
