# enumeration.py
# ---------------------------------------------
# ⋆ 구조 전수 생성 / 부분 지정 완성 / 동형 탐색 / 카탈로그
#  - enumerate_stars: 생성원 쌍 값으로 분기, 항등식 2·3·5 + 반대칭으로 전파,
#    각 노드에서 항등식 4 부분 검사, 잎에서 verify_star_axioms 전체 재검증
#  - complete_partial_star: StarConstraint (i⋆j = k) 를 시드로 넣고 같은 탐색
#  - find_isomorphisms: 군 동형 백트래킹(groups.iter_group_isomorphisms) + ⋆ 보존 필터
#  - canonical_form / build_catalog: 군 자기동형으로 옮긴 ⋆ 표 중 사전식 최소
# ---------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

import config_store
from errors import EnumerationBoundError, StructureError
from groups import GroupTable, automorphisms, builtin_groups, generating_sequence, iter_group_isomorphisms
from mla_core import ElemSet, FiniteMLA, MLAHom, as_bits, trivial_star, verify_group, verify_star_axioms
from structure import centers, frattini, is_proper_star, lower_central_series, pair_commutator, structure_report

log = logging.getLogger("ENUM")


# =================
# [제약]
# =================

@dataclass(frozen=True)
class StarConstraint:
    pairs: Tuple[Tuple[int, int, int], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> "StarConstraint":
        return cls(tuple((int(i), int(j), int(k)) for i, j, k in pairs))

    def validate(self, n: int) -> Optional[str]:
        """Explanation of a malformed or self-contradictory constraint, else None."""
        seen: Dict[Tuple[int, int], int] = {}
        for i, j, k in self.pairs:
            if not (0 <= i < n and 0 <= j < n and 0 <= k < n):
                raise StructureError(f"constraint {i}*{j} = {k} has an index outside 0..{n - 1}")
            if seen.get((i, j), k) != k:
                return f"constraint gives {i}*{j} both {seen[(i, j)]} and {k}"
            seen[(i, j)] = k
        return None


# =================
# [전파 탐색]
# =================

@dataclass
class _Conflict:
    entry: Tuple[int, int]
    have: int
    want: int
    source: str

    def describe(self, labels: Sequence[str]) -> str:
        a, b = self.entry
        return (f"{labels[a]}*{labels[b]} is forced to both {labels[self.have]} and "
                f"{labels[self.want]} ({self.source})")


class StarSearch:
    """Backtracking search over star tables on one fixed group."""

    def __init__(self, group: FiniteMLA):
        self.group = group
        self.n = group.order
        self.G = group.group_rows
        self.C = group.conj_rows
        self.inv = group.inverse_list
        self.gens = generating_sequence(group.group_table)
        self.first_conflict: Optional[_Conflict] = None
        self.nodes = 0

    # 1 (h, k) = v 를 넣고 작업 목록으로 전파. 모순이면 _Conflict
    def assign(self, S: List[int], h: int, k: int, v: int, source: str = "given") -> Optional[_Conflict]:
        n, G, C, inv = self.n, self.G, self.C, self.inv
        work: List[Tuple[int, int]] = []

        def put(a: int, b: int, val: int, why: str) -> Optional[_Conflict]:
            cur = S[a * n + b]
            if cur < 0:
                S[a * n + b] = val
                work.append((a, b))
                return None
            if cur != val:
                return _Conflict((a, b), cur, val, why)
            return None

        bad = put(h, k, v, source)
        while bad is None and work:
            h, k = work.pop()
            v = S[h * n + k]
            bad = put(k, h, inv[v], "antisymmetry")
            for c in range(n):
                if bad:
                    break
                bad = put(C[c][h], C[c][k], C[c][v], "conjugation invariance")
            for x in range(n):
                if bad:
                    break
                w = S[x * n + k]
                if w >= 0:
                    # (xh)⋆k = ˣ(h⋆k)(x⋆k), (hx)⋆k = ʰ(x⋆k)(h⋆k)
                    bad = put(G[x][h], k, G[C[x][v]][w], "product on the left") \
                        or put(G[h][x], k, G[C[h][w]][v], "product on the left")
                if bad:
                    break
                w = S[h * n + x]
                if w >= 0:
                    # h⋆(kx) = (h⋆k)·ᵏ(h⋆x), h⋆(xk) = (h⋆x)·ˣ(h⋆k)
                    bad = put(h, G[k][x], G[v][C[k][w]], "product on the right") \
                        or put(h, G[x][k], G[w][C[x][v]], "product on the right")
        if bad and self.first_conflict is None:
            self.first_conflict = bad
        return bad

    def seed(self, constraint: Optional[StarConstraint] = None) -> Optional[List[int]]:
        n = self.n
        S = [-1] * (n * n)
        for g in range(n):
            for a, b in ((g, g), (0, g), (g, 0)):
                if self.assign(S, a, b, 0, "g*g = 1 and g*1 = 1") is not None:
                    return None
        for i, j, k in (constraint.pairs if constraint else ()):
            if self.assign(S, i, j, k, f"constraint {i}*{j} = {k}") is not None:
                return None
        return S

    # 2 항등식 4 부분 검사: 관련 항목이 모두 정해진 삼중쌍만
    def jacobi_ok(self, S: List[int]) -> bool:
        n = self.n
        T = np.array(S, dtype=np.int64).reshape(n, n)
        known = T >= 0
        Tz = np.where(known, T, 0)
        C = self.group.conj_table
        Gt = self.group.group_table
        ar = np.arange(n)
        g, h, k = ar[:, None, None], ar[None, :, None], ar[None, None, :]

        def term(a, b, c):
            inner = Tz[a, b]
            ok = known[a, b] & known[inner, C[b, c]]
            return Tz[inner, C[b, c]], ok

        t1, k1 = term(g, h, k)
        t2, k2 = term(h, k, g)
        t3, k3 = term(k, g, h)
        ok = k1 & k2 & k3
        return not (ok & (Gt[Gt[t1, t2], t3] != 0)).any()

    def _branch_order(self) -> List[Tuple[int, int]]:
        return [(a, b) for i, a in enumerate(self.gens) for b in self.gens[i + 1:]]

    def run(self, constraint: Optional[StarConstraint] = None) -> List[np.ndarray]:
        S0 = self.seed(constraint)
        if S0 is None:
            return []
        n = self.n
        found: Dict[Tuple[int, ...], np.ndarray] = {}
        pairs = self._branch_order()

        def pick(S: List[int]) -> Optional[Tuple[int, int]]:
            for a, b in pairs:
                if S[a * n + b] < 0:
                    return a, b
            try:
                idx = S.index(-1)
            except ValueError:
                return None
            return divmod(idx, n)

        def dfs(S: List[int]) -> None:
            self.nodes += 1
            if not self.jacobi_ok(S):
                return
            slot = pick(S)
            if slot is None:
                star = np.array(S, dtype=np.int64).reshape(n, n)
                cand = FiniteMLA(self.group.group_table, star, self.group.names, self.group.name)
                if verify_star_axioms(cand, check_group=False).ok:
                    found.setdefault(tuple(S), star)
                return
            a, b = slot
            for v in range(n):
                S2 = list(S)
                if self.assign(S2, a, b, v, "branch") is None:
                    dfs(S2)

        dfs(S0)
        log.debug("%s: %d star tables, %d search nodes", self.group.name, len(found), self.nodes)
        return [found[key] for key in sorted(found)]


def _as_group_algebra(group: Any) -> FiniteMLA:
    if isinstance(group, FiniteMLA):
        base = trivial_star(group, name=group.name)
    elif isinstance(group, GroupTable):
        base = trivial_star(group, name=group.name)
    else:
        base = trivial_star(np.asarray(group), name="G")
    rep = verify_group(base)
    if not rep.ok:
        f = rep.failure
        raise StructureError(f"not a group table: {f.check} {f.detail} {f.witness}")
    return base


def _check_star_bound(n: int, what: str) -> None:
    bound = config_store.star_max_order()
    if n > bound:
        raise EnumerationBoundError(what, n, bound)


def _wrap(base: FiniteMLA, stars: List[np.ndarray]) -> List[FiniteMLA]:
    return [FiniteMLA(base.group_table, s, base.names, f"{base.name}[{i}]") for i, s in enumerate(stars)]


def enumerate_stars(group: Any) -> List[FiniteMLA]:
    """Every star table on the group satisfying all five identities, sorted by flattened table."""
    base = _as_group_algebra(group)
    _check_star_bound(base.order, "enumerate_stars")
    return _wrap(base, StarSearch(base).run())


def complete_partial_star(group: Any, constraint: StarConstraint) -> List[FiniteMLA]:
    base = _as_group_algebra(group)
    _check_star_bound(base.order, "complete_partial_star")
    if constraint.validate(base.order):
        return []
    return _wrap(base, StarSearch(base).run(constraint))


def is_lie_simple(group: Any) -> bool:
    """True when the only stars on the group are the trivial one and the commutator."""
    return not any(is_proper_star(A) for A in enumerate_stars(group))


def explain_constraint(group: Any, constraint: StarConstraint) -> Optional[str]:
    """Why no completion exists (None when at least one does)."""
    base = _as_group_algebra(group)
    _check_star_bound(base.order, "explain_constraint")
    msg = constraint.validate(base.order)
    if msg:
        return msg
    search = StarSearch(base)
    if search.run(constraint):
        return None
    c = search.first_conflict
    if search.nodes == 0 and c is not None:
        return f"contradiction while seeding: {c.describe(base.labels)}"
    if c is not None:
        return f"every branch fails; first conflict: {c.describe(base.labels)}"
    return "every branch fails the identity ((g*h)*hk)((h*k)*kg)((k*g)*gh) = 1"


# =================
# [동형]
# =================

def find_isomorphisms(
    A: FiniteMLA,
    B: FiniteMLA,
    limit: Optional[int] = None,
    group_only: bool = False,
    subsets: Optional[Tuple[Any, Any]] = None,
) -> List[MLAHom]:
    """All bijections preserving the product (and the Lie product unless ``group_only``).

    ``subsets = (H1, H2)`` restricts to maps sending H1 onto H2.
    """
    admissible: Optional[Callable[[int, int], bool]] = None
    if subsets is not None:
        h1 = as_bits(A, subsets[0])
        h2 = as_bits(B, subsets[1])

        def admissible(x: int, y: int) -> bool:
            return bool((h1 >> x) & 1) == bool((h2 >> y) & 1)

    SA, SB = A.star_table, B.star_table
    out: List[MLAHom] = []
    for mp in iter_group_isomorphisms(A.group_table, B.group_table, admissible):
        if not group_only and not np.array_equal(mp[SA], SB[mp[:, None], mp[None, :]]):
            continue
        out.append(MLAHom(A, B, mp))
        if limit is not None and len(out) >= limit:
            break
    return out


def are_isomorphic(A: FiniteMLA, B: FiniteMLA) -> bool:
    return bool(find_isomorphisms(A, B, limit=1))


def mla_automorphisms(A: FiniteMLA) -> List[MLAHom]:
    return find_isomorphisms(A, A)


# 군 자기동형 p 로 옮긴 ⋆ 표: S'[x, y] = p(S[p⁻¹x, p⁻¹y])
def canonical_form(A: FiniteMLA, group_autos: Optional[List[np.ndarray]] = None) -> Tuple[int, ...]:
    autos = group_autos if group_autos is not None else automorphisms(A.group_table)
    S = A.star_table
    best: Optional[Tuple[int, ...]] = None
    for p in autos:
        q = np.empty_like(p)
        q[p] = np.arange(len(p))
        cand = tuple(p[S[np.ix_(q, q)]].ravel().tolist())
        if best is None or cand < best:
            best = cand
    return best if best is not None else tuple(S.ravel().tolist())


# =================
# [카탈로그]
# =================

@dataclass
class CatalogEntry:
    name: str
    group: str
    algebra: FiniteMLA
    nilpotency_class: Optional[int]
    perfect: bool
    frattini: str
    centers: Tuple[str, str, str]
    structure_ok: bool
    isomorphism_class_size: int = 1

    def flags(self) -> List[str]:
        out = [f"order={self.algebra.order}"]
        out.append("nilpotent" if self.nilpotency_class is not None else "non-nilpotent")
        if self.nilpotency_class is not None:
            out.append(f"class={self.nilpotency_class}")
        if self.perfect:
            out.append("perfect")
        if self.algebra.has_trivial_star:
            out.append("trivial-star")
        out.append("structure=" + ("pass" if self.structure_ok else "FAIL"))
        return out


def build_catalog(max_order: int) -> List[CatalogEntry]:
    """Every star structure up to isomorphism on every built-in group of order <= max_order."""
    bound = config_store.catalog_max_order()
    if max_order > bound:
        raise EnumerationBoundError("build_catalog", max_order, bound)
    entries: List[CatalogEntry] = []
    for grp in builtin_groups(max_order):
        base = _as_group_algebra(grp)
        autos = automorphisms(base.group_table)
        classes: Dict[Tuple[int, ...], int] = {}
        reps: List[FiniteMLA] = []
        for alg in _wrap(base, StarSearch(base).run()):
            key = canonical_form(alg, autos)
            if key in classes:
                classes[key] += 1
                continue
            classes[key] = 1
            reps.append(alg)
        for i, alg in enumerate(reps):
            alg = alg.renamed(f"{grp.name}_{i}")
            full = ElemSet.full(alg)
            z, lz, mz = centers(alg)
            report = structure_report(alg)
            entries.append(CatalogEntry(
                name=alg.name,
                group=grp.name,
                algebra=alg,
                nilpotency_class=lower_central_series(alg).class_index,
                perfect=pair_commutator(alg, full) == full,
                frattini=str(frattini(alg)),
                centers=(str(z), str(lz), str(mz)),
                structure_ok=report.ok,
                isomorphism_class_size=classes[canonical_form(alg, autos)],
            ))
        log.info("catalog %s: %d structures up to isomorphism", grp.name, len(reps))
    return entries
