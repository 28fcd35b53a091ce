# actions.py
# ---------------------------------------------
# 두 곱셈 리 대수 G, L 의 상호 작용 (mutual action)
#  - MutualAction: ᵍl, ˡg 군 작용표 2개 + 괄호 ⟨g,l⟩ ∈ L, ⟨l,g⟩ ∈ G 표 2개
#  - verify_action: 군 작용 법칙(조건 0) → 괄호 조건 1~4, 각 조건은 G→L 먼저, 그다음 L→G
#  - verify_compatibility: 호환 조건 1~5 (각 조건의 두 등식)
#  - lemma24_check: [⟨g,h⟩, h'] = ⟨g·ʰg⁻¹, h'⟩ = (ᵍh·h⁻¹)⋆h'
#  - conjugation_action / trivial_action 빌더
# ---------------------------------------------
# 위반은 (조건 번호, 방향, 사전식 최소 원소) 순으로 첫 번째 하나만 보고
# ---------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

from errors import StructureError
from mla_core import FiniteMLA, Report, first_witness

log = logging.getLogger("ACTIONS")


@dataclass(frozen=True, eq=False, repr=False)
class MutualAction:
    left: FiniteMLA    # G
    right: FiniteMLA   # L
    act_gl: np.ndarray  # |G|×|L|, ᵍl
    act_lg: np.ndarray  # |L|×|G|, ˡg
    brk_gl: np.ndarray  # |G|×|L|, ⟨g,l⟩ ∈ L
    brk_lg: np.ndarray  # |L|×|G|, ⟨l,g⟩ ∈ G

    def __post_init__(self) -> None:
        ng, nl = self.left.order, self.right.order
        shapes = {
            "act_gl": ((ng, nl), nl),
            "act_lg": ((nl, ng), ng),
            "brk_gl": ((ng, nl), nl),
            "brk_lg": ((nl, ng), ng),
        }
        for key, (shape, bound) in shapes.items():
            try:
                arr = np.array(getattr(self, key), dtype=np.int64)
            except (TypeError, ValueError) as exc:
                raise StructureError(f"{key} is not an integer table: {exc}") from exc
            if arr.shape != shape:
                raise StructureError(f"{key} has shape {arr.shape}, expected {shape}")
            bad = (arr < 0) | (arr >= bound)
            if bad.any():
                i, j = first_witness(bad)
                raise StructureError(f"{key} entry ({i},{j}) = {arr[i, j]} is not an index < {bound}")
            arr.setflags(write=False)
            object.__setattr__(self, key, arr)

    def __repr__(self) -> str:
        return f"MutualAction({self.left.name or '?'} <-> {self.right.name or '?'})"

    def swapped(self) -> "MutualAction":
        return MutualAction(self.right, self.left, self.act_lg, self.act_gl, self.brk_lg, self.brk_gl)


def conjugation_action(A: FiniteMLA) -> MutualAction:
    return MutualAction(A, A, A.conj_table, A.conj_table, A.star_table, A.star_table)


def trivial_action(G: FiniteMLA, L: FiniteMLA) -> MutualAction:
    ng, nl = G.order, L.order
    return MutualAction(
        G, L,
        np.tile(np.arange(nl), (ng, 1)),
        np.tile(np.arange(ng), (nl, 1)),
        np.zeros((ng, nl), dtype=np.int64),
        np.zeros((nl, ng), dtype=np.int64),
    )


# =================
# [한 방향 검사: X 가 Y 에 작용, 괄호 X×Y → Y]
# =================

@dataclass(frozen=True)
class _Side:
    label: str
    X: FiniteMLA
    Y: FiniteMLA
    act_xy: np.ndarray  # ˣy
    act_yx: np.ndarray  # ʸx
    brk: np.ndarray     # ⟨x,y⟩ ∈ Y


def _sides(act: MutualAction) -> Tuple[_Side, _Side]:
    return (
        _Side("G->L", act.left, act.right, act.act_gl, act.act_lg, act.brk_gl),
        _Side("L->G", act.right, act.left, act.act_lg, act.act_gl, act.brk_lg),
    )


def _group_action_laws(s: _Side) -> Iterator[Tuple[str, np.ndarray]]:
    X, Y, T = s.X, s.Y, s.act_xy
    nx, ny = X.order, Y.order
    ax, ay = np.arange(nx), np.arange(ny)
    yield "identity acts trivially", (T[0] != ay)[None, :]
    x, x2, y = ax[:, None, None], ax[None, :, None], ay[None, None, :]
    yield "action composes", T[x, T[x2, y]] != T[X.group_table[x, x2], y]
    x, y, y2 = ax[:, None, None], ay[None, :, None], ay[None, None, :]
    GY, SY = Y.group_table, Y.star_table
    yield "acts by group automorphisms", T[x, GY[y, y2]] != GY[T[x, y], T[x, y2]]
    yield "preserves the Lie product", T[x, SY[y, y2]] != SY[T[x, y], T[x, y2]]


def _bracket_conditions(s: _Side) -> Iterator[Tuple[int, np.ndarray]]:
    X, Y, B, Axy, Ayx = s.X, s.Y, s.brk, s.act_xy, s.act_yx
    GX, GY, SX, SY = X.group_table, Y.group_table, X.star_table, Y.star_table
    CX, CY, invY = X.conj_table, Y.conj_table, Y.inverse
    ax, ay = np.arange(X.order), np.arange(Y.order)

    # (1) ⟨x, yy'⟩ = ⟨x,y⟩⟨ʸx, ʸy'⟩
    x, y, y2 = ax[:, None, None], ay[None, :, None], ay[None, None, :]
    yield 1, B[x, GY[y, y2]] != GY[B[x, y], B[Ayx[y, x], CY[y, y2]]]
    # (2) ⟨xx', y⟩ = ⟨ˣx', ˣy⟩⟨x,y⟩
    x, x2, y = ax[:, None, None], ax[None, :, None], ay[None, None, :]
    yield 2, B[GX[x, x2], y] != GY[B[CX[x, x2], Axy[x, y]], B[x, y]]
    # (3) ⟨x⋆x', ˣ'y⟩ ⟨ʸx, ⟨x',y⟩⟩⁻¹ ⟨ˣx', ⟨x,y⟩⁻¹⟩⁻¹ = 1
    t1 = B[SX[x, x2], Axy[x2, y]]
    t2 = invY[B[Ayx[y, x], B[x2, y]]]
    t3 = invY[B[CX[x, x2], invY[B[x, y]]]]
    yield 3, GY[GY[t1, t2], t3] != 0
    # (4) ⟨ʸ'x, y⋆y'⟩ (ʸy' ⋆ ⟨x,y⟩)(ˣy ⋆ ⟨x,y'⟩⁻¹) = 1
    x, y, y2 = ax[:, None, None], ay[None, :, None], ay[None, None, :]
    t1 = B[Ayx[y2, x], SY[y, y2]]
    t2 = SY[CY[y, y2], B[x, y]]
    t3 = SY[Axy[x, y], invY[B[x, y2]]]
    yield 4, GY[GY[t1, t2], t3] != 0


def verify_action(act: MutualAction) -> Report:
    rep = Report(f"action axioms: {act!r}")
    sides = _sides(act)
    for s in sides:
        for law, bad in _group_action_laws(s):
            if not rep.check(f"group-action {s.label}", not bad.any(), law, first_witness(bad) if bad.any() else ()):
                return rep
    per_side = [dict(_bracket_conditions(s)) for s in sides]
    for cond in (1, 2, 3, 4):
        for s, masks in zip(sides, per_side):
            bad = masks[cond]
            if not rep.check(f"bracket-{cond} {s.label}", not bad.any(), "",
                             first_witness(bad) if bad.any() else ()):
                return rep
    # 유도 성질: ⟨x,1⟩ = 1 = ⟨1,y⟩
    for s in sides:
        bad = (s.brk[:, 0] != 0)[:, None] | (s.brk[0, :] != 0)[None, :]
        rep.check(f"bracket-identity {s.label}", not bad.any(), "<x,1> = 1 = <1,y>",
                  first_witness(bad) if bad.any() else ())
    return rep


# =================
# [호환 조건]
# =================

def _compatibility_conditions(act: MutualAction) -> Iterator[Tuple[int, str, np.ndarray]]:
    G, L = act.left, act.right
    GG, GL, SG, SL = G.group_table, L.group_table, G.star_table, L.star_table
    CG, CL, iG, iL = G.conj_table, L.conj_table, G.inverse, L.inverse
    Agl, Alg, Bgl, Blg = act.act_gl, act.act_lg, act.brk_gl, act.brk_lg
    ag, al = np.arange(G.order), np.arange(L.order)

    # (1) ^(ᵍh) g' = g·ʰ(g⁻¹g'g)·g⁻¹,  ^(ʰg) h' = h·ᵍ(h⁻¹h'h)·h⁻¹
    g, h, g2 = ag[:, None, None], al[None, :, None], ag[None, None, :]
    yield 1, "G", Alg[Agl[g, h], g2] != CG[g, Alg[h, CG[iG[g], g2]]]
    h, g, h2 = al[:, None, None], ag[None, :, None], al[None, None, :]
    yield 1, "L", Agl[Alg[h, g], h2] != CL[h, Agl[g, CL[iL[h], h2]]]

    # (2) ⟨⟨h,g⟩⁻¹, h'⟩ = ⟨g,h⟩⋆h',  ⟨⟨g,h⟩⁻¹, g'⟩ = ⟨h,g⟩⋆g'
    g, h, h2 = ag[:, None, None], al[None, :, None], al[None, None, :]
    yield 2, "L", Bgl[iG[Blg[h, g]], h2] != SL[Bgl[g, h], h2]
    g, h, g2 = ag[:, None, None], al[None, :, None], ag[None, None, :]
    yield 2, "G", Blg[iL[Bgl[g, h]], g2] != SG[Blg[h, g], g2]

    # (3) ^(⟨g,h⟩⟨h,g⟩) h' = h',  ^(⟨g,h⟩⟨h,g⟩) g' = g'
    g, h, h2 = ag[:, None, None], al[None, :, None], al[None, None, :]
    yield 3, "L", CL[Bgl[g, h], Agl[Blg[h, g], h2]] != h2
    g, h, g2 = ag[:, None, None], al[None, :, None], ag[None, None, :]
    yield 3, "G", Alg[Bgl[g, h], CG[Blg[h, g], g2]] != g2

    # (4) ᵍ⟨h,g'⟩ = ⟨ᵍh, ᵍg'⟩,  ʰ⟨g,h'⟩ = ⟨ʰg, ʰh'⟩
    g, h, g2 = ag[:, None, None], al[None, :, None], ag[None, None, :]
    yield 4, "G", CG[g, Blg[h, g2]] != Blg[Agl[g, h], CG[g, g2]]
    g, h, h2 = ag[:, None, None], al[None, :, None], al[None, None, :]
    yield 4, "L", CL[h, Bgl[g, h2]] != Bgl[Alg[h, g], CL[h, h2]]

    # (5) ⟨g·ʰg⁻¹, h'⟩ = (ᵍh·h⁻¹)⋆h',  ⟨h·ᵍh⁻¹, g'⟩ = (ʰg·g⁻¹)⋆g'
    g, h, h2 = ag[:, None, None], al[None, :, None], al[None, None, :]
    yield 5, "L", Bgl[GG[g, Alg[h, iG[g]]], h2] != SL[GL[Agl[g, h], iL[h]], h2]
    g, h, g2 = ag[:, None, None], al[None, :, None], ag[None, None, :]
    yield 5, "G", Blg[GL[h, Agl[g, iL[h]]], g2] != SG[GG[Alg[h, g], iG[g]], g2]


def verify_compatibility(act: MutualAction) -> Report:
    rep = Report(f"compatibility: {act!r}")
    for cond, side, bad in _compatibility_conditions(act):
        if not rep.check(f"compatibility-{cond} in {side}", not bad.any(), "",
                         first_witness(bad) if bad.any() else ()):
            return rep
    return rep


def lemma24_check(act: MutualAction) -> Report:
    """[⟨g,h⟩, h'] = ⟨g·ʰg⁻¹, h'⟩ = (ᵍh·h⁻¹)⋆h' over every (g, h, h')."""
    G, L = act.left, act.right
    ag, al = np.arange(G.order), np.arange(L.order)
    g, h, h2 = ag[:, None, None], al[None, :, None], al[None, None, :]
    lhs = L.comm_table[act.brk_gl[g, h], h2]
    mid = act.brk_gl[G.group_table[g, act.act_lg[h, G.inverse[g]]], h2]
    rhs = L.star_table[L.group_table[act.act_gl[g, h], L.inverse[h]], h2]
    rep = Report(f"commutator of bracket: {act!r}")
    bad = lhs != mid
    if not rep.check("commutator-equals-twisted-bracket", not bad.any(), "", first_witness(bad) if bad.any() else ()):
        return rep
    bad = mid != rhs
    rep.check("twisted-bracket-equals-lie-product", not bad.any(), "", first_witness(bad) if bad.any() else ())
    return rep


def verify_all(act: MutualAction) -> Report:
    rep = verify_action(act)
    rep.title = f"mutual action: {act!r}"
    if rep.ok and rep.extend(verify_compatibility(act)):
        rep.extend(lemma24_check(act))
    return rep
