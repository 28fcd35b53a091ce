# isoclinism.py
# ---------------------------------------------
# 상대 리 중심 확장 사이의 동사(isoclinism)
#  - IsoclinismWitness(θ: G1→G2, β: ^M{G1,L1} → ^M{G2,L2})
#  - verify_isoclinism: τ2-올(fiber) 대표원 무관성 선검사 → 두 등식 검사
#  - find_isoclinism: θ 를 H-상 보존 동형으로 열거, β 는 생성원에서 강제 후 곱으로 확장
#  - verify_isoclinic_morphism / lemma_suite / equivalence_probe
# ---------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from errors import MLAError, StructureError
from extensions import (
    ExtMorphism,
    RelativeExtension,
    construct_product,
    construct_pullback,
    construct_quotient,
    g_commutator,
    product_inclusion,
    product_projection,
    pullback_projections,
    verify_morphism,
)
from enumeration import find_isomorphisms
from mla_core import Inclusion, MLAHom, Report, first_witness, induced_subalgebra, quotient, verify_hom

log = logging.getLogger("ISOCLINISM")


@dataclass(frozen=True, eq=False)
class IsoclinismWitness:
    theta: MLAHom  # G1 → G2
    beta: MLAHom   # ^M{G1,L1} → ^M{G2,L2}, 각 부분대수의 독립 FiniteMLA 위에서

    def inverse(self) -> "IsoclinismWitness":
        return IsoclinismWitness(self.theta.inverse(), self.beta.inverse())

    def then(self, other: "IsoclinismWitness") -> "IsoclinismWitness":
        return IsoclinismWitness(self.theta.then(other.theta), self.beta.then(other.beta))


def commutator_inclusion(E: RelativeExtension) -> Inclusion:
    return induced_subalgebra(E.L, g_commutator(E), name=f"^M{{G,{E.L.name}}}")


def identity_witness(E: RelativeExtension) -> IsoclinismWitness:
    return IsoclinismWitness(MLAHom.identity(E.G), MLAHom.identity(commutator_inclusion(E).algebra))


# =================
# [공통 표]
# =================

def _twisted(E: RelativeExtension) -> np.ndarray:
    """T[g, l] = ᵍl · l⁻¹."""
    return E.L.group_table[E.action.act_gl, E.L.inverse[None, :]]


def _fiber_reps(E: RelativeExtension) -> np.ndarray:
    """Least preimage of each h in G (-1 outside τ(L))."""
    reps = np.full(E.G.order, -1, dtype=np.int64)
    for l in range(E.L.order - 1, -1, -1):
        reps[E.tau.map[l]] = l
    return reps


def _lifted(E1: RelativeExtension, E2: RelativeExtension, theta: MLAHom) -> np.ndarray:
    """For each l1, the canonical l2 with τ2(l2) = θτ1(l1)."""
    return _fiber_reps(E2)[theta.map[E1.tau.map]]


# =================
# [검증]
# =================

def _preimage_independence(rep: Report, E: RelativeExtension, label: str) -> bool:
    T, B = _twisted(E), E.action.brk_gl
    rep_of = _fiber_reps(E)[E.tau.map]
    bad = (T != T[:, rep_of]) | (B != B[:, rep_of])
    return rep.check(
        f"independent of the preimage in {label}", not bad.any(),
        "g.l l^-1 and <g,l> depend only on tau(l)", first_witness(bad) if bad.any() else (),
    )


def verify_isoclinism(E1: RelativeExtension, E2: RelativeExtension, w: IsoclinismWitness) -> Report:
    rep = Report(f"isoclinism {E1.name or '?'} ~ {E2.name or '?'}")
    c1, c2 = commutator_inclusion(E1), commutator_inclusion(E2)
    th, be = w.theta, w.beta
    if (th.source.order, th.target.order) != (E1.G.order, E2.G.order):
        raise StructureError("theta must map G1 to G2")
    if (be.source.order, be.target.order) != (c1.algebra.order, c2.algebra.order):
        raise StructureError("beta must map ^M{G1,L1} to ^M{G2,L2}")

    if not rep.extend(verify_hom(th), "theta: ") or not rep.check("theta is bijective", th.is_bijective):
        return rep
    if not rep.extend(verify_hom(be), "beta: ") or not rep.check("beta is bijective", be.is_bijective):
        return rep
    h_img = th.image(E1.H)
    if not rep.check("theta(H1) = H2", h_img.bits == E2.H.bits, f"theta(H1) = {h_img}, H2 = {E2.H}"):
        return rep
    if not _preimage_independence(rep, E2, "L2"):
        return rep

    # β 를 L1 인덱스 → L2 인덱스 사상으로
    on_l1 = np.full(E1.L.order, -1, dtype=np.int64)
    on_l1[c1.members] = c2.members[be.map]
    l2 = _lifted(E1, E2, th)
    g2 = th.map[:, None]
    T1, T2 = _twisted(E1), _twisted(E2)
    bad = on_l1[T1] != T2[g2, l2[None, :]]
    rep.check("beta(g1.l1 l1^-1) = g2.l2 l2^-1", not bad.any(), "", first_witness(bad) if bad.any() else ())
    bad = on_l1[E1.action.brk_gl] != E2.action.brk_gl[g2, l2[None, :]]
    rep.check("beta<g1,l1> = <g2,l2>", not bad.any(), "", first_witness(bad) if bad.any() else ())
    return rep


# =================
# [탐색]
# =================

def _forced_beta(E1: RelativeExtension, E2: RelativeExtension, theta: MLAHom) -> Optional[Dict[int, int]]:
    """β on L1 indices forced by θ; None on any clash."""
    l2 = _lifted(E1, E2, theta)
    if (l2 < 0).any():
        return None
    g2 = theta.map[:, None]
    pairs = (
        (_twisted(E1), _twisted(E2)[g2, l2[None, :]]),
        (E1.action.brk_gl, E2.action.brk_gl[g2, l2[None, :]]),
    )
    forced: Dict[int, int] = {}
    for src, dst in pairs:
        for x, y in zip(src.ravel().tolist(), dst.ravel().tolist()):
            if forced.setdefault(x, y) != y:
                return None
    # 곱으로 닫기
    GL1, GL2 = E1.L.group_rows, E2.L.group_rows
    changed = True
    while changed:
        changed = False
        known = list(forced.items())
        for a, fa in known:
            for b, fb in known:
                c, fc = GL1[a][b], GL2[fa][fb]
                have = forced.get(c)
                if have is None:
                    forced[c] = fc
                    changed = True
                elif have != fc:
                    return None
    return forced


def find_isoclinism(E1: RelativeExtension, E2: RelativeExtension) -> Optional[IsoclinismWitness]:
    """First isoclinism in the order find_isomorphisms yields theta, or None."""
    if E1.G.order != E2.G.order:
        return None
    c1, c2 = commutator_inclusion(E1), commutator_inclusion(E2)
    if c1.algebra.order != c2.algebra.order:
        return None
    tried = 0
    for theta in find_isomorphisms(E1.G, E2.G, subsets=(E1.H, E2.H)):
        tried += 1
        forced = _forced_beta(E1, E2, theta)
        if forced is None or len(forced) != c1.algebra.order:
            continue
        try:
            beta_map = c2.locate[[forced[int(x)] for x in c1.members]]
            w = IsoclinismWitness(theta, MLAHom(c1.algebra, c2.algebra, beta_map))
        except (KeyError, MLAError):
            continue
        if verify_isoclinism(E1, E2, w).ok:
            log.info("isoclinism %s ~ %s found after %d theta candidates", E1.name, E2.name, tried)
            return w
    log.info("no isoclinism %s ~ %s (%d theta candidates)", E1.name, E2.name, tried)
    return None


# =================
# [동사 사상]
# =================

def _mono_epi(beta: MLAHom) -> str:
    if beta.is_bijective:
        return "isomorphism"
    if beta.is_injective:
        return "monomorphism"
    if beta.is_surjective:
        return "epimorphism"
    return "neither"


def verify_isoclinic_morphism(E1: RelativeExtension, E2: RelativeExtension, m: ExtMorphism) -> Report:
    rep = Report(f"isoclinic morphism {E1.name or '?'} -> {E2.name or '?'}")
    rep.facts["kind"] = _mono_epi(m.beta)
    if not rep.extend(verify_morphism(E1, E2, m), "morphism: "):
        return rep
    c1, c2 = commutator_inclusion(E1), commutator_inclusion(E2)
    restricted = c2.locate[m.beta.map[c1.members]]
    w = IsoclinismWitness(m.theta, MLAHom(c1.algebra, c2.algebra, restricted))
    rep.extend(verify_isoclinism(E1, E2, w), "restricted: ")
    return rep


def lemma_suite(E1: RelativeExtension, E2: RelativeExtension, w: IsoclinismWitness) -> Report:
    rep = Report(f"isoclinism consequences {E1.name or '?'} ~ {E2.name or '?'}")
    c1, c2 = commutator_inclusion(E1), commutator_inclusion(E2)
    m1, m2 = c1.members, c2.members
    be = m2[w.beta.map]  # C1 순서 → L2 인덱스
    th = w.theta.map

    bad = th[E1.tau.map[m1]] != E2.tau.map[be]
    rep.check("theta tau1 = tau2 beta on ^M{G1,L1}", not bad.any(), "",
              (int(m1[np.flatnonzero(bad)[0]]),) if bad.any() else ())

    k1 = E1.tau.map[m1] == 0
    k2 = E2.tau.map[m2] == 0
    image = set(be[k1].tolist())
    target = set(m2[k2].tolist())
    rep.check("beta(ker tau1 ∩ ^M{G1,L1}) = ker tau2 ∩ ^M{G2,L2}", image == target,
              f"{E2.L.format_set(image)} vs {E2.L.format_set(target)}")

    # ᵍ¹l1 l1⁻¹ ⟨g1',l1'⟩ 는 두 인자로 갈라 검사 (l1' = 1, g1 = 1 로 각각 환원)
    on_l1 = np.full(E1.L.order, -1, dtype=np.int64)
    on_l1[m1] = be
    T1, T2 = _twisted(E1), _twisted(E2)
    B1, B2 = E1.action.brk_gl, E2.action.brk_gl
    g2 = th[:, None]
    bad = (on_l1[T1[:, m1]] != T2[g2, be[None, :]]) | (on_l1[B1[:, m1]] != B2[g2, be[None, :]])
    witness: Tuple[int, ...] = ()
    if bad.any():
        g, j = first_witness(bad)
        witness = (g, int(m1[j]))
    rep.check("beta(g1.l1 l1^-1 <g1',l1'>) = g2.beta(l1) beta(l1)^-1 <g2',beta(l1')>", not bad.any(), "", witness)
    return rep


# =================
# [동치 정리의 구성적 확인]
# =================

def _expect(rep: Report, name: str, sub: Report, kind: str) -> None:
    ok = sub.ok and sub.facts.get("kind") in (kind, "isomorphism")
    detail = f"{sub.facts.get('kind')}" if sub.ok else f"{sub.failure.check} {sub.failure.detail}".rstrip()
    rep.check(name, ok, detail, sub.failure.witness if sub.failure else ())


def equivalence_probe(
    E1: RelativeExtension, E2: RelativeExtension, w: Optional[IsoclinismWitness] = None
) -> Report:
    rep = Report(f"equivalence probe {E1.name or '?'} ~ {E2.name or '?'}")
    if w is None:
        w = find_isoclinism(E1, E2)
    if not rep.check("isoclinism available", w is not None):
        return rep
    theta = w.theta

    # 당김 𝓛 과 두 사영
    P = construct_pullback(E1, E2, theta)
    p1, p2 = pullback_projections(E1, E2, theta, P)
    r1 = verify_isoclinic_morphism(P, E1, p1)
    r2 = verify_isoclinic_morphism(P, E2, p2)
    _expect(rep, "pullback -> E1 is an isoclinic epimorphism", r1, "epimorphism")
    _expect(rep, "pullback -> E2 is an isoclinic epimorphism", r2, "epimorphism")
    rep.facts["pullback_order"] = P.L.order

    cP = commutator_inclusion(P)
    c1, c2 = commutator_inclusion(E1), commutator_inclusion(E2)
    on_c1 = np.full(E1.L.order, -1, dtype=np.int64)
    on_c1[c1.members] = c2.members[w.beta.map]
    graph = p2.beta.map[cP.members] == on_c1[p1.beta.map[cP.members]]
    rep.check("^M{G,pullback} is the graph of beta", bool(graph.all()) and cP.algebra.order == c1.algebra.order)

    if r1.ok and r2.ok:
        b1 = p1.beta.map[cP.members]
        b2 = p2.beta.map[cP.members]
        back = np.full(E1.L.order, -1, dtype=np.int64)
        back[b1] = b2
        recomposed = c2.locate[back[c1.members]]
        if (recomposed < 0).any():
            rep.check("epimorphisms recompose to an isoclinism", False, "beta2 beta1^-1 leaves ^M{G2,L2}")
        else:
            w2 = IsoclinismWitness(theta, MLAHom(c1.algebra, c2.algebra, recomposed))
            sub = verify_isoclinism(E1, E2, w2)
            rep.check("epimorphisms recompose to an isoclinism", sub.ok,
                      sub.failure.check if sub.failure else "", sub.failure.witness if sub.failure else ())

    # M = 𝓛 / ^M{G,𝓛}, 그리고 단사 𝓛 → Li × M
    M, to_m = quotient(P.L, cP.members.tolist())
    M = M.renamed("M")
    if not rep.check("M is abelian with trivial Lie product", M.is_abelian and M.has_trivial_star, f"|M| = {M.order}"):
        return rep
    rep.facts["M_order"] = M.order
    mo = M.order
    for idx, (E, proj) in enumerate(((E1, p1), (E2, p2)), start=1):
        prod = construct_product(E, M)
        bar = ExtMorphism(proj.theta, MLAHom(P.L, prod.L, proj.beta.map * mo + to_m.map))
        _expect(rep, f"pullback -> E{idx} x M is an isoclinic monomorphism",
                verify_isoclinic_morphism(P, prod, bar), "monomorphism")
    prod1 = construct_product(E1, M)
    _expect(rep, "E1 -> E1 x M inclusion is an isoclinic monomorphism",
            verify_isoclinic_morphism(E1, prod1, product_inclusion(E1, M, prod1)), "monomorphism")
    _expect(rep, "E1 x M -> E1 projection is an isoclinic epimorphism",
            verify_isoclinic_morphism(prod1, E1, product_projection(E1, M, prod1)), "epimorphism")

    # (L1 × M)/N, N = {(l, (l,1)·^M{G,𝓛}) : l ∈ ker τ1}
    pos_in_p = np.full(E1.L.order * E2.L.order, -1, dtype=np.int64)
    pos_in_p[p1.beta.map * E2.L.order + p2.beta.map] = np.arange(P.L.order)
    ker1 = np.flatnonzero(E1.tau.map == 0)
    n_bits = (ker1 * mo + to_m.map[pos_in_p[ker1 * E2.L.order]]).tolist()
    Q = construct_quotient(prod1, n_bits)
    to_q = quotient(prod1.L, n_bits)[1].map
    gamma1 = ExtMorphism(MLAHom.identity(E1.G), MLAHom(E1.L, Q.L, to_q[np.arange(E1.L.order) * mo]))
    lift = _lifted(E2, E1, theta.inverse())
    l2 = np.arange(E2.L.order)
    gamma2_map = to_q[lift * mo + to_m.map[pos_in_p[lift * E2.L.order + l2]]]
    gamma2 = ExtMorphism(theta.inverse(), MLAHom(E2.L, Q.L, gamma2_map))
    _expect(rep, "E1 -> (E1 x M)/N is an isoclinic monomorphism", verify_isoclinic_morphism(E1, Q, gamma1), "monomorphism")
    _expect(rep, "E2 -> (E1 x M)/N is an isoclinic monomorphism", verify_isoclinic_morphism(E2, Q, gamma2), "monomorphism")
    return rep

