# extensions.py
# ---------------------------------------------
# 쌍 (H, G) 의 상대 리 중심 확장 τ: L → G
#  - RelativeExtension / ExtMorphism 자료형
#  - verify_rlce: 조건 0(구성 요소 공리) → 1~4 → 5(작용/호환) 순으로 첫 실패 보고
#  - g_commutator ^M{G,L}, g_center Z̄(G,L), kernel_checks
#  - 구성: 항등/포함/자명작용 확장, 곱(L×K), 제한(M ⊆ L), 몫(L/K), 당김(pullback)
#  - verify_morphism, covering_pair_check, perfect_cover_check
# ---------------------------------------------
# 모든 구성 결과는 verify_rlce 로 재검증한다. 유효한 입력에서 실패하면 InvariantViolation
# ---------------------------------------------

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, List, Tuple, Union

import numpy as np

from actions import MutualAction, conjugation_action, trivial_action, verify_action, verify_compatibility
from common_utils import bits_to_mask, iter_bits, mask_to_bits
from enumeration import are_isomorphic
from errors import ConstructionError, InvariantViolation, NotAnIdealError, NotASubalgebraError, StructureError
from mla_core import (
    ElemSet,
    FiniteMLA,
    MLAHom,
    Report,
    as_bits,
    direct_product,
    first_witness,
    ideal_violation,
    induced_subalgebra,
    quotient,
    subalgebra_violation,
    verify_hom,
    verify_star_axioms,
)
from structure import gen_subgroup, is_ideal, multiplicative_center, pair_commutator

log = logging.getLogger("EXTENSIONS")

SubsetLike = Union[ElemSet, int, Iterable[int]]


@dataclass(frozen=True, eq=False, repr=False)
class RelativeExtension:
    L: FiniteMLA
    G: FiniteMLA
    tau: MLAHom
    H: ElemSet
    action: MutualAction
    name: str = ""

    def __post_init__(self) -> None:
        if self.tau.source.order != self.L.order or self.tau.target.order != self.G.order:
            raise StructureError(
                f"tau maps order {self.tau.source.order} -> {self.tau.target.order}, "
                f"expected {self.L.order} -> {self.G.order}"
            )
        if self.action.left.order != self.G.order or self.action.right.order != self.L.order:
            raise StructureError("action tables do not match the orders of G and L")
        object.__setattr__(self, "H", ElemSet(self.G, as_bits(self.G, self.H)))

    def __repr__(self) -> str:
        return f"RelativeExtension({self.name or '?'}: |L|={self.L.order} -> |G|={self.G.order})"

    @property
    def kernel(self) -> ElemSet:
        return self.tau.kernel()


@dataclass(frozen=True, eq=False)
class ExtMorphism:
    theta: MLAHom  # G1 → G2
    beta: MLAHom   # L1 → L2


# =================
# [검증]
# =================

def _flag(rep: Report, name: str, bad: np.ndarray, detail: str = "") -> bool:
    return rep.check(name, not bad.any(), detail, first_witness(bad) if bad.any() else ())


# 1 조건 0~5 순서로 검사, 첫 실패 조건에서 중단
def verify_rlce(E: RelativeExtension) -> Report:
    rep = Report(f"relative central extension: {E.name or '?'}")
    L, G, tau, act = E.L, E.G, E.tau.map, E.action
    nl, ng = L.order, G.order

    if not rep.extend(verify_star_axioms(L), "L: "):
        return rep
    if not rep.extend(verify_star_axioms(G), "G: "):
        return rep
    if not rep.extend(verify_hom(E.tau), "tau: "):
        return rep

    # (1) H 아이디얼, τ(L) = H, ker τ 위 작용 자명
    found = ideal_violation(G, E.H)
    if not rep.check("1: H is an ideal of G", found is None, found[0] if found else "", found[1] if found else ()):
        return rep
    image = E.tau.image(ElemSet.full(L))
    if not rep.check("1: image of tau is H", image == E.H, f"image {image}, H {E.H}"):
        return rep
    kmask = bits_to_mask(E.kernel.bits, nl)
    kidx = np.flatnonzero(kmask)
    bad = (act.act_gl[:, kidx] != kidx[None, :]) | (act.brk_gl[:, kidx] != 0)
    if not _flag(rep, "1: G acts trivially on ker tau", bad):
        return rep

    # (2) τ(ᵍl) = gτ(l)g⁻¹, τ⟨g,l⟩ = g⋆τ(l)
    ag, al = np.arange(ng), np.arange(nl)
    g, l = ag[:, None], al[None, :]
    if not _flag(rep, "2: tau(g.l) = g tau(l) g^-1", tau[act.act_gl] != G.conj_table[g, tau[l]]):
        return rep
    if not _flag(rep, "2: tau<g,l> = g * tau(l)", tau[act.brk_gl] != G.star_table[g, tau[l]]):
        return rep

    # (3) ^τ(l) l' = l l' l⁻¹, ⟨τ(l), l'⟩ = l⋆l'
    l1, l2 = al[:, None], al[None, :]
    if not _flag(rep, "3: tau(l).l' = l l' l^-1", act.act_gl[tau[l1], l2] != L.conj_table):
        return rep
    if not _flag(rep, "3: <tau(l), l'> = l * l'", act.brk_gl[tau[l1], l2] != L.star_table):
        return rep

    # (4) ˡg = ^τ(l) g, ⟨l,g⟩ = τ(l)⋆g
    l, g = al[:, None], ag[None, :]
    if not _flag(rep, "4: l.g = tau(l).g", act.act_lg != G.conj_table[tau[l], g]):
        return rep
    if not _flag(rep, "4: <l,g> = tau(l) * g", act.brk_lg != G.star_table[tau[l], g]):
        return rep

    if rep.extend(verify_action(act), "5: "):
        rep.extend(verify_compatibility(act), "5: ")
    return rep


def _require_valid(E: RelativeExtension, what: str) -> None:
    rep = verify_rlce(E)
    if not rep.ok:
        f = rep.failure
        raise InvariantViolation(f"{what} produced an invalid extension: {f.check} {f.detail}".rstrip(), f.witness)


# =================
# [불변량]
# =================

def _g_commutator_bits(E: RelativeExtension) -> int:
    act, L = E.action, E.L
    twisted = L.group_table[act.act_gl, L.inverse[None, :]]
    gens = np.union1d(twisted.ravel(), act.brk_gl.ravel())
    return gen_subgroup(L, gens.tolist()).bits


def g_commutator(E: RelativeExtension) -> ElemSet:
    """^M{G,L}: subgroup of L generated by every ᵍl·l⁻¹ and ⟨g,l⟩."""
    out = ElemSet(E.L, _g_commutator_bits(E))
    found = ideal_violation(E.L, out)
    if found:
        raise InvariantViolation(f"G-Lie commutator {out} is not an ideal of L ({found[0]})", found[1])
    return out


def _g_center_bits(E: RelativeExtension) -> int:
    act = E.action
    ar = np.arange(E.L.order)
    ok = (act.act_gl == ar[None, :]).all(axis=0) & (act.brk_gl == 0).all(axis=0)
    return mask_to_bits(ok)


def g_center(E: RelativeExtension) -> ElemSet:
    out = ElemSet(E.L, _g_center_bits(E))
    if not E.kernel <= out:
        raise InvariantViolation(f"ker tau = {E.kernel} is not inside the G-Lie center {out}")
    found = ideal_violation(E.L, out)
    if found:
        raise InvariantViolation(f"G-Lie center {out} is not an ideal of L ({found[0]})", found[1])
    return out


def kernel_checks(E: RelativeExtension) -> Report:
    rep = Report(f"kernel: {E.name or '?'}")
    kernel = E.kernel
    comm = ElemSet(E.L, _g_commutator_bits(E))
    center = ElemSet(E.L, _g_center_bits(E))
    mz = multiplicative_center(E.L)
    rep.facts.update({"kernel": str(kernel), "g_commutator": str(comm), "g_center": str(center)})
    rep.check("kernel inside MZ(L)", kernel <= mz, f"ker {kernel}, MZ {mz}")
    rep.check("kernel inside G-Lie center", kernel <= center, f"ker {kernel}, center {center}")
    rep.check("G-Lie commutator is an ideal", is_ideal(E.L, comm), str(comm))
    rep.check("G-Lie center is an ideal", is_ideal(E.L, center), str(center))
    return rep


# =================
# [기본 확장]
# =================

def identity_extension(A: FiniteMLA) -> RelativeExtension:
    return RelativeExtension(A, A, MLAHom.identity(A), ElemSet.full(A), conjugation_action(A), f"id({A.name})")


def inclusion_extension(A: FiniteMLA, H: SubsetLike) -> RelativeExtension:
    """L = H as its own algebra, tau the inclusion, G acting by conjugation and star."""
    bits = as_bits(A, H)
    found = ideal_violation(A, bits)
    if found:
        raise NotAnIdealError(f"{A.format_set(bits)} is not an ideal: {found[0]} closure fails at {found[1]}", found[1])
    inc = induced_subalgebra(A, bits)
    emb, pos = inc.members, inc.locate
    act = MutualAction(
        A, inc.algebra,
        pos[A.conj_table[:, emb]],
        A.conj_table[emb, :],
        pos[A.star_table[:, emb]],
        A.star_table[emb, :],
    )
    return RelativeExtension(inc.algebra, A, inc.embedding, ElemSet(A, bits), act, f"{A.name}>{inc.algebra.name}")


def trivial_extension(G: FiniteMLA, L: FiniteMLA) -> RelativeExtension:
    """tau = 1 onto H = {1}; needs L abelian with trivial star."""
    if not (L.is_abelian and L.has_trivial_star):
        raise ConstructionError("trivial extension needs L abelian with trivial Lie product")
    tau = MLAHom(L, G, np.zeros(L.order, dtype=np.int64))
    return RelativeExtension(L, G, tau, ElemSet.identity(G), trivial_action(G, L), f"1:{L.name}->{G.name}")


def perfect_pair_report(A: FiniteMLA, H: SubsetLike) -> Report:
    bits = as_bits(A, H)
    E = inclusion_extension(A, bits)
    comm = ElemSet(E.L, _g_commutator_bits(E))
    rep = Report(f"Lie perfect pair: ({A.format_set(bits)}, {A.name})")
    rep.check("G-Lie commutator equals H", comm.is_full, f"^M{{G,H}} = {E.tau.image(comm)}")
    rep.facts["pair_commutator_equals_H"] = pair_commutator(A, bits).bits == bits
    return rep


def is_lie_perfect_pair(A: FiniteMLA, H: SubsetLike) -> bool:
    return perfect_pair_report(A, H).ok


# =================
# [구성: 곱 / 제한 / 몫 / 당김]
# =================

# 2 L × K, (l, k) 의 인덱스 = l·|K| + k. ᵍ(l,k) = (ᵍl, k), ⟨g,(l,k)⟩ = (⟨g,l⟩, 1)
def construct_product(E: RelativeExtension, K: FiniteMLA, check: bool = True) -> RelativeExtension:
    if not (K.is_abelian and K.has_trivial_star):
        raise ConstructionError(f"{K.name or 'K'} must be abelian with trivial Lie product")
    m = K.order
    nl, ng = E.L.order, E.G.order
    act = E.action
    P = direct_product(E.L, K)
    tau = MLAHom(P, E.G, E.tau.map[np.arange(nl * m) // m])
    new_act = MutualAction(
        E.G, P,
        (act.act_gl[:, :, None] * m + np.arange(m)[None, None, :]).reshape(ng, nl * m),
        np.repeat(act.act_lg, m, axis=0),
        np.repeat(act.brk_gl * m, m, axis=1),
        np.repeat(act.brk_lg, m, axis=0),
    )
    out = RelativeExtension(P, E.G, tau, E.H, new_act, f"{E.name}x{K.name}")
    if check:
        _require_valid(out, "construct_product")
        before = induced_subalgebra(E.L, g_commutator(E)).algebra
        comm = g_commutator(out)
        if any(x % m for x in comm):
            raise InvariantViolation(f"G-Lie commutator {comm} leaves the first factor")
        if not are_isomorphic(before, induced_subalgebra(P, comm).algebra):
            raise InvariantViolation("G-Lie commutator of the product is not isomorphic to the original")
    return out


def product_projection(E: RelativeExtension, K: FiniteMLA, P: RelativeExtension) -> ExtMorphism:
    return ExtMorphism(MLAHom.identity(E.G), MLAHom(P.L, E.L, np.arange(P.L.order) // K.order))


def product_inclusion(E: RelativeExtension, K: FiniteMLA, P: RelativeExtension) -> ExtMorphism:
    return ExtMorphism(MLAHom.identity(E.G), MLAHom(E.L, P.L, np.arange(E.L.order) * K.order))


# 3 τ|_M : M → G. 전제: τ(M) = H, M 이 G 의 작용과 괄호에 대해 닫힘
def construct_restriction(E: RelativeExtension, M: SubsetLike, check: bool = True) -> RelativeExtension:
    bits = as_bits(E.L, M)
    found = subalgebra_violation(E.L, bits)
    if found:
        raise NotASubalgebraError(f"{E.L.format_set(bits)} is not a subalgebra of L ({found[0]})", found[1])
    image = E.tau.image(bits)
    if image != E.H:
        raise ConstructionError(f"tau(M) = {image} differs from H = {E.H}")
    mask = bits_to_mask(bits, E.L.order)
    idx = np.flatnonzero(mask)
    act = E.action
    for key, table in (("action", act.act_gl), ("bracket", act.brk_gl)):
        bad = ~mask[table[:, idx]]
        if bad.any():
            g, j = first_witness(bad)
            raise ConstructionError(f"M is not closed under the G-{key}: g={g}, l={idx[j]}")
    inc = induced_subalgebra(E.L, bits)
    emb, pos = inc.members, inc.locate
    new_act = MutualAction(
        E.G, inc.algebra,
        pos[act.act_gl[:, emb]],
        act.act_lg[emb, :],
        pos[act.brk_gl[:, emb]],
        act.brk_lg[emb, :],
    )
    out = RelativeExtension(inc.algebra, E.G, MLAHom(inc.algebra, E.G, E.tau.map[emb]), E.H, new_act,
                            f"{E.name}|{len(idx)}")
    if check:
        _require_valid(out, "construct_restriction")
    return out


def restriction_inclusion(E: RelativeExtension, M: SubsetLike, R: RelativeExtension) -> ExtMorphism:
    members = np.array(list(iter_bits(as_bits(E.L, M))), dtype=np.int64)
    return ExtMorphism(MLAHom.identity(E.G), MLAHom(R.L, E.L, members))


def _quotient_parts(E: RelativeExtension, K: SubsetLike) -> Tuple[FiniteMLA, MLAHom, np.ndarray]:
    bits = as_bits(E.L, K)
    found = ideal_violation(E.L, bits)
    if found:
        raise NotAnIdealError(f"{E.L.format_set(bits)} is not an ideal of L ({found[0]})", found[1])
    if not ElemSet(E.L, bits) <= E.kernel:
        raise ConstructionError(f"{E.L.format_set(bits)} is not inside ker tau = {E.kernel}")
    Q, proj = quotient(E.L, bits)
    reps = np.full(Q.order, -1, dtype=np.int64)
    for l in range(E.L.order - 1, -1, -1):
        reps[proj.map[l]] = l
    return Q, proj, reps


# 4 L/K (K ⊆ ker τ). 잉여류 대표원은 최소 인덱스, 잘 정의됨은 모든 l 에 대해 재검증
def construct_quotient(E: RelativeExtension, K: SubsetLike, check: bool = True) -> RelativeExtension:
    Q, proj, reps = _quotient_parts(E, K)
    p, act = proj.map, E.action
    tau_q = E.tau.map[reps]
    new_act = MutualAction(
        E.G, Q,
        p[act.act_gl[:, reps]],
        act.act_lg[reps, :],
        p[act.brk_gl[:, reps]],
        act.brk_lg[reps, :],
    )
    bad = (
        (p[act.act_gl] != new_act.act_gl[:, p]).any(axis=0)
        | (p[act.brk_gl] != new_act.brk_gl[:, p]).any(axis=0)
        | (act.act_lg != new_act.act_lg[p, :]).any(axis=1)
        | (act.brk_lg != new_act.brk_lg[p, :]).any(axis=1)
        | (E.tau.map != tau_q[p])
    )
    if bad.any():
        l = int(np.flatnonzero(bad)[0])
        raise InvariantViolation(f"induced action on L/K is not well defined at l = {l}", (l,))
    out = RelativeExtension(Q, E.G, MLAHom(Q, E.G, tau_q), E.H, new_act, f"{E.name}/{Q.name}")
    if check:
        _require_valid(out, "construct_quotient")
    return out


def quotient_projection(E: RelativeExtension, K: SubsetLike, Qext: RelativeExtension) -> ExtMorphism:
    _, proj, _ = _quotient_parts(E, K)
    return ExtMorphism(MLAHom.identity(E.G), MLAHom(E.L, Qext.L, proj.map))


def _check_theta(E1: RelativeExtension, E2: RelativeExtension, theta: MLAHom) -> None:
    if theta.source.order != E1.G.order or theta.target.order != E2.G.order:
        raise ConstructionError("theta must map G1 to G2")
    if not theta.is_bijective:
        raise ConstructionError("theta is not a bijection")
    rep = verify_hom(theta)
    if not rep.ok:
        raise ConstructionError(f"theta is not a homomorphism: {rep.failure.check} at {rep.failure.witness}")
    if theta.image(E1.H).bits != E2.H.bits:
        raise ConstructionError(f"theta(H1) = {theta.image(E1.H)} differs from H2 = {E2.H}")


def _pullback_members(E1: RelativeExtension, E2: RelativeExtension, theta: MLAHom) -> np.ndarray:
    n2 = E2.L.order
    left = theta.map[E1.tau.map][:, None]
    right = E2.tau.map[None, :]
    l1, l2 = np.nonzero(left == right)
    return np.sort(l1 * n2 + l2)


# 5 𝓛 = {(l1, l2) : θτ1(l1) = τ2(l2)} ⊆ L1 × L2, τ(l1, l2) = τ1(l1)
def construct_pullback(E1: RelativeExtension, E2: RelativeExtension, theta: MLAHom, check: bool = True) -> RelativeExtension:
    _check_theta(E1, E2, theta)
    n2 = E2.L.order
    members = _pullback_members(E1, E2, theta)
    P = direct_product(E1.L, E2.L)
    try:
        inc = induced_subalgebra(P, members.tolist(), name=f"{E1.L.name}x_G{E2.L.name}")
    except NotASubalgebraError as exc:
        raise InvariantViolation(f"pullback carrier is not a subalgebra of L1 x L2: {exc}", exc.witness) from exc
    pos = inc.locate
    first, second = members // n2, members % n2
    a1, a2 = E1.action, E2.action
    th = theta.map
    act_gl = pos[a1.act_gl[:, first] * n2 + a2.act_gl[th][:, second]]
    brk_gl = pos[a1.brk_gl[:, first] * n2 + a2.brk_gl[th][:, second]]
    if (act_gl < 0).any() or (brk_gl < 0).any():
        g, j = first_witness((act_gl < 0) | (brk_gl < 0))
        raise InvariantViolation(f"G1 does not preserve the pullback carrier at g={g}, element {j}", (g, j))
    new_act = MutualAction(E1.G, inc.algebra, act_gl, a1.act_lg[first, :], brk_gl, a1.brk_lg[first, :])
    out = RelativeExtension(inc.algebra, E1.G, MLAHom(inc.algebra, E1.G, E1.tau.map[first]), E1.H, new_act,
                            f"pullback({E1.name},{E2.name})")
    if check:
        _require_valid(out, "construct_pullback")
    return out


def pullback_projections(
    E1: RelativeExtension, E2: RelativeExtension, theta: MLAHom, P: RelativeExtension
) -> Tuple[ExtMorphism, ExtMorphism]:
    members = _pullback_members(E1, E2, theta)
    n2 = E2.L.order
    return (
        ExtMorphism(MLAHom.identity(E1.G), MLAHom(P.L, E1.L, members // n2)),
        ExtMorphism(theta, MLAHom(P.L, E2.L, members % n2)),
    )


# =================
# [사상 / 덮개 조건]
# =================

def verify_morphism(E1: RelativeExtension, E2: RelativeExtension, m: ExtMorphism) -> Report:
    rep = Report(f"morphism {E1.name or '?'} -> {E2.name or '?'}")
    if (m.theta.source.order, m.theta.target.order) != (E1.G.order, E2.G.order) \
            or (m.beta.source.order, m.beta.target.order) != (E1.L.order, E2.L.order):
        raise StructureError("morphism maps do not match the extensions' orders")
    if not rep.extend(verify_hom(m.theta), "theta: ") or not rep.extend(verify_hom(m.beta), "beta: "):
        return rep
    image_h = m.theta.image(E1.H)
    rep.check("theta(H1) = H2", image_h.bits == E2.H.bits, f"theta(H1) = {image_h}, H2 = {E2.H}")
    c1 = ElemSet(E1.L, _g_commutator_bits(E1))
    c2 = ElemSet(E2.L, _g_commutator_bits(E2))
    image_c = m.beta.image(c1)
    rep.check("beta maps G-Lie commutator onto G-Lie commutator", image_c.bits == c2.bits,
              f"beta({c1}) = {image_c}, target {c2}")
    bad = m.theta.map[E1.tau.map] != E2.tau.map[m.beta.map]
    _flag(rep, "theta tau1 = tau2 beta", bad)
    return rep


def covering_pair_check(E: RelativeExtension, I: SubsetLike, cert: FiniteMLA) -> Report:
    if not (cert.is_abelian and cert.has_trivial_star):
        raise StructureError("multiplier certificate must be abelian with trivial Lie product")
    if not verify_star_axioms(cert).ok:
        raise StructureError("multiplier certificate is not a valid algebra")
    bits = as_bits(E.L, I)
    rep = Report(f"covering pair: {E.name or '?'} with I = {E.L.format_set(bits)}")
    found = ideal_violation(E.L, bits)
    if not rep.check("I is an ideal of L", found is None, found[0] if found else "", found[1] if found else ()):
        return rep
    inside = ElemSet(E.L, _g_center_bits(E) & _g_commutator_bits(E))
    rep.check("I inside G-Lie center and G-Lie commutator", ElemSet(E.L, bits) <= inside, f"intersection {inside}")
    Q, _ = quotient(E.L, bits)
    h_alg = induced_subalgebra(E.G, E.H).algebra
    rep.check("L/I isomorphic to H", are_isomorphic(Q, h_alg), f"|L/I| = {Q.order}, |H| = {h_alg.order}")
    i_alg = induced_subalgebra(E.L, bits).algebra
    rep.check("I isomorphic to the certificate", are_isomorphic(i_alg, cert), f"|I| = {i_alg.order}, |cert| = {cert.order}")
    return rep


def perfect_cover_check(E: RelativeExtension) -> Report:
    rep = Report(f"perfect cover: {E.name or '?'}")
    unmet: List[str] = []
    if not is_lie_perfect_pair(E.G, E.H):
        unmet.append("(H, G) is not a Lie perfect pair")
    kernel = E.kernel
    inside = ElemSet(E.L, _g_center_bits(E) & _g_commutator_bits(E))
    if not kernel <= inside:
        unmet.append("ker tau is not inside the G-Lie center and commutator")
    Q, _ = quotient(E.L, kernel)
    if not are_isomorphic(Q, induced_subalgebra(E.G, E.H).algebra):
        unmet.append("L/ker tau is not isomorphic to H")
    if unmet:
        rep.vacuous("G-Lie commutator is all of L", "; ".join(unmet))
        return rep
    comm = ElemSet(E.L, _g_commutator_bits(E))
    rep.check("G-Lie commutator is all of L", comm.is_full, f"^M{{L,G}} = {comm}")
    return rep
