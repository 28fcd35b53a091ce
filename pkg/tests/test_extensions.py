import numpy as np
import pytest

from actions import conjugation_action
from enumeration import are_isomorphic
from errors import ConstructionError, NotAnIdealError, NotASubalgebraError, StructureError
from extensions import (
    ExtMorphism,
    RelativeExtension,
    construct_product,
    construct_pullback,
    construct_quotient,
    construct_restriction,
    covering_pair_check,
    g_center,
    g_commutator,
    identity_extension,
    inclusion_extension,
    is_lie_perfect_pair,
    kernel_checks,
    perfect_cover_check,
    perfect_pair_report,
    product_inclusion,
    product_projection,
    pullback_projections,
    quotient_projection,
    restriction_inclusion,
    trivial_extension,
    verify_morphism,
    verify_rlce,
)
from groups import cyclic
from mla_core import ElemSet, MLAHom, Status, trivial_algebra, trivial_star
import fixtures

Z2 = trivial_star(cyclic(2), name="Z2")


@pytest.fixture
def s3_times_z2(s3c):
    return construct_product(identity_extension(s3c), Z2)


# =================
# [검증 / 불변량]
# =================

def test_seed_extensions_are_valid(seeds):
    for name, E in seeds:
        rep = verify_rlce(E)
        assert rep.ok, (name, rep.render())
        assert kernel_checks(E).ok, name


def test_g_commutator_and_center_of_identity_extensions(s3c, d4b):
    E = identity_extension(s3c)
    assert g_commutator(E).indices() == list(fixtures.A3_IN_S3)
    assert g_center(E).indices() == [0]
    E = identity_extension(d4b)
    assert g_commutator(E).indices() == [0, 1, 2, 3]
    assert g_center(E).indices() == [0]


def test_inclusion_extension_of_a3(s3c):
    E = inclusion_extension(s3c, fixtures.A3_IN_S3)
    assert E.L.order == 3
    assert E.kernel.is_trivial
    assert g_commutator(E).is_full
    with pytest.raises(NotAnIdealError):
        inclusion_extension(s3c, [0, 1])


def test_trivial_extension(s3c):
    E = trivial_extension(s3c, Z2)
    assert verify_rlce(E).ok
    assert E.kernel.is_full
    assert g_center(E).is_full
    with pytest.raises(ConstructionError):
        trivial_extension(Z2, s3c)


def test_failures_are_reported_in_condition_order(s3c):
    ident = MLAHom.identity(s3c)
    act = conjugation_action(s3c)
    rep = verify_rlce(RelativeExtension(s3c, s3c, ident, ElemSet.of(s3c, [0, 1]), act))
    assert rep.failure.check == "1: H is an ideal of G"
    rep = verify_rlce(RelativeExtension(s3c, s3c, ident, ElemSet.of(s3c, fixtures.A3_IN_S3), act))
    assert rep.failure.check == "1: image of tau is H"
    swap = MLAHom(s3c, s3c, [0, 2, 1, 4, 3, 5])
    rep = verify_rlce(RelativeExtension(s3c, s3c, swap, ElemSet.full(s3c), act))
    assert rep.failure.check.startswith("2: ")


def test_mismatched_orders_are_structure_errors(s3c, v4a):
    with pytest.raises(StructureError):
        RelativeExtension(s3c, v4a, MLAHom.identity(s3c), ElemSet.full(v4a), conjugation_action(v4a))


# =================
# [구성]
# =================

def test_product_keeps_commutator_in_first_factor(s3_times_z2, s3c):
    E = s3_times_z2
    assert E.L.order == 12
    assert E.kernel.indices() == [0, 1]
    assert g_commutator(E).indices() == [0, 6, 8]
    base = identity_extension(s3c)
    assert verify_morphism(base, E, product_inclusion(base, Z2, E)).ok
    assert verify_morphism(E, base, product_projection(base, Z2, E)).ok
    with pytest.raises(ConstructionError):
        construct_product(base, s3c)


def test_restriction_to_first_factor(s3_times_z2, s3c):
    M = list(range(0, 12, 2))
    R = construct_restriction(s3_times_z2, M)
    assert R.L.order == 6
    assert are_isomorphic(R.L, s3c)
    assert verify_morphism(R, s3_times_z2, restriction_inclusion(s3_times_z2, M, R)).ok
    with pytest.raises(NotASubalgebraError):
        construct_restriction(s3_times_z2, [0, 1, 2])


def test_restriction_must_cover_h(s3c):
    with pytest.raises(ConstructionError):
        construct_restriction(identity_extension(s3c), fixtures.A3_IN_S3)


def test_quotient_by_kernel(s3_times_z2, s3c):
    Q = construct_quotient(s3_times_z2, [0, 1])
    assert Q.L.order == 6
    assert Q.kernel.is_trivial
    assert are_isomorphic(Q.L, s3c)
    assert verify_morphism(s3_times_z2, Q, quotient_projection(s3_times_z2, [0, 1], Q)).ok


def test_quotient_needs_ideal_inside_kernel(s3_times_z2):
    with pytest.raises(ConstructionError):
        construct_quotient(s3_times_z2, [0, 6, 8])
    with pytest.raises(NotAnIdealError):
        construct_quotient(s3_times_z2, [0, 2])


def test_pullback_of_identity_extensions(s3c):
    E = identity_extension(s3c)
    ident = MLAHom.identity(s3c)
    P = construct_pullback(E, E, ident)
    assert P.L.order == 6
    first, second = pullback_projections(E, E, ident, P)
    assert verify_morphism(P, E, first).ok
    assert verify_morphism(P, E, second).ok
    assert np.array_equal(first.beta.map, second.beta.map)


def test_pullback_of_product_and_quotient(s3_times_z2):
    Q = construct_quotient(s3_times_z2, [0, 1])
    P = construct_pullback(s3_times_z2, Q, MLAHom.identity(Q.G))
    assert P.L.order == 12
    assert verify_rlce(P).ok


def test_pullback_needs_bijective_theta(s3c):
    E = identity_extension(s3c)
    with pytest.raises(ConstructionError):
        construct_pullback(E, E, MLAHom(s3c, s3c, np.zeros(6, dtype=np.int64)))


def test_morphism_not_commuting_with_tau_fails(s3c):
    E = identity_extension(s3c)
    m = ExtMorphism(MLAHom.identity(s3c), MLAHom(s3c, s3c, np.zeros(6, dtype=np.int64)))
    rep = verify_morphism(E, E, m)
    assert not rep.ok
    assert rep.status_of("theta tau1 = tau2 beta") is Status.FAIL


# =================
# [완전 쌍 / 덮개]
# =================

def test_lie_perfect_pairs(s3c, v4a):
    assert is_lie_perfect_pair(s3c, fixtures.A3_IN_S3)
    assert not is_lie_perfect_pair(v4a, range(4))
    assert not perfect_pair_report(s3c, range(6)).ok


def test_covering_pair_check(s3c, s3_times_z2):
    rep = covering_pair_check(identity_extension(s3c), [0], trivial_algebra())
    assert rep.ok, rep.render()
    rep = covering_pair_check(s3_times_z2, [0, 1], Z2)
    assert rep.status_of("I inside G-Lie center and G-Lie commutator") is Status.FAIL
    rep = covering_pair_check(s3_times_z2, [0, 2], Z2)
    assert rep.failure.check == "I is an ideal of L"
    with pytest.raises(StructureError):
        covering_pair_check(identity_extension(s3c), [0], s3c)


def test_perfect_cover_is_vacuous_without_its_hypotheses(s3c):
    rep = perfect_cover_check(identity_extension(s3c))
    assert rep.ok
    assert rep.status_of("G-Lie commutator is all of L") is Status.VACUOUS


@pytest.mark.slow
def test_a5_is_its_own_perfect_cover():
    A = fixtures.a5c()
    assert is_lie_perfect_pair(A, range(60))
    rep = perfect_cover_check(identity_extension(A))
    assert rep.status_of("G-Lie commutator is all of L") is Status.PASS


# =================
# [씨앗 확장 전체에 대한 구성]
# =================

SEEDS = fixtures.seed_extensions()


def _constructed(E):
    P = construct_product(E, Z2)
    first = list(range(0, P.L.order, Z2.order))
    return {
        "product": P,
        "restriction": construct_restriction(P, first),
        "quotient": construct_quotient(E, E.kernel),
        "pullback": construct_pullback(E, E, MLAHom.identity(E.G)),
    }


@pytest.mark.parametrize("name, E", SEEDS, ids=[name for name, _ in SEEDS])
def test_constructions_on_seed_extensions(name, E):
    built = _constructed(E)
    for kind, X in built.items():
        rep = verify_rlce(X)
        assert rep.ok, (name, kind, rep.render())
        assert kernel_checks(X).ok, (name, kind)
    assert are_isomorphic(built["restriction"].L, E.L)
    assert built["pullback"].L.order == sum(
        int((E.tau.map == g).sum()) ** 2 for g in range(E.G.order)
    )
