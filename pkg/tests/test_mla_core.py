import numpy as np
import pytest

from errors import NotAnIdealError, NotASubalgebraError, StructureError
from groups import builtin_groups, cyclic, klein_four
from mla_core import (
    ElemSet,
    FiniteMLA,
    MLAHom,
    Status,
    commutator_star,
    direct_product,
    induced_subalgebra,
    product_inclusion,
    product_projection,
    quotient,
    star_violation,
    trivial_algebra,
    trivial_star,
    verify_group,
    verify_hom,
    verify_star_axioms,
)


@pytest.mark.parametrize("group", builtin_groups(8), ids=lambda g: g.name)
def test_commutator_and_trivial_stars_satisfy_identities(group):
    assert verify_star_axioms(commutator_star(group)).ok
    assert verify_star_axioms(trivial_star(group)).ok


def test_fixtures_satisfy_identities(v4a, d4b, s3c):
    for A in (v4a, d4b, s3c, trivial_algebra()):
        rep = verify_star_axioms(A)
        assert rep.ok, rep.render()
        assert rep.status_of("identity-4") is Status.PASS


def test_v4a_star_values(v4a):
    # 1 = a, 2 = b, 3 = ab
    assert v4a.star(1, 2) == 1
    assert v4a.star(2, 1) == 1
    assert v4a.star(1, 3) == 1
    assert v4a.star(2, 3) == 1


def test_perturbed_star_reports_first_identity_with_witness(v4a):
    star = v4a.star_table.copy()
    star[1, 1] = 2
    bad = FiniteMLA(v4a.group_table, star, v4a.names, "bad")
    rep = verify_star_axioms(bad)
    assert not rep.ok
    assert rep.failure.check == "identity-1"
    assert rep.failure.witness == (1,)
    assert star_violation(bad) == (1, (1,))


def test_broken_group_table_fails_latin_square():
    table = np.array([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    rep = verify_group(FiniteMLA(table, np.zeros_like(table)))
    assert rep.failure.check == "latin-square"
    assert rep.failure.witness == (1, 1)


def test_identity_must_be_element_zero():
    table = np.array([[1, 0], [0, 1]])
    rep = verify_group(FiniteMLA(table, np.zeros_like(table)))
    assert rep.failure.check == "identity-at-0"


@pytest.mark.parametrize(
    "group, star, names",
    [
        ([[0, 1], [1, 0]], [[0, 0]], None),
        ([[0, 1], [1, 2]], [[0, 0], [0, 0]], None),
        ([[0, 1], [1, 0]], [[0, 0], [0, 0]], ("1", "1")),
    ],
    ids=["shape", "range", "duplicate-names"],
)
def test_malformed_tables_are_structure_errors(group, star, names):
    with pytest.raises(StructureError):
        FiniteMLA(group, star, names)


def test_elemset_rendering_and_order(d4b):
    z = ElemSet.of(d4b, [0, 2])
    assert str(z) == "{1, b^2}"
    assert len(z) == 2 and 2 in z and 1 not in z
    assert ElemSet.identity(d4b) < z < ElemSet.full(d4b)
    assert (z | ElemSet.of(d4b, [1])).indices() == [0, 1, 2]


def test_quotient_by_center(d4b):
    Q, proj = quotient(d4b, [0, 2])
    assert Q.order == 4
    assert proj.map.tolist() == [0, 1, 0, 1, 2, 3, 2, 3]
    assert Q.names == ("[1]", "[b]", "[a]", "[ba]")
    assert verify_star_axioms(Q).ok
    assert verify_hom(proj).ok


def test_quotient_by_non_ideal_is_rejected(d4b):
    with pytest.raises(NotAnIdealError):
        quotient(d4b, [0, 4])


def test_direct_product_and_its_maps(v4a):
    z2 = trivial_star(cyclic(2), name="Z2")
    P = direct_product(v4a, z2)
    assert P.order == 8
    assert verify_star_axioms(P).ok
    assert verify_hom(product_projection(v4a, z2, P)).ok
    assert verify_hom(product_projection(v4a, z2, P, first=False)).ok
    assert verify_hom(product_inclusion(v4a, z2, P)).ok


def test_hom_composition_and_inverse(s3c):
    ident = MLAHom.identity(s3c)
    assert ident.is_bijective
    assert np.array_equal(ident.then(ident.inverse()).map, np.arange(6))
    swap = MLAHom(s3c, s3c, [0, 2, 1, 4, 3, 5])  # (23)과 (12) 교환 = (13) 켤레
    assert verify_hom(swap).ok


def test_non_hom_is_reported():
    V = trivial_star(klein_four())
    # f(a)f(b) = a, f(ab) = 1
    f = MLAHom(V, V, [0, 1, 0, 0])
    rep = verify_hom(f)
    assert rep.failure.check == "preserves-product"
    assert rep.failure.witness == (1, 2)
    # 짝수/홀수 사영 V4 -> Z2 는 준동형
    parity = MLAHom(V, trivial_star(cyclic(2)), [0, 1, 1, 0])
    assert verify_hom(parity).ok
    with pytest.raises(StructureError):
        MLAHom(V, V, [0, 1, 2])


def test_induced_subalgebra(d4b):
    inc = induced_subalgebra(d4b, [0, 1, 2, 3])
    assert inc.algebra.order == 4
    assert inc.locate[4] == -1
    assert verify_hom(inc.embedding).ok
    with pytest.raises(NotASubalgebraError):
        induced_subalgebra(d4b, [0, 1])
