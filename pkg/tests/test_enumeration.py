import numpy as np
import pytest

from enumeration import (
    StarConstraint,
    are_isomorphic,
    build_catalog,
    canonical_form,
    complete_partial_star,
    enumerate_stars,
    explain_constraint,
    find_isomorphisms,
    is_lie_simple,
    mla_automorphisms,
)
from errors import EnumerationBoundError, StructureError
from groups import cyclic, klein_four, symmetric
from mla_core import FiniteMLA, commutator_star, trivial_star, verify_star_axioms


def test_v4_has_four_stars_in_two_classes():
    stars = enumerate_stars(klein_four())
    assert len(stars) == 4
    assert all(verify_star_axioms(A).ok for A in stars)
    assert sum(1 for A in stars if A.has_trivial_star) == 1
    keys = {canonical_form(A) for A in stars}
    assert len(keys) == 2


def test_z2_and_z3_only_carry_the_trivial_star():
    assert len(enumerate_stars(cyclic(2))) == 1
    assert is_lie_simple(cyclic(2))
    assert is_lie_simple(cyclic(3))
    assert not is_lie_simple(klein_four())


def test_constraint_with_single_completion(v4a):
    found = complete_partial_star(klein_four(), StarConstraint.of([(1, 2, 1)]))
    assert len(found) == 1
    assert np.array_equal(found[0].star_table, v4a.star_table)
    assert explain_constraint(klein_four(), StarConstraint.of([(1, 2, 1)])) is None


def test_contradictory_constraint_is_explained():
    # a*a = b 는 항등식 g*g = 1 과 충돌
    c = StarConstraint.of([(1, 1, 2)])
    assert complete_partial_star(klein_four(), c) == []
    assert explain_constraint(klein_four(), c)


def test_constraint_giving_two_values():
    c = StarConstraint.of([(1, 2, 1), (1, 2, 3)])
    assert c.validate(4) == "constraint gives 1*2 both 1 and 3"
    assert complete_partial_star(klein_four(), c) == []
    assert explain_constraint(klein_four(), c) == "constraint gives 1*2 both 1 and 3"


def test_constraint_index_out_of_range():
    with pytest.raises(StructureError):
        complete_partial_star(klein_four(), StarConstraint.of([(1, 2, 7)]))


def test_star_enumeration_bound(monkeypatch):
    monkeypatch.setenv("MLA_STAR_MAX_ORDER", "3")
    with pytest.raises(EnumerationBoundError):
        enumerate_stars(klein_four())


def test_isomorphisms_of_comm_s3(s3c):
    autos = mla_automorphisms(s3c)
    assert len(autos) == 6
    assert np.array_equal(autos[0].map, np.arange(6))


def test_isomorphism_respects_the_star(v4a):
    V = trivial_star(klein_four())
    assert not are_isomorphic(v4a, V)
    assert len(find_isomorphisms(v4a, V, group_only=True)) == 6
    assert not are_isomorphic(trivial_star(cyclic(4)), V)


def test_isomorphism_restricted_to_subsets(s3c):
    found = find_isomorphisms(s3c, commutator_star(symmetric(3)), subsets=([0, 3, 4], [0, 3, 4]))
    assert len(found) == 6
    assert find_isomorphisms(s3c, s3c, subsets=([0, 1], [0, 3])) == []


def test_catalog_of_order_one():
    entries = build_catalog(1)
    assert len(entries) == 1
    assert entries[0].group == "Z1"
    assert entries[0].structure_ok


def test_catalog_up_to_order_four():
    entries = build_catalog(4)
    assert [e.group for e in entries] == ["Z1", "Z2", "Z3", "Z4", "V4", "V4"]
    assert all(e.structure_ok for e in entries)
    v4 = [e for e in entries if e.group == "V4"]
    assert sorted(e.isomorphism_class_size for e in v4) == [1, 3]
    proper = next(e for e in v4 if not e.algebra.has_trivial_star)
    assert proper.nilpotency_class is None
    assert proper.frattini == "{1}"
    assert "non-nilpotent" in proper.flags()


def test_catalog_bound(monkeypatch):
    monkeypatch.setenv("MLA_CATALOG_MAX_ORDER", "2")
    with pytest.raises(EnumerationBoundError):
        build_catalog(4)


# =================
# [V4: 교대 쌍가법 사상과 대조]
# =================

def _v4_alternating_stars():
    # V4 = F2^2 (인덱스 비트가 좌표). x⋆y = c·(x1y2 + x2y1), c ∈ V4
    V = klein_four()
    x1, x2 = np.arange(4) & 1, np.arange(4) >> 1
    det = (x1[:, None] * x2[None, :]) ^ (x2[:, None] * x1[None, :])
    tables = [det * c for c in range(4)]
    return [FiniteMLA(V.table, t, V.names) for t in tables]


def test_v4_star_count_matches_alternating_maps():
    alternating = [A for A in _v4_alternating_stars() if verify_star_axioms(A).ok]
    found = enumerate_stars(klein_four())
    assert len(found) == len(alternating)
    assert {A.star_table.tobytes() for A in found} == {A.star_table.tobytes() for A in alternating}

    # a⋆b = a
    expected = [A for A in alternating if A.star_table[1, 2] == 1]
    completed = complete_partial_star(klein_four(), StarConstraint.of([(1, 2, 1)]))
    assert len(completed) == len(expected) == 1
    assert np.array_equal(completed[0].star_table, expected[0].star_table)
