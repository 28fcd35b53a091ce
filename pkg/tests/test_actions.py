import numpy as np
import pytest

from actions import (
    MutualAction,
    conjugation_action,
    lemma24_check,
    trivial_action,
    verify_action,
    verify_all,
    verify_compatibility,
)
from enumeration import build_catalog
from errors import StructureError
from groups import cyclic
from mla_core import Status, trivial_star
import fixtures


@pytest.mark.parametrize("name", ["v4a", "d4b", "s3c", "comm_d4", "trivial"])
def test_conjugation_action_is_compatible(name):
    A = fixtures.ALGEBRAS[name]()
    rep = verify_all(conjugation_action(A))
    assert rep.ok, rep.render()
    assert rep.status_of("commutator-equals-twisted-bracket") is Status.PASS
    assert rep.status_of("compatibility-5 in G") is Status.PASS


def test_conjugation_action_on_small_catalog():
    for entry in build_catalog(4):
        assert verify_all(conjugation_action(entry.algebra)).ok, entry.name


def test_trivial_action_is_compatible(s3c, d4b):
    z2 = trivial_star(cyclic(2))
    for G, L in ((s3c, z2), (z2, s3c), (d4b, s3c)):
        rep = verify_all(trivial_action(G, L))
        assert rep.ok, rep.render()


def test_swapped_action_keeps_axioms(d4b):
    act = conjugation_action(d4b).swapped()
    assert act.left is d4b and act.right is d4b
    assert verify_action(act).ok
    assert verify_compatibility(act).ok


def test_identity_must_act_trivially(s3c):
    act = trivial_action(s3c, s3c)
    act_gl = act.act_gl.copy()
    act_gl[0, 1] = 0
    act_gl[0, 0] = 1
    bad = MutualAction(s3c, s3c, act_gl, act.act_lg, act.brk_gl, act.brk_lg)
    rep = verify_action(bad)
    assert rep.failure.check == "group-action G->L"
    assert rep.failure.detail == "identity acts trivially"
    assert rep.failure.witness == (0, 0)


def test_perturbed_bracket_fails_first_condition(v4a):
    act = conjugation_action(v4a)
    brk = act.brk_gl.copy()
    brk[1, 2] = 0
    rep = verify_action(MutualAction(v4a, v4a, act.act_gl, act.act_lg, brk, act.brk_lg))
    assert rep.failure.check == "bracket-1 G->L"


def test_lemma_check_reports_in_order(s3c):
    rep = lemma24_check(conjugation_action(s3c))
    assert [f.check for f in rep.findings] == [
        "commutator-equals-twisted-bracket",
        "twisted-bracket-equals-lie-product",
    ]
    assert rep.ok


def test_table_shapes_are_checked(s3c):
    z2 = trivial_star(cyclic(2))
    act = trivial_action(s3c, z2)
    with pytest.raises(StructureError):
        MutualAction(s3c, z2, act.act_lg, act.act_lg, act.brk_gl, act.brk_lg)
    with pytest.raises(StructureError):
        MutualAction(s3c, z2, act.act_gl, act.act_lg, np.full((6, 2), 5), act.brk_lg)


@pytest.mark.slow
def test_conjugation_action_on_catalog_up_to_eight():
    for entry in build_catalog(8):
        assert verify_all(conjugation_action(entry.algebra)).ok, entry.name
