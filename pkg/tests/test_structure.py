import numpy as np
import pytest

from enumeration import build_catalog
from errors import EnumerationBoundError, NotAnIdealError, NotASubalgebraError
from groups import builtin_groups, cyclic
from mla_core import ElemSet, Status, commutator_star, trivial_star
from structure import (
    all_ideals,
    all_subalgebras,
    centers,
    frattini,
    gen_ideal,
    gen_subalgebra,
    is_nilpotent,
    is_subalgebra,
    is_proper_star,
    lower_central_series,
    maximal_subalgebras,
    nilpotency_class,
    non_generators,
    non_generators_direct,
    normalizer,
    normalizer_condition,
    pair_center,
    pair_commutator,
    product_set,
    structure_report,
    upper_central_series,
)
import fixtures


def _idx(s):
    return s.indices()


# =================
# [D4b: D4 위 a⋆b = b 완성]
# =================

def test_d4b_centers(d4b):
    z, lz, mz = centers(d4b)
    assert _idx(z) == [0, 2]
    assert _idx(lz) == [0]
    assert _idx(mz) == [0]


def test_d4b_frattini_and_maximal(d4b):
    subs = all_subalgebras(d4b)
    maximal = maximal_subalgebras(d4b, subs)
    assert len(maximal) == 3
    assert all(len(m) == 4 for m in maximal)
    assert _idx(frattini(d4b, subs)) == [0, 2]
    assert non_generators(d4b, subs) == frattini(d4b, subs)
    assert non_generators_direct(d4b) == frattini(d4b, subs)


def test_d4b_generated_sets(d4b):
    assert _idx(gen_ideal(d4b, [2])) == [0, 2]
    assert _idx(gen_subalgebra(d4b, [1])) == [0, 1, 2, 3]
    assert _idx(normalizer(d4b, [0, 4])) == [0, 4]
    assert _idx(pair_commutator(d4b, ElemSet.full(d4b))) == [0, 1, 2, 3]


def test_d4b_is_not_nilpotent(d4b):
    assert not is_nilpotent(d4b)
    assert normalizer_condition(d4b) is not None
    rep = structure_report(d4b)
    assert rep.ok, rep.render()
    assert rep.facts["frattini"] == "{1, b^2}"
    assert rep.status_of("normalizer-condition") is Status.VACUOUS


def test_frattini_of_v4a_and_s3c(v4a, s3c):
    assert frattini(v4a).is_trivial
    assert frattini(s3c).is_trivial


# =================
# [멱영: Comm(D4)]
# =================

def test_comm_d4_is_nilpotent_of_class_two(comm_d4):
    series = lower_central_series(comm_d4)
    assert [_idx(t) for t in series.terms] == [list(range(8)), [0, 2], [0], [0]]
    assert nilpotency_class(comm_d4) == 2
    assert _idx(pair_commutator(comm_d4, ElemSet.full(comm_d4))) == [0, 2]
    upper = upper_central_series(comm_d4)
    assert upper.class_index == 2


def test_comm_d4_report_checks_nilpotent_consequences(comm_d4):
    rep = structure_report(comm_d4)
    assert rep.ok, rep.render()
    for name in ("normalizer-condition", "maximal-subalgebras-are-ideals", "commutator-in-frattini"):
        assert rep.status_of(name) is Status.PASS
    assert normalizer_condition(comm_d4) is None


def test_abelian_trivial_star_has_class_one():
    A = trivial_star(cyclic(6))
    assert nilpotency_class(A) == 1
    assert len(all_ideals(A)) == len(all_subalgebras(A)) == 4


@pytest.mark.parametrize("group", builtin_groups(8), ids=lambda g: g.name)
def test_structure_report_holds_on_commutator_stars(group):
    rep = structure_report(commutator_star(group))
    assert rep.ok, rep.render()


def test_prime_order_check():
    rep = structure_report(trivial_star(cyclic(5)))
    assert rep.status_of("no-proper-subalgebra-prime-order") is Status.PASS
    rep = structure_report(trivial_star(cyclic(4)))
    assert rep.status_of("no-proper-subalgebra-prime-order") is Status.VACUOUS


# =================
# [전제 / 한도]
# =================

def test_non_ideal_and_non_subalgebra_are_rejected(d4b):
    with pytest.raises(NotAnIdealError):
        pair_commutator(d4b, [0, 4])
    with pytest.raises(NotAnIdealError):
        pair_center(d4b, [0, 4])
    with pytest.raises(NotASubalgebraError):
        normalizer(d4b, [0, 1])


def test_product_set(d4b):
    assert _idx(product_set(d4b, [0, 4], [0, 2])) == [0, 2, 4, 6]


def test_a5_exceeds_default_bound():
    with pytest.raises(EnumerationBoundError) as exc:
        all_subalgebras(fixtures.a5c())
    assert exc.value.order == 60 and exc.value.bound == 24


def test_bound_follows_environment(monkeypatch, d4b):
    monkeypatch.setenv("MLA_MAX_ORDER", "4")
    with pytest.raises(EnumerationBoundError):
        structure_report(d4b)


def test_proper_star_flag(v4a, s3c):
    assert is_proper_star(v4a)
    assert not is_proper_star(s3c)
    assert not is_proper_star(trivial_star(cyclic(3)))


def test_nilpotent_ideal_frattini_check_runs_on_every_nilpotent_ideal(d4b, comm_d4):
    for A in (d4b, comm_d4):
        rep = structure_report(A)
        assert rep.status_of("frattini-lemma-nilpotent-ideal") is Status.PASS
        assert "frattini_lemma_nilpotent_ideal_skipped" not in rep.facts


# =================
# [클로저 연산자 법칙]
# =================

@pytest.mark.parametrize("close", [gen_subalgebra, gen_ideal], ids=["subalgebra", "ideal"])
@pytest.mark.parametrize("name", ["v4a", "d4b", "s3c", "comm_d4"])
def test_closures_are_closure_operators(close, name):
    A = fixtures.ALGEBRAS[name]()
    rng = np.random.default_rng(7)
    for _ in range(40):
        picks = rng.random(A.order) < 0.3
        S = [int(i) for i in np.flatnonzero(picks)]
        T = sorted(set(S) | {int(rng.integers(A.order))})
        cs = close(A, S)
        assert ElemSet.of(A, S) <= cs
        assert cs <= close(A, T)
        assert close(A, cs) == cs


# =================
# [카탈로그 정리 검사]
# =================

@pytest.mark.slow
def test_theorem_suite_over_catalog_up_to_eight():
    for entry in build_catalog(8):
        A = entry.algebra
        rep = structure_report(A)
        assert not [f.check for f in rep.findings if f.status is Status.FAIL], (entry.name, rep.render())
        subs = all_subalgebras(A)
        assert frattini(A, subs) == non_generators(A, subs), entry.name
        for h in subs:
            assert is_subalgebra(A, normalizer(A, h)), (entry.name, str(h))
