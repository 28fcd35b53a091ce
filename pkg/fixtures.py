# fixtures.py
# ---------------------------------------------
# 이름으로 불러 쓰는 기준 대수 / 확장 모음 (CLI `fixture`, 테스트 공용)
#  - v4a   : V4, a⋆b = a 로 완성한 별 구조
#  - d4b   : D4, a⋆b = b 로 완성한 별 구조 (인덱스 i+4j = b^i a^j)
#  - s3c / a5c / comm_d4 : 교환자 별 구조
#  - trivial : 자명 대수
# ---------------------------------------------

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from enumeration import StarConstraint, complete_partial_star
from errors import ConstructionError
from extensions import (
    RelativeExtension,
    construct_product,
    construct_quotient,
    identity_extension,
    inclusion_extension,
)
from groups import alternating, cyclic, dihedral, klein_four, symmetric
from mla_core import FiniteMLA, commutator_star, trivial_algebra, trivial_star


def _completed(group, pairs, name: str) -> FiniteMLA:
    found = complete_partial_star(group, StarConstraint.of(pairs))
    if not found:
        raise ConstructionError(f"no star completion for fixture {name}")
    return found[0].renamed(name)


@lru_cache(maxsize=None)
def v4a() -> FiniteMLA:
    return _completed(klein_four(), [(1, 2, 1)], "V4a")


@lru_cache(maxsize=None)
def d4b() -> FiniteMLA:
    return _completed(dihedral(4), [(4, 1, 1)], "D4b")


@lru_cache(maxsize=None)
def s3c() -> FiniteMLA:
    return commutator_star(symmetric(3), name="Comm(S3)")


@lru_cache(maxsize=None)
def a5c() -> FiniteMLA:
    return commutator_star(alternating(5), name="Comm(A5)")


@lru_cache(maxsize=None)
def comm_d4() -> FiniteMLA:
    return commutator_star(dihedral(4), name="Comm(D4)")


@lru_cache(maxsize=None)
def trivial() -> FiniteMLA:
    return trivial_algebra()


ALGEBRAS: Dict[str, Callable[[], FiniteMLA]] = {
    "v4a": v4a,
    "d4b": d4b,
    "s3c": s3c,
    "a5c": a5c,
    "comm_d4": comm_d4,
    "trivial": trivial,
}

# A3 = {1, (123), (132)} in S3C
A3_IN_S3 = (0, 3, 4)


def seed_extensions() -> List[Tuple[str, RelativeExtension]]:
    """Extensions every run of the test suite and the CLI agree on."""
    product = construct_product(identity_extension(d4b()), trivial_star(cyclic(4), name="Z4"))
    return [
        ("id_s3c", identity_extension(s3c())),
        ("id_d4b", identity_extension(d4b())),
        ("id_v4a", identity_extension(v4a())),
        ("a3_in_s3c", inclusion_extension(s3c(), A3_IN_S3)),
        ("d4b_z4_mod_z2", construct_quotient(product, (0, 2))),
    ]


def extension_fixtures() -> List[Tuple[str, RelativeExtension]]:
    """Seed extensions plus product extensions used by the CLI and its tests."""
    z2 = trivial_star(cyclic(2), name="Z2")
    seeds = seed_extensions()
    return seeds + [(f"{name}_x_z2", construct_product(E, z2)) for name, E in seeds[:3]]
