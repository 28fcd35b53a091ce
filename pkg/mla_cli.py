#mla_cli.py
# --------------------------------------------------------------------
# 명령행 진입점: python mla_cli.py <subcommand> ...
#   check <mla>                  군 + ⋆ 항등식 검증
#   report <mla>                 중심/교환자/급수/Frattini/정규화 조건 + structure_report
#   subalgebras <mla>            부분대수 격자 (아이디얼/극대 표시)
#   enumerate                    --group <mla> | --group-name NAME, --constraint i,j,k ...
#   ext-check <rlce>             상대 리 중심 확장 조건 검증
#   ext-invariants <rlce>        ^M{G,L}, Z̄(G,L), 핵 검사
#   isoclinic <rlce> <rlce>      동사 탐색 + 보조정리 + 동치 정리 확인
#   cover-check <rlce>           --ideal ... --cert <mla> [--perfect]
#   catalog                      --max-order n --out <dir>
#   fixture <name>               --out <dir> 기준 대수/확장 파일 출력
# 종료코드:
#   0 = 모든 검사 통과, 1 = 검사 실패(witness 출력), 2 = 구조/파싱/사용법 오류
# --------------------------------------------------------------------

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence

import pandas as pd
from dotenv import load_dotenv

import config_store
import fixtures
from catalog_store import write_algebra, write_catalog
from common_utils import parse_index_list, parse_index_tuple
from enumeration import StarConstraint, build_catalog, complete_partial_star, enumerate_stars, explain_constraint
from errors import InvariantViolation, MLAError
from extensions import (
    covering_pair_check,
    g_center,
    g_commutator,
    kernel_checks,
    perfect_cover_check,
    verify_rlce,
)
from formats import emit_rlce, read_mla, read_rlce
from groups import group_by_name
from isoclinism import equivalence_probe, find_isoclinism, lemma_suite
from mla_core import Report, verify_star_axioms
from structure import all_subalgebras, is_ideal, is_proper_star, maximal_subalgebras, normalizer_condition, structure_report

LOG_FORMAT = "%(asctime)s [%(levelname)7s] %(filename)22s:%(lineno)4d [%(name)10s - %(funcName)12s] : %(message)s"
log = logging.getLogger("CLI")

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _setup_logging() -> None:
    load_dotenv()
    logging.basicConfig(level=config_store.log_level(), format=LOG_FORMAT)


def _emit(lines: Iterable[str]) -> None:
    for line in lines:
        print(line)


def _facts(rep: Report) -> List[str]:
    out: List[str] = []
    for key, value in rep.facts.items():
        if isinstance(value, list):
            out.append(f"{key}:")
            out.extend(f"  {v}" for v in value)
        else:
            out.append(f"{key}: {value}")
    return out


def _finish(reports: Sequence[Report]) -> int:
    for rep in reports:
        _emit(rep.render())
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# =================
# [명령]
# =================

def cmd_check(args: argparse.Namespace) -> int:
    return _finish([verify_star_axioms(read_mla(args.mla))])


def cmd_report(args: argparse.Namespace) -> int:
    A = read_mla(args.mla)
    basic = verify_star_axioms(A)
    if not basic.ok:
        return _finish([basic])
    rep = structure_report(A)
    _emit(_facts(rep))
    stuck = normalizer_condition(A)
    print(f"normalizer condition: {'holds' if stuck is None else f'fails at {stuck}'}")
    return _finish([rep])


def cmd_subalgebras(args: argparse.Namespace) -> int:
    A = read_mla(args.mla)
    subs = all_subalgebras(A)
    maximal = {m.bits for m in maximal_subalgebras(A, subs)}
    frame = pd.DataFrame(
        [{"order": len(h), "ideal": is_ideal(A, h), "maximal": h.bits in maximal, "elements": str(h)} for h in subs]
    )
    print(frame.to_string(index=False))
    print(f"{len(subs)} subalgebras")
    return EXIT_OK


def _constraint(values: Optional[List[str]]) -> Optional[StarConstraint]:
    if not values:
        return None
    triples = []
    for raw in values:
        t = parse_index_tuple(raw, 3)
        if t is None:
            raise argparse.ArgumentTypeError(f"bad constraint '{raw}', expected i,j,k")
        triples.append(t)
    return StarConstraint.of(triples)


def cmd_enumerate(args: argparse.Namespace) -> int:
    group: Any = group_by_name(args.group_name) if args.group_name else read_mla(args.group)
    constraint = _constraint(args.constraint)
    if constraint is None:
        found = enumerate_stars(group)
    else:
        found = complete_partial_star(group, constraint)
    print(f"{len(found)} star structure(s)")
    for A in found:
        print(f"  {A.name}: proper={'yes' if is_proper_star(A) else 'no'}")
    if args.out:
        out = Path(args.out)
        for A in found:
            write_algebra(out / f"{A.name}.mla", A)
        print(f"written to {out}")
    if not found and constraint is not None:
        print(f"no completion: {explain_constraint(group, constraint)}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_ext_check(args: argparse.Namespace) -> int:
    return _finish([verify_rlce(read_rlce(args.rlce))])


def cmd_ext_invariants(args: argparse.Namespace) -> int:
    E = read_rlce(args.rlce)
    valid = verify_rlce(E)
    if not valid.ok:
        return _finish([valid])
    print(f"g_commutator: {g_commutator(E)}")
    print(f"g_center: {g_center(E)}")
    return _finish([kernel_checks(E)])


def cmd_isoclinic(args: argparse.Namespace) -> int:
    E1, E2 = read_rlce(args.first), read_rlce(args.second)
    for rep in (verify_rlce(E1), verify_rlce(E2)):
        if not rep.ok:
            return _finish([rep])
    w = find_isoclinism(E1, E2)
    if w is None:
        print(f"no isoclinism between {E1.name} and {E2.name}")
        return EXIT_FAIL
    print(f"theta: {' '.join(str(int(v)) for v in w.theta.map)}")
    print(f"beta: {' '.join(str(int(v)) for v in w.beta.map)}")
    return _finish([lemma_suite(E1, E2, w), equivalence_probe(E1, E2, w)])


def cmd_cover_check(args: argparse.Namespace) -> int:
    E = read_rlce(args.rlce)
    valid = verify_rlce(E)
    if not valid.ok:
        return _finish([valid])
    ideal = parse_index_list(args.ideal)
    if ideal is None:
        raise argparse.ArgumentTypeError(f"bad ideal '{args.ideal}', expected i,j,...")
    reports = [covering_pair_check(E, ideal, read_mla(args.cert))]
    if args.perfect:
        reports.append(perfect_cover_check(E))
    return _finish(reports)


def cmd_catalog(args: argparse.Namespace) -> int:
    entries = build_catalog(args.max_order)
    frame = pd.DataFrame([
        {
            "name": e.name,
            "group": e.group,
            "class": e.nilpotency_class,
            "perfect": e.perfect,
            "frattini": e.frattini,
            "iso_class": e.isomorphism_class_size,
            "structure": "pass" if e.structure_ok else "FAIL",
        }
        for e in entries
    ])
    if not frame.empty:
        print(frame.to_string(index=False))
        print(frame.groupby("group", sort=False).size().to_string())
    index = write_catalog(entries, Path(args.out), args.max_order)
    log.info("catalog max_order=%d: %d structures -> %s", args.max_order, len(entries), index)
    print(f"{len(entries)} structures, index at {index}")
    return EXIT_OK if all(e.structure_ok for e in entries) else EXIT_FAIL


def cmd_fixture(args: argparse.Namespace) -> int:
    out = Path(args.out)
    if args.name in fixtures.ALGEBRAS:
        path = out / f"{args.name}.mla"
        write_algebra(path, fixtures.ALGEBRAS[args.name]())
        print(path)
        return EXIT_OK
    seeds = dict(fixtures.extension_fixtures())
    if args.name not in seeds:
        known = ", ".join(list(fixtures.ALGEBRAS) + list(seeds))
        raise argparse.ArgumentTypeError(f"unknown fixture '{args.name}' (known: {known})")
    E = seeds[args.name]
    l_name, g_name = f"{args.name}.L.mla", f"{args.name}.G.mla"
    write_algebra(out / l_name, E.L)
    write_algebra(out / g_name, E.G)
    path = out / f"{args.name}.rlce"
    path.write_bytes(emit_rlce(E, l_name, g_name).encode("utf-8"))
    print(path)
    return EXIT_OK


# =================
# [파서]
# =================

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mla_cli", description="finite multiplicative Lie algebra toolkit")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("check", help="verify group and Lie product identities")
    p.add_argument("mla")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("report", help="structural invariants and theorem checks")
    p.add_argument("mla")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("subalgebras", help="list every subalgebra")
    p.add_argument("mla")
    p.set_defaults(func=cmd_subalgebras)

    p = sub.add_parser("enumerate", help="all Lie products on a group, optionally constrained")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help=".mla file whose group table is used")
    src.add_argument("--group-name", help="built-in group such as V4, D4, Q8, Z6")
    p.add_argument("--constraint", action="append", metavar="i,j,k", help="require i*j = k (repeatable)")
    p.add_argument("--out", help="directory for the resulting .mla files")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("ext-check", help="verify a relative Lie central extension")
    p.add_argument("rlce")
    p.set_defaults(func=cmd_ext_check)

    p = sub.add_parser("ext-invariants", help="G-Lie commutator, G-Lie center and kernel checks")
    p.add_argument("rlce")
    p.set_defaults(func=cmd_ext_invariants)

    p = sub.add_parser("isoclinic", help="search for an isoclinism and check its consequences")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_isoclinic)

    p = sub.add_parser("cover-check", help="check a multiplicative covering pair certificate")
    p.add_argument("rlce")
    p.add_argument("--ideal", required=True, metavar="i,j,...")
    p.add_argument("--cert", required=True, help=".mla file of the multiplier")
    p.add_argument("--perfect", action="store_true", help="also check that ^M{L,G} = L")
    p.set_defaults(func=cmd_cover_check)

    p = sub.add_parser("catalog", help="all structures up to isomorphism on the built-in groups")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("fixture", help="write a reference algebra or extension")
    p.add_argument("name")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fixture)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    _setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    log.debug("command %s", args.command)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        log.error("invariant violated: %s", exc)
        print(f"invariant violated: {exc}")
        if exc.witness:
            print(f"witness: {', '.join(str(w) for w in exc.witness)}")
        return EXIT_FAIL
    except argparse.ArgumentTypeError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (MLAError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
