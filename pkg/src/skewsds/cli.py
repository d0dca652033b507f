"""Command-line interface.

Exit codes: 0 success/PASS, 1 verification FAIL, 2 input error,
3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from .catalog import catalog as catalog_entries, get_entry
from .cosets import build_coset_system
from .diffsets import (
    declared_parameters,
    families_equivalent,
    fingerprint,
    four_square_check,
    verify_sds,
)
from .formats import FamilyRecord, FormatError, dump_family, read_family, read_matrix, write_family, write_matrix
from .gsmatrix import gs_matrix_from_blocks, is_hadamard, is_skew_hadamard
from .modring import is_skew_type, paley_set
from .searcher import InfeasibleSpecError, SearchSpec, search

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_EXHAUSTED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _load(path: Optional[str], catalog_name: Optional[str], listed: bool = False) -> FamilyRecord:
    if (path is None) == (catalog_name is None):
        raise InputError("give exactly one of a family file or --catalog NAME")
    if catalog_name is not None:
        try:
            entry = get_entry(catalog_name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        if listed:
            return FamilyRecord(entry.listed, None if entry.listed is not entry.family else entry.skew_block)
        return FamilyRecord(entry.family, entry.skew_block)
    try:
        return read_family(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def cmd_verify(args) -> int:
    record = _load(args.family, args.catalog, listed=args.listed)
    family = record.family
    report = verify_sds(family)
    if family.name:
        print(f"family: {family.name}")
    print(f"parameters: {report.parameters}")
    off = report.failing_differences
    print(f"differences: {family.v - 1} checked, {len(off)} off target, worst deviation {report.worst_deviation}")
    if off:
        shown = ", ".join(f"{r}:{int(report.residuals[r]):+d}" for r in off[:10])
        print(f"residuals: {shown}{' ...' if len(off) > 10 else ''}")
    if len(family.blocks) == 4:
        print(f"four squares: {four_square_check(family)}")
    print("skew-type blocks: " + " ".join(f"{k}:{_yes(is_skew_type(b))}" for k, b in enumerate(family.blocks)))
    print(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_build(args) -> int:
    family = _load(args.family, args.catalog, listed=args.paley_first and args.catalog is not None).family
    blocks = family.blocks
    if args.paley_first:
        if len(blocks) != 3:
            raise InputError(f"--paley-first needs a 3-block family, got {len(blocks)} blocks")
        try:
            blocks = (paley_set(family.v),) + blocks
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if len(blocks) != 4:
        raise InputError(f"Goethals-Seidel needs 4 blocks, got {len(blocks)} (see --paley-first)")
    m = gs_matrix_from_blocks(blocks)
    if args.output:
        write_matrix(args.output, m)
        print(f"wrote {args.output}")
    hadamard = is_hadamard(m)
    print(f"order: {m.shape[0]}")
    print(f"Hadamard: {_yes(hadamard)}")
    print(f"skew-Hadamard: {_yes(hadamard and is_skew_hadamard(m))}")
    return EXIT_OK if hadamard else EXIT_FAIL


def cmd_check(args) -> int:
    try:
        m = read_matrix(args.matrix)
    except OSError as exc:
        raise InputError(f"cannot read {args.matrix}: {exc.strerror}") from None
    hadamard = is_hadamard(m)
    skew = hadamard and is_skew_hadamard(m)
    print(f"order: {m.shape[0]}")
    print(f"Hadamard: {_yes(hadamard)}")
    print(f"skew-Hadamard: {_yes(skew)}")
    ok = skew if args.require == "skew" else hadamard
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fingerprint(args) -> int:
    family = _load(args.family, args.catalog).family
    if args.block is not None:
        if not 0 <= args.block < len(family.blocks):
            raise InputError(f"block {args.block} out of range 0..{len(family.blocks) - 1}")
        print(fingerprint(family.blocks[args.block]))
    else:
        for k, b in enumerate(family.blocks):
            print(f"{k}: {fingerprint(b)}")
    return EXIT_OK


def cmd_equiv(args) -> int:
    files = list(args.families)
    first = _load(files.pop(0) if args.catalog is None and files else None, args.catalog).family
    second = _load(files.pop(0) if args.catalog2 is None and files else None, args.catalog2).family
    if files:
        raise InputError("too many family arguments")
    if first.v != second.v:
        print("inequivalent (different moduli)")
        return EXIT_OK
    witness = families_equivalent(first, second)
    if witness is None:
        print("inequivalent")
    else:
        print(f"equivalent: multiplier={witness.multiplier} "
              f"permutation={list(witness.permutation)} translations={list(witness.translations)}")
    return EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_search(args) -> int:
    cosets = None
    if args.cosets is not None:
        if len(args.cosets) != 2:
            raise InputError("--cosets expects n,h")
        try:
            cosets = build_coset_system(*args.cosets)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    try:
        spec = SearchSpec(
            v=args.v, sizes=args.sizes, lam=args.lam, skew_block=args.skew_block, cosets=cosets,
            seed=args.seed, restarts=args.restarts, max_steps=args.max_steps,
            max_sideways=args.max_sideways,
        )
    except InfeasibleSpecError as exc:
        raise InputError(f"infeasible search spec: {exc}") from None
    print(f"spec: {spec.describe()}")
    result = search(spec, n_jobs=args.jobs)
    print(f"seed: {result.seed} restart: {result.restart_index} "
          f"restarts used: {result.restarts_used} steps: {result.steps_used} cost: {result.final_cost}")
    if not result.found:
        print("exhausted: no zero-cost family within budget")
        return EXIT_EXHAUSTED
    family = result.family.replace(name=args.name)
    print(f"found: {declared_parameters(family)}")
    if args.output:
        write_family(args.output, family, spec.skew_block)
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(dump_family(family, spec.skew_block))
    return EXIT_OK


def cmd_catalog(args) -> int:
    for entry in catalog_entries():
        print(f"{entry.name}: {declared_parameters(entry.family)} listed {declared_parameters(entry.listed)} "
              f"squares {entry.expected_squares} ({entry.provenance})")
        if args.write:
            out = Path(args.write)
            out.mkdir(parents=True, exist_ok=True)
            write_family(out / f"{entry.name}.sds", entry.family, entry.skew_block)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewsds", description="Supplementary difference sets and skew-Hadamard matrices")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def family_source(sp, catalog_flag="--catalog"):
        sp.add_argument("family", nargs="?", help="family file (.sds)")
        sp.add_argument(catalog_flag, dest="catalog", metavar="NAME", help="built-in family, e.g. 97-U")

    sp = sub.add_parser("verify", help="check the difference-family condition")
    family_source(sp)
    sp.add_argument("--listed", action="store_true", help="verify the blocks as published (Z_47 triples)")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("build", help="assemble the Goethals-Seidel matrix")
    family_source(sp)
    sp.add_argument("-o", "--output", help="matrix file to write")
    sp.add_argument("--paley-first", action="store_true", help="prepend the Paley set to a 3-block family")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("check", help="check a matrix file")
    sp.add_argument("matrix")
    sp.add_argument("--require", choices=("hadamard", "skew"), default="skew")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("fingerprint", help="difference-multiplicity histogram")
    family_source(sp)
    sp.add_argument("--block", type=int)
    sp.set_defaults(func=cmd_fingerprint)

    sp = sub.add_parser("equiv", help="decide family equivalence")
    sp.add_argument("families", nargs="*")
    sp.add_argument("--catalog", metavar="NAME")
    sp.add_argument("--catalog2", metavar="NAME")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("search", help="local search for a difference family")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--sizes", type=_int_list, required=True)
    sp.add_argument("--lambda", dest="lam", type=int, required=True)
    sp.add_argument("--skew-block", type=int)
    sp.add_argument("--cosets", type=_int_list, metavar="N,H")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=100)
    sp.add_argument("--max-steps", type=int, default=100_000)
    sp.add_argument("--max-sideways", type=int, default=50)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--name")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("catalog", help="list built-in families")
    sp.add_argument("--write", metavar="DIR", help="also write each entry as DIR/<name>.sds")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (InputError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
