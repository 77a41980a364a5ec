"""Command-line entry point.

Exit status: 0 on success (proof checks, sequent provable, corpus passes),
1 on a negative result, 2 on usage or input errors.  Results go to standard
output and diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from ecumene import CORPUS_VERSION, __version__
from ecumene.kernel import check
from ecumene.oracle import (
    OracleError,
    Sequent,
    cpl_valid,
    eci_provable,
    enumerate_formulas,
    ipl_provable,
    nek_provable,
)
from ecumene.proofio import bundled_corpus, corpus_run, format_proof, parse_proof
from ecumene.syntax import ParseError, System, parse_formula, parse_term, print_formula
from ecumene.transform import TransformError
from ecumene.transform import request as treq
from ecumene.translate import MAP_DIALECTS, TranslationError, TranslationId, apply

_LOGIC_DIALECT = {"cpl": System.NJ, "ipl": System.NJ, "eci": System.ECI, "nek": System.NEK}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ecumene", description="Ecumenical natural deduction toolkit.")
    ap.add_argument("--version", action="version", version=f"ecumene {__version__} (corpus {CORPUS_VERSION})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check a proof file")
    p.add_argument("--system", required=True)
    p.add_argument("file")

    p = sub.add_parser("translate", help="apply a formula translation")
    p.add_argument("--map", required=True, choices=[m.value for m in TranslationId])
    p.add_argument("--formula", required=True)
    p.add_argument("--dialect", help="input dialect (defaults to the map's source dialect)")

    p = sub.add_parser("transform", help="build a proof with one of the constructions")
    p.add_argument("--name", required=True, choices=sorted(treq.OPERATIONS))
    p.add_argument("--system", help="dialect of the arguments (ne or nek where there is a choice)")
    p.add_argument("--formula")
    p.add_argument("--formula2")
    p.add_argument("--proof")
    p.add_argument("--proof2")
    p.add_argument("--term")
    p.add_argument("--var")
    p.add_argument("--direction", choices=("fwd", "bwd"))
    p.add_argument("--target", choices=("existsc", "neg_foralli"))
    p.add_argument("--out", help="write the proof here instead of standard output")

    p = sub.add_parser("decide", help="decide a propositional sequent")
    p.add_argument("--logic", required=True, choices=sorted(_LOGIC_DIALECT))
    p.add_argument("--assume", action="append", default=[])
    p.add_argument("--goal", required=True)

    p = sub.add_parser("enum", help="list formulas by increasing size")
    p.add_argument("--atoms", required=True, help="comma-separated atom names")
    p.add_argument("--max-size", type=int, required=True, help="maximum number of connectives")
    p.add_argument("--dialect", default="nj")

    p = sub.add_parser("corpus", help="check the proof corpus against its headers")
    p.add_argument("dir", nargs="?", help="directory of .proof files (default: the bundled corpus)")
    return ap


def _system(text: str) -> System:
    try:
        return System.parse(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def cmd_check(args, out, err) -> int:
    system = _system(args.system)
    report = check(system, parse_proof(_read(args.file), system))
    print(report.render(system), file=out)
    return 0 if report.ok else 1


def cmd_translate(args, out, err) -> int:
    map_id = TranslationId(args.map)
    source, target = MAP_DIALECTS[map_id]
    source = _system(args.dialect) if args.dialect else source
    result = apply(map_id, parse_formula(args.formula, source))
    print(print_formula(result, target), file=out)
    return 0


def cmd_transform(args, out, err) -> int:
    name = args.name
    system = treq.input_system(name, _system(args.system) if args.system else None)
    formulas = tuple(parse_formula(f, system) for f in (args.formula, args.formula2) if f is not None)
    proofs = tuple(parse_proof(_read(p), system) for p in (args.proof, args.proof2) if p is not None)
    request = treq.TransformRequest(
        name,
        system,
        formulas,
        proofs,
        parse_term(args.term) if args.term else None,
        args.var,
        args.direction or args.target,
    )
    proof = treq.run(request)
    target = treq.output_system(name, system)
    report = check(target, proof)
    text = format_proof(proof, target) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    print(report.render(target), file=err)
    return 0 if report.ok else 1


def cmd_decide(args, out, err) -> int:
    dialect = _LOGIC_DIALECT[args.logic]
    seq = Sequent.of([parse_formula(a, dialect) for a in args.assume], parse_formula(args.goal, dialect))
    decide = {"cpl": cpl_valid, "ipl": ipl_provable, "eci": eci_provable, "nek": nek_provable}[args.logic]
    verdict = decide(seq)
    print("provable" if verdict.provable else "not provable", file=out)
    if args.logic == "cpl" and not verdict.provable:
        model = ", ".join(f"{k}={'true' if v else 'false'}" for k, v in verdict.witness.items())
        print(f"countermodel: {model}", file=out)
    if verdict.note:
        print(verdict.note, file=out)
    return 0 if verdict.provable else 1


def cmd_enum(args, out, err) -> int:
    dialect = _system(args.dialect)
    atoms = [a.strip() for a in args.atoms.split(",") if a.strip()]
    for f in enumerate_formulas(atoms, args.max_size, dialect):
        print(print_formula(f, dialect), file=out)
    return 0


def cmd_corpus(args, out, err) -> int:
    directory = Path(args.dir) if args.dir else bundled_corpus()
    if not directory.is_dir():
        raise UsageError(f"not a directory: {directory}")
    results = corpus_run(directory)
    width = max([len(r.name) for r in results] + [4])
    for r in results:
        status = "pass" if r.passed else "MISMATCH"
        print(f"{r.name:<{width}}  {r.system:<4} expect {r.expect:<4} got {r.got:<4} {status}", file=out)
        if not r.passed:
            print(f"  {r.detail}", file=err)
    passed = sum(r.passed for r in results)
    print(f"{len(results)} files, {passed} passed, {len(results) - passed} mismatched", file=out)
    return 0 if passed == len(results) else 1


_COMMANDS = {
    "check": cmd_check,
    "translate": cmd_translate,
    "transform": cmd_transform,
    "decide": cmd_decide,
    "enum": cmd_enum,
    "corpus": cmd_corpus,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args, out, err)
    except (ParseError, UsageError, TransformError, TranslationError, OracleError, ValueError) as e:
        print(f"error: {e}", file=err)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
