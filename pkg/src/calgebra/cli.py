"""Command-line front end.

Exit codes: 0 success, 1 the checked property fails, 2 usage error or a
malformed input file.  ``--format structured`` prints one JSON record per
line instead of the human report.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import ada as ada_mod
from . import algebra, ifthenelse, order, terms
from .trit import TritVec

OK, VIOLATION, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Result:
    code: int = OK
    human: list[str] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)

    def add(self, line: Optional[str] = None, **record) -> None:
        if line is not None:
            self.human.append(line)
        if record:
            self.records.append(record)


def _load(args) -> algebra.FiniteCAlgebra:
    return algebra.read_algebra(args.file, close=getattr(args, "close", False))


def _elems(xs) -> list[str]:
    return [str(a) for a in sorted(xs)]


def _braces(xs) -> str:
    return "{" + ", ".join(_elems(xs)) + "}"


# -- verbs --------------------------------------------------------------------

def cmd_verify(args) -> Result:
    M = _load(args)
    report = algebra.verify_c_axioms(M, ada=args.ada and ada_mod.is_down_closed(M))
    res = Result(OK if report.holds else VIOLATION)
    res.add(f"{len(M)} elements, width {M.width}", kind="algebra", size=len(M), width=M.width)
    if args.ada and not ada_mod.is_down_closed(M):
        res.code = VIOLATION
        res.add("not closed under down; A1-A6 not checked", kind="ada", closed=False)
    for (name, cx), line in zip(report.counterexamples.items(), report.lines()):
        res.add(line, kind="axiom", axiom=name, holds=cx is None, counterexample=None if cx is None else _elems_tuple(cx))
    return res


def _elems_tuple(xs) -> list[str]:
    return [str(a) for a in xs]


def cmd_enumerate(args) -> Result:
    algs = algebra.enumerate_subalgebras(args.width, bound=args.bound)
    if args.orbits:
        algs = algebra.orbit_representatives(algs)
    res = Result()
    res.add(f"{len(algs)} subalgebras of 3^{args.width}" + (" up to coordinate permutation" if args.orbits else ""),
            kind="count", width=args.width, count=len(algs), orbits=args.orbits)
    for i, M in enumerate(algs):
        res.add(f"M{i} ({len(M)}): {_braces(M)}", kind="algebra", index=i, size=len(M), elements=_elems(M))
    return res


def cmd_atoms(args) -> Result:
    M = _load(args)
    ats = order.atoms(M)
    res = Result()
    res.add(f"atoms: {_braces(ats)}", kind="atoms", count=len(ats), atoms=_elems(ats))
    return res


def cmd_atomicity(args) -> Result:
    M = _load(args)
    rep = order.is_atomic(M, count=args.count)
    res = Result(OK if rep.atomic else VIOLATION)
    res.human = rep.lines()
    res.records.append({"kind": "atomicity", "atomic": rep.atomic,
                        "obstruction": None if rep.obstruction is None else str(rep.obstruction)})
    for a, parts in sorted(rep.decomposition.items()):
        rec = {"kind": "decomposition", "element": str(a), "atoms": _elems_tuple(parts)}
        if a in rep.counts:
            rec["count"] = rep.counts[a]
        res.records.append(rec)
    return res


def cmd_gclosed(args) -> Result:
    M = _load(args)
    g = order.is_g_closed(M)
    stray = order.atoms(M) - order.atoms_3X(M.width)
    res = Result(OK if g else VIOLATION)
    res.add(f"g-closed: {str(g).lower()}", kind="gclosed", gclosed=g, non_global_atoms=_elems(stray))
    if stray:
        res.add(f"atoms not atoms of 3^{M.width}: {_braces(stray)}")
    return res


def cmd_ada(args) -> Result:
    M = _load(args)
    res = Result()
    if args.action == "check":
        chk = ada_mod.check_ada(M)
        res.code = OK if chk.is_ada else VIOLATION
        res.human = chk.lines()
        res.records.append({"kind": "ada", "ada": chk.is_ada,
                            "missing": None if chk.missing is None else str(chk.missing)})
        if chk.report is not None:
            for name, cx in chk.report.counterexamples.items():
                res.records.append({"kind": "axiom", "axiom": name, "holds": cx is None})
    elif args.action == "closure":
        A = ada_mod.ada_closure(M)
        res.add(f"ada closure ({len(A)} elements): {_braces(A)}", kind="closure", size=len(A), elements=_elems(A))
    else:
        try:
            G = ada_mod.atom_bijection_G(M)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for a, b in sorted(G.items()):
            res.add(f"G({a}) = {b}", kind="bijection", source=str(a), image=str(b))
    return res


def cmd_ann(args) -> Result:
    M = _load(args)
    try:
        a = TritVec.parse(args.element)
    except ValueError as exc:
        raise UsageError(f"bad element literal {args.element!r}: {exc}") from None
    if a not in M:
        raise UsageError(f"{a} is not an element of the algebra")
    ann = ifthenelse.ann_elem(M, a)
    res = Result()
    res.add(f"Ann({a}) = {_braces(ann)}", kind="ann", element=str(a), ann=_elems(ann))
    return res


def cmd_closed_sets(args) -> Result:
    M = _load(args)
    try:
        fam = ifthenelse.closed_sets(M, bound=args.bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    chk = ifthenelse.closed_boolean_ops(fam)
    res = Result(OK if chk.holds else VIOLATION)
    res.add(f"{len(fam)} closed sets", kind="count", count=len(fam))
    for I, line in zip(fam.members, fam.lines()):
        rec = {"kind": "closed", "elements": _elems(I)}
        if I in fam.labels:
            rec["A"] = sorted(fam.labels[I])
        res.add(line, **rec)
    res.human.extend(chk.lines())
    res.records.append({"kind": "boolean", "holds": not chk.failures, "violated": chk.failures,
                        "isomorphism": chk.isomorphism})
    return res


def cmd_partition(args) -> Result:
    try:
        parts = ifthenelse.partition_by_annihilator(args.width)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = Result()
    for A in ifthenelse.subsets_of(args.width):
        S = parts[A]
        label = "{" + ",".join(map(str, sorted(A))) + "}"
        res.add(f"S_{label} ({len(S)}): {_braces(S)}", kind="class", A=sorted(A), size=len(S), elements=_elems(S))
    res.add(f"total: {sum(map(len, parts.values()))}", kind="total", total=sum(map(len, parts.values())))
    return res


def cmd_cset(args) -> Result:
    if args.action == "verify":
        if args.file is None:
            raise UsageError("cset verify needs an algebra file")
        rep = ifthenelse.verify_cset_axioms_algebraic(_load(args))
    else:
        if args.width is None:
            raise UsageError("cset functional needs --width")
        if args.width > 3 or (args.width == 3 and args.sample is None):
            raise UsageError("functional C-set: exhaustive up to width 2, sampled (--sample) up to width 3")
        rep = ifthenelse.verify_cset_axioms_functional(args.width, sample=args.sample, seed=args.seed)
    res = Result(OK if rep.holds else VIOLATION)
    for (name, cx), line in zip(rep.counterexamples.items(), rep.lines()):
        res.add(line, kind="axiom", axiom=name, holds=cx is None, tuples=rep.tuples_checked[name],
                counterexample=None if cx is None else [str(c) for c in cx])
    return res


def cmd_decide(args) -> Result:
    try:
        lhs, rhs = terms.parse_term(args.lhs), terms.parse_term(args.rhs)
        premises = [(terms.parse_term(p), terms.parse_term(q)) for p, q in args.premise or []]
        dec = terms.decide_quasi_identity(premises, (lhs, rhs), mode=args.mode)
    except terms.TermError as exc:
        raise UsageError(str(exc)) from None
    res = Result(OK if dec.valid else VIOLATION)
    res.human = dec.lines()
    res.records.append({"kind": "decision", "mode": args.mode, "valid": dec.valid,
                        "counterexample": None if dec.counterexample is None else [str(v) for v in dec.counterexample]})
    return res


# -- parser ---------------------------------------------------------------------

def _add_file(p, close=True):
    p.add_argument("file", help="algebra file: 'width=<n>' then one element per line")
    if close:
        p.add_argument("--close", action="store_true", help="treat listed elements as generators")


def _add_verify(sub):
    p = sub.add_parser("verify", help="check C1-C7 (and A1-A6 with --ada)")
    _add_file(p)
    p.add_argument("--ada", action="store_true")
    p.set_defaults(func=cmd_verify)


def _add_enumerate(sub):
    p = sub.add_parser("enumerate", help="list all subalgebras of 3^n")
    p.add_argument("width", type=int)
    p.add_argument("--bound", type=int, default=algebra.DEFAULT_ENUM_BOUND)
    p.add_argument("--orbits", action="store_true", help="one representative per coordinate-permutation orbit")
    p.set_defaults(func=cmd_enumerate)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--seed", type=int, default=0, help="seed for randomised sweeps")

    ap = argparse.ArgumentParser(prog="calgebra", description="Finite C-algebras, adas and if-then-else.",
                                 parents=[common])
    sub = ap.add_subparsers(dest="verb", required=True)
    _add_verify(sub)
    _add_enumerate(sub)

    p = sub.add_parser("algebra", help="verify | enumerate")
    asub = p.add_subparsers(dest="action", required=True)
    _add_verify(asub)
    _add_enumerate(asub)

    p = sub.add_parser("atoms", help="atoms of an algebra")
    _add_file(p)
    p.set_defaults(func=cmd_atoms)

    p = sub.add_parser("atomicity", help="is every element a commuting join of atoms")
    _add_file(p)
    p.add_argument("--count", action="store_true", help="count decompositions per element")
    p.set_defaults(func=cmd_atomicity)

    p = sub.add_parser("gclosed", help="are all atoms atoms of the ambient 3^n")
    _add_file(p)
    p.set_defaults(func=cmd_gclosed)

    p = sub.add_parser("ada", help="check | closure | atoms-bijection")
    p.add_argument("action", choices=("check", "closure", "atoms-bijection"))
    _add_file(p)
    p.set_defaults(func=cmd_ada)

    p = sub.add_parser("ann", help="annihilator of an element")
    _add_file(p)
    p.add_argument("element")
    p.set_defaults(func=cmd_ann)

    p = sub.add_parser("closed-sets", help="Ann^2-closed subsets and their Boolean algebra")
    _add_file(p)
    p.add_argument("--bound", type=int, default=ifthenelse.CLOSED_SET_BRUTE_FORCE_MAX)
    p.set_defaults(func=cmd_closed_sets)

    p = sub.add_parser("partition", help="classes S_A of 3^n by annihilator")
    p.add_argument("width", type=int)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("cset", help="C-set axioms: verify <file> | functional --width n")
    p.add_argument("action", choices=("verify", "functional"))
    p.add_argument("file", nargs="?")
    p.add_argument("--close", action="store_true")
    p.add_argument("--width", type=int)
    p.add_argument("--sample", type=int, help="random tuples per axiom instead of all")
    p.set_defaults(func=cmd_cset)

    p = sub.add_parser("decide", help="decide an identity (or quasi-identity) in 3")
    p.add_argument("--mode", choices=terms.MODES, default="c")
    p.add_argument("--premise", nargs=2, action="append", metavar=("LHS", "RHS"))
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=cmd_decide)

    # let --format/--seed also follow the verb
    for action in list(sub.choices.values()) + list(asub.choices.values()):
        for opt in common._actions:
            if opt.option_strings and not any(s in action._option_string_actions for s in opt.option_strings):
                action.add_argument(*opt.option_strings, dest=opt.dest, default=argparse.SUPPRESS,
                                    choices=opt.choices, type=opt.type, help=argparse.SUPPRESS)
    return ap


def _emit(res: Result, fmt: str, out) -> None:
    if fmt == "structured":
        for rec in res.records:
            print(json.dumps(rec, sort_keys=True), file=out)
    else:
        for line in res.human:
            print(line, file=out)


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    func: Callable[..., Result] = args.func
    try:
        res = func(args)
    except algebra.AlgebraFileError as exc:
        print(f"{args.file}: {exc}", file=err)
        return USAGE
    except (UsageError, terms.TermError) as exc:
        print(f"error: {exc}", file=err)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return USAGE
    except ValueError as exc:
        # bound refusals and width errors
        print(f"error: {exc}", file=err)
        return USAGE
    _emit(res, args.format, out)
    return res.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
