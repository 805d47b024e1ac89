"""Command-line front end (``saa``).

Exit codes: 0 success, 1 domain error (bad file, not nilpotent, unsupported
dimension, undecided isomorphism), 2 usage error (argparse).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .algebra import NotNilpotentError
from .classify import (
    BudgetExceededError,
    ClassificationError,
    UnsupportedDimension,
    census,
    classify_small,
    fingerprint,
    format_census,
)
from .field import PrimeField
from .presentation import (
    BUILTIN_NAMES,
    OutOfRange,
    PresentationError,
    build_algebra,
    builtin,
    is_maximal_class_presentation,
)
from .saafile import SaaParseError, dumps_saa, load_saa
from .verify import CLAIM_IDS


class DomainError(Exception):
    pass


def _load(path: str):
    try:
        return load_saa(path)
    except SaaParseError as exc:
        raise DomainError(f"{path}: {exc}") from None
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror or exc}") from None


def _dims(xs) -> str:
    return " ".join(map(str, xs))


def describe_lines(A) -> list[str]:
    fp = fingerprint(A)
    c = fp.nilpotency_class
    cls = f"class {c}" if c is not None else "class none (not nilpotent)"
    iso = "yes" if fp.center_isotropic else "no"
    return [
        f"algebra: dim {A.dim} over GF({A.p})",
        f"{cls}; lcs dims {_dims(fp.lcs_dims)}",
        f"{cls}; ucs dims {_dims(fp.ucs_dims)}",
        f"{cls}; center dim {fp.dim_center}; center isotropic {iso}",
        f"rank {fp.rank}; dim L2L2 {fp.dim_L2L2}",
    ]


def cmd_describe(args) -> int:
    A = _load(args.file).algebra()
    print("\n".join(describe_lines(A)))
    return 0


def _label(A):
    if A.dim > 8:
        raise DomainError("unsupported dimension")
    try:
        return classify_small(A)
    except UnsupportedDimension:
        raise DomainError("unsupported dimension") from None
    except NotNilpotentError as exc:
        raise DomainError(f"not nilpotent: {exc}") from None


def cmd_classify(args) -> int:
    print(_label(_load(args.file).algebra()))
    return 0


def cmd_census(args) -> int:
    try:
        rows = census(args.n, PrimeField(args.p), method=args.method, jobs=args.jobs,
                      budget=args.budget)
    except BudgetExceededError as exc:
        raise DomainError(str(exc)) from None
    except UnsupportedDimension as exc:
        raise DomainError(str(exc)) from None
    sys.stdout.write(format_census(rows, args.format))
    return 0


def cmd_maximal_class(args) -> int:
    f = _load(args.file)
    P = f.presentation()
    if P is None:
        raise DomainError("input is not in nilpotent-presentation form")
    try:
        verdict = is_maximal_class_presentation(P)
    except OutOfRange as exc:
        raise DomainError(str(exc)) from None
    c = build_algebra(P, check=False).series.nilpotency_class
    bound = 2 * P.n - 3
    tail = " = 2n-3" if c == bound else ""
    print(f"criterion: {'yes' if verdict else 'no'}; class {c}{tail}")
    print(f"agreement: {'yes' if verdict == (c == bound) else 'no'}")
    return 0


def _print_witness(S):
    print("witness (columns are the images of the second algebra's basis):")
    for row in np.asarray(S):
        print("  " + " ".join(f"{int(v):>3}" for v in row))


def cmd_iso(args) -> int:
    A, B = _load(args.a).algebra(), _load(args.b).algebra()
    if A.p != B.p or A.dim != B.dim:
        raise DomainError("algebras must have the same field and dimension")
    if A == B:
        print("isomorphic (identity)")
        return 0
    if args.brute_force:
        from .oracle import BUDGET_EXCEEDED, brute_force_isomorphic
        res = brute_force_isomorphic(A, B, budget=args.budget, strategy=args.strategy)
        if res.status == BUDGET_EXCEEDED:
            print(f"undecided: {res}")
            return 1
        print("isomorphic" if res else "non-isomorphic")
        if res:
            _print_witness(res.witness)
        return 0
    la, lb = _label(A), _label(B)
    print("isomorphic" if la == lb else "non-isomorphic")
    print(f"labels: {la} {lb}")
    return 0


def cmd_verify_paper(args) -> int:
    from .verify import CLAIMS, run_claims
    if args.list:
        for c in CLAIMS:
            print(f"{c.id}: {c.title}")
        return 0
    results = run_claims(args.only, on_result=lambda r: print(r.line(), flush=True))
    passed = sum(r.ok for r in results)
    print(f"{passed}/{len(results)} claims passed")
    return 0 if passed == len(results) else 1


def cmd_builtin(args) -> int:
    F = PrimeField(args.p)
    try:
        A = builtin(args.name, F, r=args.r, n=args.n)
    except (KeyError, ValueError, OutOfRange) as exc:
        raise DomainError(str(exc.args[0] if exc.args else exc)) from None
    comment = f"builtin {args.name}" + (f" r={args.r}" if args.r is not None else "") + \
        (f" n={args.n}" if args.n is not None else "")
    text = dumps_saa(A, comment=comment)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _prime(text: str) -> int:
    try:
        PrimeField(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return int(text)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="saa", description="Symplectic alternating algebras over GF(p).")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("describe", help="series, center and invariants of an algebra")
    s.add_argument("file")
    s.set_defaults(func=cmd_describe)

    s = sub.add_parser("classify", help="class label (dimension <= 8)")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("census", help="classify every nilpotent presentation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--format", choices=("table", "lines"), default="table")
    s.add_argument("--method", choices=("batch", "exact"), default="batch")
    s.add_argument("--budget", type=_positive, default=10**7)
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("maximal-class", help="maximal-class criterion for a presentation")
    s.add_argument("file")
    s.set_defaults(func=cmd_maximal_class)

    s = sub.add_parser("iso", help="decide isomorphism of two algebras")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--brute-force", action="store_true")
    s.add_argument("--budget", type=_positive, default=2_000_000)
    s.add_argument("--strategy", choices=("auto", "closure"), default="auto")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("verify-paper", help="run the structure-theory claim checks")
    s.add_argument("--only", nargs="+", metavar="ID", choices=CLAIM_IDS,
                   help=", ".join(CLAIM_IDS))
    s.add_argument("--list", action="store_true")
    s.set_defaults(func=cmd_verify_paper)

    s = sub.add_parser("builtin", help="write a catalogue algebra as .saa")
    s.add_argument("name", help=", ".join(BUILTIN_NAMES))
    s.add_argument("--r", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_builtin)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, NotNilpotentError, ClassificationError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
