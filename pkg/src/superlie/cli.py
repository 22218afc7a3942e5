"""Command line driver.

Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.
An algebra argument is a file path, ``-`` (or nothing) for standard input,
or a builtin spec such as ``gl:1,1``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .builders import parse_builtin
from .core import DomainError, InternalConsistencyError, verify_axioms
from .covering import check_homomorphism, covering_certificate, lift_universal
from .functors import f_prime_n, gr_prime, iota_prime, pi_prime, takiff
from .io import (
    ParseError,
    SemanticError,
    bundle_from_json,
    bundle_to_json,
    dumps,
    dumps_output,
    load,
    morphism_from_json,
    morphism_to_json,
    provenance_lines,
    to_json,
)
from .loop import loop_model, matrix_realization, triangle_closes


class UsageError(Exception):
    pass


def _read(arg: str | None) -> str:
    if arg in (None, "-"):
        return sys.stdin.read()
    with open(arg, encoding="utf-8") as fh:
        return fh.read()


def read_algebra(arg: str | None, check: bool = False):
    if arg not in (None, "-") and not os.path.exists(arg):
        try:
            return parse_builtin(arg)
        except DomainError as exc:
            raise UsageError(f"{arg!r} is neither a readable file nor a builtin ({exc})") from None
    return load(_read(arg), check=check)


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    a = read_algebra(args.file)
    report = verify_axioms(a)
    d = report.to_dict()
    lines = [f"algebra {a.name or '(unnamed)'} dim {a.dim}: {'PASS' if report.passed else 'FAIL'}"]
    for key, info in d["checks"].items():
        lines.append(f"  {key}: {'ok' if info['passed'] else 'FAILED'} ({info['checked']} checked)")
    for v in d["violations"]["jacobi"]:
        lines.append(f"  jacobi violated on ({', '.join(v['triple'])}): residual {v['residual']}")
    for v in d["violations"]["skew"]:
        lines.append(f"  skew violated on ({', '.join(v['pair'])}): residual {v['residual']}")
    for v in d["violations"]["grading"]:
        lines.append(f"  grading violated: [{', '.join(v['pair'])}] has a component along {v['result']}")
    for v in d["violations"]["parity"]:
        lines.append(f"  parity of {v} disagrees with its weight")
    _emit(args, "\n".join(lines), d)
    return 0 if report.passed else 1


def cmd_functor(args) -> int:
    g = read_algebra(args.file, check=True)
    if args.op == "F":
        if args.n is None:
            raise UsageError("--op F needs --n")
        out = f_prime_n(g, args.n)
    else:
        if args.k is None:
            raise UsageError(f"--op {args.op} needs --k")
        k = args.k
        out = takiff(g, k)
        if args.op in ("gr", "pi", "iota"):
            out = gr_prime(out)
        if args.op in ("pi", "iota"):
            out = pi_prime(out, k)
        if args.op == "iota":
            out = iota_prime(out, k)
    _emit(args, dumps_output(out), to_json(out.algebra, provenance_lines(out)))
    return 0


def cmd_builtin(args) -> int:
    a = read_algebra(args.spec)
    _emit(args, dumps(a), to_json(a))
    return 0


def cmd_cover(args) -> int:
    g = read_algebra(args.file, check=True)
    if args.n is None and args.infinite_truncate is None:
        raise UsageError("cover needs --n or --infinite-truncate")
    cert = covering_certificate(g, args.n or 2, args.normalization, args.infinite_truncate)
    d = cert.to_dict()
    if args.bundle:
        with open(args.bundle, "w", encoding="utf-8") as fh:
            json.dump(bundle_to_json(cert), fh, indent=2)
    lines = [
        f"covering of {g.name or '(unnamed)'} by {cert.projection.source.name}: {d['verdict'].upper()}",
        f"  kind {cert.kind}" + (f", horizon {cert.horizon}" if cert.horizon is not None else ""),
        f"  support C = {{{', '.join(str(w[0]) if len(w) == 1 else str(w) for w in d['support_C'])}}}",
    ]
    for key, info in d["checks"].items():
        lines.append(f"  {key}: {'ok' if info['passed'] else 'FAILED'} - {info['detail']}")
    _emit(args, "\n".join(lines), d)
    return 0 if cert.passed else 1


def cmd_lift(args) -> int:
    psi = morphism_from_json(json.loads(_read(args.psi)))
    cert = bundle_from_json(json.loads(_read(args.cover)))
    if not cert.passed:
        print("covering bundle does not verify", file=sys.stderr)
        return 1
    lift = lift_universal(psi, cert)
    hv = check_homomorphism(lift) if cert.kind == "full" and cert.horizon is None else None
    d = morphism_to_json(lift)
    lines = [f"lift {lift.source.name} -> {lift.target.name}"]
    for w, block in sorted(lift.blocks.items()):
        lines.append(f"  weight {list(w)}:")
        for row in block:
            lines.append("    " + " ".join(str(x) for x in row))
    if hv is not None:
        lines.append(f"  homomorphism: {'ok' if hv.passed else hv.describe_first()}")
    _emit(args, "\n".join(lines), d)
    return 0


def cmd_matrix(args) -> int:
    kind, _, nums = args.spec.partition(":")
    if kind != "gl":
        raise UsageError("matrix realization is defined for gl:M,N")
    g = read_algebra(args.spec)
    m, n = (int(x) for x in nums.split(","))
    real = matrix_realization(m, n, args.n, faithful=not args.printed_only)
    triangle = triangle_closes(real, loop_model(g, args.n))
    alg = real.source.algebra
    d = {
        "algebra": alg.name,
        "block_sizes": [list(b) for b in real.block_sizes],
        "faithful": real.faithful,
        "homomorphism": not real.homomorphism,
        "failing_pairs": [list(p) for p in real.homomorphism],
        "injective": real.injective,
        "triangle_closes": triangle,
        "passed": real.passed and triangle,
        "generators": {
            alg.names[u]: [[str(x) for x in row] for row in mat.entries] for u, mat in enumerate(real.generators)
        },
    }
    lines = [f"staircase realization of {alg.name}, blocks {real.block_sizes}"]
    for u, mat in enumerate(real.generators):
        lines.append(f"{alg.names[u]}:")
        lines.extend("  " + " ".join(f"{str(x):>4}" for x in row) for row in mat.entries)
    lines.append(f"homomorphism: {'ok' if not real.homomorphism else real.homomorphism}")
    lines.append(f"injective: {real.injective}")
    lines.append(f"loop triangle closes: {triangle}")
    lines.append("PASS" if d["passed"] else "FAIL")
    _emit(args, "\n".join(lines), d)
    return 0 if d["passed"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    p = argparse.ArgumentParser(prog="superlie", description="Graded Lie superalgebras and their coverings.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[fmt], help="check the axioms of an algebra")
    s.add_argument("file", nargs="?")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("functor", parents=[fmt], help="apply a functor")
    s.add_argument("file", nargs="?")
    s.add_argument("--op", choices=("takiff", "gr", "pi", "iota", "F"), required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_functor)

    s = sub.add_parser("cover", parents=[fmt], help="certify the covering F'_n(g) -> g")
    s.add_argument("file", nargs="?")
    s.add_argument("--n", type=int)
    s.add_argument("--infinite-truncate", type=int, metavar="T")
    s.add_argument("--normalization", choices=("inverse_factorial", "unit"), default="inverse_factorial")
    s.add_argument("--bundle", metavar="PATH", help="write the certificate bundle for 'lift'")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("lift", parents=[fmt], help="lift a morphism through a covering")
    s.add_argument("--psi", required=True)
    s.add_argument("--cover", required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("builtin", parents=[fmt], help="emit a builtin algebra")
    s.add_argument("spec")
    s.set_defaults(func=cmd_builtin)

    s = sub.add_parser("matrix", parents=[fmt], help="staircase matrix realization of F'_n(gl(m|n))")
    s.add_argument("spec")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--printed-only", action="store_true")
    s.set_defaults(func=cmd_matrix)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SemanticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(exc.violations, indent=2), file=sys.stderr)
        return 1
    except (DomainError, InternalConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
