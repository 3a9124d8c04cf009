"""Command-line entry point.

Exit status: 0 on success, 1 for usage or input errors, 2 when the input is
valid but outside an operation's mathematical domain.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from .. import classification as cls
from ..algebra import Signature
from ..chains import PointSet, boundary, format_chain, measure, parse_chain, parse_coords
from ..errors import CliffordError, MathDomainError
from ..scalars import backend as get_backend
from ..textfmt import format_multivector, parse_multivector
from .session import Session, repl

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _color(text: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[31m{text}\033[0m"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliffalg", description="Clifford algebra calculator and table generator.")
    p.add_argument("--backend", choices=("exact", "float"), default="exact")
    p.add_argument("--sig", help="signature s,t,u")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate expressions (needs --sig)")
    e.add_argument("exprs", nargs="+")

    c = sub.add_parser("classify", help="matrix algebra of G(R^{s,t})")
    c.add_argument("s", type=int)
    c.add_argument("t", type=int)
    c.add_argument("--rows", action="store_true", help="machine-readable row")

    cc = sub.add_parser("classify-complex", help="matrix algebra of G(C^n)")
    cc.add_argument("n", type=int)

    t2 = sub.add_parser("table2", help="classification grid for 0 <= s,t <= 8")
    t2.add_argument("--rows", action="store_true")

    r = sub.add_parser("reps", help="representation counts and dimensions for n")
    r.add_argument("n", type=int)
    r.add_argument("--rows", action="store_true")

    t3 = sub.add_parser("table3", help="representations for n <= 8")
    t3.add_argument("--rows", action="store_true")

    rh = sub.add_parser("rh", help="number of independent vector fields on S^N")
    rh.add_argument("N", type=int)
    rh.add_argument("--verify", type=int, metavar="POINTS", help="check fields at random points")
    rh.add_argument("--seed", type=int, default=0)

    fb = sub.add_parser("factor-bivector", help="spinor psi with psi g0 g1 psi~ = F")
    fb.add_argument("file")

    b = sub.add_parser("boundary", help="boundary of a chain")
    b.add_argument("chain_file")

    m = sub.add_parser("measure", help="geometric measure of a chain")
    m.add_argument("chain_file")
    m.add_argument("--coords", required=True)

    d = sub.add_parser("dirac-residual", help="Dirac-Hestenes residual on a spinor grid")
    d.add_argument("grid_file")
    d.add_argument("--mass", type=float, default=0.0)
    d.add_argument("--potential", default="0,0,0,0", help="constant A as a0,a1,a2,a3")

    sub.add_parser("repl", help="interactive session")
    return p


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _session(args) -> Session:
    s = Session(backend=get_backend(args.backend))
    if args.sig:
        s.set_signature(Signature.parse(args.sig))
    return s


def _cmd_rh(args, out) -> int:
    if args.N < 0:
        raise UsageError("N must be non-negative")
    count = cls.radon_hurwitz(args.N + 1)
    out.write(f"{count}\n")
    if args.verify:
        fields = cls.sphere_fields(args.N)
        rng = random.Random(args.seed)
        ok_t = ok_i = True
        for _ in range(args.verify):
            params = [Fraction(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(args.N)]
            x = cls.rational_sphere_point(params)
            t, i = cls.fields_certificate(fields, x)
            ok_t &= t
            ok_i &= i
        yes = {True: "yes", False: "no"}
        out.write(f"verified {args.verify} points: tangent={yes[ok_t]} independent={yes[ok_i]}\n")
        if not (ok_t and ok_i):
            return EXIT_DOMAIN
    return EXIT_OK


def _cmd_factor(args, out) -> int:
    from .. import sta

    text = _read(args.file)
    nums = text.split()
    try:
        vals = [float(v) for v in nums]
    except ValueError:
        vals = None
    if vals is not None and len(vals) == 6:
        field = sta.BivectorField.from_eb(vals[:3], vals[3:])
    else:
        f = parse_multivector(text, sta.STA, backend=get_backend("float"))
        field = sta.BivectorField(f)
    psi = sta.factor_bivector(field)
    err = (sta.spinor_image(psi) - field.F).coef_norm() / max(1.0, field.F.coef_norm())
    out.write(f"psi = {format_multivector(psi.psi)}\n")
    out.write(f"error = {err:.3e}\n")
    return EXIT_OK


def _cmd_dirac(args, out) -> int:
    from .. import sta

    grid = sta.read_spinor_grid(_read(args.grid_file))
    a = [float(v) for v in args.potential.split(",")]
    if len(a) != 4:
        raise UsageError("--potential needs four components")
    pot = sta.STA.vector(a)
    res = sta.dirac_residual_grid(grid.psi, grid.spacing, pot, args.mass)
    out.write(f"max residual = {sta.max_norm(res):.6e}\n")
    return EXIT_OK


def run(argv: list[str], out=sys.stdout, err=sys.stderr, stdin=sys.stdin) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args, out, stdin)
    except UsageError as exc:
        err.write(exc.usage)
        err.write(_color("error:", err) + f" {exc}\n")
        return EXIT_USAGE
    except MathDomainError as exc:
        err.write(_color("error:", err) + f" {exc}\n")
        return EXIT_DOMAIN
    except (CliffordError, ValueError) as exc:
        err.write(_color("error:", err) + f" {exc}\n")
        return EXIT_USAGE


def _dispatch(args, out, stdin) -> int:
    cmd = args.cmd
    if cmd == "eval":
        session = _session(args)
        for text in args.exprs:
            out.write(session.execute(text) or "")
            out.write("\n")
        return EXIT_OK
    if cmd == "classify":
        if args.s < 0 or args.t < 0:
            raise UsageError("s and t must be non-negative")
        desc = cls.classify_real(args.s, args.t)
        out.write((desc.row(args.s, args.t) if args.rows else str(desc)) + "\n")
        return EXIT_OK
    if cmd == "classify-complex":
        if args.n < 0:
            raise UsageError("n must be non-negative")
        out.write(f"{cls.classify_complex(args.n)}\n")
        return EXIT_OK
    if cmd == "table2":
        out.write(cls.table2_rows() if args.rows else cls.table2_text())
        return EXIT_OK
    if cmd == "reps":
        if args.n < 0:
            raise UsageError("n must be non-negative")
        text = cls.table3_rows(args.n) if args.rows else cls.table3_text(args.n)
        lines = text.splitlines()
        keep = 2 if args.rows else 1
        out.write("\n".join([lines[0]] + lines[-keep:]) + "\n")
        return EXIT_OK
    if cmd == "table3":
        out.write(cls.table3_rows() if args.rows else cls.table3_text())
        return EXIT_OK
    if cmd == "rh":
        return _cmd_rh(args, out)
    if cmd == "factor-bivector":
        return _cmd_factor(args, out)
    if cmd == "boundary":
        chain = parse_chain(_read(args.chain_file))
        out.write(format_chain(boundary(chain)) + "\n")
        return EXIT_OK
    if cmd == "measure":
        points = PointSet()
        parse_coords(_read(args.coords), points)
        chain = parse_chain(_read(args.chain_file), points)
        out.write(format_multivector(measure(chain)) + "\n")
        return EXIT_OK
    if cmd == "dirac-residual":
        return _cmd_dirac(args, out)
    if cmd == "repl":
        return repl(_session(args), stdin, out)
    raise UsageError(f"unknown command {cmd}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
