"""Command-line front end.

Global options pick the ring realization and output mode; subcommands dispatch
to the kernel.  Exit codes: 0 success, 1 domain error (bad input data, failed
verification), 2 usage error.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from dataclasses import dataclass

from .bell import BellTable
from .darboux import burgers_rhs, darboux_transform, matveev_verify, time_propagate
from .division import divide_left, divide_right, riccati_residual
from .errors import KernelError
from .free import FreeElement, FreeRing
from .jets import Jet, MatrixJet, MatrixRealization, x_jet
from .operators import DiffOperator
from .parsing import parse_element, parse_entry_text, parse_operator_text


@dataclass
class SessionConfig:
    ring_mode: str
    generators: tuple
    matrix_dim: int
    x_order: int
    t_order: int
    output: str


class Session:
    """Evaluation context derived from the global options."""

    def __init__(self, config: SessionConfig):
        self.config = config
        if config.ring_mode == "free":
            self.ring = FreeRing(config.generators)
            self.env = {g: self.ring.gen(g) for g in config.generators}
            self.one = self.ring.one
            self.realization = self.ring
            self.generator_names = set(config.generators)
        else:
            if config.matrix_dim < 1:
                raise KernelError("jet modes need --dim >= 1")
            if config.x_order < 0:
                raise KernelError("jet modes need --x-order >= 0")
            if config.ring_mode == "bijet" and config.t_order < 0:
                raise KernelError("bijet mode needs --t-order >= 0")
            dim = config.matrix_dim
            x = MatrixJet.diagonal(x_jet(config.x_order), dim)
            one = MatrixJet.identity(dim)
            if config.ring_mode == "bijet":
                x = x.promote()
                one = one.promote()
            self.env = {"x": x}
            self.one = one
            self.realization = MatrixRealization(dim)
            self.generator_names = {"x"}

    def element(self, text: str):
        return parse_element(text, self.env, self.one, self.generator_names)

    def operator(self, path: str) -> DiffOperator:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        return parse_operator_text(text, self.env, self.one, self.realization,
                                   self.generator_names)

    def seed(self, path: str) -> MatrixJet:
        if self.config.ring_mode == "free":
            raise KernelError("initial-condition files need a jet session (--ring jet)")
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        return parse_entry_text(text, self.config.matrix_dim, self.config.x_order)


# -- rendering -------------------------------------------------------------------


def _fmt_order(v):
    return "exact" if v is None else str(v)


def matrix_lines(m: MatrixJet):
    """Row-major coefficient tables, one line per nonzero series order."""
    header = f"order: x={_fmt_order(m.x_order)}"
    if m.kind == "bijet":
        header += f" t={_fmt_order(m.t_order)}"
    lines = [header]
    body = []
    if m.kind == "jet":
        n = len(m.entries[0][0].coeffs)
        for k in range(n):
            mat = [[m.entries[i][j].coeffs[k] for j in range(m.dim)] for i in range(m.dim)]
            if any(v != 0 for row in mat for v in row):
                body.append(f"x^{k}: " + _mat_text(mat))
    else:
        nx = len(m.entries[0][0].coeffs)
        nt = len(m.entries[0][0].coeffs[0])
        for k in range(nx):
            for t in range(nt):
                mat = [
                    [m.entries[i][j].coeffs[k][t] for j in range(m.dim)]
                    for i in range(m.dim)
                ]
                if any(v != 0 for row in mat for v in row):
                    body.append(f"x^{k} t^{t}: " + _mat_text(mat))
    lines.extend(body if body else ["zero"])
    return lines


def _mat_text(mat):
    return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in mat) + "]"


def element_text_lines(value, label: str):
    """`label: inline` for symbolic elements, an indented block for matrices."""
    if isinstance(value, FreeElement):
        return [f"{label}: {value.to_text()}"]
    return [f"{label}:"] + ["  " + line for line in matrix_lines(value)]


def element_json(value):
    if isinstance(value, FreeElement):
        return {
            "terms": [
                {
                    "coeff": str(coeff),
                    "word": [
                        {"gen": l.gen, "star": l.star, "d0": l.d0, "d": l.d} for l in word
                    ],
                }
                for word, coeff in value.terms()
            ]
        }
    out = {
        "dim": value.dim,
        "kind": value.kind,
        "x_order": value.x_order,
        "t_order": value.t_order,
    }
    if value.kind == "jet":
        out["entries"] = [
            [
                {"order": e.order, "coeffs": [str(c) for c in e.coeffs]}
                for e in row
            ]
            for row in value.entries
        ]
    else:
        out["entries"] = [
            [
                {
                    "x_order": e.x_order,
                    "t_order": e.t_order,
                    "coeffs": [[str(c) for c in r] for r in e.coeffs],
                }
                for e in row
            ]
            for row in value.entries
        ]
    return out


def operator_json(op: DiffOperator):
    return {"order": op.order, "coeffs": [element_json(op.coeff(k)) for k in range(op.order + 1)]}


def operator_text_lines(op: DiffOperator, label: str):
    if op.is_zero() or isinstance(op.coeff(0), FreeElement):
        return [f"{label}: {op}"]
    lines = [f"{label}:"]
    for k in range(op.order, -1, -1):
        lines.append(f"  a[{k}]:")
        lines.extend("    " + line for line in matrix_lines(op.coeff(k)))
    return lines


def coefficient_list_line(op: DiffOperator) -> str:
    parts = [f"a[{k}]={op.coeff(k)}" for k in range(op.order, -1, -1)]
    return ", ".join(parts)


# -- commands ------------------------------------------------------------------------


def _emit(out, lines):
    for line in lines:
        print(line, file=out)


def _emit_json(out, payload):
    print(json.dumps(payload), file=out)


def cmd_bell(session: Session, args, out) -> int:
    table = BellTable(session.element(args.s))
    if args.side == "left":
        value = table.left(args.n)
    elif args.side == "right":
        value = table.right(args.n)
    else:
        if args.k is None:
            raise KernelError("--side gen requires --k")
        value = table.gen(args.n, args.k)
    if session.config.output == "json":
        _emit_json(out, element_json(value))
    elif isinstance(value, FreeElement):
        _emit(out, [value.to_text()])
    else:
        _emit(out, matrix_lines(value))
    return 0


def cmd_divide(session: Session, args, out) -> int:
    op = session.operator(args.operator)
    s = session.element(args.s)
    outcome = divide_right(op, s) if args.side == "right" else divide_left(op, s)
    if session.config.output == "json":
        _emit_json(
            out,
            {
                "side": outcome.side,
                "quotient": operator_json(outcome.quotient),
                "remainder": element_json(outcome.remainder),
                "exact": outcome.exact,
            },
        )
        return 0
    _emit(out, operator_text_lines(outcome.quotient, "quotient"))
    _emit(out, element_text_lines(outcome.remainder, "remainder"))
    return 0


def cmd_factor_check(session: Session, args, out) -> int:
    op = session.operator(args.operator)
    s = session.element(args.s)
    residual = riccati_residual(op, s, args.side)
    exact = residual.is_zero()
    if session.config.output == "json":
        _emit_json(out, {"side": args.side, "residual": element_json(residual), "exact": exact})
        return 0
    _emit(out, element_text_lines(residual, "residual"))
    _emit(out, [f"factors: {'yes' if exact else 'no'}"])
    return 0


def cmd_darboux(session: Session, args, out) -> int:
    op = session.operator(args.operator)
    s = session.element(args.s)
    outcome = darboux_transform(op, s)
    if session.config.output == "json":
        _emit_json(
            out,
            {
                "transformed": operator_json(outcome.transformed),
                "remainder": element_json(outcome.remainder),
                "defect": element_json(outcome.intertwine_defect),
                "burgers": element_json(outcome.burgers_rhs),
            },
        )
        return 0
    if isinstance(outcome.remainder, FreeElement):
        _emit(out, [coefficient_list_line(outcome.transformed)])
    else:
        _emit(out, operator_text_lines(outcome.transformed, "transformed"))
    _emit(out, element_text_lines(outcome.burgers_rhs, "burgers"))
    return 0


def cmd_burgers(session: Session, args, out) -> int:
    op = session.operator(args.operator)
    s = session.element(args.s)
    value = burgers_rhs(op, s)
    if session.config.output == "json":
        _emit_json(out, {"burgers": element_json(value)})
        return 0
    _emit(out, element_text_lines(value, "burgers"))
    return 0


def cmd_propagate(session: Session, args, out) -> int:
    op = session.operator(args.operator)
    phi0 = session.seed(args.phi0)
    result = time_propagate(op, phi0, args.t_order)
    if session.config.output == "json":
        _emit_json(out, element_json(result))
        return 0
    _emit(out, matrix_lines(result))
    return 0


def cmd_verify_matveev(session: Session, args, out) -> int:
    op = session.operator(args.operator)
    phi0 = session.seed(args.phi0)
    psi0 = session.seed(args.psi0)
    report = matveev_verify(op, phi0, psi0, args.t_order)
    if session.config.output == "json":
        _emit_json(
            out,
            {
                "ok": report.ok,
                "residual_zero": report.residual.is_zero(),
                "burgers_zero": report.burgers_residual.is_zero(),
                "x_order": report.residual.x_order,
                "t_order": report.residual.t_order,
            },
        )
    else:
        _emit(
            out,
            [
                f"residual-zero: {'yes' if report.residual.is_zero() else 'no'}",
                f"burgers-zero: {'yes' if report.burgers_residual.is_zero() else 'no'}",
                f"valid-range: x={_fmt_order(report.residual.x_order)} "
                f"t={_fmt_order(report.residual.t_order)}",
            ],
        )
    return 0 if report.ok else 1


# -- argument wiring --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellops",
        description="Kernel for noncommutative differential operators: Bell tables, "
        "division, factorization checks and Darboux transforms.",
    )
    parser.add_argument("--ring", choices=("free", "jet", "bijet"), default="free")
    parser.add_argument("--gens", default="s", help="comma-separated generators (free ring)")
    parser.add_argument("--dim", type=int, default=1, help="matrix dimension (jet modes)")
    parser.add_argument("--x-order", type=int, default=16, dest="x_order")
    parser.add_argument("--t-order", type=int, default=4, dest="t_order")
    parser.add_argument("--output", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bell", help="print a Bell-table entry")
    p.add_argument("--side", choices=("left", "right", "gen"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--s", default="s", help="factor element expression")
    p.set_defaults(handler=cmd_bell)

    p = sub.add_parser("divide", help="divide an operator by D - s")
    p.add_argument("--side", choices=("left", "right"), required=True)
    p.add_argument("operator", help="operator file (a[k] = expr lines)")
    p.add_argument("--s", default="s")
    p.set_defaults(handler=cmd_divide)

    p = sub.add_parser("factor-check", help="evaluate the factorization residual")
    p.add_argument("--side", choices=("left", "right"), required=True)
    p.add_argument("operator")
    p.add_argument("--s", default="s")
    p.set_defaults(handler=cmd_factor_check)

    p = sub.add_parser("darboux", help="transform an operator and print the Burgers RHS")
    p.add_argument("operator")
    p.add_argument("--s", default="s")
    p.set_defaults(handler=cmd_darboux)

    p = sub.add_parser("burgers", help="print the generalized Burgers right-hand side")
    p.add_argument("operator")
    p.add_argument("--s", default="s")
    p.set_defaults(handler=cmd_burgers)

    p = sub.add_parser("propagate", help="Taylor-propagate d_t phi = L phi")
    p.add_argument("operator")
    p.add_argument("--phi0", required=True, help="initial-condition file")
    p.add_argument("--t-order", type=int, required=True, dest="t_order")
    p.set_defaults(handler=cmd_propagate)

    p = sub.add_parser("verify-matveev", help="end-to-end wavefunction-transform check")
    p.add_argument("operator")
    p.add_argument("--phi0", required=True)
    p.add_argument("--psi0", required=True)
    p.add_argument("--t-order", type=int, required=True, dest="t_order")
    p.set_defaults(handler=cmd_verify_matveev)

    return parser


def run_command(argv, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return int(exc.code or 0)
    config = SessionConfig(
        ring_mode=args.ring,
        generators=tuple(g.strip() for g in args.gens.split(",") if g.strip()),
        matrix_dim=args.dim,
        x_order=args.x_order,
        t_order=args.t_order,
        output=args.output,
    )
    try:
        session = Session(config)
        return args.handler(session, args, out)
    except (KernelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
