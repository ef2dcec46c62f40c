"""Command line driver.

A session file declares the PDE and optional defaults:

    # KdV
    lead = u_t
    rhs = -u*u_x - u_xxx
    name energy = u^2/2 + u_xx
    order = 2
    jet-degree = 2

Recognized keys: lead, rhs (required), order, jet-degree, t-degree,
x-degree (ansatz bounds, default 1), and name <id> = <expr> for named
expressions.  Anywhere a subcommand takes an expression, a session name
may be given instead.

Reports are printed as 'key = value' lines, one per field, expressions
in the canonical grammar.  Exit status: 0 when the command computed a
result (or answered yes), 1 when the mathematical answer is no
(check-conslaw fails, classify finds no homogeneity), 2 for usage,
parse, or precondition errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass

from .conslaw import (
    Ansatz,
    check_multiplier,
    current_from_multiplier,
    is_trivial_current,
    multiplier_from_current,
    restrict,
    solve_multipliers,
    verify_conservation_law,
)
from .errors import JetLawError, SessionError
from .expr import DiffExpr
from .grammar import format_expr, parse_expr
from .soln import NormalPDE, make_pde
from .symmetry import (
    act_on_current,
    act_on_multiplier,
    action_matrix,
    classify,
    psi_current,
    solve_symmetries,
)

_NAME_LINE = re.compile(r"^name\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*)$")
_ANSATZ_KEYS = {
    "order": "max_order",
    "jet-degree": "max_jet_degree",
    "t-degree": "max_t_degree",
    "x-degree": "max_x_degree",
}
_RESERVED = {"t", "x", "u"}


@dataclass
class Session:
    pde: NormalPDE
    names: dict[str, DiffExpr]
    ansatz: Ansatz


def _parse_lead(text: str):
    e = parse_expr(text)
    terms = e.sorted_terms()
    if len(terms) == 1:
        mono, coeff = terms[0]
        jets = mono.jet_powers
        if (
            coeff == 1
            and mono.t_deg == 0
            and mono.x_deg == 0
            and len(jets) == 1
            and next(iter(jets.values())) == 1
        ):
            return next(iter(jets))
    raise SessionError(f"lead must be a single jet variable, got {text!r}")


def load_session(path: str) -> Session:
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as ex:
        raise SessionError(f"cannot read session file {path}: {ex}") from ex
    lead = rhs = None
    names: dict[str, DiffExpr] = {}
    ansatz_kw: dict[str, int] = {}
    for lineno, raw in enumerate(raw_lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _NAME_LINE.match(line)
        if m:
            ident, value = m.group(1), m.group(2)
            if ident in _RESERVED:
                raise SessionError(
                    f"line {lineno}: name {ident!r} shadows a variable"
                )
            names[ident] = parse_expr(value)
            continue
        if "=" not in line:
            raise SessionError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key == "lead":
            lead = _parse_lead(value)
        elif key == "rhs":
            rhs = parse_expr(value)
        elif key in _ANSATZ_KEYS:
            try:
                ansatz_kw[_ANSATZ_KEYS[key]] = int(value)
            except ValueError:
                raise SessionError(f"line {lineno}: {key} must be an integer")
        else:
            raise SessionError(f"line {lineno}: unknown key {key!r}")
    if lead is None or rhs is None:
        raise SessionError("session must define both 'lead' and 'rhs'")
    return Session(pde=make_pde(lead, rhs), names=names, ansatz=Ansatz(**ansatz_kw))


def _resolve(text: str, session: Session) -> DiffExpr:
    s = text.strip()
    if s in session.names:
        return session.names[s]
    return parse_expr(s)


def _ansatz_from_args(args, session: Session) -> Ansatz:
    kw = {}
    for flag, field in (
        ("order", "max_order"),
        ("jet_degree", "max_jet_degree"),
        ("t_degree", "max_t_degree"),
        ("x_degree", "max_x_degree"),
    ):
        v = getattr(args, flag, None)
        kw[field] = v if v is not None else getattr(session.ansatz, field)
    return Ansatz(**kw)


def _header(cmd: str, session: Session) -> list[tuple[str, str]]:
    return [
        ("command", cmd),
        ("lead", str(session.pde.lead)),
        ("rhs", format_expr(session.pde.rhs)),
    ]


def _ansatz_lines(ansatz: Ansatz) -> list[tuple[str, str]]:
    return [
        ("order", str(ansatz.max_order)),
        ("jet-degree", str(ansatz.max_jet_degree)),
        ("t-degree", str(ansatz.max_t_degree)),
        ("x-degree", str(ansatz.max_x_degree)),
    ]


def _cmd_check_conslaw(args, session: Session):
    cur = (_resolve(args.T, session), _resolve(args.X, session))
    ok = verify_conservation_law(cur, session.pde)
    lines = _header("check-conslaw", session)
    lines.append(("verdict", "true" if ok else "false"))
    return (0 if ok else 1), lines

def _cmd_multiplier_of(args, session: Session):
    cur = (_resolve(args.T, session), _resolve(args.X, session))
    q = multiplier_from_current(cur, session.pde)
    lines = _header("multiplier-of", session)
    lines.append(("Q", format_expr(q)))
    trivial = restrict(q, session.pde).is_zero
    lines.append(("trivial", "true" if trivial else "false"))
    return 0, lines


def _cmd_multipliers(args, session: Session):
    ansatz = _ansatz_from_args(args, session)
    basis = solve_multipliers(session.pde, ansatz)
    lines = _header("multipliers", session) + _ansatz_lines(ansatz)
    lines.append(("dimension", str(len(basis))))
    for i, q in enumerate(basis):
        lines.append((f"basis[{i}]", format_expr(q)))
    return 0, lines


def _cmd_symmetries(args, session: Session):
    ansatz = _ansatz_from_args(args, session)
    basis = solve_symmetries(session.pde, ansatz)
    lines = _header("symmetries", session) + _ansatz_lines(ansatz)
    lines.append(("dimension", str(len(basis))))
    for i, p in enumerate(basis):
        lines.append((f"basis[{i}]", format_expr(p)))
    return 0, lines


def _cmd_current(args, session: Session):
    q = _resolve(args.Q, session)
    cur = current_from_multiplier(q, session.pde)
    lines = _header("current", session)
    lines.append(("T", format_expr(cur.T)))
    lines.append(("X", format_expr(cur.X)))
    return 0, lines


def _cmd_act(args, session: Session):
    p = _resolve(args.P, session)
    lines = _header("act", session)
    if args.Q is not None:
        if args.T is not None or args.X is not None:
            raise SessionError("give either --Q or both --T and --X, not both")
        q = _resolve(args.Q, session)
        out = act_on_multiplier(p, q, session.pde)
        lines.append(("Q", format_expr(out)))
        return 0, lines
    if args.T is None or args.X is None:
        raise SessionError("act needs --Q, or both --T and --X")
    cur = (_resolve(args.T, session), _resolve(args.X, session))
    if not verify_conservation_law(cur, session.pde):
        from .errors import NotConserved

        raise NotConserved("the given current is not conserved")
    out = act_on_current(p, cur, session.pde)
    lines.append(("T", format_expr(out.T)))
    lines.append(("X", format_expr(out.X)))
    return 0, lines


def _cmd_psi(args, session: Session):
    p = _resolve(args.P, session)
    q = _resolve(args.Q, session)
    cur = psi_current(p, q, session.pde)
    lines = _header("psi", session)
    lines.append(("T", format_expr(cur.T)))
    lines.append(("X", format_expr(cur.X)))
    trivial = is_trivial_current(cur, session.pde)
    lines.append(("trivial", "true" if trivial else "false"))
    return 0, lines


def _cmd_classify(args, session: Session):
    p = _resolve(args.P, session)
    q = _resolve(args.Q, session)
    res = classify(p, q, session.pde, strict_off_e=args.strict_off_e)
    lines = _header("classify", session)
    lines.append(("verdict", res.verdict))
    if res.lam is not None:
        lines.append(("lambda", str(res.lam)))
    lines.append(("action", format_expr(res.action)))
    return (0 if res.verdict != "NotHomogeneous" else 1), lines


def _cmd_action_matrix(args, session: Session):
    p = _resolve(args.P, session)
    lines = _header("action-matrix", session)
    if args.basis:
        basis = [_resolve(s, session) for s in args.basis.split(";")]
    else:
        ansatz = _ansatz_from_args(args, session)
        basis = solve_multipliers(session.pde, ansatz)
        lines += _ansatz_lines(ansatz)
    result = action_matrix(p, basis, session.pde)
    n = len(basis)
    lines.append(("dimension", str(n)))
    for i, q in enumerate(basis):
        lines.append((f"basis[{i}]", format_expr(q)))
    for i in range(n):
        for j in range(n):
            lines.append((f"matrix[{i}][{j}]", str(result.matrix[i, j])))
    e = 0
    for lam, vectors in result.eigenpairs:
        for vec in vectors:
            lines.append((f"eigenvalue[{e}]", str(lam)))
            lines.append((f"eigenvector[{e}]", ", ".join(str(c) for c in vec)))
            combo = DiffExpr()
            for c, b in zip(vec, basis):
                combo = combo + c * b
            lines.append((f"eigenmultiplier[{e}]", format_expr(combo)))
            e += 1
    return 0, lines


def _add_ansatz_flags(sub):
    sub.add_argument("--order", type=int, help="max differential order of the ansatz")
    sub.add_argument("--jet-degree", dest="jet_degree", type=int, help="max total degree in the jets")
    sub.add_argument("--t-degree", dest="t_degree", type=int, help="max degree in t")
    sub.add_argument("--x-degree", dest="x_degree", type=int, help="max degree in x")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetlaw",
        description="conservation laws of scalar PDEs by the multiplier method",
    )
    parser.add_argument(
        "-s", "--session", required=True, help="session file defining the PDE"
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check-conslaw", help="verify a conserved current")
    p.add_argument("--T", required=True)
    p.add_argument("--X", required=True)
    p.set_defaults(func=_cmd_check_conslaw)

    p = sub.add_parser("multiplier-of", help="multiplier of a conserved current")
    p.add_argument("--T", required=True)
    p.add_argument("--X", required=True)
    p.set_defaults(func=_cmd_multiplier_of)

    p = sub.add_parser("multipliers", help="solve for all multipliers in an ansatz")
    _add_ansatz_flags(p)
    p.set_defaults(func=_cmd_multipliers)

    p = sub.add_parser("symmetries", help="solve for all symmetry characteristics in an ansatz")
    _add_ansatz_flags(p)
    p.set_defaults(func=_cmd_symmetries)

    p = sub.add_parser("current", help="conserved current of a multiplier")
    p.add_argument("--Q", required=True)
    p.set_defaults(func=_cmd_current)

    p = sub.add_parser("act", help="apply a symmetry to a multiplier or a current")
    p.add_argument("--P", required=True, help="symmetry characteristic")
    p.add_argument("--Q")
    p.add_argument("--T")
    p.add_argument("--X")
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("psi", help="boundary current of a symmetry and an adjoint-symmetry")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.set_defaults(func=_cmd_psi)

    p = sub.add_parser("classify", help="classify a multiplier under a symmetry")
    p.add_argument("--P", required=True)
    p.add_argument("--Q", required=True)
    p.add_argument("--strict-off-e", dest="strict_off_e", action="store_true",
                   help="compare off the solution space")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("action-matrix", help="matrix of a symmetry action on a multiplier space")
    p.add_argument("--P", required=True)
    p.add_argument("--basis", help="semicolon-separated multipliers (default: solve the ansatz)")
    _add_ansatz_flags(p)
    p.set_defaults(func=_cmd_action_matrix)

    return parser


_VALUE_FLAGS = {
    "--P",
    "--Q",
    "--T",
    "--X",
    "--basis",
    "--order",
    "--jet-degree",
    "--t-degree",
    "--x-degree",
}


def _join_dash_values(argv: list[str]) -> list[str]:
    """Turn ['--Q', '-u_x'] into ['--Q=-u_x'] so expressions starting
    with a minus sign survive argparse."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok in _VALUE_FLAGS
            and i + 1 < len(argv)
            and argv[i + 1].startswith("-")
            and len(argv[i + 1]) > 1
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(_join_dash_values(list(argv)))
    except SystemExit as ex:
        return ex.code if isinstance(ex.code, int) else 2
    try:
        session = load_session(args.session)
        code, lines = args.func(args, session)
    except JetLawError as ex:
        print(f"error: {type(ex).__name__}: {ex}", file=sys.stderr)
        return 2
    for key, value in lines:
        print(f"{key} = {value}")
    return code


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
