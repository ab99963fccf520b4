"""Command-line front end.

Every subcommand builds a JSON-ready payload; ``--json`` prints it, and the
default text output is rendered from the same payload by
:func:`render_text`, so parsing the JSON and rendering it reproduces the
text byte for byte.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from . import bounds, mass, oracle, rootdata, verify
from .arith import FactoredInteger, is_prime
from .cyclo import Rationals, invariants, parse_field
from .errors import DomainError, PrecisionError, ValidationError

INF_CRITERION = "m = inf and t divides a degree"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialization helpers


def _factored(x: FactoredInteger) -> dict:
    return x.to_json()


def _factored_text(obj: dict) -> str:
    factors = obj["factors"]
    body = "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factors) or "1"
    return f"{obj['value']} = {body}"


def _rational(x: Fraction) -> dict:
    return {
        "value": f"{x.numerator}/{x.denominator}",
        "denominator": _factored(FactoredInteger.from_int(x.denominator)),
    }


def _bound_text(obj: dict) -> str:
    if obj["value"] == "inf":
        return f"inf ({INF_CRITERION})"
    return str(obj["value"])


def _inv_text(obj: dict) -> str:
    s = f"t={obj['t']} m={obj['m']}"
    return s + (f" type={obj['type']}" if obj.get("type") else "")


# ---------------------------------------------------------------------------
# argument parsing


def _field(text: str):
    try:
        return parse_field(text)
    except SyntaxError as exc:
        raise UsageError(str(exc)) from None


def _root(text: str):
    try:
        return rootdata.parse_root(text)
    except SyntaxError as exc:
        raise UsageError(str(exc)) from None


def _ell(text: str, allow_all: bool = False):
    if allow_all and text == "all":
        return "all"
    if not text.isdigit():
        raise UsageError(f"--ell expects a prime{' or all' if allow_all else ''}, got {text!r}")
    ell = int(text)
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    return ell


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    parser = argparse.ArgumentParser(prog="groupbounds", parents=[common],
                                     description="Bounds for finite subgroups of reductive groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minkowski", parents=[common], help="Minkowski's bound M(n) or M(n, ell)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", default="all")

    p = sub.add_parser("schur", parents=[common], help="Schur's bound over a field")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", required=True)
    p.add_argument("--field", required=True)

    p = sub.add_parser("invariants", parents=[common], help="cyclotomic invariants t, m, type")
    p.add_argument("--field", required=True)
    p.add_argument("--ell", required=True)

    p = sub.add_parser("bound", parents=[common], help="torus, S-, M-, achievable or corank bound")
    p.add_argument("--kind", choices=["s", "m", "torus", "achievable", "corank"], required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--field", required=True)
    p.add_argument("--ell", required=True)
    p.add_argument("--dim", type=int, help="torus dimension (default: rank of --root)")

    p = sub.add_parser("mass", parents=[common], help="mass formula value")
    p.add_argument("--root", required=True)
    p.add_argument("--ell")

    p = sub.add_parser("witness", parents=[common], help="witness-group arithmetic")
    p.add_argument("--kind", choices=["wreath", "schur", "gl2"], required=True)
    p.add_argument("--n", type=int, help="dimension (wreath)")
    p.add_argument("--N", type=int, help="block count (schur)")
    p.add_argument("--p", type=int, help="prime (gl2)")
    p.add_argument("--ell", required=True)
    p.add_argument("--field", help="field descriptor (schur)")

    p = sub.add_parser("verify", parents=[common], help="run the oracle batteries")
    p.add_argument("--suite", action="append", choices=sorted(verify.SUITES))

    p = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    p.add_argument("--name", choices=["minkowski8", "e8", "f4mass"], required=True)
    return parser


# ---------------------------------------------------------------------------
# commands


def cmd_minkowski(args) -> dict:
    ell = _ell(args.ell, allow_all=True)
    if ell == "all":
        return {"command": "minkowski", "n": args.n, "bound": _factored(bounds.minkowski_bound(args.n))}
    return {"command": "minkowski", "n": args.n, "ell": ell,
            "exponent": bounds.minkowski_exponent(args.n, ell)}


def cmd_schur(args) -> dict:
    field, ell = _field(args.field), _ell(args.ell)
    inv = invariants(field, ell)
    return {"command": "schur", "n": args.n, "ell": ell, "field": field.label,
            "invariants": inv.to_json(), "exponent": bounds.schur_exponent(args.n, ell, inv)}


def cmd_invariants(args) -> dict:
    field, ell = _field(args.field), _ell(args.ell)
    return {"command": "invariants", "field": field.label, "ell": ell,
            "invariants": invariants(field, ell).to_json()}


def cmd_bound(args) -> dict:
    R, field, ell = _root(args.root), _field(args.field), _ell(args.ell, allow_all=True)
    if args.dim is not None and args.kind != "torus":
        raise UsageError("--dim only applies to --kind torus")
    payload = {"command": "bound", "kind": args.kind, "root": R.label, "field": field.label, "ell": ell}
    if args.kind == "torus":
        payload["dim"] = args.dim if args.dim is not None else R.rank
    if ell == "all":
        product, exps = bounds.bound_all(field, R, args.kind, args.dim)
        payload["exponents"] = [[p, e] for p, e in sorted(exps.items())]
        payload["bound"] = _factored(product)
        return payload
    inv = invariants(field, ell)
    result = bounds.bound_for(args.kind, R, inv, ell, args.dim)
    if isinstance(result, tuple):
        result, optimal = result
        payload["optimal"] = optimal
    payload["invariants"] = inv.to_json()
    payload["bound"] = result.to_json()
    return payload


def cmd_mass(args) -> dict:
    R = _root(args.root)
    value = mass.mass(R)
    payload = {"command": "mass", "root": R.label, "mass": _rational(value)}
    if args.ell is not None:
        ell = _ell(args.ell)
        mass_exp, m_exp = mass.mass_denominator_exponent(R, ell)
        payload.update(ell=ell, mass_exp=mass_exp, m_bound_exp=m_exp)
    return payload


def cmd_witness(args) -> dict:
    ell = _ell(args.ell)
    if args.kind == "wreath":
        if args.n is None:
            raise UsageError("witness --kind wreath needs --n")
        order, v = oracle.wreath_witness(args.n, ell)
        return {"command": "witness", "kind": "wreath", "n": args.n, "ell": ell,
                "order": _factored(order), "v": v, "minkowski": bounds.minkowski_exponent(args.n, ell)}
    if args.kind == "schur":
        if args.N is None or args.field is None:
            raise UsageError("witness --kind schur needs --N and --field")
        field = _field(args.field)
        inv = invariants(field, ell)
        vA, vA1 = oracle.schur_witness(args.N, inv)
        return {"command": "witness", "kind": "schur", "N": args.N, "ell": ell, "field": field.label,
                "invariants": inv.to_json(), "vA": vA, "vA1": vA1}
    if args.p is None:
        raise UsageError("witness --kind gl2 needs --p")
    count = oracle.enumerate_gl2(args.p)
    return {"command": "witness", "kind": "gl2", "p": args.p, "ell": ell, "count": count,
            "v": oracle.enumerate_gl2_sylow(args.p, ell), "formula": oracle.gl_order(2, args.p).exponent(ell)}


def cmd_verify(args) -> dict:
    checks = verify.run_suites(args.suite)
    return {"command": "verify", "checks": [c.to_json() for c in checks],
            "passed": all(c.passed for c in checks)}


def _table_minkowski8() -> list[str]:
    lines = []
    for n in range(1, 9):
        b = bounds.minkowski_bound(n)
        # a bare prime is printed once, not as "2 = 2"
        lines.append(f"M({n}) = {b}" if str(b) == str(b.value()) else f"M({n}) = {b} = {b.value()}")
    return lines


def _table_e8() -> list[str]:
    E8 = rootdata.parse_root("E8")
    m_prod, _ = bounds.bound_all(Rationals(), E8, "m")
    s_prod, _ = bounds.bound_all(Rationals(), E8, "s")
    return [
        f"M(Q,E8) = {m_prod}",
        f"M_S(Q,E8) = {s_prod}",
        f"M_S/M = {s_prod / m_prod}",
    ]


def _table_f4mass() -> list[str]:
    F4 = rootdata.parse_root("F4")
    a = Fraction(1, 2**15 * 3**6 * 5**2 * 7)
    b = Fraction(1, 2**12 * 3**5 * 7**2 * 13)
    total = mass.mass(F4)

    def frac(x: Fraction) -> str:
        return f"{x.numerator}/{FactoredInteger.from_int(x.denominator)}"

    return [
        f"{frac(a)} + {frac(b)} = {frac(a + b)}",
        f"(1/16) zeta(-1) zeta(-5) zeta(-7) zeta(-11) = {frac(total)}",
    ]


TABLES = {"minkowski8": _table_minkowski8, "e8": _table_e8, "f4mass": _table_f4mass}
TABLE_NOTES = {"e8": ["printed M_S omits the factor 11^2; the recomputed S-exponent at 11 is 2"]}


def cmd_table(args) -> dict:
    return {"command": "table", "name": args.name, "lines": TABLES[args.name](),
            "notes": TABLE_NOTES.get(args.name, [])}


COMMANDS = {
    "minkowski": cmd_minkowski,
    "schur": cmd_schur,
    "invariants": cmd_invariants,
    "bound": cmd_bound,
    "mass": cmd_mass,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "table": cmd_table,
}


# ---------------------------------------------------------------------------
# text rendering


def render_text(payload: dict) -> str:
    """Human-readable rendering of a command payload (or of its parsed JSON)."""
    cmd = payload["command"]
    if cmd == "minkowski":
        if "ell" in payload:
            return f"M({payload['n']},{payload['ell']}) = {payload['exponent']}"
        return _factored_text(payload["bound"])
    if cmd == "schur":
        return (f"M_k({payload['n']},{payload['ell']}) = {payload['exponent']}"
                f"    k={payload['field']}  {_inv_text(payload['invariants'])}")
    if cmd == "invariants":
        return _inv_text(payload["invariants"])
    if cmd == "bound":
        head = f"{payload['kind']}-bound {payload['root']} over {payload['field']}"
        if "dim" in payload:
            head += f" (dim {payload['dim']})"
        if payload["ell"] == "all":
            rows = [f"{head}, all ell: {_factored_text(payload['bound'])}"]
            rows += [f"  ell={p:<4} {e}" for p, e in payload["exponents"]]
            return "\n".join(rows)
        line = f"{head} at ell={payload['ell']}: {_bound_text(payload['bound'])}"
        line += f"    [{_inv_text(payload['invariants'])}]"
        if "optimal" in payload:
            line += "  optimal" if payload["optimal"] else "  not known optimal"
        return line
    if cmd == "mass":
        m = payload["mass"]
        body = _factored_text(m["denominator"]).split(" = ", 1)[1]
        line = f"mass({payload['root']}) = {m['value']}    denominator = {body}"
        if "ell" in payload:
            line += (f"\n  ell={payload['ell']}: v(denominator) = {payload['mass_exp']}"
                     f", M-bound = {payload['m_bound_exp']}")
        return line
    if cmd == "witness":
        kind = payload["kind"]
        if kind == "wreath":
            return (f"wreath witness n={payload['n']} ell={payload['ell']}: order {_factored_text(payload['order'])}"
                    f"\n  v = {payload['v']}, M(n,ell) = {payload['minkowski']}")
        if kind == "schur":
            return (f"A_N witness N={payload['N']} ell={payload['ell']} over {payload['field']} "
                    f"[{_inv_text(payload['invariants'])}]: v(A_N) = {payload['vA']}, v(A_N^1) = {payload['vA1']}")
        return (f"GL2(F_{payload['p']}): {payload['count']} elements enumerated; "
                f"v_{payload['ell']} = {payload['v']} (formula {payload['formula']})")
    if cmd == "verify":
        rows = []
        for c in payload["checks"]:
            witness = ", ".join(f"{k}={v}" for k, v in c["witness"].items())
            rows.append(f"{c['status'].upper():4}  {c['suite']:<16} {c['check']}" + (f"  ({witness})" if witness else ""))
        failed = sum(1 for c in payload["checks"] if c["status"] != "pass")
        rows.append(f"{len(payload['checks']) - failed} passed, {failed} failed")
        return "\n".join(rows)
    if cmd == "table":
        return "\n".join(payload["lines"] + [f"# {n}" for n in payload["notes"]])
    raise ValueError(f"unknown command {cmd!r}")


# ---------------------------------------------------------------------------


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(err)
        print(f"groupbounds: error: {exc}", file=err)
        return 2
    except (DomainError, ValidationError, PrecisionError) as exc:
        print(f"groupbounds: {exc}", file=err)
        return 1
    if getattr(args, "json", False):
        print(json.dumps(payload, ensure_ascii=False), file=out)
    else:
        print(render_text(payload), file=out)
    if payload["command"] == "verify" and not payload["passed"]:
        return 3
    return 0


def main() -> None:
    sys.exit(run())
