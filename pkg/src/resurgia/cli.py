"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Optional

from . import exactgeom as eg
from . import families as fam
from . import monomials as mono
from . import reespkg
from . import resurgence as res
from .errors import BudgetExceeded, ResurgiaError
from .monomials import MonomialIdeal, Ring

EXIT_OK, EXIT_SPEC, EXIT_BUDGET = 0, 1, 2


class SpecError(ResurgiaError):
    pass


# --------------------------------------------------------------------------
# ideal grammar:  vars = x,y,z ; gens = x^2*y, y*z^3
# --------------------------------------------------------------------------

_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*|1)\s*(?:\^\s*(-?\d+))?\s*$")


def _fail(text: str, pos: int, msg: str):
    raise SpecError(f"{msg} at position {pos}: {text[:pos]}<<>>{text[pos:]}")


def parse_ideal(text: str) -> MonomialIdeal:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            return MonomialIdeal.from_json(json.loads(stripped))
        except json.JSONDecodeError as exc:
            raise SpecError(f"invalid ideal JSON: {exc}") from None
    fields: dict[str, tuple[str, int]] = {}
    pos = 0
    for part in text.split(";"):
        if part.strip():
            if "=" not in part:
                _fail(text, pos, "expected 'key = value'")
            key, value = part.split("=", 1)
            fields[key.strip()] = (value, pos + len(key) + 1)
        pos += len(part) + 1
    if "vars" not in fields or "gens" not in fields:
        raise SpecError("an ideal needs both 'vars=' and 'gens='")
    names = [v.strip() for v in fields["vars"][0].split(",")]
    try:
        ring = Ring(tuple(names))
    except ResurgiaError as exc:
        _fail(text, fields["vars"][1], str(exc))
    gens_text, offset = fields["gens"]
    gens = []
    for mono_text in gens_text.split(","):
        gens.append(_parse_monomial(text, ring, mono_text, offset))
        offset += len(mono_text) + 1
    return mono.minimalize(ring, gens)


def _parse_monomial(text: str, ring: Ring, mono_text: str, offset: int) -> tuple[int, ...]:
    if not mono_text.strip():
        _fail(text, offset, "empty monomial")
    exps = [0] * ring.n
    for factor in mono_text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            _fail(text, offset, f"cannot parse factor {factor.strip()!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if exp < 0:
            _fail(text, offset, "negative exponent")
        if name != "1":
            if name not in ring.variables:
                _fail(text, offset, f"unknown variable {name!r}")
            exps[ring.index(name)] += exp
        offset += len(factor) + 1
    return tuple(exps)


def _load_ideal(spec: str) -> MonomialIdeal:
    path = Path(spec)
    if len(spec) < 4096 and "=" not in spec and path.is_file():
        spec = path.read_text()
    return parse_ideal(spec)


# --------------------------------------------------------------------------
# family shorthand:  powers:I  symbolic:I  closure-powers:I
#                    piecewise:I:alpha,beta,gamma[:k=NAME^p;...]  truncate:<family>:<n>
# --------------------------------------------------------------------------

def _named(ideals: dict, name: str) -> MonomialIdeal:
    if name not in ideals:
        raise SpecError(f"unknown ideal name {name!r}; bind it with --ideal or --let")
    return ideals[name]


def _ideal_power(ideals: dict, text: str) -> MonomialIdeal:
    name, _, p = text.partition("^")
    return mono.power(_named(ideals, name.strip()), int(p) if p else 1)


def parse_family(spec: str, ideals: dict) -> fam.GradedFamily:
    spec = spec.strip()
    if spec.startswith("@"):
        return fam.family_from_json(json.loads(Path(spec[1:]).read_text()))
    if spec.startswith("{"):
        return fam.family_from_json(json.loads(spec))
    kind, _, rest = spec.partition(":")
    try:
        if kind == "truncate":
            inner, _, n = rest.rpartition(":")
            return fam.truncate(parse_family(inner, ideals), int(n))
        if kind == "powers":
            return fam.powers(_named(ideals, rest))
        if kind == "symbolic":
            return fam.symbolic_powers(_named(ideals, rest))
        if kind == "closure-powers":
            return fam.closure_powers(_named(ideals, rest))
        if kind == "piecewise":
            parts = rest.split(":")
            base = _named(ideals, parts[0])
            alpha, beta, gamma = (int(x) for x in parts[1].split(",")) if len(parts) > 1 else (1, 0, 1)
            overrides = {}
            if len(parts) > 2 and parts[2].strip():
                for item in parts[2].split(";"):
                    k, _, ideal = item.partition("=")
                    overrides[int(k)] = _ideal_power(ideals, ideal)
            return fam.piecewise(base, alpha, beta, gamma, overrides)
    except ValueError as exc:
        raise SpecError(f"bad family spec {spec!r}: {exc}") from None
    raise SpecError(f"unknown family kind in {spec!r}")


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _weights(text: str) -> tuple:
    return eg.as_point(text.split(","))


def _poly_text(P: eg.QPolyhedron) -> str:
    if P.is_empty:
        return "empty"
    lines = ["vertices:"]
    lines += ["  (" + ", ".join(map(eg.format_rational, v)) + ")" for v in P.vertices]
    lines.append("facets:")
    lines += ["  " + " + ".join(f"{c}*x{i + 1}" for i, c in enumerate(f.normal) if c)
              + f" >= {f.offset}" for f in P.facets]
    return "\n".join(lines)


def _require_ideal(args) -> MonomialIdeal:
    if "I" not in args.ideals:
        raise SpecError("this command needs --ideal or --ideal-file")
    return args.ideals["I"]


def cmd_np(args):
    P = mono.newton_polyhedron(_require_ideal(args))
    return P.to_json(), _poly_text(P), []


def cmd_sp(args):
    P = mono.symbolic_polyhedron(_require_ideal(args))
    return P.to_json(), _poly_text(P), []


def cmd_dual(args):
    J = mono.alexander_dual(_require_ideal(args))
    return J.to_json(), J.to_text(), []


def cmd_symbolic_power(args):
    J = mono.symbolic_power(_require_ideal(args), args.m)
    return J.to_json(), J.to_text(), []


def cmd_okounkov(args):
    cert = fam.okounkov_body(parse_family(args.family, args.ideals), args.budget_body)
    text = f"certificate: {cert.status}" + (f" (k={cert.index})" if cert.index else "")
    return cert.to_json(), text + "\n" + _poly_text(cert.body), [res._cert_meta(cert)]


def cmd_asymptotic(args):
    Fa, Fb = parse_family(args.a, args.ideals), parse_family(args.b, args.ideals)
    r = res.asymptotic_resurgence(Fa, Fb, args.budget_body)
    certs = [r.metadata["certificate_a"], r.metadata["certificate_b"]]
    return r.to_json(), eg.format_rational(r.value), certs


def cmd_resurgence(args):
    Fa, Fb = parse_family(args.a, args.ideals), parse_family(args.b, args.ideals)
    r = res.resurgence_search(Fa, Fb, args.budget_search_s, args.budget_search_r, args.closure)
    return r.to_json(), eg.format_rational(r.value), []


def cmd_waldschmidt(args):
    F = parse_family(args.family, args.ideals)
    cert = fam.okounkov_body(F, args.budget_body)
    v = res.waldschmidt(F, _weights(args.weight), args.budget_body)
    return {"value": eg.format_rational(v), "exact": cert.is_exact}, eg.format_rational(v), \
        [res._cert_meta(cert)]


def cmd_truncate_profile(args):
    Fa, Fb = parse_family(args.a, args.ideals), parse_family(args.b, args.ideals)
    rows = res.truncation_resurgence_profile(Fa, Fb, args.n_max, args.budget_search_s,
                                             args.budget_search_r, args.closure)
    data = [{"n": n, "result": r.to_json()} for n, r in rows]
    lines = [f"n={n}: {eg.format_rational(r.value)}" for n, r in rows]
    if args.weight:
        w = _weights(args.weight)
        for row, line_no in zip(data, range(len(lines))):
            v = res.waldschmidt(fam.truncate(Fa, row["n"]), w, args.budget_body)
            row["waldschmidt"] = eg.format_rational(v)
            lines[line_no] += f"  waldschmidt={row['waldschmidt']}"
    return data, "\n".join(lines), []


def _package(args):
    if args.builtin:
        if args.builtin != "symmetric-minors":
            raise SpecError(f"unknown builtin {args.builtin!r}")
        if args.m is None:
            raise SpecError("--builtin symmetric-minors needs --m")
        return reespkg.symmetric_minors_family(args.m)
    if args.table:
        return reespkg.table_from_json(json.loads(Path(args.table).read_text()))
    raise SpecError("give --builtin or --table")


def cmd_rees(args):
    pkg, vf = _package(args)
    if args.b_equivalent:
        r = reespkg.b_equivalent_resurgence(vf, pkg, args.budget_body)
    else:
        r = reespkg.rees_resurgence(vf, pkg, args.budget_body)
    return r.to_json(), eg.format_rational(r.value), [r.metadata["certificate"]]


def cmd_veronese(args):
    pkg, vf = _package(args)
    r = reespkg.veronese_resurgence(vf, pkg, args.k, args.budget_body)
    return r.to_json(), eg.format_rational(r.value), [r.metadata["certificate"]]


def cmd_duality_check(args):
    I = _require_ideal(args)
    ok = res.duality_check(I)
    d = mono.alexander_dual(I)
    data = {"holds": ok,
            "value": eg.format_rational(res.dual_pair_resurgence(I, I)),
            "dual_value": eg.format_rational(res.dual_pair_resurgence(d, d))}
    return data, "true" if ok else "false", []


COMMANDS = {
    "np": cmd_np,
    "sp": cmd_sp,
    "dual": cmd_dual,
    "symbolic-power": cmd_symbolic_power,
    "okounkov": cmd_okounkov,
    "resurgence": cmd_resurgence,
    "asymptotic-resurgence": cmd_asymptotic,
    "waldschmidt": cmd_waldschmidt,
    "truncate-profile": cmd_truncate_profile,
    "rees": cmd_rees,
    "veronese": cmd_veronese,
    "duality-check": cmd_duality_check,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_SPEC, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ideal", help="ideal text, JSON, or a file containing either")
    common.add_argument("--ideal-file", help="file holding the ideal bound to the name I")
    common.add_argument("--let", action="append", default=[], metavar="NAME:IDEAL",
                        help="bind another ideal name for family specs")
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--budget-body", type=int, default=fam.DEFAULT_BODY_BUDGET)
    common.add_argument("--budget-search-s", type=int, default=res.DEFAULT_SEARCH_S)
    common.add_argument("--budget-search-r", type=int, default=res.DEFAULT_SEARCH_R)

    parser = _Parser(prog="resurgia", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("np", "sp", "dual", "duality-check"):
        sub.add_parser(name, parents=[common])
    sub.add_parser("symbolic-power", parents=[common]).add_argument("--m", type=int, required=True)
    for name in ("okounkov", "waldschmidt"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--family", required=True)
        if name == "waldschmidt":
            p.add_argument("--weight", required=True, help="comma-separated weights")
    for name in ("resurgence", "asymptotic-resurgence", "truncate-profile"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        if name != "asymptotic-resurgence":
            p.add_argument("--closure", action="store_true")
        if name == "truncate-profile":
            p.add_argument("--n-max", type=int, default=res.DEFAULT_TRUNCATION_N)
            p.add_argument("--weight", help="also report Waldschmidt values of the truncations")
    for name in ("rees", "veronese"):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--builtin")
        p.add_argument("--m", type=int)
        p.add_argument("--table", help="explicit Rees value table (JSON)")
        if name == "rees":
            p.add_argument("--b-equivalent", action="store_true")
        else:
            p.add_argument("--k", type=int, required=True)
    return parser


def run(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.ideals = {}
        if args.ideal_file:
            args.ideals["I"] = parse_ideal(Path(args.ideal_file).read_text())
        elif args.ideal:
            args.ideals["I"] = _load_ideal(args.ideal)
        for binding in args.let:
            name, sep, spec = binding.partition(":")
            if not sep:
                raise SpecError(f"--let expects NAME:IDEAL, got {binding!r}")
            args.ideals[name.strip()] = _load_ideal(spec)
        data, text, certs = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ResurgiaError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC
    if args.output == "json":
        payload = {
            "command": args.command,
            "result": data,
            "provenance": {
                "budgets": {"body": args.budget_body, "search_s": args.budget_search_s,
                            "search_r": args.budget_search_r},
                "certificates": certs,
            },
        }
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
