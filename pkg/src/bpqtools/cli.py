"""Command-line interface: ``bpq <command>`` or ``python3 -m bpqtools``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
Rationals are written as integers or a/b; "inf" where an infinite size
is allowed.  Local-model tolerances: Lagrangian residual 1e-8,
Jacobian 1e-6, quotient action 1e-9.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__, atf, chains, compactify, embeddings, hj, local_models, verify
from .hj import ZERO_TAIL

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def parse_rational(text: str, allow_inf: bool = False):
    text = text.strip()
    if allow_inf and text.lower() in ("inf", "infinity"):
        return atf.INF
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            num, den = int(num), int(den)
            if den == 0:
                raise UsageError(f"zero denominator in {text!r}")
            return Fraction(num, den)
        return Fraction(int(text))
    except ValueError:
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_fraction_arg(text: str) -> tuple:
    """'n/a' or 'n a' style input for hj commands; returns (n, a) unreduced check."""
    if "/" not in text:
        raise UsageError(f"expected n/a, got {text!r}")
    num, den = text.split("/", 1)
    try:
        n, a = int(num), int(den)
    except ValueError:
        raise UsageError(f"expected n/a, got {text!r}") from None
    if a <= 0 or n <= 0:
        raise UsageError(f"need positive n and a, got {text!r}")
    return n, a


def frac_json(x):
    if x is ZERO_TAIL:
        return "zero-tail"
    if atf.is_inf(x):
        return "inf"
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def report(command, inputs, outputs, checks=()):
    return {"command": command, "inputs": inputs, "outputs": outputs, "checks": list(checks),
            "version": {"package": __version__, "schema": SCHEMA_VERSION}}


def ok_check(name, ok, witness=None):
    return verify.check(name, ok, witness)


# --- hj ----------------------------------------------------------------

def cmd_hj(args):
    if args.action == "expand":
        n, a = parse_fraction_arg(args.value)
        cf = _expand(n, a)
        return report("hj expand", {"fraction": args.value}, {"coeffs": list(cf.coeffs)},
                      [ok_check("evaluates back", hj.hj_evaluate(cf) == Fraction(n, a), str(hj.hj_evaluate(cf)))])
    if args.action == "dual":
        n, a = parse_fraction_arg(args.value)
        try:
            cf = hj.hj_dual(n, a)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return report("hj dual", {"fraction": args.value}, {"coeffs": list(cf.coeffs), "dual_of": [n, n - a]})
    if args.action == "wahl":
        p, q = _pq(args.p, args.q)
        w = hj.wahl_chain(p, q)
        return report("hj wahl", {"p": p, "q": q}, {
            "wahl": list(w.wahl.coeffs), "dual": list(hj.wahl_dual_chain(p, q).coeffs),
            "xs": list(w.xs.coeffs), "ys": list(w.ys.coeffs)})
    if args.action == "matrix":
        n, a = parse_fraction_arg(args.value)
        cf = _expand(n, a)
        M = hj.cf_matrix_product(cf)
        inv = hj.mod_inverse(a, n)
        want = ((n, -inv), (a, (1 - a * inv) // n))
        return report("hj matrix", {"fraction": args.value}, {"coeffs": list(cf.coeffs), "product": [list(r) for r in M]},
                      [ok_check("matrix identity", M == want, [list(r) for r in M])])
    if args.action == "evaluate":
        try:
            coeffs = [int(x) for x in args.coeffs.replace(",", " ").split()]
        except ValueError:
            raise UsageError(f"expected integers, got {args.coeffs!r}") from None
        if not coeffs:
            raise UsageError("empty continued fraction")
        return report("hj evaluate", {"coeffs": coeffs}, {"value": frac_json(hj.hj_evaluate(coeffs)),
                                                          "zero_cf": hj.zero_cf_check(coeffs)})
    raise UsageError(f"unknown hj action {args.action}")


def _expand(n, a):
    try:
        return hj.hj_expand(n, a)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _pq(p, q):
    try:
        hj._check_pq(p, q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return p, q


# --- verify --------------------------------------------------------------

def cmd_verify(args):
    only = args.only.split(",") if args.only else None
    pair = None
    if args.pair:
        pair = _pq(*args.pair)
    try:
        body = verify.run_verify(args.max_p, only, pair)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    checks = body.pop("checks")
    return report("verify", {"max_p": args.max_p, "only": only, "pair": list(pair) if pair else None},
                  body, checks)


# --- diagram -------------------------------------------------------------

def cmd_diagram(args):
    p, q = _pq(args.p, args.q)
    if args.kind == "pin-ellipsoid":
        alpha = parse_rational(args.alpha, allow_inf=True)
        beta = parse_rational(args.beta, allow_inf=True)
        for name, v in (("alpha", alpha), ("beta", beta)):
            if not atf.is_inf(v) and v <= 0:
                raise UsageError(f"{name} must be positive")
        d = atf.build_pin_diagram(p, q, alpha, beta)
        inputs = {"p": p, "q": q, "alpha": frac_json(alpha), "beta": frac_json(beta)}
        checks = []
    else:
        alpha = parse_rational(args.alpha)
        if alpha <= 0:
            raise UsageError("alpha must be positive")
        d = atf.compactification_diagram(p, q, alpha)
        got = atf.divisor_profile_from_diagram(d)
        want = compactify.compactifying_divisor(p, q).profile
        inputs = {"p": p, "q": q, "alpha": frac_json(alpha)}
        checks = [ok_check("edge self-intersections match the divisor", got == want, [list(got), list(want)])]
    svg = atf.emit_svg(d)
    data = d.to_json()
    outputs = {"diagram": data}
    if args.output:
        out = Path(args.output)
        try:
            out.write_text(svg)
            out.with_suffix(".json").write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from None
        outputs["svg"] = str(out)
    else:
        outputs["svg_text"] = svg
    return report(f"diagram {args.kind}", inputs, outputs, checks)


# --- embeddings ----------------------------------------------------------

def cmd_nonsqueeze(args):
    p, q = _pq(args.p, args.q)
    alpha, lam = parse_rational(args.alpha), parse_rational(args.lam)
    try:
        query = embeddings.NonsqueezeQuery(p, q, alpha, lam, args.cylinder)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    v = embeddings.nonsqueeze_verdict(query)
    return report("nonsqueeze", {"p": p, "q": q, "alpha": frac_json(alpha), "lambda": frac_json(lam),
                                 "cylinder": args.cylinder},
                  dict(v.to_json(), note=embeddings.cylinder_asymmetry_note(p, q)))


def cmd_classify(args):
    p, q = _pq(args.p, args.q)
    res = embeddings.classify_pinwheels(p, q)
    return report("classify", {"p": p, "q": q}, {"admissible": [list(x) for x in res.sorted()],
                                                 "candidates": [list(x) for x in res.candidates]},
                  [ok_check("only (p,q) and (p,p-q)", res.admissible == {(p, q), (p, p - q)}, res.sorted())])


# --- local models --------------------------------------------------------

def cmd_verify_local(args):
    checks = verify.local_checks()
    rows = {
        "lagrangian_residual": local_models.lagrangian_check(args.p, args.q, args.grid),
        "convergence_order": local_models.convergence_order(args.p, args.q),
        "tolerances": {"lagrangian": local_models.LAGRANGIAN_TOL, "jacobian": local_models.JACOBIAN_TOL,
                       "action": local_models.ACTION_TOL},
    }
    if args.symbolic:
        rows["symbolic"] = {
            "lagrangian": str(local_models.lagrangian_symbolic(args.p, args.q)),
            "straightening": str(local_models.straightening_symbolic()),
            "quotient_action": str(local_models.quotient_action_symbolic(args.p, args.q)),
        }
    return report("verify-local", {"p": args.p, "q": args.q, "grid": args.grid}, rows, checks)


# --- plumbing ------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    ap = _Parser(prog="bpq", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--json", action="store_true", help="print the machine-readable report")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    h = sub.add_parser("hj", help="continued fraction calculus")
    hs = h.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("expand", "dual", "matrix"):
        s = hs.add_parser(name)
        s.add_argument("value", help="fraction n/a")
    s = hs.add_parser("wahl")
    s.add_argument("p", type=int)
    s.add_argument("q", type=int)
    s = hs.add_parser("evaluate")
    s.add_argument("coeffs", help="comma or space separated integers")
    h.set_defaults(func=cmd_hj)

    v = sub.add_parser("verify", help="run the verification sweeps")
    v.add_argument("--max-p", type=int, default=50)
    v.add_argument("--only", help=f"comma separated subset of {','.join(verify.GROUPS)}")
    v.add_argument("--pair", type=int, nargs=2, metavar=("P", "Q"))
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("diagram", help="emit an SVG base diagram")
    d.add_argument("kind", choices=["pin-ellipsoid", "compactify"])
    d.add_argument("p", type=int)
    d.add_argument("q", type=int)
    d.add_argument("--alpha", default="1")
    d.add_argument("--beta", default="1")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_diagram)

    n = sub.add_parser("nonsqueeze", help="pin-ball into pin-cylinder verdict")
    n.add_argument("p", type=int)
    n.add_argument("q", type=int)
    n.add_argument("--alpha", required=True)
    n.add_argument("--lambda", dest="lam", required=True)
    n.add_argument("--cylinder", choices=[embeddings.FIRST_AXIS, embeddings.SECOND_AXIS],
                   default=embeddings.FIRST_AXIS)
    n.set_defaults(func=cmd_nonsqueeze)

    c = sub.add_parser("classify", help="pinwheels embedded in B_{p,q}")
    c.add_argument("p", type=int)
    c.add_argument("q", type=int)
    c.set_defaults(func=cmd_classify)

    lm = sub.add_parser("verify-local", help="local model numerics")
    lm.add_argument("p", type=int, nargs="?", default=5)
    lm.add_argument("q", type=int, nargs="?", default=2)
    lm.add_argument("--grid", type=int, default=64)
    lm.add_argument("--symbolic", action="store_true")
    lm.set_defaults(func=cmd_verify_local)
    return ap


def _human(rep) -> str:
    lines = [f"{rep['command']}"]
    outputs = dict(rep["outputs"])
    svg = outputs.pop("svg_text", None)
    for k, v in outputs.items():
        if k == "diagram":
            continue
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    failed = [c for c in rep["checks"] if c["status"] == "fail"]
    if rep["checks"]:
        lines.append(f"  checks: {len(rep['checks']) - len(failed)}/{len(rep['checks'])} pass")
    for c in failed[:20]:
        where = f" {tuple(c['pair'])}" if "pair" in c else ""
        lines.append(f"  FAIL {c['name']}{where}: {json.dumps(c['witness'])}")
    text = "\n".join(lines)
    if svg is not None:
        text = svg.rstrip("\n")
    return text


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    # accept --json anywhere on the line
    as_json = "--json" in argv
    argv = [a for a in argv if a != "--json"]
    try:
        args = build_parser().parse_args(argv)
        rep = args.func(args)
    except UsageError as exc:
        print(f"bpq: error: {exc}", file=sys.stderr)
        return 2
    if as_json:
        print(json.dumps(rep, indent=2, sort_keys=True))
    else:
        print(_human(rep))
        for w in rep["outputs"].get("warnings", []) if isinstance(rep["outputs"], dict) else []:
            print(f"warning: {w}", file=sys.stderr)
    return 1 if any(c["status"] == "fail" for c in rep["checks"]) else 0


if __name__ == "__main__":
    sys.exit(main())
