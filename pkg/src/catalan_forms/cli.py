"""catalan-forms: command-line access to the forms, group, continued fraction,
conjecture apparatus and a certified reference value of G.

Exit codes: 0 success, 2 certificate failure, 3 precision failure, 64 usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import cf_catalan, conjecture_lab, whipple_group
from .linear_forms import tilde_un_vn, un_vn
from .recurrence import catalan_from_recursion, integrality_certificate, tilde_sequences
from .tails import PrecisionError

ENV_PRECISION = "CATALAN_FORMS_PRECISION_BITS"
EXIT_OK, EXIT_CERT, EXIT_PRECISION, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 256
    n_range: tuple = (1, 10)
    output_format: str = "json"
    slack_budget: int = 8
    denominator_cap: int = 10**30


def parse_range(text: str):
    """'A..B' (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    if lo < 0:
        raise UsageError("range must be nonnegative")
    return lo, hi


def parse_c_prime(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise UsageError("--c needs five comma-separated rationals c00,c21,c22,c33,c31")
    try:
        vals = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse --c {text!r}") from None
    c = whipple_group.CVector.from_prime(*vals)
    if not c.admissible:
        lab = next(lab for lab in whipple_group.LABELS if c[lab] <= -1)
        raise UsageError(f"inadmissible parameter set: c{lab} = {c[lab]} is not > -1")
    return c


# -- serialization ---------------------------------------------------------------

def to_json_value(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= 2**53 else x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, mpmath.mpf):
        return mpmath.nstr(x, 20)
    if isinstance(x, (list, tuple)):
        return [to_json_value(v) for v in x]
    if isinstance(x, dict):
        return {k: to_json_value(v) for k, v in x.items()}
    return x


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(to_json_value(doc), indent=2)
    rows = doc.get("rows")
    if fmt == "csv":
        if not rows:
            rows = [doc.get("report", {})]
        buf = io.StringIO()
        cols = list(rows[0].keys()) if rows else []
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: json.dumps(to_json_value(v)) if isinstance(v, (list, tuple, dict)) else to_json_value(v)
                        for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    lines = [f"# {doc['command']}"]
    for key, val in doc.get("report", {}).items():
        lines.append(f"{key}: {to_json_value(val)}")
    if rows:
        cols = list(rows[0].keys())
        lines.append("\t".join(cols))
        for r in rows:
            lines.append("\t".join(str(to_json_value(r[c])) for c in cols))
    return "\n".join(lines)


# -- commands -------------------------------------------------------------------

def cmd_forms(cfg: RunConfig, which: str):
    lo, hi = cfg.n_range
    if which == "tilde":
        u, v = tilde_sequences(max(hi, 1))
        us, vs = u[lo: hi + 1], v[lo: hi + 1]
        # cross-check the recursion values against the partial-fraction construction
        for n, a, b in zip(range(lo, hi + 1), us, vs):
            f = tilde_un_vn(n)
            if (f.u, f.v) != (a, b):
                raise AssertionError(f"construction and recursion disagree at n={n}")
    else:
        forms = [un_vn(n) for n in range(lo, hi + 1)]
        us, vs = [f.u for f in forms], [f.v for f in forms]
    cu = integrality_certificate(us, "u", cfg.slack_budget, start=lo)
    cv = integrality_certificate(vs, "v", cfg.slack_budget, start=lo)
    rows = []
    for n, a, b, ru, rv in zip(range(lo, hi + 1), us, vs, cu, cv):
        ok = ru.passed and rv.passed
        rows.append({"n": n, "u": a, "v": b, "u_ord2_den": ru.exponent, "v_ord2_den": rv.exponent,
                     "bound": ru.bound, "strong": ru.strong and rv.strong,
                     "certificate": "pass" if ok else "fail"})
    status = EXIT_OK if all(r["certificate"] == "pass" for r in rows) else EXIT_CERT
    return {"command": f"forms {which}", "rows": rows}, status


def _c_row(c):
    return {lab: c[lab] for lab in whipple_group.LABELS}


def cmd_group(cfg: RunConfig, sub: str, c_text: str | None):
    group = whipple_group.generate_group()
    if sub == "order":
        rows = [{"element": i, "word": " ".join(w) or "e", "image": list(g.image)}
                for i, (g, w) in enumerate(zip(group.elements, group.words))]
        return {"command": "group order",
                "report": {"order": len(group), "max_word_length": group.max_word_length},
                "rows": rows}, EXIT_OK
    if sub == "probe24":
        vectors = ([parse_c_prime(c_text)] if c_text else
                   [whipple_group.euler_cvector(n) for n in (1, 2, 3)]
                   + [whipple_group.section1_c(n) for n in (1, 2)])
        bits = max(cfg.precision_bits, 512)
        G = catalan_from_recursion(bits + 64)
        rows = []
        for c in vectors:
            r = whipple_group.probe24(c, G, bits, cfg.slack_budget, cfg.denominator_cap)
            rows.append({"c_prime": list(r.c_prime), "M": r.M, "m1": r.m1, "m2": r.m2,
                         "status": r.relation.status, "p": r.relation.p, "q": r.relation.q,
                         "divides": r.divides, "needed_slack": r.needed_slack})
        return {"command": "group probe24", "report": {"experimental": True, "slack": cfg.slack_budget},
                "rows": rows}, EXIT_OK
    if not c_text:
        raise UsageError(f"group {sub} needs --c c00,c21,c22,c33,c31")
    c = parse_c_prime(c_text)
    if sub == "orbit":
        rows = [dict(_c_row(e.c), word=" ".join(e.word) or "e", admissible=e.admissible,
                     demi_integral=e.demi_integral) for e in whipple_group.orbit(c, group)]
        return {"command": "group orbit", "report": {"orbit_size": len(rows)}, "rows": rows}, EXIT_OK
    if sub == "stability":
        rows = []
        tol = mpmath.mpf(2) ** -(cfg.precision_bits // 4)
        for name, s in whipple_group.generators().items():
            r = whipple_group.stability_check(c, s, cfg.precision_bits)
            rows.append({"generator": name, "residual": r.residual, "radius": r.radius,
                         "sqrt_pi_shift": r.sqrt_pi_shift, "pass": r.residual <= tol})
        status = EXIT_OK if all(r["pass"] for r in rows) else EXIT_CERT
        return {"command": "group stability", "rows": rows}, status
    raise UsageError(f"unknown group subcommand {sub}")


def cmd_cf(cfg: RunConfig):
    lo, hi = cfg.n_range
    G = catalan_from_recursion(max(cfg.precision_bits, int(hi * 7 + 64)))
    checks, first_bad = cf_catalan.cf_vs_recursion(max(hi, 1))
    rows = []
    for N in range(lo, hi + 1):
        conv = cf_catalan.convergent(N)
        rows.append({"N": N, "convergent": conv, "digits": cf_catalan.digits_report(N, G),
                     "equals_recursion": checks[N - 1].equal if N >= 1 else None})
    report = {"index_map": "convergent(N) = 6 v~_{N+1} / u~_{N+1}", "first_mismatch": first_bad}
    return {"command": "cf", "report": report, "rows": rows}, EXIT_OK if first_bad is None else EXIT_CERT


def cmd_conjecture(cfg: RunConfig, N: int):
    r = conjecture_lab.verify_counterexample(N, cfg.precision_bits)
    xs = [conjecture_lab.counterexample_x(n) for n in range(min(N, 60) + 1)]
    u, _ = tilde_sequences(min(N, 100))
    tx = conjecture_lab.den_lcm_growth(xs)
    tu = conjecture_lab.den_lcm_growth(u)
    bits = max(cfg.precision_bits, 1600)
    perron = conjecture_lab.perron_basis_check(100, catalan_from_recursion(bits))
    last = perron.rows[-1]
    report = {
        "N": N, "exact_checks": r.exact_ok, "first_failure": r.first_failure,
        "a_limit_residual": r.ab_limit_residual[0], "b_limit_residual": r.ab_limit_residual[1],
        "x_ratio_residual": r.x_ratio_residual, "y_ratio_residual": r.y_ratio_residual,
        "discriminant": r.discriminant, "roots_irrational": r.roots_irrational,
        "x_den_trace_last": tx.trace[-1], "u_den_trace_last": tu.trace[-1],
        "perron_n": last.n, "perron_u_residual": last.u_residual, "perron_r_residual": last.r_residual,
        "perron_root_product": perron.root_product,
    }
    return {"command": "conjecture", "report": report}, EXIT_OK if r.passed else EXIT_CERT


def cmd_reference_g(cfg: RunConfig, digits: int):
    need = math.ceil(digits * math.log2(10)) + 8
    if need > cfg.precision_bits:
        raise PrecisionError(f"{digits} digits need {need} bits; precision budget is {cfg.precision_bits}")
    G = catalan_from_recursion(need + 16)
    with mpmath.workprec(need + 64):
        oracle = +mpmath.catalan
        agree = abs(G.value - oracle) <= G.radius + mpmath.mpf(2) ** -(need + 32)
        text = mpmath.nstr(G.value, digits, strip_zeros=False)
    if not agree:
        raise PrecisionError("recursion value disagrees with the independent evaluation")
    report = {"digits": digits, "G": text, "radius": G.radius, "oracle_agrees": agree}
    return {"command": "reference-g", "report": report}, EXIT_OK


# -- entry point ---------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-range", default=None, help="inclusive index range A..B")
    common.add_argument("--precision-bits", type=int, default=None,
                        help=f"working precision (default ${ENV_PRECISION} or 256)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--slack-budget", type=int, default=8)
    common.add_argument("--denominator-cap", type=int, default=10**30)

    p = _Parser(prog="catalan-forms", description="Rational linear forms in Catalan's constant.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    f = sub.add_parser("forms", parents=[common], help="(u_n, v_n) or (u~_n, v~_n) with certificates")
    f.add_argument("--which", choices=("tilde", "original"), default="tilde")
    g = sub.add_parser("group", parents=[common], help="the 120-element parameter group")
    g.add_argument("action", choices=("order", "orbit", "stability", "probe24"))
    g.add_argument("--c", default=None, help="c' = c00,c21,c22,c33,c31 as rationals")
    sub.add_parser("cf", parents=[common], help="continued-fraction convergents for 6G")
    c = sub.add_parser("conjecture", parents=[common], help="counterexample sequences and Perron basis")
    c.add_argument("--n", type=int, default=500)
    r = sub.add_parser("reference-g", parents=[common], help="certified digits of G")
    r.add_argument("digits", type=int)
    return p


def resolve_config(args) -> RunConfig:
    bits = args.precision_bits
    if bits is None:
        env = os.environ.get(ENV_PRECISION)
        try:
            bits = int(env) if env else 256
        except ValueError:
            raise UsageError(f"${ENV_PRECISION} must be an integer") from None
    if bits < 64:
        raise UsageError("precision must be at least 64 bits")
    default_range = {"cf": "1..20", "forms": "1..10"}.get(args.command, "1..10")
    n_range = parse_range(args.n_range or default_range)
    if args.command == "cf" and n_range[0] < 1:
        raise UsageError("cf needs N >= 1")
    return RunConfig(bits, n_range, args.format, args.slack_budget, args.denominator_cap)


def main(argv=None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "forms":
            doc, status = cmd_forms(cfg, args.which)
        elif args.command == "group":
            doc, status = cmd_group(cfg, args.action, args.c)
        elif args.command == "cf":
            doc, status = cmd_cf(cfg)
        elif args.command == "conjecture":
            if args.n < 2:
                raise UsageError("conjecture needs --n >= 2")
            doc, status = cmd_conjecture(cfg, args.n)
        else:
            if args.digits < 1:
                raise UsageError("digits must be positive")
            doc, status = cmd_reference_g(cfg, args.digits)
    except UsageError as exc:
        print(f"catalan-forms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except whipple_group.StructuralError as exc:
        print(f"catalan-forms: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"catalan-forms: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    doc["config"] = {"precision_bits": cfg.precision_bits, "n_range": list(cfg.n_range),
                     "slack_budget": cfg.slack_budget, "denominator_cap": cfg.denominator_cap}
    print(render(doc, cfg.output_format))
    return status


if __name__ == "__main__":
    sys.exit(main())
