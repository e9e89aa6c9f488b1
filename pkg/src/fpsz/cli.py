"""Command-line interface: one binary, subcommand per operation.

Families and densities come from JSON config files (see README for the
schema); numeric output always states the backend it was computed under.
Exit codes: 0 success, 1 config/usage error, 2 degenerate law/family,
3 invariant violation (route mismatch or selftest failure).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from . import selftest as selftest_mod
from .errors import (
    ConfigError,
    DegenerateAt,
    DegenerateLaw,
    EnumerationCapExceeded,
    FpszError,
    InvalidMoments,
    NotClassG,
    OrderUnsupported,
    QuadratureFailure,
)
from .freemoments import RATIONAL, FreeFamily, family_from_config, mixed_moment
from .grammat import gram_matrix, hankel_determinant
from .laws import density_from_config, law_from_config
from .orthopoly1d import (
    jacobi_coefficients,
    szego_asymptote_1d,
    verblunsky_coefficients,
)
from .szegolimit import (
    convergence_trace,
    entropy_from_jacobi,
    entropy_from_verblunsky,
    entropy_number,
    limit_prediction,
)
from .words import parse_word, word_to_text

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DEGENERATE = 2
EXIT_INVARIANT = 3


class SystemExit_(Exception):
    def __init__(self, code: int, message: str = ""):
        super().__init__(message)
        self.code = code
        self.message = message


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2 (2 means degenerate)
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit_(EXIT_CONFIG, f"error: {message}")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SystemExit_(EXIT_CONFIG, f"cannot read config {path!r}: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit_(EXIT_CONFIG, f"config {path!r} is not valid JSON: {exc}")


def _family(path: str, backend: str | None) -> FreeFamily:
    cfg = _load_json(path)
    if backend:
        cfg = dict(cfg, backend=backend)
    return family_from_config(cfg)


def _single_law(path: str):
    cfg = _load_json(path)
    if "variables" in cfg:
        variables = cfg["variables"]
        if len(variables) != 1:
            raise SystemExit_(EXIT_CONFIG,
                              "this command needs a single-law config")
        cfg = variables[0]
    try:
        return law_from_config(cfg)
    except (ValueError, InvalidMoments) as exc:
        raise SystemExit_(EXIT_CONFIG, f"bad law config: {exc}")


def _scalar_str(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, complex):
        return repr(value)
    return repr(float(value))


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_csv(path: str | None, header, rows):
    fh, close = _open_out(path)
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            fh.close()


def _emit_json(path: str | None, payload):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    fh, close = _open_out(path)
    try:
        fh.write(text)
    finally:
        if close:
            fh.close()


def cmd_moment(args) -> int:
    family = _family(args.config, args.backend)
    word = parse_word(args.word, family.n, kinds=family.kinds)
    value = mixed_moment(family, word)
    print(_scalar_str(value))
    return EXIT_OK


def cmd_jacobi(args) -> int:
    law = _single_law(args.config)
    coeffs = jacobi_coefficients(law, args.count)
    rows = [(q, repr(a), _scalar_str(b))
            for q, (a, b) in enumerate(zip(coeffs.a, coeffs.b), start=1)]
    _write_csv(args.out, ["q", "a_q", "b_q"], rows)
    return EXIT_OK


def cmd_verblunsky(args) -> int:
    law = _single_law(args.config)
    coeffs = verblunsky_coefficients(law, args.count)
    rows = []
    for q, a in enumerate(coeffs.alpha):
        re = a.real if isinstance(a, complex) else a
        im = a.imag if isinstance(a, complex) else a - a
        rows.append((q, _scalar_str(re), _scalar_str(im)))
    _write_csv(args.out, ["q", "alpha_re", "alpha_im"], rows)
    return EXIT_OK


def cmd_szego1d(args) -> int:
    density = density_from_config(_load_json(args.config))
    report = szego_asymptote_1d(density, range(1, args.qmax + 1))
    rows = [(r.q, repr(r.norm), repr(r.predicted), repr(r.ratio))
            for r in report.rows]
    _write_csv(args.out, ["q", "norm", "predicted", "ratio"], rows)
    if args.verbose:
        print(f"szego constant (2^-q form): {report.szego_constant!r}", file=sys.stderr)
        print(f"alt constant (2^+q form):  {report.alt_constant!r}", file=sys.stderr)
    return EXIT_OK


def cmd_hankel(args) -> int:
    family = _family(args.config, args.backend)
    payload = []
    for q in range(1, args.qmax + 1):
        report = hankel_determinant(family, q, threads=args.threads)
        row = {"q": q, "dimension": report.dimension, "backend": report.backend}
        if family.backend == RATIONAL:
            row["det"] = str(report.determinant)
        row["logdet"] = None if report.log_determinant == -math.inf \
            else report.log_determinant
        if report.singular is not None:
            row["singular_word"] = word_to_text(report.singular)
        payload.append(row)
    if args.dump_matrix:
        idx, rows = gram_matrix(family, args.qmax, threads=args.threads)
        payload.append({
            "matrix_cut": args.qmax,
            "index_words": [word_to_text(w) for w in idx],
            "entries": [[_scalar_str(v) for v in row] for row in rows],
        })
    _emit_json(args.out, payload)
    return EXIT_OK


def cmd_entropy(args) -> int:
    family = _family(args.config, args.backend)
    n = args.n or family.n
    payload = {"n": n, "truncation": args.truncation,
               "backend": family.backend, "variables": []}
    for law in family.marginals:
        est = entropy_number(law, n, truncation=args.truncation)
        entry = {
            "law": law.name,
            "value": est.value,
            "tail_bound": est.tail_bound,
            "route": est.route,
        }
        if law.kind == "selfadjoint":
            alt = entropy_from_jacobi(jacobi_coefficients(law, args.truncation), n)
            entry["jacobi_route"] = alt.value
            entry["jacobi_route_alt_prefactor"] = alt.variant_value
        else:
            alt = entropy_from_verblunsky(
                verblunsky_coefficients(law, args.truncation), n)
            entry["verblunsky_route"] = alt.value
            entry["verblunsky_route_alt_prefactor"] = alt.variant_value
        payload["variables"].append(entry)
    prediction = limit_prediction(family, truncation=args.truncation)
    payload["limit_prediction"] = prediction.value
    payload["limit_tail_bound"] = prediction.tail_bound
    _emit_json(args.out, payload)
    return EXIT_OK


def cmd_limit(args) -> int:
    family = _family(args.config, args.backend)
    trace = convergence_trace(
        family,
        q_direct_max=args.q_direct,
        q_factored_max=args.q_factored,
        truncation=args.truncation,
        threads=args.threads,
    )
    if args.out:
        trace.write_csv(args.out)
    else:
        rows = [(r.q, r.route, repr(r.level_log_scaled), repr(r.determinant_ratio),
                 repr(r.predicted), repr(r.gap),
                 "" if r.crosscheck_delta is None else repr(r.crosscheck_delta))
                for r in trace.rows]
        _write_csv(None, ["q", "route", "ln_sq_scaled", "lnD_ratio",
                          "predicted", "gap", "crosscheck_delta"], rows)
    delta = trace.max_crosscheck_delta()
    if delta > args.route_tol:
        print(f"route mismatch: max |direct - factored| = {delta!r} "
              f"exceeds {args.route_tol!r}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_selftest(args) -> int:
    failures = selftest_mod.run_selftest(seed=args.seed)
    return EXIT_OK if failures == 0 else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fpsz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        return p

    p = add("moment", cmd_moment, "trace of a word in a free family")
    p.add_argument("--config", required=True, help="family config JSON")
    p.add_argument("--word", required=True, help='word text, e.g. "x1^2 x2 x1"')
    p.add_argument("--backend", choices=["rational", "float"])

    p = add("jacobi", cmd_jacobi, "three-term recurrence coefficients")
    p.add_argument("--config", required=True, help="law (or 1-variable family) config")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--output", choices=["csv"], default="csv",
                   help=argparse.SUPPRESS)

    p = add("verblunsky", cmd_verblunsky, "circle reflection coefficients")
    p.add_argument("--config", required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--out", help="CSV path (default stdout)")

    p = add("szego1d", cmd_szego1d, "one-variable norm asymptote report")
    p.add_argument("--config", required=True, help="density config JSON")
    p.add_argument("--qmax", type=int, default=20)
    p.add_argument("--out", help="CSV path (default stdout)")
    p.add_argument("--verbose", action="store_true")

    p = add("hankel", cmd_hankel, "Gram determinants over length cuts")
    p.add_argument("--config", required=True)
    p.add_argument("--qmax", type=int, default=4)
    p.add_argument("--backend", choices=["rational", "float"])
    p.add_argument("--output", choices=["json"], default="json",
                   help=argparse.SUPPRESS)
    p.add_argument("--out", help="JSON path (default stdout)")
    p.add_argument("--dump-matrix", action="store_true",
                   help="append the full Gram matrix of the largest cut")
    p.add_argument("--threads", type=int)

    p = add("entropy", cmd_entropy, "entropy numbers by every applicable route")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int, help="override the series base n")
    p.add_argument("--truncation", "-J", type=int, default=40)
    p.add_argument("--backend", choices=["rational", "float"])
    p.add_argument("--out", help="JSON path (default stdout)")

    p = add("limit", cmd_limit, "determinant-growth convergence trace")
    p.add_argument("--config", required=True)
    p.add_argument("--q-direct", type=int, default=0)
    p.add_argument("--q-factored", type=int, default=20)
    p.add_argument("--truncation", "-J", type=int, default=40)
    p.add_argument("--route-tol", type=float, default=1e-9)
    p.add_argument("--backend", choices=["rational", "float"])
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="CSV path (default stdout)")

    p = add("selftest", cmd_selftest, "run the built-in invariant suite")
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except SystemExit_ as exc:
        if exc.message:
            print(exc.message, file=sys.stderr)
        return exc.code
    except (ConfigError, InvalidMoments, EnumerationCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DegenerateAt, DegenerateLaw) as exc:
        print(f"degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (OrderUnsupported,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (QuadratureFailure, NotClassG) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except FpszError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    raise SystemExit(main())
