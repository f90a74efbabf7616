"""Command-line front end: catalog constructors, fusion/exchange pipelines,
residual verification, classical limits, Macdonald tools, and the
acceptance-table runner.

Batch only; artifacts are canonical JSON on stdout or a file, logs go to
stderr.  Exit codes: 0 all checks pass, 1 a check failed, 2 usage errors,
3 precondition violations.  DYBAX_WORKERS > 1 fans the independent checks
of `verify-suite` out to a process pool.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import serialize
from .catalog import (
    BDTriple,
    CatalogError,
    appendixA_r,
    basic_rational_r,
    basic_trig_r,
    classical_r_trig_X,
    classical_r_zero_coupling,
    glN_closed_forms,
    quantum_R_X,
    quantum_R_eps_X,
)
from .fusion import (
    abrr_fusion,
    classical_limit,
    exchange_matrix,
    fusion_exchange_construction,
    shapovalov_vs_fusion,
)
from .macdonald import (
    corollary91_check,
    macdonald_operator,
    macdonald_polynomial,
    mr_residual,
    symmetry_residuals,
)
from .reps import ext_power, sym_power, vector_rep
from .rootdata import RootDatumError, build_type_A
from .scalars import ScalarError
from .verify import (
    PreconditionError,
    VerifyError,
    cdybe_residual,
    dynamical_hecke_rep,
    hecke_check,
    qdybe_residual,
    unitarity_check,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


@dataclass
class JobSpec:
    """A parsed job: subcommand plus every knob it takes.  Round-trips
    through its JSON encoding unchanged (tested), so jobs can be stored and
    replayed."""

    command: str
    options: dict = field(default_factory=dict)

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(command=data["command"], options=dict(data["options"]))

    @classmethod
    def from_args(cls, args):
        options = {k: v for k, v in sorted(vars(args).items())
                   if k != "func" and v is not None}
        command = options.pop("command")
        return cls(command=command, options=options)

    def argv(self):
        out = [self.command]
        positional = {"catalog": "name", "verify": "equation",
                      "macdonald": "action"}.get(self.command)
        opts = dict(self.options)
        if positional and positional in opts:
            out.append(str(opts.pop(positional)))
        for k, v in sorted(opts.items()):
            flag = "--" + k.replace("_", "-")
            if isinstance(v, bool):
                if v:
                    out.append(flag)
            else:
                out.extend([flag, str(v)])
        return out


def _emit(args, payload):
    text = serialize.dumps(payload)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_subset(text):
    if not text:
        return []
    return [int(x) for x in text.split(",") if x != ""]


def _datum(args):
    return build_type_A(args.n, args.flavor)


def _classical_catalog(args):
    name = args.name
    datum = build_type_A(args.n, args.flavor)
    if name == "basic-rational":
        return basic_rational_r(datum)
    if name == "basic-trig":
        return basic_trig_r(datum)
    if name == "r-l":
        roots = []
        for chunk in (args.roots or "").split(";"):
            if chunk:
                roots.append(tuple(Fraction(x) for x in chunk.split(",")))
        return classical_r_zero_coupling(datum, roots)
    if name == "r-eps-X":
        return classical_r_trig_X(datum, [x - 1 for x in _parse_subset(args.X)])
    if name == "appA":
        gamma1 = [x - 1 for x in _parse_subset(args.gamma1)]
        gamma2 = [x - 1 for x in _parse_subset(args.gamma2)]
        tau = dict(zip(gamma1, gamma2))
        l_basis = []
        for chunk in (args.l_basis or "").split(";"):
            if chunk:
                l_basis.append(tuple(Fraction(x) for x in chunk.split(",")))
        triple = BDTriple(datum, gamma1, gamma2, tau, l_basis)
        return appendixA_r(triple)
    raise argparse.ArgumentTypeError(f"unknown classical catalog name {name}")


def _quantum_catalog(args):
    if args.name == "R-X":
        return quantum_R_X(args.n, _parse_subset(args.X))
    if args.name == "R-eps-X":
        return quantum_R_eps_X(args.n, _parse_subset(args.X))
    if args.name == "gl-closed-form":
        j, r = glN_closed_forms(args.n, args.quantum)
        return r if args.part == "R" else j
    raise argparse.ArgumentTypeError(f"unknown quantum catalog name {args.name}")


CLASSICAL_NAMES = ("basic-rational", "basic-trig", "r-l", "r-eps-X", "appA")
QUANTUM_NAMES = ("R-X", "R-eps-X", "gl-closed-form")


def cmd_datum(args):
    _emit(args, serialize.datum_json(_datum(args)))
    return EXIT_OK


def cmd_module(args):
    datum = _datum(args)
    module = _module(datum, args.spec, args.quantum)
    _emit(args, serialize.module_json(module))
    return EXIT_OK


def cmd_catalog(args):
    if args.name in CLASSICAL_NAMES:
        rmat = _classical_catalog(args)
        _emit(args, serialize.classical_r_json(rmat))
    else:
        op = _quantum_catalog(args)
        _emit(args, serialize.dynop_json(op, name=args.name))
    return EXIT_OK


def _module(datum, spec, quantum):
    if spec == "vec":
        return vector_rep(datum, quantum)
    if spec.startswith("sym"):
        return sym_power(vector_rep(datum, quantum), int(spec[3:]))
    if spec.startswith("ext"):
        return ext_power(vector_rep(datum, quantum), int(spec[3:]))
    raise argparse.ArgumentTypeError(f"unknown module spec {spec}")


def cmd_fusion(args):
    datum = _datum(args)
    specs = (args.modules or "vec,vec").split(",")
    m1 = _module(datum, specs[0], args.quantum)
    m2 = _module(datum, specs[1], args.quantum)
    payload = {"schema": serialize.SCHEMA, "kind": "fusion-result"}
    status = EXIT_OK
    if args.method in ("exchange", "both"):
        j = fusion_exchange_construction(m1, m2)
        payload["J_exchange"] = serialize.dynop_json(j, "J (intertwiners)")
        payload["R"] = serialize.dynop_json(exchange_matrix(m1, m2), "R")
    if args.method in ("abrr", "both"):
        ja = abrr_fusion(m1, m2)
        payload["J_abrr"] = serialize.dynop_json(ja, "J (ABRR)")
    if args.method == "both":
        agree = (j.mat - ja.mat).is_zero
        payload["methods_agree"] = agree
        if not agree:
            status = EXIT_CHECK_FAILED
    _emit(args, payload)
    return status


def cmd_verify(args):
    reports = []
    if args.equation == "qdybe":
        op = _quantum_catalog(args)
        reports.append(qdybe_residual(op, name=args.name))
    elif args.equation == "hecke":
        op = _quantum_catalog(args)
        q = op.ctx.one if args.name == "R-X" else op.ctx.s ** 2
        reports.append(hecke_check(op, q, name=args.name))
    elif args.equation == "cdybe":
        rmat = _classical_catalog(args)
        reports.append(cdybe_residual(rmat))
    elif args.equation == "unitarity":
        rmat = _classical_catalog(args)
        reports.append(unitarity_check(rmat))
    elif args.equation == "hecke-rep":
        op = _quantum_catalog(args)
        q = op.ctx.one if args.name == "R-X" else op.ctx.s ** 2
        _, rep = dynamical_hecke_rep(op, args.p, q, name=args.name)
        reports.append(rep)
    else:
        raise argparse.ArgumentTypeError(f"unknown equation {args.equation}")
    payload = {"schema": serialize.SCHEMA, "kind": "verification",
               "reports": [serialize.report_json(r) for r in reports]}
    _emit(args, payload)
    return EXIT_OK if all(r.exact_zero for r in reports) else EXIT_CHECK_FAILED


def _suite_case(case):
    kind, n, subset = case
    if kind == "R-X":
        op = quantum_R_X(n, subset)
        ok = qdybe_residual(op).exact_zero and hecke_check(op, op.ctx.one).exact_zero
    else:
        op = quantum_R_eps_X(n, subset)
        ok = qdybe_residual(op).exact_zero and \
            hecke_check(op, op.ctx.s ** 2).exact_zero
    return (kind, n, tuple(subset), ok)


def cmd_verify_suite(args):
    """QDYBE + Hecke for every X subset of {1..n}, both quantum families."""
    cases = []
    for n in range(2, args.n + 1):
        subsets = []
        for mask in range(1 << n):
            subsets.append([i + 1 for i in range(n) if mask >> i & 1])
        for subset in subsets:
            cases.append(("R-X", n, subset))
            cases.append(("R-eps-X", n, subset))
    workers = int(os.environ.get("DYBAX_WORKERS", "1"))
    if workers > 1:
        import multiprocessing
        with multiprocessing.Pool(workers) as pool:
            results = pool.map(_suite_case, cases)
    else:
        results = [_suite_case(c) for c in cases]
    payload = {"schema": serialize.SCHEMA, "kind": "verification-suite",
               "results": [{"family": k, "n": n, "X": list(x), "pass": ok}
                           for (k, n, x, ok) in results]}
    _emit(args, payload)
    return EXIT_OK if all(ok for (_, _, _, ok) in results) else EXIT_CHECK_FAILED


def cmd_limit(args):
    op = _quantum_catalog(args)
    mats = classical_limit(op, args.order)
    payload = serialize.gamma_series_json(mats, name=f"{args.name} gamma-series")
    status = EXIT_OK
    if args.check_eq4:
        from .catalog import basic_trig_r
        datum = build_type_A(args.n, "gl")
        v = vector_rep(datum)
        r_eps = basic_trig_r(datum).evaluate(v, v)
        ident_ok = mats[0].is_identity()
        order1 = mats[1] + r_eps.mat
        payload["constant_term_is_identity"] = ident_ok
        payload["order_gamma_matches_minus_r_eps"] = order1.is_zero
        if not (ident_ok and order1.is_zero):
            status = EXIT_CHECK_FAILED
    _emit(args, payload)
    return status


def cmd_shapovalov(args):
    datum = build_type_A(2, "sl")
    residuals = shapovalov_vs_fusion(datum, args.depth, args.quantum)
    ok = all(r.is_zero for r in residuals)
    payload = {"schema": serialize.SCHEMA, "kind": "shapovalov-comparison",
               "depth": args.depth, "quantum": args.quantum,
               "residuals": [r.to_text() for r in residuals], "pass": ok}
    _emit(args, payload)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_macdonald(args):
    if args.action == "operator":
        op = macdonald_operator(args.n, args.r, args.m)
        _emit(args, serialize.diffop_json(op, f"M_{args.r} (n={args.n}, m={args.m})"))
        return EXIT_OK
    if args.action == "polynomial":
        mu = tuple(int(x) for x in args.mu.split(","))
        coeffs = macdonald_polynomial(args.n, mu, args.m)
        payload = {"schema": serialize.SCHEMA, "kind": "macdonald-polynomial",
                   "mu": list(mu), "m": args.m,
                   "monomial_coefficients": {
                       ",".join(map(str, nu)): c.to_text()
                       for nu, c in sorted(coeffs.items())}}
        _emit(args, payload)
        return EXIT_OK
    if args.action == "commute":
        ok = True
        for r in range(1, args.n + 1):
            for s in range(r + 1, args.n + 1):
                a = macdonald_operator(args.n, r, args.m)
                b = macdonald_operator(args.n, s, args.m)
                ok = ok and (a * b - b * a).is_zero
        _emit(args, {"schema": serialize.SCHEMA, "kind": "macdonald-commute",
                     "n": args.n, "m": args.m, "pass": ok})
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.action == "corollary91":
        ok, lhs, rhs = corollary91_check(2, 1, args.m)
        payload = {"schema": serialize.SCHEMA, "kind": "corollary-9-1",
                   "m": args.m, "pass": ok,
                   "lhs": serialize.diffop_json(lhs, "transfer side"),
                   "rhs": serialize.diffop_json(rhs, "macdonald side")}
        _emit(args, payload)
        return EXIT_OK if ok else EXIT_CHECK_FAILED
    if args.action == "trace-residual":
        _, ok1 = mr_residual(args.depth, 2 * args.order)
        _, ok2 = mr_residual(args.depth, 2 * args.order, dual_side=True)
        bad = symmetry_residuals(args.depth, args.biorder)
        payload = {"schema": serialize.SCHEMA, "kind": "trace-residuals",
                   "macdonald_ruijsenaars": ok1, "dual": ok2,
                   "symmetry_mismatches": [list(b) for b in bad]}
        _emit(args, payload)
        return EXIT_OK if ok1 and ok2 and not bad else EXIT_CHECK_FAILED
    raise argparse.ArgumentTypeError(f"unknown macdonald action {args.action}")


def cmd_acceptance(args):
    from . import acceptance
    results = acceptance.run(args.criterion)
    for name, ok, seconds in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  ({seconds:.1f}s)",
              file=sys.stderr)
    return EXIT_OK if all(ok for _, ok, _ in results) else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dybax",
        description="exact workbench for dynamical Yang-Baxter structures")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, flavor_default="gl"):
        p.add_argument("--n", type=int, default=2)
        p.add_argument("--flavor", choices=("gl", "sl"), default=flavor_default)
        p.add_argument("--output", "-o", default=None)

    p = sub.add_parser("datum", help="dump a type-A root datum")
    common(p)
    p.set_defaults(func=cmd_datum)

    p = sub.add_parser("module", help="dump a weight module")
    common(p)
    p.add_argument("--spec", default="vec")
    p.add_argument("--quantum", action="store_true")
    p.set_defaults(func=cmd_module)

    p = sub.add_parser("catalog", help="construct a solution family")
    p.add_argument("name", choices=CLASSICAL_NAMES + QUANTUM_NAMES)
    common(p)
    p.add_argument("--X", default="")
    p.add_argument("--roots", default="")
    p.add_argument("--gamma1", default="")
    p.add_argument("--gamma2", default="")
    p.add_argument("--l-basis", dest="l_basis", default="")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--part", choices=("J", "R"), default="R")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("fusion", help="fusion/exchange matrices by either pipeline")
    common(p, flavor_default="sl")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--modules", default="vec,vec")
    p.add_argument("--method", choices=("exchange", "abrr", "both"), default="both")
    p.set_defaults(func=cmd_fusion)

    p = sub.add_parser("verify", help="exact residual check of one equation")
    p.add_argument("equation",
                   choices=("qdybe", "cdybe", "hecke", "unitarity", "hecke-rep"))
    p.add_argument("--catalog", dest="name", required=True)
    common(p)
    p.add_argument("--X", default="")
    p.add_argument("--roots", default="")
    p.add_argument("--gamma1", default="")
    p.add_argument("--gamma2", default="")
    p.add_argument("--l-basis", dest="l_basis", default="")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--part", choices=("J", "R"), default="R")
    p.add_argument("--p", type=int, default=3)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-suite",
                       help="QDYBE+Hecke for all X subsets up to rank n")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_verify_suite)

    p = sub.add_parser("limit", help="gamma-expansion of a quantum solution")
    p.add_argument("--catalog", dest="name", required=True,
                   choices=QUANTUM_NAMES)
    common(p)
    p.add_argument("--X", default="")
    p.add_argument("--quantum", action="store_true", default=True)
    p.add_argument("--part", choices=("J", "R"), default="R")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--check-eq4", action="store_true")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("shapovalov", help="inverse Shapovalov vs universal J(0)")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_shapovalov)

    p = sub.add_parser("macdonald", help="Macdonald operators and trace residuals")
    p.add_argument("action", choices=("operator", "polynomial", "commute",
                                      "corollary91", "trace-residual"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--mu", default="1,0")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--biorder", type=int, default=2)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_macdonald)

    p = sub.add_parser("acceptance", help="run the acceptance criteria")
    p.add_argument("--criterion", type=int, default=None)
    p.set_defaults(func=cmd_acceptance)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (PreconditionError,) as exc:
        print(f"precondition violation: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (CatalogError, VerifyError, RootDatumError, ScalarError,
            argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
