"""Command-line interface: kernel evaluation, norm queries, verification suites.

Exit codes: 0 all checks passed, 1 evaluation/verification failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .domains import PointPair
from .errors import BergkernError
from .hypergeo import TruncationPolicy
from .kernels import (KERNEL_POLICY, kernel_closed_d1_nu, kernel_closed_d2_nu,
                      kernel_series_d1_nu, kernel_series_d2_nu,
                      kernel_series_ellipsoid_nu)
from .norms import norm_d1, norm_d2, norm_quadrature
from .domains import DomainSpec
from .suites import run_identity_suite, run_kernel_suite, run_norm_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _complex_vector(text: str) -> tuple[complex, ...]:
    try:
        return tuple(complex(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex vector {text!r}: {exc}")


def _float_vector(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float vector {text!r}: {exc}")


def _int_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer vector {text!r}: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bergkern",
        description="Evaluate and verify Bergman kernels of two Reinhardt "
                    "domains and of complex ellipsoids.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a kernel at a point pair or nu vector")
    ev.add_argument("--domain", required=True, choices=("d1", "d2", "ellipsoid"))
    ev.add_argument("--p", type=_float_vector,
                    help="d1: scalar exponent; ellipsoid: comma-separated exponents")
    ev.add_argument("--lambda", dest="lam", type=float, help="d1 exponent lambda")
    ev.add_argument("--nu", type=_complex_vector,
                    help="Hermitian products, e.g. 0.25,0,0 or 0.1+0.2j,0,0")
    ev.add_argument("--z", type=_complex_vector, help="first point of a pair")
    ev.add_argument("--zeta", type=_complex_vector, help="second point of a pair")
    ev.add_argument("--method", choices=("closed", "series"), default="closed")
    ev.add_argument("--max-degree", type=int, default=KERNEL_POLICY.max_total_degree)
    ev.add_argument("--tail-tol", type=float, default=KERNEL_POLICY.tail_tol)

    nm = sub.add_parser("norm", help="closed-form monomial norm, optionally vs oracle")
    nm.add_argument("--domain", required=True, choices=("d1", "d2"))
    nm.add_argument("--alpha", required=True, type=_int_vector)
    nm.add_argument("--p", type=_float_vector)
    nm.add_argument("--lambda", dest="lam", type=float)
    nm.add_argument("--oracle", action="store_true",
                    help="also run the quadrature oracle and report the difference")
    nm.add_argument("--tol", type=float, default=1e-8,
                    help="pass/fail tolerance for --oracle comparison")

    vf = sub.add_parser("verify", help="run a verification suite and write a report")
    vf.add_argument("suite", choices=("identities", "norms", "kernels"))
    vf.add_argument("--domain", choices=("d1", "d2", "ellipsoid"), default="d2")
    vf.add_argument("--p", type=_float_vector)
    vf.add_argument("--lambda", dest="lam", type=float)
    vf.add_argument("--trials", type=int, default=200)
    vf.add_argument("--points", type=int, default=50)
    vf.add_argument("--seed", type=int, default=7)
    vf.add_argument("--margin", type=float, default=0.2)
    vf.add_argument("--tol", type=float, default=None,
                    help="row tolerance (defaults: identities 1e-10, norms 1e-8, "
                         "kernels 1e-6; recurrence rows always 1e-9)")
    vf.add_argument("--tail-tol", type=float, default=None,
                    help="series stop tolerance (identities 1e-13, kernels 1e-10)")
    vf.add_argument("--max-degree", type=int, default=400)
    vf.add_argument("--max-index", type=int, default=None)
    vf.add_argument("--format", choices=("json", "csv"), default="json")
    vf.add_argument("--out", default=None, help="report path (default: stdout)")
    return parser


def _scalar_p(args, default=None):
    if args.p is None:
        return default
    if len(args.p) != 1:
        raise ValueError("--p must be a single value for this domain")
    return args.p[0]


def _cmd_eval(args) -> int:
    if args.nu is not None and (args.z is not None or args.zeta is not None):
        raise ValueError("give either --nu or the pair --z/--zeta, not both")
    if args.nu is not None:
        nu = args.nu
    elif args.z is not None and args.zeta is not None:
        nu = PointPair(args.z, args.zeta).nu
    else:
        raise ValueError("eval needs --nu or both --z and --zeta")

    policy = TruncationPolicy(max_total_degree=args.max_degree, tail_tol=args.tail_tol)
    if args.domain == "d2":
        kv = kernel_closed_d2_nu(nu) if args.method == "closed" \
            else kernel_series_d2_nu(nu, policy)
    elif args.domain == "d1":
        p = _scalar_p(args)
        if p is None or args.lam is None:
            raise ValueError("--domain d1 needs --p and --lambda")
        kv = kernel_closed_d1_nu(nu, p, args.lam) if args.method == "closed" \
            else kernel_series_d1_nu(nu, p, args.lam, policy)
    else:
        if args.method == "closed":
            raise ValueError("the ellipsoid kernel is series-only")
        if args.p is None:
            raise ValueError("--domain ellipsoid needs --p (integer exponents)")
        kv = kernel_series_ellipsoid_nu(nu, args.p, policy)

    print(f"value = {kv.value!r}")
    print(f"method = {kv.method}")
    if kv.tail_estimate is not None:
        print(f"tail_estimate = {kv.tail_estimate:.6e}")
    return EXIT_OK


def _cmd_norm(args) -> int:
    if args.domain == "d2":
        spec = DomainSpec.d2()
        closed = norm_d2(args.alpha)
    else:
        p = _scalar_p(args)
        if p is None or args.lam is None:
            raise ValueError("--domain d1 needs --p and --lambda")
        spec = DomainSpec.d1(p, args.lam)
        closed = norm_d1(args.alpha, p, args.lam)
    print(f"norm = {closed!r}")
    if args.oracle:
        oracle = norm_quadrature(spec, args.alpha)
        rel = abs(closed - oracle) / abs(oracle)
        print(f"oracle = {oracle!r}")
        print(f"rel_err = {rel:.6e}")
        if rel > args.tol:
            print(f"FAIL: rel_err above {args.tol}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def _cmd_verify(args) -> int:
    if args.suite == "identities":
        report = run_identity_suite(
            trials=args.trials, seed=args.seed,
            tol=1e-10 if args.tol is None else args.tol,
            tail_tol=1e-13 if args.tail_tol is None else args.tail_tol,
            max_degree=args.max_degree)
    elif args.suite == "norms":
        if args.domain == "ellipsoid":
            raise ValueError("norm suite supports d1 and d2 only")
        report = run_norm_suite(
            domain=args.domain, max_index=args.max_index,
            tol=1e-8 if args.tol is None else args.tol,
            p=_scalar_p(args), lam=args.lam)
    else:
        if args.domain == "ellipsoid":
            scalar_p, exps = None, (tuple(int(v) for v in args.p)
                                    if args.p is not None else (1, 1))
        else:
            scalar_p, exps = _scalar_p(args), (1, 1)
        report = run_kernel_suite(
            domain=args.domain, p=scalar_p, lam=args.lam, exponents=exps,
            points=args.points, seed=args.seed, margin=args.margin,
            tol=1e-6 if args.tol is None else args.tol,
            tail_tol=1e-10 if args.tail_tol is None else args.tail_tol,
            max_degree=args.max_degree)

    payload = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        print(payload)

    summary = report.summary()
    print(f"suite={report.suite} total={summary['total']} passed={summary['passed']} "
          f"failed={summary['failed']} max_rel_err={summary['max_rel_err']:.3e} "
          f"informational={len(report.informational)}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_FAIL


_VECTOR_FLAGS = {"--alpha", "--nu", "--z", "--zeta", "--p"}


def _normalize_argv(argv) -> list[str]:
    """Join vector flags with leading-dash values (e.g. --alpha -2,0,0) so
    argparse does not mistake the value for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VECTOR_FLAGS and nxt is not None and nxt.startswith("-") \
                and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_normalize_argv(sys.argv[1:] if argv is None else list(argv)))
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "norm":
            return _cmd_norm(args)
        return _cmd_verify(args)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BergkernError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
