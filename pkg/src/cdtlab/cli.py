"""Command line front end.

Exit codes: 0 on success, 1 when a requested check or experiment fails,
2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import betasieve, chebotarev, densities, errorterms, quadforms, verify, weights


def _parse_form(args) -> "quadforms.Form":
    f = quadforms.Form(args.a, args.b, args.c)
    f.check_positive_definite()
    return f


def _emit(data, args) -> None:
    text = json.dumps(data, indent=2, default=str)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _cmd_classnum(args) -> int:
    h = quadforms.class_number_order(args.D, args.conductor)
    cl = quadforms.class_representatives(args.D * args.conductor**2)
    _emit(
        {
            "D0": args.D,
            "conductor": args.conductor,
            "D": args.D * args.conductor**2,
            "h": h,
            "forms": [list(f) for f in cl.representatives],
        },
        args,
    )
    return 0


def _cmd_count(args) -> int:
    f = _parse_form(args)
    if args.per_class:
        report = chebotarev.equidistribution_report(f.discriminant, args.x, args.workers)
        if args.csv:
            chebotarev.equidistribution_csv(report, args.csv)
        _emit(report, args)
        return 0
    count = chebotarev.count_prime_points(f, args.x, args.workers)
    _emit(
        {
            "form": list(f),
            "x": args.x,
            "lattice_points": count,
            "pi_class": count / quadforms.stab_order(f.discriminant),
        },
        args,
    )
    return 0


def _cmd_delta(args) -> int:
    f = _parse_form(args)
    P = densities.SievingModulus.from_int(args.modulus)
    d = densities.delta_f(f, P)
    _emit(
        {
            "form": list(f),
            "P": P.P,
            "delta": str(d),
            "delta_float": float(d),
            "obstructed": densities.represents_odd_primes_obstructed(f, P),
        },
        args,
    )
    return 0


def _cmd_sieve(args) -> int:
    support = tuple(int(p) for p in args.support.split(","))
    spec = betasieve.SieveSpec(
        z=args.z, R=args.R, kind=args.kind, kappa=args.kappa, support=support
    )
    w = betasieve.beta_sieve_weights(spec)
    _emit(
        {
            "kind": w.kind,
            "z": spec.z,
            "R": spec.R,
            "s": spec.s,
            "beta": spec.beta,
            "lambda": {str(d): lam for d, lam in sorted(w.lam.items())},
        },
        args,
    )
    return 0


def _cmd_weights(args) -> int:
    if args.epsilon is not None and args.ell is not None:
        params = weights.WeightParams(x=args.x, epsilon=args.epsilon, ell=args.ell)
    else:
        params = weights.WeightParams.standard_choice(args.x, args.n_K, args.c_ZDE)
    report = weights.verify_bounds(params)
    report["params"] = {"x": params.x, "epsilon": params.epsilon, "ell": params.ell}
    _emit(report, args)
    return 0 if report["ok"] else 1


def _cmd_bounds(args) -> int:
    model = errorterms.ErrorModel(D_K=args.D_K, n_K=args.n_K, Qcal=args.Q_cal)
    if args.beta1 is not None:
        model = model.with_siegel(args.beta1, args.theta1)
    out = {
        "Q": model.Q,
        "eta": errorterms.eta(args.x, model),
        "classical_error": errorterms.classical_error(args.x, model),
        "B1": errorterms.B1(args.x, model),
        "nu1": errorterms.nu1(model),
        "stark_floor": errorterms.stark_floor(model),
    }
    try:
        out["thm11_error"] = errorterms.thm11_error(args.x, model)
    except errorterms.ConfigurationError as exc:
        out["thm11_error"] = f"out of range: {exc}"
    if model.siegel.exists:
        try:
            out["siegel"] = errorterms.siegel_error(args.x, model)
        except errorterms.ConfigurationError as exc:
            out["siegel"] = f"out of range: {exc}"
    if args.csv:
        import csv as _csv

        with open(args.csv, "w", newline="") as fh:
            w = _csv.writer(fh)
            w.writerow(["x", "eta", "exp_neg_eta", "classical_error"])
            x = 10.0
            while x <= args.x:
                w.writerow(
                    [
                        x,
                        errorterms.eta(x, model),
                        math.exp(-errorterms.eta(x, model)),
                        errorterms.classical_error(x, model),
                    ]
                )
                x *= 10.0
    _emit(out, args)
    return 0


def _cmd_experiment(args) -> int:
    f = _parse_form(args)
    P = densities.SievingModulus.from_int(args.modulus)
    report = chebotarev.theorem15_experiment(
        f, P, args.x, workers=args.workers, tolerance=args.tolerance
    )
    text = report.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report.passed else 1


def _cmd_verify(args) -> int:
    checks = verify.run_checks(full=args.full, workers=args.workers)
    failed = 0
    for name, ok, detail in checks:
        print(f"[{'ok' if ok else 'FAIL'}] {name}: {detail}")
        failed += not ok
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cdtlab")
    sub = top.add_subparsers(dest="command", required=True)

    def add_form(p):
        p.add_argument("a", type=int)
        p.add_argument("b", type=int)
        p.add_argument("c", type=int)

    p = sub.add_parser("classnum", help="class number and reduced forms of an order")
    p.add_argument("D", type=int, help="fundamental discriminant, negative")
    p.add_argument("--conductor", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_classnum)

    p = sub.add_parser("count", help="primes represented by a form up to x")
    add_form(p)
    p.add_argument("x", type=float)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--per-class", action="store_true")
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("delta", help="coprimality density of a form")
    add_form(p)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_delta)

    p = sub.add_parser("sieve", help="beta-sieve weight table")
    p.add_argument("--z", type=float, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--kind", choices=("upper", "lower"), default="upper")
    p.add_argument("--kappa", type=float, default=1.0)
    p.add_argument("--support", required=True, help="comma-separated primes")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_sieve)

    p = sub.add_parser("weights", help="smoothed weight transform report")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--ell", type=int)
    p.add_argument("--n-K", type=int, default=2)
    p.add_argument("--c-ZDE", type=int, default=10)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_weights)

    p = sub.add_parser("bounds", help="analytic error bound calculus")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--D-K", type=float, default=3.0)
    p.add_argument("--n-K", type=int, default=2)
    p.add_argument("--Q-cal", type=float, default=1.0)
    p.add_argument("--beta1", type=float)
    p.add_argument("--theta1", type=int, default=1)
    p.add_argument("--csv")
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_bounds)

    p = sub.add_parser("experiment", help="sifted prime count vs prediction")
    add_form(p)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--tolerance", type=float, default=0.05)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_experiment)

    p = sub.add_parser("verify", help="run the internal invariant suites")
    p.add_argument("--full", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=_cmd_verify)

    return top


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, errorterms.ConfigurationError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
