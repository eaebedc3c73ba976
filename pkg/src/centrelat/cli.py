"""Batch interface: generate instances, run verification suites, compute
spectral objects.

Subcommands:
    gen     deterministic instance generation (atomic or sequence mode)
    verify  run theorem-verification suites over instance files
    calc    compute a spectral artifact for one operator

Reports stream one JSON object per line.  Exit codes: 0 success, 1 failed
check or non-central input, 2 usage/unreadable input.  CENTRELAT_THREADS
caps suite parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import io as cio
from .generate import (
    random_central,
    random_lattice,
    random_measure,
    random_projection_measure,
    random_regular,
)
from .operators import is_central, polar
from .sequence import BUILTIN_RULES, freudenthal_net
from .spectral import build_mu_T, eigen_expansion, freudenthal_approx, rho_T, spectrum
from .suites import SUITES, Record, SuiteReport, Tolerances, run_suites

CALC_FUNCTIONS = {
    "identity": lambda v: v,
    "conj": lambda v: v.conjugate(),
    "abs": lambda v: abs(v),
    "square": lambda v: v * v,
    "sqrt": lambda v: complex(v) ** 0.5,
    "one": lambda v: 1.0,
}


def _parse_dims(text: str) -> tuple[int, int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"invalid dim range {text!r}")
    return lo, hi


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def cmd_gen(args) -> int:
    try:
        lo, hi = _parse_dims(args.dim)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.count < 1:
        print("error: --count must be positive", file=sys.stderr)
        return 2
    rng = np.random.default_rng(args.seed)
    instances = []
    if args.mode == "sequence":
        if args.rule not in BUILTIN_RULES:
            print(f"error: unknown sequence rule {args.rule!r}", file=sys.stderr)
            return 2
        for _ in range(args.count):
            instances.append({"kind": "sequence",
                              "sequence": cio.sequence_to_json(BUILTIN_RULES[args.rule]())})
    else:
        for _ in range(args.count):
            dim = int(rng.integers(lo, hi + 1))
            lattice = random_lattice(rng, dim)
            instances.append({
                "kind": "atomic",
                "lattice": cio.lattice_to_json(lattice),
                "central": cio.operator_to_json(random_central(rng, lattice=lattice)),
                "regular": cio.operator_to_json(random_regular(rng, lattice=lattice)),
                "measure": cio.measure_to_json(random_measure(rng, dim=dim)),
                "spectral_measure": cio.measure_to_json(
                    random_projection_measure(rng, dim)),
            })
    text = _dump({"instances": instances})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _load_instances(paths) -> dict:
    bag: dict[str, list] = {"central": [], "regular": [], "measure": [],
                            "spectral_measure": [], "sequence": []}
    for path in paths:
        with open(path) as fh:
            doc = json.load(fh)
        for inst in doc.get("instances", []):
            if inst.get("kind") == "sequence":
                bag["sequence"].append(cio.sequence_from_json(inst["sequence"]))
                continue
            if "central" in inst:
                bag["central"].append(cio.operator_from_json(inst["central"]))
            if "regular" in inst:
                bag["regular"].append(cio.operator_from_json(inst["regular"]))
            if "measure" in inst:
                bag["measure"].append(cio.measure_from_json(inst["measure"]))
            if "spectral_measure" in inst:
                bag["spectral_measure"].append(
                    cio.measure_from_json(inst["spectral_measure"]))
    return bag


def cmd_verify(args) -> int:
    suites = args.suite or list(SUITES)
    if suites == ["none"]:
        print(_dump({"pass": True, "suites": [], "n_failed": 0}))
        return 0
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        print(f"error: unknown suite {unknown[0]!r}", file=sys.stderr)
        return 2
    try:
        instances = _load_instances(args.instances)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"error: cannot read instances: {exc}", file=sys.stderr)
        return 2
    tol = Tolerances(exact=args.tol_exact, oracle=args.tol_oracle)
    threads = max(1, int(os.environ.get("CENTRELAT_THREADS", "1")))

    if threads == 1 or len(suites) == 1:
        reports = run_suites(suites, instances, tol, seed=args.seed)
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(run_suites, [name], instances, tol, args.seed)
                       for name in suites]
            reports = [f.result()[0] for f in futures]

    first_failure: Record | None = None
    for report in reports:
        # merge deterministically by instance digest order within each suite
        for record in sorted(report.records, key=lambda r: (r.instance, r.check)):
            print(_dump(record.to_json()))
            if not record.ok and first_failure is None:
                first_failure = record
        print(_dump(report.to_json()))
    overall = all(r.passed for r in reports)
    summary = {"pass": overall, "suites": [r.suite for r in reports],
               "n_failed": sum(sum(not rec.ok for rec in r.records) for r in reports)}
    if first_failure is not None:
        summary["first_failure"] = first_failure.to_json()
    print(_dump(summary))
    return 0 if overall else 1


def cmd_calc(args) -> int:
    try:
        with open(args.operator) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read operator: {exc}", file=sys.stderr)
        return 2

    if "instances" in doc:
        # accept a gen-produced bundle: use its first instance
        inst = doc["instances"][0]
        doc = inst.get("sequence", inst.get("central", inst))
        if "rule" in doc:
            doc = {"sequence": doc}

    if "sequence" in doc or doc.get("kind") == "sequence":
        op = cio.sequence_from_json(doc.get("sequence", doc))
        if args.request != "freudenthal":
            print("error: only the freudenthal request supports sequence operators",
                  file=sys.stderr)
            return 2
        net = freudenthal_net(op, args.eps)
        print(_dump({"freudenthal": {
            "coefficients": [[c.real, c.imag] for c in net.coefficients],
            "breakpoint": net.breakpoint,
            "error": net.certified_error,
        }}))
        return 0

    parsed = cio.operator_from_json(doc)
    if hasattr(parsed, "entries"):
        verdict = is_central(parsed)
        if not verdict:
            print(_dump({"error": "operator is not central",
                         "max_off_diagonal": verdict.max_off_diagonal,
                         "where": list(verdict.where)}))
            return 1
        T = verdict.operator
    else:
        T = parsed

    if args.request == "spectrum":
        spec = spectrum(T)
        print(_dump({"spectrum": [[v.real, v.imag] for v in spec.attained]}))
    elif args.request == "mu_t":
        mu = build_mu_T(T)
        print(_dump({"mu_t": {str([v.real, v.imag]): [float(x) for x in p]
                              for v, p in zip(mu.values, mu.projections)}}))
    elif args.request == "rho":
        fn = CALC_FUNCTIONS.get(args.fn)
        if fn is None:
            print(f"error: unknown function {args.fn!r}", file=sys.stderr)
            return 2
        print(_dump({"rho": cio.operator_to_json(rho_T(T, fn))}))
    elif args.request == "polar":
        p = polar(T)
        print(_dump({"polar": {"positive": cio.operator_to_json(p.positive),
                               "unitary": cio.operator_to_json(p.unitary)}}))
    elif args.request == "eigen":
        exp = eigen_expansion(T)
        print(_dump({"eigen": [{"value": [lam.real, lam.imag],
                                "projection": [float(x.real) for x in p.symbol]}
                               for lam, p in exp.pairs]}))
    elif args.request == "freudenthal":
        approx = freudenthal_approx(T, args.eps)
        print(_dump({"freudenthal": {
            "coefficients": [[c.real, c.imag] for c in approx.coefficients],
            "error": approx.error,
        }}))
    else:
        print(f"error: unknown request {args.request!r}", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="centrelat")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate deterministic instances")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--dim", default="4", help="dimension or range lo..hi")
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--mode", choices=["atomic", "sequence"], default="atomic")
    g.add_argument("--rule", default="reciprocal", help="builtin sequence rule")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="run verification suites over instance files")
    v.add_argument("instances", nargs="+")
    v.add_argument("--suite", action="append", default=None)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol-exact", type=float, default=1e-12)
    v.add_argument("--tol-oracle", type=float, default=1e-9)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("calc", help="compute a spectral artifact for one operator")
    c.add_argument("request",
                   choices=["spectrum", "mu_t", "rho", "polar", "eigen", "freudenthal"])
    c.add_argument("operator", help="operator instance file")
    c.add_argument("--fn", default="identity", help="named function for rho")
    c.add_argument("--eps", type=float, default=0.1)
    c.set_defaults(func=cmd_calc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
