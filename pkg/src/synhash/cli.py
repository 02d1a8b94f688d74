"""Command line front end.

Exit codes: 0 when every requested check holds (negative controls count as ok
when they fail, since failing is their job), 1 on a failed check or usage
error, 2 when a computation was refused because it exceeds the resource caps.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, replace

import numpy as np

from . import bounds
from .caps import DEFAULT_CAPS, Caps, CapExceeded
from .codes import DEFAULT_SEED, CodeEnsembleSpec, sample_uniform_code
from .distributions import DensePmf, ProductBernoulli, Source
from .field import FieldSpec
from .rm_lab import RmExperimentSpec, rm_convergence_run, rows_to_csv
from .suite import expected_failure, run_acceptance
from . import verify

__all__ = ["main", "app", "build_parser"]


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; code 2 is reserved for cap refusals
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _order(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(text)


def _index_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from exc


def _order_list(text: str) -> list[float]:
    try:
        return [_order(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}") from exc


def _m_values(text: str) -> tuple[int, ...]:
    text = text.strip()
    if ":" in text:
        lo, hi = text.split(":", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(part) for part in text.split(","))


def parse_source(text: str, field: FieldSpec, n: int, seed: int,
                 caps: Caps) -> Source:
    """uniform | point | random | bernoulli:<delta> | flat:<dims> | file:<path>"""
    if text == "uniform":
        return DensePmf.uniform(field, n, caps)
    if text == "point":
        return DensePmf.point_mass(field, n, caps=caps)
    if text == "random":
        return verify._random_pmf(field, n, (seed, 41, field.q, n))
    if text.startswith("bernoulli:"):
        if field.q != 2:
            raise ValueError("bernoulli sources need q = 2")
        return ProductBernoulli(float(text.partition(":")[2]), n)
    if text.startswith("flat:"):
        dims = int(text.partition(":")[2])
        if not 0 <= dims <= n:
            raise ValueError(f"flat source needs 0 <= dims <= {n}")
        return DensePmf.flat(field, n, field.q ** dims, caps)
    if text.startswith("file:"):
        P = DensePmf.read_qpmf(text.partition(":")[2])
        if P.field != field or P.n != n:
            raise ValueError(
                f"file holds a pmf on F_{P.field.q}^{P.n}, expected F_{field.q}^{n}")
        return P
    raise ValueError(f"unknown source {text!r}")


def build_parser() -> _Parser:
    main = _Parser(prog="synhash",
                   description="Syndrome hashing as a randomness extractor: "
                               "measures, bounds, and verification.")
    main.add_argument("--seed", type=int, default=DEFAULT_SEED,
                      help="master seed for all sampling (default 0x%X)" % DEFAULT_SEED)
    main.add_argument("--format", choices=("json", "csv"), default="json")
    main.add_argument("--output", default=None, help="write here instead of stdout")
    main.add_argument("--threads", type=int, default=1)
    main.add_argument("--stable-output", action="store_true",
                      help="zero timing fields so reruns are byte-identical")
    main.add_argument("--dense-cap", type=int, default=None,
                      help="max dense pmf entries (default %d)" % DEFAULT_CAPS.dense_pmf_entries)
    main.add_argument("--tuple-cap", type=int, default=None)
    main.add_argument("--code-cap", type=int, default=None)
    sub = main.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ver = sub.add_parser("verify", help="run one verification check")
    vsub = ver.add_subparsers(dest="check", required=True, parser_class=_Parser)

    def nkqp(parser, k=True, p=True, d=False):
        parser.add_argument("--n", type=int, required=True)
        if k:
            parser.add_argument("--k", type=int, required=True)
        parser.add_argument("--q", type=int, default=2)
        if p:
            parser.add_argument("--p", type=int, required=True)
        if d:
            parser.add_argument("--d", type=int, required=True)

    nkqp(vsub.add_parser("p-balanced"))
    nkqp(vsub.add_parser("balanced-identity"))
    nkqp(vsub.add_parser("balanced-inequality"))
    tp = vsub.add_parser("tuple-probability")
    nkqp(tp, p=False)
    tp.add_argument("--tuple", type=_index_list, required=True,
                    help="comma-separated vector indices, e.g. 3,7")
    nkqp(vsub.add_parser("norm-bound"), k=False, d=True)
    nkqp(vsub.add_parser("rearrangement"), k=False, d=True)
    pi = vsub.add_parser("projection-identity")
    nkqp(pi, p=False)
    pi.add_argument("--orders", type=_order_list, default=[2.0, 3.0, math.inf])
    pi.add_argument("--source", default="random")
    rs = vsub.add_parser("rank-stratified")
    nkqp(rs, k=False, d=True)
    rs.add_argument("--source", default="random")
    es = vsub.add_parser("exact-smoothing")
    nkqp(es)
    es.add_argument("--source", default="random")
    for name in ("proximity", "clarkson"):
        c = vsub.add_parser(name)
        c.add_argument("--n", type=int, required=True)
        c.add_argument("--q", type=int, default=2)
        c.add_argument("--count", type=int, default=100)
        c.add_argument("--orders", type=_order_list, default=[1.5, 2.0, 3.0])
    vsub.add_parser("negative-control-unbalanced")
    nco = vsub.add_parser("negative-control-overdraw")
    nco.add_argument("--trials", type=int, default=300)

    bnd = sub.add_parser("bound", help="evaluate a closed-form bound")
    bsub = bnd.add_subparsers(dest="name", required=True, parser_class=_Parser)

    def addargs(parser, *specs):
        for flag, typ in specs:
            parser.add_argument(flag, type=typ, required=True)
        return parser

    addargs(bsub.add_parser("phi"), ("--p", float), ("--eps", float))
    for name in ("smoothing-rhs", "nonlinear-rhs"):
        addargs(bsub.add_parser(name), ("--n", int), ("--k", int), ("--q", int),
                ("--p", int), ("--Hp", float))
    mg = addargs(bsub.add_parser("main-guarantee"), ("--m", int), ("--Hp", float),
                 ("--p", int), ("--q", int))
    mg.add_argument("--eps", type=float, default=None)
    addargs(bsub.add_parser("max-output"), ("--Hp", float), ("--p", int),
            ("--q", int), ("--eps", float))
    addargs(bsub.add_parser("generic-loss"), ("--eps", float), ("--p", int), ("--q", int))
    addargs(bsub.add_parser("corollary"), ("--eps", float), ("--p", int), ("--q", int))
    addargs(bsub.add_parser("collision"), ("--m", int), ("--H2", float), ("--q", int))
    addargs(bsub.add_parser("collision-loss"), ("--eps", float), ("--q", int))
    addargs(bsub.add_parser("collision-max-output"), ("--H2", float),
            ("--eps", float), ("--q", int))
    addargs(bsub.add_parser("linf-bucket"), ("--n", int), ("--eps", float), ("--q", int))
    addargs(bsub.add_parser("two-point-renyi"), ("--delta", float), ("--p", _order))
    rt = addargs(bsub.add_parser("rm-threshold"), ("--delta", float), ("--p", _order))
    rt.add_argument("--target", choices=("smoothing-rate", "extraction-rate"),
                    default="smoothing-rate")

    sm = sub.add_parser("smooth", help="Monte Carlo syndrome smoothness")
    sm.add_argument("--n", type=int, required=True)
    sm.add_argument("--k", type=int, required=True)
    sm.add_argument("--q", type=int, default=2)
    sm.add_argument("--p", type=int, default=2)
    sm.add_argument("--source", required=True)
    sm.add_argument("--trials", type=int, default=1000)
    sm.add_argument("--collision", action="store_true",
                    help="test the sharper squared-norm bound (p = 2)")

    bk = sub.add_parser("bucket", help="Monte Carlo max bucket load")
    bk.add_argument("--n", type=int, required=True)
    bk.add_argument("--q", type=int, default=2)
    bk.add_argument("--eps", type=float, required=True)
    bk.add_argument("--source", required=True)
    bk.add_argument("--trials", type=int, default=1000)

    rm = sub.add_parser("rm", help="Reed-Muller syndrome convergence sweep")
    rm.add_argument("--m-range", type=_m_values, required=True,
                    help="4:10 or a comma list like 4,6,8")
    rm.add_argument("--r-rule", default="m-2")
    rm.add_argument("--delta", type=float, default=0.25)
    rm.add_argument("--p", type=_order, default=2.0)
    rm.add_argument("--method", choices=("dense", "dual-character"),
                    default="dual-character")

    st = sub.add_parser("suite", help="run the whole acceptance battery")
    st.add_argument("--quick", action="store_true")
    return main


def _caps_from(args) -> Caps:
    return Caps(
        dense_pmf_entries=args.dense_cap or DEFAULT_CAPS.dense_pmf_entries,
        tuple_products=args.tuple_cap or DEFAULT_CAPS.tuple_products,
        code_enumeration=args.code_cap or DEFAULT_CAPS.code_enumeration,
    )


def _sanitize(obj):
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else repr(obj)
    if isinstance(obj, np.floating):
        return _sanitize(float(obj))
    if isinstance(obj, (np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return _sanitize(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    return obj


def _value_result(name: str, value, **inputs) -> dict:
    return {"name": name, "inputs": inputs, "value": value}


def _run_verify(args, caps: Caps) -> tuple[list[dict], bool]:
    seed = args.seed
    c = args.check
    if c == "p-balanced":
        res = verify.check_p_balanced(args.n, args.k, args.q, args.p, caps=caps)
    elif c == "balanced-identity":
        res = verify.check_balanced_identity(args.n, args.k, args.q, args.p,
                                             f_seed=seed, caps=caps)
    elif c == "balanced-inequality":
        res = verify.check_balanced_inequality(args.n, args.k, args.q, args.p,
                                               f_seed=seed, caps=caps)
    elif c == "tuple-probability":
        res = verify.check_tuple_probability(args.n, args.k, args.q, args.tuple,
                                             caps=caps)
    elif c == "norm-bound":
        res = verify.check_norm_bound_lemma(args.n, args.q, args.p, args.d,
                                            f_seed=seed, caps=caps)
    elif c == "rearrangement":
        res = verify.check_rearrangement_lemma(args.n, args.q, args.p, args.d,
                                               seed=seed, caps=caps)
    elif c == "projection-identity":
        field = FieldSpec(args.q)
        code = sample_uniform_code(CodeEnsembleSpec(field, args.n, args.k, seed), 0)
        P = parse_source(args.source, field, args.n, seed, caps)
        dense = P if isinstance(P, DensePmf) else P.to_dense(caps)
        res = verify.check_projection_identity(code, dense, args.orders, caps=caps)
    elif c == "rank-stratified":
        field = FieldSpec(args.q)
        P = parse_source(args.source, field, args.n, seed, caps)
        dense = P if isinstance(P, DensePmf) else P.to_dense(caps)
        res = verify.check_rank_stratified(dense, args.p, args.d, caps=caps)
    elif c == "exact-smoothing":
        field = FieldSpec(args.q)
        P = parse_source(args.source, field, args.n, seed, caps)
        dense = P if isinstance(P, DensePmf) else P.to_dense(caps)
        res = verify.exact_expected_smoothness(args.n, args.k, args.q, args.p,
                                               dense, caps=caps)
    elif c == "proximity":
        res = verify.check_proximity_conversions(args.q, args.n, args.count,
                                                 args.orders, seed=seed, caps=caps)
    elif c == "clarkson":
        res = verify.check_clarkson(args.q, args.n, args.count, args.orders,
                                    seed=seed)
    elif c == "negative-control-unbalanced":
        res = verify.negative_control_unbalanced(caps=caps)
    elif c == "negative-control-overdraw":
        res = verify.negative_control_overdraw(trials=args.trials, seed=seed,
                                               caps=caps)
    else:  # pragma: no cover - argparse rejects unknown checks
        raise ValueError(f"unknown check {c!r}")
    row = res.to_json_dict()
    row["expected_failure"] = expected_failure(res.name)
    ok = res.passed == (not row["expected_failure"])
    return [row], ok


def _run_bound(args) -> list[dict]:
    b = args.name
    if b == "phi":
        return [_value_result(b, bounds.phi(args.p, args.eps), p=args.p, eps=args.eps)]
    if b == "smoothing-rhs":
        v = bounds.smoothing_bound_rhs(args.n, args.k, args.q, args.p, args.Hp)
        return [_value_result(b, v, n=args.n, k=args.k, q=args.q, p=args.p, Hp=args.Hp)]
    if b == "nonlinear-rhs":
        v = bounds.nonlinear_bound_rhs(args.n, args.k, args.q, args.p, args.Hp)
        return [_value_result(b, v, n=args.n, k=args.k, q=args.q, p=args.p, Hp=args.Hp)]
    if b == "main-guarantee":
        rep = bounds.main_guarantee(args.m, args.Hp, args.p, args.q, args.eps)
        return [rep.to_json_dict()]
    if b == "max-output":
        v = bounds.max_output_length(args.Hp, args.p, args.q, args.eps)
        return [_value_result(b, v, Hp=args.Hp, p=args.p, q=args.q, eps=args.eps)]
    if b == "generic-loss":
        v = bounds.generic_loss(args.eps, args.p, args.q)
        return [_value_result(b, v, eps=args.eps, p=args.p, q=args.q)]
    if b == "corollary":
        dv, dist = bounds.corollary_bounds(args.eps, args.p, args.q)
        common = {"eps": args.eps, "p": args.p, "q": args.q}
        return [_value_result("corollary-divergence", dv, **common),
                _value_result("corollary-distance", dist, **common)]
    if b == "collision":
        v = bounds.collision_bound(args.m, args.H2, args.q)
        return [_value_result(b, v, m=args.m, H2=args.H2, q=args.q)]
    if b == "collision-loss":
        return [_value_result(b, bounds.collision_loss(args.eps, args.q),
                              eps=args.eps, q=args.q)]
    if b == "collision-max-output":
        v = bounds.collision_max_output(args.H2, args.eps, args.q)
        return [_value_result(b, v, H2=args.H2, eps=args.eps, q=args.q)]
    if b == "linf-bucket":
        return [_value_result(b, bounds.linf_bucket_bound(args.n, args.eps, args.q),
                              n=args.n, eps=args.eps, q=args.q)]
    if b == "two-point-renyi":
        return [_value_result(b, bounds.two_point_renyi(args.delta, args.p),
                              delta=args.delta, p=args.p)]
    if b == "rm-threshold":
        return [_value_result(b, bounds.rm_threshold(args.delta, args.p, args.target),
                              delta=args.delta, p=args.p, target=args.target)]
    raise ValueError(f"unknown bound {b!r}")  # pragma: no cover


def _format_checks(rows: list[dict], config: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_sanitize({"config": config, "results": rows}),
                          indent=2, sort_keys=True) + "\n"
    lines = ["# config: " + json.dumps(_sanitize(config), sort_keys=True)]
    lines.append("name,params,lhs,rhs,slack,passed,trials,seed")
    for row in rows:
        params = json.dumps(_sanitize(row.get("parameters", row.get("inputs", {}))),
                            sort_keys=True, separators=(",", ":"))
        def cell(key):
            v = row.get(key)
            if v is None:
                return ""
            if isinstance(v, bool):
                return str(v).lower()
            return repr(v) if isinstance(v, float) else str(v)
        lines.append(",".join([
            row["name"], '"' + params.replace('"', '""') + '"',
            cell("lhs") or cell("value"), cell("rhs"), cell("slack"),
            cell("passed"), cell("trials"), cell("seed")]))
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    caps = _caps_from(args)
    config = {k: v for k, v in sorted(vars(args).items()) if k != "output"}
    if isinstance(config.get("m_range"), tuple):
        config["m_range"] = list(config["m_range"])
    try:
        ok = True
        if args.command == "verify":
            rows, ok = _run_verify(args, caps)
            text = _format_checks(rows, config, args.format)
        elif args.command == "bound":
            rows = _run_bound(args)
            text = _format_checks(rows, config, args.format)
        elif args.command == "smooth":
            field = FieldSpec(args.q)
            source = parse_source(args.source, field, args.n, args.seed, caps)
            spec = CodeEnsembleSpec(field, args.n, args.k, args.seed)
            res = verify.mc_expected_smoothness(spec, source, args.p, args.trials,
                                                collision=args.collision, caps=caps)
            ok = res.passed
            text = _format_checks([res.to_json_dict()], config, args.format)
        elif args.command == "bucket":
            field = FieldSpec(args.q)
            source = parse_source(args.source, field, args.n, args.seed, caps)
            res = verify.mc_bucket_linf(source, args.eps, args.trials,
                                        seed=args.seed, caps=caps)
            ok = res.passed
            text = _format_checks([res.to_json_dict()], config, args.format)
        elif args.command == "rm":
            spec = RmExperimentSpec(m_values=args.m_range, r_rule=args.r_rule,
                                    delta=args.delta, p=args.p, method=args.method)
            rows = rm_convergence_run(spec, caps, threads=args.threads)
            if args.stable_output:
                rows = [replace(r, seconds=0.0) for r in rows]
            if args.format == "csv":
                text = "# config: " + json.dumps(_sanitize(config), sort_keys=True) \
                    + "\n" + rows_to_csv(rows, stable=args.stable_output)
            else:
                text = json.dumps(_sanitize({"config": config,
                                             "results": [asdict(r) for r in rows]}),
                                  indent=2, sort_keys=True) + "\n"
        elif args.command == "suite":
            results = run_acceptance(seed=args.seed, caps=caps, quick=args.quick)
            rows = []
            for res in results:
                row = res.to_json_dict()
                row["expected_failure"] = expected_failure(res.name)
                row["ok"] = res.passed == (not row["expected_failure"])
                ok = ok and row["ok"]
                rows.append(row)
            text = _format_checks(rows, config, args.format)
        else:  # pragma: no cover
            raise ValueError(f"unknown command {args.command!r}")
    except CapExceeded as exc:
        print(f"synhash: refused: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"synhash: error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
