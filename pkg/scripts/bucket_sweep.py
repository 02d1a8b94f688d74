#!/usr/bin/env python3
"""Max bucket load of hashed flat sources against the closed-form ceiling.

Sweeps the slack parameter eps for a source uniform on a q^dims-point
subcube; the output length m = floor(H_inf - n*eps) moves with eps.
"""

import argparse

from synhash import DensePmf, FieldSpec, linf_bucket_bound, mc_bucket_linf


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=14)
    ap.add_argument("--dims", type=int, default=10, help="log_q of the support size")
    ap.add_argument("--eps", default="0.2,0.25,0.3,0.4,0.5")
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0xC0DE)
    args = ap.parse_args()

    field = FieldSpec(2)
    source = DensePmf.flat(field, args.n, 2 ** args.dims)
    print(f"# n={args.n} support=2^{args.dims}")
    print("eps,m,mean_max_load,ceiling,passed")
    for eps in (float(e) for e in args.eps.split(",")):
        res = mc_bucket_linf(source, eps, args.trials, seed=args.seed)
        print(f"{eps},{res.parameters['m']},{res.parameters['mean']:.6g},"
              f"{linf_bucket_bound(args.n, eps, 2):.6g},{str(res.passed).lower()}")


if __name__ == "__main__":
    main()
