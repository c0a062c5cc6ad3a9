"""Walk through the separation-of-variables transform of one algebra.

Lists the ordered transversals, shows how each basis diagram factors through
the subalgebra, and prints the per-diagram distance between the simulated
column and the approximate transform.

    python demos/sov_trace.py --family brauer --n 3
    python demos/sov_trace.py --family partition --n 2 --d 40000
"""

import argparse

from diagram_qft import qft_sov as sov
from diagram_qft.algebra_core import Field


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="brauer", choices=sov.FAMILIES)
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--r", type=int)
    ap.add_argument("--s", type=int)
    ap.add_argument("--d", type=int, default=10**4)
    args = ap.parse_args()
    params = (args.r, args.s) if args.family == "walled" else args.n

    ts = sov.transversals(args.family, params)
    print(f"{len(ts)} transversals, increasing order:")
    for t in ts:
        print(f"  [{t.embedding:>2}] {t}")

    F = Field(args.d, "float")
    res = sov.sov_qft(args.family, params, F)
    print(f"\nper diagram at d = {args.d}:")
    for row in res.per_diagram():
        print(f"  {row['diagram']:<28} {row['transversal']:<40} sub {row['sub_diagram']:<20} residual {float(row['residual']):.2e}")
    print(f"\n|U - FT~| = {float(res.alg_vs_tilde()):.3e}")
    print(f"|U - FT|  = {float(res.alg_vs_exact()):.3e}")
    print(f"max |U^T U - I| = {float(res.unitarity()):.1e}")


if __name__ == "__main__":
    main()
