"""Measure how the approximation errors shrink as d grows.

For each algebra this prints, at d, 4d and 16d, the niceness of the Fourier
basis, the deviation of the norm law, the concentration defect and the
distance between the simulated transform and the approximate one, together
with the successive ratios.  A ratio of 0.5 means d^{-1/2} decay; 0.25 means
d^{-1}.

    python demos/decay_sweep.py --family brauer --n 3
    python demos/decay_sweep.py --family walled --r 2 --s 1 --skip-sov
"""

import argparse

from diagram_qft import checks
from diagram_qft.algebra_core import Field
from diagram_qft.qft_sov import sov_qft


def show(label, values):
    vals = "  ".join(f"{float(v):.3e}" for v in values)
    rs = "  ".join(f"{r:.3f}" for r in checks.ratios(values))
    print(f"{label:<14} {vals}   ratios {rs}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="brauer")
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--r", type=int)
    ap.add_argument("--s", type=int)
    ap.add_argument("--d", type=int, default=10**4, help="smallest d of the sweep")
    ap.add_argument("--skip-sov", action="store_true")
    args = ap.parse_args()

    params = (args.r, args.s) if args.family == "walled" else args.n
    ds = (args.d, 4 * args.d, 16 * args.d)
    print(f"{args.family} {params}, d in {ds}")
    show("niceness", checks.niceness_series(args.family, params, ds))
    show("norm law", checks.norm_series(args.family, params, ds, form="ratios"))
    defects, above = checks.concentration_series(args.family, params, ds)
    show("concentration", defects)
    print(f"{'above pn':<14} " + "  ".join(f"{float(a):.1e}" for a in above))
    if not args.skip_sov and args.family != "half":
        show("sov error", [sov_qft(args.family, params, Field(d, "float")).alg_vs_tilde() for d in ds])


if __name__ == "__main__":
    main()
