"""How far the self-consistent levels sit from the oscillation frontier.

For each coupling the s- and p-wave ground states are solved and compared
with the smallest coupling that would let an oscillation of the decaying
tail reach the region E r >= R_CUT. A ratio below 1 means no anomalous
(oscillating) level can appear there.

    python3 scripts/anomaly_frontier.py --alpha-min 0.0073 --alpha-max 0.5 --count 8
"""
import argparse
import csv
import sys

import numpy as np

from quasispec.asymptotics import R_CUT, classify, critical_alpha_eq19
from quasispec.potential import ModelParams
from quasispec.radial import solve_self_consistent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha-min", type=float, default=1 / 137)
    ap.add_argument("--alpha-max", type=float, default=0.5)
    ap.add_argument("--count", type=int, default=8)
    ap.add_argument("--l-values", default="0,1")
    ap.add_argument("--r-cut", type=float, default=R_CUT)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["alpha", "l", "binding_over_m_alpha2", "gamma", "branch",
                "alpha_crit_at_r_cut", "alpha_over_alpha_crit", "eq19_satisfiable"])
    for alpha in np.geomspace(args.alpha_min, args.alpha_max, args.count):
        for l in (int(s) for s in args.l_values.split(",")):
            p = ModelParams(alpha=float(alpha), l=l)
            E = solve_self_consistent(p, 0)[0].binding_energy
            rep = classify(p, E, r_cut=args.r_cut)
            a_crit = critical_alpha_eq19(p, E, args.r_cut / E)
            w.writerow([f"{alpha:.6g}", l, f"{E / alpha**2:.10f}", f"{rep.gamma:.6g}",
                        rep.branch.value, f"{a_crit:.6g}", f"{alpha / a_crit:.3e}",
                        rep.eq19_satisfiable])


if __name__ == "__main__":
    main()
