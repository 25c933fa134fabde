"""Self-consistent binding from the radial (Numerov) and momentum (Nystrom) solvers.

    python3 scripts/compare_solvers.py --alphas 0.1,0.3,0.5 --n-nodes 120,200
"""
import argparse
import time

from quasispec.momentum import solve_self_consistent_momentum
from quasispec.potential import ModelParams
from quasispec.radial import solve_self_consistent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alphas", default="0.1,0.3,0.5")
    ap.add_argument("--n-nodes", default="120,200")
    ap.add_argument("--n-radial", type=int, default=0)
    args = ap.parse_args()

    node_counts = [int(s) for s in args.n_nodes.split(",")]
    print(f"{'alpha':>6} {'radial E/(m a^2)':>20} " + " ".join(f"{'rel diff N=' + str(n):>16}" for n in node_counts))
    for alpha in (float(s) for s in args.alphas.split(",")):
        p = ModelParams(alpha=alpha)
        t0 = time.perf_counter()
        radial = solve_self_consistent(p, args.n_radial)[0].binding_energy
        diffs = []
        for n in node_counts:
            mom = solve_self_consistent_momentum(p, args.n_radial, n_nodes=n)
            diffs.append(mom / radial - 1)
        dt = time.perf_counter() - t0
        print(f"{alpha:6.3f} {radial / alpha**2:20.12f} "
              + " ".join(f"{d:16.2e}" for d in diffs) + f"   ({dt:.1f} s)")


if __name__ == "__main__":
    main()
