"""I+ density of the Gaussian wave function on the d-regular tree as the
ball radius grows, next to q_d(lambda).

    python scripts/tree_density.py -d 3 --radii 2 3 4 5 6 --samples 1000000
"""

import argparse
import math

from eigenind.sphere import q3_closed_form, qd_monte_carlo
from eigenind.streams import RandomStream
from eigenind.treewave import estimate_tree_density, spectral_edge


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("-d", type=int, default=3)
    ap.add_argument("-l", "--lambda", dest="lam", type=float, default=None, help="default: -2 sqrt(d-1)")
    ap.add_argument("--radii", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    lam = -spectral_edge(args.d) if args.lam is None else args.lam
    rng = RandomStream(seed=args.seed, threads=args.threads)
    if args.d == 3:
        qd = q3_closed_form(lam)
    else:
        qd, _ = qd_monte_carlo(args.d, lam, args.samples, rng)
    print(f"d={args.d} lambda={lam:.6f} q_d={qd:.6f}")
    print(f"{'R':>3} {'ball':>6} {'density':>10} {'stderr':>9} {'jitter':>7}")
    for r in args.radii:
        res = estimate_tree_density(args.d, lam, r, args.samples, rng)
        print(f"{r:>3} {res.ball_size:>6} {res.estimate:>10.6f} {res.stderr:>9.6f} {res.jitter:>7.0e}")
    # the density only involves the root and its neighbours, so it should
    # not drift with R beyond Monte Carlo noise
    print(f"4 sigma band at last R: +-{4 * math.sqrt(qd * (1 - qd) / args.samples):.6f}")


if __name__ == "__main__":
    main()
