"""For every eigenvalue of a few vertex-transitive graphs, compare the Monte
Carlo P(v in I+) with q_d(lambda).  Prints the gap; asserts nothing.

    python scripts/explore_conjecture.py --graphs petersen "prism 3" "hypercube 4"
"""

import argparse

from eigenind.graphcore import parse_named
from eigenind.randev import conjecture_gap
from eigenind.streams import RandomStream


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--graphs", nargs="+",
                    default=["petersen", "prism 3", "prism 6", "moebius_kantor", "dodecahedron", "hypercube 4"])
    ap.add_argument("--samples", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = RandomStream(seed=args.seed)
    for spec in args.graphs:
        g = parse_named(spec)
        print(f"== {g.name} (n={g.n})")
        for row in conjecture_gap(g, args.samples, rng.substream(g.name)):
            flag = "" if row["gap"] >= -4 * row["stderr"] else "  <-- below q_d"
            print(f"  lambda={row['lambda']:+.6f} mult={row['multiplicity']:>2} "
                  f"P={row['p_iplus']:.5f}+-{row['stderr']:.5f} q_d={row['q_d']:.5f} gap={row['gap']:+.5f}{flag}")


if __name__ == "__main__":
    main()
