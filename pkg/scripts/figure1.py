"""Hoffman upper bound and the q3 lower bound for cubic vertex-transitive
graphs on lambda in [-3, -1], written as CSV and optionally plotted.

    python scripts/figure1.py --out figure1.csv [--png figure1.png]
"""

import argparse
import csv

from eigenind.cli import figure1_rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="figure1.csv")
    ap.add_argument("--step", type=float, default=0.005)
    ap.add_argument("--png", default=None, help="also plot (needs matplotlib)")
    args = ap.parse_args()

    rows = figure1_rows(args.step)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["lambda", "hoffman_upper", "q3_lower"])
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")

    if args.png:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        lam, hoff, q3 = zip(*rows)
        fig, ax = plt.subplots(figsize=(5, 3.5))
        ax.plot(lam, hoff, label="Hoffman upper bound")
        ax.plot(lam, q3, label="q3 lower bound")
        ax.set_xlabel("lambda_min")
        ax.set_ylabel("independence ratio")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.png, dpi=150)
        print(f"wrote {args.png}")


if __name__ == "__main__":
    main()
