"""Print the reference-design table and cross-check every row with the two independent area routes."""
import argparse

from capchart import geometry as geo
from capchart.capability import cca_closed_form, cca_from_chart, perfect_boundary
from capchart.cli import cmd_table, table_reports
from capchart.oracle import cca_montecarlo


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(cmd_table())
    print(f"{'design':<16} {'closed':>10} {'union':>10} {'monte carlo':>22}")
    for r in table_reports():
        mc = cca_montecarlo(r.alpha, args.samples, args.seed)
        print(f"{r.name:<16} {cca_closed_form(r.alpha):10.6f} {cca_from_chart(r.alpha):10.6f} "
              f"{mc.area:10.6f} +/- {mc.std_error:.6f}")
    print(f"{'perfect':<16} {geo.polygon_area(perfect_boundary()):10.6f}")


if __name__ == "__main__":
    main()
