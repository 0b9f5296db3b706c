"""Monte Carlo vs closed-form agreement over random feasible sizings."""
import argparse

import numpy as np

from capchart.capability import cca_closed_form, random_feasible_sizings
from capchart.oracle import cca_montecarlo


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizings", type=int, default=25)
    parser.add_argument("--seeds", type=int, default=4)
    parser.add_argument("--samples", type=int, default=1_000_000)
    args = parser.parse_args()

    z = []
    for s in random_feasible_sizings(args.sizings, seed=77):
        exact = cca_closed_form(s)
        for seed in range(args.seeds):
            est = cca_montecarlo(s.alpha, args.samples, seed)
            z.append((est.area - exact) / est.std_error if est.std_error else 0.0)
    z = np.array(z)
    print(f"trials: {len(z)}  mean z: {z.mean():+.3f}  std z: {z.std():.3f}  "
          f"within 4 sigma: {(np.abs(z) <= 4).sum()}/{len(z)}")


if __name__ == "__main__":
    main()
