#!/usr/bin/env python3
"""Grid-refinement study: final concentrations for paired (cells, dt).

Runs the full model at the four standard resolutions and prints the
final (N, E, S, O) plus deviations from the finest answer.

Usage: python3 scripts/grid_refinement.py [--t-final DAYS]
"""

import argparse
import dataclasses

import numpy as np

from fermsim import default_config
from fermsim import simulate as sim

PAIRS = ((30, 48), (50, 72), (100, 144), (150, 192))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t-final", type=float, default=20.0)
    parser.add_argument("--output-dir", default="output/grid_refinement")
    args = parser.parse_args()

    finals = {}
    for n_cells, h_inv in PAIRS:
        config = dataclasses.replace(
            default_config(), n_cells=n_cells, dt=1.0 / h_inv,
            t_final=args.t_final, snapshot_times=(args.t_final,),
            output_dir=f"{args.output_dir}/c{n_cells}")
        result = sim.run(config)
        finals[n_cells] = result.trajectory.states[-1, n_cells:]
        print(f"cells={n_cells:4d} h=1/{h_inv:<4d} "
              f"N={finals[n_cells][0]:.6g} E={finals[n_cells][1]:.6g} "
              f"S={finals[n_cells][2]:.6g} O={finals[n_cells][3]:.3e} "
              f"({result.wall_time:.2f}s)")

    reference = finals[PAIRS[-1][0]]
    print("\nrelative deviation from the finest run:")
    for n_cells, _ in PAIRS[:-1]:
        rel = np.abs(finals[n_cells] - reference) / np.maximum(
            np.abs(reference), 1e-300)
        print(f"cells={n_cells:4d} " + " ".join(
            f"{name}={r:.3e}" for name, r in zip("NESO", rel)))


if __name__ == "__main__":
    main()
