"""
Simulation script for the first nine p-Laplacian eigenpairs of the 21x21 grid
"""
import logging
import os

from plapflow import FlowConfig, SpectralSweep, build_grid, write_graph

OUT_DIR = os.path.dirname(os.path.abspath(__file__))


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    graph = build_grid(21, 21)
    write_graph(graph, os.path.join(OUT_DIR, "grid21.json"))

    for p in [3.0, 4.0]:
        print("\nSIMULATE: (p={}, kmax=9)\n".format(p))
        sweep = SpectralSweep(
            graph,
            FlowConfig(p, tau=0.1, tol=1e-6, max_iter=50000, record_every=10),
            out_dir=os.path.join(OUT_DIR, "p{:g}".format(p)),
        )
        sweep.sweep_mp(9, jobs=4)
        for record in sweep.records:
            print(record)
