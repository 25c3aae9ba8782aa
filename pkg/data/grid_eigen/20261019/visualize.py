"""
Visualize simulations
"""
import os

from plapflow import SweepAnalysis, read_graph

OUT_DIR = os.path.dirname(os.path.abspath(__file__))

graph = read_graph(os.path.join(OUT_DIR, "grid21.json"))
for p in [3.0, 4.0]:
    analysis = SweepAnalysis(os.path.join(OUT_DIR, "p{:g}".format(p)), graph)
    analysis.load_data()
    analysis.plot_eigenfunctions()
    analysis.plot_residuals()
