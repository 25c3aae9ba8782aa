"""
Testing module
"""
import matplotlib

matplotlib.use("Agg")
