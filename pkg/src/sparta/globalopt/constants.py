# Default tolerances of the piecewise convexification solver.
# EPSILON and DISCARD_MARGIN are the values used for the published benchmark tables.
EPSILON = 1e-3
DISCARD_MARGIN = 1e-6
INNER_TOL = 1e-8
INNER_MAX_ITERS = 5000
INNER_STEP_INIT = 1.0
INNER_STEP_SHRINK = 0.5
INNER_ARMIJO = 1e-4
FILTER_TOL = 1e-6
CLUSTER_DELTA = 1e-2
MAX_OUTER_ITERS = 10**6
DEGENERATE_WIDTH = 1e-14

CSV_COLUMNS = ("name", "iter", "wall_ms", "n_eps", "flag_ter", "f_min")

# Stroke colours of the subdivision plot, keyed by list membership.
SVG_COLORS = {"convex": "#2e7d32", "active": "#1565c0", "discarded": "#9e9e9e", "solution": "#d32f2f", "domain": "#000000"}
