"""Central numerical tolerances.

All thresholds used across the library live here so that a tolerance is
never re-derived ad hoc at a call site.  Structural checks (membership of
a point on the hyperboloid, Lorentz defect of a matrix) are measured
relative to the scale of the data; metric identities are absolute.
"""

# Type invariants: hyperboloid membership, Lorentz defect of a matrix.
STRUCTURAL_TOL = 1e-9

# Metric identities at finite precision (geodesic additivity and the like).
METRIC_TOL = 1e-8

# Comparisons against limit definitions evaluated at finite parameters.
LIMIT_TOL = 1e-6

# Orbit points closer than this (Euclidean, ambient coordinates) collide.
COLLISION_TOL = 1e-7

# Boundary samples closer than this (chordal metric) deduplicate.
CHORDAL_DEDUP_TOL = 1e-7

# Numerically solved Lorentz extensions are accepted at this residual.
EXTENSION_TOL = 1e-6

# Pivot threshold when selecting a nondegenerate Gram minor.
FRAME_PIVOT_TOL = 1e-10

# Relative singular-value cutoff for span/rank decisions.
SPAN_RANK_TOL = 1e-9

# Per-size factor for the positive-eigenvalue test of a Gram spectrum.
GRAM_POSITIVE_FACTOR = 1e-8
