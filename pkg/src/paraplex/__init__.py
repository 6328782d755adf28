"""paraplex: a numerical differential-geometry engine and verification
harness for 4-manifolds carrying (para)complex structures.

Everything evaluates over exact second-order jets; curvature, structure
classification, PDE residuals and topological quadratures are organized as
named verification suites (see paraplex.suites and the `paraplex` CLI).
"""

from .report import ENGINE_VERSION as __version__  # noqa: F401
