"""Exact volumes and motivic classes of semistable Higgs bundle moduli.

Two independent symbolic pipelines (a partition-sum route and an
iterated-residue route) compute the rank/degree classes over a curve of
given genus; a counting specialization evaluates them at concrete curves
over finite fields, producing exact rational point-count volumes.
"""

from .curve import CurveModel, count_points, load_curve
from .counting import VolumeResult, dt_invariants, ev, volume

__version__ = "0.1.0"

__all__ = [
    "CurveModel",
    "count_points",
    "load_curve",
    "VolumeResult",
    "dt_invariants",
    "ev",
    "volume",
    "__version__",
]
