"""Presented graded rings and modules, resolutions and module invariants."""
from .core import PresentedModule, PresentedRing, hom
from .resolution import ResolutionWindow, min_free_resolution, syzygy, transpose
