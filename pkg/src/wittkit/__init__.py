"""Exact computations with Witt groups, Tate cohomology and Koszul forms."""

from wittkit.involution import InvolutionModule, TatePair, hyperbolic, tate, tate_shift
from wittkit.zmodule import FgModule, ModuleMap, cokernel, direct_sum, homology_at, kernel, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "FgModule", "ModuleMap", "cokernel", "direct_sum", "homology_at", "kernel", "smith_normal_form",
    "InvolutionModule", "TatePair", "hyperbolic", "tate", "tate_shift",
]
