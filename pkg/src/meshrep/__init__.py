"""meshrep: exact computations with representations of A_n quivers.

Coherent Auslander-Reiten quivers, reflection / Coxeter / Serre / Nakayama
functors, the bimodule tensor calculus with universal tilting modules,
derived Picard relations, and canonical higher triangulations, all over
exact fields (Q or F_p).
"""

from .linalg import GF, QQ, FieldSpec, Matrix
from .shapes import LineQuiver, MeshWindow, Poset, SymmetryElem, all_orientations
from .rep import Interval, Rep, decompose, hom_space, interval_module
from .derived import ChainMap, Complex, DerivedObject, cone, fiber, normalize
from .functors import coxeter_minus, coxeter_plus, reflect_minus, reflect_plus, serre, tau, transport
from .armesh import ARDiagram, build_ar, mesh_hom_table, suspension_orbits
from .bimod import Bimodule, cancel_tensor, duality_module, identity_prof, linear_dual
from .highertri import NTriangle, fill_base, is_distinguished, standard_triangle

__all__ = [
    "GF", "QQ", "FieldSpec", "Matrix",
    "LineQuiver", "MeshWindow", "Poset", "SymmetryElem", "all_orientations",
    "Interval", "Rep", "decompose", "hom_space", "interval_module",
    "ChainMap", "Complex", "DerivedObject", "cone", "fiber", "normalize",
    "coxeter_minus", "coxeter_plus", "reflect_minus", "reflect_plus", "serre", "tau", "transport",
    "ARDiagram", "build_ar", "mesh_hom_table", "suspension_orbits",
    "Bimodule", "cancel_tensor", "duality_module", "identity_prof", "linear_dual",
    "NTriangle", "fill_base", "is_distinguished", "standard_triangle",
]

__version__ = "0.1.0"
