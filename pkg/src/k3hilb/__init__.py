"""Exact lattice computations for K3 surfaces with Neron-Severi form
4x^2 + 2axy + 4y^2 and the automorphism iota2 iota1 of their Hilbert square."""

from .hilb2 import (
    Hilb2Lattice,
    abelian_fibration_obstruction,
    beauville_matrix,
    build_hilb2,
    composed_action,
    delta_class,
    delta_invariance_test,
    fujiki_product,
    invariant_class,
    periodicity_reduction,
    surface_class_product,
)
from .surface import (
    SurfaceLattice,
    ample_pair_certificate,
    build,
    has_elliptic_pencil,
    min_nodal_degree,
    nodal_classes,
    reflect_nodal,
    very_ample_checklist,
)
from .verdict import DensityReport, density_verdict

__version__ = "0.1.0"
