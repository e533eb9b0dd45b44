"""chisig: exact chi^c / signature invariants for combinatorially described
real algebraic varieties (arrangement complements, semi-stable gluings,
patchworked hypersurfaces and toric varieties)."""

from .motivic import (
    ChiYPolynomial,
    ChiSigmaResult,
    LEFSCHETZ,
    MotivicClass,
    ONE,
    RealMotivicDatum,
    ZERO,
    check_chi_sigma,
)
from .arrangements import (
    HyperplaneArrangement,
    IntersectionPoset,
    affine_arrangement,
    characteristic_polynomial,
    complement_class,
    decone,
    deletion_restriction,
    intersection_poset,
    projective_arrangement,
    real_complement_euler,
    region_count,
)
from .degeneration import (
    DualComplex,
    StratumRecord,
    chi_sigma_report,
    chi_y_nearby,
    motivic_nearby_fiber,
    real_euler_glued,
    sigma_glued,
    validate,
)
from .lattice import (
    Face,
    LatticePolytope,
    Triangulation,
    alcove_triangulation,
    check_regular,
    check_unimodular,
    delta_vector,
    face_restrict,
    faces,
    segment_triangulation,
    validate_triangulation,
)
from .patchwork import (
    PatchworkInput,
    PatchworkReport,
    chi_sigma_faces,
    chi_y_torus_hypersurface,
    real_euler_torus,
    sigma_torus_hypersurface,
)
from .toric import (
    Fan,
    projective_fan,
    subfan_restrict,
    toric_class,
    toric_real_euler,
    validate_fan,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
