"""Exact computations with Seifert pieces, graph manifolds and the
splittings of their fundamental groups along JSJ tori."""

from .seifert import (
    EulerNumber,
    GeometryClass,
    Move,
    OrbifoldSignature,
    SeifertSymbol,
    SpecialManifold,
    UnsupportedManifoldError,
    apply_move,
    base_orbifold,
    canonicalize,
    euler_number,
    geometry_class,
    isomorphic_oriented,
    isomorphic_unoriented,
    mirror,
    orbifold_chi,
    recognize_special,
    same_manifold,
)
from .orbifold import FreeProductSignature, MalnormalityCertificate, malnormality_certificate
from .seifert_group import (
    KleinElement,
    PeripheralCoordinates,
    SeifertElement,
    SeifertGroup,
    klein_from_word,
    klein_invert,
    klein_multiply,
    klein_peripheral,
    klein_slope_separation_check,
    peripheral_conjugate_intersection_check,
    regular_fiber,
)
from .graph_manifold import (
    GraphManifoldSpec,
    Gluing,
    Piece,
    PieceKind,
    SolLikeError,
    SplitCase,
    TorusSlot,
    boundary_tori,
    classify_edge,
    edge_separating,
    fiber_transverse,
    hyperbolic_piece,
    klein_piece,
    seifert_piece,
    sol_like,
    validate,
)

__version__ = "0.1.0"
