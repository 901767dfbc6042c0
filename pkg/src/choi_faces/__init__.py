"""Two-qutrit state family A[a,b,c]: construction, classification,
entanglement witnesses, explicit separable decompositions, and faces of
the separable cone."""

__version__ = "0.1.0"

from . import classifier, decomposer, faces, linalg, maps, states
from .classifier import (
    BoundaryElement,
    Classification,
    boundary_element,
    classify,
    default_tolerance,
    extend_to_vertex,
)
from .decomposer import (
    Decomposition,
    ProductVector,
    decompose_general,
    decomposition_from_dict,
    decomposition_to_dict,
    reconstruct,
    residual,
)
from .errors import (
    ChoiFacesError,
    ConstraintViolatedError,
    ConvergenceError,
    DegeneratePairError,
    DegenerateVectorError,
    DimensionMismatchError,
    NotHermitianError,
    NotInQError,
    NotPositiveMapError,
    NotPPTError,
    NotSeparableError,
    OutOfRangeError,
    UnsupportedElementError,
    ZeroAlphaError,
)
from .faces import (
    FacePair,
    KernelFixtures,
    QFamily,
    ThroughCheckReport,
    dual_face_membership,
    face_of,
    kernel_fixtures,
    q_family,
    q_membership,
    through_decomposition_check,
)
from .maps import (
    MapParams,
    apply_map,
    choi_matrix,
    is_positive_map,
    pairing,
    pairing_closed_form,
    pairing_product,
    phi_t,
    witness_minimum,
    witness_scan,
)
from .states import (
    StateParams,
    build_state,
    partial_transpose,
    state_type,
)

__all__ = [
    "BoundaryElement",
    "ChoiFacesError",
    "Classification",
    "ConstraintViolatedError",
    "ConvergenceError",
    "Decomposition",
    "DegeneratePairError",
    "DegenerateVectorError",
    "DimensionMismatchError",
    "FacePair",
    "KernelFixtures",
    "MapParams",
    "NotHermitianError",
    "NotInQError",
    "NotPPTError",
    "NotPositiveMapError",
    "NotSeparableError",
    "OutOfRangeError",
    "ProductVector",
    "QFamily",
    "StateParams",
    "ThroughCheckReport",
    "UnsupportedElementError",
    "ZeroAlphaError",
    "__version__",
    "apply_map",
    "boundary_element",
    "build_state",
    "choi_matrix",
    "classifier",
    "classify",
    "decompose_general",
    "decomposer",
    "decomposition_from_dict",
    "decomposition_to_dict",
    "default_tolerance",
    "dual_face_membership",
    "extend_to_vertex",
    "face_of",
    "faces",
    "is_positive_map",
    "kernel_fixtures",
    "linalg",
    "maps",
    "pairing",
    "pairing_closed_form",
    "pairing_product",
    "partial_transpose",
    "phi_t",
    "q_family",
    "q_membership",
    "reconstruct",
    "residual",
    "state_type",
    "states",
    "through_decomposition_check",
    "witness_minimum",
    "witness_scan",
]
