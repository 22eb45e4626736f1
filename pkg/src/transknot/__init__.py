"""Exact-arithmetic transverse knot diagrams.

Closed polygonal curves in the (x, z) plane with rational vertices,
a coorientation sign, and over/under data at crossings; validity of
the transversality conditions, classical invariants (self-linking
number, Whitney index, a second-order Vassiliev invariant), negative
stabilization, singular diagrams with a Vassiliev order checker, and
the relative-framing torsor arithmetic that turns self-linking into a
Bennequin invariant on general manifolds.
"""

from .diagram import (
    Coorientation,
    Crossing,
    PolyCurve,
    TransverseDiagram,
    Violation,
    ViolationKind,
    build_diagram,
    check_genericity,
    detect_crossings,
    min_feature_separation2,
    parse_diagram,
    serialize_diagram,
)
from .errors import (
    ComponentMismatchError,
    CrossingMismatchError,
    DegenerateConeError,
    FamilyArityError,
    HostTooShortError,
    InadmissibleDoublePointError,
    InvalidDiagramError,
    NongenericCurveError,
    OracleError,
    ParseError,
    PreconditionFailedError,
    ReversalError,
    TransknotError,
)
from .framing import (
    ComponentLabel,
    Equality,
    ExistenceKind,
    ExistenceResult,
    FramingTorsor,
    ManifoldDescriptor,
    RelativeFraming,
    act,
    compute_m_T,
    distinguish_by_relative_framing,
    framed_classes_equal,
    loop_delta,
    relative_bennequin,
    relative_framing_exists,
    transverse_components,
)
from .geometry import Point, Vec
from .invariants import (
    InvariantValue,
    crossing_sign,
    invariant_values,
    pushoff_linking_oracle,
    self_linking,
    v2,
    writhe,
)
from .moves_singular import (
    Double,
    FramedInvariantHandle,
    InvariantHandle,
    Resolution,
    ResolutionAssignment,
    Resolved,
    SingularDiagram,
    assignment_sign,
    is_order_at_most,
    make_singular,
    pullback_framed_invariant,
    random_valid_diagram,
    resolve,
    singular_family,
    stabilize,
    vassiliev_defect,
)
from .transversality import ValidityReport, validate, whitney_index

__version__ = "0.1.0"
