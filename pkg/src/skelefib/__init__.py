"""skelefib: exact combinatorics of degenerations.

Skeletons and retractions, stratum fans, integral affine charts and
monodromy, over an exact-arithmetic lattice core.
"""

from importlib import resources

from .degeneration import (
    DegenerationModel,
    DivisorRecord,
    EssentialSkeleton,
    Face,
    StratumCurveData,
    build_model,
    edge_flip,
    essential_skeleton,
    homology_ranks,
    is_maximally_degenerate,
    pseudomanifold_check,
    star_subdivide,
    validate_model,
)
from .errors import ModelParseError, SkelefibError
from .fan import Cone, Fan, IotaWeight, SlicePolytope, common_face, is_smooth, locate, ray_multiplicity, slice_height_one, validate_fan
from .lattice import (
    complete_last_row_to_unimodular,
    determinant,
    dual_basis,
    express_in_basis,
    gcd_all,
    hermite_normal_form,
)
from .modelio import build_report, load_model, parse_model, serialize_model, to_dot
from .syz import (
    AffineTransition,
    CanonicalChart,
    CodimOneChart,
    SkeletonPoint,
    StratumFan,
    TorusPoint,
    ValuedPoint,
    as_valued_point,
    canonical_chart,
    chart_for_codim1_face,
    check_integral_affine,
    fan_from_stratum,
    monodromy,
    quotient_representative,
    retract,
    transition_across,
    trop_character,
    wall_relation,
)

__version__ = "0.1.0"


def bundled_model_path(name: str):
    """Path to a bundled example model, e.g. 'k3_tetrahedron'."""
    return resources.files(__name__) / "data" / f"{name}.json"
