"""framedtoric: exact-arithmetic toolkit for framed toric varieties,
partitioned duality, and mirror webs."""

from .ftv import (PartitionedFtv, MirrorModel, f_dual, f_dual_reverse,
                  check_calibration, render_family, generate_dd_input,
                  UnsupportedFramingError)
from .lattice import (hnf, snf, gale_dual, class_group, primitive,
                      augmented_determinant)
from .polytopes import (RatPolytope, framing_polytope, convex_hull,
                        integer_part, primitive_points_excluding_origin)
from .fans import (SpannedFan, spanned_fan, irrelevant_ideal,
                   unstable_components, is_fan_matrix_of_wps_quotient)
from .mirrorweb import (check_assumption_A, find_admissible_W, build_web,
                        web_invariants, mpcp_rays, verify_appendix)
from .scenarios import scenario

__version__ = "0.1.0"
