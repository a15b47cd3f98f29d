"""Finite total curvature: executable curvature theory for polygonal curves."""

from ._backend import BACKEND
from .comparison import (chakerian_check, convexity_check, crankshaft_twist, cylinder_search, distortion,
                         distortion_arc_bound_check, interleaved_slab_search, min_enclosing_ball,
                         schur_check, schur_flatten, wien2_check)
from .curvature import (analyze, bending_energy, curvature_density, curvature_force, signed_turning_angles,
                        smooth_inscribed_arcs, spindle_contains, tantrix, total_curvature,
                        total_curvature_star, turning_angles)
from .curve import (ParamCurve, PolyCurve, catalog, diameter, discrete_frechet, inscribe, length,
                    normalize, regular_polygon, sample_uniform, unit_square)
from .errors import FTCurveError
from .integral import (bridge_estimate, crofton_length_estimate, project, projection_pythagoras_check,
                       sample_directions, sample_grassmannian, spherical_crofton_tc, tc_line_projection,
                       tc_projection_average)
from .io import read_curve, write_curve
from .variation import (bending_flow, first_variation_force_form, first_variation_length,
                        length_gradient)

__version__ = "0.1.0"
