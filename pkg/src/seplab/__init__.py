"""Separating ideals of points of the real spectrum of a regular local ring.

Exact computations over the rationals: points given by parameterized
branches or by divisorial data, their valuations and v-ideals, separating
ideals with witnesses, quadratic transforms, and the transform theorems in
two variables.
"""

from .errors import *  # noqa: F401,F403
from .exact import INF, TPoly, TRat, SignSystem, sign_feasible
from .ring import (
    DegreeBound,
    Ideal,
    Poly,
    contains,
    ideal_equal,
    ideal_intersection,
    ideal_ord,
    ideal_product,
    membership,
    minimal_generators,
    mpower_in,
)
from .point import (
    BranchPoint,
    ChainStep,
    Cut,
    DivisorialPoint,
    dim_point,
    evaluate,
    sign_at,
    sign_stream,
    successor,
    support,
    val,
    value_semigroup,
    videal,
)
from .sep import changes_sign, cone, is_simple, sep, star_condition
from .blowup import (
    chain_along,
    check_lemma32,
    check_thm44,
    check_thm47,
    inverse_transform,
    points_for_simple_ideal,
    simple_sequence,
    transform_ideal,
    transform_point,
)
from .scenario import parse_poly, parse_scenario, parse_t, render_scenario

__version__ = "0.1.0"
