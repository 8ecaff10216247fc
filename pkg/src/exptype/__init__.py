"""Entire functions of exponential type: exponential sums, building blocks
``f_alpha(z) = (e^{alpha z} - 1)^2 / z^2``, their indicator diagrams, weighted
sup norms, Borel transforms, zero counting, and truncated frequently universal
candidates for the unit translation."""

from .borel import block_borel, borel_closed_form, borel_series, singular_hull, transposed_borel
from .carleman import (
    carleman_lhs,
    carleman_rhs,
    count_zeros,
    density_bound,
    locate_zeros,
    obstruction_check,
)
from .estimators import BlockSpanRegressor
from .expfun import (
    FunctionExpr,
    block,
    evaluate,
    exp_term,
    frequency_hull,
    indicator_estimate,
    modulate,
    poly_expr,
    sine_expr,
    taylor_coefficients,
    translate,
    type_estimate,
)
from .expk import ExpKNorm, criterion_series_check, density_fit, membership, norm_estimate
from .fhc import (
    build_candidate,
    dyadic_schedule,
    enumerate_targets,
    growth_check,
    lower_density,
    recurrence_density,
)
from .geometry import ConvexCompact, hull, indicator_of_set, support_function

__version__ = "0.1.0"
