"""Verification and fixed-point iteration toolkit for convex G-metric spaces."""

from .analysis import (BoundReport, ContractionFactor, RateBound,
                       convergence_diagnostics, delta_four_term,
                       delta_three_term, diagnostics_maxima, product_bound,
                       trace_products, verify_bound)
from .contractions import (ApplicabilityVerdict, ConditionKind,
                           ContractionSpec, Mapping, check_applicability,
                           check_condition, make_affine_contraction,
                           make_translation, rhs_value)
from .convexity import (ConvexGSpace, ConvexStructure, ModiStructure,
                        centroid_structure, check_convexity,
                        check_modi_convexity, combine, linear_interpolation)
from .core import (CheckReport, DomainError, GSpace, SamplePlan, Violation,
                   check_axioms, check_derived, distance, eval_g,
                   sample_points)
from .mann import (IterationTrace, StepSchedule, StoppingRule,
                   constant_schedule, explicit_schedule, harmonic_schedule,
                   mann_step, power_schedule, run_mann, schedule_values)
from .spaces import (UnknownSpaceError, get_space, make_max_space,
                     make_perimeter_space, make_sign_example_space)

__version__ = "0.1.0"
