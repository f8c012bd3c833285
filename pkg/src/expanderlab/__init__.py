"""expanderlab: exact combinatorial statistics for sets in prime fields.

Sumsets, polynomial images, additive energies, dyadic level structure,
normalized fourth-moment statistics, point-plane incidence checks, and
reproducible growth-exponent sweeps.
"""

from .errors import (
    BudgetExceededError,
    CompositeModulusError,
    ElementOutOfRangeError,
    EvenModulusError,
    ExpanderLabError,
    FieldMismatchError,
    FormRequiredError,
    GeneratorNotUnitError,
    ModulusTooLargeError,
    NonDegenerateRequiredError,
    ProgressionCollisionError,
    SizeAboveSqrtPError,
    SizeExceedsFieldError,
    SpecSyntaxError,
    UniverseTooLargeError,
)
from .fieldset import FpSet, PrimeField, full_set, make_field, parse_set, render_set
from .quadpoly import (
    DegeneracyVerdict,
    Form3Verdict,
    QuadPoly2,
    QuadPoly3,
    classify_degenerate,
    classify_form3,
    eval2,
    eval3,
    lift_to_three,
    parse_poly2,
    render_poly2,
    swap_normalize,
)
from .setstats import (
    D4Result,
    DyadicProfile,
    DyadicRow,
    Energy3Result,
    RepProfile,
    count_solutions,
    d4_exact,
    d4_search,
    difference_set,
    dyadic_profile,
    energy2,
    energy3,
    energy4,
    image2,
    level_set,
    product_set,
    rep_function,
    sumset,
)
from .incidence import (
    PlaneSet,
    PointSet3,
    all_planes,
    all_points,
    canonical_plane,
    incidence_bound_check,
    incidences,
)
from .inequality import (
    GROWTH_EXPONENT,
    IneqReport,
    check_cauchy_schwarz_step,
    report_d4_image_bound,
    report_garaev,
    report_growth_exponent,
    report_his,
    report_incidence_regime,
    report_kmps_energy,
    report_rss,
    report_shakan_shkredov,
)
from .families import FamilySpec, generate, parse_family

__version__ = "0.1.0"
