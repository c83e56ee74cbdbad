"""Exact invariants and Milnor fibre homology for hypersurface germs
singular along a 3-dimensional i.c.i.s., presented as f = g * H * g^T.

Layers, bottom to top: rings (exact polynomial arithmetic), orders
(monomial orders), standard_basis (Mora/Buchberger engine, colength,
quotients, saturation), milnor (i.c.i.s. Milnor numbers), decomposition
(the presentation's invariants mu0, mu1, a, corank, #A1), homology
(tables, Smith normal form, bouquets), jobs (job files and reports),
corpus (built-in regressions), cli (entry point).
"""

from .decomposition import (
    CheckResult,
    InvariantReport,
    SingularityInput,
    assemble_f,
    invariant_report,
)
from .errors import (
    BudgetExceededError,
    ComputationError,
    InconsistencyError,
    InvalidIcisError,
    ParseError,
    RingMismatchError,
)
from .homology import (
    BouquetDescription,
    FgAbelianGroup,
    HomologyTable,
    bouquet,
    dkp_fibre,
    direct_sum,
    milnor_fibre_homology,
    smith_normal_form,
    table_B,
    table_M,
    table_pair_B_Bu,
    table_X,
    universal_coefficients_mod2,
)
from .jobs import Job, Report, parse_job, run_homology, run_invariants
from .milnor import check_icis, milnor_icis
from .orders import MonomialOrder, elimination_order, global_order, local_order
from .rings import (
    PolyMatrix,
    Polynomial,
    Ring,
    determinant,
    jacobian,
    minors,
    parse_polynomial,
)
from .standard_basis import (
    Budgets,
    DEFAULT_BUDGETS,
    INFINITE,
    colength,
    ideal_quotient,
    intersect_ideals,
    is_member,
    normal_form,
    quotient_by_ideal,
    saturate,
    standard_basis,
    weak_normal_form,
    weak_normal_form_with_representation,
)

__version__ = "0.1.0"

__all__ = [
    "BouquetDescription",
    "BudgetExceededError",
    "Budgets",
    "CheckResult",
    "ComputationError",
    "DEFAULT_BUDGETS",
    "FgAbelianGroup",
    "HomologyTable",
    "INFINITE",
    "InconsistencyError",
    "InvalidIcisError",
    "InvariantReport",
    "Job",
    "MonomialOrder",
    "ParseError",
    "PolyMatrix",
    "Polynomial",
    "Report",
    "Ring",
    "RingMismatchError",
    "SingularityInput",
    "assemble_f",
    "bouquet",
    "check_icis",
    "colength",
    "determinant",
    "direct_sum",
    "dkp_fibre",
    "elimination_order",
    "global_order",
    "ideal_quotient",
    "intersect_ideals",
    "invariant_report",
    "is_member",
    "jacobian",
    "local_order",
    "milnor_fibre_homology",
    "milnor_icis",
    "minors",
    "normal_form",
    "parse_job",
    "parse_polynomial",
    "quotient_by_ideal",
    "run_homology",
    "run_invariants",
    "saturate",
    "smith_normal_form",
    "standard_basis",
    "table_B",
    "table_M",
    "table_pair_B_Bu",
    "table_X",
    "universal_coefficients_mod2",
    "weak_normal_form",
    "weak_normal_form_with_representation",
]
