"""Dirichlet-to-Neumann operators on weighted graphs with boundary.

Spectra, Cheeger-type constants, and the eigenvalue bounds that tie them
together, computed densely at desk scale.
"""

__version__ = "0.1.0"

from .graph import (  # noqa: E402
    BoundaryProblem,
    GraphError,
    ParseError,
    VertexSubset,
    WeightedGraph,
    build_boundary_problem,
    connected_components,
    parse_graph,
    parse_interior,
    parse_problem,
    relative_boundary,
)
from .harmonic import (  # noqa: E402
    apply_laplacian,
    dirichlet_energy,
    green_residual,
    harmonic_extension,
    normal_derivative,
    poisson_kernels,
)
from .dtn import (  # noqa: E402
    DtNOperator,
    SpectrumReport,
    assemble_dtn,
    eigenspace_one,
    pnorm_bound_check,
    q_operator,
    rayleigh_quotient,
    spectrum,
)
from .cheeger import (  # noqa: E402
    CheegerResult,
    cheeger_exact,
    cheeger_sweep,
    coarea_check,
    l1_mean,
    quotient,
    sobolev_quotient,
)
from .bounds import (  # noqa: E402
    BoundsReport,
    escobar_best,
    escobar_bound,
    escobar_optimal_a,
    robin_eigenvalue,
    verify_all,
    zeta1,
)
from .families import (  # noqa: E402
    FamilySpec,
    grid_problem,
    hub_fan_problem,
    hub_fan_witness,
    problem_digest,
    path_problem,
    random_problem,
    star_problem,
)
