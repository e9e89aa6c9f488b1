"""Orthogonal polynomials and Hankel-determinant asymptotics for free families.

The package computes mixed moments of free noncommutative variables from
their marginal moment sequences, builds Gram/Hankel determinants over word
index sets, extracts recurrence coefficients of one-variable orthogonal
polynomials, and verifies the determinant-growth limit
ln D_{q+1} / (q n^q) -> ((n-1)/n) sum_k E_n(x_k) by independent routes.
"""

from .errors import (
    ConfigError,
    DegenerateAt,
    DegenerateLaw,
    EnumerationCapExceeded,
    FpszError,
    InvalidMoments,
    NotClassG,
    OrderUnsupported,
    QuadratureFailure,
)
from .freemoments import FLOAT, RATIONAL, FreeFamily, family_from_config, gram_entry, mixed_moment
from .grammat import (
    GramReport,
    PolyExpansion,
    expansion_via_cofactors,
    gram_matrix,
    gram_schmidt_expansion,
    hankel_determinant,
    index_words,
    orthogonal_norm,
)
from .laws import (
    DensitySpec,
    MarginalLaw,
    arcsine,
    arcsine_density,
    circle_cosine,
    class_g_check,
    density_from_config,
    free_poisson,
    from_moments,
    haar_unitary,
    law_from_config,
    point_mass_unitary,
    semicircle,
    semicircle_density,
    two_point,
    uniform_density,
)
from .orthopoly1d import (
    AsymptoteReport,
    JacobiCoefficients,
    NormSequence,
    VerblunskyCoefficients,
    hankel_determinant_1d,
    jacobi_coefficients,
    orthogonal_norms,
    szego_asymptote_1d,
    verblunsky_coefficients,
)
from .szegolimit import (
    ConvergenceTrace,
    EntropyEstimate,
    LevelLogs,
    LimitPrediction,
    convergence_trace,
    cumulative_recursion,
    cumulative_recursion_closed_form,
    entropy_from_jacobi,
    entropy_from_verblunsky,
    entropy_number,
    level_log,
    level_log_enumerated,
    level_log_unrolled_variant,
    level_logs,
    level_product_exact,
    limit_prediction,
    richardson_extrapolation,
)
from .words import (
    Word,
    canonicalize,
    compare,
    concat,
    identity_word,
    parse_word,
    star_word,
    word_to_text,
    words_before,
    words_below_length,
    words_of_length,
)

__version__ = "0.1.0"
