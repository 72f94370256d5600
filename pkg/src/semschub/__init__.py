"""
semschub: exact Schubert polynomials, standard-elementary-monomial (SEM)
expansions, nonintersecting lattice path representations of both, and the
quantum deformation obtained by replacing elementary symmetric polynomials
with their q-analogues.
"""

from .errors import BudgetError, DomainError, PatternViolation
from .perms import (
    LoweringPermutation,
    Permutation,
    THIRTEEN_PATTERNS,
    all_permutations,
    avoids,
    avoids_thirteen,
    classify,
    contains_pattern,
    direct_sum,
    factorize,
    from_code,
    identity,
    longest_element,
    parse_permutation,
    q_set,
    separable_decomposition,
    skew_sum,
)
from .poly import (
    Polynomial,
    SemExpandError,
    SemExpansion,
    determinant,
    divided_difference,
    divided_difference_word,
    elementary,
    schubert_expand,
    schur,
    sem_expand,
    sem_monomial,
)
from .schubert import (
    PipeDream,
    quantum_elementary,
    quantum_elementary_via_matrix,
    quantum_schubert,
    reduced_pipe_dreams,
    schubert,
    schubert_via_pipedreams,
)
from .lattice import (
    LatticeRep,
    PathSystem,
    compact_rep,
    delete_staircase,
    drop,
    enumerate_path_systems,
    lgv_sum,
    lower,
    point_weight,
    product,
    proper_rep,
    pull,
    rep_213,
    rep_321,
    rep_413625,
    rep_determinant,
    rep_determinant_quantum,
    rep_dominant,
    rep_grassmannian,
    sem_of_proper,
    slide_left_at,
    slide_left_below,
    translate,
)

__version__ = "0.1.0"
