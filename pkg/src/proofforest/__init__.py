"""Complete proof-search spaces for implicational intuitionistic logic.

Any sequent's space of cut-free proofs (finite and infinite alike) is
represented by a closed finitary term with formal greatest-fixed-point
binders; the package synthesizes that term, expands and interprets it to any
observation depth, decides provability, enumerates and counts finite proofs,
and checks membership of candidate terms.
"""

from .formula import (
    Atom,
    Context,
    Formula,
    Imp,
    ParseError,
    Sequent,
    StrippedSequent,
    decompose,
    format_context,
    format_formula,
    format_sequent,
    is_horn,
    is_horn_sequent,
    parse_context,
    parse_formula,
    parse_sequent,
    recompose,
    subformula_closure,
)
from .lambda_bar import (
    App,
    Lam,
    LambdaBarTerm,
    alpha_canonical,
    alpha_equal,
    alpha_key,
    format_term,
    free_vars,
    parse_term,
    term_size,
    typecheck,
    typecheck_horn,
)
from .gfp_calc import (
    ElimAlt,
    FinLam,
    FinTerm,
    FpRef,
    Gfp,
    InternalInvariantError,
    SynthesisStats,
    fin_alpha_equal,
    fin_alpha_key,
    fin_term_from_dict,
    fin_term_sequent,
    fin_term_to_dict,
    format_fin_term,
    free_fpvars,
    measure,
    synthesize,
    synthesize_horn,
    synthesize_with_stats,
    well_formed,
)
from .cocontract import (
    ContextSubst,
    cocontract_ctx,
    cocontract_vars,
    fan_out,
    leq,
    sequent_leq,
)
from .forest import (
    Environment,
    ForestApprox,
    ForestLam,
    ForestSum,
    InterpretationError,
    Suspended,
    approx_equal,
    canonical_key,
    effective_sequent,
    expand_solution,
    forest_to_dot,
    format_forest,
    interp_unfold,
)
from .search import (
    count_proofs,
    enumerate_proofs,
    has_any_member,
    member,
    members_up_to,
    provable,
    prune,
)
from .oracle import OracleOverflowError, bfs_prove

__version__ = "0.1.0"
