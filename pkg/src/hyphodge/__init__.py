"""Exact local Hodge data of irreducible hypergeometric connections.

Two independent engines compute the complete local numerical package (graded
nearby and vanishing tables at 0, 1 and infinity, fibre dimensions, degrees)
from exact rational exponents: closed combinatorial formulas and a recursive
middle-convolution engine.  They are cross-validated against each other and
against the combinatorial identities relating the two index conventions.
"""

from .closed_form import (
    JordanStructure,
    counts_at_one,
    hodge_numbers,
    jordan_structure,
    nearby_closed,
    profile_closed,
    vanishing_at_one_closed,
)
from .combinatorics import (
    SeparationCase,
    ascending_pair_count,
    check_count_identity,
    contribution_pair,
    dualize_table,
    interlacing_index,
    nonseparated_count,
    separated,
    separation_case,
    special_exponent,
)
from .convolution import (
    ConvolutionContext,
    conjugate_table,
    convolve_degrees,
    convolve_hodge_numbers,
    convolve_nearby_infinity,
    convolve_nearby_zero,
    convolve_vanishing_finite,
    shift_residues,
    twist,
    twist_degrees,
    unipotent_vanishing_from_nearby,
)
from .core import (
    AT_ONE,
    INFINITY,
    ZERO,
    HodgeProfile,
    HypergeometricParams,
    InternalUnknownConsulted,
    LocalHodgeTable,
    NoValidPeel,
    ReducibleInput,
    Residue,
    SingularPoint,
    TableKind,
    UnknownData,
    equal_up_to_shift,
    format_rational,
    frac,
    multiplicity_and_level,
    parse_rational,
    primitive_and_coprimitive,
    table_shift,
    total_from_primitive,
    unit_rep,
)
from .recursion import (
    EngineReport,
    PeelCase,
    PeelPlan,
    base_profile,
    choose_peel,
    profile_recursive,
    verify_cross_engine,
)

__version__ = "0.1.0"
