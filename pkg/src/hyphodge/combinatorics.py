"""Circle-order combinatorics of exponent pairs.

These counts locate the graded pieces of the Hodge filtration.  Everything
works with exact residues in ``[0, 1)`` read as points on the oriented unit
circle; comparisons are literal inequalities between those representatives.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .core import (
    INFINITY,
    ZERO,
    HypergeometricParams,
    LocalHodgeTable,
    SingularPoint,
    frac,
    unit_rep,
)


class SeparationCase(Enum):
    """Which strict chain, if any, witnesses separation of a pair."""

    ALPHA_GAMMA_BETA = "a<g<b"
    GAMMA_BETA_ALPHA = "g<b<a"
    BETA_ALPHA_GAMMA = "b<a<g"
    NOT_SEPARATED = "none"


def separation_case(a: Fraction, g: Fraction, b: Fraction) -> SeparationCase:
    """Detect the chain placing ``g`` strictly inside the arc from ``a`` to ``b``.

    The three chains are ``a < g < b``, ``g < b < a`` and ``b < a < g`` on
    ``[0, 1)``.  Coinciding values never separate.
    """
    if a < g < b:
        return SeparationCase.ALPHA_GAMMA_BETA
    if g < b < a:
        return SeparationCase.GAMMA_BETA_ALPHA
    if b < a < g:
        return SeparationCase.BETA_ALPHA_GAMMA
    return SeparationCase.NOT_SEPARATED


def separated(a: Fraction, g: Fraction, b: Fraction) -> bool:
    return separation_case(a, g, b) is not SeparationCase.NOT_SEPARATED


def nonseparated_count(params: HypergeometricParams, g: Fraction) -> int:
    """Number of pairs not separated by ``g``.

    Independent of the pair order; this is the Hodge index attached to the
    eigenvalue class of ``g`` at 0 and at infinity.
    """
    g = frac(g)
    return sum(
        1 for a, b in params.pairs() if not separated(a, g, b)
    )


def special_exponent(params: HypergeometricParams) -> Fraction:
    """The ``(0, 1]`` exponent of the reflection eigenvalue at the finite point.

    Congruent to the sum of all exponent drops mod 1; the value 1 corresponds
    to a unipotent reflection (a transvection).
    """
    return unit_rep(sum(params.differences(), Fraction(0)))


def interlacing_index(
    params: HypergeometricParams, m: int, point: SingularPoint
) -> int:
    """Position count comparing one exponent against both sorted tuples.

    At 0 the reference is ``alpha[m]`` and both comparisons are strict; at
    infinity the reference is ``beta[m]`` and its own tuple is counted with
    the weak inequality.  Defined on the solutions-side normalization, hence
    offset from :func:`nonseparated_count` by the ascending-pair count.
    """
    if not 0 <= m < params.n:
        raise IndexError(f"index {m} out of range")
    if point == ZERO:
        x = params.alpha[m]
        return sum(1 for b in params.beta if b < x) - sum(
            1 for a in params.alpha if a < x
        )
    if point == INFINITY:
        x = params.beta[m]
        return sum(1 for b in params.beta if b <= x) - sum(
            1 for a in params.alpha if a < x
        )
    raise ValueError("interlacing index is defined at 0 and infinity only")


def ascending_pair_count(params: HypergeometricParams) -> int:
    """Count of pairs with ``alpha_k < beta_k``; depends only on the pairing."""
    return sum(1 for a, b in params.pairs() if a < b)


def contribution_pair(
    a: Fraction, b: Fraction, g: Fraction, point: SingularPoint
) -> tuple[int, int]:
    """Per-pair contributions to the two counts compared by the identity.

    Returns ``(to nonseparated count, to interlacing index)`` for a single
    pair ``(a, b)`` against the reference ``g``.  At any reference value the
    difference of the two contributions is 1 exactly when ``a < b``, which is
    what makes :func:`check_count_identity` hold.
    """
    first = 0 if separated(a, g, b) else 1
    if point == ZERO:
        second = (1 if b < g else 0) - (1 if a < g else 0)
    elif point == INFINITY:
        second = (1 if b <= g else 0) - (1 if a < g else 0)
    else:
        raise ValueError("contributions are defined at 0 and infinity only")
    return first, second


def check_count_identity(
    params: HypergeometricParams, m: int, point: SingularPoint
) -> bool:
    """Verify that the two index conventions differ by the ascending count.

    The reference is ``alpha[m]`` at 0 and ``beta[m]`` at infinity.  Holds for
    every irreducible tuple; cross-coincidences between the two tuples (which
    irreducibility forbids) break the per-pair bookkeeping.
    """
    g = params.alpha[m] if point == ZERO else params.beta[m]
    lhs = nonseparated_count(params, g) - interlacing_index(params, m, point)
    return lhs == ascending_pair_count(params)


def dualize_table(table: LocalHodgeTable) -> LocalHodgeTable:
    """Dual-module transform: conjugate eigenvalues and flip the grading.

    An entry ``(r, level, p)`` becomes ``({-r}, level, level - p)``; unknown
    slots follow their residues.  This is an involution and preserves the
    total Jordan dimension.
    """
    return LocalHodgeTable(
        table.point,
        table.kind,
        {
            (frac(-r), lv, lv - p): m
            for (r, lv, p), m in table.entries.items()
        },
        frozenset((frac(-r), lv) for r, lv in table.unknown),
    )
