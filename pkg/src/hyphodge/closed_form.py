"""Closed combinatorial formulas for the local Hodge data.

Everything in this module is evaluated directly from the exponent tuples:
Jordan structures at the three singular points, the graded nearby tables at 0
and infinity, the one-dimensional vanishing entry at the finite point, and
the graded fibre dimensions.  Degrees are not determined here; see the
recursive engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import nonseparated_count, special_exponent
from .core import (
    AT_ONE,
    INFINITY,
    ZERO,
    HodgeProfile,
    HypergeometricParams,
    LocalHodgeTable,
    SingularPoint,
    TableKind,
    UnknownData,
    frac,
    multiplicity_and_level,
)


@dataclass(frozen=True)
class JordanStructure:
    """Eigenvalue residues with Jordan block sizes at one singular point."""

    point: SingularPoint
    blocks: tuple[tuple[Fraction, int], ...]

    def rank(self) -> int:
        return sum(size for _r, size in self.blocks)


def jordan_structure(
    params: HypergeometricParams, point: SingularPoint
) -> JordanStructure:
    """Jordan type of the local monodromy.

    At 0 and infinity each distinct residue carries a single block whose size
    is the multiplicity of the residue in its tuple.  At the finite point the
    monodromy is a reflection: diagonalizable with one special eigenvalue when
    that eigenvalue is non-trivial, a transvection (one 2-block at eigenvalue
    1) otherwise.
    """
    params.require_irreducible()
    if point == ZERO or point == INFINITY:
        values = params.alpha if point == ZERO else params.beta
        blocks = tuple(
            (r, values.count(r)) for r in sorted(set(values))
        )
        return JordanStructure(point, blocks)
    n = params.n
    special = special_exponent(params)
    one = Fraction(0)
    if special == 1:
        blocks = ((one, 2),) + ((one, 1),) * (n - 2)
    else:
        blocks = tuple(sorted([(one, 1)] * (n - 1) + [(frac(special), 1)]))
    return JordanStructure(point, blocks)


def nearby_closed(
    params: HypergeometricParams, point: SingularPoint
) -> LocalHodgeTable:
    """Graded nearby table at 0 or infinity.

    Each distinct residue class contributes exactly one entry: its level is
    the multiplicity minus one and its Hodge index is the non-separation
    count of the class representative.
    """
    params.require_irreducible()
    if point not in (ZERO, INFINITY):
        raise ValueError("closed nearby tables exist at 0 and infinity only")
    values = params.alpha if point == ZERO else params.beta
    entries = {}
    for m, r in enumerate(values):
        if r in (key[0] for key in entries):
            continue
        _mult, level = multiplicity_and_level(values, m)
        entries[(r, level, nonseparated_count(params, r))] = 1
    return LocalHodgeTable(point, TableKind.NEARBY, entries)


def _tail_no_wrap_count(params: HypergeometricParams) -> int:
    """Count the factors whose tail sum sits in ``(0, 1 - drop]``.

    Scanning the exponent drops ``d_i = {beta_i - alpha_i}``, factor ``i``
    counts when the fractional tail ``{d_{i+1} + ... + d_n}`` is non-zero and
    at most ``1 - d_i`` (the accumulation does not wrap past the circle).
    The result does not depend on the order of the factors.
    """
    drops = params.differences()
    tail = Fraction(0)
    count = 0
    for d in reversed(drops):
        if 0 < tail <= 1 - d:
            count += 1
        tail = frac(tail + d)
    return count


def vanishing_at_one_closed(params: HypergeometricParams) -> LocalHodgeTable:
    """The single graded vanishing entry at the finite point.

    The eigenvalue is the reflection eigenvalue; the level is always 0.  The
    Hodge index is the no-wrap tail count, plus one in the transvection case
    where the entry is graded through the nilpotent part.  For one or two
    factors this agrees with counting the running sums of the exponent drops
    that stay below the special exponent.
    """
    params.require_irreducible()
    special = special_exponent(params)
    p = _tail_no_wrap_count(params) + (1 if special == 1 else 0)
    return LocalHodgeTable(
        AT_ONE, TableKind.VANISHING, {(frac(special), 0, p): 1}
    )


def counts_at_one(params: HypergeometricParams) -> tuple[int, int]:
    """Nearby eigenvalue counts at the finite point.

    Returns ``(count at eigenvalue 1, count at the special eigenvalue)``:
    ``(n - 1, 1)`` for a non-trivial special eigenvalue and ``(n, 0)`` in the
    transvection case, where the special eigenvalue merges into 1.
    """
    params.require_irreducible()
    if special_exponent(params) == 1:
        return params.n, 0
    return params.n - 1, 1


def hodge_numbers(nearby_zero: LocalHodgeTable) -> dict[int, int]:
    """Graded fibre dimensions obtained by summing the table at 0.

    An entry of level ``l`` at index ``p`` spreads over ``p - l .. p``.
    """
    if nearby_zero.unknown:
        raise UnknownData("cannot sum a table with undetermined slots")
    out: dict[int, int] = {}
    for (_r, lv, p), m in nearby_zero.entries.items():
        for k in range(lv + 1):
            out[p - k] = out.get(p - k, 0) + m
    return dict(sorted(out.items()))


def profile_closed(params: HypergeometricParams) -> HodgeProfile:
    """Assemble the full closed-form profile.

    Degrees are left undetermined (the closed formulas do not produce them);
    the vanishing entry at the finite point is graded one step below the
    fibre-consistent level except in the transvection case, an offset
    inherited from the rank-one normalization.
    """
    params.require_irreducible()
    nearby_zero = nearby_closed(params, ZERO)
    return HodgeProfile(
        rank=params.n,
        nearby_zero=nearby_zero,
        nearby_infinity=nearby_closed(params, INFINITY),
        nearby_finite=(),
        vanishing_finite=(vanishing_at_one_closed(params),),
        hodge=hodge_numbers(nearby_zero),
        degrees=None,
        note="closed formulas; pair order as given",
    )
