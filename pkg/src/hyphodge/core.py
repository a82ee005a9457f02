"""Exact residue arithmetic and the local Hodge data model.

Eigenvalues of local monodromies are recorded through rational residues in
``[0, 1)``.  Which complex eigenvalue a residue ``r`` stands for depends on the
singular point: ``exp(-2*pi*i*r)`` at 0 and at finite points, ``exp(+2*pi*i*r)``
at infinity.  Interval conditions used by the convolution transforms are
evaluated on the half-open representative in ``(0, 1]`` (see :func:`unit_rep`),
where the class of 0 is represented by 1.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to use concurrently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

Residue = Fraction
"""Type alias: a residue is an exact rational in [0, 1)."""


class UnknownData(Exception):
    """A queried value depends on a table slot that is not determined."""


class ReducibleInput(Exception):
    """The two exponent tuples share a value, so the module decomposes."""


class NoValidPeel(Exception):
    """No rank-one factor can be peeled for the requested target."""


class InternalUnknownConsulted(Exception):
    """The recursive engine needed an undetermined slot; this is a bug."""


def frac(value: Fraction | int) -> Fraction:
    """Fractional part of an exact rational, always in ``[0, 1)``.

    >>> frac(Fraction(5, 4))
    Fraction(1, 4)
    >>> frac(Fraction(-1, 3))
    Fraction(2, 3)
    """
    q = Fraction(value)
    return Fraction(q.numerator % q.denominator, q.denominator)


def unit_rep(value: Fraction | int) -> Fraction:
    """Representative of a residue class in ``(0, 1]``, sending 0 to 1.

    The value 1 corresponds to the eigenvalue 1; every other class keeps its
    fractional part.  ``frac`` and ``unit_rep`` are mutually inverse between
    ``[0, 1)`` and ``(0, 1]``.
    """
    r = frac(value)
    return r if r else Fraction(1)


_RATIONAL_RE = re.compile(r"[+-]?\d+(/\d+)?\Z")


def parse_rational(text: str) -> Fraction:
    """Parse the shared text format ``a/b`` or ``a`` (optional leading minus).

    A Unicode minus sign is accepted.  Anything else (floats, whitespace
    inside the number, empty strings) is rejected with :class:`ValueError`.
    """
    s = text.strip().replace("−", "-")
    if not _RATIONAL_RE.fullmatch(s):
        raise ValueError(f"not a rational in a/b form: {text!r}")
    return Fraction(s)


def format_rational(value: Fraction) -> str:
    """Render an exact rational in the shared ``a/b`` (or integer) format."""
    return str(value)


def multiplicity_and_level(values: Sequence[Fraction], m: int) -> tuple[int, int]:
    """Multiplicity of ``values[m]`` in the tuple, and its nilpotency level.

    The level is multiplicity minus one: a residue repeated ``k`` times
    carries a single Jordan block of size ``k``.
    """
    if not 0 <= m < len(values):
        raise IndexError(f"index {m} out of range for tuple of length {len(values)}")
    mult = sum(1 for v in values if v == values[m])
    return mult, mult - 1


class TableKind(Enum):
    NEARBY = "nearby"
    VANISHING = "vanishing"


_POINT_KINDS = ("zero", "finite", "infinity")


@dataclass(frozen=True)
class SingularPoint:
    """One of the regular singularities: 0, a finite point, or infinity.

    For hypergeometric modules the only finite singular point is 1, which is
    ``SingularPoint("finite", 0)``.
    """

    kind: str
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind not in _POINT_KINDS:
            raise ValueError(f"unknown point kind {self.kind!r}")
        if self.kind != "finite" and self.index != 0:
            raise ValueError("only finite points carry an index")
        if self.index < 0:
            raise ValueError("negative point index")

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self) -> str:
        if self.kind == "zero":
            return "0"
        if self.kind == "infinity":
            return "oo"
        return "1" if self.index == 0 else f"x{self.index + 1}"


ZERO = SingularPoint("zero")
INFINITY = SingularPoint("infinity")
AT_ONE = SingularPoint("finite", 0)

Entry = tuple[Fraction, int, int]
"""Table key: (eigenvalue residue, nilpotency level, Hodge index)."""


@dataclass(frozen=True)
class LocalHodgeTable:
    """Multiset of graded primitive dimensions at one singular point.

    ``entries`` maps ``(residue, level, p)`` to a positive multiplicity; an
    absent key means zero.  ``unknown`` lists ``(residue, level)`` slots whose
    content is not determined by the data that produced the table; reading
    through such a slot raises :class:`UnknownData`.
    """

    point: SingularPoint
    kind: TableKind
    entries: dict[Entry, int] = field(default_factory=dict)
    unknown: frozenset[tuple[Fraction, int]] = frozenset()

    def __post_init__(self) -> None:
        ent: dict[Entry, int] = {}
        for (residue, level, p), mult in self.entries.items():
            residue = Fraction(residue)
            if residue != frac(residue):
                raise ValueError(f"residue {residue} not reduced to [0, 1)")
            if level < 0:
                raise ValueError("negative nilpotency level")
            if mult < 1:
                raise ValueError("multiplicities must be positive")
            ent[(residue, int(level), int(p))] = int(mult)
        unk = set()
        for residue, level in self.unknown:
            residue = Fraction(residue)
            if residue != frac(residue) or level < 0:
                raise ValueError("malformed unknown slot")
            unk.add((residue, int(level)))
        overlap = {(r, lv) for (r, lv, _p) in ent} & unk
        if overlap:
            raise ValueError(f"slots both determined and unknown: {sorted(overlap)}")
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "unknown", frozenset(unk))

    def has_unknown(self, residue: Fraction, level: int | None = None) -> bool:
        if level is None:
            return any(r == residue for r, _ in self.unknown)
        return (residue, level) in self.unknown

    def multiplicity(self, residue: Fraction, level: int, p: int) -> int:
        if self.has_unknown(residue, level):
            raise UnknownData(f"slot ({residue}, {level}) is undetermined")
        return self.entries.get((residue, level, p), 0)

    def class_entries(self, residue: Fraction) -> dict[tuple[int, int], int]:
        """All (level, p) -> multiplicity data for one eigenvalue class."""
        return {
            (lv, p): m for (r, lv, p), m in self.entries.items() if r == residue
        }

    def residues(self) -> set[Fraction]:
        out = {r for (r, _lv, _p) in self.entries}
        out.update(r for r, _lv in self.unknown)
        return out

    def total_dimension(self) -> int:
        """Sum of multiplicity times Jordan size over all entries."""
        return sum(m * (lv + 1) for (_r, lv, _p), m in self.entries.items())

    def sorted_items(self) -> list[tuple[Entry, int]]:
        return sorted(self.entries.items())


def table_shift(table: LocalHodgeTable, s: int) -> LocalHodgeTable:
    """Translate every Hodge index by ``s``; unknown slots are preserved."""
    return LocalHodgeTable(
        table.point,
        table.kind,
        {(r, lv, p + s): m for (r, lv, p), m in table.entries.items()},
        table.unknown,
    )


def total_from_primitive(table: LocalHodgeTable, residue: Fraction, p: int) -> int:
    """Total graded dimension at ``(residue, p)`` from the primitive entries.

    An entry of level ``l`` spreads over the ``l + 1`` consecutive indices
    below and including its own, so the total at ``p`` collects every entry
    ``(residue, l, q)`` with ``p <= q <= p + l``.
    """
    if table.has_unknown(residue):
        raise UnknownData(f"class {residue} has undetermined slots")
    return sum(
        m
        for (r, lv, q), m in table.entries.items()
        if r == residue and p <= q <= p + lv
    )


def primitive_and_coprimitive(
    table: LocalHodgeTable, residue: Fraction, p: int
) -> tuple[int, int]:
    """Primitive and coprimitive graded dimensions at ``(residue, p)``."""
    if table.has_unknown(residue):
        raise UnknownData(f"class {residue} has undetermined slots")
    prim = sum(
        m for (r, lv, q), m in table.entries.items() if r == residue and q == p
    )
    coprim = sum(
        m for (r, lv, q), m in table.entries.items() if r == residue and q == p + lv
    )
    return prim, coprim


@dataclass(frozen=True)
class HypergeometricParams:
    """The pair of exponent tuples defining a hypergeometric module.

    The order of the list is meaningful: it records the chosen decomposition
    into rank-one convolution factors, pairing ``alpha[k]`` with ``beta[k]``.
    """

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        alpha = tuple(frac(a) for a in self.alpha)
        beta = tuple(frac(b) for b in self.beta)
        if len(alpha) != len(beta) or not alpha:
            raise ValueError("alpha and beta must be non-empty tuples of equal length")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Fraction, Fraction]]) -> "HypergeometricParams":
        pairs = tuple(pairs)
        return cls(tuple(a for a, _ in pairs), tuple(b for _, b in pairs))

    @property
    def n(self) -> int:
        return len(self.alpha)

    def pairs(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return tuple(zip(self.alpha, self.beta))

    def differences(self) -> tuple[Fraction, ...]:
        """Per-factor exponent drops ``{beta_k - alpha_k}``."""
        return tuple(frac(b - a) for a, b in zip(self.alpha, self.beta))

    @property
    def is_irreducible(self) -> bool:
        return not (set(self.alpha) & set(self.beta))

    def require_irreducible(self) -> None:
        shared = sorted(set(self.alpha) & set(self.beta))
        if shared:
            raise ReducibleInput(
                f"alpha and beta share the exponent {format_rational(shared[0])}; "
                "irreducibility requires alpha_i != beta_j for all i, j"
            )

    def permuted(self, order: Sequence[int]) -> "HypergeometricParams":
        if sorted(order) != list(range(self.n)):
            raise ValueError("not a permutation of the pair indices")
        return HypergeometricParams(
            tuple(self.alpha[i] for i in order), tuple(self.beta[i] for i in order)
        )

    def shifted(self, c: Fraction) -> "HypergeometricParams":
        """Subtract ``c`` from every exponent (mod 1)."""
        return HypergeometricParams(
            tuple(frac(a - c) for a in self.alpha),
            tuple(frac(b - c) for b in self.beta),
        )

    def peeled(self, j: int) -> "HypergeometricParams":
        """Drop the pair at index ``j``."""
        if self.n < 2:
            raise ValueError("cannot peel a rank-one tuple")
        return HypergeometricParams.from_pairs(
            p for k, p in enumerate(self.pairs()) if k != j
        )

    def canonical(self) -> "HypergeometricParams":
        """Same pairing with the pair list sorted."""
        return HypergeometricParams.from_pairs(sorted(self.pairs()))


def _prune(mapping: dict[int, int]) -> dict[int, int]:
    return {k: v for k, v in sorted(mapping.items()) if v}


@dataclass(frozen=True)
class HodgeProfile:
    """The full local Hodge package of one module.

    ``hodge`` gives the graded dimensions of the generic fibre and ``degrees``
    (optional) the graded degrees of the natural extension across the
    singularities.  ``nearby_finite`` is empty for hypergeometric profiles:
    the theory pins only the eigenvalue counts at the finite point, not their
    grading (see :func:`hyphodge.closed_form.counts_at_one`).
    """

    rank: int
    nearby_zero: LocalHodgeTable
    nearby_infinity: LocalHodgeTable
    nearby_finite: tuple[LocalHodgeTable, ...] = ()
    vanishing_finite: tuple[LocalHodgeTable, ...] = ()
    hodge: dict[int, int] = field(default_factory=dict)
    degrees: dict[int, int] | None = None
    note: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "hodge", _prune(dict(self.hodge)))
        if self.degrees is not None:
            object.__setattr__(self, "degrees", _prune(dict(self.degrees)))
        object.__setattr__(self, "nearby_finite", tuple(self.nearby_finite))
        object.__setattr__(self, "vanishing_finite", tuple(self.vanishing_finite))
        if sum(self.hodge.values()) != self.rank:
            raise ValueError("graded fibre dimensions do not sum to the rank")
        for table in (self.nearby_zero, self.nearby_infinity):
            if not table.unknown and table.total_dimension() != self.rank:
                raise ValueError(
                    f"table at {table.point} has dimension "
                    f"{table.total_dimension()}, expected {self.rank}"
                )

    def shifted(self, s: int) -> "HodgeProfile":
        """Translate the whole Hodge grading by ``s``."""
        return HodgeProfile(
            rank=self.rank,
            nearby_zero=table_shift(self.nearby_zero, s),
            nearby_infinity=table_shift(self.nearby_infinity, s),
            nearby_finite=tuple(table_shift(t, s) for t in self.nearby_finite),
            vanishing_finite=tuple(table_shift(t, s) for t in self.vanishing_finite),
            hodge={p + s: v for p, v in self.hodge.items()},
            degrees=None
            if self.degrees is None
            else {p + s: v for p, v in self.degrees.items()},
            note=self.note,
        )


def _profile_min_p(profile: HodgeProfile) -> int:
    ps = [min(profile.hodge)]
    for table in (
        profile.nearby_zero,
        profile.nearby_infinity,
        *profile.nearby_finite,
        *profile.vanishing_finite,
    ):
        ps.extend(p for (_r, _lv, p) in table.entries)
    if profile.degrees:
        ps.extend(profile.degrees)
    return min(ps)


def _profiles_match(a: HodgeProfile, b: HodgeProfile) -> bool:
    if (
        a.rank != b.rank
        or a.nearby_zero != b.nearby_zero
        or a.nearby_infinity != b.nearby_infinity
        or a.nearby_finite != b.nearby_finite
        or a.vanishing_finite != b.vanishing_finite
        or a.hodge != b.hodge
    ):
        return False
    if a.degrees is not None and b.degrees is not None:
        return a.degrees == b.degrees
    # One-sided degree data does not veto agreement of the rest.
    return True


def equal_up_to_shift(a: HodgeProfile, b: HodgeProfile) -> int | None:
    """The unique grading translation taking ``a`` to ``b``, if one exists.

    Returns the integer ``s`` such that shifting all of ``a`` by ``s``
    reproduces ``b`` exactly (notes excluded), or ``None`` when no translation
    works.  Degrees are compared only when both profiles carry them.
    """
    if a.rank != b.rank:
        return None
    s = _profile_min_p(b) - _profile_min_p(a)
    return s if _profiles_match(a.shifted(s), b) else None
