"""Lossless JSON documents and the flat TSV projection.

Rationals are serialized as ``a/b`` strings, never as floats; Hodge indices,
levels and multiplicities are plain integers.  ``parse_document`` inverts
``emit`` exactly on compute-style documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping

from .core import (
    AT_ONE,
    INFINITY,
    ZERO,
    HodgeProfile,
    HypergeometricParams,
    LocalHodgeTable,
    SingularPoint,
    TableKind,
    format_rational,
    parse_rational,
)
from .recursion import EngineReport

SCHEMA_VERSION = "1"


def point_to_str(point: SingularPoint) -> str:
    if point == ZERO:
        return "zero"
    if point == INFINITY:
        return "infinity"
    if point == AT_ONE:
        return "one"
    return f"finite:{point.index}"


def point_from_str(text: str) -> SingularPoint:
    if text == "zero":
        return ZERO
    if text == "infinity":
        return INFINITY
    if text == "one":
        return AT_ONE
    if text.startswith("finite:"):
        return SingularPoint("finite", int(text.split(":", 1)[1]))
    raise ValueError(f"unknown singular point {text!r}")


def table_to_dict(table: LocalHodgeTable) -> dict[str, Any]:
    return {
        "point": point_to_str(table.point),
        "kind": table.kind.value,
        "entries": [
            {
                "residue": format_rational(r),
                "level": lv,
                "p": p,
                "mult": m,
            }
            for (r, lv, p), m in table.sorted_items()
        ],
        "unknown": [
            {"residue": format_rational(r), "level": lv}
            for r, lv in sorted(table.unknown)
        ],
    }


def table_from_dict(data: Mapping[str, Any]) -> LocalHodgeTable:
    return LocalHodgeTable(
        point_from_str(data["point"]),
        TableKind(data["kind"]),
        {
            (parse_rational(e["residue"]), int(e["level"]), int(e["p"])): int(
                e["mult"]
            )
            for e in data["entries"]
        },
        frozenset(
            (parse_rational(u["residue"]), int(u["level"]))
            for u in data.get("unknown", [])
        ),
    )


def _int_map_to_dict(mapping: Mapping[int, int]) -> dict[str, int]:
    return {str(p): v for p, v in sorted(mapping.items())}


def _int_map_from_dict(data: Mapping[str, Any]) -> dict[int, int]:
    return {int(p): int(v) for p, v in data.items()}


def profile_to_dict(profile: HodgeProfile) -> dict[str, Any]:
    return {
        "rank": profile.rank,
        "nearby_zero": table_to_dict(profile.nearby_zero),
        "nearby_infinity": table_to_dict(profile.nearby_infinity),
        "nearby_finite": [table_to_dict(t) for t in profile.nearby_finite],
        "vanishing_finite": [table_to_dict(t) for t in profile.vanishing_finite],
        "hodge": _int_map_to_dict(profile.hodge),
        "degrees": None
        if profile.degrees is None
        else _int_map_to_dict(profile.degrees),
        "note": profile.note,
    }


def profile_from_dict(data: Mapping[str, Any]) -> HodgeProfile:
    return HodgeProfile(
        rank=int(data["rank"]),
        nearby_zero=table_from_dict(data["nearby_zero"]),
        nearby_infinity=table_from_dict(data["nearby_infinity"]),
        nearby_finite=tuple(table_from_dict(t) for t in data["nearby_finite"]),
        vanishing_finite=tuple(
            table_from_dict(t) for t in data["vanishing_finite"]
        ),
        hodge=_int_map_from_dict(data["hodge"]),
        degrees=None
        if data.get("degrees") is None
        else _int_map_from_dict(data["degrees"]),
        note=data.get("note", ""),
    )


def params_to_dict(params: HypergeometricParams) -> dict[str, Any]:
    return {
        "alpha": [format_rational(a) for a in params.alpha],
        "beta": [format_rational(b) for b in params.beta],
    }


def params_from_dict(data: Mapping[str, Any]) -> HypergeometricParams:
    def one(value: Any) -> Fraction:
        if isinstance(value, str):
            return parse_rational(value)
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        raise ValueError(f"exponents must be 'a/b' strings, got {value!r}")

    return HypergeometricParams(
        tuple(one(v) for v in data["alpha"]),
        tuple(one(v) for v in data["beta"]),
    )


def report_to_dict(report: EngineReport) -> dict[str, Any]:
    return {
        "params": params_to_dict(report.params),
        "agree": report.agree,
        "shift": report.shift,
        "tables": dict(report.table_equal),
        "identities_ok": report.identities_ok,
        "mismatches": list(report.mismatches),
        "error": report.error,
    }


def report_from_dict(data: Mapping[str, Any]) -> EngineReport:
    return EngineReport(
        params=params_from_dict(data["params"]),
        agree=bool(data["agree"]),
        shift=None if data["shift"] is None else int(data["shift"]),
        table_equal={k: bool(v) for k, v in data["tables"].items()},
        identities_ok=bool(data["identities_ok"]),
        mismatches=tuple(data["mismatches"]),
        error=data.get("error"),
    )


def build_compute_document(
    params: HypergeometricParams,
    engine: str,
    profiles: Mapping[str, HodgeProfile],
    report: EngineReport | None,
    normalization: int,
) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "compute",
        "params": params_to_dict(params),
        "engine": engine,
        "profiles": {name: profile_to_dict(p) for name, p in profiles.items()},
        "report": None if report is None else report_to_dict(report),
        "normalization": normalization,
    }


def parse_document(data: Mapping[str, Any]) -> dict[str, Any]:
    """Typed view of a compute document; inverse of the emitters above."""
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported schema version")
    return {
        "schema_version": data["schema_version"],
        "command": data["command"],
        "params": params_from_dict(data["params"]),
        "engine": data["engine"],
        "profiles": {
            name: profile_from_dict(p) for name, p in data["profiles"].items()
        },
        "report": None
        if data.get("report") is None
        else report_from_dict(data["report"]),
        "normalization": int(data["normalization"]),
    }


def emit_document(parsed: Mapping[str, Any]) -> dict[str, Any]:
    """Re-serialize the typed view produced by :func:`parse_document`."""
    return build_compute_document(
        parsed["params"],
        parsed["engine"],
        parsed["profiles"],
        parsed["report"],
        parsed["normalization"],
    )


def document_to_json(doc: Mapping[str, Any], compact: bool = False) -> str:
    if compact:
        return json.dumps(doc, separators=(",", ":"))
    return json.dumps(doc, indent=2)


def tsv_lines(
    params: HypergeometricParams,
    profiles: Mapping[str, HodgeProfile],
    normalization: int,
) -> list[str]:
    """Flat projection: one row per table entry, spreadsheet-friendly."""
    lines = [
        "# alpha " + ",".join(format_rational(a) for a in params.alpha),
        "# beta " + ",".join(format_rational(b) for b in params.beta),
        f"# normalization {normalization}",
    ]
    for name, profile in profiles.items():
        lines.append(f"# engine {name}")
        lines.append(
            "# hodge " + " ".join(f"{p}:{v}" for p, v in sorted(profile.hodge.items()))
        )
        if profile.degrees is not None:
            lines.append(
                "# degrees "
                + " ".join(f"{p}:{v}" for p, v in sorted(profile.degrees.items()))
            )
        lines.append("point\tresidue\tlevel\tp\tmult")
        for table in (
            profile.nearby_zero,
            profile.nearby_infinity,
            *profile.nearby_finite,
            *profile.vanishing_finite,
        ):
            label = point_to_str(table.point)
            for (r, lv, p), m in table.sorted_items():
                lines.append(f"{label}\t{format_rational(r)}\t{lv}\t{p}\t{m}")
    return lines
