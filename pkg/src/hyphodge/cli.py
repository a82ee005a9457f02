"""Command-line front end: compute profiles, verify identities, batch mode.

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 reducible input,
4 internal engine inconsistency.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from .closed_form import counts_at_one, profile_closed
from .combinatorics import special_exponent
from .core import (
    HodgeProfile,
    HypergeometricParams,
    InternalUnknownConsulted,
    ReducibleInput,
    parse_rational,
    total_from_primitive,
)
from .recursion import profile_recursive, verify_cross_engine
from .serialize import (
    SCHEMA_VERSION,
    build_compute_document,
    document_to_json,
    params_from_dict,
    params_to_dict,
    tsv_lines,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_REDUCIBLE = 3
EXIT_INTERNAL = 4


def _parse_tuple(text: str) -> tuple[Fraction, ...]:
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty exponent list")
    return tuple(parse_rational(p) for p in parts)


def _profiles_for(params: HypergeometricParams, engine: str) -> dict[str, HodgeProfile]:
    profiles: dict[str, HodgeProfile] = {}
    if engine in ("closed", "both"):
        profiles["closed"] = profile_closed(params)
    if engine in ("recursive", "both"):
        profiles["recursive"] = profile_recursive(params)
    return profiles


def _min_p(profile: HodgeProfile) -> int:
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


def _compute_profiles(
    params: HypergeometricParams, engine: str, normalize: bool
) -> tuple[dict[str, HodgeProfile], int]:
    profiles = _profiles_for(params, engine)
    shift = 0
    if normalize:
        shift = -min(_min_p(p) for p in profiles.values())
        profiles = {name: p.shifted(shift) for name, p in profiles.items()}
    return profiles, shift


def _compute_document(
    params: HypergeometricParams, engine: str, normalize: bool
) -> dict[str, Any]:
    profiles, shift = _compute_profiles(params, engine, normalize)
    report = verify_cross_engine(params) if engine == "both" else None
    return build_compute_document(params, engine, profiles, report, shift)


def _run_compute(args: argparse.Namespace) -> int:
    try:
        params = HypergeometricParams(_parse_tuple(args.alpha), _parse_tuple(args.beta))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        params.require_irreducible()
        if args.format == "tsv":
            profiles, shift = _compute_profiles(params, args.engine, args.normalize)
            print("\n".join(tsv_lines(params, profiles, shift)))
        else:
            print(document_to_json(_compute_document(params, args.engine, args.normalize)))
    except ReducibleInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REDUCIBLE
    except InternalUnknownConsulted as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def _residue_grid(den_max: int) -> list[Fraction]:
    out = {Fraction(0)}
    for d in range(1, den_max + 1):
        for num in range(1, d):
            out.add(Fraction(num, d))
    return sorted(out)


def _iter_exhaustive(n_max: int, den_max: int):
    grid = _residue_grid(den_max)
    for n in range(1, n_max + 1):
        for alpha in itertools.product(grid, repeat=n):
            for beta in itertools.product(grid, repeat=n):
                if set(alpha) & set(beta):
                    continue
                yield HypergeometricParams(alpha, beta)


def _iter_sampled(n_max: int, den_max: int, sample: int, seed: int):
    grid = _residue_grid(den_max)
    rng = random.Random(seed)
    for _ in range(sample):
        n = rng.randint(1, n_max)
        while True:
            alpha = tuple(rng.choice(grid) for _ in range(n))
            beta = tuple(rng.choice(grid) for _ in range(n))
            if not set(alpha) & set(beta):
                break
        yield HypergeometricParams(alpha, beta), rng


def _instance_failures(params: HypergeometricParams, rng: random.Random | None) -> list[str]:
    reasons = []
    report = verify_cross_engine(params)
    if report.error:
        return [f"engine error: {report.error}"]
    if not report.agree:
        reasons.append(f"engines disagree on {', '.join(report.mismatches)}")
    if report.shift != 0:
        reasons.append(f"grading shift {report.shift}, expected 0")
    if not report.identities_ok:
        reasons.append("index identity failed")
    closed = profile_closed(params)
    for p in set(closed.hodge):
        zero_total = sum(
            total_from_primitive(closed.nearby_zero, r, p)
            for r in closed.nearby_zero.residues()
        )
        inf_total = sum(
            total_from_primitive(closed.nearby_infinity, r, p)
            for r in closed.nearby_infinity.residues()
        )
        if zero_total != inf_total or zero_total != closed.hodge.get(p, 0):
            reasons.append(f"fibre-rank consistency failed at p={p}")
    if sum(closed.hodge.values()) != params.n:
        reasons.append("fibre dimensions do not sum to the rank")
    unit_count, special_count = counts_at_one(params)
    expected = (params.n, 0) if special_exponent(params) == 1 else (params.n - 1, 1)
    if (unit_count, special_count) != expected:
        reasons.append("eigenvalue counts at the finite point are wrong")
    if rng is not None and params.n > 1:
        order = list(range(params.n))
        rng.shuffle(order)
        if profile_closed(params.permuted(order)) != closed:
            reasons.append("closed profile is order-sensitive")
    return reasons


def _run_verify(args: argparse.Namespace) -> int:
    if args.n_max < 1 or args.den_max < 1 or (args.sample is not None and args.sample < 1):
        print("error: bounds must be positive", file=sys.stderr)
        return EXIT_PARSE
    failures: list[dict[str, Any]] = []
    count = 0
    if args.sample is None:
        instances = ((p, None) for p in _iter_exhaustive(args.n_max, args.den_max))
    else:
        instances = _iter_sampled(args.n_max, args.den_max, args.sample, args.seed)
    for params, rng in instances:
        count += 1
        reasons = _instance_failures(params, rng)
        if reasons:
            failures.append(
                {"params": params_to_dict(params), "reasons": reasons}
            )
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "bounds": {
            "n_max": args.n_max,
            "den_max": args.den_max,
            "sample": args.sample,
            "seed": args.seed,
        },
        "instances": count,
        "failures": failures,
    }
    print(document_to_json(doc))
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def _run_batch(args: argparse.Namespace) -> int:
    for i, line in enumerate(sys.stdin):
        line = line.strip()
        if not line:
            continue
        try:
            data = json.loads(line)
            params = params_from_dict(data)
            params.require_irreducible()
            engine = data.get("engine", args.engine)
            if engine not in ("closed", "recursive", "both"):
                raise ValueError(f"unknown engine {engine!r}")
            doc = _compute_document(params, engine, args.normalize)
        except ReducibleInput as exc:
            doc = {
                "schema_version": SCHEMA_VERSION,
                "line": i + 1,
                "error": {"code": EXIT_REDUCIBLE, "message": str(exc)},
            }
        except InternalUnknownConsulted as exc:
            doc = {
                "schema_version": SCHEMA_VERSION,
                "line": i + 1,
                "error": {"code": EXIT_INTERNAL, "message": str(exc)},
            }
        except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
            doc = {
                "schema_version": SCHEMA_VERSION,
                "line": i + 1,
                "error": {"code": EXIT_PARSE, "message": str(exc)},
            }
        print(document_to_json(doc, compact=True))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyphodge",
        description="Exact local Hodge data of irreducible hypergeometric connections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute one profile")
    compute.add_argument("--alpha", required=True, help="comma-separated a/b exponents")
    compute.add_argument("--beta", required=True, help="comma-separated a/b exponents")
    compute.add_argument(
        "--engine", choices=("closed", "recursive", "both"), default="both"
    )
    compute.add_argument(
        "--normalize", action="store_true", help="shift so the lowest index is 0"
    )
    compute.add_argument("--format", choices=("json", "tsv"), default="json")
    compute.set_defaults(func=_run_compute)

    verify = sub.add_parser("verify", help="run the verification sweeps")
    verify.add_argument("--n-max", type=int, default=2)
    verify.add_argument("--den-max", type=int, default=4)
    verify.add_argument("--sample", type=int, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(func=_run_verify)

    batch = sub.add_parser("batch", help="JSON-lines on stdin, one document per line")
    batch.add_argument(
        "--engine", choices=("closed", "recursive", "both"), default="both"
    )
    batch.add_argument("--normalize", action="store_true")
    batch.set_defaults(func=_run_batch)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
