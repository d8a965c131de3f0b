"""Command-line interface.

Every command emits a JSON document (sorted keys, fixed layout) so that a
rerun with the same configuration is byte-identical; text output is a
rendering of that JSON, never a separate computation.  Exit codes:
0 verified/agreement, 1 usage or input error, 2 inconclusive,
3 falsification witness produced.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .comparison import (
    HypothesisViolation,
    pro_isomorphism_report,
    tilt_correspondence_check,
    universal_property_check,
)
from .homology import FpAlgebra, FpModule, perfect_module_over_monoid_algebra, tor
from .modclass import ModuleWithAction, classify, enumerate_actions, abelian_p_groups
from .monoidalg import FiniteCommMonoid
from .perfect import (
    FiniteCommutativeRing,
    FiniteField,
    PerfectRing,
    is_prime,
    tilt,
    truncated_polynomial_ring,
    zmod_ring,
)
from .witt import (
    WittPolyCache,
    cache_filename,
    get_witt_coords,
    load_cache,
    oracle_match,
    save_cache,
    universal_polys,
    validate_cache,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONCLUSIVE = 2
EXIT_FALSIFIED = 3

DEFAULT_SEED = 1729


class SpecError(ValueError):
    pass


def _factor_prime_power(q: int):
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                raise SpecError(f"{q} is not a prime power")
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            if q != 1:
                raise SpecError("not a prime power")
            return p, k
    raise SpecError("bad field order")


def parse_field(spec: str) -> PerfectRing:
    """F4, F9, ... or products like F2xF2."""
    factors = []
    for part in spec.strip().split("x"):
        m = re.fullmatch(r"F(\d+)", part.strip())
        if not m:
            raise SpecError(f"bad field spec {part!r}")
        p, k = _factor_prime_power(int(m.group(1)))
        factors.append(FiniteField(p, k))
    if len({f.p for f in factors}) != 1:
        raise SpecError("factors must share the prime")
    return PerfectRing(factors)


def parse_target_ring(spec: str) -> FiniteCommutativeRing:
    """Z4, Z8, W2F4, F2, F2[x]/(x^2), ..."""
    spec = spec.strip()
    m = re.fullmatch(r"Z(\d+)", spec)
    if m:
        return zmod_ring(int(m.group(1)))
    m = re.fullmatch(r"W(\d+)F(\d+)", spec)
    if m:
        n = int(m.group(1))
        p, k = _factor_prime_power(int(m.group(2)))
        return get_witt_coords(PerfectRing.field(p, k), n).as_finite_ring().ring
    m = re.fullmatch(r"F(\d+)\[(\w+)\]/\((\w+)\^(\d+)\)", spec)
    if m:
        if m.group(2) != m.group(3):
            raise SpecError("mismatched variable in quotient spec")
        p = int(m.group(1))
        if not is_prime(p):
            raise SpecError("truncated polynomial rings need a prime base")
        return truncated_polynomial_ring(p, int(m.group(4)))
    m = re.fullmatch(r"F(\d+)(x.*)?", spec)
    if m:
        return parse_field(spec).as_finite_ring().ring
    raise SpecError(f"cannot parse ring spec {spec!r}")


def parse_algebra(spec: str):
    """Algebra spec for `tor`: F2[x]/(x^2) or F2[F4]; returns (algebra,
    default module)."""
    spec = spec.strip()
    m = re.fullmatch(r"F(\d+)\[(\w+)\]/\((\w+)\^(\d+)\)", spec)
    if m:
        if m.group(2) != m.group(3):
            raise SpecError("mismatched variable in quotient spec")
        p = int(m.group(1))
        e = int(m.group(4))
        if not is_prime(p):
            raise SpecError("base must be a prime field")
        A = FpAlgebra.truncated_polynomial(p, e)
        resid = FpModule(A, 1, [[[1]]] + [[[0]]] * (e - 1))
        return A, resid
    m = re.fullmatch(r"F(\d+)\[F(\d+)\]", spec)
    if m:
        p = int(m.group(1))
        if not is_prime(p):
            raise SpecError("base must be a prime field")
        q = int(m.group(2))
        pr, k = _factor_prime_power(q)
        if pr != p:
            raise SpecError("monoid algebra base prime must match the field")
        R = PerfectRing.field(pr, k)
        M = FiniteCommMonoid.multiplicative(R)
        A = FpAlgebra.monoid_algebra(p, M)
        mod = perfect_module_over_monoid_algebra(R, A, lambda i: M.elements[i])
        return A, mod
    raise SpecError(f"cannot parse algebra spec {spec!r}")


def emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        _render_text(doc)


def _render_text(doc, indent: int = 0) -> None:
    pad = "  " * indent
    if isinstance(doc, dict):
        for key in sorted(doc):
            val = doc[key]
            if isinstance(val, (dict, list)):
                sys.stdout.write(f"{pad}{key}:\n")
                _render_text(val, indent + 1)
            else:
                sys.stdout.write(f"{pad}{key}: {val}\n")
    elif isinstance(doc, list):
        for val in doc:
            if isinstance(val, (dict, list)):
                _render_text(val, indent + 1)
            else:
                sys.stdout.write(f"{pad}- {val}\n")
    else:
        sys.stdout.write(f"{pad}{doc}\n")


def _cache_dir(args) -> str:
    if args.cache_dir:
        return args.cache_dir
    return os.environ.get("WITTLAB_CACHE_DIR", "witt_cache")


def cmd_witt_polys(args) -> int:
    p, n = args.prime, args.level
    directory = _cache_dir(args)
    path = os.path.join(directory, cache_filename(p, n))
    doc = {"p": p, "n": n, "path": path}
    if os.path.exists(path):
        diffs = validate_cache(p, n, directory)
        if diffs:
            doc["status"] = "corrupt"
            doc["diffs"] = diffs
            emit(doc, args.format)
            return EXIT_USAGE
        cache = load_cache(p, n, directory)
        doc["status"] = "ok"
    else:
        if args.validate_only:
            doc["status"] = "missing"
            emit(doc, args.format)
            return EXIT_USAGE
        cache = universal_polys(p, n)
        cache.verify_ghost_identities()
        save_cache(cache, directory)
        doc["status"] = "generated"
    doc["terms"] = {
        kind: [len(poly.terms) for poly in cache.family(kind)]
        for kind in WittPolyCache.KINDS
    }
    emit(doc, args.format)
    return EXIT_OK


def cmd_cd_verify(args) -> int:
    R = parse_field(args.field)
    report = pro_isomorphism_report(R, args.cap)
    emit(report.to_json(), args.format)
    if report.verdict == "verified":
        return EXIT_OK
    if report.verdict == "falsified":
        return EXIT_FALSIFIED
    return EXIT_INCONCLUSIVE


def cmd_module_classify(args) -> int:
    R = parse_field(args.field)
    if args.module:
        with open(args.module) as fh:
            doc = json.load(fh)
        report = classify(ModuleWithAction.from_json(doc))
        emit(report.to_json(), args.format)
        return EXIT_OK if report.agreement else EXIT_FALSIFIED
    if not args.enumerate:
        sys.stderr.write("need --enumerate or --module FILE\n")
        return EXIT_USAGE
    groups_out = []
    witnesses = []
    for G in abelian_p_groups(R.p, args.max_group):
        actions = 0
        all_true = 0
        all_false = 0
        for M in enumerate_actions(R, G):
            rep = classify(M)
            actions += 1
            if rep.agreement:
                if rep.verdicts["2"]:
                    all_true += 1
                else:
                    all_false += 1
            else:
                witnesses.append(rep.to_json())
        groups_out.append(
            {
                "group": list(G.invariant_factors),
                "actions": actions,
                "all_conditions_true": all_true,
                "all_conditions_false": all_false,
            }
        )
    doc = {
        "ring": R.to_json(),
        "max_group": args.max_group,
        "groups": groups_out,
        "disagreements": witnesses,
        "agreement": not witnesses,
    }
    emit(doc, args.format)
    return EXIT_OK if not witnesses else EXIT_FALSIFIED


def cmd_universal(args) -> int:
    R = parse_field(args.field)
    A = parse_target_ring(args.target)
    try:
        report = universal_property_check(R, A)
    except HypothesisViolation as exc:
        sys.stderr.write(f"hypothesis violation: {exc}\n")
        return EXIT_USAGE
    emit(report.to_json(), args.format)
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def cmd_tilt(args) -> int:
    A = parse_target_ring(args.target)
    prime = args.prime
    if prime is None and args.field:
        prime = parse_field(args.field).p
    if prime is None:
        sys.stderr.write("need --prime or --field to fix p\n")
        return EXIT_USAGE
    result = tilt(A, prime)
    doc = {"target_factors": list(A.group.invariant_factors), "tilt": result.perfect.to_json()}
    if args.field:
        R = parse_field(args.field)
        try:
            report = tilt_correspondence_check(R, A)
        except HypothesisViolation as exc:
            sys.stderr.write(f"hypothesis violation: {exc}\n")
            return EXIT_USAGE
        doc["correspondence"] = report.to_json()
        emit(doc, args.format)
        return EXIT_OK if report.ok else EXIT_FALSIFIED
    emit(doc, args.format)
    return EXIT_OK


def cmd_tor(args) -> int:
    try:
        A, mod = parse_algebra(args.algebra)
    except SpecError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    report = tor(A, mod, mod, args.imax)
    emit(report.to_json(), args.format)
    if args.expect != "none" and report.verdict != args.expect:
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_hochschild(args) -> int:
    R = parse_field(args.field)
    from .homology import hochschild_check

    report = hochschild_check(R, args.imax)
    emit(report.to_json(), args.format)
    return EXIT_OK if report.verdict == "vanishing" else EXIT_FALSIFIED


def cmd_oracle_match(args) -> int:
    R = parse_field(args.field)
    report = oracle_match(
        R,
        args.level,
        exhaustive_limit=args.exhaustive_limit,
        samples=args.samples,
        seed=args.seed,
    )
    doc = {
        "field": R.to_json(),
        "level": args.level,
        "ok": report.ok,
        "mode": report.mode,
        "checked": report.checked,
    }
    if report.failure:
        doc["failure"] = report.failure
    emit(doc, args.format)
    return EXIT_OK if report.ok else EXIT_FALSIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wittlab",
        description="Exact verification suite for truncated Witt vectors and "
        "monoid-algebra completions",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("witt-polys", help="generate or validate the polynomial cache")
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--cache-dir", default=None)
    sp.add_argument("--validate-only", action="store_true")
    sp.set_defaults(func=cmd_witt_polys)

    sp = sub.add_parser("cd-verify", help="tower comparison report")
    sp.add_argument("--field", required=True)
    sp.add_argument("--cap", type=int, required=True)
    sp.set_defaults(func=cmd_cd_verify)

    sp = sub.add_parser("module-classify", help="classify module actions")
    sp.add_argument("--field", required=True)
    sp.add_argument("--enumerate", action="store_true")
    sp.add_argument("--max-group", type=int, default=16)
    sp.add_argument("--module", default=None, help="JSON module description")
    sp.set_defaults(func=cmd_module_classify)

    sp = sub.add_parser("universal", help="universal property hom-set bijection")
    sp.add_argument("--field", required=True)
    sp.add_argument("--target", required=True)
    sp.set_defaults(func=cmd_universal)

    sp = sub.add_parser("tilt", help="tilt of a finite ring, with optional correspondence")
    sp.add_argument("--target", required=True)
    sp.add_argument("--field", default=None)
    sp.add_argument("--prime", type=int, default=None)
    sp.set_defaults(func=cmd_tilt)

    sp = sub.add_parser("tor", help="Tor dimensions over a small F_p-algebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--imax", type=int, default=2)
    sp.add_argument(
        "--expect", choices=("vanishing", "nonvanishing", "none"), default="none"
    )
    sp.set_defaults(func=cmd_tor)

    sp = sub.add_parser("hochschild", help="Hochschild-style Tor vanishing")
    sp.add_argument("--field", required=True)
    sp.add_argument("--imax", type=int, default=2)
    sp.set_defaults(func=cmd_hochschild)

    sp = sub.add_parser("oracle-match", help="cross-validate against the Galois ring")
    sp.add_argument("--field", required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--samples", type=int, default=10_000)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--exhaustive-limit", type=int, default=1 << 16)
    sp.set_defaults(func=cmd_oracle_match)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
