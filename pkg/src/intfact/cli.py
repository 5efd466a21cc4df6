"""Command-line front end.

Exit codes: 0 success, 1 failed verification or unsatisfied hypothesis,
2 argument errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from intfact.constructions import (
    artifact_from_json,
    construct_prescribed,
    construct_transfer,
    verify_artifact,
)
from intfact.design import LengthSpec
from intfact.engine import (
    FactoredInput,
    HypothesisError,
    enumerate_factorizations,
    enumerate_factorizations_bruteforce,
    indispensable_map,
    lengths_set,
)
from intfact.poly import ZPoly, fixed_divisor, is_int_valued, parse_poly


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _prime_powers(items: list[str] | None) -> list[tuple[int, int]]:
    out = []
    for item in items or []:
        q, _, e = item.partition("^")
        try:
            out.append((int(q), int(e) if e else 1))
        except ValueError:
            raise UsageError(f"expected q^e, got {item!r}") from None
    return out


def _ints(values) -> str:
    return "[" + ",".join(map(str, values)) + "]"


def _dump(data: dict) -> str:
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


def _emit(args, data: dict, summary: str) -> None:
    if args.out:
        Path(args.out).write_text(_dump(data))
    if args.json:
        sys.stdout.write(_dump(data))
    else:
        print(summary)


def cmd_fixdiv(args) -> int:
    f = parse_poly(args.poly)
    if f.num.is_zero():
        raise UsageError("fixed divisor of the zero polynomial is not defined")
    print(Fraction(fixed_divisor(f.num), f.den))
    return 0


def cmd_member(args) -> int:
    print("true" if is_int_valued(parse_poly(args.poly)) else "false")
    return 0


def cmd_construct_lengths(args) -> int:
    lengths = _int_list(args.lengths)
    if not lengths or any(k < 2 for k in lengths):
        raise UsageError("lengths must be integers >= 2")
    spec = LengthSpec.from_lengths(lengths)
    art = construct_prescribed(spec, prime=args.prime, c_extra=_prime_powers(args.c_extra))
    summary = (
        f"n={spec.n} lengths={_ints(art.lengths)} degree={art.H.degree} "
        f"factorizations={len(art.factorizations)}"
    )
    _emit(args, art.to_json(), summary)
    return 0


def cmd_construct_transfer(args) -> int:
    primes = _int_list(args.primes) if args.primes else None
    art = construct_transfer(args.n, primes=primes, c_extra=_prime_powers(args.c_extra))
    summary = (
        f"n={art.n} primes={_ints(art.primes)} c={art.c} deg H={art.H.degree} deg G={art.G.degree} "
        f"xH lengths={_ints(sorted({2, art.n + 1}))}"
    )
    _emit(args, art.to_json(), summary)
    return 0


def _load_parts(path: str) -> list[ZPoly]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("parts")
    if not isinstance(data, list):
        raise UsageError("parts file must hold a JSON list (or {'parts': [...]})")
    parts = []
    for item in data:
        if isinstance(item, str):
            f = parse_poly(item)
            if f.den != 1:
                raise UsageError(f"part {item!r} must have integer coefficients")
            parts.append(f.num)
        else:
            parts.append(ZPoly.from_json(item))
    return parts


def cmd_factorize(args) -> int:
    inp = FactoredInput(_load_parts(args.parts), args.den)
    if args.oracle:
        facts, route = enumerate_factorizations_bruteforce(inp), "oracle"
    else:
        route = indispensable_map(inp).basis() or "none"
        try:
            facts = enumerate_factorizations(inp)
        except HypothesisError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    facts = sorted(facts, key=lambda f: (f.length, f.blocks))
    data = {
        "route": route,
        "factorizations": [f.to_json() for f in facts],
        "lengths": lengths_set(facts),
    }
    if args.json:
        sys.stdout.write(_dump(data))
    else:
        for f in facts:
            print(" * ".join(f"({','.join(map(str, b.indices))})/{b.den}" for b in f.blocks))
        print(f"route={route} factorizations={len(facts)} lengths={_ints(data['lengths'])}")
        if route == "connected-graph":
            print("note: result relies on the connected-graph generalization of the indispensability lemma")
    return 0


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read artifact: {exc}") from None
    report = verify_artifact(artifact_from_json(data))
    print(report)
    print("OK" if report.ok else f"FAILED: {', '.join(report.failed())}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="intfact",
        description="Integer-valued polynomials with prescribed factorization lengths.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixdiv", help="fixed divisor of a polynomial, e.g. '[0,-1,1]'")
    p.add_argument("poly")
    p.set_defaults(func=cmd_fixdiv)

    p = sub.add_parser("member", help="Int(ZZ) membership of '[coeffs]/den'")
    p.add_argument("poly")
    p.set_defaults(func=cmd_member)

    def outputs(p):
        p.add_argument("--out", help="write the artifact JSON to this file")
        p.add_argument("--json", action="store_true", help="print the artifact JSON to stdout")

    p = sub.add_parser("construct-lengths", help="polynomial with the given set of lengths, e.g. 2,3,5")
    p.add_argument("lengths")
    p.add_argument("--prime", type=int, help="override the prime p > N + 1")
    p.add_argument("--c-extra", action="append", metavar="Q^E", help="extra odd prime power in c")
    outputs(p)
    p.set_defaults(func=cmd_construct_lengths)

    p = sub.add_parser("construct-transfer", help="x*H = G*(x-a_1)...(x-a_n) witness")
    p.add_argument("n", type=int)
    p.add_argument("--primes", help="comma-separated odd primes p_1..p_n")
    p.add_argument("--c-extra", action="append", metavar="Q^E", help="extra odd prime power in c")
    outputs(p)
    p.set_defaults(func=cmd_construct_transfer)

    p = sub.add_parser("factorize", help="factorizations of prod(parts)/den")
    p.add_argument("--parts", required=True, help="JSON list of coefficient lists or polynomial strings")
    p.add_argument("--den", required=True, type=int)
    p.add_argument("--oracle", action="store_true", help="use the brute-force enumeration")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("verify", help="re-verify an artifact JSON file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}".replace("\n", " "), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
