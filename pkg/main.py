#!/usr/bin/env python3
"""
modp-langlands: reductions of crystalline representations, the mod p
correspondence for GL_2(Q_p), canonical forms and the property suites.

Every command prints one JSON document on stdout. Exit codes: 0 success,
1 internal error or property violations, 2 domain error, 3 undetermined.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

import numpy as np
from sympy import isprime

from algebra import Field, PadicScalar
from amice import tower_to_measure
from checks import print_summary, run_suites
from codec import (
    borel_from_json,
    borel_to_json,
    bss_from_json,
    bss_to_json,
    dumps,
    format_character,
    format_element,
    galois_from_json,
    galois_to_json,
    gss_from_json,
    gss_to_json,
    measure_to_json,
    padic_from_json,
    parse_character,
    parse_element,
    parse_fraction,
    reduction_to_json,
    tower_from_json,
    tower_to_json,
)
from corresp import CrystallineParams, galois_to_gl2, gl2_to_galois, reduce_crystalline
from errors import ModpError, OutOfRange, ParseError
from reps import (
    GSS,
    MulCharacter,
    canonical_pi,
    canonical_rho,
    ind_omega2,
    pi_orbit,
    reconstruct_from_borel,
    restrict_to_borel,
    rho_orbit,
)
from settings import SUITES, configure_logging, get_run_config
from tower import CharModel, Tower, constant_tower, plus_part, random_tower, standard_tower, star_action, tower_residue

logger = logging.getLogger("modp.cli")


def _prime(p: int) -> int:
    if not isprime(p):
        raise OutOfRange(f"p must be prime, got {p}")
    return p


def _parse_ap(text: str, p: int, e: int, prec: Optional[int]) -> PadicScalar:
    """A rational ("25", "25/3"), a JSON list of [exponent, digit] pairs in powers of pi, or a p-adic JSON object."""
    text = text.strip()
    if text.startswith("{"):
        ap = padic_from_json(_load_input(text, "--ap"))
        if ap.p != p:
            raise OutOfRange(f"--ap is a {ap.p}-adic scalar but --p is {p}")
        return ap
    if text.startswith("["):
        if prec is None:
            raise ParseError("--ap given as a digit list needs --ap-prec")
        try:
            digits = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--ap is not a JSON digit list: {exc}") from exc
        return padic_from_json({"p": p, "e": e, "digits": digits, "prec": prec})
    return PadicScalar(p, e, parse_fraction(text), prec=prec)


def _load_input(text: str, flag: str = "--input") -> Any:
    """Inline JSON, "-" for stdin, or a path to a JSON file."""
    if text == "-":
        text = sys.stdin.read()
    elif not text.lstrip().startswith("{") and Path(text).is_file():
        text = Path(text).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{flag} is not valid JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_reduce(args: argparse.Namespace) -> int:
    p = _prime(args.p)
    if args.val_only is not None:
        residue = parse_element(args.residue, p) if args.residue is not None else None
        params = CrystallineParams(p, args.k, val=parse_fraction(args.val_only), residue=residue)
    else:
        params = CrystallineParams(p, args.k, ap=_parse_ap(args.ap, p, args.e, args.ap_prec))
    result = reduce_crystalline(params)
    logger.info(f"Reduction of V_(k={args.k}) for p = {p}: case {result.case}")
    print(dumps(reduction_to_json(result, params)))
    return 0


def cmd_correspond(args: argparse.Namespace) -> int:
    document = _load_input(args.input)
    if args.dir == "g2p":
        v = galois_from_json(document)
        print(dumps(gss_to_json(galois_to_gl2(v), v.p)))
    elif args.dir == "b2p":
        profile = bss_from_json(document)
        print(dumps(gss_to_json(reconstruct_from_borel(profile), int(document["p"]))))
    else:
        print(dumps(galois_to_json(gl2_to_galois(gss_from_json(document)))))
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    config = get_run_config(
        p=args.p,
        m=args.m,
        precision=args.precision,
        depth=args.depth,
        level=args.level,
        seed=args.seed,
        samples=args.samples,
        workers=args.workers,
        suites=args.suite or ["all"],
    )
    report = run_suites(config)
    print(dumps(report))
    print_summary(report)
    return 0 if report["summary"]["violations"] == 0 else 1


def _orbit_entry(r: int, chi: MulCharacter, lam=None) -> dict[str, Any]:
    entry = {"r": r, "chi": format_character(chi)}
    if lam is not None:
        entry["lambda"] = format_element(lam)
    return entry


def cmd_canonicalize(args: argparse.Namespace) -> int:
    p = _prime(args.p)
    chi = parse_character(args.chi, p) if args.chi is not None else MulCharacter.trivial(p)
    document: dict[str, Any] = {"schema": "canonical/1", "p": p, "kind": args.kind}

    gl2: GSS
    if args.kind == "ind-omega2":
        if args.h is None:
            raise ParseError("--kind ind-omega2 needs --h")
        rep = ind_omega2(args.h, twist=chi)
        document["canonical"] = galois_to_json(rep)
        document["orbit"] = [_orbit_entry(r, c) for r, c in rho_orbit(rep.r, rep.chi)]
        gl2 = galois_to_gl2(rep)
    elif args.r is None:
        raise ParseError(f"--kind {args.kind} needs --r")
    elif args.kind == "rho":
        rep = canonical_rho(args.r, chi)
        document["canonical"] = galois_to_json(rep)
        document["orbit"] = [_orbit_entry(r, c) for r, c in rho_orbit(args.r, chi)]
        gl2 = galois_to_gl2(rep)
    else:
        lam = parse_element(args.lam, p) if args.lam is not None else Field(p, 2).zero
        gl2 = canonical_pi(args.r, lam, chi)
        document["canonical"] = gss_to_json(gl2, p)
        document["orbit"] = [_orbit_entry(r, c, value) for r, value, c in pi_orbit(args.r, lam, chi)]
    if args.restrict_borel:
        document["borel"] = bss_to_json(restrict_to_borel(gl2), p)
    print(dumps(document))
    return 0


def _build_tower(args: argparse.Namespace) -> Tower:
    if args.input is not None:
        return tower_from_json(_load_input(args.input))
    p = _prime(args.p)
    config = get_run_config(p=p, depth=args.depth, precision=args.precision, seed=args.seed)
    central = parse_character(args.central, p) if args.central is not None else MulCharacter.trivial(p)
    if args.kind == "random":
        model = CharModel(p, args.r, parse_element(args.y, p), args.flavor)
        rng = np.random.default_rng([config.seed, p])
        return random_tower(model, central, config.depth, config.precision, rng)
    model = CharModel(p, args.r, parse_element(args.y, p))
    builder = standard_tower if args.kind == "standard" else constant_tower
    return builder(model, config.depth, config.precision, central)


def cmd_tower(args: argparse.Namespace) -> int:
    t = _build_tower(args)
    document: dict[str, Any] = {
        "schema": "tower-report/1",
        "p": t.p,
        "tower": tower_to_json(t),
        "residue": format_element(tower_residue(t)),
        "valid": t.is_valid(),
    }
    if args.act is not None:
        g = borel_from_json(_load_input(args.act, "--act"))
        if g.p != t.p:
            raise OutOfRange(f"--act is a Borel element for p = {g.p}, the tower has p = {t.p}")
        t = star_action(g, t)
        document["action"] = borel_to_json(g)
        document["result"] = tower_to_json(t)
        logger.info(f"Acted by {g}: depth {t.depth}, residue {format_element(tower_residue(t))}")
    if args.level is not None:
        level = get_run_config(p=t.p, level=args.level).level
        plus = t if t.model.flavor == "plus" else plus_part(t)
        document["measure"] = measure_to_json(tower_to_measure(plus, level))
    print(dumps(document))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--log-level",
        default=argparse.SUPPRESS,
        help="Logging level (default: MODP_LOG_LEVEL or WARNING)",
    )

    parser = argparse.ArgumentParser(prog="modp-langlands", description=__doc__, parents=[common])
    commands = parser.add_subparsers(dest="command", required=True)

    reduce_parser = commands.add_parser("reduce", parents=[common], help="Reduce V_(k,a_p) modulo p")
    reduce_parser.add_argument("--p", type=int, required=True)
    reduce_parser.add_argument("--k", type=int, required=True)
    source = reduce_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--ap", help='a_p as a rational ("25/3") or a JSON list of [exponent, digit] pairs')
    source.add_argument("--val-only", help="Only val(a_p), as a rational")
    reduce_parser.add_argument("--ap-prec", type=int, help="Precision of --ap in powers of pi")
    reduce_parser.add_argument("--e", type=int, choices=(1, 2), default=1, help="Ramification index of L")
    reduce_parser.add_argument("--residue", help="Residue of a_p / p^val for --val-only, as a field element")
    reduce_parser.set_defaults(handler=cmd_reduce)

    correspond_parser = commands.add_parser("correspond", parents=[common], help="Apply the correspondence")
    correspond_parser.add_argument("--dir", choices=("g2p", "p2g", "b2p"), required=True)
    correspond_parser.add_argument("--input", required=True, help='JSON document, a file path, or "-" for stdin')
    correspond_parser.set_defaults(handler=cmd_correspond)

    check_parser = commands.add_parser("check", parents=[common], help="Run the property suites")
    check_parser.add_argument("--suite", action="append", choices=(*SUITES, "all"))
    check_parser.add_argument("--p", type=int, default=5)
    check_parser.add_argument("--m", type=int, choices=(1, 2))
    check_parser.add_argument("--precision", type=int)
    check_parser.add_argument("--depth", type=int)
    check_parser.add_argument("--level", type=int)
    check_parser.add_argument("--seed", type=int)
    check_parser.add_argument("--samples", type=int)
    check_parser.add_argument("--workers", type=int)
    check_parser.set_defaults(handler=cmd_check)

    canon_parser = commands.add_parser("canonicalize", parents=[common], help="Canonical forms and orbits")
    canon_parser.add_argument("--kind", choices=("rho", "pi", "ind-omega2"), required=True)
    canon_parser.add_argument("--p", type=int, required=True)
    canon_parser.add_argument("--r", type=int)
    canon_parser.add_argument("--chi", help='Character such as "w^2*mu(3)"')
    canon_parser.add_argument("--lambda", dest="lam", help="lambda for --kind pi (default 0)")
    canon_parser.add_argument("--h", type=int, help="Exponent of w_2 for --kind ind-omega2")
    canon_parser.add_argument(
        "--restrict-borel", action="store_true", help="Also print the restriction to the Borel subgroup"
    )
    canon_parser.set_defaults(handler=cmd_canonicalize)

    tower_parser = commands.add_parser(
        "tower", parents=[common], help="Build a psi-tower, act on it, read off a measure"
    )
    source = tower_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--p", type=int)
    source.add_argument("--input", help='tower/1 document, a file path, or "-" for stdin')
    tower_parser.add_argument("--kind", choices=("standard", "constant", "random"), default="standard")
    tower_parser.add_argument("--r", type=int, default=0)
    tower_parser.add_argument("--y", default="1", help="Eigenvalue y of phi on e, as a field element")
    tower_parser.add_argument("--flavor", choices=("sharp", "plus"), default="sharp", help="Model for --kind random")
    tower_parser.add_argument("--central", help="Central character (default trivial)")
    tower_parser.add_argument("--depth", type=int)
    tower_parser.add_argument("--precision", type=int)
    tower_parser.add_argument("--seed", type=int)
    tower_parser.add_argument("--act", help="borel/1 document to act by")
    tower_parser.add_argument("--level", type=int, help="Also print the measure of the plus part at this level")
    tower_parser.set_defaults(handler=cmd_tower)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(getattr(args, "log_level", None))
        return args.handler(args)
    except ModpError as exc:
        logger.debug(f"{type(exc).__name__}: {exc}")
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception:
        logger.exception("Internal error")
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
