#!/usr/bin/env python3
"""
Stable JSON for every public value.

Each document carries a "schema" tag. Multisets are already sorted by their
canonical keys, and documents are dumped with sorted keys, so equal values
serialize byte-identically.

Grammar for characters (flags and JSON alike):

    character := "1" | factor ("*" factor)*
    factor    := "w" | "w^" INT | "mu(" element ")"
    element   := INT | INT "+" INT "*t" | INT "*t" | "t"
"""

from __future__ import annotations

import json
import re
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Iterator

from algebra import Field, FieldElement, PadicScalar
from amice import MeasureQp, MeasureZp
from corresp import CrystallineParams, ReductionResult
from errors import DomainError, ParseError
from laurent import LaurentSeries
from reps import (
    BAtom,
    BChar,
    BCharacter,
    BSS,
    GAtom,
    GSS,
    GaloisRep,
    Irred,
    MulCharacter,
    OmegaLabel,
    OneDim,
    PrincipalSeries,
    SpecialTwist,
    SplitSum,
    Supersingular,
    canonical_rho,
)
from tower import BorelElement, CharModel, Tower

_ELEMENT = re.compile(r"^\s*(?:(-?\d+)\s*\+\s*(-?\d+)\s*\*\s*t|(-?\d+)\s*\*\s*t|(t)|(-?\d+))\s*$")
_FACTOR = re.compile(r"^(?:w(?:\^\s*(-?\d+))?|mu\((.*)\))$")


def dumps(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False)


def _fraction(q: Fraction) -> str:
    return str(Fraction(q))


def parse_fraction(text: str | int) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"Not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# Field elements and characters
# ---------------------------------------------------------------------------


def format_element(x: FieldElement) -> str:
    return str(x)


def parse_element(text: str, p: int, m: int = 2) -> FieldElement:
    match = _ELEMENT.match(str(text))
    if not match:
        raise ParseError(f"Not a field element: {text!r}")
    field = Field(p, m)
    c0, c1, only_t, bare_t, const = match.groups()
    if const is not None:
        return field.elem(int(const))
    if m == 1:
        raise ParseError(f"{text!r} does not lie in F_{p}")
    if bare_t is not None:
        return field.t
    if only_t is not None:
        return field.elem(0, int(only_t))
    return field.elem(int(c0), int(c1))


def format_character(chi: MulCharacter) -> str:
    return str(chi)


def parse_character(text: str, p: int) -> MulCharacter:
    chi = MulCharacter.trivial(p)
    text = str(text).strip()
    if text == "1":
        return chi
    for factor in _split_factors(text):
        match = _FACTOR.match(factor.strip())
        if not match:
            raise ParseError(f"Not a character factor: {factor!r} in {text!r}")
        exponent, unit = match.groups()
        if unit is not None:
            y = parse_element(unit, p)
            if y.is_zero():
                raise ParseError(f"mu(y) needs y != 0 in {text!r}")
            chi = chi * MulCharacter.mu(p, y)
        else:
            chi = chi * MulCharacter.omega(p, int(exponent) if exponent is not None else 1)
    return chi


def _split_factors(text: str) -> list[str]:
    """Split on '*' outside parentheses."""
    factors, depth, current = [], 0, []
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        if char == "*" and depth == 0:
            factors.append("".join(current))
            current = []
        else:
            current.append(char)
    factors.append("".join(current))
    if any(not factor.strip() for factor in factors):
        raise ParseError(f"Empty factor in character {text!r}")
    return factors


def _expect(document: dict[str, Any], schema: str):
    if not isinstance(document, dict) or document.get("schema") != schema:
        raise ParseError(f"Expected a {schema} document")


@contextmanager
def _reading(what: str) -> Iterator[None]:
    """Turn missing keys and bad values in a document into ParseError; domain errors pass through."""
    try:
        yield
    except DomainError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"Malformed {what}: {exc!r}") from exc


# ---------------------------------------------------------------------------
# p-adic scalars and series
# ---------------------------------------------------------------------------


def padic_to_json(x: PadicScalar) -> dict[str, Any]:
    if x.exact:
        return {"p": x.p, "e": x.e, "exact": True, "a": _fraction(x.a), "b": _fraction(x.b)}
    return {"p": x.p, "e": x.e, "digits": [[j, d] for j, d in x.digits().items()], "prec": x.prec}


def padic_from_json(document: dict[str, Any]) -> PadicScalar:
    with _reading("p-adic scalar"):
        p, e = int(document["p"]), int(document.get("e", 1))
        if document.get("exact"):
            return PadicScalar(p, e, parse_fraction(document["a"]), parse_fraction(document.get("b", 0)))
        return PadicScalar.from_digits(p, e, [tuple(pair) for pair in document["digits"]], int(document["prec"]))


def series_to_json(f: LaurentSeries) -> dict[str, Any]:
    return {
        "schema": "series/1",
        "p": f.p,
        "m": f.field.m,
        "ord": f.ord,
        "prec": f.prec,
        "coeffs": [[n, format_element(c)] for n, c in f.coefficients().items()],
    }


def series_from_json(document: dict[str, Any]) -> LaurentSeries:
    _expect(document, "series/1")
    with _reading("Laurent series"):
        field = Field(int(document["p"]), int(document.get("m", 2)))
        coeffs = {int(n): parse_element(c, field.p, field.m) for n, c in document["coeffs"]}
        return LaurentSeries.from_coeffs(field, coeffs, int(document["prec"]), int(document["ord"]))


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


def galois_to_json(v: GaloisRep) -> dict[str, Any]:
    if isinstance(v, Irred):
        return {"schema": "galois-rep/1", "p": v.p, "kind": "irred", "r": v.r, "chi": format_character(v.chi)}
    return {"schema": "galois-rep/1", "p": v.p, "kind": "split", "chars": [format_character(c) for c in v.chars]}


def galois_from_json(document: dict[str, Any]) -> GaloisRep:
    _expect(document, "galois-rep/1")
    with _reading("Galois representation"):
        p = int(document["p"])
        if document["kind"] == "irred":
            return canonical_rho(int(document["r"]), parse_character(document["chi"], p))
        if document["kind"] == "split":
            first, second = (parse_character(c, p) for c in document["chars"])
            return SplitSum.of(first, second)
    raise ParseError(f"Unknown Galois representation kind: {document.get('kind')!r}")


def _gatom_to_json(atom: GAtom) -> dict[str, Any]:
    if isinstance(atom, OneDim):
        return {"kind": "one-dim", "chi": format_character(atom.chi)}
    if isinstance(atom, SpecialTwist):
        return {"kind": "special", "chi": format_character(atom.chi)}
    if isinstance(atom, PrincipalSeries):
        return {
            "kind": "principal-series",
            "chi1": format_character(atom.b.left),
            "chi2": format_character(atom.b.right),
        }
    return {"kind": "supersingular", "r": atom.r, "chi": format_character(atom.chi)}


def _gatom_from_json(document: dict[str, Any], p: int) -> GAtom:
    kind = document.get("kind")
    if kind == "one-dim":
        return OneDim(parse_character(document["chi"], p))
    if kind == "special":
        return SpecialTwist(parse_character(document["chi"], p))
    if kind == "principal-series":
        return PrincipalSeries(BCharacter(parse_character(document["chi1"], p), parse_character(document["chi2"], p)))
    if kind == "supersingular":
        return Supersingular.canonical(int(document["r"]), parse_character(document["chi"], p))
    raise ParseError(f"Unknown GL_2 atom kind: {kind!r}")


def gss_to_json(reps: GSS, p: int) -> dict[str, Any]:
    return {"schema": "gss/1", "p": p, "atoms": [_gatom_to_json(atom) for atom in reps]}


def gss_from_json(document: dict[str, Any]) -> GSS:
    _expect(document, "gss/1")
    with _reading("GL_2 profile"):
        p = int(document["p"])
        return GSS(tuple(_gatom_from_json(atom, p) for atom in document["atoms"]))


def _batom_to_json(atom: BAtom) -> dict[str, Any]:
    if isinstance(atom, BChar):
        return {"kind": "char", "chi1": format_character(atom.b.left), "chi2": format_character(atom.b.right)}
    document = {"kind": "omega", "central": format_character(atom.central), "dim": atom.dimension}
    if isinstance(atom.w, Irred):
        document.update({"r": atom.w.r, "chi": format_character(atom.w.chi)})
    else:
        document["w"] = format_character(atom.w)
    return document


def _batom_from_json(document: dict[str, Any], p: int) -> BAtom:
    kind = document.get("kind")
    if kind == "char":
        return BChar(BCharacter(parse_character(document["chi1"], p), parse_character(document["chi2"], p)))
    if kind == "omega":
        central = parse_character(document["central"], p)
        if "w" in document:
            return OmegaLabel(central, parse_character(document["w"], p))
        return OmegaLabel(central, Irred(int(document["r"]), parse_character(document["chi"], p)))
    raise ParseError(f"Unknown Borel atom kind: {kind!r}")


def bss_to_json(profile: BSS, p: int) -> dict[str, Any]:
    return {"schema": "bss/1", "p": p, "atoms": [_batom_to_json(atom) for atom in profile]}


def bss_from_json(document: dict[str, Any]) -> BSS:
    _expect(document, "bss/1")
    with _reading("Borel profile"):
        p = int(document["p"])
        return BSS(tuple(_batom_from_json(atom, p) for atom in document["atoms"]))


# ---------------------------------------------------------------------------
# Towers and Borel elements
# ---------------------------------------------------------------------------


def borel_to_json(g: BorelElement) -> dict[str, Any]:
    return {
        "schema": "borel/1",
        "p": g.p,
        "x": _fraction(g.x),
        "j": g.j,
        "a": _fraction(g.a),
        "z": _fraction(g.z),
    }


def borel_from_json(document: dict[str, Any]) -> BorelElement:
    _expect(document, "borel/1")
    with _reading("Borel element"):
        return BorelElement(
            int(document["p"]),
            x=parse_fraction(document.get("x", 1)),
            j=int(document.get("j", 0)),
            a=parse_fraction(document.get("a", 1)),
            z=parse_fraction(document.get("z", 0)),
        )


def tower_to_json(t: Tower) -> dict[str, Any]:
    return {
        "schema": "tower/1",
        "p": t.p,
        "model": {"r": t.model.r, "y": format_element(t.model.y), "flavor": t.model.flavor},
        "central": format_character(t.central),
        "entries": [series_to_json(entry) for entry in t.entries],
    }


def tower_from_json(document: dict[str, Any]) -> Tower:
    _expect(document, "tower/1")
    with _reading("tower"):
        p = int(document["p"])
        model_doc = document["model"]
        model = CharModel(p, int(model_doc["r"]), parse_element(model_doc["y"], p), model_doc.get("flavor", "sharp"))
        entries = tuple(series_from_json(entry) for entry in document["entries"])
        return Tower(model, parse_character(document["central"], p), entries)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def reduction_to_json(result: ReductionResult, params: CrystallineParams) -> dict[str, Any]:
    """ReductionResult with the parameters it came from."""
    p = params.p
    document = {
        "schema": "reduction/1",
        "p": p,
        "k": params.k,
        "case": result.case,
        "galois": galois_to_json(result.galois),
        "gl2": gss_to_json(result.gl2, p),
        "notes": list(result.notes),
    }
    if params.ap is not None:
        document["ap"] = padic_to_json(params.ap)
    else:
        document["val"] = _fraction(params.val)
    return document


def measure_to_json(nu: MeasureZp | MeasureQp) -> dict[str, Any]:
    """MeasureZp or MeasureQp, keyed by coset representatives."""
    shift = getattr(nu, "shift", 0)
    base = getattr(nu, "base", nu)
    return {
        "schema": "measure/1",
        "p": base.p,
        "shift": shift,
        "level": base.level,
        "values": {str(a): format_element(base.field.from_row(row)) for a, row in enumerate(base.values)},
    }
