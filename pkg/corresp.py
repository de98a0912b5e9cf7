#!/usr/bin/env python3
"""
The mod p correspondence between semisimple 2-dimensional Galois
representations and semisimple GL_2(Q_p) representations, in both
directions, and the reduction table of crystalline representations V_{k,a_p}
for val(a_p) > 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from algebra import Field, FieldElement, PadicScalar, solve_unit_quadratic, sqrt_fp2
from errors import (
    InsufficientPrecision,
    NotInImage,
    OutOfRange,
    OutOfTableRange,
    UndeterminedValuation,
)
from reps import (
    BChar,
    GSS,
    GaloisRep,
    Irred,
    MulCharacter,
    SplitSum,
    Supersingular,
    canonical_pi,
    ind_omega2,
    induced_ss,
    restrict_to_borel,
)

logger = logging.getLogger("modp.corresp")


def bracket(n: int, p: int) -> int:
    """The representative of n mod (p-1) in {0..p-2}."""
    return n % (p - 1)


# ---------------------------------------------------------------------------
# Galois <-> GL_2
# ---------------------------------------------------------------------------


def split_factorization(
    c1: MulCharacter, c2: MulCharacter
) -> tuple[int, FieldElement, MulCharacter] | None:
    """(r, lam, chi) with c1 = mu_lam w^(r+1) chi and c2 = mu_(1/lam) chi, when lam^2 = c1(p)/c2(p) has a root."""
    p = c1.p
    try:
        lam = sqrt_fp2(c1.unit / c2.unit)
    except ValueError:
        return None
    r = bracket(c1.twist - c2.twist - 1, p)
    chi = c2 * MulCharacter.mu(p, lam)
    return r, lam, chi


def galois_to_gl2(v: GaloisRep) -> GSS:
    if isinstance(v, Irred):
        return canonical_pi(v.r, Field(v.p, 2).zero, v.chi)
    p = v.p
    omega = MulCharacter.omega(p)
    c1, c2 = v.chars
    return induced_ss(c2, c1 / omega) + induced_ss(c1, c2 / omega)


def galois_to_gl2_factored(c1: MulCharacter, c2: MulCharacter) -> GSS | None:
    """The same multiset through pi(r, lam, chi) + pi([p-3-r], 1/lam, w^(r+1) chi)."""
    factors = split_factorization(c1, c2)
    if factors is None:
        return None
    r, lam, chi = factors
    p = c1.p
    partner = canonical_pi(bracket(p - 3 - r, p), lam.inverse(), MulCharacter.omega(p, r + 1) * chi)
    return canonical_pi(r, lam, chi) + partner


def gl2_to_galois(pi_ss: GSS) -> GaloisRep:
    """Read the Galois side back from the finite-dimensional Borel quotients."""
    atoms = list(pi_ss)
    if len(atoms) == 1 and isinstance(atoms[0], Supersingular):
        return Irred(atoms[0].r, atoms[0].chi)
    candidates: set[SplitSum] = set()
    for b_atom in restrict_to_borel(pi_ss):
        if isinstance(b_atom, BChar):
            left, right = b_atom.b.left, b_atom.b.right
            candidates.add(SplitSum.of(MulCharacter.omega(left.p) * right, left))
    if not candidates:
        raise NotInImage("The Borel restriction has no one-dimensional quotient to read a character pair from")
    if len(candidates) > 1:
        raise NotInImage(f"The one-dimensional quotients give {len(candidates)} different character pairs")
    candidate = candidates.pop()
    if galois_to_gl2(candidate) != pi_ss:
        raise NotInImage(
            f"{{{', '.join(str(c) for c in candidate.chars)}}} would give a different GL_2 representation"
        )
    return candidate


# ---------------------------------------------------------------------------
# Crystalline reduction table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CrystallineParams:
    """V_{k,a_p} given by a_p, or by val(a_p) alone (plus the residue of a_p/p^val when known)."""

    p: int
    k: int
    ap: PadicScalar | None = None
    val: Fraction | None = None
    residue: FieldElement | None = None

    def __post_init__(self):
        if self.k < 2:
            raise OutOfTableRange(f"The weight k must be at least 2, got {self.k}")
        if (self.ap is None) == (self.val is None):
            raise ValueError("Pass exactly one of a_p and val(a_p)")
        if self.val is not None:
            object.__setattr__(self, "val", Fraction(self.val))
        valuation = self.valuation
        if valuation is not None and valuation <= 0:
            raise OutOfTableRange(f"a_p must lie in the maximal ideal, got val(a_p) = {valuation}")

    @property
    def symbolic(self) -> bool:
        return self.ap is None

    @property
    def valuation(self) -> Fraction | None:
        """val(a_p); None for a_p = 0."""
        if self.val is not None:
            return self.val
        if self.ap.is_exact_zero():
            return None
        return self.ap.valuation()


@dataclass(frozen=True)
class ReductionResult:
    case: str
    galois: GaloisRep
    gl2: GSS
    notes: tuple[str, ...] = field(default_factory=tuple)


def table_case(p: int, k: int, val: Fraction | None) -> str:
    """The row of the table, decided from the valuation alone (None means a_p = 0)."""
    if k < 2:
        raise OutOfTableRange(f"The weight k must be at least 2, got {k}")
    if k <= p + 1:
        return "1"
    if val is None:
        raise OutOfTableRange("a_p = 0 is only accepted for 2 <= k <= p+1")
    val = Fraction(val)
    if val <= 0:
        raise OutOfTableRange(f"a_p must lie in the maximal ideal, got val(a_p) = {val}")
    if k == p + 2:
        return "2a" if val < 1 else "2b"
    if k <= 2 * p:
        if val < 1:
            return "3a"
        return "3b" if val == 1 else "3c"
    if k == 2 * p + 1:
        if p == 2:
            raise OutOfTableRange("k = 2p+1 is not covered for p = 2")
        return "4"
    bound = (k - 2) // (p - 1)
    if val <= bound:
        raise OutOfTableRange(f"k = {k} needs val(a_p) > {bound}, got {val}")
    return "5b" if (k - 1) % (p + 1) == 0 else "5a"


def _reduction(x: PadicScalar) -> FieldElement:
    """Image in k_L of an element of the valuation ring (0 on the maximal ideal)."""
    if x.is_zero() or x.valuation() > 0:
        return Field(x.p, 2).zero
    return Field(x.p, 2).embed(x.residue())


def _ap_over_p(params: CrystallineParams) -> FieldElement:
    """Residue of a_p/p, from a_p or from the symbolic data."""
    p = params.p
    if not params.symbolic:
        return _reduction(params.ap / p)
    if params.val > 1:
        return Field(p, 2).zero
    if params.residue is None:
        raise UndeterminedValuation("This branch needs the residue of a_p/p, which was not given")
    return Field(p, 2).embed(params.residue)


def _unramified_pair(lam: FieldElement, twist: MulCharacter) -> SplitSum:
    p = lam.p
    return SplitSum.of(twist * MulCharacter.mu(p, lam), twist * MulCharacter.mu(p, lam.inverse()))


def reduce_crystalline(params: CrystallineParams) -> ReductionResult:
    p, k = params.p, params.k
    label = table_case(p, k, params.valuation)
    omega = MulCharacter.omega(p)
    notes: list[str] = []

    if label == "1":
        galois = ind_omega2(k - 1, p=p)
    elif label == "2a":
        galois = ind_omega2(2, p=p)
    elif label == "2b":
        lam = solve_unit_quadratic(_ap_over_p(params))[0]
        galois = _unramified_pair(lam, omega)
    elif label == "3a":
        galois = ind_omega2(k - p, p=p)
    elif label == "3b":
        lam = _ap_over_p(params) * (k - 1)
        galois = SplitSum.of(MulCharacter.omega(p, k - 2) * MulCharacter.mu(p, lam), omega * MulCharacter.mu(p, lam.inverse()))
        if k == p + 3 and lam in (Field(p, 2).one, Field(p, 2).elem(-1)):
            notes.append(
                f"A lattice reduces to the extension (w *; 0 1) (x) w^1*mu({lam}) with * non-trivial and peu ramifié"
            )
    elif label == "3c":
        galois = ind_omega2(k - 1, p=p)
    elif label == "4":
        label, galois = _case_four(params)
    elif label == "5a":
        galois = ind_omega2(k - 1, p=p)
    else:
        i = sqrt_fp2(Field(p, 2).elem(-1))
        galois = _unramified_pair(i, MulCharacter.omega(p, (k - 1) // (p + 1)))

    logger.debug(f"Reduction of V_(k={k}) fell in case {label}")
    return ReductionResult(label, galois, galois_to_gl2(galois), tuple(notes))


def _case_four(params: CrystallineParams) -> tuple[str, GaloisRep]:
    p = params.p
    if params.symbolic:
        if params.val == Fraction(1, 2):
            raise UndeterminedValuation("For k = 2p+1 and val(a_p) = 1/2 the branch depends on a_p beyond its valuation")
        return "4a", ind_omega2(2, p=p)
    ap = params.ap
    total = ap * ap + p
    if total.is_exact_zero():
        wild = True
    else:
        try:
            wild = total.valuation() >= Fraction(3, 2)
        except InsufficientPrecision as exc:
            raise InsufficientPrecision(f"val(a_p^2 + p) is not determined by the digits of a_p: {exc}") from exc
    if not wild:
        return "4a", ind_omega2(2, p=p)
    ratio = Field(p, 2).zero if total.is_exact_zero() else _reduction(total / (2 * p * ap))
    lam = solve_unit_quadratic(ratio)[0]
    return "4b", _unramified_pair(lam, MulCharacter.omega(p))


def breuil_modp_datum(k: int, p: int) -> GSS:
    """The reduction of Pi_{k,0} for 2 <= k <= p+1."""
    if not 2 <= k <= p + 1:
        raise OutOfRange(f"The reduction of Pi_(k,0) is tabulated for 2 <= k <= {p + 1}, got k = {k}")
    return canonical_pi(k - 2, Field(p, 2).zero, MulCharacter.trivial(p))
