#!/usr/bin/env python3
"""
The representation catalog.

Smooth characters w^r * mu_y of Q_p^x (equivalently of the Galois group, with
p sent to Frob_p^-1), mod-p Galois representations, the atoms of
semisimplified GL_2(Q_p) representations and of their restrictions to the
Borel subgroup, canonical forms under every listed intertwining, and the
Borel restriction profile together with its inverse.

All labels are immutable values; multisets are sorted tuples so that equal
multisets are equal values and serialize identically.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import ClassVar, Iterable, Iterator, Literal, Union

from algebra import Field, FieldElement, PadicScalar, PadicUnitDigits
from errors import InconsistentProfile, OutOfRange, ReducibleInduction

logger = logging.getLogger("modp.reps")

CharOp = Literal["mul", "div", "inv", "eval_at_p", "eval_at_unit"]


# ---------------------------------------------------------------------------
# Characters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MulCharacter:
    """The character w^twist * mu_unit; mu_y sends p to y and is trivial on units."""

    p: int
    twist: int
    unit: FieldElement

    def __post_init__(self):
        object.__setattr__(self, "twist", self.twist % (self.p - 1))
        object.__setattr__(self, "unit", Field(self.p, 2).embed(self.unit))
        if self.unit.is_zero():
            raise ValueError("The unramified part of a character must be a unit")

    @classmethod
    def trivial(cls, p: int) -> MulCharacter:
        return cls(p, 0, Field(p, 2).one)

    @classmethod
    def omega(cls, p: int, r: int = 1) -> MulCharacter:
        return cls(p, r, Field(p, 2).one)

    @classmethod
    def mu(cls, p: int, y: FieldElement | int) -> MulCharacter:
        return cls(p, 0, Field(p, 2).embed(y))

    def __mul__(self, other: MulCharacter) -> MulCharacter:
        if other.p != self.p:
            raise ValueError(f"Characters for p={self.p} and p={other.p} do not mix")
        return MulCharacter(self.p, self.twist + other.twist, self.unit * other.unit)

    def inverse(self) -> MulCharacter:
        return MulCharacter(self.p, -self.twist, self.unit.inverse())

    def __truediv__(self, other: MulCharacter) -> MulCharacter:
        return self * other.inverse()

    def __pow__(self, n: int) -> MulCharacter:
        return MulCharacter(self.p, self.twist * n, self.unit**n)

    def eval_at_p(self) -> FieldElement:
        return self.unit

    def eval_at_unit(self, u: PadicUnitDigits | FieldElement | int) -> FieldElement:
        """w^r(u) = (u mod p)^r for a p-adic unit u."""
        field = Field(self.p, 2)
        if isinstance(u, PadicUnitDigits):
            residue = u.residue()
        else:
            residue = field.embed(u)
        if residue.is_zero():
            raise ValueError("Characters are evaluated on units here")
        return field.embed(residue) ** self.twist

    def eval_at(self, x: PadicScalar) -> FieldElement:
        """chi(p^v * u) = chi(p)^v * w^r(u) for x in Q_p^x."""
        v, unit = x.split()
        residue = Field(self.p, 2).embed(PadicScalar.from_rational(self.p, unit).residue())
        return self.unit**v * residue**self.twist

    def sort_key(self) -> tuple:
        return (self.twist, self.unit.sort_key())

    def __str__(self) -> str:
        return f"w^{self.twist}*mu({self.unit})"


def char_ops(
    c1: MulCharacter,
    c2: MulCharacter | PadicUnitDigits | int | None,
    op: CharOp,
) -> MulCharacter | FieldElement:
    if op == "mul":
        return c1 * c2
    if op == "div":
        return c1 / c2
    if op == "inv":
        return c1.inverse()
    if op == "eval_at_p":
        return c1.eval_at_p()
    if op == "eval_at_unit":
        return c1.eval_at_unit(c2)
    raise ValueError(f"Unknown character operation: {op}")


def characters(p: int, units: Iterable[FieldElement] | None = None) -> list[MulCharacter]:
    """All w^r * mu_y with y in `units` (default F_p^x)."""
    units = list(units) if units is not None else list(Field(p, 2).prime_units())
    return [MulCharacter(p, r, y) for r in range(p - 1) for y in units]


@dataclass(frozen=True)
class BCharacter:
    """chi_1 (x) chi_2 : [[a, b], [0, d]] -> chi_1(a) chi_2(d)."""

    left: MulCharacter
    right: MulCharacter

    def evaluate(self, a: PadicScalar, d: PadicScalar) -> FieldElement:
        return self.left.eval_at(a) * self.right.eval_at(d)

    def sort_key(self) -> tuple:
        return (self.left.sort_key(), self.right.sort_key())

    def __str__(self) -> str:
        return f"{self.left} (x) {self.right}"


# ---------------------------------------------------------------------------
# Galois representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Irred:
    """rho(r, chi) = ind(w_2^(r+1)) (x) chi."""

    r: int
    chi: MulCharacter

    @property
    def p(self) -> int:
        return self.chi.p

    def det(self) -> MulCharacter:
        return MulCharacter.omega(self.p, self.r + 1) * self.chi**2

    def sort_key(self) -> tuple:
        return (self.r, self.chi.sort_key())


@dataclass(frozen=True)
class SplitSum:
    """A semisimple reducible representation chi_a (+) chi_b (unordered)."""

    chars: tuple[MulCharacter, MulCharacter]

    def __post_init__(self):
        object.__setattr__(self, "chars", tuple(sorted(self.chars, key=MulCharacter.sort_key)))

    @classmethod
    def of(cls, c1: MulCharacter, c2: MulCharacter) -> SplitSum:
        return cls((c1, c2))

    @property
    def p(self) -> int:
        return self.chars[0].p

    def det(self) -> MulCharacter:
        return self.chars[0] * self.chars[1]

    def sort_key(self) -> tuple:
        return tuple(c.sort_key() for c in self.chars)


GaloisRep = Union[Irred, SplitSum]


def rho_orbit(r: int, chi: MulCharacter) -> list[tuple[int, MulCharacter]]:
    """Parameter tuples (r', chi') with rho(r', chi') isomorphic to rho(r, chi)."""
    p = chi.p
    if not 0 <= r <= p - 1:
        raise OutOfRange(f"r must lie in 0..{p - 1}, got {r}")
    sign = MulCharacter.mu(p, -1)
    shifted = chi * MulCharacter.omega(p, r)
    candidates = {(r, chi), (r, chi * sign), (p - 1 - r, shifted), (p - 1 - r, shifted * sign)}
    return sorted(candidates, key=lambda item: (item[0], item[1].sort_key()))


def canonical_rho(r: int, chi: MulCharacter) -> Irred:
    least_r, least_chi = rho_orbit(r, chi)[0]
    return Irred(least_r, least_chi)


def ind_omega2(h: int, twist: MulCharacter | None = None, p: int | None = None) -> Irred:
    """ind(w_2^h) (x) twist in canonical form, using w_2^(p+1) = w."""
    if twist is None:
        if p is None:
            raise ValueError("Pass p or a twist character")
        twist = MulCharacter.trivial(p)
    p = twist.p
    h %= p * p - 1
    if h % (p + 1) == 0:
        raise ReducibleInduction(f"ind(w_2^{h}) is reducible: {p + 1} divides {h}")
    r = h % (p + 1) - 1
    s = (h - r - 1) // (p + 1)
    return canonical_rho(r, MulCharacter.omega(p, s) * twist)


# ---------------------------------------------------------------------------
# GL_2(Q_p) atoms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OneDim:
    """chi o det."""

    chi: MulCharacter
    order: ClassVar[int] = 0

    def central_character(self) -> MulCharacter:
        return self.chi**2

    def sort_key(self) -> tuple:
        return (self.order, self.chi.sort_key())


@dataclass(frozen=True)
class SpecialTwist:
    """Sp (x) (chi o det)."""

    chi: MulCharacter
    order: ClassVar[int] = 1

    def central_character(self) -> MulCharacter:
        return self.chi**2

    def sort_key(self) -> tuple:
        return (self.order, self.chi.sort_key())


@dataclass(frozen=True)
class PrincipalSeries:
    """Ind_B^G(chi_1 (x) chi_2) with chi_1 != chi_2 (irreducible)."""

    b: BCharacter
    order: ClassVar[int] = 2

    def __post_init__(self):
        if self.b.left == self.b.right:
            raise ValueError("A principal series atom needs chi_1 != chi_2")

    def central_character(self) -> MulCharacter:
        return self.b.left * self.b.right

    def sort_key(self) -> tuple:
        return (self.order, self.b.sort_key())


@dataclass(frozen=True)
class Supersingular:
    """pi(r, 0, chi), stored with canonical parameters."""

    r: int
    chi: MulCharacter
    order: ClassVar[int] = 3

    @classmethod
    def canonical(cls, r: int, chi: MulCharacter) -> Supersingular:
        rep = canonical_rho(r, chi)
        return cls(rep.r, rep.chi)

    def central_character(self) -> MulCharacter:
        return MulCharacter.omega(self.chi.p, self.r) * self.chi**2

    def sort_key(self) -> tuple:
        return (self.order, self.r, self.chi.sort_key())


GAtom = Union[OneDim, SpecialTwist, PrincipalSeries, Supersingular]


@dataclass(frozen=True)
class GSS:
    """A semisimple GL_2(Q_p) representation as a multiset of atoms."""

    atoms: tuple[GAtom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=lambda atom: atom.sort_key())))

    @classmethod
    def of(cls, *atoms: GAtom) -> GSS:
        return cls(tuple(atoms))

    def __add__(self, other: GSS) -> GSS:
        return GSS(self.atoms + other.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[GAtom]:
        return iter(self.atoms)

    def sort_key(self) -> tuple:
        return tuple(atom.sort_key() for atom in self.atoms)


def induced_ss(chi1: MulCharacter, chi2: MulCharacter) -> GSS:
    """Semisimplification of Ind_B^G(chi_1 (x) chi_2)."""
    if chi1 == chi2:
        return GSS.of(OneDim(chi1), SpecialTwist(chi1))
    return GSS.of(PrincipalSeries(BCharacter(chi1, chi2)))


def canonical_pi(r: int, lam: FieldElement, chi: MulCharacter) -> GSS:
    """Semisimplification of pi(r, lambda, chi) in canonical form."""
    p = chi.p
    if not 0 <= r <= p - 1:
        raise OutOfRange(f"r must lie in 0..{p - 1}, got {r}")
    lam = Field(p, 2).embed(lam)
    if lam.is_zero():
        return GSS.of(Supersingular.canonical(r, chi))
    return induced_ss(
        chi * MulCharacter.mu(p, lam.inverse()),
        chi * MulCharacter.mu(p, lam) * MulCharacter.omega(p, r),
    )


def pi_orbit(r: int, lam: FieldElement, chi: MulCharacter) -> list[tuple[int, FieldElement, MulCharacter]]:
    """Parameter tuples (r', lam', chi') with pi(r', lam', chi') isomorphic to pi(r, lam, chi)."""
    p = chi.p
    lam = Field(p, 2).embed(lam)
    if lam.is_zero():
        return [(r2, lam, chi2) for r2, chi2 in rho_orbit(r, chi)]
    sign = MulCharacter.mu(p, -1)
    candidates = {(r, lam, chi), (r, -lam, chi * sign)}
    if r in (0, p - 1):
        candidates |= {(p - 1 - r, lam, chi), (p - 1 - r, -lam, chi * sign)}
    return sorted(candidates, key=lambda item: (item[0], item[1].sort_key(), item[2].sort_key()))


# ---------------------------------------------------------------------------
# Borel atoms, restriction and reconstruction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BChar:
    b: BCharacter
    order: ClassVar[int] = 0

    def sort_key(self) -> tuple:
        return (self.order, self.b.sort_key())


@dataclass(frozen=True)
class OmegaLabel:
    """Omega_chi(W): W a character (dimension 1) or an Irred rho(r, chi) (dimension 2)."""

    central: MulCharacter
    w: MulCharacter | Irred
    order: ClassVar[int] = 1

    def __post_init__(self):
        if isinstance(self.w, Irred):
            object.__setattr__(self, "w", canonical_rho(self.w.r, self.w.chi))

    @property
    def dimension(self) -> int:
        return 2 if isinstance(self.w, Irred) else 1

    def sort_key(self) -> tuple:
        return (self.order, self.central.sort_key(), self.dimension, self.w.sort_key())


BAtom = Union[BChar, OmegaLabel]


@dataclass(frozen=True)
class BSS:
    atoms: tuple[BAtom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms, key=lambda atom: atom.sort_key())))

    @classmethod
    def of(cls, *atoms: BAtom) -> BSS:
        return cls(tuple(atoms))

    def __add__(self, other: BSS) -> BSS:
        return BSS(self.atoms + other.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[BAtom]:
        return iter(self.atoms)


def atom_profile(atom: GAtom) -> tuple[BAtom, ...]:
    """Restriction to B(Q_p) of one atom."""
    if isinstance(atom, OneDim):
        return (BChar(BCharacter(atom.chi, atom.chi)),)
    if isinstance(atom, SpecialTwist):
        return (OmegaLabel(atom.chi**2, atom.chi),)
    if isinstance(atom, PrincipalSeries):
        left, right = atom.b.left, atom.b.right
        return (OmegaLabel(left * right, left), BChar(atom.b))
    if isinstance(atom, Supersingular):
        return (OmegaLabel(atom.central_character(), Irred(atom.r, atom.chi)),)
    raise TypeError(f"Not a GL_2 atom: {atom!r}")


def restrict_to_borel(reps: GSS) -> BSS:
    return BSS(tuple(b_atom for atom in reps for b_atom in atom_profile(atom)))


def reconstruct_from_borel(profile: BSS) -> GSS:
    """Inverse of restrict_to_borel."""
    atoms: list[GAtom] = []
    pending: Counter[OmegaLabel] = Counter()
    for b_atom in profile:
        if isinstance(b_atom, OmegaLabel) and b_atom.dimension == 2:
            w = b_atom.w
            expected = MulCharacter.omega(w.p, w.r) * w.chi**2
            if b_atom.central != expected:
                raise InconsistentProfile(
                    f"Central character {b_atom.central} does not match rho({w.r}, {w.chi})"
                )
            atoms.append(Supersingular(w.r, w.chi))
        elif isinstance(b_atom, OmegaLabel):
            pending[b_atom] += 1
    for b_atom in profile:
        if not isinstance(b_atom, BChar):
            continue
        left, right = b_atom.b.left, b_atom.b.right
        if left == right:
            atoms.append(OneDim(left))
            continue
        partner = OmegaLabel(left * right, left)
        if pending[partner] == 0:
            raise InconsistentProfile(f"BChar({b_atom.b}) has no matching Omega label")
        pending[partner] -= 1
        atoms.append(PrincipalSeries(b_atom.b))
    for label, count in pending.items():
        if count and label.central != label.w**2:
            raise InconsistentProfile(f"Omega label ({label.central}, {label.w}) matches no atom")
        atoms.extend(SpecialTwist(label.w) for _ in range(count))
    logger.debug(f"Reconstructed {len(atoms)} atoms from a profile of {len(profile)}")
    return GSS(tuple(atoms))


def ghost_identities(w: MulCharacter, chi: MulCharacter) -> tuple[BSS, BSS]:
    """B-profiles of Ind(eta_W (x) chi eta_W^-1) and of the dual of the psi-limit of D#(W)."""
    p = chi.p
    omega = MulCharacter.omega(p)
    label = OmegaLabel(chi, w)
    induced = BSS.of(label, BChar(BCharacter(w, chi / w)))
    dual = BSS.of(label, BChar(BCharacter(chi * omega / w, w / omega)))
    return induced, dual
