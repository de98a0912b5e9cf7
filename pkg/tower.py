#!/usr/bin/env python3
"""
Finite-depth towers (v_0, v_1, ...) with psi_D(v_{i+1}) = v_i, for the
(phi, Gamma)-modules of a character W = w^r * mu_y, and the star action of
the Borel subgroup B(Q_p) on them.

A Borel element is held through its factorisation

    diag(x, x) . diag(1, p^j) . diag(1, a) . [[1, z], [0, 1]]

with exact rational entries; the action is applied factor by factor from
the right. Every tower entry is a truncated Laurent series, and every value
computed from it is exact on its window: precision is lost only by psi, one
contraction at a time, and depth only by shifting indices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np

from algebra import Field, FieldElement, PadicScalar, PadicUnitDigits, vp
from errors import DepthExhausted, EmptyWindow, InsufficientPrecision, NotAUnit, OutOfRange
from laurent import (
    LaurentSeries,
    digit_count,
    gamma_act,
    one_plus_x_pow,
    psi,
    random_psi_preimage,
    residue,
)
from reps import BCharacter, MulCharacter

logger = logging.getLogger("modp.tower")

Flavor = Literal["plus", "sharp"]
GeneratorKind = Literal["central", "p_power", "torus", "unipotent"]
GENERATOR_KINDS: tuple[GeneratorKind, ...] = ("central", "p_power", "torus", "unipotent")


@dataclass(frozen=True)
class CharModel:
    """W = w^r * mu_y with basis e: phi(e) = y e, gamma(e) = w^r(gamma) e."""

    p: int
    r: int
    y: FieldElement
    flavor: Flavor = "sharp"

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % (self.p - 1))
        object.__setattr__(self, "y", Field(self.p, 2).embed(self.y))
        if self.y.is_zero():
            raise OutOfRange("phi(e) = y e needs y != 0")
        if self.flavor not in ("plus", "sharp"):
            raise OutOfRange(f"Unknown flavor: {self.flavor}")

    @property
    def field(self) -> Field:
        return Field(self.p, 2)

    @property
    def character(self) -> MulCharacter:
        """eta_W, the character of Q_p^x attached to W."""
        return MulCharacter(self.p, self.r, self.y)

    @property
    def pole_bound(self) -> int:
        return 1 if self.flavor == "sharp" else 0


def module_psi(model: CharModel, f: LaurentSeries) -> LaurentSeries:
    """psi_D(f e) = y^-1 psi(f) e."""
    if f.pole_order() > model.pole_bound:
        raise ValueError(f"A {model.flavor} entry has pole order at most {model.pole_bound}")
    return psi(f).scale(model.y.inverse())


def psi_precision(p: int, prec: int) -> int:
    """Precision of psi(f) for an entry f of pole order <= 1 known modulo X^prec."""
    return (prec + 1) // p - 1


def contraction_budget(p: int, precision: int) -> int:
    """How many psi contractions an entry of the given precision survives with a coefficient left."""
    budget = 0
    while psi_precision(p, precision) >= 1:
        precision = psi_precision(p, precision)
        budget += 1
    return budget


@dataclass(frozen=True, eq=False)
class Tower:
    model: CharModel
    central: MulCharacter
    entries: tuple[LaurentSeries, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValueError("A tower has depth at least 1")
        for i, entry in enumerate(self.entries):
            if entry.pole_order() > self.model.pole_bound:
                raise ValueError(
                    f"Entry {i} has pole order {entry.pole_order()} in a {self.model.flavor} tower"
                )

    @property
    def p(self) -> int:
        return self.model.p

    @property
    def depth(self) -> int:
        return len(self.entries)

    def entry(self, i: int) -> LaurentSeries:
        if not 0 <= i < self.depth:
            raise DepthExhausted(f"Entry {i} requested from a tower of depth {self.depth}")
        return self.entries[i]

    def precisions(self) -> list[int]:
        return [entry.prec for entry in self.entries]

    def is_valid(self) -> bool:
        """psi_D(v_{i+1}) = v_i on every window where both are known."""
        for i in range(self.depth - 1):
            try:
                image = module_psi(self.model, self.entries[i + 1])
            except EmptyWindow:
                continue
            if not image.agrees_with(self.entries[i]):
                logger.debug(f"Tower relation fails between entries {i} and {i + 1}")
                return False
        return True

    def __add__(self, other: Tower) -> Tower:
        if other.model != self.model or other.central != self.central:
            raise ValueError("Towers of different modules do not add")
        depth = min(self.depth, other.depth)
        return Tower(self.model, self.central, tuple(self.entries[i] + other.entries[i] for i in range(depth)))

    def scale(self, c: FieldElement | int) -> Tower:
        return Tower(self.model, self.central, tuple(entry.scale(c) for entry in self.entries))

    def agrees_with(self, other: Tower) -> bool:
        depth = min(self.depth, other.depth)
        return all(self.entries[i].agrees_with(other.entries[i]) for i in range(depth))


def standard_tower(
    model: CharModel,
    depth: int,
    precision: int = 8,
    central: MulCharacter | None = None,
) -> Tower:
    """The tower (y^n X^-1 e)_n, of residue 1."""
    if model.flavor != "sharp":
        raise ValueError("The standard tower lives in the sharp model")
    central = central or MulCharacter.trivial(model.p)
    entries = tuple(
        LaurentSeries.monomial(model.field, -1, precision, model.y**n) for n in range(depth)
    )
    return Tower(model, central, entries)


def constant_tower(
    model: CharModel,
    depth: int,
    precision: int = 8,
    central: MulCharacter | None = None,
) -> Tower:
    """The plus tower (y^n e)_n."""
    central = central or MulCharacter.trivial(model.p)
    plus = CharModel(model.p, model.r, model.y, "plus")
    entries = tuple(LaurentSeries.monomial(model.field, 0, precision, model.y**n) for n in range(depth))
    return Tower(plus, central, entries)


def random_tower(
    model: CharModel,
    central: MulCharacter,
    depth: int,
    precision: int,
    rng: np.random.Generator,
) -> Tower:
    """A random valid tower: v_0 uniform, then successive random psi_D-preimages."""
    base = LaurentSeries.random(model.field, -model.pole_bound, precision, rng)
    entries = [base]
    for _ in range(depth - 1):
        target = entries[-1].scale(model.y)
        entries.append(random_psi_preimage(target, rng, precision))
    return Tower(model, central, tuple(entries))


def plus_part(t: Tower) -> Tower:
    """t - res(t) * standard tower, a tower with no poles."""
    shifted = t + standard_tower(t.model, t.depth, min(t.precisions()), t.central).scale(-tower_residue(t))
    entries = tuple(entry.power_part() for entry in shifted.entries)
    return Tower(CharModel(t.p, t.model.r, t.model.y, "plus"), t.central, entries)


def tower_residue(t: Tower) -> FieldElement:
    """res(v_0); zero for a plus tower."""
    return residue(t.entry(0))


# ---------------------------------------------------------------------------
# Borel elements
# ---------------------------------------------------------------------------


def _random_unit(p: int, rng: np.random.Generator) -> Fraction:
    def draw(high: int) -> int:
        while True:
            value = int(rng.integers(1, high))
            if value % p:
                return value

    sign = 1 if rng.integers(0, 2) else -1
    return Fraction(sign * draw(p**3), draw(p**2))


@dataclass(frozen=True)
class BorelElement:
    """x . diag(1, p^j) . diag(1, a) . [[1, z], [0, 1]] with x in Q^x, a a p-adic unit, z in Q."""

    p: int
    x: Fraction = Fraction(1)
    j: int = 0
    a: Fraction = Fraction(1)
    z: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("x", "a", "z"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.x == 0:
            raise ValueError("The central factor must be nonzero")
        if self.a == 0 or vp(self.a, self.p) != 0:
            raise NotAUnit(f"The torus factor {self.a} is not a unit of Z_{self.p}")

    # -- generators -------------------------------------------------------

    @classmethod
    def identity(cls, p: int) -> BorelElement:
        return cls(p)

    @classmethod
    def central(cls, p: int, x: Fraction | int) -> BorelElement:
        return cls(p, x=x)

    @classmethod
    def p_power(cls, p: int, j: int) -> BorelElement:
        return cls(p, j=j)

    @classmethod
    def torus(cls, p: int, a: Fraction | int) -> BorelElement:
        return cls(p, a=a)

    @classmethod
    def unipotent(cls, p: int, z: Fraction | int) -> BorelElement:
        return cls(p, z=z)

    @classmethod
    def from_matrix(cls, p: int, A: Fraction | PadicScalar, B: Fraction | PadicScalar, D: Fraction | PadicScalar) -> BorelElement:
        """Factor [[A, B], [0, D]]."""
        A, B, D = (entry.a if isinstance(entry, PadicScalar) else Fraction(entry) for entry in (A, B, D))
        if A == 0 or D == 0:
            raise ValueError("A Borel matrix has nonzero diagonal entries")
        ratio = D / A
        j = vp(ratio, p)
        return cls(p, x=A, j=j, a=ratio / Fraction(p) ** j, z=B / A)

    # -- group structure --------------------------------------------------

    def matrix(self) -> tuple[PadicScalar, PadicScalar, PadicScalar]:
        """(A, B, D) of [[A, B], [0, D]]."""
        d = self.x * Fraction(self.p) ** self.j * self.a
        return tuple(PadicScalar.from_rational(self.p, entry) for entry in (self.x, self.x * self.z, d))

    def _entries(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(entry.a for entry in self.matrix())

    def __mul__(self, other: BorelElement) -> BorelElement:
        if other.p != self.p:
            raise ValueError("Borel elements for different p do not multiply")
        A1, B1, D1 = self._entries()
        A2, B2, D2 = other._entries()
        return BorelElement.from_matrix(self.p, A1 * A2, A1 * B2 + B1 * D2, D1 * D2)

    def inverse(self) -> BorelElement:
        A, B, D = self._entries()
        return BorelElement.from_matrix(self.p, 1 / A, -B / (A * D), 1 / D)

    def z_valuation(self) -> int | None:
        return vp(self.z, self.p) if self.z else None

    def character_value(self, b: BCharacter) -> FieldElement:
        A, _, D = self.matrix()
        return b.evaluate(A, D)

    # -- budgets ----------------------------------------------------------

    def contraction_cost(self) -> int:
        """psi contractions spent on entry 0 of g * v (entry 0 is the most expensive)."""
        unipotent = 0
        valuation = self.z_valuation()
        if valuation is not None:
            unipotent = max(0, -valuation - max(0, -self.j))
        return max(0, self.j) + unipotent

    def depth_cost(self, depth: int) -> int:
        """Depth an input tower needs so that g * v can be computed to the given depth."""
        deepest = max(0, depth - 1 - self.j)
        valuation = self.z_valuation()
        if valuation is not None:
            deepest = max(deepest, -valuation)
        return deepest + 1

    @classmethod
    def random(
        cls,
        p: int,
        rng: np.random.Generator,
        max_contractions: int,
        kind: GeneratorKind | None = None,
        spread: int = 2,
    ) -> BorelElement:
        """A random element (or generator of one kind) whose action fits the contraction budget."""
        while True:
            draw = {
                "x": Fraction(p) ** int(rng.integers(-spread, spread + 1)) * _random_unit(p, rng),
                "j": int(rng.integers(-spread, spread + 1)),
                "a": _random_unit(p, rng),
                "z": Fraction(0)
                if rng.integers(0, 4) == 0
                else Fraction(p) ** int(rng.integers(-spread, spread + 1)) * _random_unit(p, rng),
            }
            if kind == "central":
                element = cls(p, x=draw["x"])
            elif kind == "p_power":
                element = cls(p, j=draw["j"])
            elif kind == "torus":
                element = cls(p, a=draw["a"])
            elif kind == "unipotent":
                element = cls(p, z=draw["z"])
            else:
                element = cls(p, **draw)
            if element.contraction_cost() <= max_contractions:
                return element

    def __str__(self) -> str:
        return f"[x={self.x}, j={self.j}, a={self.a}, z={self.z}]"


# ---------------------------------------------------------------------------
# Star action
# ---------------------------------------------------------------------------


def _zp_digits(value: Fraction, p: int, prec: int) -> PadicUnitDigits:
    length = max(digit_count(prec - 1, p), 1) if prec > 1 else 1
    return PadicScalar.from_rational(p, value).zp_digits(length)


def unipotent_entry(z: Fraction, t: Tower, i: int, j: int | None = None) -> LaurentSeries:
    """psi_D^j((1+X)^(p^(i+j) z) v_(i+j)) for any j with i + j >= -val(z)."""
    p = t.p
    z = Fraction(z)
    if z == 0:
        return t.entry(i)
    lowest = max(0, -vp(z, p) - i)
    if j is None:
        j = lowest
    if j < lowest:
        raise ValueError(f"j = {j} is not admissible: need i + j >= {-vp(z, p)}")
    source = t.entry(i + j)
    width = source.prec - source.ord
    exponent = _zp_digits(Fraction(p) ** (i + j) * z, p, width)
    value = source * one_plus_x_pow(exponent, width, source.field)
    for _ in range(j):
        value = module_psi(t.model, value)
    return value


def _torus_entry(g: BorelElement, t: Tower, k: int) -> LaurentSeries:
    value = unipotent_entry(g.z, t, k)
    if g.a == 1:
        return value
    p = t.p
    inverse = 1 / g.a
    digits = _zp_digits(inverse, p, value.prec + 2)
    twist = Field(p, 2).embed(PadicScalar.from_rational(p, inverse).residue()) ** t.model.r
    return gamma_act(digits, value).scale(twist)


def star_entry(g: BorelElement, t: Tower, i: int) -> LaurentSeries:
    """(g * t)_i, reading the deepest entry available instead of contracting where possible."""
    if i < 0:
        raise ValueError("Tower indices are nonnegative")
    if g.j >= 0 and i < g.j:
        k, lift = 0, g.j - i
    else:
        k, lift = i - g.j, 0
    try:
        value = _torus_entry(g, t, k)
        for _ in range(lift):
            value = module_psi(t.model, value)
    except EmptyWindow as exc:
        raise InsufficientPrecision(f"Entry {i} of g * v exhausts the precision of the tower: {exc}") from exc
    scale = t.central.eval_at(PadicScalar.from_rational(t.p, g.x)).inverse()
    return value.scale(scale)


def star_action(g: BorelElement, t: Tower, depth: int | None = None) -> Tower:
    """g * t to the requested depth (default: as deep as t allows)."""
    if depth is None:
        depth = t.depth
        while depth > 1 and g.depth_cost(depth) > t.depth:
            depth -= 1
    needed = g.depth_cost(depth)
    if needed > t.depth:
        raise DepthExhausted(f"{g} needs depth {needed} for output depth {depth}, tower has {t.depth}")
    logger.debug(f"Acting by {g} on a depth {t.depth} tower, {g.contraction_cost()} contractions")
    entries = tuple(star_entry(g, t, i) for i in range(depth))
    return Tower(t.model, t.central, entries)


# ---------------------------------------------------------------------------
# Characters of the residue map
# ---------------------------------------------------------------------------


def residue_character(model: CharModel, central: MulCharacter) -> BCharacter:
    """The character by which res transforms: res(g * v) = chi_res(g) res(v)."""
    p = model.p
    eta = model.character
    omega = MulCharacter.omega(p)
    return BCharacter(central.inverse() * eta / omega, omega / eta)


def dual_residue_character(model: CharModel, central: MulCharacter) -> BCharacter:
    """chi w eta_W^-1 (x) w^-1 eta_W, the character of the one-dimensional quotient on the dual side."""
    p = model.p
    eta = model.character
    omega = MulCharacter.omega(p)
    return BCharacter(central * omega / eta, eta / omega)


def induced_characters(model: CharModel, central: MulCharacter) -> BCharacter:
    """eta_W (x) chi eta_W^-1."""
    eta = model.character
    return BCharacter(eta, central / eta)


@dataclass
class ExactSequenceReport:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_exact_sequence(
    model: CharModel,
    central: MulCharacter,
    depth: int,
    precision: int,
    samples: int,
    rng: np.random.Generator,
) -> ExactSequenceReport:
    """Check res: lim D#(W) -> k_L is onto, vanishes exactly on the plus model, and is B-equivariant."""
    if model.flavor != "sharp":
        raise ValueError("The residue sequence is checked on the sharp model")
    report = ExactSequenceReport()
    field_ = model.field
    standard = standard_tower(model, depth, precision, central)

    for c in field_.elements():
        report.checked += 1
        if tower_residue(standard.scale(c)) != c:
            report.violations.append(f"surjectivity: c * standard tower has residue != {c}")

    budget = contraction_budget(model.p, precision)
    chi_res = residue_character(model, central)
    for sample in range(samples):
        t = random_tower(model, central, depth, precision, rng)
        report.checked += 1
        kernel = plus_part(t)
        if tower_residue(kernel) != field_.zero or not kernel.is_valid():
            report.violations.append(f"kernel: plus part of sample {sample} is not a plus tower")
        kind = GENERATOR_KINDS[sample % len(GENERATOR_KINDS)] if sample < 2 * len(GENERATOR_KINDS) else None
        g = BorelElement.random(model.p, rng, budget, kind=kind)
        if g.depth_cost(1) > t.depth:
            continue
        report.checked += 1
        moved = tower_residue(star_action(g, t, 1))
        expected = g.character_value(chi_res) * tower_residue(t)
        if moved != expected:
            report.violations.append(f"equivariance: res({g} * v) = {moved}, expected {expected}")
    if report.violations:
        logger.warning(f"Exact sequence check found {len(report.violations)} violations")
    return report
