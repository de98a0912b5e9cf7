#!/usr/bin/env python3
"""
Finite-level measures and the Amice transform.

A measure on Z_p at level n is its table of values on the cosets a + p^n Z_p,
and its Amice transform sum_a nu(a) (1+X)^a is an exact polynomial modulo
X^(p^n), since (1+X)^(p^n) = 1 + X^(p^n) in characteristic p. Measures on
Q_p are held through a restriction to some p^-i Z_p.

Step functions model the smooth part Ind_B^G(chi_1 (x) chi_2)_0 through
f_sigma(x) = sigma([[0, 1], [-1, x]]); a function with shift i and level n is
supported on p^-i Z_p and constant on the cosets of p^n Z_p, stored by the
representatives p^-i c, 0 <= c < p^(i+n).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from algebra import Field, FieldElement, PadicScalar, vp
from errors import InsufficientPrecision, LevelExhausted, LevelMismatch, OutOfRange
from laurent import LaurentSeries, _to_binomial_basis, binomial_table
from reps import BCharacter, MulCharacter
from tower import BorelElement, CharModel, Tower

logger = logging.getLogger("modp.amice")


def _residue_mod(q: Fraction, modulus: int) -> int:
    """q mod modulus for q in Z_(p), modulus a power of p."""
    return q.numerator * pow(q.denominator, -1, modulus) % modulus


@dataclass(frozen=True, eq=False)
class MeasureZp:
    field: Field
    level: int
    values: np.ndarray

    def __post_init__(self):
        if self.level < 0:
            raise ValueError(f"Levels are nonnegative, got {self.level}")
        size = self.field.p**self.level
        values = np.asarray(self.values, dtype=np.int64).reshape(size, self.field.m) % self.field.p
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def p(self) -> int:
        return self.field.p

    @classmethod
    def zero(cls, field: Field, level: int) -> MeasureZp:
        return cls(field, level, np.zeros((field.p**level, field.m), dtype=np.int64))

    @classmethod
    def dirac(cls, field: Field, a: int, level: int, mass: FieldElement | int = 1) -> MeasureZp:
        values = np.zeros((field.p**level, field.m), dtype=np.int64)
        values[a % field.p**level] = field.to_row(mass)
        return cls(field, level, values)

    @classmethod
    def random(cls, field: Field, level: int, rng: np.random.Generator) -> MeasureZp:
        return cls(field, level, rng.integers(0, field.p, size=(field.p**level, field.m)))

    def value(self, a: int) -> FieldElement:
        """nu(a + p^n Z_p)."""
        return self.field.from_row(self.values[a % self.p**self.level])

    def total(self) -> FieldElement:
        return self.field.from_row(self.values.sum(axis=0))

    def coarsen(self, level: int) -> MeasureZp:
        """nu_level(a) = sum over b = a mod p^level of nu(b)."""
        if level > self.level:
            raise LevelExhausted(f"Cannot refine a level {self.level} measure to level {level}")
        values = self.values.reshape(-1, self.p**level, self.field.m).sum(axis=0)
        return MeasureZp(self.field, level, values)

    def __add__(self, other: MeasureZp) -> MeasureZp:
        level = min(self.level, other.level)
        return MeasureZp(self.field, level, self.coarsen(level).values + other.coarsen(level).values)

    def scale(self, c: FieldElement | int) -> MeasureZp:
        row = self.field.to_row(c)
        return MeasureZp(self.field, self.level, self.field.mul_arrays(self.values, row[None, :]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeasureZp):
            return NotImplemented
        return self.field == other.field and self.level == other.level and np.array_equal(self.values, other.values)

    __hash__ = None


def amice_transform(nu: MeasureZp) -> LaurentSeries:
    """A(nu) = sum_a nu(a) (1+X)^a mod X^(p^n)."""
    p = nu.p
    size = p**nu.level
    table = binomial_table(np.arange(size), size, p)  # [k, a] = C(a, k)
    return LaurentSeries(nu.field, 0, size, table @ nu.values % p)


def inverse_amice(f: LaurentSeries, level: int) -> MeasureZp:
    """The level-n measure whose transform is f mod X^(p^n)."""
    p = f.p
    size = p**level
    if f.pole_order() > 0:
        raise ValueError("Only power series are Amice transforms of measures")
    if f.prec < size:
        raise InsufficientPrecision(f"A level {level} measure needs f mod X^{size}, known mod X^{f.prec}")
    coeffs = f.power_part().reframe(0, size).data
    return MeasureZp(f.field, level, _to_binomial_basis(p, size) @ coeffs % p)


def measure_psi(nu: MeasureZp) -> MeasureZp:
    """psi(nu)(a + p^(n-1) Z_p) = nu(pa + p^n Z_p)."""
    if nu.level < 1:
        raise LevelExhausted("psi lowers the level of a measure, which is already 0")
    return MeasureZp(nu.field, nu.level - 1, nu.values[:: nu.p])


@dataclass(frozen=True, eq=False)
class MeasureQp:
    """int_{Q_p} f dnu = int_{Z_p} f(p^-shift z) dbase for f supported on p^-shift Z_p."""

    shift: int
    base: MeasureZp

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def resolution(self) -> int:
        """nu is known on the cosets of p^resolution Z_p."""
        return self.base.level - self.shift

    def restrict(self, shift: int) -> MeasureQp:
        """The same measure read through a smaller support p^-shift Z_p."""
        if shift > self.shift:
            raise LevelMismatch(f"Cannot widen the support from p^-{self.shift} to p^-{shift}")
        base = self.base
        for _ in range(self.shift - shift):
            base = measure_psi(base)
        return MeasureQp(shift, base)

    def agrees_with(self, other: MeasureQp) -> bool:
        shift = min(self.shift, other.shift)
        left, right = self.restrict(shift).base, other.restrict(shift).base
        level = min(left.level, right.level)
        return left.coarsen(level) == right.coarsen(level)


def tower_to_measure(t: Tower, level: int, shift: int | None = None) -> MeasureQp:
    """nu_y from entry `shift` of a plus tower: A(nu_(y,i)) = y^-i f_i at base level `level`."""
    if t.model.flavor != "plus":
        raise OutOfRange("Measures come from towers in the plus model")
    shift = t.depth - 1 if shift is None else shift
    entry = t.entry(shift)
    normalised = entry.scale(t.model.y ** (-shift))
    return MeasureQp(shift, inverse_amice(normalised, level))


# ---------------------------------------------------------------------------
# Step functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StepFunction:
    field: Field
    shift: int
    level: int
    values: np.ndarray

    def __post_init__(self):
        if self.shift < 0 or self.shift + self.level < 0:
            raise ValueError(f"Invalid support/level pair ({self.shift}, {self.level})")
        size = self.field.p ** (self.shift + self.level)
        values = np.asarray(self.values, dtype=np.int64).reshape(size, self.field.m) % self.field.p
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def p(self) -> int:
        return self.field.p

    @classmethod
    def indicator(cls, field: Field, shift: int = 0, level: int | None = None) -> StepFunction:
        """The indicator function of p^-shift Z_p."""
        level = -shift if level is None else level
        return cls(field, shift, level, np.tile(field.to_row(1), (field.p ** (shift + level), 1)))

    @classmethod
    def from_function(
        cls,
        field: Field,
        shift: int,
        level: int,
        fn: Callable[[Fraction], FieldElement | int],
    ) -> StepFunction:
        p = field.p
        rows = [field.to_row(fn(Fraction(c, p**shift))) for c in range(p ** (shift + level))]
        return cls(field, shift, level, np.array(rows, dtype=np.int64).reshape(-1, field.m))

    @classmethod
    def random(cls, field: Field, shift: int, level: int, rng: np.random.Generator) -> StepFunction:
        return cls(field, shift, level, rng.integers(0, field.p, size=(field.p ** (shift + level), field.m)))

    def evaluate(self, x: Fraction | int | PadicScalar) -> FieldElement:
        x = x.a if isinstance(x, PadicScalar) else Fraction(x)
        p = self.p
        if x == 0:
            return self.field.from_row(self.values[0])
        if vp(x, p) < -self.shift:
            return self.field.zero
        index = _residue_mod(x * Fraction(p) ** self.shift, p ** (self.shift + self.level))
        return self.field.from_row(self.values[index])

    def grid(self, shift: int, level: int) -> np.ndarray:
        """Values at p^-shift c, 0 <= c < p^(shift+level), on a finer grid."""
        if shift < self.shift or level < self.level:
            raise LevelMismatch(
                f"A function with support p^-{self.shift} and level {self.level} "
                f"does not descend to ({shift}, {level})"
            )
        p = self.p
        c = np.arange(p ** (shift + level), dtype=np.int64)
        step = p ** (shift - self.shift)
        inside = c % step == 0
        index = (c // step) % p ** (self.shift + self.level)
        return np.where(inside[:, None], self.values[index], 0)

    def __add__(self, other: StepFunction) -> StepFunction:
        shift = max(self.shift, other.shift)
        level = max(self.level, other.level)
        return StepFunction(self.field, shift, level, self.grid(shift, level) + other.grid(shift, level))

    def scale(self, c: FieldElement | int) -> StepFunction:
        row = self.field.to_row(c)
        return StepFunction(self.field, self.shift, self.level, self.field.mul_arrays(self.values, row[None, :]))

    def agrees_with(self, other: StepFunction) -> bool:
        shift = max(self.shift, other.shift)
        level = max(self.level, other.level)
        return np.array_equal(self.grid(shift, level), other.grid(shift, level))

    def compose_affine(self, u: Fraction | int, c: Fraction | int) -> StepFunction:
        """z -> f(u z + c), u in Q_p^x."""
        u, c = Fraction(u), Fraction(c)
        if u == 0:
            raise ValueError("compose_affine needs u != 0")
        p = self.p
        val_u = vp(u, p)
        candidates = [self.shift + val_u, 0]
        if c != 0:
            candidates.append(val_u - vp(c, p))
        shift = max(candidates)
        level = max(self.level - val_u, -shift)
        return StepFunction.from_function(self.field, shift, level, lambda z: self.evaluate(u * z + c))


def step_action(g: BorelElement, f: StepFunction, chars: BCharacter) -> StepFunction:
    """(g * f)(x) = chi_1(d) chi_2(a) f((d x - b) / a) for g = [[a, b], [0, d]]."""
    A, B, D = (entry.a for entry in g.matrix())
    scale = chars.left.eval_at(PadicScalar.from_rational(g.p, D)) * chars.right.eval_at(
        PadicScalar.from_rational(g.p, A)
    )
    return f.compose_affine(D / A, -B / A).scale(scale)


def pair(f: StepFunction, nu: MeasureQp) -> FieldElement:
    """int_{Q_p} f dnu."""
    if f.shift > nu.shift or f.level > nu.resolution:
        raise LevelMismatch(
            f"A step function with support p^-{f.shift} and level {f.level} does not pair with "
            f"a measure on p^-{nu.shift} Z_p known to level {nu.resolution}"
        )
    values = f.grid(nu.shift, nu.resolution)
    field = nu.field
    return field.from_row(field.mul_arrays(values, nu.base.values).sum(axis=0))


def generator_integral(
    g: BorelElement,
    f: StepFunction,
    nu: MeasureQp,
    model: CharModel,
    central: MulCharacter,
) -> FieldElement:
    """int f dnu_(g*y) from nu_y, for g a single generator of B(Q_p)."""
    p = g.p
    kinds = [g.x != 1, g.j != 0, g.a != 1, g.z != 0]
    if sum(kinds) > 1:
        raise ValueError(f"{g} is not a single generator")
    if g.x != 1:
        return central.eval_at(PadicScalar.from_rational(p, g.x)).inverse() * pair(f, nu)
    if g.j != 0:
        moved = f.compose_affine(Fraction(p) ** (-g.j), 0)
        return model.y ** (-g.j) * pair(moved, nu)
    if g.a != 1:
        twist = Field(p, 2).embed(PadicScalar.from_rational(p, g.a).residue()) ** (-model.r)
        return twist * pair(f.compose_affine(1 / g.a, 0), nu)
    return pair(f.compose_affine(1, g.z), nu)
