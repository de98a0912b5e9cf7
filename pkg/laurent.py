#!/usr/bin/env python3
"""
Truncated Laurent series over k_L = F_{p^m}.

A series is stored densely on its window [ord, prec): every coefficient of
exponent below `ord` is zero and every coefficient of exponent >= `prec` is
unknown. Coefficients live in an int64 array of shape (prec - ord, m) holding
coordinates with respect to {1, t}.

Everything here is in characteristic p, where phi(f)(X) = f(X^p) and
(1+X)^(p^n) - 1 = X^(p^n).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Literal, Mapping

import numpy as np

from algebra import Field, FieldElement, PadicUnitDigits, _pascal_mod_p
from errors import EmptyWindow, FieldMismatch, InsufficientDigits, NotAUnit, WindowMiss

logger = logging.getLogger("modp.laurent")

SeriesOp = Literal["add", "sub", "mul", "scalar_mul"]


def digit_count(n: int, p: int) -> int:
    """Number of base-p digits of n (0 for n = 0)."""
    count = 0
    while n:
        n //= p
        count += 1
    return count


def binomial_table(tops: np.ndarray, count: int, p: int) -> np.ndarray:
    """Matrix [n, j] = C(tops[j], n) mod p for 0 <= n < count, by Lucas.

    `tops` must already be reduced modulo p^digit_count(count - 1).
    """
    pascal = np.array(_pascal_mod_p(p), dtype=np.int64)
    tops = np.asarray(tops, dtype=np.int64)
    bottoms = np.arange(count, dtype=np.int64)
    table = np.ones((count, len(tops)), dtype=np.int64)
    for _ in range(digit_count(count - 1, p) if count > 1 else 0):
        table = table * pascal[tops[None, :] % p, bottoms[:, None] % p] % p
        tops = tops // p
        bottoms = bottoms // p
    return table


@lru_cache(maxsize=None)
def _binomial_inverse(p: int) -> np.ndarray:
    """[i, r] = (-1)^(r-i) C(r, i) mod p, inverse of the block matrix C(i, r)."""
    matrix = np.zeros((p, p), dtype=np.int64)
    for i in range(p):
        for r in range(i, p):
            matrix[i, r] = (-1) ** (r - i) * comb(r, i) % p
    return matrix


@lru_cache(maxsize=32)
def _to_binomial_basis(p: int, count: int) -> np.ndarray:
    """[k, n] = (-1)^(n-k) C(n, k) mod p: coordinates of X^n in the basis (1+X)^k."""
    table = binomial_table(np.arange(count), count, p)  # [k, n] = C(n, k)
    signs = np.fromfunction(lambda k, n: 1 - 2 * ((n - k) % 2), (count, count), dtype=np.int64)
    return table * signs % p


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    field: Field
    ord: int
    prec: int
    data: np.ndarray

    def __post_init__(self):
        if self.prec <= self.ord:
            raise EmptyWindow(f"Empty window [{self.ord}, {self.prec})")
        data = np.asarray(self.data, dtype=np.int64).reshape(self.prec - self.ord, self.field.m) % self.field.p
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, field: Field, prec: int, ord: int = 0) -> LaurentSeries:
        return cls(field, ord, prec, np.zeros((prec - ord, field.m), dtype=np.int64))

    @classmethod
    def from_coeffs(
        cls,
        field: Field,
        coeffs: Mapping[int, FieldElement | int],
        prec: int,
        ord: int | None = None,
    ) -> LaurentSeries:
        if ord is None:
            ord = min([0, *coeffs.keys()])
        data = np.zeros((prec - ord, field.m), dtype=np.int64)
        for exponent, value in coeffs.items():
            if exponent >= prec:
                continue
            if exponent < ord:
                raise ValueError(f"Exponent {exponent} lies below the window start {ord}")
            data[exponent - ord] = field.to_row(value)
        return cls(field, ord, prec, data)

    @classmethod
    def monomial(cls, field: Field, exponent: int, prec: int, coeff: FieldElement | int = 1) -> LaurentSeries:
        return cls.from_coeffs(field, {exponent: coeff}, prec)

    @classmethod
    def random(cls, field: Field, ord: int, prec: int, rng: np.random.Generator) -> LaurentSeries:
        return cls(field, ord, prec, rng.integers(0, field.p, size=(prec - ord, field.m)))

    # -- inspection -------------------------------------------------------

    @property
    def p(self) -> int:
        return self.field.p

    def coefficient(self, exponent: int) -> FieldElement:
        if exponent >= self.prec:
            raise WindowMiss(f"Coefficient of X^{exponent} lies beyond precision {self.prec}")
        if exponent < self.ord:
            return self.field.zero
        return self.field.from_row(self.data[exponent - self.ord])

    def coefficients(self) -> dict[int, FieldElement]:
        """Nonzero coefficients inside the window."""
        rows = np.nonzero(self.data.any(axis=1))[0]
        return {self.ord + int(k): self.field.from_row(self.data[k]) for k in rows}

    def is_zero(self) -> bool:
        return not self.data.any()

    def valuation(self) -> int | None:
        rows = np.nonzero(self.data.any(axis=1))[0]
        return self.ord + int(rows[0]) if len(rows) else None

    def pole_order(self) -> int:
        valuation = self.valuation()
        return max(0, -valuation) if valuation is not None else 0

    def reframe(self, ord: int, prec: int) -> LaurentSeries:
        """The same series on the window [ord, prec); may only drop zero low terms."""
        if prec > self.prec:
            raise WindowMiss(f"Cannot extend precision from {self.prec} to {prec}")
        valuation = self.valuation()
        if ord > self.ord and valuation is not None and valuation < min(ord, prec):
            raise ValueError(f"Reframing to start {ord} would drop the term X^{valuation}")
        data = np.zeros((prec - ord, self.field.m), dtype=np.int64)
        lo = max(ord, self.ord)
        if lo < prec:
            data[lo - ord:] = self.data[lo - self.ord:prec - self.ord]
        return LaurentSeries(self.field, ord, prec, data)

    def power_part(self) -> LaurentSeries:
        """The terms of nonnegative exponent."""
        if self.ord >= 0:
            return self
        if self.prec <= 0:
            raise EmptyWindow(f"No nonnegative exponent is known below X^{self.prec}")
        return LaurentSeries(self.field, 0, self.prec, self.data[-self.ord:])

    def truncate(self, prec: int) -> LaurentSeries:
        return self.reframe(self.ord, min(prec, self.prec))

    def shift(self, k: int) -> LaurentSeries:
        """Multiply by X^k."""
        return LaurentSeries(self.field, self.ord + k, self.prec + k, self.data)

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equality on the common window of known coefficients."""
        lo = min(self.ord, other.ord)
        hi = min(self.prec, other.prec)
        if hi <= lo:
            raise EmptyWindow(f"No common window between [{self.ord}, {self.prec}) and [{other.ord}, {other.prec})")
        return np.array_equal(self.reframe(lo, hi).data, other.reframe(lo, hi).data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field == other.field
            and self.ord == other.ord
            and self.prec == other.prec
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})*X^{n}" for n, c in self.coefficients().items()) or "0"
        return f"LaurentSeries({terms} + O(X^{self.prec}))"

    # -- ring operations --------------------------------------------------

    def _check_field(self, other: LaurentSeries):
        if other.field != self.field:
            raise FieldMismatch(f"Series over {self.field} and {other.field} do not mix")

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        self._check_field(other)
        lo = min(self.ord, other.ord)
        hi = min(self.prec, other.prec)
        return LaurentSeries(self.field, lo, hi, self.reframe(lo, hi).data + other.reframe(lo, hi).data)

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.field, self.ord, self.prec, -self.data)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def scale(self, c: FieldElement | int) -> LaurentSeries:
        row = self.field.to_row(c)
        return LaurentSeries(self.field, self.ord, self.prec, self.field.mul_arrays(self.data, row[None, :]))

    def __mul__(self, other) -> LaurentSeries:
        if isinstance(other, (FieldElement, int)):
            return self.scale(other)
        self._check_field(other)
        ord = self.ord + other.ord
        prec = min(self.ord + other.prec, other.ord + self.prec)
        product = self.field.convolve(self.data, other.data)[: prec - ord]
        return LaurentSeries(self.field, ord, prec, product)

    __rmul__ = __mul__


def series_arith(f: LaurentSeries, g: LaurentSeries | FieldElement | int, op: SeriesOp) -> LaurentSeries:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "scalar_mul":
        return f.scale(g)
    raise ValueError(f"Unknown series operation: {op}")


# ---------------------------------------------------------------------------
# phi, psi and the decomposition f = sum (1+X)^i phi(y_i)
# ---------------------------------------------------------------------------


def frobenius_phi(f: LaurentSeries) -> LaurentSeries:
    p = f.p
    ord = p * f.ord
    prec = p * (f.prec - 1) + 1
    data = np.zeros((prec - ord, f.field.m), dtype=np.int64)
    data[::p] = f.data
    return LaurentSeries(f.field, ord, prec, data)


def _block_solve(f: LaurentSeries, rows: np.ndarray) -> list[LaurentSeries]:
    """Selected components y_i of f = sum (1+X)^i phi(y_i), one block of p exponents at a time."""
    p = f.p
    s = max(0, -f.ord)
    g = f.shift(p * s)
    out_ord = g.ord // p
    out_prec = (g.prec - (p - 1)) // p
    if out_prec <= out_ord:
        raise EmptyWindow(f"psi of a series known below X^{f.prec} has no known coefficients")
    blocks = g.reframe(out_ord * p, out_prec * p).data.reshape(-1, p, f.field.m)
    components = np.einsum("ir,brm->ibm", rows, blocks) % p
    return [LaurentSeries(f.field, out_ord, out_prec, component).shift(-s) for component in components]


def decompose(f: LaurentSeries) -> list[LaurentSeries]:
    """All p components y_0..y_{p-1}; psi(f) is y_0."""
    return _block_solve(f, _binomial_inverse(f.p))


def psi(f: LaurentSeries) -> LaurentSeries:
    """psi(f) with output precision floor((prec - (p-1)) / p)."""
    return _block_solve(f, _binomial_inverse(f.p)[:1])[0]


def recompose(components: list[LaurentSeries]) -> LaurentSeries:
    """sum (1+X)^i phi(y_i), the inverse of decompose."""
    field = components[0].field
    total = None
    for i, component in enumerate(components):
        lifted = frobenius_phi(component)
        twist = LaurentSeries.from_coeffs(field, {n: comb(i, n) for n in range(i + 1)}, lifted.prec - lifted.ord)
        term = lifted * twist
        total = term if total is None else total + term
    return total


def psi_preimage(f: LaurentSeries, min_order: int) -> LaurentSeries | None:
    """A preimage of f under psi inside X^min_order k_L[[X]] (poles down to X^-1), or None.

    Each block equation sum_r (-1)^r g_{pm+r} = f_m is solved on the highest
    exponent pm + p - 1 of the block.
    """
    p = f.p
    field = f.field
    if f.pole_order() > 1:
        raise ValueError("psi_preimage handles pole order at most 1")
    if f.prec < 1:
        raise EmptyWindow(f"No block of psi is known below X^{f.prec}")
    pole = f.coefficient(-1)
    if not pole.is_zero() and min_order > -1:
        return None
    ord = -1 if not pole.is_zero() else 0
    prec = p * f.prec
    data = np.zeros((prec - ord, field.m), dtype=np.int64)
    sign = (-1) ** (p - 1)
    for exponent, value in f.power_part().coefficients().items():
        target = p * exponent + p - 1
        if target < min_order:
            return None
        data[target - ord] = field.to_row(value * sign)
    if not pole.is_zero():
        data[0] = field.to_row(pole)
    return LaurentSeries(field, ord, prec, data)


def random_psi_preimage(f: LaurentSeries, rng: np.random.Generator, prec: int | None = None) -> LaurentSeries:
    """A random element g with psi(g) = f; the kernel part is drawn uniformly blockwise."""
    p = f.p
    field = f.field
    if f.pole_order() > 1:
        raise ValueError("random_psi_preimage handles pole order at most 1")
    count = max(f.prec, 1)
    targets = np.zeros((count, field.m), dtype=np.int64)
    for exponent, value in f.coefficients().items():
        if exponent >= 0:
            targets[exponent] = field.to_row(value)
    blocks = rng.integers(0, p, size=(count, p, field.m))
    signs = np.array([(-1) ** r for r in range(p)], dtype=np.int64)
    blocks[:, 0] = (targets - np.einsum("r,brm->bm", signs[1:], blocks[:, 1:])) % p
    body = LaurentSeries(field, 0, p * count, blocks.reshape(-1, field.m))
    pole = f.coefficient(-1) if f.ord <= -1 else field.zero
    if not pole.is_zero():
        body = body + LaurentSeries.monomial(field, -1, body.prec, pole)
    if prec is not None:
        body = body.truncate(prec)
    return body


# ---------------------------------------------------------------------------
# (1+X)^z, gamma_a and residues
# ---------------------------------------------------------------------------


def one_plus_x_pow(z: PadicUnitDigits, prec: int, field: Field | None = None) -> LaurentSeries:
    """(1+X)^z modulo X^prec for z in Z_p, coefficient by coefficient via Lucas."""
    field = field or Field(z.p, 2)
    needed = digit_count(prec - 1, z.p) if prec > 1 else 0
    if z.length < needed:
        raise InsufficientDigits(f"(1+X)^z mod X^{prec} needs {needed} digits of z, got {z.length}")
    top = z.truncate(needed).value if needed else 0
    column = binomial_table(np.array([top]), prec, z.p)[:, 0]
    data = np.zeros((prec, field.m), dtype=np.int64)
    data[:, 0] = column
    return LaurentSeries(field, 0, prec, data)


def unit_inverse(u: LaurentSeries) -> LaurentSeries:
    """Inverse of a power series with nonzero constant term, by Newton iteration."""
    field = u.field
    if u.ord > 0 or u.coefficient(0).is_zero():
        raise NotAUnit("Only power series with nonzero constant term are invertible")
    series = u.reframe(0, u.prec)
    target = series.prec
    inverse = field.to_row(series.coefficient(0).inverse())[None, :]
    two = field.to_row(2)
    known = 1
    while known < target:
        known = min(2 * known, target)
        correction = -field.convolve(series.data[:known], inverse)[:known]
        correction[0] = correction[0] + two
        inverse = field.convolve(inverse, correction % field.p)[:known]
    return LaurentSeries(field, 0, target, inverse)


def gamma_act(a: PadicUnitDigits, f: LaurentSeries) -> LaurentSeries:
    """Substitute X -> (1+X)^a - 1; the pole X^-1 goes through the inverse of ((1+X)^a - 1)/X."""
    if not a.is_unit:
        raise NotAUnit(f"gamma_a needs a unit, got digits {a.digits}")
    if f.pole_order() > 1:
        raise ValueError("gamma_act handles pole order at most 1")
    p = f.p
    field = f.field
    prec = f.prec
    result = LaurentSeries.zero(field, prec, min(f.ord, 0))
    if prec > 0:
        needed = digit_count(prec - 1, p) if prec > 1 else 0
        if a.length < needed:
            raise InsufficientDigits(f"gamma_a mod X^{prec} needs {needed} digits of a, got {a.length}")
        modulus = p**needed
        tops = (a.value % modulus) * np.arange(prec, dtype=np.int64) % modulus
        substitute = binomial_table(tops, prec, p)  # [n, k] = C(a*k, n)
        power = f.power_part().reframe(0, prec).data
        in_basis = _to_binomial_basis(p, prec) @ power % p
        image = substitute @ in_basis % p
        result = result + LaurentSeries(field, 0, prec, image)
    pole = f.coefficient(-1) if f.ord <= -1 else field.zero
    if not pole.is_zero():
        h = one_plus_x_pow(a, prec + 2, field)
        u = LaurentSeries(field, 0, prec + 1, h.data[1:])
        result = result + unit_inverse(u).shift(-1).scale(pole)
    return result


def residue(f: LaurentSeries) -> FieldElement:
    """Coefficient of X^-1."""
    if f.prec <= -1:
        raise WindowMiss(f"Coefficient of X^-1 lies beyond precision {f.prec}")
    return f.coefficient(-1)
