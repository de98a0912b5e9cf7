#!/usr/bin/env python3
"""
Exact arithmetic foundations.

Finite fields F_p and F_{p^2} with a fixed defining polynomial, base-p digit
strings of p-adic integers, and finite-precision elements of Q_p(pi) with
pi^e = p (e in {1, 2}).

F_{p^2} = F_p[t]/(f(t)) where f(t) = t^2 - n for odd p (n the least quadratic
non-residue) and f(t) = t^2 + t + 1 for p = 2. Serialized elements are
therefore reproducible across runs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Literal, Mapping

import numpy as np
from sympy import isprime
from sympy.ntheory import legendre_symbol, multiplicity, sqrt_mod

from errors import FieldMismatch, InsufficientDigits, InsufficientPrecision, NotAUnit

logger = logging.getLogger("modp.algebra")

FieldOp = Literal["add", "sub", "mul", "div", "inv", "pow", "frobenius"]
PadicOp = Literal["add", "sub", "mul", "div"]


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    """Least quadratic non-residue mod an odd prime p."""
    return next(n for n in range(2, p) if legendre_symbol(n, p) == -1)


@lru_cache(maxsize=None)
def field_relation(p: int) -> tuple[int, int]:
    """Coefficients (c0, c1) with t^2 = c0 + c1*t in F_{p^2}."""
    if p == 2:
        return (1, 1)
    return (least_nonresidue(p), 0)


# ---------------------------------------------------------------------------
# Finite fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """The coefficient field F_{p^m}, m in {1, 2}."""

    p: int
    m: int = 2

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.m not in (1, 2):
            raise ValueError(f"Extension degree must be 1 or 2, got {self.m}")

    @property
    def order(self) -> int:
        return self.p**self.m

    def __call__(self, *coords: int) -> FieldElement:
        return self.elem(*coords)

    def elem(self, *coords: int) -> FieldElement:
        padded = tuple(coords) + (0,) * (self.m - len(coords))
        if len(padded) != self.m:
            raise ValueError(f"Expected at most {self.m} coordinates, got {coords}")
        return FieldElement(self.p, self.m, padded)

    @property
    def zero(self) -> FieldElement:
        return self.elem(0)

    @property
    def one(self) -> FieldElement:
        return self.elem(1)

    @property
    def t(self) -> FieldElement:
        if self.m != 2:
            raise ValueError("F_p has no generator t")
        return self.elem(0, 1)

    def embed(self, x: FieldElement | int) -> FieldElement:
        """Bring an integer or an element of a subfield into this field."""
        if isinstance(x, int):
            return self.elem(x)
        if x.p != self.p:
            raise FieldMismatch(f"Cannot embed an element of characteristic {x.p} into F_{self.p}^{self.m}")
        if x.m == self.m:
            return x
        if x.m > self.m:
            if x.coords[1] != 0:
                raise FieldMismatch(f"{x} does not lie in F_{self.p}")
            return self.elem(x.coords[0])
        return self.elem(x.coords[0], 0)

    def elements(self) -> Iterator[FieldElement]:
        if self.m == 1:
            for c0 in range(self.p):
                yield self.elem(c0)
            return
        for c1 in range(self.p):
            for c0 in range(self.p):
                yield self.elem(c0, c1)

    def units(self) -> Iterator[FieldElement]:
        return (x for x in self.elements() if not x.is_zero())

    def prime_units(self) -> Iterator[FieldElement]:
        """The units of the prime field F_p, embedded."""
        return (self.elem(c) for c in range(1, self.p))

    def random(self, rng: np.random.Generator, nonzero: bool = False) -> FieldElement:
        while True:
            coords = tuple(int(c) for c in rng.integers(0, self.p, size=self.m))
            x = FieldElement(self.p, self.m, coords)
            if not nonzero or not x.is_zero():
                return x

    # Vectorised coordinate arithmetic, arrays have shape (..., m).

    def to_row(self, x: FieldElement | int) -> np.ndarray:
        return np.array(self.embed(x).coords, dtype=np.int64)

    def from_row(self, row: np.ndarray) -> FieldElement:
        return FieldElement(self.p, self.m, tuple(int(c) for c in row))

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.p
        if self.m == 1:
            return (a * b) % p
        c0, c1 = field_relation(p)
        a0, a1 = a[..., 0], a[..., 1]
        b0, b1 = b[..., 0], b[..., 1]
        high = a1 * b1
        out = np.stack([a0 * b0 + c0 * high, a0 * b1 + a1 * b0 + c1 * high], axis=-1)
        return out % p

    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Polynomial product of two coefficient arrays of shape (n, m)."""
        p = self.p
        if len(a) == 0 or len(b) == 0:
            return np.zeros((0, self.m), dtype=np.int64)
        if self.m == 1:
            return (np.convolve(a[:, 0], b[:, 0]) % p).reshape(-1, 1)
        c0, c1 = field_relation(p)
        low = np.convolve(a[:, 0], b[:, 0])
        high = np.convolve(a[:, 1], b[:, 1]) % p
        cross = np.convolve(a[:, 0], b[:, 1]) + np.convolve(a[:, 1], b[:, 0])
        return np.stack([low + c0 * high, cross + c1 * high], axis=-1) % p


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Element of F_{p^m} in coordinates with respect to {1, t}."""

    p: int
    m: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != self.m:
            raise ValueError(f"Expected {self.m} coordinates, got {self.coords}")
        object.__setattr__(self, "coords", tuple(int(c) % self.p for c in self.coords))

    @property
    def field(self) -> Field:
        return Field(self.p, self.m)

    def _lift(self, m: int) -> FieldElement:
        if self.m == m:
            return self
        return FieldElement(self.p, 2, (self.coords[0], 0))

    def _pair(self, other: FieldElement | int) -> tuple[FieldElement, FieldElement]:
        if isinstance(other, int):
            other = FieldElement(self.p, self.m, (other,) + (0,) * (self.m - 1))
        if not isinstance(other, FieldElement):
            raise TypeError(f"Cannot combine a field element with {type(other).__name__}")
        if other.p != self.p:
            raise FieldMismatch(f"Characteristics differ: {self.p} and {other.p}")
        m = max(self.m, other.m)
        return self._lift(m), other._lift(m)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def in_prime_field(self) -> bool:
        return self.m == 1 or self.coords[1] == 0

    def to_int(self) -> int:
        """The representative in {0..p-1} of an element of F_p."""
        if not self.in_prime_field():
            raise NotAUnit(f"{self} does not lie in F_{self.p}")
        return self.coords[0]

    def __add__(self, other):
        x, y = self._pair(other)
        return FieldElement(x.p, x.m, tuple(a + b for a, b in zip(x.coords, y.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.p, self.m, tuple(-c for c in self.coords))

    def __sub__(self, other):
        x, y = self._pair(other)
        return x + (-y)

    def __rsub__(self, other):
        x, y = self._pair(other)
        return y + (-x)

    def __mul__(self, other):
        if not isinstance(other, (FieldElement, int)):
            return NotImplemented
        x, y = self._pair(other)
        if x.m == 1:
            return FieldElement(x.p, 1, (x.coords[0] * y.coords[0],))
        c0, c1 = field_relation(x.p)
        a0, a1 = x.coords
        b0, b1 = y.coords
        high = a1 * b1
        return FieldElement(x.p, 2, (a0 * b0 + c0 * high, a0 * b1 + a1 * b0 + c1 * high))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError(f"Inverse of zero in F_{self.p}^{self.m}")
        return self ** (self.p**self.m - 2)

    def __truediv__(self, other):
        x, y = self._pair(other)
        return x * y.inverse()

    def __rtruediv__(self, other):
        x, y = self._pair(other)
        return y * x.inverse()

    def __pow__(self, n: int) -> FieldElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldElement(self.p, self.m, (1,) + (0,) * (self.m - 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self) -> FieldElement:
        return self**self.p

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldElement) or other.p != self.p:
            return NotImplemented
        x, y = self._pair(other)
        return x.coords == y.coords

    def __hash__(self) -> int:
        padded = self.coords + (0,) * (2 - self.m)
        return hash((self.p, padded))

    def sort_key(self) -> tuple[int, ...]:
        return tuple(reversed(self.coords + (0,) * (2 - self.m)))

    def __str__(self) -> str:
        if self.m == 1:
            return str(self.coords[0])
        return f"{self.coords[0]}+{self.coords[1]}*t"

    def __repr__(self) -> str:
        return f"FieldElement(p={self.p}, {self})"


def field_arith(x: FieldElement, y: FieldElement | int | None, op: FieldOp) -> FieldElement:
    """Dispatch a named field operation; `pow` takes an integer exponent as y."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "inv":
        return x.inverse()
    if op == "pow":
        if not isinstance(y, int):
            raise TypeError("pow takes an integer exponent")
        return x**y
    if op == "frobenius":
        return x.frobenius()
    raise ValueError(f"Unknown field operation: {op}")


def sqrt_fp2(d: FieldElement) -> FieldElement:
    """A square root in F_{p^2} of an element of F_{p^2}."""
    field = Field(d.p, 2)
    d = field.embed(d)
    if d.in_prime_field() and d.p != 2:
        value = int(d.coords[0])
        root = sqrt_mod(value, d.p)
        if root is not None:
            return field.elem(int(root))
        # value/n is a square in F_p, and t^2 = n
        n = least_nonresidue(d.p)
        root = sqrt_mod(value * pow(n, -1, d.p), d.p)
        return field.elem(0, int(root))
    for candidate in field.elements():
        if candidate * candidate == d:
            return candidate
    raise ValueError(f"{d} has no square root in F_{d.p}^2")


def solve_unit_quadratic(c: FieldElement) -> tuple[FieldElement, FieldElement]:
    """Roots of L^2 - c*L + 1 over F_{p^2}, as a sorted pair (with multiplicity)."""
    field = Field(c.p, 2)
    c = field.embed(c)
    if c.p == 2:
        root = next(x for x in field.units() if x * x - c * x + 1 == field.zero)
        roots = (root, root.inverse())
    else:
        s = sqrt_fp2(c * c - 4)
        half = field.elem(2).inverse()
        roots = ((c + s) * half, (c - s) * half)
    return tuple(sorted(roots, key=FieldElement.sort_key))


# ---------------------------------------------------------------------------
# p-adic digit strings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PadicUnitDigits:
    """An element of Z_p known modulo p^M, as base-p digits (least significant first).

    A leading zero digit is allowed; such an element is not a unit.
    """

    p: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= d < self.p for d in self.digits):
            raise ValueError(f"Digits must lie in 0..{self.p - 1}: {self.digits}")

    @classmethod
    def from_int(cls, p: int, n: int, length: int) -> PadicUnitDigits:
        value = n % p**length
        digits = []
        for _ in range(length):
            value, digit = divmod(value, p)
            digits.append(digit)
        return cls(p, tuple(digits))

    @property
    def length(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        """Representative in [0, p^M)."""
        return sum(d * self.p**i for i, d in enumerate(self.digits))

    @property
    def is_unit(self) -> bool:
        return bool(self.digits) and self.digits[0] != 0

    def residue(self) -> FieldElement:
        if not self.digits:
            raise InsufficientDigits("No digits to reduce")
        return FieldElement(self.p, 1, (self.digits[0],))

    def truncate(self, length: int) -> PadicUnitDigits:
        if length > self.length:
            raise InsufficientDigits(f"Need {length} digits, have {self.length}")
        return PadicUnitDigits(self.p, self.digits[:length])

    def shift(self, k: int) -> PadicUnitDigits:
        """Multiply by p^k (k >= 0); the known length grows by k."""
        return PadicUnitDigits(self.p, (0,) * k + self.digits)

    def __mul__(self, other: PadicUnitDigits) -> PadicUnitDigits:
        length = min(self.length, other.length)
        return PadicUnitDigits.from_int(self.p, self.value * other.value, length)

    def __add__(self, other: PadicUnitDigits) -> PadicUnitDigits:
        length = min(self.length, other.length)
        return PadicUnitDigits.from_int(self.p, self.value + other.value, length)

    def __neg__(self) -> PadicUnitDigits:
        return PadicUnitDigits.from_int(self.p, -self.value, self.length)

    def inverse(self) -> PadicUnitDigits:
        if not self.is_unit:
            raise NotAUnit(f"{self.digits} is not a unit of Z_{self.p}")
        modulus = self.p**self.length
        return PadicUnitDigits.from_int(self.p, pow(self.value, -1, modulus), self.length)


def _digit_list(a: PadicUnitDigits | Iterable[int]) -> tuple[int, ...]:
    if isinstance(a, PadicUnitDigits):
        return a.digits
    return tuple(a)


@lru_cache(maxsize=None)
def _pascal_mod_p(p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(comb(i, j) % p for j in range(p)) for i in range(p))


def lucas_binomial(a: PadicUnitDigits | Iterable[int], n: int, p: int | None = None) -> FieldElement:
    """C(a, n) mod p from the base-p digits of a (Lucas, extended p-adically)."""
    digits = _digit_list(a)
    if p is None:
        if not isinstance(a, PadicUnitDigits):
            raise ValueError("p is required when a is a plain digit list")
        p = a.p
    if n < 0:
        return FieldElement(p, 1, (0,))
    table = _pascal_mod_p(p)
    result = 1
    position = 0
    while n:
        n, n_digit = divmod(n, p)
        if position >= len(digits):
            raise InsufficientDigits(f"C(a, n) needs more than {len(digits)} digits of a")
        result = result * table[digits[position]][n_digit] % p
        if result == 0:
            break
        position += 1
    return FieldElement(p, 1, (result,))


# ---------------------------------------------------------------------------
# Finite-precision elements of Q_p(pi)
# ---------------------------------------------------------------------------


def vp(q: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("Valuation of zero is infinite")
    return multiplicity(p, abs(q.numerator)) - multiplicity(p, q.denominator)


def _ceil_half(n: int) -> int:
    return -((-n) // 2)


def _fraction_digits(q: Fraction, p: int, upper: int) -> dict[int, int]:
    """Base-p digits of q at exponents in [vp(q), upper)."""
    if q == 0:
        return {}
    low = vp(q, p)
    if upper <= low:
        return {}
    scaled = q / Fraction(p) ** low
    modulus = p ** (upper - low)
    value = scaled.numerator * pow(scaled.denominator, -1, modulus) % modulus
    digits = {}
    exponent = low
    while value:
        value, digit = divmod(value, p)
        if digit:
            digits[exponent] = digit
        exponent += 1
    return digits


def _min_prec(*precs: int | None) -> int | None:
    known = [prec for prec in precs if prec is not None]
    return min(known) if known else None


@dataclass(frozen=True)
class PadicScalar:
    """The element a + b*pi of Q_p(pi), pi^e = p, known modulo pi^prec.

    `prec` is None for certified-exact values (inputs given as rationals).
    For e = 1, pi = p and b is always zero.
    """

    p: int
    e: int
    a: Fraction
    b: Fraction = Fraction(0)
    prec: int | None = None

    def __post_init__(self):
        if self.e not in (1, 2):
            raise ValueError(f"Ramification index must be 1 or 2, got {self.e}")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.e == 1 and self.b != 0:
            raise ValueError("An unramified scalar has no pi component")

    @classmethod
    def from_rational(cls, p: int, q: Fraction | int | str, e: int = 1) -> PadicScalar:
        return cls(p, e, Fraction(q))

    @classmethod
    def pi(cls, p: int) -> PadicScalar:
        return cls(p, 2, Fraction(0), Fraction(1))

    @classmethod
    def from_digits(
        cls,
        p: int,
        e: int,
        digits: Mapping[int, int] | Iterable[tuple[int, int]],
        prec: int,
    ) -> PadicScalar:
        """Build sum d_j pi^j from (exponent, digit) pairs, known modulo pi^prec."""
        pairs = digits.items() if isinstance(digits, Mapping) else digits
        a = Fraction(0)
        b = Fraction(0)
        for exponent, digit in pairs:
            exponent, digit = int(exponent), int(digit)
            if not 0 <= digit < p:
                raise ValueError(f"Digit {digit} outside 0..{p - 1}")
            if exponent >= prec:
                raise InsufficientPrecision(f"Digit at pi^{exponent} lies beyond precision {prec}")
            if e == 1:
                a += digit * Fraction(p) ** exponent
            elif exponent % 2 == 0:
                a += digit * Fraction(p) ** (exponent // 2)
            else:
                b += digit * Fraction(p) ** ((exponent - 1) // 2)
        return cls(p, e, a, b, prec)

    @property
    def exact(self) -> bool:
        return self.prec is None

    def is_exact_zero(self) -> bool:
        return self.exact and self.a == 0 and self.b == 0

    def _raw_ord(self) -> int | None:
        candidates = []
        if self.a != 0:
            candidates.append(self.e * vp(self.a, self.p))
        if self.b != 0:
            candidates.append(2 * vp(self.b, self.p) + 1)
        return min(candidates) if candidates else None

    def ord_pi(self) -> int:
        """Valuation in units of val(pi); raises if it cannot be certified."""
        order = self._raw_ord()
        if order is None:
            if self.exact:
                raise ValueError("Exact zero has infinite valuation")
            raise InsufficientPrecision(f"Zero modulo pi^{self.prec}: valuation undetermined")
        if self.prec is not None and order >= self.prec:
            raise InsufficientPrecision(f"Zero modulo pi^{self.prec}: valuation undetermined")
        return order

    def _ord_lower(self) -> int | None:
        """Certified lower bound for the valuation in pi units (None for exact zero)."""
        order = self._raw_ord()
        if self.prec is None:
            return order
        if order is None or order >= self.prec:
            return self.prec
        return order

    def valuation(self) -> Fraction:
        """Valuation normalised by val(p) = 1."""
        return Fraction(self.ord_pi(), self.e)

    def is_zero(self) -> bool:
        """True when the value is zero modulo its precision."""
        order = self._raw_ord()
        return order is None or (self.prec is not None and order >= self.prec)

    def digits(self, limit: int | None = None) -> dict[int, int]:
        """Nonzero pi-adic digits at exponents below `limit` (defaults to prec)."""
        upper = self.prec if limit is None else limit
        if self.prec is not None:
            upper = min(upper, self.prec)
        if upper is None:
            raise ValueError("An exact scalar needs an explicit digit limit")
        if self.e == 1:
            return _fraction_digits(self.a, self.p, upper)
        digits = {2 * k: d for k, d in _fraction_digits(self.a, self.p, _ceil_half(upper)).items()}
        digits.update({2 * k + 1: d for k, d in _fraction_digits(self.b, self.p, upper // 2).items()})
        return dict(sorted(digits.items()))

    def _coerce(self, other) -> PadicScalar:
        if isinstance(other, (int, Fraction)):
            return PadicScalar(self.p, self.e, Fraction(other))
        if not isinstance(other, PadicScalar):
            raise TypeError(f"Cannot combine a p-adic scalar with {type(other).__name__}")
        if other.p != self.p or other.e != self.e:
            raise FieldMismatch(
                f"Q_{self.p}(pi^{self.e}) and Q_{other.p}(pi^{other.e}) do not mix"
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.p, self.e, self.a + other.a, self.b + other.b, _min_prec(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar(self.p, self.e, -self.a, -self.b, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        a = self.a * other.a + self.p * self.b * other.b
        b = self.a * other.b + self.b * other.a
        if self.is_exact_zero() or other.is_exact_zero():
            return PadicScalar(self.p, self.e, Fraction(0))
        candidates = []
        if self.prec is not None:
            candidates.append(self.prec + other._ord_lower())
        if other.prec is not None:
            candidates.append(other.prec + self._ord_lower())
        return PadicScalar(self.p, self.e, a, b, min(candidates) if candidates else None)

    __rmul__ = __mul__

    def inverse(self) -> PadicScalar:
        if self.is_exact_zero():
            raise ZeroDivisionError("Division by exact zero")
        try:
            order = self.ord_pi()
        except InsufficientPrecision as exc:
            raise ZeroDivisionError(f"Divisor is zero at current precision: {exc}") from exc
        norm = self.a * self.a - self.p * self.b * self.b
        prec = None if self.prec is None else self.prec - 2 * order
        return PadicScalar(self.p, self.e, self.a / norm, -self.b / norm, prec)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> PadicScalar:
        if n < 0:
            return self.inverse() ** (-n)
        result = PadicScalar(self.p, self.e, Fraction(1))
        for _ in range(n):
            result = result * self
        return result

    def residue(self) -> FieldElement:
        """Image in the residue field F_p of a unit."""
        try:
            order = self.ord_pi()
        except (InsufficientPrecision, ValueError) as exc:
            raise NotAUnit(f"{self} is not a unit: {exc}") from exc
        if order != 0:
            raise NotAUnit(f"{self} has valuation {Fraction(order, self.e)}, not 0")
        value = self.a.numerator * pow(self.a.denominator, -1, self.p) % self.p
        return FieldElement(self.p, 1, (value,))

    def split(self) -> tuple[int, Fraction]:
        """(v, u) with self = p^v * u and u a unit, for exact e = 1 scalars."""
        if self.e != 1:
            raise ValueError("split is defined for unramified scalars")
        v = self.ord_pi()
        return v, self.a / Fraction(self.p) ** v

    def zp_digits(self, length: int) -> PadicUnitDigits:
        """Residue modulo p^length of an element of Z_p (e = 1)."""
        if self.e != 1:
            raise ValueError("zp_digits is defined for unramified scalars")
        if self.prec is not None and length > self.prec:
            raise InsufficientDigits(f"Need {length} digits, known modulo p^{self.prec}")
        if self.a == 0:
            return PadicUnitDigits(self.p, (0,) * length)
        if vp(self.a, self.p) < 0:
            raise NotAUnit(f"{self.a} does not lie in Z_{self.p}")
        modulus = self.p**length
        value = self.a.numerator * pow(self.a.denominator, -1, modulus) % modulus
        return PadicUnitDigits.from_int(self.p, value, length)

    def __str__(self) -> str:
        body = str(self.a) if self.e == 1 else f"{self.a} + {self.b}*pi"
        suffix = "" if self.prec is None else f" + O(pi^{self.prec})"
        return f"{body}{suffix}"


def padic_arith(x: PadicScalar, y: PadicScalar, op: PadicOp) -> PadicScalar:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"Unknown p-adic operation: {op}")


def residue_reduce(x: PadicScalar) -> FieldElement:
    return x.residue()
