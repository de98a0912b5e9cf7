#!/usr/bin/env python3
"""Tests for finite fields, digit strings and p-adic scalars."""

import unittest
from fractions import Fraction

from algebra import (
    Field,
    PadicScalar,
    PadicUnitDigits,
    field_arith,
    field_relation,
    least_nonresidue,
    lucas_binomial,
    padic_arith,
    residue_reduce,
    solve_unit_quadratic,
    sqrt_fp2,
    vp,
)
from errors import FieldMismatch, InsufficientPrecision, NotAUnit


class FieldTests(unittest.TestCase):
    def setUp(self):
        self.f5 = Field(5, 1)
        self.f25 = Field(5, 2)

    def test_prime_field_multiplication(self):
        self.assertEqual(field_arith(self.f5.elem(2), self.f5.elem(3), "mul"), self.f5.one)

    def test_defining_relation(self):
        self.assertEqual(least_nonresidue(5), 2)
        self.assertEqual(field_relation(5), (2, 0))
        self.assertEqual(field_relation(2), (1, 1))
        t = self.f25.t
        self.assertEqual(t * t, self.f25.elem(2))

    def test_frobenius_of_generator(self):
        self.assertEqual(field_arith(self.f25.t, None, "frobenius"), self.f25.elem(0, 4))

    def test_f4_relation(self):
        f4 = Field(2, 2)
        t = f4.t
        self.assertEqual(t * t, t + 1)
        self.assertEqual(t**3, f4.one)

    def test_inverse_and_power(self):
        for x in self.f25.units():
            self.assertEqual(x * x.inverse(), self.f25.one)
            self.assertEqual(x**24, self.f25.one)
        self.assertEqual(field_arith(self.f25.elem(3), -1, "pow"), self.f25.elem(2))

    def test_inverse_of_zero(self):
        with self.assertRaises(ZeroDivisionError):
            self.f25.zero.inverse()

    def test_prime_field_embeds(self):
        self.assertEqual(self.f5.elem(3) + self.f25.t, self.f25.elem(3, 1))
        self.assertEqual(self.f25.embed(self.f5.elem(4)), self.f25.elem(4))

    def test_characteristics_do_not_mix(self):
        with self.assertRaises(FieldMismatch):
            self.f25.one + Field(7, 2).one

    def test_element_counts(self):
        self.assertEqual(len(list(self.f25.elements())), 25)
        self.assertEqual(len(list(self.f25.units())), 24)
        self.assertEqual(len(list(self.f25.prime_units())), 4)

    def test_string_form(self):
        self.assertEqual(str(self.f25.elem(3, 1)), "3+1*t")
        self.assertEqual(str(self.f5.elem(3)), "3")

    def test_sqrt(self):
        root = sqrt_fp2(self.f25.elem(2))
        self.assertEqual(root * root, self.f25.elem(2))
        root = sqrt_fp2(self.f25.elem(4))
        self.assertEqual(root * root, self.f25.elem(4))
        self.assertTrue(root.in_prime_field())

    def test_least_nonresidue(self):
        self.assertEqual([least_nonresidue(p) for p in (3, 7, 13, 23)], [2, 3, 2, 5])

    def test_composite_characteristic(self):
        for n in (1, 4, 9):
            with self.assertRaises(ValueError):
                Field(n, 1)


class UnitQuadraticTests(unittest.TestCase):
    def test_roots_of_x2_plus_1(self):
        f25 = Field(5, 2)
        self.assertEqual(solve_unit_quadratic(Field(5, 1).zero), (f25.elem(2), f25.elem(3)))

    def test_double_root(self):
        f25 = Field(5, 2)
        self.assertEqual(solve_unit_quadratic(Field(5, 1).elem(2)), (f25.one, f25.one))

    def test_conjugate_roots(self):
        c = Field(5, 1).one
        roots = solve_unit_quadratic(c)
        for root in roots:
            self.assertFalse(root.in_prime_field())
            self.assertTrue((root * root - c * root + 1).is_zero())
        self.assertEqual(roots[0].frobenius(), roots[1])

    def test_characteristic_two(self):
        roots = solve_unit_quadratic(Field(2, 1).one)
        for root in roots:
            self.assertTrue((root * root + root + 1).is_zero())


class DigitTests(unittest.TestCase):
    def test_lucas_zero(self):
        self.assertEqual(lucas_binomial([4, 2], 0, p=5), Field(5, 1).one)

    def test_lucas_vanishing(self):
        self.assertEqual(lucas_binomial([1, 1], 2, p=3).coords, (0,))

    def test_lucas_product(self):
        a = PadicUnitDigits(5, (2, 3, 0))
        self.assertEqual(lucas_binomial(a, 7).coords, (3,))

    def test_negative_one(self):
        minus_one = PadicUnitDigits.from_int(5, -1, 3)
        self.assertEqual(minus_one.digits, (4, 4, 4))
        self.assertEqual(minus_one.value, 124)

    def test_inverse(self):
        two = PadicUnitDigits.from_int(5, 2, 3)
        self.assertEqual(two.inverse().value, 63)
        with self.assertRaises(NotAUnit):
            PadicUnitDigits.from_int(5, 5, 3).inverse()

    def test_vp(self):
        self.assertEqual(vp(Fraction(50, 3), 5), 2)
        self.assertEqual(vp(Fraction(3, 25), 5), -2)
        self.assertEqual(vp(Fraction(-50, 7), 5), 2)
        self.assertEqual(vp(-12, 2), 2)
        with self.assertRaises(ValueError):
            vp(0, 5)


class PadicScalarTests(unittest.TestCase):
    def test_rational_valuation(self):
        self.assertEqual(PadicScalar.from_rational(5, Fraction(25, 3)).valuation(), 2)

    def test_ramified_valuation(self):
        x = PadicScalar.pi(5) ** 3 + 5
        self.assertEqual(x.valuation(), 1)
        self.assertEqual(PadicScalar.pi(5).valuation(), Fraction(1, 2))

    def test_ratio_from_case_four(self):
        ap = PadicScalar.from_rational(5, 5)
        ratio = padic_arith(ap * ap + 5, 2 * 5 * ap, "div")
        self.assertEqual(ratio.a, Fraction(3, 5))
        self.assertEqual(ratio.valuation(), -1)

    def test_residue(self):
        self.assertEqual(residue_reduce(PadicScalar.from_rational(5, 6)).coords, (1,))
        self.assertEqual(residue_reduce(PadicScalar.from_rational(7, Fraction(3, 5))).coords, (2,))
        with self.assertRaises(NotAUnit):
            residue_reduce(PadicScalar.from_rational(5, Fraction(5, 3)))

    def test_digits(self):
        x = PadicScalar.from_digits(5, 1, [(0, 1), (2, 3)], 4)
        self.assertEqual(x.a, 76)
        self.assertEqual(x.digits(), {0: 1, 2: 3})
        self.assertEqual(PadicScalar.from_rational(5, 76).digits(4), {0: 1, 2: 3})

    def test_ramified_digits(self):
        x = PadicScalar.from_digits(5, 2, [(1, 2), (2, 1)], 6)
        self.assertEqual((x.a, x.b), (Fraction(5), Fraction(2)))
        self.assertEqual(x.valuation(), Fraction(1, 2))
        self.assertEqual(x.digits(), {1: 2, 2: 1})

    def test_precision_tracking(self):
        x = PadicScalar.from_digits(5, 1, [(1, 1)], 3)
        y = x * 5
        self.assertEqual(y.prec, 4)
        self.assertEqual((x + PadicScalar.from_digits(5, 1, [], 2)).prec, 2)

    def test_zero_at_precision(self):
        x = PadicScalar.from_digits(5, 1, [], 3)
        self.assertTrue(x.is_zero())
        with self.assertRaises(InsufficientPrecision):
            x.valuation()

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            PadicScalar.from_rational(5, 0).inverse()
        with self.assertRaises(ZeroDivisionError):
            PadicScalar.from_digits(5, 1, [], 3).inverse()

    def test_zp_digits(self):
        digits = PadicScalar.from_rational(5, Fraction(1, 2)).zp_digits(3)
        self.assertEqual(digits.value * 2 % 125, 1)
        with self.assertRaises(NotAUnit):
            PadicScalar.from_rational(5, Fraction(1, 5)).zp_digits(3)

    def test_split(self):
        self.assertEqual(PadicScalar.from_rational(5, Fraction(50, 3)).split(), (2, Fraction(2, 3)))

    def test_mixing_primes(self):
        with self.assertRaises(FieldMismatch):
            PadicScalar.from_rational(5, 1) + PadicScalar.from_rational(7, 1)


if __name__ == "__main__":
    unittest.main()
