#!/usr/bin/env python3
"""Tests for the mod p correspondence and the crystalline reduction table."""

import unittest
from fractions import Fraction

from algebra import Field, PadicScalar
from corresp import (
    CrystallineParams,
    bracket,
    breuil_modp_datum,
    galois_to_gl2,
    galois_to_gl2_factored,
    gl2_to_galois,
    reduce_crystalline,
    table_case,
)
from errors import NotInImage, OutOfRange, OutOfTableRange, UndeterminedValuation
from reps import GSS, BCharacter, Irred, MulCharacter, OneDim, PrincipalSeries, SplitSum, Supersingular

P = 5
TRIVIAL = MulCharacter.trivial(P)


def mu(y):
    return MulCharacter.mu(P, y)


def omega(r=1):
    return MulCharacter.omega(P, r)


def reduce(k, ap, e=1):
    return reduce_crystalline(CrystallineParams(P, k, ap=PadicScalar(P, e, Fraction(ap))))


class CorrespondenceTests(unittest.TestCase):
    def test_bracket(self):
        self.assertEqual(bracket(-1, P), 3)
        self.assertEqual(bracket(9, P), 1)

    def test_split_sum_image(self):
        v = SplitSum.of(omega() * mu(2), mu(3))
        expected = GSS.of(
            PrincipalSeries(BCharacter(omega() * mu(2), omega(3) * mu(3))),
            PrincipalSeries(BCharacter(mu(3), mu(2))),
        )
        self.assertEqual(galois_to_gl2(v), expected)
        self.assertEqual(galois_to_gl2_factored(*v.chars), expected)
        self.assertEqual(gl2_to_galois(expected), v)

    def test_irreducible_round_trip(self):
        v = Irred(1, omega())
        self.assertEqual(galois_to_gl2(v), GSS.of(Supersingular(1, omega())))
        self.assertEqual(gl2_to_galois(galois_to_gl2(v)), v)

    def test_not_in_image(self):
        with self.assertRaises(NotInImage):
            gl2_to_galois(GSS.of(PrincipalSeries(BCharacter(mu(2), mu(3)))))
        with self.assertRaises(NotInImage):
            gl2_to_galois(GSS.of(OneDim(TRIVIAL)))


class ReductionTableTests(unittest.TestCase):
    def test_table_case(self):
        self.assertEqual(table_case(P, 4, Fraction(1)), "1")
        self.assertEqual(table_case(P, 7, Fraction(1, 2)), "2a")
        self.assertEqual(table_case(P, 9, Fraction(2)), "3c")
        self.assertEqual(table_case(P, 11, Fraction(1)), "4")
        self.assertEqual(table_case(P, 32, Fraction(8)), "5a")

    def test_small_weight(self):
        result = reduce(4, 5)
        self.assertEqual(result.case, "1")
        self.assertEqual(result.galois, Irred(2, TRIVIAL))
        self.assertEqual(result.gl2, breuil_modp_datum(4, P))

    def test_vanishing_ap(self):
        self.assertEqual(reduce(4, 0).case, "1")
        with self.assertRaises(OutOfTableRange):
            reduce(7, 0)

    def test_case_two(self):
        self.assertEqual(reduce(7, 25).galois, SplitSum.of(omega() * mu(2), omega() * mu(3)))
        ramified = reduce_crystalline(CrystallineParams(P, 7, ap=PadicScalar.pi(P)))
        self.assertEqual((ramified.case, ramified.galois), ("2a", Irred(1, TRIVIAL)))

    def test_case_three(self):
        result = reduce(9, 5)
        self.assertEqual(result.case, "3b")
        self.assertEqual(result.galois, SplitSum.of(omega(3) * mu(3), omega() * mu(2)))
        self.assertEqual(result.gl2, galois_to_gl2(result.galois))
        self.assertEqual(reduce(9, 25).galois, Irred(1, omega()))
        ramified = reduce_crystalline(CrystallineParams(P, 9, ap=PadicScalar.pi(P)))
        self.assertEqual((ramified.case, ramified.galois), ("3a", Irred(1, omega(3))))

    def test_lattice_note(self):
        result = reduce(8, 15)
        self.assertEqual(result.case, "3b")
        self.assertEqual(result.galois, SplitSum.of(omega(2), omega()))
        self.assertEqual(len(result.notes), 1)
        self.assertFalse(reduce(8, 5).notes)

    def test_case_four(self):
        result = reduce(11, 5)
        self.assertEqual((result.case, result.galois), ("4a", Irred(1, TRIVIAL)))
        wild = reduce_crystalline(CrystallineParams(P, 11, ap=PadicScalar(P, 2, 0, 2)))
        self.assertEqual(wild.case, "4b")
        self.assertEqual(wild.galois, SplitSum.of(omega() * mu(2), omega() * mu(3)))

    def test_case_five(self):
        result = reduce(31, 5**8)
        self.assertEqual(result.case, "5b")
        self.assertEqual(result.galois, SplitSum.of(omega() * mu(2), omega() * mu(3)))
        result = reduce(32, 5**8)
        self.assertEqual((result.case, result.galois), ("5a", Irred(0, omega())))

    def test_out_of_table_range(self):
        with self.assertRaises(OutOfTableRange):
            reduce(12, 5)
        with self.assertRaises(OutOfTableRange):
            reduce(9, 3)
        with self.assertRaises(OutOfTableRange):
            CrystallineParams(P, 1, val=1)

    def test_symbolic_valuation(self):
        with self.assertRaises(UndeterminedValuation):
            reduce_crystalline(CrystallineParams(P, 11, val=Fraction(1, 2)))
        with self.assertRaises(UndeterminedValuation):
            reduce_crystalline(CrystallineParams(P, 9, val=1))
        symbolic = reduce_crystalline(CrystallineParams(P, 9, val=1, residue=Field(P, 1).one))
        self.assertEqual(symbolic.galois, reduce(9, 5).galois)
        self.assertEqual(reduce_crystalline(CrystallineParams(P, 9, val=3)).galois, Irred(1, omega()))

    def test_breuil_range(self):
        self.assertEqual(breuil_modp_datum(2, P), GSS.of(Supersingular(0, TRIVIAL)))
        with self.assertRaises(OutOfRange):
            breuil_modp_datum(7, P)


if __name__ == "__main__":
    unittest.main()
