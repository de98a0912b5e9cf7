#!/usr/bin/env python3
"""Tests for finite-level measures, step functions and the measure formulas."""

import unittest
from fractions import Fraction

import numpy as np

from algebra import Field
from amice import (
    MeasureQp,
    MeasureZp,
    StepFunction,
    amice_transform,
    generator_integral,
    inverse_amice,
    measure_psi,
    pair,
    step_action,
    tower_to_measure,
)
from errors import InsufficientPrecision, LevelExhausted, LevelMismatch
from laurent import LaurentSeries, psi
from reps import MulCharacter
from tower import BorelElement, CharModel, constant_tower, induced_characters, random_tower, standard_tower, star_action

P = 5
LEVEL = 2


class AmiceTransformTests(unittest.TestCase):
    def setUp(self):
        self.field = Field(P, 2)
        self.rng = np.random.default_rng(21)

    def test_dirac(self):
        transform = amice_transform(MeasureZp.dirac(self.field, 2, 1))
        self.assertEqual(transform, LaurentSeries.from_coeffs(self.field, {0: 1, 1: 2, 2: 1}, 5))
        self.assertEqual(amice_transform(MeasureZp.dirac(self.field, 0, 2)), LaurentSeries.monomial(self.field, 0, 25))

    def test_uniform_measure(self):
        for level in (1, 2):
            size = P**level
            ones = MeasureZp(self.field, level, np.tile(self.field.to_row(1), (size, 1)))
            self.assertEqual(amice_transform(ones), LaurentSeries.monomial(self.field, size - 1, size))

    def test_round_trip(self):
        nu = MeasureZp.random(self.field, LEVEL, self.rng)
        self.assertEqual(inverse_amice(amice_transform(nu), LEVEL), nu)

    def test_insufficient_precision(self):
        with self.assertRaises(InsufficientPrecision):
            inverse_amice(LaurentSeries.monomial(self.field, 0, 4), 1)

    def test_coarsen(self):
        self.assertEqual(MeasureZp.dirac(self.field, 7, 2).coarsen(1), MeasureZp.dirac(self.field, 2, 1))
        nu = MeasureZp.random(self.field, LEVEL, self.rng)
        self.assertTrue(amice_transform(nu.coarsen(1)).agrees_with(amice_transform(nu).truncate(P)))
        self.assertEqual(nu.coarsen(0).total(), nu.total())
        with self.assertRaises(LevelExhausted):
            nu.coarsen(LEVEL + 1)

    def test_measure_psi(self):
        nu = MeasureZp.random(self.field, LEVEL, self.rng)
        image = measure_psi(nu)
        self.assertEqual(image.level, LEVEL - 1)
        for a in range(P):
            self.assertEqual(image.value(a), nu.value(P * a))
        self.assertTrue(amice_transform(image).agrees_with(psi(amice_transform(nu))))
        with self.assertRaises(LevelExhausted):
            measure_psi(MeasureZp.dirac(self.field, 0, 0))


class StepFunctionTests(unittest.TestCase):
    def setUp(self):
        self.field = Field(P, 2)
        self.digit = StepFunction.from_function(self.field, 0, 1, lambda z: int(z) % P)

    def test_evaluate(self):
        self.assertEqual(self.digit.evaluate(7), self.field.elem(2))
        self.assertEqual(self.digit.evaluate(Fraction(1, 5)), self.field.zero)
        indicator = StepFunction.indicator(self.field, 1)
        self.assertEqual(indicator.evaluate(Fraction(3, 5)), self.field.one)
        self.assertEqual(indicator.evaluate(Fraction(1, 25)), self.field.zero)

    def test_compose_affine(self):
        translated = self.digit.compose_affine(1, 3)
        self.assertEqual(translated.evaluate(1), self.field.elem(4))
        scaled = self.digit.compose_affine(5, 0)
        self.assertEqual((scaled.shift, scaled.level), (1, 0))
        self.assertEqual(scaled.evaluate(Fraction(2, 5)), self.field.elem(2))
        self.assertTrue(scaled.compose_affine(Fraction(1, 5), 0).agrees_with(self.digit))

    def test_sum(self):
        total = self.digit + StepFunction.indicator(self.field, 1)
        self.assertEqual(total.evaluate(2), self.field.elem(3))
        self.assertEqual(total.evaluate(Fraction(2, 5)), self.field.one)


class PairingTests(unittest.TestCase):
    def setUp(self):
        self.field = Field(P, 2)

    def test_pair_with_dirac(self):
        nu = MeasureQp(0, MeasureZp.dirac(self.field, 3, 1))
        digit = StepFunction.from_function(self.field, 0, 1, lambda z: int(z) % P)
        self.assertEqual(pair(digit, nu), self.field.elem(3))

    def test_pair_through_shift(self):
        nu = MeasureQp(1, MeasureZp.dirac(self.field, 2, 2))
        self.assertEqual(nu.resolution, 1)
        f = StepFunction.from_function(self.field, 1, 0, lambda x: int(x * P) % P)
        self.assertEqual(pair(f, nu), self.field.elem(2))

    def test_level_mismatch(self):
        nu = MeasureQp(0, MeasureZp.dirac(self.field, 3, 1))
        with self.assertRaises(LevelMismatch):
            pair(StepFunction.random(self.field, 0, 2, np.random.default_rng(0)), nu)
        with self.assertRaises(LevelMismatch):
            pair(StepFunction.indicator(self.field, 1), nu)
        with self.assertRaises(LevelMismatch):
            nu.restrict(1)


class TowerMeasureTests(unittest.TestCase):
    def setUp(self):
        self.field = Field(P, 2)
        self.model = CharModel(P, 1, self.field.elem(3), "plus")
        self.central = MulCharacter.omega(P) * MulCharacter.mu(P, 2)
        self.rng = np.random.default_rng(17)
        self.tower = random_tower(self.model, self.central, 3, 25, self.rng)
        self.nu = tower_to_measure(self.tower, LEVEL)

    def test_constant_tower(self):
        nu = tower_to_measure(constant_tower(self.model, 3, 25), LEVEL)
        self.assertEqual(pair(StepFunction.indicator(self.field, 0), nu), self.field.one)

    def test_sharp_tower_rejected(self):
        sharp = CharModel(P, 1, self.field.elem(3))
        with self.assertRaises(ValueError):
            tower_to_measure(standard_tower(sharp, 3, 25), LEVEL)

    def test_shift_independence(self):
        self.assertEqual((self.nu.shift, self.nu.resolution), (2, 0))
        self.assertTrue(tower_to_measure(self.tower, LEVEL, 1).agrees_with(self.nu))

    def check_formula(self, g, f):
        moved = tower_to_measure(star_action(g, self.tower), LEVEL)
        self.assertEqual(pair(f, moved), generator_integral(g, f, self.nu, self.model, self.central))

    def test_generator_formulas(self):
        f = StepFunction.random(self.field, 1, 0, self.rng)
        self.check_formula(BorelElement.central(P, 5), f)
        self.check_formula(BorelElement.torus(P, 2), f)
        self.check_formula(BorelElement.unipotent(P, Fraction(1, 5)), f)
        self.check_formula(BorelElement.p_power(P, 1), StepFunction.random(self.field, 1, -1, self.rng))

    def test_composite_is_not_a_generator(self):
        f = StepFunction.random(self.field, 1, 0, self.rng)
        with self.assertRaises(ValueError):
            generator_integral(BorelElement(P, a=2, z=1), f, self.nu, self.model, self.central)

    def test_pairing_invariance(self):
        chars = induced_characters(self.model, self.central)
        cases = [
            (BorelElement.torus(P, 2), StepFunction.random(self.field, 1, 0, self.rng)),
            (BorelElement.unipotent(P, Fraction(1, 5)), StepFunction.random(self.field, 1, 0, self.rng)),
            (BorelElement.p_power(P, 1), StepFunction.random(self.field, 1, -1, self.rng)),
            (BorelElement(P, x=5, a=3, z=Fraction(1, 5)), StepFunction.random(self.field, 1, 0, self.rng)),
        ]
        for g, f in cases:
            moved = tower_to_measure(star_action(g, self.tower), LEVEL)
            self.assertEqual(pair(step_action(g, f, chars), moved), pair(f, self.nu), str(g))


if __name__ == "__main__":
    unittest.main()
