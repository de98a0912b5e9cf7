#!/usr/bin/env python3
"""Tests for the text grammar and the JSON documents."""

import json
import unittest
from fractions import Fraction

import numpy as np

from algebra import Field, PadicScalar
from amice import MeasureQp, MeasureZp
from codec import (
    borel_from_json,
    borel_to_json,
    bss_from_json,
    bss_to_json,
    dumps,
    format_character,
    galois_from_json,
    galois_to_json,
    gss_from_json,
    gss_to_json,
    measure_to_json,
    padic_from_json,
    padic_to_json,
    parse_character,
    parse_element,
    parse_fraction,
    reduction_to_json,
    series_from_json,
    series_to_json,
    tower_from_json,
    tower_to_json,
)
from corresp import CrystallineParams, reduce_crystalline
from errors import OutOfRange, ParseError
from laurent import LaurentSeries
from reps import (
    GSS,
    BCharacter,
    Irred,
    MulCharacter,
    OneDim,
    PrincipalSeries,
    SpecialTwist,
    SplitSum,
    Supersingular,
    characters,
    restrict_to_borel,
)
from tower import BorelElement, CharModel, random_tower

P = 5


class GrammarTests(unittest.TestCase):
    def setUp(self):
        self.field = Field(P, 2)

    def test_parse_element(self):
        self.assertEqual(parse_element("3", P), self.field.elem(3))
        self.assertEqual(parse_element("2+1*t", P), self.field.elem(2, 1))
        self.assertEqual(parse_element("t", P), self.field.t)
        self.assertEqual(parse_element("4*t", P), self.field.elem(0, 4))
        self.assertEqual(parse_element("-1", P), self.field.elem(4))

    def test_bad_elements(self):
        with self.assertRaises(ParseError):
            parse_element("t", P, m=1)
        with self.assertRaises(ParseError):
            parse_element("x", P)

    def test_parse_character(self):
        omega = MulCharacter.omega(P)
        self.assertEqual(parse_character("w^2*mu(3)", P), omega**2 * MulCharacter.mu(P, 3))
        self.assertEqual(parse_character("1", P), MulCharacter.trivial(P))
        self.assertEqual(parse_character("w", P), omega)
        self.assertEqual(parse_character("w^-1", P), omega**3)
        self.assertEqual(parse_character("mu(2+1*t)", P), MulCharacter.mu(P, self.field.elem(2, 1)))

    def test_bad_characters(self):
        for text in ("mu(0)", "w**2", "v", "mu(2"):
            with self.assertRaises(ParseError, msg=text):
                parse_character(text, P)

    def test_character_round_trip(self):
        for chi in characters(P, self.field.units()):
            self.assertEqual(parse_character(format_character(chi), P), chi)

    def test_parse_fraction(self):
        self.assertEqual(parse_fraction("25/3"), Fraction(25, 3))
        with self.assertRaises(ParseError):
            parse_fraction("1/0")
        with self.assertRaises(ParseError):
            parse_fraction("abc")


class DocumentTests(unittest.TestCase):
    def setUp(self):
        mu = lambda y: MulCharacter.mu(P, y)
        omega = MulCharacter.omega(P)
        self.reps = GSS.of(
            PrincipalSeries(BCharacter(mu(2), omega)),
            OneDim(mu(4)),
            SpecialTwist(mu(4)),
            Supersingular.canonical(3, omega),
        )

    def test_galois(self):
        for v in (Irred(1, MulCharacter.omega(P)), SplitSum.of(MulCharacter.omega(P), MulCharacter.mu(P, 3))):
            self.assertEqual(galois_from_json(json.loads(dumps(galois_to_json(v)))), v)

    def test_gss(self):
        self.assertEqual(gss_from_json(json.loads(dumps(gss_to_json(self.reps, P)))), self.reps)

    def test_gss_dump_is_order_independent(self):
        atoms = list(self.reps)
        shuffled = GSS(tuple(reversed(atoms)))
        self.assertEqual(dumps(gss_to_json(shuffled, P)), dumps(gss_to_json(self.reps, P)))

    def test_bss(self):
        profile = restrict_to_borel(self.reps)
        self.assertEqual(bss_from_json(json.loads(dumps(bss_to_json(profile, P)))), profile)

    def test_wrong_schema(self):
        with self.assertRaises(ParseError):
            galois_from_json({"schema": "gss/1", "p": P})
        with self.assertRaises(ParseError):
            gss_from_json({"schema": "gss/1", "p": P, "atoms": [{"kind": "bogus"}]})
        with self.assertRaises(ParseError):
            gss_from_json({"schema": "gss/1", "p": P, "atoms": [{"kind": "one-dim"}]})

    def test_malformed_documents(self):
        malformed = [
            (padic_from_json, {"p": P, "digits": [[0, 7]], "prec": 3}),
            (padic_from_json, {"p": P, "digits": [[1]], "prec": 3}),
            (galois_from_json, {"schema": "galois-rep/1", "kind": "irred", "r": 1, "chi": "w"}),
            (galois_from_json, {"schema": "galois-rep/1", "p": 4, "kind": "irred", "r": 1, "chi": "w"}),
            (bss_from_json, {"schema": "bss/1", "p": P, "atoms": [{"kind": "char", "chi1": "w"}]}),
            (bss_from_json, {"schema": "bss/1", "p": P, "atoms": [{"kind": "omega", "central": "1", "r": "x", "chi": "1"}]}),
            (borel_from_json, {"schema": "borel/1", "p": P, "x": 0}),
            (series_from_json, {"schema": "series/1", "p": P, "ord": 0, "coeffs": []}),
            (tower_from_json, {"schema": "tower/1", "p": P, "model": {"r": 0, "y": "1"}, "central": "1", "entries": []}),
        ]
        for reader, document in malformed:
            with self.subTest(reader=reader.__name__, document=document):
                with self.assertRaises(ParseError):
                    reader(document)

    def test_domain_errors_pass_through_readers(self):
        with self.assertRaises(OutOfRange):
            galois_from_json({"schema": "galois-rep/1", "p": P, "kind": "irred", "r": 7, "chi": "1"})
        with self.assertRaises(OutOfRange):
            tower_from_json({"schema": "tower/1", "p": P, "model": {"r": 0, "y": "0"}, "central": "1", "entries": []})

    def test_padic(self):
        exact = PadicScalar(P, 2, Fraction(25, 3), Fraction(1))
        self.assertEqual(padic_from_json(padic_to_json(exact)), exact)
        approx = PadicScalar.from_digits(P, 1, [(1, 2), (3, 4)], 5)
        document = padic_to_json(approx)
        self.assertEqual(document["digits"], [[1, 2], [3, 4]])
        self.assertEqual(padic_from_json(document), approx)

    def test_series(self):
        field = Field(P, 2)
        f = LaurentSeries.from_coeffs(field, {-1: field.t, 2: 3}, 9)
        self.assertEqual(series_from_json(series_to_json(f)), f)

    def test_borel(self):
        g = BorelElement(P, x=Fraction(2, 5), j=-1, a=3, z=Fraction(7, 25))
        self.assertEqual(borel_from_json(json.loads(dumps(borel_to_json(g)))), g)

    def test_tower(self):
        field = Field(P, 2)
        model = CharModel(P, 2, field.elem(1, 1))
        t = random_tower(model, MulCharacter.omega(P), 3, 20, np.random.default_rng(1))
        back = tower_from_json(json.loads(dumps(tower_to_json(t))))
        self.assertEqual(back.model, t.model)
        self.assertEqual(back.central, t.central)
        self.assertEqual(back.entries, t.entries)

    def test_reduction(self):
        params = CrystallineParams(P, 9, ap=PadicScalar.from_rational(P, 5))
        document = reduction_to_json(reduce_crystalline(params), params)
        self.assertEqual(document["case"], "3b")
        self.assertEqual(document["galois"]["kind"], "split")
        self.assertEqual(document["ap"], {"p": P, "e": 1, "exact": True, "a": "5", "b": "0"})
        symbolic = CrystallineParams(P, 9, val=Fraction(3, 2))
        self.assertEqual(reduction_to_json(reduce_crystalline(symbolic), symbolic)["val"], "3/2")

    def test_measure(self):
        field = Field(P, 2)
        document = measure_to_json(MeasureQp(1, MeasureZp.dirac(field, 2, 1)))
        self.assertEqual((document["shift"], document["level"]), (1, 1))
        self.assertEqual(document["values"]["2"], "1+0*t")
        self.assertEqual(document["values"]["0"], "0+0*t")


if __name__ == "__main__":
    unittest.main()
