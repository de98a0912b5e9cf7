#!/usr/bin/env python3
"""
Property suites behind `modp-langlands check`.

Each suite draws its samples from a seeded numpy generator, records one
PropertyResult per named property and never raises for a violated property:
violations are counted, and the first few counterexamples are kept for the
report. Exhaustive enumerations run in shard 0; sampled properties split
their sample count across shards.
"""

from __future__ import annotations

import asyncio
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Any, Callable, Dict, List

import numpy as np

from algebra import Field, PadicScalar, PadicUnitDigits
from amice import (
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
from corresp import (
    CrystallineParams,
    breuil_modp_datum,
    galois_to_gl2,
    galois_to_gl2_factored,
    gl2_to_galois,
    reduce_crystalline,
    table_case,
)
from errors import (
    DepthExhausted,
    InsufficientPrecision,
    LevelMismatch,
    ModpError,
    OutOfTableRange,
)
from laurent import (
    LaurentSeries,
    decompose,
    digit_count,
    frobenius_phi,
    gamma_act,
    psi,
    psi_preimage,
    recompose,
    residue,
)
from reps import (
    BSS,
    BChar,
    BCharacter,
    GSS,
    MulCharacter,
    OmegaLabel,
    OneDim,
    PrincipalSeries,
    SpecialTwist,
    SplitSum,
    Supersingular,
    canonical_pi,
    canonical_rho,
    characters,
    ghost_identities,
    ind_omega2,
    pi_orbit,
    reconstruct_from_borel,
    restrict_to_borel,
)
from settings import RunConfig
from tower import (
    GENERATOR_KINDS,
    BorelElement,
    CharModel,
    check_exact_sequence,
    contraction_budget,
    dual_residue_character,
    induced_characters,
    random_tower,
    residue_character,
    standard_tower,
    star_action,
    star_entry,
    tower_residue,
    unipotent_entry,
)

logger = logging.getLogger("modp.checks")

REPORT_SCHEMA = "check-report/1"
MAX_FAILURES = 5
AMICE_MAX_SIZE = 512
AMICE_DEPTH = 3
PAIRINGS_PER_SAMPLE = 2
PAIRING_MAX_DRAWS = 40
EXHAUSTIVE_PAIR_LIMIT = 5


@dataclass
class PropertyResult:
    suite: str
    name: str
    checked: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def merge(self, other: PropertyResult):
        self.checked += other.checked
        self.failed += other.failed
        self.skipped += other.skipped
        room = MAX_FAILURES - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])


class Recorder:
    """Collects PropertyResults for one suite, in first-use order."""

    def __init__(self, suite: str):
        self.suite = suite
        self.results: Dict[str, PropertyResult] = {}

    def _result(self, name: str) -> PropertyResult:
        if name not in self.results:
            self.results[name] = PropertyResult(self.suite, name)
        return self.results[name]

    def check(self, name: str, ok: bool, detail: str = ""):
        result = self._result(name)
        result.checked += 1
        if ok:
            return
        result.failed += 1
        if len(result.failures) < MAX_FAILURES:
            result.failures.append(detail)
        logger.warning(f"{self.suite}/{name} violated: {detail}")

    def attempt(self, name: str, detail: str, fn: Callable[[], bool], skip: tuple[type, ...] = ()) -> bool:
        """Run one check; exceptions listed in `skip` mean the sample does not apply.

        Returns:
            False if the sample was skipped, True if it was checked
        """
        try:
            ok = bool(fn())
        except skip as exc:
            logger.debug(f"{self.suite}/{name} skipped: {exc}")
            self._result(name).skipped += 1
            return False
        except (ModpError, ValueError, ZeroDivisionError) as exc:
            self.check(name, False, f"{detail}: {type(exc).__name__}: {exc}")
            return True
        self.check(name, ok, detail)
        return True

    def skip(self, name: str):
        self._result(name).skipped += 1

    def extend(self, name: str, checked: int, violations: List[str]):
        """Fold in counts from a check that ran its own loop."""
        result = self._result(name)
        result.checked += checked - len(violations)
        for violation in violations:
            self.check(name, False, violation)

    def to_list(self) -> List[PropertyResult]:
        return list(self.results.values())


def _shard_count(total: int, shard: int, shards: int) -> int:
    return total // shards + (1 if shard < total % shards else 0)


def _random_digits(p: int, length: int, rng: np.random.Generator) -> PadicUnitDigits:
    digits = [int(rng.integers(1, p))] + [int(d) for d in rng.integers(0, p, size=length - 1)]
    return PadicUnitDigits(p, tuple(digits))


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


def _series_suite(config: RunConfig, rec: Recorder, rng: np.random.Generator, shard: int, shards: int):
    p = config.p
    field_ = Field(p, config.m)
    n = config.precision

    if shard == 0:
        one = LaurentSeries.monomial(field_, 0, n)
        pole = LaurentSeries.monomial(field_, -1, n)
        rec.attempt("psi_constants", "psi(1) != 1", lambda: psi(one).agrees_with(one))
        rec.attempt(
            "psi_constants",
            f"psi(X^{p - 1}) != 1",
            lambda: psi(LaurentSeries.monomial(field_, p - 1, n)).agrees_with(one),
        )
        rec.attempt("psi_constants", "psi(X^-1) != X^-1", lambda: psi(pole).agrees_with(pole))
        for j in range(1, 9):
            for t in range(j - 1, j + 8):
                target = LaurentSeries.monomial(field_, t, n)

                def witness(target=target, j=j) -> bool:
                    preimage = psi_preimage(target, j)
                    return preimage is not None and preimage.valuation() >= j and psi(preimage).agrees_with(target)

                rec.attempt("psi_ideal_surjective", f"X^{t} has no psi-preimage in X^{j} k[[X]]", witness)

    length = digit_count(p * n + 2, p) + 1
    for sample in range(_shard_count(config.samples, shard, shards)):
        f = LaurentSeries.random(field_, 0, n, rng)
        g = LaurentSeries.random(field_, 0, n, rng)
        h = LaurentSeries.random(field_, -1, n, rng)
        a = _random_digits(p, length, rng)
        b = _random_digits(p, length, rng)
        i = int(rng.integers(1, p))
        twist = LaurentSeries.from_coeffs(field_, {k: comb(i, k) for k in range(i + 1)}, p * n)
        tag = f"sample {sample} (shard {shard})"

        rec.attempt("psi_phi", tag, lambda: psi(frobenius_phi(f)).agrees_with(f))
        rec.attempt("psi_kernel", f"{tag}, i = {i}", lambda: psi(twist * frobenius_phi(f)).is_zero())
        rec.attempt("psi_linear", tag, lambda: psi(frobenius_phi(f) * g).agrees_with(f * psi(g)))
        rec.attempt("decompose", tag, lambda: recompose(decompose(h)).agrees_with(h))
        rec.attempt(
            "gamma_group_law",
            f"{tag}, a = {a.value}, b = {b.value}",
            lambda: gamma_act(a, gamma_act(b, h)).agrees_with(gamma_act(a * b, h)),
        )
        rec.attempt(
            "gamma_phi",
            f"{tag}, a = {a.value}",
            lambda: frobenius_phi(gamma_act(a, f)).agrees_with(gamma_act(a, frobenius_phi(f))),
        )
        rec.attempt("gamma_psi", f"{tag}, a = {a.value}", lambda: psi(gamma_act(a, h)).agrees_with(gamma_act(a, psi(h))))
        rec.attempt(
            "gamma_residue",
            f"{tag}, a = {a.value}",
            lambda: residue(gamma_act(a, LaurentSeries.monomial(field_, -1, n))) == a.residue().inverse(),
        )


# ---------------------------------------------------------------------------
# tower
# ---------------------------------------------------------------------------


def _tower_models(config: RunConfig) -> list[CharModel]:
    p = config.p
    field2 = Field(p, 2)
    units = list(field2.prime_units())
    if config.m == 2:
        model_rng = np.random.default_rng([config.seed, p])
        extra = [field2.random(model_rng, nonzero=True) for _ in range(10)]
        units.extend(y for y in dict.fromkeys(extra) if y not in units)
    return [CharModel(p, r, y) for y in units for r in range(p - 1)]


def _tower_suite(config: RunConfig, rec: Recorder, rng: np.random.Generator, shard: int, shards: int):
    p = config.p
    depth, precision = config.depth, config.precision
    budget = contraction_budget(p, precision)
    models = _tower_models(config)
    centrals = characters(p)
    field2 = Field(p, 2)

    if shard == 0:
        for model in models:
            standard = standard_tower(model, depth, precision)
            if budget >= 1:
                rec.attempt(
                    "displayed_values",
                    f"res(diag(1,p) * y) for W = {model.character}",
                    lambda: residue(star_entry(BorelElement.p_power(p, 1), standard, 0)) == model.y.inverse(),
                )
            for a in range(2, p):
                rec.attempt(
                    "displayed_values",
                    f"res(diag(1,{a}) * y) for W = {model.character}",
                    lambda: residue(star_entry(BorelElement.torus(p, a), standard, 0))
                    == field2.elem(a) ** (1 - model.r),
                )
            rec.attempt(
                "displayed_values",
                f"res(upper(1,1) * y) for W = {model.character}",
                lambda: residue(star_entry(BorelElement.unipotent(p, 1), standard, 0)) == field2.one,
            )
            report = check_exact_sequence(model, centrals[0], min(depth, 4), precision, 1, rng)
            rec.extend(
                "exact_sequence",
                report.checked,
                [f"W = {model.character}: {violation}" for violation in report.violations],
            )

    for sample in range(_shard_count(config.samples, shard, shards)):
        model = models[(sample * shards + shard) % len(models)]
        central = centrals[int(rng.integers(len(centrals)))]
        t = random_tower(model, central, depth, precision, rng)
        chi_res = residue_character(model, central)
        res_t = tower_residue(t)
        tag = f"W = {model.character}, chi = {central}"

        for kind in (*GENERATOR_KINDS, None):
            g = BorelElement.random(p, rng, budget, kind=kind)
            if g.depth_cost(1) > depth:
                rec.skip("residue_equivariance")
                continue
            rec.attempt(
                "residue_equivariance",
                f"{tag}, g = {g}",
                lambda: residue(star_entry(g, t, 0)) == g.character_value(chi_res) * res_t,
            )

        if budget >= 1:
            g = BorelElement.random(p, rng, budget - 1)
            out_depth = 3
            if g.depth_cost(out_depth) <= depth:
                rec.attempt("validity", f"{tag}, g = {g}", lambda: star_action(g, t, out_depth).is_valid())

        x = PadicScalar.from_rational(p, Fraction(p) ** int(rng.integers(-2, 3)) * int(rng.integers(1, p)))
        rec.attempt(
            "central_action",
            f"{tag}, x = {x}",
            lambda: star_action(BorelElement.central(p, x.a), t).agrees_with(t.scale(central.eval_at(x).inverse())),
        )

        g = BorelElement.random(p, rng, budget // 2 + budget % 2)
        h = BorelElement.random(p, rng, budget // 2)
        rec.attempt(
            "group_law",
            f"{tag}, g = {g}, h = {h}",
            lambda: _group_law(g, h, t, budget),
            skip=(DepthExhausted, InsufficientPrecision),
        )

        v = int(rng.integers(0, 3))
        numerator = int(rng.integers(1, p**2))
        while numerator % p == 0:
            numerator += 1
        z = Fraction(numerator, p**v)
        admissible = [j for j in range(3) if j <= budget and v + j < depth]
        rec.attempt(
            "unipotent_well_defined",
            f"{tag}, z = {z}",
            lambda: _all_agree([unipotent_entry(z, t, v, j) for j in admissible]),
        )


def _group_law(g: BorelElement, h: BorelElement, t, budget: int) -> bool:
    gh = g * h
    if gh.contraction_cost() > budget or g.contraction_cost() + h.contraction_cost() > budget:
        raise InsufficientPrecision("the product exceeds the contraction budget")
    inner_depth = g.depth_cost(2)
    lhs = star_action(gh, t, 2)
    rhs = star_action(g, star_action(h, t, inner_depth), 2)
    return lhs.agrees_with(rhs)


def _all_agree(values: list[LaurentSeries]) -> bool:
    return all(values[0].agrees_with(other) for other in values[1:])


# ---------------------------------------------------------------------------
# amice
# ---------------------------------------------------------------------------


def _amice_level(config: RunConfig) -> int:
    level = config.level
    while level > 0 and config.p**level > AMICE_MAX_SIZE:
        level -= 1
    return level


def _amice_suite(config: RunConfig, rec: Recorder, rng: np.random.Generator, shard: int, shards: int):
    p = config.p
    field_ = Field(p, 2)
    level = _amice_level(config)

    if shard == 0:
        for n in range(level + 1):
            size = p**n
            for a in range(size):
                dirac = MeasureZp.dirac(field_, a, n)
                rec.attempt(
                    "transform_bijective",
                    f"Dirac measure at {a}, level {n}",
                    lambda: inverse_amice(amice_transform(dirac), n) == dirac,
                )
            for k in range(size):
                monomial = LaurentSeries.monomial(field_, k, size)
                rec.attempt(
                    "transform_bijective",
                    f"X^{k} at level {n}",
                    lambda: amice_transform(inverse_amice(monomial, n)) == monomial,
                )

    precision = max(p**level, 2 * p)
    budget = contraction_budget(p, precision)
    centrals = characters(p)
    units = list(field_.prime_units())
    resolution = level - (AMICE_DEPTH - 1)

    for sample in range(_shard_count(config.samples, shard, shards)):
        tag = f"sample {sample} (shard {shard})"
        if level >= 1:
            nu = MeasureZp.random(field_, level, rng)
            rec.attempt(
                "refinement",
                tag,
                lambda: amice_transform(nu.coarsen(level - 1)).agrees_with(amice_transform(nu).truncate(p ** (level - 1))),
            )
        if level >= 2:
            rec.attempt("measure_psi", tag, lambda: amice_transform(measure_psi(nu)).agrees_with(psi(amice_transform(nu))))

        model = CharModel(p, int(rng.integers(0, p - 1)), units[int(rng.integers(len(units)))], "plus")
        central = centrals[int(rng.integers(len(centrals)))]
        t = random_tower(model, central, AMICE_DEPTH, precision, rng)
        nu_t = tower_to_measure(t, level)
        rec.attempt(
            "shift_independence",
            tag,
            lambda: tower_to_measure(t, level, AMICE_DEPTH - 2).agrees_with(nu_t),
        )

        for kind in GENERATOR_KINDS:
            g = BorelElement.random(p, rng, budget, kind=kind, spread=1)
            f = _random_step(field_, resolution, rng)
            rec.attempt(
                "measure_formulas",
                f"{tag}, g = {g}",
                lambda: pair(f, tower_to_measure(star_action(g, t), level))
                == generator_integral(g, f, nu_t, model, central),
                skip=(LevelMismatch, InsufficientPrecision, DepthExhausted),
            )

        chars = induced_characters(model, central)
        paired = draws = 0
        while paired < PAIRINGS_PER_SAMPLE and draws < PAIRING_MAX_DRAWS:
            draws += 1
            g = BorelElement.random(p, rng, budget, spread=1)
            f = _random_step(field_, resolution, rng)
            paired += rec.attempt(
                "pairing_invariance",
                f"{tag}, g = {g}",
                lambda: pair(step_action(g, f, chars), tower_to_measure(star_action(g, t), level)) == pair(f, nu_t),
                skip=(LevelMismatch, InsufficientPrecision, DepthExhausted),
            )
        if paired < PAIRINGS_PER_SAMPLE:
            logger.warning(f"pairing_invariance: {paired} in-budget draws out of {draws} for {tag}")


def _random_step(field_: Field, resolution: int, rng: np.random.Generator) -> StepFunction:
    shift = int(rng.integers(0, AMICE_DEPTH))
    level = int(rng.integers(-shift, max(resolution, -shift) + 1))
    return StepFunction.random(field_, shift, level, rng)


# ---------------------------------------------------------------------------
# reps
# ---------------------------------------------------------------------------


def _reps_atoms(p: int) -> list:
    chars = characters(p)
    atoms: list = [OneDim(chi) for chi in chars]
    atoms.extend(SpecialTwist(chi) for chi in chars)
    atoms.extend(PrincipalSeries(BCharacter(c1, c2)) for c1 in chars for c2 in chars if c1 != c2)
    atoms.extend(dict.fromkeys(Supersingular.canonical(r, chi) for r in range(p) for chi in chars))
    return atoms


def _reps_suite(config: RunConfig, rec: Recorder, rng: np.random.Generator, shard: int, shards: int):
    p = config.p
    chars = characters(p)
    atoms = _reps_atoms(p)

    if shard == 0:
        for r in range(p):
            for chi in chars:
                rep = canonical_rho(r, chi)
                rec.attempt("canonical_rho", f"rho({r}, {chi})", lambda: canonical_rho(rep.r, rep.chi) == rep)
                for lam in Field(p, 2).elements():
                    if not lam.in_prime_field():
                        continue
                    reps = canonical_pi(r, lam, chi)
                    rec.attempt(
                        "pi_intertwinings",
                        f"pi({r}, {lam}, {chi})",
                        lambda: all(canonical_pi(*params) == reps for params in pi_orbit(r, lam, chi)),
                    )

        for h in range(1, p * p - 1):
            if h % (p + 1) == 0:
                continue
            for s in range(p - 1):
                rec.attempt(
                    "ind_omega2_twist",
                    f"h = {h}, s = {s}",
                    lambda: ind_omega2(h, twist=MulCharacter.omega(p, s)) == ind_omega2(h + s * (p + 1), p=p),
                )

        for w in chars:
            for chi in chars:
                model = CharModel(p, w.twist, w.unit)
                rec.attempt("ghost_identities", f"W = {w}, chi = {chi}", lambda: _ghosts_match(model, w, chi))

        if p <= EXHAUSTIVE_PAIR_LIMIT:
            multisets = [GSS.of(atom) for atom in atoms]
            multisets.extend(GSS.of(a, b) for a, b in combinations_with_replacement(atoms, 2))
            _profile_checks(rec, multisets)

    if p > EXHAUSTIVE_PAIR_LIMIT:
        count = _shard_count(config.samples, shard, shards)
        picks = rng.integers(0, len(atoms), size=(count, 2))
        _profile_checks(rec, [GSS.of(atoms[i], atoms[j]) for i, j in picks])

    for atom in atoms[shard::shards]:
        rec.attempt(
            "central_characters",
            f"{atom}",
            lambda: all(
                _profile_central(b_atom) == atom.central_character() for b_atom in restrict_to_borel(GSS.of(atom))
            ),
        )


def _profile_central(b_atom) -> MulCharacter:
    if isinstance(b_atom, OmegaLabel):
        return b_atom.central
    return b_atom.b.left * b_atom.b.right


def _ghosts_match(model: CharModel, w: MulCharacter, chi: MulCharacter) -> bool:
    induced, dual = ghost_identities(w, chi)
    residue_char = residue_character(model, chi)
    inverse = BCharacter(residue_char.left.inverse(), residue_char.right.inverse())
    induced_label, induced_char = _split_profile(induced)
    dual_label, dual_char = _split_profile(dual)
    return (
        induced_label == dual_label
        and induced_char == induced_characters(model, chi)
        and dual_char == dual_residue_character(model, chi) == inverse
    )


def _split_profile(profile: BSS) -> tuple[OmegaLabel, BCharacter]:
    """The Omega label and the character of a two-atom profile."""
    label = next(atom for atom in profile if isinstance(atom, OmegaLabel))
    char = next(atom for atom in profile if isinstance(atom, BChar))
    return label, char.b


def _profile_checks(rec: Recorder, multisets: list[GSS]):
    seen: dict = {}
    for reps in multisets:
        profile = restrict_to_borel(reps)
        previous = seen.setdefault(profile, reps)
        rec.check("profile_injective", previous == reps, f"{previous} and {reps} share a Borel profile")
        rec.attempt("profile_round_trip", f"{reps}", lambda: reconstruct_from_borel(profile) == reps)


# ---------------------------------------------------------------------------
# corresp
# ---------------------------------------------------------------------------

ANCHORED_REDUCTIONS = (
    (4, Fraction(5), "1"),
    (7, Fraction(25), "2b"),
    (9, Fraction(5), "3b"),
    (31, Fraction(5**8), "5b"),
    (11, Fraction(5), "4a"),
)


def _anchored_galois(k: int):
    p = 5
    omega = MulCharacter.omega(p)
    mu = lambda y: MulCharacter.mu(p, y)  # noqa: E731
    return {
        4: canonical_rho(2, MulCharacter.trivial(p)),
        7: SplitSum.of(omega * mu(2), omega * mu(3)),
        9: SplitSum.of(MulCharacter.omega(p, 3) * mu(3), omega * mu(2)),
        31: SplitSum.of(omega * mu(2), omega * mu(3)),
        11: ind_omega2(2, p=p),
    }[k]


def _table_conditions(p: int, k: int, val: Fraction) -> list[str]:
    bound = (k - 2) // (p - 1)
    conditions = {
        "1": 2 <= k <= p + 1,
        "2a": k == p + 2 and val < 1,
        "2b": k == p + 2 and val >= 1,
        "3a": p + 3 <= k <= 2 * p and val < 1,
        "3b": p + 3 <= k <= 2 * p and val == 1,
        "3c": p + 3 <= k <= 2 * p and val > 1,
        "4": k == 2 * p + 1 and p != 2,
        "5a": k >= 2 * p + 2 and val > bound and (k - 1) % (p + 1) != 0,
        "5b": k >= 2 * p + 2 and val > bound and (k - 1) % (p + 1) == 0,
    }
    return [label for label, holds in conditions.items() if holds]


def _fired_case(p: int, k: int, val: Fraction) -> list[str]:
    try:
        return [table_case(p, k, val)]
    except OutOfTableRange:
        return []


def _galois_reps(p: int) -> list:
    chars = characters(p)
    irreducible = dict.fromkeys(canonical_rho(r, chi) for r in range(p) for chi in chars)
    split = dict.fromkeys(SplitSum.of(c1, c2) for c1, c2 in combinations_with_replacement(chars, 2))
    return [*irreducible, *split]


def _corresp_suite(config: RunConfig, rec: Recorder, rng: np.random.Generator, shard: int, shards: int):
    p = config.p
    omega = MulCharacter.omega(p)

    for v in _galois_reps(p)[shard::shards]:
        tag = f"{v}"
        rec.attempt("round_trip", tag, lambda: gl2_to_galois(galois_to_gl2(v)) == v)
        rec.attempt(
            "central_characters",
            tag,
            lambda: all(atom.central_character() == v.det() / omega for atom in galois_to_gl2(v)),
        )
        if isinstance(v, SplitSum):
            c1, c2 = v.chars
            rec.attempt(
                "swap_invariance",
                tag,
                lambda: galois_to_gl2_factored(c1, c2) == galois_to_gl2_factored(c2, c1) == galois_to_gl2(v),
            )

    if shard != 0:
        return
    for k, ap, label in ANCHORED_REDUCTIONS:
        params = CrystallineParams(5, k, ap=PadicScalar.from_rational(5, ap))

        def anchored(params=params, k=k, label=label) -> bool:
            result = reduce_crystalline(params)
            return result.case == label and result.galois == _anchored_galois(k) and result.gl2 == galois_to_gl2(result.galois)

        rec.attempt("anchored_reductions", f"p = 5, k = {k}, a_p = {ap}", anchored)

    for k in range(2, 3 * p + 1):
        top = (k - 2) // (p - 1) + 2
        for steps in range(1, 2 * top + 1):
            val = Fraction(steps, 2)
            expected = _table_conditions(p, k, val)
            fired = _fired_case(p, k, val)
            rec.check(
                "table_partition",
                len(expected) <= 1 and fired == expected,
                f"k = {k}, val = {val}: table gives {fired}, conditions give {expected}",
            )

    for q in (3, 5, 7):
        for k in range(2, q + 2):
            zero = CrystallineParams(q, k, ap=PadicScalar.from_rational(q, 0))
            rec.attempt(
                "breuil_consistency",
                f"p = {q}, k = {k}",
                lambda: reduce_crystalline(zero).gl2 == breuil_modp_datum(k, q),
            )


# ---------------------------------------------------------------------------
# running and reporting
# ---------------------------------------------------------------------------

SUITE_RUNNERS: Dict[str, Callable[..., None]] = {
    "series": _series_suite,
    "tower": _tower_suite,
    "amice": _amice_suite,
    "reps": _reps_suite,
    "corresp": _corresp_suite,
}


def run_suite(name: str, config: RunConfig, shard: int = 0, shards: int = 1) -> List[PropertyResult]:
    if name not in SUITE_RUNNERS:
        raise ValueError(f"Unknown suite: {name}")
    rec = Recorder(name)
    rng = np.random.default_rng([config.seed, shard, list(SUITE_RUNNERS).index(name)])
    logger.debug(f"Suite {name}: shard {shard + 1}/{shards} starting")
    SUITE_RUNNERS[name](config, rec, rng, shard, shards)
    return rec.to_list()


def _run_shard(config: RunConfig, shard: int, shards: int) -> List[PropertyResult]:
    results: List[PropertyResult] = []
    for name in config.suites:
        results.extend(run_suite(name, config, shard, shards))
    return results


async def _run_sharded(config: RunConfig) -> List[List[PropertyResult]]:
    shards = config.workers
    return await asyncio.gather(*(asyncio.to_thread(_run_shard, config, shard, shards) for shard in range(shards)))


def _merge(shard_results: List[List[PropertyResult]]) -> List[PropertyResult]:
    merged: Dict[tuple[str, str], PropertyResult] = {}
    for results in shard_results:
        for result in results:
            key = (result.suite, result.name)
            if key not in merged:
                merged[key] = PropertyResult(result.suite, result.name)
            merged[key].merge(result)
    return list(merged.values())


def run_suites(config: RunConfig) -> Dict[str, Any]:
    logger.info(f"Running suites {', '.join(config.suites)} for p = {config.p} on {config.workers} worker(s)")
    if config.workers > 1:
        shard_results = asyncio.run(_run_sharded(config))
    else:
        shard_results = [_run_shard(config, 0, 1)]
    report = summarize_results(_merge(shard_results))
    report["config"] = {
        "p": config.p,
        "m": config.m,
        "precision": config.precision,
        "depth": config.depth,
        "level": config.level,
        "seed": config.seed,
        "samples": config.samples,
        "workers": config.workers,
        "suites": list(config.suites),
    }
    logger.info(f"Suites finished with {report['summary']['violations']} violation(s)")
    return report


def summarize_results(results: List[PropertyResult]) -> Dict[str, Any]:
    totals = {"passed": 0, "failed": 0, "violations": 0}
    by_suite: Dict[str, Dict[str, int]] = {}

    for result in results:
        bucket = "passed" if result.passed else "failed"
        totals[bucket] += 1
        totals["violations"] += result.failed

        suite_counts = by_suite.setdefault(result.suite, {"passed": 0, "failed": 0, "checked": 0})
        suite_counts[bucket] += 1
        suite_counts["checked"] += result.checked

    return {
        "schema": REPORT_SCHEMA,
        "summary": {
            "total": len(results),
            "passed": totals["passed"],
            "failed": totals["failed"],
            "violations": totals["violations"],
        },
        "by_suite": by_suite,
        "results": [
            {
                "suite": result.suite,
                "name": result.name,
                "passed": result.passed,
                "checked": result.checked,
                "failed": result.failed,
                "skipped": result.skipped,
                "failures": result.failures,
            }
            for result in results
        ],
    }


def print_summary(report: Dict[str, Any], stream=None) -> None:
    stream = stream or sys.stderr
    summary = report["summary"]
    print(
        f"Property checks: {summary['passed']}/{summary['total']} properties passed, "
        f"{summary['violations']} violation(s)",
        file=stream,
    )
    print("", file=stream)
    print("By suite:", file=stream)
    for suite, counts in sorted(report["by_suite"].items()):
        total = counts["passed"] + counts["failed"]
        print(f"  {suite}: {counts['passed']}/{total} passed over {counts['checked']} checks", file=stream)
    failures = [item for item in report["results"] if not item["passed"]]
    if not failures:
        return
    print("", file=stream)
    print("Failures:", file=stream)
    for item in failures:
        print(f"  {item['suite']}/{item['name']}: {item['failed']}/{item['checked']} failed", file=stream)
        for failure in item["failures"]:
            print(f"    {failure}", file=stream)
