"""
Invariant Suite Pipeline for ordlab.

Runs every property family on balls and seeded random samples for one n and
collects the counterexamples, stage by stage.

Flow:
1. Arithmetic laws in Z[1/n]
2. Group laws and word round trips
3. Affine action, stabilizers and free irrational orbits
4. Cone axioms for all ten cone types
5. Distinctness of the sampled cones
6. Conjugation transport
7. Dynamical realizations
8. Digit reduction, both directions
9. Identification from membership oracles
10. Digit/real coherence

Stages run sequentially so the report is identical for identical inputs.
"""

import logging
import random
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

from sympy.ntheory import n_order

from ..core.action import act, orbit_witness, stabilizer_generator
from ..core.config import SessionConfig, settings
from ..core.errors import BudgetExhaustedError
from ..core.group import ball, conjugate_element, element_text, gen_a, gen_b, inv, is_power_of, mul, power, quotient, word_length
from ..core.models import Membership, PipelineStage, SignResult, StageInfo, SuiteReport, Verdict, Violation
from ..core.numeric import NAdic, coprime_part, nadic_cmp, nadic_sub, nadic_to_rat
from ..core.reals import Quadratic, Rational, compare_to_rat, floor_value
from ..core.words import parse_word
from ..orderings.cones import (
    ConeDescriptor,
    ConeTag,
    cone_axioms_check,
    cone_from_action,
    conjugate,
    member,
    order_compare,
    reverse,
    sample_descriptors,
    ses_cone,
    ses_member,
)
from ..orderings.equivalence import orbit_equivalent_by_digits, reduce, reduction_roundtrip_check
from ..orderings.identification import identify
from ..orderings.realization import (
    build,
    check_free_orbit,
    check_order_embedding,
    partial_act,
    recover_conjugate,
    recover_cone,
)

logger = logging.getLogger(__name__)

MAX_RECORDED = 10

DEFAULT_IRRATIONALS = (Quadratic(0, 1, 2), Quadratic(0, 1, 3))
DEFAULT_RATIONALS = (Fraction(0), Fraction(1, 3), Fraction(5, 6))
STABILIZER_POINTS = (Fraction(0), Fraction(1, 3), Fraction(1, 7), Fraction(5, 6))


class _Stage:
    """Accumulates checks and violations for one StageInfo."""

    def __init__(self, name: str):
        self.info = StageInfo(name=name, status=PipelineStage.RUNNING)
        self.inconclusive = False

    def check(self, ok: bool, kind: str, elements: Iterable = (), detail: str = "") -> None:
        self.info.checked += 1
        if not ok and len(self.info.violations) < MAX_RECORDED:
            self.info.violations.append(Violation(kind=kind, elements=[str(e) for e in elements], detail=detail))

    def finish(self) -> StageInfo:
        if self.info.violations:
            self.info.status = PipelineStage.FAILED
        elif self.inconclusive:
            self.info.status = PipelineStage.INCONCLUSIVE
        else:
            self.info.status = PipelineStage.COMPLETE
        self.info.message = f"{self.info.checked} checks, {len(self.info.violations)} violations recorded"
        return self.info


# =============================================================================
# INVARIANT SUITE PIPELINE
# =============================================================================

class InvariantSuitePipeline:
    """
    The check-all runner.

    Each stage is a method taking a _Stage; run() executes them in order and
    returns a SuiteReport whose status is FAILED as soon as any stage fails.
    """

    def __init__(
        self,
        config: SessionConfig,
        irrationals: Iterable[Quadratic] = DEFAULT_IRRATIONALS,
        rationals: Iterable[Fraction] = DEFAULT_RATIONALS,
        stages: Optional[list[str]] = None,
        log_callback: Optional[Callable[[str], None]] = None,
        progress_callback: Optional[Callable[[float], None]] = None,
    ):
        """
        Initialize the suite.

        Args:
            config: session parameters (n, radius, seed, budget)
            irrationals: base points for the P+ / P- cones
            rationals: base points for the Q cones
            stages: names of the stages to run (all by default)
            log_callback: Function to call with log messages
            progress_callback: Function to call with progress (0-1)
        """
        self.config = config
        self.n = config.n
        self.radius = config.radius
        self.irrationals = list(irrationals)
        self.rationals = [Fraction(x) for x in rationals]
        self.descriptors = sample_descriptors(self.irrationals, self.rationals)

        self._log = log_callback or (lambda x: logger.info(x))
        self._progress = progress_callback or (lambda x: None)

        self._stages = [
            ("numeric", self._numeric),
            ("group", self._group),
            ("action", self._action),
            ("cone_axioms", self._cone_axioms),
            ("distinctness", self._distinctness),
            ("conjugation", self._conjugation),
            ("realization", self._realization),
            ("reduction", self._reduction),
            ("identification", self._identification),
            ("digits", self._digits),
        ]
        if stages is not None:
            unknown = set(stages) - {name for name, _ in self._stages}
            if unknown:
                raise ValueError(f"unknown stages: {', '.join(sorted(unknown))}")
            self._stages = [(name, fn) for name, fn in self._stages if name in stages]

    def run(self) -> SuiteReport:
        """Run every selected stage and collect the report."""
        report = SuiteReport(n=self.n, radius=self.radius, seed=self.config.seed, status=PipelineStage.RUNNING)
        self._log(f"Invariant suite for BS(1,{self.n}), radius {self.radius}, seed {self.config.seed}")

        for index, (name, method) in enumerate(self._stages):
            stage = _Stage(name)
            self._log(f"Checking {name}...")
            try:
                method(stage)
            except BudgetExhaustedError as e:
                stage.inconclusive = True
                stage.info.message = str(e)
                logger.warning(f"{name}: {e}")
            info = stage.finish()
            report.stages.append(info)
            marker = "[OK]" if info.status == PipelineStage.COMPLETE else f"[{info.status.value.upper()}]"
            self._log(f"  {marker} {name}: {info.message}")
            self._progress((index + 1) / len(self._stages))

        if report.violation_count:
            report.status = PipelineStage.FAILED
        elif report.inconclusive:
            report.status = PipelineStage.INCONCLUSIVE
        else:
            report.status = PipelineStage.COMPLETE
        self._log(f"Invariant suite finished: {report.status.value}")
        return report

    # -------------------------------------------------------------------------
    # helpers
    # -------------------------------------------------------------------------

    def _rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.config.seed}:{salt}")

    def _random_nadic(self, rng: random.Random) -> NAdic:
        return NAdic(rng.randint(-60, 60), rng.randint(0, 4), self.n)

    def _random_rational(self, rng: random.Random, max_den: int = 64) -> Fraction:
        return Fraction(rng.randint(-3 * max_den, 3 * max_den), rng.randint(1, max_den))

    def _ball(self, radius: int) -> list:
        return list(ball(min(radius, self.radius), self.n))

    # -------------------------------------------------------------------------
    # stages
    # -------------------------------------------------------------------------

    def _numeric(self, stage: _Stage) -> None:
        rng = self._rng("numeric")
        for _ in range(200):
            x, y, z = (self._random_nadic(rng) for _ in range(3))
            stage.check((x + y) + z == x + (y + z), "associativity", [x, y, z])
            stage.check(x * (y + z) == x * y + x * z, "distributivity", [x, y, z])
            stage.check((x + -x).is_zero() and (x + -x).k == 0, "additive_inverse", [x])
            difference = nadic_to_rat(nadic_sub(x, y))
            stage.check(difference == nadic_to_rat(x) - nadic_to_rat(y), "subtraction", [x, y])
            expected = (difference > 0) - (difference < 0)
            stage.check(nadic_cmp(x, y) == expected, "comparison", [x, y])

    def _group(self, stage: _Stage) -> None:
        rng = self._rng("group")
        sample = self._ball(4)
        for _ in range(200):
            f, g, h = (rng.choice(sample) for _ in range(3))
            stage.check(mul(mul(f, g), h) == mul(f, mul(g, h)), "associativity", [f, g, h])
        a, b = gen_a(self.n), gen_b(self.n)
        stage.check(conjugate_element(a, b) == power(a, self.n), "defining_relation", [a, b])
        small = self._ball(3)
        for g in small:
            stage.check(mul(g, inv(g)).is_identity(), "inverse", [g])
            stage.check(parse_word(element_text(g), self.n) == g, "print_parse", [g])
            for h in small:
                stage.check(quotient(mul(g, h)) == quotient(g) + quotient(h), "quotient_homomorphism", [g, h])

    def _action(self, stage: _Stage) -> None:
        points = [Fraction(0), Fraction(1), Fraction(1, 3), Quadratic(0, 1, 2), Quadratic(Fraction(1, 2), 3, 5)]
        small = self._ball(3)
        for g in small:
            for h in small:
                for x in points:
                    stage.check(act(mul(g, h), x) == act(g, act(h, x)), "action_axiom", [g, h, x])
        samples = [Fraction(0), Fraction(1), Quadratic(0, 1, 2)]
        for g in self._ball(4):
            if not g.is_identity():
                stage.check(any(act(g, x) != x for x in samples), "faithfulness", [g])

        wide = list(ball(6, self.n))
        for x in STABILIZER_POINTS:
            gamma = stabilizer_generator(x, self.n)
            stage.check(act(gamma, x) == x, "stabilizer_fixes", [gamma, x])
            for g in wide:
                in_subgroup = is_power_of(g, gamma) if g.s else g.is_identity()
                stage.check((act(g, x) == x) == in_subgroup, "stabilizer_generates", [g, gamma, x])
        for eps in self.irrationals:
            for g in wide:
                if not g.is_identity():
                    stage.check(act(g, eps) != eps, "free_irrational_orbit", [g, eps])

    def _cone_axioms(self, stage: _Stage) -> None:
        for c in self.descriptors:
            report = cone_axioms_check(c, self.radius, self.n)
            stage.inconclusive |= report.inconclusive
            detail = report.violation.detail if report.violation else ""
            stage.check(report.passed, report.violation.kind if report.violation else "", [c], detail)
            stage.check(reverse(reverse(c)) == c, "reverse_involution", [c])
        for quotient_sign in "+-":
            for kernel_sign in "+-":
                tag = ConeTag(f"Pinf{quotient_sign}{kernel_sign}")
                c = ses_cone(quotient_sign, kernel_sign)
                stage.check(c.tag == tag, "ses_tag", [tag])
                for g in self._ball(3):
                    stage.check(ses_member(quotient_sign, kernel_sign, g) == member(c, g), "ses_member", [tag, g])

    def _distinctness(self, stage: _Stage) -> None:
        # Q cones sharing a base differ only on its stabilizer, whose generator
        # can be longer than the radius (5/6 in BS(1,10))
        generators = [stabilizer_generator(x, self.n) for x in self.rationals]
        elements = list(dict.fromkeys(generators + ball(settings.distinctness_radius, self.n).nontrivial()))
        memo: dict[tuple[int, int], Membership] = {}

        def answer(i: int, j: int) -> Membership:
            if (i, j) not in memo:
                memo[(i, j)] = member(self.descriptors[i], elements[j])
            return memo[(i, j)]

        for i, k in combinations(range(len(self.descriptors)), 2):
            separated = any(answer(i, j) != answer(k, j) for j in range(len(elements)))
            stage.check(separated, "indistinct", [self.descriptors[i], self.descriptors[k]])

    def _conjugation(self, stage: _Stage) -> None:
        sample = self._ball(4)
        for c in self.descriptors:
            for g in sample:
                moved = conjugate(c, g)
                if c.base is not None:
                    stage.check(moved.base == act(g, c.base), "base_transport", [c, g])
                for h in sample:
                    stage.check(member(moved, h) == member(c, conjugate_element(h, g)), "coherence", [c, g, h])
        small = self._ball(2)
        for c in self.descriptors:
            for g in small:
                for h in small:
                    stage.check(conjugate(conjugate(c, h), g) == conjugate(c, mul(g, h)), "left_action", [c, g, h])
        for tag in (ConeTag.PINF_PP, ConeTag.PINF_PM, ConeTag.PINF_MP, ConeTag.PINF_MM):
            c = ConeDescriptor(tag)
            for g in self._ball(6):
                for h in small:
                    stage.check(member(c, h) == member(c, conjugate_element(h, g)), "bi_invariance", [c, g, h])
        for c in self.descriptors:
            for f in small:
                for g in small:
                    for h in small:
                        stage.check(order_compare(c, g, h) == order_compare(c, mul(f, g), mul(f, h)),
                                    "left_invariance", [c, f, g, h])
        for eps in self.rationals:
            c = ConeDescriptor(ConeTag.Q_PP, Rational(eps))
            for g in self._ball(5):
                stage.check(cone_from_action([eps, eps + 1], g) == member(c, g), "cone_from_action", [c, g])

    def _realization(self, stage: _Stage) -> None:
        N = settings.realization_stage
        for c in self.descriptors:
            st = build(c, N, self.n)
            stage.check(st.tags[st.elements[0]] == 0, "origin_tag", [c])
            for violation in check_order_embedding(st):
                stage.check(False, violation.kind, [c, *violation.elements], violation.detail)
            stage.check(check_free_orbit(st).passed, "free_orbit", [c])
            for g in st.elements:
                stage.check(recover_cone(st, g) == member(c, g), "recover_cone", [c, g])
            for g in st.elements:
                for h in st.elements:
                    recovered = recover_conjugate(st, g, h)
                    if recovered is not None:
                        expected = member(conjugate(c, inv(h)), g)
                        stage.check(recovered == expected, "recover_conjugate", [c, g, h])
            ranked = sorted(range(st.N), key=lambda i: st.tags[st.elements[i]])
            for i, j in zip(ranked, ranked[1:]):
                for g in st.elements:
                    left, right = partial_act(st, g, i), partial_act(st, g, j)
                    if left is not None and right is not None:
                        stage.check(left < right, "partial_monotone", [c, g, i, j])

    def _reduction(self, stage: _Stage) -> None:
        rng = self._rng("reduction")
        sample = self._ball(5)
        for _ in range(200):
            x = self._random_rational(rng)
            g = rng.choice(sample)
            report = reduction_roundtrip_check(x, g, self.n)
            stage.check(report.passed, "roundtrip", [x, g], report.detail)
        for _ in range(200):
            x = self._random_rational(rng, 24)
            # half the pairs are related by construction
            y = act(rng.choice(sample), x) if rng.random() < 0.5 else self._random_rational(rng, 24)
            by_action = orbit_witness(x, y, self.n)
            by_digits = orbit_equivalent_by_digits(x, y, self.n)
            agree = isinstance(by_action, Verdict) == isinstance(by_digits, Verdict)
            stage.check(agree, "deciders_disagree", [x, y])
            if not isinstance(by_digits, Verdict):
                stage.check(act(by_digits, x) == y, "digit_witness", [x, y, by_digits])
        for x in (Fraction(1, 3), Fraction(5, 7)):
            for m in range(-3, 4):
                stage.check(reduce(x, self.n) == reduce(x + m, self.n), "translation_invariance", [x, m])

    def _identification(self, stage: _Stage) -> None:
        precision = settings.identify_precision
        for eps in self.irrationals:
            result = identify(ConeDescriptor(ConeTag.P_PLUS, eps), settings.identify_radius, precision, self.n)
            lo, hi = (Fraction(v) for v in result.interval)
            inside = compare_to_rat(eps, lo) is SignResult.POSITIVE and compare_to_rat(eps, hi) is SignResult.NEGATIVE
            stage.check(result.tags == ["P+"] and inside, "identify_irrational", [eps], str(result.interval))
        for eps in self.rationals:
            # the base can only be read off exactly once a stabilizer element is queried
            if word_length(stabilizer_generator(eps, self.n), settings.identify_radius) is None:
                continue
            for tag in (ConeTag.Q_PP, ConeTag.Q_MP):
                c = ConeDescriptor(tag, Rational(eps))
                result = identify(c, settings.identify_radius, precision, self.n)
                nearby = {ConeTag.P_PLUS.value, ConeTag.P_MINUS.value}
                ok = result.exact_base == str(eps) and result.tags[0] == tag.value and set(result.tags[1:]) <= nearby
                stage.check(ok, "identify_rational", [c], f"{result.tags} {result.exact_base}")

    def _digits(self, stage: _Stage) -> None:
        rng = self._rng("digits")
        for _ in range(50):
            x = self._random_rational(rng)
            word = reduce(x, self.n)
            base = floor_value(Rational(x))
            for k in range(0, 65, 8):
                low = base + word.truncate(k)
                stage.check(low <= x < low + Fraction(1, self.n ** k), "truncation_bracket", [x, k])
            q = coprime_part(x.denominator, self.n)
            order = n_order(self.n, q) if q > 1 else 1
            stage.check(order % len(word.period) == 0, "period_divides_order", [x])
        for eps in self.irrationals:
            word = reduce(eps, self.n, 64)
            base = floor_value(eps)
            for k in (8, 32, 64):
                low = base + word.truncate(k)
                high = low + Fraction(1, self.n ** k)
                ok = compare_to_rat(eps, low) is SignResult.POSITIVE and compare_to_rat(eps, high) is SignResult.NEGATIVE
                stage.check(ok, "truncation_bracket", [eps, k])
