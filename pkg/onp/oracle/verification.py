"""Verification suites run by the `verify` command.

Every suite returns a SuiteResult. All suites gate the exit status except
`conjecture`, which only reports.
"""
import logging
import random
import time
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import primerange

from onp.arithmetic import engine
from onp.arithmetic.context import Context
from onp.arithmetic.usage import usage_tracker
from onp.core.errors import MalformedInputError, OnpError
from onp.models.schemas import CacheMetrics, SuiteResult, VerificationReport
from onp.ordinals.element import Element, GeneratorId, element_to_ordinal, make_monomial, ordinal_to_element
from onp.ordinals.notation import ORDINAL, evaluate, parse
from onp.ordinals.ordinal import ExpOrdinal, Ordinal
from onp.oracle import genetic, tower
from onp.structure import alpha, chi

logger = logging.getLogger(__name__)

SUITES = (
    "tower-equivalence",
    "mex-bounds",
    "conjecture",
    "addition-oracle",
    "axioms",
    "identities",
    "structure",
    "analytics",
)
REPORT_ONLY = {"conjecture"}

TOWER_SIZES = {2: 16, 3: 81, 5: 25, 7: 49}

# (field-mode expression, expected value in ordinal notation)
WORKED_IDENTITIES: Dict[int, List[Tuple[str, str]]] = {
    2: [
        ("4*4+3", "5"),
        ("2^2", "3"),
        ("4^2", "6"),
        ("16^2", "24"),
        ("256^2", "384"),
        ("w^3", "2"),
        ("[w^3]^3", "w"),
    ],
    3: [
        ("22+19", "14"),
        ("3^2", "2"),
        ("4*4", "6"),
        ("9^2", "4"),
        ("81^2", "9"),
        ("6561^2", "81"),
        ("w^3", "w+1"),
        ("[w^3]^3", "w^3+w^2"),
        ("[w^9]^3", "w^9+w^8"),
        ("[w^w]^5", "10"),
    ],
}

MAX_FAILURES = 10


def digitwise_add_ordinals(a: Ordinal, b: Ordinal) -> Ordinal:
    """Base-p addition without carrying, straight from the digit maps."""
    if a.p != b.p:
        raise MalformedInputError("ordinals expanded in different bases")
    digits = dict(a.digits)
    for delta, digit in b.digits:
        digits[delta] = (digits.get(delta, 0) + digit) % a.p
    return Ordinal.from_digits(digits, a.p)


def random_ordinal(rng: random.Random, p: int, max_k: int, max_count: int, density: float = 0.5) -> Ordinal:
    """Random ordinal whose exponents delta have w-powers below max_k and counts below max_count."""
    digits = {}
    for counts in _exponent_grid(max_k, max_count):
        if rng.random() < density:
            digits[ExpOrdinal.from_counts(counts)] = rng.randrange(1, p)
    return Ordinal.from_digits(digits, p)


def _exponent_grid(max_k: int, max_count: int):
    def build(k: int):
        if k < 0:
            yield {}
            return
        for rest in build(k - 1):
            for c in range(max_count):
                yield {**rest, k: c}

    yield from build(max_k - 1)


class VerificationService:
    """Runs the verification suites against one Context."""

    def __init__(self, ctx: Context, seed: Optional[int] = None, samples: Optional[int] = None):
        """Initialize the service.

        Args:
            ctx: Context whose p is verified.
            seed: Random seed for sampled suites. Defaults to settings.random_seed.
            samples: Sample count for sampled suites. Defaults to settings.sample_count.
        """
        self.ctx = ctx
        self.seed = ctx.settings.random_seed if seed is None else seed
        self.samples = ctx.settings.sample_count if samples is None else samples
        self._suites: Dict[str, Callable[..., SuiteResult]] = {
            "tower-equivalence": self.tower_equivalence,
            "mex-bounds": self.mex_bounds,
            "conjecture": self.conjecture,
            "addition-oracle": self.addition_oracle,
            "axioms": self.axioms,
            "identities": self.identities,
            "structure": self.structure,
            "analytics": self.analytics,
        }

    @property
    def p(self) -> int:
        return self.ctx.p

    def _rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{self.p}:{salt}")

    def _result(self, suite: str, checked: int, failures: List[str], started: float, **stats) -> SuiteResult:
        gating = suite not in REPORT_ONLY
        result = SuiteResult(
            suite=suite,
            p=self.p,
            passed=not failures if gating else True,
            gating=gating,
            checked=checked,
            failures=failures[:MAX_FAILURES],
            stats=stats,
            elapsed_seconds=round(time.perf_counter() - started, 3),
        )
        logger.info(
            f"p={self.p}: suite {suite} {'passed' if result.passed else 'FAILED'} "
            f"({checked} checks, {len(failures)} failures, {result.elapsed_seconds}s)"
        )
        return result

    def run(self, suite: str, cap: Optional[int] = None) -> SuiteResult:
        """Run one suite by name."""
        if suite not in self._suites:
            raise MalformedInputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
        return self._suites[suite](cap=cap)

    def run_all(self, suites: Sequence[str], cap: Optional[int] = None) -> VerificationReport:
        usage_tracker.reset()
        results = [self.run(suite, cap=cap) for suite in suites]
        return VerificationReport(
            p=self.p,
            results=results,
            passed=all(r.passed for r in results if r.gating),
            usage=usage_tracker.get_full_report(),
            cache=cache_metrics(self.ctx),
        )

    # Suites

    def tower_equivalence(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        size = cap or TOWER_SIZES.get(self.p, self.p ** 2)
        field = tower.build_tower(self.p, size, self.ctx.settings)
        failures = [f"tower axiom: {f}" for f in field.check_axioms()]
        mismatches = tower.compare_with_engine(field, self.ctx)
        failures += [f"{a}{op}{b}: tower {t}, engine {e}" for op, a, b, t, e in mismatches]
        return self._result(
            "tower-equivalence",
            size * (size + 1),
            failures,
            started,
            size=size,
            steps=[[n, list(h)] for n, h in field.history],
        )

    def mex_bounds(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        cap = cap or 32
        report = genetic.check_lower_bounds(cap, self.ctx)
        failures = [f"{a}+{b} below its mex bound" for a, b in report.add_violations]
        failures += [f"{a}*{b} below its mex bound" for a, b in report.mul_violations]
        instances = genetic.field_power_pair_instances(self.p, self.ctx)
        failures += [f"{{{a}, {b}}} lacks the MEX property" for a, b, holds in instances if not holds]
        stats = {
            "add_equalities": report.add_equalities,
            "mul_equalities": report.mul_equalities,
            "mul_strict": len(report.mul_strict),
            "field_power_pairs": len(instances),
        }
        if report.mul_strict:
            stats["first_strict_pair"] = list(report.mul_strict[0])
        return self._result("mex-bounds", report.checked + len(instances), failures, started, **stats)

    def conjecture(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        cap = cap or 81
        groups = genetic.group_ordinals_below(cap, self.p)
        counterexamples = []
        checked = 0
        for i, a in enumerate(groups):
            for b in groups[i:]:
                checked += 1
                if not genetic.has_mex_property(a, b, self.ctx):
                    counterexamples.append(f"groups {{{a}, {b}}} lack the MEX property")
        return self._result(
            "conjecture", checked, counterexamples, started, groups=groups, counterexamples=len(counterexamples)
        )

    def addition_oracle(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        rng = self._rng("addition")
        count = cap or 10 * self.samples
        failures = []
        for _ in range(count):
            a = random_ordinal(rng, self.p, 2, 6)
            b = random_ordinal(rng, self.p, 2, 6)
            got = element_to_ordinal(
                engine.add(ordinal_to_element(a, self.ctx), ordinal_to_element(b, self.ctx), self.ctx), self.ctx
            )
            if got != digitwise_add_ordinals(a, b):
                failures.append(f"{a} + {b}")
        return self._result("addition-oracle", count, failures, started)

    def _sample_elements(self, rng: random.Random, count: int) -> List[Element]:
        """Elements below chi_16 (finite) and below chi_9 (w-powers up to w*2), mixed."""
        elements = []
        for i in range(count):
            if i % 2:
                o = Ordinal.from_int(rng.randrange(self.p ** 8), self.p)
            else:
                o = random_ordinal(rng, self.p, 2, 3, density=0.3)
            elements.append(ordinal_to_element(o, self.ctx))
        return elements

    def axioms(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        ctx = self.ctx
        rng = self._rng("axioms")
        count = cap or self.samples
        zero, one = Element.zero(), Element.one()
        failures = []
        pool = self._sample_elements(rng, 3 * count)
        for i in range(count):
            a, b, c = pool[3 * i], pool[3 * i + 1], pool[3 * i + 2]
            ab = engine.mul(a, b, ctx)
            checks = {
                "add commutes": engine.add(a, b, ctx) == engine.add(b, a, ctx),
                "mul commutes": ab == engine.mul(b, a, ctx),
                "add associates": engine.add(engine.add(a, b, ctx), c, ctx)
                == engine.add(a, engine.add(b, c, ctx), ctx),
                "mul associates": engine.mul(ab, c, ctx) == engine.mul(a, engine.mul(b, c, ctx), ctx),
                "distributes": engine.mul(a, engine.add(b, c, ctx), ctx)
                == engine.add(ab, engine.mul(a, c, ctx), ctx),
                "identities": engine.add(a, zero, ctx) == a and engine.mul(a, one, ctx) == a,
                "additive inverse": engine.add(a, engine.negate(a, ctx), ctx).is_zero(),
                "no zero divisors": a.is_zero() or b.is_zero() or not ab.is_zero(),
            }
            failures += [f"{name}: {a!r}, {b!r}, {c!r}" for name, ok in checks.items() if not ok]
            if i % 10 == 0 and not a.is_zero() and engine.mul(a, engine.inverse(a, ctx), ctx) != one:
                failures.append(f"inverse: {a!r}")
        return self._result("axioms", count, failures, started)

    def identities(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        ctx = self.ctx
        failures = []
        checked = 0
        for expression, expected in WORKED_IDENTITIES.get(self.p, []):
            checked += 1
            got = element_to_ordinal(evaluate(expression, ctx), ctx)
            if got != parse(expected, ctx, mode=ORDINAL):
                failures.append(f"{expression} != {expected}")

        # chi_4^2 is chi_2 + 1 exactly when p = 3 mod 4
        checked += 1
        square = engine.power(Element.generator(2, 2), 2, ctx)
        chi_2 = Element.generator(2, 1)
        expected = engine.add(chi_2, Element.one(), ctx) if self.p % 4 == 3 else chi_2
        if self.p != 2 and square != expected:
            failures.append(f"chi_4^2 = {square!r}")

        # (chi_{p^n})^p = chi_{p^n} + prod_{k<n} chi_{p^k}^(p-1)
        for n in range(1, 4):
            checked += 1
            lhs = engine.power(Element.generator(self.p, n), self.p, ctx)
            tail = Element._wrap({make_monomial({GeneratorId(self.p, k): self.p - 1 for k in range(1, n)}): 1})
            if lhs != engine.add(Element.generator(self.p, n), tail, ctx):
                failures.append(f"(chi_{self.p}^{n})^{self.p} = {lhs!r}")
        return self._result("identities", checked, failures, started)

    def structure(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        ctx = self.ctx
        u_max = cap or 13
        failures = []
        checked = 0
        for u in primerange(2, u_max + 1):
            if u == self.p:
                continue
            checked += 1
            record = alpha.alpha_u(u, ctx)
            if not alpha.verify_alpha_minimality(record, ctx):
                failures.append(f"alpha_{u} is not minimal")
            if engine.degree(record.alpha, ctx) % record.f:
                failures.append(f"d(alpha_{u}) is not a multiple of f({u}) = {record.f}")
            try:
                alpha.alpha_field_sum_excess(record, ctx)
            except OnpError:
                failures.append(f"alpha_{u} - chi_{record.f} is not a natural number")
            if not chi.coprime_decomposition_holds(record.f, ctx):
                failures.append(f"Q({record.f}) is not a coprime decomposition")
            if engine.degree(chi.chi_h(record.f, ctx)[0], ctx) % record.f:
                failures.append(f"d(chi_{record.f}) is not divisible by {record.f}")
            if engine.degree(Element.generator(u, 1), ctx) != chi.theoretical_degree(u, 1, ctx):
                failures.append(f"d(chi_{u}) differs from d(alpha_{u})*{u}")

        rng = self._rng("lte")
        for _ in range(self.samples):
            u = rng.choice(list(primerange(3, 30)))
            s = u * rng.randrange(1, 50) + 1
            n = rng.randrange(1, 200)
            checked += 1
            if chi.u_part(u, s ** n - 1) != chi.u_part(u, n * (s - 1)):
                failures.append(f"valuation of {s}^{n}-1 at {u}")

        pairs = max(1, self.samples // 10)
        pool = self._sample_elements(self._rng("sums"), 2 * pairs)
        for beta, gamma in zip(pool[::2], pool[1::2]):
            checked += 1
            if not chi.degree_of_sums_holds(beta, gamma, ctx):
                failures.append(f"degree of sum: {beta!r}, {gamma!r}")
        return self._result("structure", checked, failures, started, u_max=u_max, degree_of_sum_pairs=pairs)

    def analytics(self, cap: Optional[int] = None) -> SuiteResult:
        started = time.perf_counter()
        ctx = self.ctx
        rng = self._rng("analytics")
        count = cap or max(1, self.samples // 10)
        failures = []
        one = Element.one()
        for a in self._sample_elements(rng, count):
            if a.is_zero():
                continue
            d = engine.degree(a, ctx)
            order = engine.multiplicative_order(a, ctx)
            if (self.p ** d - 1) % order:
                failures.append(f"ord does not divide p^d - 1: {a!r}")
            if engine.power(a, order, ctx) != one:
                failures.append(f"a^ord(a) != 1: {a!r}")
            if engine.degree(engine.frobenius(a, ctx), ctx) != d:
                failures.append(f"Frobenius changes the degree: {a!r}")
            if engine.frobenius(engine.p_th_root(a, ctx), ctx) != a:
                failures.append(f"p-th root: {a!r}")
        return self._result("analytics", count, failures, started)


def cache_metrics(ctx: Context) -> CacheMetrics:
    return CacheMetrics(
        alphas=len(ctx.alpha_cache),
        chis=len(ctx.chi_cache),
        degrees=len(ctx.degree_cache),
        generator_powers=len(ctx.generator_power_cache),
        monomial_products=len(ctx.monomial_cache),
    )


def suite_names(requested: Sequence[str]) -> List[str]:
    """Expand "all" and validate suite names."""
    names: List[str] = []
    for name in requested:
        expanded = SUITES if name == "all" else (name,)
        for suite in expanded:
            if suite not in SUITES:
                raise MalformedInputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
            if suite not in names:
                names.append(suite)
    return names


__all__ = [
    "SUITES",
    "WORKED_IDENTITIES",
    "digitwise_add_ordinals",
    "random_ordinal",
    "VerificationService",
    "cache_metrics",
    "suite_names",
]
