"""mex machinery: the genetic On_2 calculator, MEX sets and lower-bound sweeps.

The genetic definitions

    a + b = mex({a' + b : a' < a} | {a + b' : b' < b})
    a * b = mex({a'b + ab' - a'b' : a' < a, b' < b})

determine On_2 completely. For p >= 3 they give only lower bounds, so here
they serve as an oracle at p = 2 and as a property check elsewhere.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Set, Tuple, Union

import numpy as np

from onp.arithmetic import engine
from onp.arithmetic.context import Context
from onp.config.settings import Settings, settings as default_settings
from onp.core.errors import MalformedInputError, ResourceLimitError
from onp.ordinals.element import element_to_int, int_to_element
from onp.ordinals.ordinal import Ordinal

logger = logging.getLogger(__name__)


def mex(values: Iterable[Union[int, Ordinal]]) -> int:
    """Least ordinal not in a finite set; always a natural number."""
    seen = set()
    for v in values:
        if isinstance(v, Ordinal):
            if not v.is_finite():
                continue
            v = v.to_int()
        seen.add(int(v))
    n = 0
    while n in seen:
        n += 1
    return n


def _array_mex(values: np.ndarray, bound: int) -> int:
    if values.size == 0:
        return 0
    present = np.append(np.bincount(values.ravel(), minlength=bound + 1) > 0, False)
    return int(np.argmin(present))


# Base-p digit arithmetic on naturals, independent of the engine


def digitwise_add(x, y, p: int):
    """No-carry base-p addition; works on ints and numpy arrays."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64))
    x, y = x.copy(), y.copy()
    result = np.zeros_like(x)
    place = 1
    while np.any(x) or np.any(y):
        result += ((x % p + y % p) % p) * place
        x //= p
        y //= p
        place *= p
    return int(result) if result.ndim == 0 else result


def digitwise_negate(x, p: int):
    x = np.asarray(x, dtype=np.int64).copy()
    result = np.zeros_like(x)
    place = 1
    while np.any(x):
        result += ((p - x % p) % p) * place
        x //= p
        place *= p
    return int(result) if result.ndim == 0 else result


# Genetic On_2


@dataclass
class GeneticTables:
    """On_2 addition and multiplication below `bound`, built from the mex rules alone."""

    bound: int
    add_table: np.ndarray
    mul_table: np.ndarray


def _genetic_add(bound: int) -> np.ndarray:
    table = np.zeros((bound, bound), dtype=np.int64)
    for a in range(bound):
        for b in range(a, bound):
            value = _array_mex(np.concatenate((table[:a, b], table[a, :b])), bound)
            table[a, b] = table[b, a] = value
    return table


def _genetic_mul(bound: int, add: np.ndarray) -> np.ndarray:
    neg = np.argmax(add == 0, axis=1)
    table = np.zeros((bound, bound), dtype=np.int64)
    for a in range(1, bound):
        for b in range(1, a + 1):
            options = add[add[table[:a, b][:, None], table[a, :b][None, :]], neg[table[:a, :b]]]
            table[a, b] = table[b, a] = _array_mex(options, bound)
    return table


def field_size_at_least(bound: int) -> int:
    """Least 2^(2^k) >= bound. These are the finite subfields of On_2, the only
    initial segments closed under both genetic operations."""
    size = 2
    while size < bound:
        size *= size
    return size


def genetic_tables(bound: int) -> GeneticTables:
    """Tables for every pair below `bound`, rounded up to the next field size."""
    return _build_tables(field_size_at_least(bound))


@lru_cache(maxsize=8)
def _build_tables(bound: int) -> GeneticTables:
    logger.info(f"Building genetic On_2 tables below {bound}")
    add = _genetic_add(bound)
    return GeneticTables(bound=bound, add_table=add, mul_table=_genetic_mul(bound, add))


def on2_genetic(a: int, b: int, op: str, settings: Optional[Settings] = None) -> int:
    """a+b or a*b in On_2 by the mex definitions.

    Args:
        a, b: Naturals below the genetic cap.
        op: "add" or "mul".
        settings: Supplies `genetic_cap`.
    """
    settings = settings or default_settings
    cap = settings.genetic_cap
    if a < 0 or b < 0:
        raise MalformedInputError("genetic arithmetic is defined on naturals")
    if a >= cap or b >= cap:
        raise ResourceLimitError(f"genetic evaluation of ({a}, {b}) exceeds cap {cap}")
    tables = genetic_tables(max(a, b) + 1)
    if op == "add":
        return int(tables.add_table[a, b])
    if op == "mul":
        return int(tables.mul_table[a, b])
    raise MalformedInputError(f"unknown genetic operation {op!r}")


# MEX sets computed with the engine


def _check_pair(a: int, b: int, ctx: Context) -> None:
    if a < 0 or b < 0:
        raise MalformedInputError("MEX sets are enumerated for naturals")
    cap = ctx.settings.mex_enumeration_cap
    if a * b > cap:
        raise ResourceLimitError(f"MEX set of ({a}, {b}) has {a * b} terms, cap is {cap}")


def mex_set(a: int, b: int, ctx: Context) -> Set[int]:
    """{a'b + ab' - a'b' : a' < a, b' < b} under the engine's operations."""
    _check_pair(a, b, ctx)
    A = int_to_element(a, ctx)
    B = int_to_element(b, ctx)
    result = set()
    for a1 in range(a):
        A1 = int_to_element(a1, ctx)
        A1B = engine.mul(A1, B, ctx)
        for b1 in range(b):
            B1 = int_to_element(b1, ctx)
            value = engine.sub(engine.add(A1B, engine.mul(A, B1, ctx), ctx), engine.mul(A1, B1, ctx), ctx)
            result.add(element_to_int(value, ctx))
    return result


def has_mex_property(a: int, b: int, ctx: Context) -> bool:
    product = element_to_int(engine.mul(int_to_element(a, ctx), int_to_element(b, ctx), ctx), ctx)
    return product == mex(mex_set(a, b, ctx))


def group_ordinals_below(bound: int, p: int) -> List[int]:
    """The groups [p^j] below a finite bound."""
    groups = []
    g = 1
    while g < bound:
        groups.append(g)
        g *= p
    return groups


def field_power_pair_instances(phi: int, ctx: Context, degree: int = 2) -> List[Tuple[int, int, bool]]:
    """MEX checks for the pairs a finite field phi generates in the next field.

    Covers {[phi^i], beta} for beta < phi with [phi^i] inside [phi^degree],
    and {[phi^i], [phi^j]} with i + j <= degree.
    """
    instances = []
    powers = [phi ** i for i in range(degree + 1)]
    for i in range(degree):
        for beta in range(phi):
            instances.append((powers[i], beta, has_mex_property(powers[i], beta, ctx)))
    for i in range(degree + 1):
        for j in range(i, degree + 1 - i):
            instances.append((powers[i], powers[j], has_mex_property(powers[i], powers[j], ctx)))
    return instances


# Lower-bound sweep


@dataclass
class LowerBoundReport:
    """Result of check_lower_bounds; the violation lists are expected to stay empty."""

    cap: int
    checked: int = 0
    add_violations: List[Tuple[int, int]] = field(default_factory=list)
    mul_violations: List[Tuple[int, int]] = field(default_factory=list)
    add_equalities: int = 0
    mul_equalities: int = 0
    mul_strict: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.add_violations and not self.mul_violations


def engine_tables(cap: int, ctx: Context) -> Tuple[np.ndarray, np.ndarray]:
    """Engine addition and multiplication tables for all pairs below `cap`."""
    elements = [int_to_element(a, ctx) for a in range(cap)]
    add = np.zeros((cap, cap), dtype=np.int64)
    mul = np.zeros((cap, cap), dtype=np.int64)
    for a in range(cap):
        for b in range(a, cap):
            add[a, b] = add[b, a] = element_to_int(engine.add(elements[a], elements[b], ctx), ctx)
            mul[a, b] = mul[b, a] = element_to_int(engine.mul(elements[a], elements[b], ctx), ctx)
    return add, mul


def check_lower_bounds(cap: int, ctx: Context) -> LowerBoundReport:
    """Check a+b >= mex{a'+b, a+b'} and ab >= mex(MEX set) for all pairs below `cap`.

    The MEX sets are combined with base-p digit arithmetic rather than the
    engine, so the engine only supplies the products.
    """
    p = ctx.p
    report = LowerBoundReport(cap=cap)
    if cap <= 1:
        return report
    add, mul = engine_tables(cap, ctx)
    bound = int(max(add.max(), mul.max())) + 1
    for a in range(cap):
        for b in range(a, cap):
            report.checked += 1
            add_mex = _array_mex(np.concatenate((add[:a, b], add[a, :b])), bound)
            if add[a, b] < add_mex:
                report.add_violations.append((a, b))
            elif add[a, b] == add_mex:
                report.add_equalities += 1

            if a and b:
                cross = digitwise_add(mul[:a, b][:, None], mul[a, :b][None, :], p)
                options = digitwise_add(cross, digitwise_negate(mul[:a, :b], p), p)
                mul_mex = _array_mex(options, bound)
            else:
                mul_mex = 0
            if mul[a, b] < mul_mex:
                report.mul_violations.append((a, b))
            elif mul[a, b] == mul_mex:
                report.mul_equalities += 1
            else:
                report.mul_strict.append((a, b))
    logger.info(
        f"p={p}: lower bounds below {cap}: {report.checked} pairs, "
        f"{len(report.add_violations) + len(report.mul_violations)} violations"
    )
    return report


__all__ = [
    "mex",
    "digitwise_add",
    "digitwise_negate",
    "GeneticTables",
    "field_size_at_least",
    "genetic_tables",
    "on2_genetic",
    "mex_set",
    "has_mex_property",
    "group_ordinals_below",
    "field_power_pair_instances",
    "LowerBoundReport",
    "engine_tables",
    "check_lower_bounds",
]
