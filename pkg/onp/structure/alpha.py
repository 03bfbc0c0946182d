"""The alpha_u solver: chi_u^u = alpha_u for primes u != p.

alpha_u is the least element of chi_u without a u-th root in chi_u. It has
the form [chi_{f(u)} + m], so the search writes chi_{f(u)} = [lambda + m1]
and walks the ordinals [lambda + t] for t = m1, m1 + 1, ... until the first
non-u-th power.
"""
import logging
import time
from dataclasses import dataclass
from math import lcm
from typing import Tuple

from sympy import isprime

from onp.arithmetic import engine, usage
from onp.arithmetic.context import Context
from onp.core.errors import MalformedInputError, ResourceLimitError
from onp.ordinals.element import Element, element_to_ordinal, ordinal_to_element
from onp.structure.chi import chi_h, f_of

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AlphaRecord:
    """One row of the alpha_u table for a fixed p."""

    u: int
    f: int
    Q: Tuple[int, ...]
    excess: int
    alpha: Element


def is_uth_power(beta: Element, u: int, ctx: Context) -> bool:
    """True iff beta has a u-th root inside chi_u.

    The test runs in F_{p^D}, D = lcm(d(beta), f(u)): beta is a u-th power
    there iff beta^((p^D - 1)/u) = 1. Extensions inside chi_u have degrees
    prime to u, so enlarging D further never changes the answer.
    """
    if not isprime(u):
        raise MalformedInputError(f"{u} is not a prime")
    if u == ctx.p:
        raise MalformedInputError(f"every element is a {u}-th power in characteristic {u}")
    if any(g.u >= u for g in beta.generators()):
        raise MalformedInputError(f"element does not lie in chi_{u}")
    if beta.is_zero():
        return True
    usage.record("power_tests")
    D = lcm(engine.degree(beta, ctx), f_of(u, ctx))
    return engine.power(beta, (ctx.p ** D - 1) // u, ctx) == Element.one()


def _scan_start(u: int, ctx: Context):
    f = f_of(u, ctx)
    chi_f, Q = chi_h(f, ctx)
    chi_ordinal = element_to_ordinal(chi_f, ctx)
    return f, Q, chi_ordinal.limit_part(), chi_ordinal.finite_part()


def alpha_u(u: int, ctx: Context) -> AlphaRecord:
    """Solve for alpha_u, memoized per Context.

    Args:
        u: A prime different from p.
        ctx: Field context.

    Returns:
        AlphaRecord with f(u), Q(f(u)), the excess m and alpha_u itself.
    """
    cached = ctx.alpha_cache.get(u)
    if cached is not None:
        usage.record("alpha_cache_hits")
        return cached
    if not isprime(u) or u == ctx.p:
        raise MalformedInputError(f"alpha_u needs a prime u != p, got u={u}, p={ctx.p}")

    started = time.perf_counter()
    usage.record("alpha_scans")
    f, Q, limit, m1 = _scan_start(u, ctx)
    cap = ctx.settings.alpha_scan_cap
    for t in range(m1, m1 + cap):
        candidate = ordinal_to_element(limit.plus_finite(t), ctx)
        logger.debug(f"p={ctx.p} u={u}: testing candidate t={t}")
        if not is_uth_power(candidate, u, ctx):
            record = AlphaRecord(u=u, f=f, Q=Q, excess=t - m1, alpha=candidate)
            logger.info(
                f"p={ctx.p}: alpha_{u} found (f={f}, excess={record.excess}) "
                f"in {time.perf_counter() - started:.2f}s"
            )
            return ctx.remember(ctx.alpha_cache, u, record)
    raise ResourceLimitError(f"alpha_{u} search exceeded {cap} candidates for p={ctx.p}")


def alpha_field_sum_excess(record: AlphaRecord, ctx: Context) -> int:
    """The natural m' with alpha_u = chi_{f(u)} + m' as a field sum."""
    chi_f = chi_h(record.f, ctx)[0]
    return element_to_ordinal(engine.sub(record.alpha, chi_f, ctx), ctx).to_int()


def record_matches_scan(record: AlphaRecord, ctx: Context) -> bool:
    """f, Q and alpha agree with the scan start and the stored excess.

    Costs no power tests; `verify_alpha_minimality` re-runs those.
    """
    if not isprime(record.u) or record.u == ctx.p:
        return False
    f, Q, limit, m1 = _scan_start(record.u, ctx)
    expected = ordinal_to_element(limit.plus_finite(m1 + record.excess), ctx)
    return (record.f, record.Q, record.alpha) == (f, Q, expected)


def verify_alpha_minimality(record: AlphaRecord, ctx: Context) -> bool:
    """Re-check the scan: every earlier candidate is a u-th power and alpha_u is not."""
    _, _, limit, m1 = _scan_start(record.u, ctx)
    for t in range(m1, m1 + record.excess):
        if not is_uth_power(ordinal_to_element(limit.plus_finite(t), ctx), record.u, ctx):
            return False
    return not is_uth_power(record.alpha, record.u, ctx)


__all__ = [
    "AlphaRecord",
    "is_uth_power",
    "alpha_u",
    "alpha_field_sum_excess",
    "record_matches_scan",
    "verify_alpha_minimality",
]
