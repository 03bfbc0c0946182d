"""Field operations of On_p below [w^w^w].

Addition is digit-wise mod p. Multiplication is the bilinear extension of
monomial products: exponents are merged and any generator whose exponent
reaches its u is rewritten with `reduce_generator_power`, largest generator
first, until every exponent is below u.
"""
from __future__ import annotations

import logging
from typing import Dict

from sympy import factorint, isprime

from onp.arithmetic import usage
from onp.arithmetic.context import Context
from onp.core.errors import MalformedInputError, ResourceLimitError, ZeroElementError
from onp.ordinals.element import (
    Element,
    GeneratorId,
    Monomial,
    ONE_MONOMIAL,
    make_monomial,
)

logger = logging.getLogger(__name__)

Terms = Dict[Monomial, int]


# Addition


def add(a: Element, b: Element, ctx: Context) -> Element:
    """Monomial-wise coefficient addition mod p."""
    p = ctx.p
    terms = dict(a.terms)
    for monomial, c in b.terms.items():
        s = (terms.get(monomial, 0) + c) % p
        if s:
            terms[monomial] = s
        else:
            terms.pop(monomial, None)
    return Element._wrap(terms)


def negate(a: Element, ctx: Context) -> Element:
    p = ctx.p
    return Element._wrap({m: p - c for m, c in a.terms.items()})


def sub(a: Element, b: Element, ctx: Context) -> Element:
    return add(a, negate(b, ctx), ctx)


def scalar(c: int, a: Element, ctx: Context) -> Element:
    """c*a for c in the prime field."""
    p = ctx.p
    c %= p
    if not c:
        return Element.zero()
    return Element._wrap({m: (c * k) % p for m, k in a.terms.items()})


# Multiplication


def mul(a: Element, b: Element, ctx: Context) -> Element:
    usage.record("multiplications")
    return Element._wrap(_mul_terms(a.terms, b.terms, ctx))


def _mul_terms(a: Terms, b: Terms, ctx: Context) -> Terms:
    p = ctx.p
    acc: Terms = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            c = c1 * c2
            for m, k in _monomial_product(m1, m2, ctx).items():
                acc[m] = (acc.get(m, 0) + c * k) % p
    return {m: c for m, c in acc.items() if c}


def _monomial_product(m1: Monomial, m2: Monomial, ctx: Context) -> Terms:
    if not m1:
        return {m2: 1}
    if not m2:
        return {m1: 1}
    key = (m1, m2) if m1 <= m2 else (m2, m1)
    cached = ctx.monomial_cache.get(key)
    if cached is not None:
        return cached
    usage.record("monomial_cache_misses")
    exponents = dict(m1)
    for g, e in m2:
        exponents[g] = exponents.get(g, 0) + e
    return ctx.remember(ctx.monomial_cache, key, _reduce_exponents(exponents, ctx))


def _reduce_exponents(exponents: Dict[GeneratorId, int], ctx: Context) -> Terms:
    overflow = [g for g, e in exponents.items() if e >= g.u]
    if not overflow:
        return {make_monomial(exponents): 1}
    g = max(overflow)
    rest = dict(exponents)
    rest[g] -= g.u
    base = _reduce_exponents(rest, ctx)
    return _mul_terms(base, reduce_generator_power(g, ctx).terms, ctx)


def reduce_generator_power(g: GeneratorId, ctx: Context) -> Element:
    """chi_{u^n}^u as an Element.

    u != p, n = 1   -> alpha_u
    u != p, n >= 2  -> chi_{u^(n-1)}, except chi_4^2 = chi_2 + 1 when p = 3 mod 4
    u == p, n = 1   -> chi_p + 1
    u == p, n >= 2  -> chi_{p^n} + prod_{k<n} chi_{p^k}^(p-1)
    """
    cached = ctx.generator_power_cache.get(g)
    if cached is not None:
        return cached
    u, n = g
    p = ctx.p
    if n < 1 or not isprime(u):
        raise MalformedInputError(f"invalid generator chi_{u}^{n}")
    if u != p:
        if n == 1:
            from onp.structure.alpha import alpha_u

            result = alpha_u(u, ctx).alpha
        elif u == 2 and n == 2 and p % 4 == 3:
            result = add(Element.generator(2, 1), Element.one(), ctx)
        else:
            result = Element.generator(u, n - 1)
    else:
        tail = Element.one()
        if n > 1:
            tail = Element._wrap({make_monomial({GeneratorId(p, k): p - 1 for k in range(1, n)}): 1})
        result = add(Element.generator(p, n), tail, ctx)
    return ctx.remember(ctx.generator_power_cache, g, result)


# Powers and derived maps


def power(a: Element, N: int, ctx: Context) -> Element:
    """a^N by square-and-multiply; a^0 = 1."""
    if N < 0:
        raise MalformedInputError("negative exponents: use inverse() first")
    result: Terms = {ONE_MONOMIAL: 1}
    base = a.terms
    while N:
        if N & 1:
            result = _mul_terms(result, base, ctx)
        N >>= 1
        if N:
            base = _mul_terms(base, base, ctx)
    usage.record("multiplications")
    return Element._wrap(result)


def frobenius(a: Element, ctx: Context) -> Element:
    """x -> x^p."""
    return power(a, ctx.p, ctx)


def degree(a: Element, ctx: Context) -> int:
    """Degree of the minimal polynomial over F_p: least m >= 1 with Frob^m(a) = a."""
    cached = ctx.degree_cache.get(a)
    if cached is not None:
        return cached
    cap = ctx.settings.degree_cap
    x = frobenius(a, ctx)
    m = 1
    while x != a:
        if m >= cap:
            raise ResourceLimitError(f"degree iteration exceeded cap {cap}")
        x = frobenius(x, ctx)
        m += 1
    return ctx.remember(ctx.degree_cache, a, m)


def multiplicative_order(a: Element, ctx: Context) -> int:
    """ord(a): peel prime factors off p^degree(a) - 1."""
    if a.is_zero():
        raise ZeroElementError("zero has no multiplicative order")
    one = Element.one()
    order = ctx.p ** degree(a, ctx) - 1
    for q, e in sorted(factorint(order).items()):
        for _ in range(e):
            if power(a, order // q, ctx) == one:
                order //= q
            else:
                break
    return order


def inverse(a: Element, ctx: Context) -> Element:
    if a.is_zero():
        raise ZeroElementError("zero has no inverse")
    return power(a, ctx.p ** degree(a, ctx) - 2, ctx)


def divide(a: Element, b: Element, ctx: Context) -> Element:
    return mul(a, inverse(b, ctx), ctx)


def p_th_root(a: Element, ctx: Context) -> Element:
    """The unique b with b^p = a."""
    return power(a, ctx.p ** (degree(a, ctx) - 1), ctx)


def minimal_field_size(a: Element, ctx: Context) -> int:
    return ctx.p ** degree(a, ctx)


__all__ = [
    "add",
    "negate",
    "sub",
    "scalar",
    "mul",
    "reduce_generator_power",
    "power",
    "frobenius",
    "degree",
    "multiplicative_order",
    "inverse",
    "divide",
    "p_th_root",
    "minimal_field_size",
]
