"""The field ordinals chi_r and their sums chi_h.

chi_{u^n} = [p^(w^k * u^(n-1))] with k the number of primes below u; these
are exactly the subfields of [w^w^w]. For a composite h, chi_h (the least
element whose minimal polynomial has degree divisible by h) is a sum of
chi_r over the prime powers r in Q(h).
"""
import logging
from math import gcd
from typing import List, Tuple

from sympy import factorint, isprime, multiplicity, n_order, primerange

from onp.arithmetic import engine
from onp.arithmetic.context import Context
from onp.core.errors import MalformedInputError
from onp.ordinals.element import Element, element_to_ordinal
from onp.ordinals.ordinal import Ordinal

logger = logging.getLogger(__name__)


def _check_prime(u: int) -> None:
    if not isprime(u):
        raise MalformedInputError(f"{u} is not a prime")


def chi_generator(u: int, n: int) -> Element:
    """chi_{u^n} as the single-generator Element."""
    _check_prime(u)
    if n < 1:
        raise MalformedInputError(f"chi_{u}^{n}: exponent must be positive")
    return Element.generator(u, n)


def chi_prime_power(u: int, n: int, ctx: Context) -> Ordinal:
    """The ordinal [p^(w^k * u^(n-1))]."""
    return element_to_ordinal(chi_generator(u, n), ctx)


def f_of(u: int, ctx: Context) -> int:
    """Multiplicative order of p mod u: the degree of a primitive u-th root of unity."""
    _check_prime(u)
    if u == ctx.p:
        raise MalformedInputError(f"f(u) is undefined for u = p = {u}")
    return int(n_order(ctx.p, u))


def chi_h(h: int, ctx: Context) -> Tuple[Element, Tuple[int, ...]]:
    """chi_h and Q(h).

    With u the smallest prime of h, r the full power of u in h and g = h/r:
    chi_h = chi_g when r divides d(chi_g), otherwise chi_g + chi_r.

    Args:
        h: Positive natural number.
        ctx: Field context.

    Returns:
        (chi_h as an Element, Q(h) ordered by decreasing prime).
    """
    if h < 1:
        raise MalformedInputError(f"chi_h needs h >= 1, got {h}")
    cached = ctx.chi_cache.get(h)
    if cached is not None:
        return cached
    if h == 1:
        return ctx.remember(ctx.chi_cache, h, (Element.zero(), ()))

    u = min(factorint(h))
    n = multiplicity(u, h)
    r = u ** n
    g = h // r
    if g == 1:
        result = (chi_generator(u, n), (r,))
    else:
        chi_g, q_g = chi_h(g, ctx)
        if engine.degree(chi_g, ctx) % r == 0:
            result = (chi_g, q_g)
        else:
            result = (engine.add(chi_g, chi_generator(u, n), ctx), q_g + (r,))
    logger.debug(f"p={ctx.p}: Q({h}) = {list(result[1])}")
    return ctx.remember(ctx.chi_cache, h, result)


def q_set(h: int, ctx: Context) -> Tuple[int, ...]:
    return chi_h(h, ctx)[1]


def u_part(u: int, N: int) -> int:
    """The a with u^a || N."""
    if N < 1:
        raise MalformedInputError(f"u_part needs N >= 1, got {N}")
    return int(multiplicity(u, N))


def theoretical_degree(u: int, n: int, ctx: Context) -> int:
    """d(chi_{u^n}) predicted from alpha_u: d(alpha_u)*u^n, or p^n when u = p."""
    _check_prime(u)
    if u == ctx.p:
        return ctx.p ** n
    from onp.structure.alpha import alpha_u

    return engine.degree(alpha_u(u, ctx).alpha, ctx) * u ** n


def first_field_chain(p: int, count: int, ctx: Context, max_prime: int = 2) -> List[Ordinal]:
    """The fields chi_{u^1} .. chi_{u^count} for every prime u <= max_prime, increasing."""
    if p != ctx.p:
        raise MalformedInputError(f"context has p={ctx.p}, asked for p={p}")
    chain = [chi_prime_power(u, n, ctx) for u in primerange(2, max_prime + 1) for n in range(1, count + 1)]
    return sorted(chain)


def coprime_decomposition_holds(h: int, ctx: Context) -> bool:
    """Every r in Q(h) divides h and is coprime to h/r."""
    return all(h % r == 0 and gcd(r, h // r) == 1 for r in q_set(h, ctx))


def degree_of_sums_holds(beta: Element, gamma: Element, ctx: Context) -> bool:
    """A prime power r dividing d(beta) but not d(gamma) divides d(beta + gamma) and d(beta - gamma)."""
    d_gamma = engine.degree(gamma, ctx)
    powers = [
        u ** n
        for u, e in factorint(engine.degree(beta, ctx)).items()
        for n in range(1, e + 1)
        if d_gamma % u ** n
    ]
    if not powers:
        return True
    d_sum = engine.degree(engine.add(beta, gamma, ctx), ctx)
    d_difference = engine.degree(engine.sub(beta, gamma, ctx), ctx)
    return all(d_sum % r == 0 and d_difference % r == 0 for r in powers)


__all__ = [
    "chi_generator",
    "chi_prime_power",
    "f_of",
    "chi_h",
    "q_set",
    "u_part",
    "theoretical_degree",
    "first_field_chain",
    "coprime_decomposition_holds",
    "degree_of_sums_holds",
]
