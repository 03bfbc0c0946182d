"""Field-element view of ordinals below [w^w^w].

Every group [p^delta] factors as a product of generators chi_{u^n}: the
count c_k at w^k in delta, written in base u (u the k-th prime), gives the
generator exponents. An Element is therefore a finite sum of reduced
monomials with coefficients in 1..p-1.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Mapping, NamedTuple, Optional, Tuple, TYPE_CHECKING

from sympy import prime, primepi

from onp.core.errors import MalformedInputError
from onp.ordinals.ordinal import ExpOrdinal, Ordinal

if TYPE_CHECKING:
    from onp.arithmetic.context import Context


class GeneratorId(NamedTuple):
    """chi_{u^n} = [p^(w^k * u^(n-1))], k the number of primes below u."""

    u: int
    n: int


# ((GeneratorId, exponent), ...) sorted by decreasing generator; () is the identity.
Monomial = Tuple[Tuple[GeneratorId, int], ...]

ONE_MONOMIAL: Monomial = ()


class Element:
    """Finite map Monomial -> coefficient in 1..p-1. Treated as immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        self.terms: Dict[Monomial, int] = {m: c for m, c in (terms or {}).items() if c}
        self._hash: Optional[int] = None

    @classmethod
    def _wrap(cls, terms: Dict[Monomial, int]) -> "Element":
        """Adopt `terms` without copying; caller guarantees no zero coefficients."""
        element = cls.__new__(cls)
        element.terms = terms
        element._hash = None
        return element

    @classmethod
    def zero(cls) -> "Element":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "Element":
        return cls._wrap({ONE_MONOMIAL: 1})

    @classmethod
    def scalar(cls, c: int, p: int) -> "Element":
        c %= p
        return cls._wrap({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def generator(cls, u: int, n: int, exponent: int = 1) -> "Element":
        if not 1 <= exponent < u:
            raise MalformedInputError(f"exponent {exponent} of chi_{u}^{n} must lie in 1..{u - 1}")
        return cls._wrap({((GeneratorId(u, n), exponent),): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def generators(self) -> Iterable[GeneratorId]:
        seen = set()
        for monomial in self.terms:
            for g, _ in monomial:
                if g not in seen:
                    seen.add(g)
                    yield g

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        parts = []
        for monomial, c in sorted(self.terms.items(), reverse=True):
            body = "*".join(f"chi({g.u}^{g.n})" + (f"^{e}" if e > 1 else "") for g, e in monomial) or "1"
            parts.append(body if c == 1 else f"{c}*{body}")
        return f"Element({' + '.join(parts) or '0'})"


def make_monomial(exponents: Mapping[GeneratorId, int]) -> Monomial:
    """Canonical monomial from a generator -> exponent map (zero exponents dropped)."""
    return tuple(sorted(((g, e) for g, e in exponents.items() if e), reverse=True))


@lru_cache(maxsize=None)
def prime_at(k: int) -> int:
    """The k-th prime, counting from k=0 -> 2."""
    return int(prime(k + 1))


@lru_cache(maxsize=None)
def prime_index(u: int) -> int:
    """Number of primes below the prime u."""
    return int(primepi(u)) - 1


@lru_cache(maxsize=65536)
def exponent_to_monomial(delta: ExpOrdinal) -> Monomial:
    exponents: Dict[GeneratorId, int] = {}
    for k, count in delta.terms:
        u = prime_at(k)
        n = 1
        while count:
            count, e = divmod(count, u)
            if e:
                exponents[GeneratorId(u, n)] = e
            n += 1
    return make_monomial(exponents)


@lru_cache(maxsize=65536)
def monomial_to_exponent(monomial: Monomial) -> ExpOrdinal:
    counts: Dict[int, int] = {}
    for g, e in monomial:
        k = prime_index(g.u)
        counts[k] = counts.get(k, 0) + e * g.u ** (g.n - 1)
    return ExpOrdinal.from_counts(counts)


def ordinal_to_element(o: Ordinal, ctx: "Context") -> Element:
    """Element whose monomials are the base-u digit decompositions of each delta."""
    if o.p != ctx.p:
        raise MalformedInputError(f"ordinal is expanded in base {o.p}, context has p={ctx.p}")
    terms: Dict[Monomial, int] = {}
    for delta, digit in o.digits:
        if not 0 < digit < ctx.p:
            raise MalformedInputError(f"digit {digit} is not in 1..{ctx.p - 1}")
        terms[exponent_to_monomial(delta)] = digit
    return Element._wrap(terms)


def element_to_ordinal(e: Element, ctx: "Context") -> Ordinal:
    """Inverse of ordinal_to_element; digits emitted in decreasing delta."""
    digits = tuple(sorted(((monomial_to_exponent(m), c) for m, c in e.terms.items()), reverse=True))
    return Ordinal(digits, ctx.p)


def int_to_element(n: int, ctx: "Context") -> Element:
    return ordinal_to_element(Ordinal.from_int(n, ctx.p), ctx)


def element_to_int(e: Element, ctx: "Context") -> int:
    return element_to_ordinal(e, ctx).to_int()
