"""Ordinals below [w^w^w] in canonical base-p expansion.

An Ordinal with prime p is [sum p^delta * a_delta] over finitely many
exponents delta < w^w (ExpOrdinal), digits a_delta in 1..p-1, stored in
decreasing delta. Because both tuples are kept descending, Python tuple
comparison is exactly ordinal comparison.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Tuple

from onp.core.errors import MalformedInputError, OutOfRangeError
from onp.ordinals.cantor import CantorOrdinal


@dataclass(frozen=True, order=True)
class ExpOrdinal:
    """Ordinal below w^w: sum over k of w^k * c_k, stored as ((k, c_k), ...) descending."""

    terms: Tuple[Tuple[int, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> "ExpOrdinal":
        for k, c in counts.items():
            if k < 0 or c < 0:
                raise MalformedInputError(f"invalid exponent term w^{k}*{c}")
        return cls(tuple(sorted(((k, c) for k, c in counts.items() if c), reverse=True)))

    def counts(self) -> Dict[int, int]:
        return dict(self.terms)

    def is_finite(self) -> bool:
        return all(k == 0 for k, _ in self.terms)

    def finite_count(self) -> int:
        """c_0, the natural-number part."""
        if self.terms and self.terms[-1][0] == 0:
            return self.terms[-1][1]
        return 0

    def to_cnf(self) -> CantorOrdinal:
        return CantorOrdinal(tuple((CantorOrdinal.from_int(k), c) for k, c in self.terms))

    @classmethod
    def from_cnf(cls, value: CantorOrdinal) -> "ExpOrdinal":
        terms = []
        for exponent, coefficient in value.terms:
            if not exponent.is_finite():
                raise OutOfRangeError("exponent is not below w^w")
            terms.append((exponent.to_int(), coefficient))
        return cls(tuple(terms))


@dataclass(frozen=True, order=True)
class Ordinal:
    """Base-p expansion ((delta, digit), ...) with strictly decreasing delta."""

    digits: Tuple[Tuple[ExpOrdinal, int], ...]
    p: int

    @classmethod
    def from_digits(cls, digits: Mapping[ExpOrdinal, int], p: int) -> "Ordinal":
        for delta, digit in digits.items():
            if not 0 <= digit < p:
                raise MalformedInputError(f"digit {digit} is not below p={p}")
        return cls(tuple(sorted(((d, a) for d, a in digits.items() if a), reverse=True)), p)

    @classmethod
    def zero(cls, p: int) -> "Ordinal":
        return cls((), p)

    @classmethod
    def from_int(cls, n: int, p: int) -> "Ordinal":
        if n < 0:
            raise MalformedInputError(f"ordinals are non-negative, got {n}")
        digits: List[Tuple[ExpOrdinal, int]] = []
        j = 0
        while n:
            n, a = divmod(n, p)
            if a:
                digits.append((_finite_exponent(j), a))
            j += 1
        digits.reverse()
        return cls(tuple(digits), p)

    def is_zero(self) -> bool:
        return not self.digits

    def is_finite(self) -> bool:
        return all(delta.is_finite() for delta, _ in self.digits)

    def to_int(self) -> int:
        if not self.is_finite():
            raise MalformedInputError("ordinal is infinite")
        return sum(a * self.p ** delta.finite_count() for delta, a in self.digits)

    def finite_part(self) -> int:
        """The natural number m with self = [lambda + m], lambda a limit or zero."""
        return sum(a * self.p ** delta.finite_count() for delta, a in self.digits if delta.is_finite())

    def limit_part(self) -> "Ordinal":
        return Ordinal(tuple((d, a) for d, a in self.digits if not d.is_finite()), self.p)

    def plus_finite(self, m: int) -> "Ordinal":
        """[self + m] for a limit (or zero) ordinal self."""
        if self.finite_part():
            raise MalformedInputError("plus_finite expects a limit ordinal")
        return Ordinal(self.digits + Ordinal.from_int(m, self.p).digits, self.p)

    # Cantor normal form view

    def to_cnf(self) -> CantorOrdinal:
        """Group p^(w*gamma + j)*a_j into w^gamma * N with N = sum p^j a_j."""
        groups: Dict[ExpOrdinal, int] = {}
        order: List[ExpOrdinal] = []
        for delta, a in self.digits:
            counts = delta.counts()
            j = counts.pop(0, 0)
            gamma = ExpOrdinal.from_counts({k - 1: c for k, c in counts.items()})
            if gamma not in groups:
                groups[gamma] = 0
                order.append(gamma)
            groups[gamma] += a * self.p ** j
        return CantorOrdinal(tuple((gamma.to_cnf(), groups[gamma]) for gamma in order))

    @classmethod
    def from_cnf(cls, value: CantorOrdinal, p: int) -> "Ordinal":
        if not value.below_first_transcendental():
            raise OutOfRangeError("value is not below the first transcendental [w^w^w]")
        digits: List[Tuple[ExpOrdinal, int]] = []
        for exponent, coefficient in value.terms:
            gamma = ExpOrdinal.from_cnf(exponent)
            shifted = {k + 1: c for k, c in gamma.terms}
            for j, a in reversed(list(_base_digits(coefficient, p))):
                if a:
                    delta = ExpOrdinal.from_counts({**shifted, 0: j})
                    digits.append((delta, a))
        return cls(tuple(digits), p)


def compare(a: Ordinal, b: Ordinal) -> int:
    """Ordinal comparison: -1, 0 or 1."""
    if a.p != b.p:
        raise MalformedInputError(f"cannot compare expansions in base {a.p} and {b.p}")
    if a.digits == b.digits:
        return 0
    return -1 if a.digits < b.digits else 1


def _finite_exponent(j: int) -> ExpOrdinal:
    return ExpOrdinal(((0, j),)) if j else ExpOrdinal(())


def _base_digits(n: int, base: int) -> Iterable[Tuple[int, int]]:
    j = 0
    while n:
        n, a = divmod(n, base)
        yield j, a
        j += 1


__all__ = ["ExpOrdinal", "Ordinal", "compare"]
