"""Cantor normal form ordinals with ordinary (bracketed) ordinal arithmetic.

A CantorOrdinal is a finite sum  w^e_1*c_1 + w^e_2*c_2 + ...  with strictly
decreasing exponents e_i (themselves CantorOrdinals) and positive natural
coefficients c_i. Ordering of the `terms` tuple is ordinal ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from onp.core.errors import MalformedInputError

Term = Tuple["CantorOrdinal", int]


@dataclass(frozen=True, order=True)
class CantorOrdinal:
    """Ordinal in Cantor normal form; `terms` sorted by decreasing exponent."""

    terms: Tuple[Term, ...] = ()

    # Constructors

    @classmethod
    def from_int(cls, n: int) -> "CantorOrdinal":
        if n < 0:
            raise MalformedInputError(f"ordinals are non-negative, got {n}")
        if n == 0:
            return ZERO
        return cls(((ZERO, n),))

    @classmethod
    def omega_power(cls, exponent: "CantorOrdinal", coefficient: int = 1) -> "CantorOrdinal":
        """w^exponent * coefficient."""
        if coefficient <= 0:
            return ZERO
        return cls(((exponent, coefficient),))

    # Predicates

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def to_int(self) -> int:
        if not self.is_finite():
            raise MalformedInputError("ordinal is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def leading_exponent(self) -> "CantorOrdinal":
        return self.terms[0][0]

    def below_first_transcendental(self) -> bool:
        """True iff self < w^w^w, i.e. every exponent has only finite exponents."""
        for exponent, _ in self.terms:
            for inner, _ in exponent.terms:
                if not inner.is_finite():
                    return False
        return True

    # Ordinal arithmetic

    def __add__(self, other: "CantorOrdinal") -> "CantorOrdinal":
        if not isinstance(other, CantorOrdinal):
            return NotImplemented
        if other.is_zero():
            return self
        lead, count = other.terms[0]
        kept = []
        for exponent, coefficient in self.terms:
            if exponent > lead:
                kept.append((exponent, coefficient))
            elif exponent == lead:
                count += coefficient
                break
            else:
                break
        return CantorOrdinal(tuple(kept) + ((lead, count),) + other.terms[1:])

    def __mul__(self, other: "CantorOrdinal") -> "CantorOrdinal":
        if not isinstance(other, CantorOrdinal):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        lead, lead_count = self.terms[0]
        result = ZERO
        for exponent, coefficient in other.terms:
            if exponent.is_zero():
                part = CantorOrdinal(((lead, lead_count * coefficient),) + self.terms[1:])
            else:
                part = CantorOrdinal(((lead + exponent, coefficient),))
            result = result + part
        return result

    def __pow__(self, other: "CantorOrdinal") -> "CantorOrdinal":
        if not isinstance(other, CantorOrdinal):
            return NotImplemented
        if other.is_zero():
            return ONE
        if self.is_zero():
            return ZERO
        if self == ONE:
            return ONE
        limit_part, finite_part = other.divide_by_omega()
        if self.is_finite():
            base = self.to_int()
            head = CantorOrdinal.omega_power(limit_part) if not limit_part.is_zero() else ONE
            return head * CantorOrdinal.from_int(base ** finite_part)
        head = ONE
        if not limit_part.is_zero():
            head = CantorOrdinal.omega_power(self.leading_exponent * OMEGA * limit_part)
        return head * self._power_int(finite_part)

    def _power_int(self, n: int) -> "CantorOrdinal":
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divide_by_omega(self) -> Tuple["CantorOrdinal", int]:
        """Split self = w*q + m with m finite; returns (q, m)."""
        quotient = []
        remainder = 0
        for exponent, coefficient in self.terms:
            if exponent.is_zero():
                remainder = coefficient
            elif exponent.is_finite():
                quotient.append((CantorOrdinal.from_int(exponent.to_int() - 1), coefficient))
            else:
                quotient.append((exponent, coefficient))
        return CantorOrdinal(tuple(quotient)), remainder

    def __repr__(self) -> str:
        from onp.ordinals.notation import format_cnf

        return f"CantorOrdinal({format_cnf(self)})"


ZERO = CantorOrdinal(())
ONE = CantorOrdinal(((ZERO, 1),))
OMEGA = CantorOrdinal(((ONE, 1),))
