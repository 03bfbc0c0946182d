"""Independent multiplication oracle: the successor-field tower construction.

Starting from F_p = {0..p-1}, each step takes the least n such that some
monic x^n - h(x) has no root in the current field phi, picks the
lexicographically earliest such h (coefficient of x^(n-1) compared first),
and identifies [phi^n] with phi[x]/(x^n - h(x)) through the base-phi digits
of each ordinal. Every table is dense, so only small sizes are feasible.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from sympy import isprime

from onp.arithmetic import engine
from onp.arithmetic.context import Context
from onp.config.settings import Settings, settings as default_settings
from onp.core.errors import MalformedInputError, ResourceLimitError
from onp.ordinals.element import element_to_int, int_to_element

logger = logging.getLogger(__name__)


@dataclass
class TowerField:
    """Dense add/mul tables over the ordinals 0..size-1."""

    p: int
    size: int
    add_table: np.ndarray
    mul_table: np.ndarray
    history: List[Tuple[int, Tuple[int, ...]]] = field(default_factory=list)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def power(self, a: int, n: int) -> int:
        result = 1
        for _ in range(n):
            result = int(self.mul_table[result, a])
        return result

    def powers(self, n: int) -> np.ndarray:
        """x^n for every x in the field."""
        elements = np.arange(self.size)
        result = np.ones(self.size, dtype=self.mul_table.dtype)
        for _ in range(n):
            result = self.mul_table[result, elements]
        return result

    def has_root(self, beta: int, u: int) -> bool:
        """Brute force: is there an x with x^u = beta?"""
        return bool(np.any(self.powers(u) == beta))

    def check_axioms(self, exhaustive_limit: int = 81, samples: int = 100_000, seed: int = 0) -> List[str]:
        """Field-axiom check; returns a description of each failed axiom.

        Triple axioms run over every triple up to `exhaustive_limit` elements
        and over `samples` random triples beyond that.
        """
        failures = []
        add, mul = self.add_table, self.mul_table
        n = self.size
        idx = np.arange(n)
        if n <= exhaustive_limit:
            a, b, c = np.ix_(idx, idx, idx)
        else:
            a, b, c = np.random.default_rng(seed).integers(0, n, size=(3, samples))
        small = np.arange(self.p)
        if not np.array_equal(add[:self.p, :self.p], (small[:, None] + small[None, :]) % self.p):
            failures.append("prime-field addition is not mod p")
        if not np.array_equal(mul[:self.p, :self.p], (small[:, None] * small[None, :]) % self.p):
            failures.append("prime-field multiplication is not mod p")
        if not np.array_equal(add, add.T):
            failures.append("addition is not commutative")
        if not np.array_equal(mul, mul.T):
            failures.append("multiplication is not commutative")
        if not np.array_equal(add[0], idx):
            failures.append("0 is not an additive identity")
        if not np.array_equal(mul[1], idx):
            failures.append("1 is not a multiplicative identity")
        if not np.all(np.any(add == 0, axis=1)):
            failures.append("some element has no additive inverse")
        if not np.all(np.any(mul[1:] == 1, axis=1)):
            failures.append("some nonzero element has no multiplicative inverse")
        if not np.array_equal(add[add[a, b], c], add[a, add[b, c]]):
            failures.append("addition is not associative")
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            failures.append("multiplication is not associative")
        if not np.array_equal(mul[a, add[b, c]], add[mul[a, b], mul[a, c]]):
            failures.append("multiplication does not distribute over addition")
        return failures


def _prime_field(p: int) -> TowerField:
    elements = np.arange(p, dtype=np.int64)
    return TowerField(
        p=p,
        size=p,
        add_table=(elements[:, None] + elements[None, :]) % p,
        mul_table=(elements[:, None] * elements[None, :]) % p,
    )


def _evaluate(phi: TowerField, coefficients: Tuple[int, ...]) -> np.ndarray:
    """h(x) at every x in phi; coefficients given highest power first."""
    elements = np.arange(phi.size)
    acc = np.zeros(phi.size, dtype=np.int64)
    for c in coefficients:
        acc = phi.add_table[phi.mul_table[acc, elements], c]
    return acc


def _earliest_rootless(phi: TowerField, n: int) -> Optional[Tuple[int, ...]]:
    """Coefficients (x^(n-1) first) of the earliest h with x^n - h(x) rootless in phi."""
    x_to_n = phi.powers(n)
    for coefficients in itertools.product(range(phi.size), repeat=n):
        if not np.any(_evaluate(phi, coefficients) == x_to_n):
            return coefficients
    return None


def _extend(phi: TowerField, n: int, h: Tuple[int, ...]) -> TowerField:
    """[phi^n] as phi[x]/(x^n - h(x)); digit i of an ordinal is its x^i coefficient."""
    q = phi.size
    size = q ** n
    add, mul = phi.add_table, phi.mul_table
    values = np.arange(size, dtype=np.int64)
    digits = [(values // q ** i) % q for i in range(n)]
    A = [d[:, None] for d in digits]
    B = [d[None, :] for d in digits]

    sums = [add[A[i], B[i]] for i in range(n)]

    products = [np.zeros((size, size), dtype=np.int64) for _ in range(2 * n - 1)]
    for i in range(n):
        for j in range(n):
            products[i + j] = add[products[i + j], mul[A[i], B[j]]]
    # x^n = h(x) = sum_i h_i x^i, h stored highest power first
    h_low = tuple(reversed(h))
    for k in range(2 * n - 2, n - 1, -1):
        top = products[k]
        for i, h_i in enumerate(h_low):
            if h_i:
                products[k - n + i] = add[products[k - n + i], mul[top, h_i]]

    weights = [q ** i for i in range(n)]
    add_table = sum(w * s for w, s in zip(weights, sums))
    mul_table = sum(w * products[i] for i, w in enumerate(weights))
    return TowerField(
        p=phi.p,
        size=size,
        add_table=add_table,
        mul_table=mul_table,
        history=phi.history + [(n, h)],
    )


def build_tower(p: int, target_size: int, settings: Optional[Settings] = None) -> TowerField:
    """Build the tower field of `target_size` elements.

    Args:
        p: Characteristic.
        target_size: Order of the field wanted; must be a size the tower actually visits.
        settings: Supplies `tower_axis_cap`, the largest table axis allowed.

    Returns:
        TowerField with dense tables.
    """
    settings = settings or default_settings
    if not isprime(p):
        raise MalformedInputError(f"characteristic must be a prime, got {p}")
    if target_size > settings.tower_axis_cap:
        raise ResourceLimitError(f"tower size {target_size} exceeds axis cap {settings.tower_axis_cap}")
    phi = _prime_field(p)
    while phi.size < target_size:
        for n in itertools.count(2):
            if phi.size ** n > target_size:
                raise MalformedInputError(
                    f"the tower over F_{p} passes from {phi.size} elements past {target_size}"
                )
            h = _earliest_rootless(phi, n)
            if h is not None:
                break
        logger.info(f"p={p}: extending field of size {phi.size} by x^{n} - h(x), h={list(h)}")
        phi = _extend(phi, n, h)
    if phi.size != target_size:
        raise MalformedInputError(f"{target_size} is not a field size of the tower over F_{p}")
    return phi


def compare_with_engine(tower: TowerField, ctx: Context, limit: int = 20) -> List[Tuple[str, int, int, int, int]]:
    """Every cell where the engine disagrees with the tower: (op, a, b, tower, engine)."""
    if tower.p != ctx.p:
        raise MalformedInputError(f"tower has p={tower.p}, context has p={ctx.p}")
    elements = [int_to_element(a, ctx) for a in range(tower.size)]
    mismatches = []
    for a in range(tower.size):
        for b in range(a, tower.size):
            for op, fn, table in (("+", engine.add, tower.add_table), ("*", engine.mul, tower.mul_table)):
                got = element_to_int(fn(elements[a], elements[b], ctx), ctx)
                expected = int(table[a, b])
                if got != expected:
                    mismatches.append((op, a, b, expected, got))
                    if len(mismatches) >= limit:
                        return mismatches
    return mismatches


__all__ = ["TowerField", "build_tower", "compare_with_engine"]
