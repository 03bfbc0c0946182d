"""Field operations of the engine: worked values and the field axioms."""
import pytest
from hypothesis import given, strategies as st

from onp.arithmetic import engine, usage
from onp.arithmetic.context import Context
from onp.core.dependencies import get_context
from onp.core.errors import MalformedInputError, ResourceLimitError, ZeroElementError
from onp.config.settings import settings
from onp.ordinals.element import (
    Element,
    GeneratorId,
    element_to_int,
    element_to_ordinal,
    int_to_element,
    ordinal_to_element,
)
from onp.ordinals.notation import ORDINAL, evaluate, parse
from onp.ordinals.ordinal import ExpOrdinal, Ordinal


def _int(text, p):
    return element_to_int(evaluate(text, get_context(p)), get_context(p))


def _same(text, expected, p):
    ctx = get_context(p)
    return element_to_ordinal(evaluate(text, ctx), ctx) == parse(expected, ctx, mode=ORDINAL)


def test_context_requires_prime():
    with pytest.raises(MalformedInputError):
        Context(4)
    with pytest.raises(MalformedInputError):
        Context(1)


# Addition


def test_addition_is_digitwise():
    assert _int("22+19", 3) == 14
    assert _int("5+3", 2) == 6
    assert _int("0+0", 7) == 0


def test_negation():
    ctx2, ctx3, ctx5 = get_context(2), get_context(3), get_context(5)
    assert element_to_int(engine.negate(int_to_element(1, ctx3), ctx3), ctx3) == 2
    assert element_to_int(engine.negate(int_to_element(7, ctx5), ctx5), ctx5) == 23
    assert engine.negate(int_to_element(13, ctx2), ctx2) == int_to_element(13, ctx2)


def test_scalar_multiple_of_p_vanishes():
    ctx = get_context(5)
    x = evaluate("[w^w]+7", ctx)
    assert engine.scalar(5, x, ctx).is_zero()
    assert engine.scalar(6, x, ctx) == x


# Multiplication


@pytest.mark.parametrize(
    "p, expression, expected",
    [
        (2, "2*2", 3),
        (2, "4*4", 6),
        (2, "16*16", 24),
        (2, "4*4+3", 5),
        (2, "256*256", 384),
        (3, "3*3", 2),
        (3, "9*9", 4),
        (3, "4*4", 6),
        (3, "3^3", 6),
        (5, "5^5", 20),
    ],
)
def test_finite_products(p, expression, expected):
    assert _int(expression, p) == expected


@pytest.mark.parametrize(
    "p, expression, expected",
    [
        (2, "w^3", "2"),
        (3, "w^3", "w+1"),
        (3, "[w^3]^3", "w^3+w^2"),
        (3, "[w^w]^5", "10"),
        (5, "w^3", "6"),
    ],
)
def test_infinite_products(p, expression, expected):
    assert _same(expression, expected, p)


@pytest.mark.parametrize("p, mod4", [(3, 3), (5, 1), (7, 3), (11, 3), (13, 1)])
def test_chi4_square_depends_on_p_mod_4(p, mod4):
    ctx = get_context(p)
    square = engine.power(Element.generator(2, 2), 2, ctx)
    if mod4 == 3:
        assert square == engine.add(Element.generator(2, 1), Element.one(), ctx)
    else:
        assert square == Element.generator(2, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_characteristic_generator_power(p, n):
    ctx = get_context(p)
    tail = Element.one()
    for k in range(1, n):
        tail = engine.mul(tail, engine.power(Element.generator(p, k), p - 1, ctx), ctx)
    expected = engine.add(Element.generator(p, n), tail, ctx)
    assert engine.power(Element.generator(p, n), p, ctx) == expected


def test_reduce_generator_power_rejects_bad_generator():
    with pytest.raises(MalformedInputError):
        engine.reduce_generator_power(GeneratorId(4, 1), get_context(3))


def test_power_edge_cases():
    ctx = get_context(3)
    x = evaluate("w+2", ctx)
    assert engine.power(x, 0, ctx) == Element.one()
    assert engine.power(x, 1, ctx) == x
    assert engine.power(Element.zero(), 3, ctx).is_zero()
    with pytest.raises(MalformedInputError):
        engine.power(x, -1, ctx)


# Frobenius, degree and order


def test_frobenius_fixes_prime_field():
    ctx = get_context(7)
    for c in range(7):
        element = int_to_element(c, ctx)
        assert engine.frobenius(element, ctx) == element


def test_frobenius_and_degree_worked_values():
    ctx = get_context(3)
    three = int_to_element(3, ctx)
    assert element_to_int(engine.frobenius(three, ctx), ctx) == 6
    assert engine.degree(three, ctx) == 2
    assert engine.degree(int_to_element(9, ctx), ctx) == 4
    assert engine.degree(Element.generator(3, 2), ctx) == 9
    assert engine.degree(Element.generator(5, 1), ctx) == 20
    assert engine.minimal_field_size(three, ctx) == 9


def test_degree_cap():
    ctx = Context(3, settings=settings.model_copy(update={"degree_cap": 1}))
    with pytest.raises(ResourceLimitError):
        engine.degree(int_to_element(9, ctx), ctx)


def test_multiplicative_order():
    ctx = get_context(3)
    assert engine.multiplicative_order(Element.one(), ctx) == 1
    assert engine.multiplicative_order(int_to_element(2, ctx), ctx) == 2
    assert engine.multiplicative_order(int_to_element(3, ctx), ctx) == 4
    ctx2 = get_context(2)
    assert engine.multiplicative_order(int_to_element(2, ctx2), ctx2) == 3
    with pytest.raises(ZeroElementError):
        engine.multiplicative_order(Element.zero(), ctx)


def test_inverse_and_divide():
    ctx = get_context(3)
    for text in ("1", "2", "3", "w", "w^2+w+1", "[w^w]+5"):
        x = evaluate(text, ctx)
        assert engine.mul(x, engine.inverse(x, ctx), ctx) == Element.one()
        assert engine.divide(x, x, ctx) == Element.one()
    with pytest.raises(ZeroElementError):
        engine.inverse(Element.zero(), ctx)


def test_p_th_root():
    for p, text in ((2, "[w^2]+3"), (3, "w+7"), (5, "[w^w]+2")):
        ctx = get_context(p)
        x = evaluate(text, ctx)
        assert engine.frobenius(engine.p_th_root(x, ctx), ctx) == x


def test_usage_counters_move():
    ctx = get_context(2)
    usage.reset_report()
    engine.mul(int_to_element(6, ctx), int_to_element(7, ctx), ctx)
    assert usage.get_full_report()["multiplications"] >= 1
    usage.usage_tracker.reset()
    assert usage.get_full_report()["multiplications"] == 0


# Field axioms on random elements


def _elements(p, max_k, max_count):
    """Random elements given as base-p expansions with exponents below w^(max_k+1)."""
    exponents = st.dictionaries(st.integers(0, max_k), st.integers(1, max_count), max_size=2).map(
        ExpOrdinal.from_counts
    )
    return st.dictionaries(exponents, st.integers(1, p - 1), max_size=4).map(
        lambda digits: Ordinal.from_digits(digits, p)
    )


def _element(o):
    return ordinal_to_element(o, get_context(o.p))


@given(_elements(2, 1, 5), _elements(2, 1, 5), _elements(2, 1, 5))
def test_ring_axioms_p2(a, b, c):
    ctx = get_context(2)
    x, y, z = _element(a), _element(b), _element(c)
    assert engine.add(x, y, ctx) == engine.add(y, x, ctx)
    assert engine.mul(x, y, ctx) == engine.mul(y, x, ctx)
    assert engine.mul(engine.mul(x, y, ctx), z, ctx) == engine.mul(x, engine.mul(y, z, ctx), ctx)
    assert engine.mul(x, engine.add(y, z, ctx), ctx) == engine.add(engine.mul(x, y, ctx), engine.mul(x, z, ctx), ctx)


@given(_elements(3, 1, 4), _elements(3, 1, 4), _elements(3, 1, 4))
def test_ring_axioms_p3(a, b, c):
    ctx = get_context(3)
    x, y, z = _element(a), _element(b), _element(c)
    assert engine.add(x, engine.negate(x, ctx), ctx).is_zero()
    assert engine.mul(x, Element.one(), ctx) == x
    assert engine.mul(engine.mul(x, y, ctx), z, ctx) == engine.mul(x, engine.mul(y, z, ctx), ctx)
    assert engine.mul(x, engine.add(y, z, ctx), ctx) == engine.add(engine.mul(x, y, ctx), engine.mul(x, z, ctx), ctx)


@given(_elements(5, 0, 3), _elements(5, 0, 3))
def test_no_zero_divisors_p5(a, b):
    ctx = get_context(5)
    x, y = _element(a), _element(b)
    product = engine.mul(x, y, ctx)
    assert product.is_zero() == (x.is_zero() or y.is_zero())


@given(_elements(3, 1, 3), _elements(3, 1, 3))
def test_frobenius_is_additive_and_multiplicative(a, b):
    ctx = get_context(3)
    x, y = _element(a), _element(b)
    frob = engine.frobenius
    assert frob(engine.add(x, y, ctx), ctx) == engine.add(frob(x, ctx), frob(y, ctx), ctx)
    assert frob(engine.mul(x, y, ctx), ctx) == engine.mul(frob(x, ctx), frob(y, ctx), ctx)


@given(_elements(2, 1, 3))
def test_degree_divides_order_exponent(a):
    ctx = get_context(2)
    x = _element(a)
    if x.is_zero():
        return
    d = engine.degree(x, ctx)
    assert (2 ** d - 1) % engine.multiplicative_order(x, ctx) == 0
