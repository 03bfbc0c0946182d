"""chi_h, Q sets and the alpha_u solver, checked against the published tables."""
import dataclasses

import pytest
from hypothesis import given, strategies as st

from onp.arithmetic import engine
from onp.arithmetic.context import Context
from onp.config.settings import settings
from onp.core.dependencies import get_context
from onp.core.errors import MalformedInputError, ResourceLimitError
from onp.models.schemas import TablesDocument
from onp.ordinals.element import Element, element_to_ordinal, int_to_element
from onp.ordinals.notation import ORDINAL, parse
from onp.structure.alpha import (
    AlphaRecord,
    alpha_field_sum_excess,
    alpha_u,
    is_uth_power,
    record_matches_scan,
    verify_alpha_minimality,
)
from onp.structure.alpha_store import AlphaStore, load_document, record_to_row, row_to_record
from onp.structure.chi import (
    chi_generator,
    chi_h,
    chi_prime_power,
    coprime_decomposition_holds,
    degree_of_sums_holds,
    f_of,
    first_field_chain,
    q_set,
    theoretical_degree,
    u_part,
)

# (p, u, f(u), Q(f(u)), excess, alpha_u as an ordinal literal)
ALPHA_TABLE = [
    (2, 3, 2, (2,), 0, "2"),
    (2, 5, 4, (4,), 0, "[2^2]"),
    (2, 7, 3, (3,), 1, "[2^w]+1"),
    (2, 11, 10, (5,), 1, "[2^(w^2)]+1"),
    (2, 13, 12, (3, 4), 0, "[2^w]+[2^2]"),
    (2, 17, 8, (8,), 0, "[2^4]"),
    (2, 19, 18, (9,), 4, "[2^(w*3)]+4"),
    (2, 23, 11, (11,), 1, "[2^(w^4)]+1"),
    (2, 29, 28, (7, 4), 0, "[2^(w^3)]+[2^2]"),
    (2, 31, 5, (5,), 1, "[2^(w^2)]+1"),
    (2, 37, 36, (9, 4), 0, "[2^(w*3)]+[2^2]"),
    (2, 41, 20, (5,), 1, "[2^(w^2)]+1"),
    (2, 43, 14, (7,), 1, "[2^(w^3)]+1"),
    (3, 2, 1, (), 2, "2"),
    (3, 5, 4, (4,), 1, "[3^2]+1"),
    (3, 7, 6, (3, 2), 0, "[3^w]+3"),
    (3, 11, 5, (5,), 1, "[3^(w^2)]+1"),
    (3, 13, 3, (3,), 0, "[3^w]"),
    (3, 17, 16, (16,), 1, "[3^8]+1"),
    (3, 19, 18, (9, 2), 0, "[3^(w*3)]+3"),
    (3, 23, 11, (11,), 1, "[3^(w^4)]+1"),
    (3, 29, 28, (7, 4), 0, "[3^(w^3)]+[3^2]"),
    (3, 31, 30, (5, 3), 0, "[3^(w^2)]+[3^w]"),
    (3, 37, 18, (9, 2), 0, "[3^(w*3)]+3"),
    (3, 41, 8, (8,), 1, "[3^4]+1"),
    (3, 43, 42, (7,), 1, "[3^(w^3)]+1"),
    (5, 2, 1, (), 2, "2"),
    (5, 3, 2, (2,), 1, "6"),
    (5, 7, 6, (3,), 1, "[5^w]+1"),
    (5, 11, 5, (5,), 0, "[5^(w^2)]"),
    (5, 13, 4, (4,), 1, "[5^2]+1"),
    (5, 17, 16, (16,), 1, "[5^8]+1"),
    (5, 19, 9, (9,), 1, "[5^(w*3)]+1"),
    (5, 23, 22, (11, 2), 0, "[5^(w^4)]+5"),
    (5, 29, 14, (7,), 1, "[5^(w^3)]+1"),
    (5, 31, 3, (3,), 1, "[5^w]+1"),
    (5, 37, 36, (9, 4), 0, "[5^(w*3)]+[5^2]"),
    (5, 41, 20, (5, 4), 0, "[5^(w^2)]+[5^2]"),
    (5, 43, 42, (7,), 1, "[5^(w^3)]+1"),
    (7, 2, 1, (), 3, "3"),
    (7, 3, 1, (), 2, "2"),
    (7, 5, 4, (4,), 1, "[7^2]+1"),
    (7, 11, 10, (5,), 1, "[7^(w^2)]+1"),
    (7, 13, 12, (3, 4), 0, "[7^w]+[7^2]"),
    (7, 17, 16, (16,), 1, "[7^8]+1"),
    (7, 19, 3, (3,), 1, "[7^w]+1"),
    (7, 23, 22, (11,), 1, "[7^(w^4)]+1"),
    (7, 29, 7, (7,), 0, "[7^(w^3)]"),
    (7, 31, 15, (5, 3), 0, "[7^(w^2)]+[7^w]"),
    (7, 37, 9, (9,), 1, "[7^(w*3)]+1"),
    (7, 41, 40, (5, 8), 0, "[7^(w^2)]+[7^4]"),
    (7, 43, 6, (3, 2), 0, "[7^w]+7"),
    (11, 2, 1, (), 2, "2"),
    (11, 3, 2, (2,), 1, "12"),
    (11, 5, 1, (), 2, "2"),
    (11, 7, 3, (3,), 1, "[11^w]+1"),
    (11, 13, 12, (3, 4), 0, "[11^w]+[11^2]"),
    (11, 17, 16, (16,), 1, "[11^8]+1"),
    (11, 19, 3, (3,), 1, "[11^w]+1"),
    (11, 23, 22, (11, 2), 0, "[11^(w^4)]+11"),
    (11, 29, 28, (7, 4), 0, "[11^(w^3)]+[11^2]"),
    (11, 31, 30, (5, 3), 0, "[11^(w^2)]+[11^w]"),
    (11, 37, 6, (3,), 1, "[11^w]+1"),
    (11, 41, 40, (5, 8), 0, "[11^(w^2)]+[11^4]"),
    (11, 43, 7, (7,), 1, "[11^(w^3)]+1"),
]

FAST_ROWS = [row for row in ALPHA_TABLE if row[1] <= 13]
SLOW_ROWS = [row for row in ALPHA_TABLE if row[1] > 13]


def _check_row(p, u, f, Q, excess, alpha):
    ctx = get_context(p)
    record = alpha_u(u, ctx)
    assert record.f == f
    assert record.Q == Q
    assert record.excess == excess
    assert element_to_ordinal(record.alpha, ctx) == parse(alpha, ctx, mode=ORDINAL)


@pytest.mark.parametrize("p, u, f, Q, excess, alpha", FAST_ROWS)
def test_alpha_table_small_u(p, u, f, Q, excess, alpha):
    _check_row(p, u, f, Q, excess, alpha)


@pytest.mark.slow
@pytest.mark.parametrize("p, u, f, Q, excess, alpha", SLOW_ROWS)
def test_alpha_table_large_u(p, u, f, Q, excess, alpha):
    _check_row(p, u, f, Q, excess, alpha)


# Field ordinals


def test_chi_prime_power_values():
    ctx = get_context(3)
    assert chi_prime_power(2, 1, ctx).to_int() == 3
    assert chi_prime_power(2, 2, ctx).to_int() == 9
    assert chi_prime_power(3, 1, ctx) == parse("w", ctx, mode=ORDINAL)
    assert chi_prime_power(5, 1, ctx) == parse("w^w", ctx, mode=ORDINAL)


def test_chi_generator_rejects_bad_input():
    with pytest.raises(MalformedInputError):
        chi_generator(6, 1)
    with pytest.raises(MalformedInputError):
        chi_generator(3, 0)


@pytest.mark.parametrize("p, u, expected", [(2, 7, 3), (3, 13, 3), (11, 5, 1), (5, 2, 1), (2, 31, 5)])
def test_f_of(p, u, expected):
    assert f_of(u, get_context(p)) == expected


def test_f_of_rejects_p_and_composites():
    with pytest.raises(MalformedInputError):
        f_of(2, get_context(2))
    with pytest.raises(MalformedInputError):
        f_of(9, get_context(2))


def test_q_sets():
    assert q_set(12, get_context(2)) == (3, 4)
    assert q_set(18, get_context(3)) == (9, 2)
    assert q_set(16, get_context(5)) == (16,)
    assert q_set(1, get_context(3)) == ()


def test_chi_h_values():
    ctx2, ctx3 = get_context(2), get_context(3)
    assert chi_h(1, ctx2)[0].is_zero()
    assert element_to_ordinal(chi_h(12, ctx2)[0], ctx2) == parse("w+4", ctx2, mode=ORDINAL)
    assert element_to_ordinal(chi_h(18, ctx3)[0], ctx3) == parse("w^3+3", ctx3, mode=ORDINAL)
    with pytest.raises(MalformedInputError):
        chi_h(0, ctx2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_chi_h_degree_is_divisible_by_h(p):
    ctx = get_context(p)
    for h in range(1, 13):
        assert engine.degree(chi_h(h, ctx)[0], ctx) % h == 0


@pytest.mark.parametrize("p", [2, 3])
def test_q_sets_are_coprime_decompositions(p):
    ctx = get_context(p)
    for h in range(1, 31):
        assert coprime_decomposition_holds(h, ctx)


@pytest.mark.parametrize("p", [2, 3])
def test_degree_of_sums(p):
    ctx = get_context(p)
    chi_5 = chi_generator(5, 1)
    pool = [int_to_element(v, ctx) for v in (0, 1, 2, p, p + 1, p ** 2, p ** 2 + p, p ** 3 + 1, p ** 4 - 1)]
    pool += [chi_5, engine.add(chi_5, Element.one(), ctx), chi_generator(3, 1)]
    degrees = {engine.degree(x, ctx) for x in pool}
    assert 20 in degrees and len(degrees) > 2
    for beta in pool:
        for gamma in pool:
            assert degree_of_sums_holds(beta, gamma, ctx)


def test_theoretical_degree_agrees_with_engine():
    ctx3, ctx2 = get_context(3), get_context(2)
    for u, n, expected in ((5, 1, 20), (2, 2, 4), (3, 2, 9)):
        assert theoretical_degree(u, n, ctx3) == expected
        assert engine.degree(chi_generator(u, n), ctx3) == expected
    assert theoretical_degree(3, 1, ctx2) == engine.degree(chi_generator(3, 1), ctx2) == 6


def test_first_field_chain():
    assert [o.to_int() for o in first_field_chain(2, 4, get_context(2))] == [2, 4, 16, 256]
    assert [o.to_int() for o in first_field_chain(3, 4, get_context(3))] == [3, 9, 81, 6561]
    with pytest.raises(MalformedInputError):
        first_field_chain(3, 2, get_context(2))


def test_first_field_chain_is_increasing_across_primes():
    ctx = get_context(2)
    chain = first_field_chain(2, 3, ctx, max_prime=3)
    assert chain == sorted(chain)
    assert [o.is_finite() for o in chain] == [True] * 3 + [False] * 3


# u-parts


def test_u_part():
    assert u_part(2, 12) == 2
    assert u_part(3, 80) == 0
    with pytest.raises(MalformedInputError):
        u_part(3, 0)


@given(st.sampled_from([3, 5, 7]), st.integers(1, 20), st.integers(1, 60))
def test_u_part_lifts_exponents(u, k, n):
    s = 1 + u * k
    assert u_part(u, s ** n - 1) == u_part(u, s - 1) + u_part(u, n)


# u-th powers


def test_is_uth_power_examples():
    ctx3, ctx5 = get_context(3), get_context(5)
    assert is_uth_power(Element.one(), 2, ctx3)
    assert not is_uth_power(int_to_element(2, ctx3), 2, ctx3)
    assert is_uth_power(Element.zero(), 2, ctx3)
    assert is_uth_power(int_to_element(5, ctx5), 3, ctx5)
    assert not is_uth_power(int_to_element(6, ctx5), 3, ctx5)


def test_is_uth_power_rejects_bad_arguments():
    ctx = get_context(3)
    with pytest.raises(MalformedInputError):
        is_uth_power(Element.one(), 3, ctx)
    with pytest.raises(MalformedInputError):
        is_uth_power(Element.one(), 4, ctx)
    with pytest.raises(MalformedInputError):
        is_uth_power(int_to_element(3, ctx), 2, ctx)


# alpha_u


def test_alpha_u_rejects_bad_u():
    with pytest.raises(MalformedInputError):
        alpha_u(4, get_context(3))
    with pytest.raises(MalformedInputError):
        alpha_u(3, get_context(3))


def test_alpha_scan_cap():
    ctx = Context(2, settings=settings.model_copy(update={"alpha_scan_cap": 1}))
    with pytest.raises(ResourceLimitError):
        alpha_u(19, ctx)


def test_alpha_u_is_memoized():
    ctx = get_context(2)
    assert alpha_u(7, ctx) is alpha_u(7, ctx)


@pytest.mark.parametrize("p, u, expected", [(2, 19, 4), (7, 43, 0), (3, 7, 0), (3, 2, 2)])
def test_field_sum_excess(p, u, expected):
    ctx = get_context(p)
    assert alpha_field_sum_excess(alpha_u(u, ctx), ctx) == expected


# F_7(chi_2, chi_3) written out by hand: coefficient x[i][j] of a^i b^j with
# a^2 = alpha_2 = 3 and b^3 = alpha_3 = 2.


def _f7_mul(x, y):
    out = [[0, 0, 0], [0, 0, 0]]
    for i1 in range(2):
        for j1 in range(3):
            for i2 in range(2):
                for j2 in range(3):
                    c = x[i1][j1] * y[i2][j2]
                    i, j = i1 + i2, j1 + j2
                    if i == 2:
                        i, c = 0, 3 * c
                    if j >= 3:
                        j, c = j - 3, 2 * c
                    out[i][j] = (out[i][j] + c) % 7
    return out


def _f7_pow(x, n):
    result = [[1, 0, 0], [0, 0, 0]]
    while n:
        if n & 1:
            result = _f7_mul(result, x)
        x = _f7_mul(x, x)
        n >>= 1
    return result


def test_alpha_43_at_p7_is_chi_6_itself():
    ctx = get_context(7)
    chi_2, chi_3 = chi_generator(2, 1), chi_generator(3, 1)
    assert engine.power(chi_2, 2, ctx) == int_to_element(3, ctx)
    assert engine.power(chi_3, 3, ctx) == int_to_element(2, ctx)
    one = [[1, 0, 0], [0, 0, 0]]
    for s in range(4):
        beta = [[s, 1, 0], [1, 0, 0]]
        assert _f7_pow(beta, (7 ** 6 - 1) // 43) != one
        candidate = engine.add(engine.add(chi_3, chi_2, ctx), int_to_element(s, ctx), ctx)
        assert not is_uth_power(candidate, 43, ctx)

    record = alpha_u(43, ctx)
    assert record.excess == 0
    assert record.alpha == chi_h(6, ctx)[0]


@pytest.mark.parametrize("p, u", [(2, 7), (2, 19), (3, 5), (5, 3), (7, 43)])
def test_alpha_minimality(p, u):
    ctx = get_context(p)
    assert verify_alpha_minimality(alpha_u(u, ctx), ctx)


@pytest.mark.parametrize("p, u", [(2, 7), (2, 11), (3, 5), (3, 13), (5, 7), (7, 13)])
def test_alpha_degree_is_multiple_of_f(p, u):
    ctx = get_context(p)
    record = alpha_u(u, ctx)
    assert engine.degree(record.alpha, ctx) % record.f == 0


def test_generator_power_is_alpha():
    ctx = get_context(2)
    assert engine.power(chi_generator(7, 1), 7, ctx) == alpha_u(7, ctx).alpha


# Persistence


def test_row_round_trip():
    ctx = get_context(3)
    record = alpha_u(5, ctx)
    row = record_to_row(record, ctx)
    assert row.alpha_p == "3^2+1"
    assert row.alpha_cnf == "10"
    assert row_to_record(row, ctx) == record


def test_alpha_store_round_trip(tmp_path):
    path = str(tmp_path / "alphas.json")
    source = Context(3)
    for u in (2, 5, 7):
        alpha_u(u, source)
    assert AlphaStore.save(path, source) == 3
    assert [row.u for row in load_document(path).rows] == [2, 5, 7]

    target = Context(3)
    assert AlphaStore.load(path, target) == 3
    assert target.alpha_cache == source.alpha_cache


def test_alpha_store_ignores_other_prime(tmp_path):
    path = str(tmp_path / "alphas.json")
    source = Context(2)
    alpha_u(3, source)
    AlphaStore.save(path, source)
    assert AlphaStore.load(path, Context(3)) == 0


def test_alpha_store_missing_and_invalid_files(tmp_path):
    assert load_document(str(tmp_path / "missing.json")) is None
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": "two"}')
    with pytest.raises(MalformedInputError):
        load_document(str(bad))


def _write_rows(path, ctx, *records):
    AlphaStore.save_document(path, TablesDocument(p=ctx.p, rows=[record_to_row(r, ctx) for r in records]))


def test_alpha_store_rejects_rows_off_their_scan(tmp_path):
    path = str(tmp_path / "alphas.json")
    ctx = Context(2)
    genuine = alpha_u(7, ctx)
    shifted = dataclasses.replace(genuine, excess=0)
    assert not record_matches_scan(shifted, ctx)
    _write_rows(path, ctx, shifted)
    with pytest.raises(MalformedInputError):
        AlphaStore.load(path, Context(2))


def test_alpha_store_verification_reruns_power_tests(tmp_path):
    path = str(tmp_path / "alphas.json")
    ctx = Context(2)
    forged = AlphaRecord(u=7, f=3, Q=(3,), excess=0, alpha=chi_generator(3, 1))
    assert record_matches_scan(forged, ctx)
    assert not verify_alpha_minimality(forged, ctx)
    _write_rows(path, ctx, forged)

    assert AlphaStore.load(path, Context(2), verify=False) == 1
    with pytest.raises(MalformedInputError):
        AlphaStore.load(path, Context(2), verify=True)
    verifying = Context(2, settings=settings.model_copy(update={"verify_alpha_cache": True}))
    with pytest.raises(MalformedInputError):
        AlphaStore.load(path, verifying)
