"""Grassmann algebra arithmetic: units, identities, and random property suites."""

import cmath
import math

import numpy as np
import pytest

from gl11.grassmann import (
    ConjugationTable,
    GrassmannElement,
    NotInvertibleError,
    ParityError,
    random_element,
    random_even,
    random_even_invertible,
    random_odd,
)

N = 8
TOL = 1e-9


def t(*indices):
    return GrassmannElement.monomial(N, indices)


def one():
    return GrassmannElement.one(N)


def test_add_linearity():
    assert (t(1) + t(1)).is_close(2 * t(1))
    assert (t(1) + (-t(1))).is_zero()
    x = one() + t(1, 2)
    y = GrassmannElement.scalar(N, 2) - t(1, 2)
    # term-by-term oracle: sum the two coefficient maps directly
    expected = {}
    for src in (x, y):
        for m, c in src.terms.items():
            expected[m] = expected.get(m, 0j) + c
    summed = x + y
    assert summed.is_close(GrassmannElement(N, expected))
    assert summed.is_close(GrassmannElement.scalar(N, 3))


def test_add_rejects_mismatched_generator_count():
    with pytest.raises(ValueError):
        GrassmannElement.one(4) + GrassmannElement.one(6)


def test_mul_anticommutation():
    assert (t(1) * t(2)).is_close(t(1, 2))
    assert (t(2) * t(1)).is_close(-t(1, 2))
    assert (t(1) * t(1)).is_zero()


def _brute_product(x, y):
    """Distribute-and-sort oracle for multiplication."""
    out = GrassmannElement.zero(x.n)
    for ma, ca in x.terms.items():
        for mb, cb in y.terms.items():
            if ma & mb:
                continue
            idx_a = [i + 1 for i in range(x.n) if ma >> i & 1]
            idx_b = [i + 1 for i in range(x.n) if mb >> i & 1]
            seq = idx_a + idx_b
            # bubble sort counting swaps
            swaps = 0
            for i in range(len(seq)):
                for j in range(len(seq) - 1 - i):
                    if seq[j] > seq[j + 1]:
                        seq[j], seq[j + 1] = seq[j + 1], seq[j]
                        swaps += 1
            out = out + GrassmannElement.monomial(x.n, seq, ca * cb * (-1) ** swaps)
    return out


def test_mul_matches_distribute_and_sort_oracle():
    x = (one() + t(1)) * (one() + t(2))
    assert x.is_close(one() + t(1) + t(2) + t(1, 2))
    rng = np.random.default_rng(7)
    for _ in range(50):
        a = random_element(rng, N, num_terms=4)
        b = random_element(rng, N, num_terms=4)
        assert (a * b).is_close(_brute_product(a, b))


def test_body_and_soul():
    x = GrassmannElement.scalar(N, 3) + t(1, 2)
    assert x.body() == 3
    assert x.soul().is_close(t(1, 2))
    s = x.soul()
    assert (s * s).is_zero()


def test_soul_nilpotency_random():
    rng = np.random.default_rng(1)
    for _ in range(20):
        s = random_element(rng, N, num_terms=5).soul()
        power = GrassmannElement.one(N)
        for _ in range(N + 1):
            power = power * s
        assert power.is_zero()


def test_exp_even():
    assert GrassmannElement.zero(N).exp().is_close(one())
    c = 0.3 + 0.2j
    x = GrassmannElement.scalar(N, c) + t(1, 2)
    assert x.exp().is_close(cmath.exp(c) * (one() + t(1, 2)))
    y = t(1, 2) + t(3, 4)
    assert y.exp().is_close(one() + t(1, 2) + t(3, 4) + t(1, 2) * t(3, 4))


def test_exp_truncated_series_oracle():
    rng = np.random.default_rng(2)
    for _ in range(20):
        x = random_even(rng, N, num_terms=4)
        s = x.soul()
        series = GrassmannElement.one(N)
        power = GrassmannElement.one(N)
        for k in range(1, N + 2):
            power = power * s
            series = series + power * (1.0 / math.factorial(k))
        assert x.exp().is_close(cmath.exp(x.body()) * series)
        assert (x.exp() * (-x).exp()).is_close(one())


def test_exp_rejects_odd():
    with pytest.raises(ParityError):
        t(1).exp()


def test_inv():
    assert one().inv().is_close(one())
    assert (one() + t(1, 2)).inv().is_close(one() - t(1, 2))
    x = GrassmannElement.scalar(N, 2) + t(1, 2) + t(3, 4)
    assert (x.inv() * x).is_close(one())
    assert (x * x.inv()).is_close(one())


def test_inv_rejects_zero_body():
    with pytest.raises(NotInvertibleError):
        t(1, 2).inv()


def test_log_roundtrip():
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = random_even_invertible(rng, N, num_terms=4)
        assert x.log().exp().is_close(x)


def test_conjugate_literal_oracle():
    # bar(t1 t2) = bar(t2) bar(t1) applied literally, then canonicalized
    table = ConjugationTable.swap_halves(N)
    x = t(1, 2)
    expected = t(2).conjugate(table) * t(1).conjugate(table)
    assert x.conjugate(table).is_close(expected)
    # with pairing 1<->5, 2<->6: bar(t1 t2) = t6 t5 = -t5 t6
    assert x.conjugate(table).is_close(-t(5, 6))


def test_conjugate_antilinear():
    table = ConjugationTable.swap_halves(N)
    x = GrassmannElement.scalar(N, 1j)
    assert x.conjugate(table).is_close(GrassmannElement.scalar(N, -1j))


def test_conjugate_small_pairing_example():
    # pairing 1<->3, 2<->4 on four generators: bar(t1 t2) = t4 t3 = -t3 t4
    table = ConjugationTable([3, 4, 1, 2])
    x = GrassmannElement.monomial(4, [1, 2])
    expected = -GrassmannElement.monomial(4, [3, 4])
    assert x.conjugate(table).is_close(expected)


def test_conjugate_involution_and_antihomomorphism():
    rng = np.random.default_rng(4)
    for table in (ConjugationTable.swap_halves(N), ConjugationTable.identity(N)):
        for _ in range(500):
            x = random_element(rng, N, num_terms=4)
            y = random_element(rng, N, num_terms=4)
            assert x.conjugate(table).conjugate(table).is_close(x)
            lhs = (x * y).conjugate(table)
            rhs = y.conjugate(table) * x.conjugate(table)
            assert lhs.is_close(rhs)


def test_left_derivative():
    assert t(1).derivative(1).is_close(one())
    assert t(1, 2).derivative(2).is_close(-t(1))
    x = t(1, 2)
    anti = x.derivative(2).derivative(1) + x.derivative(1).derivative(2)
    assert anti.is_zero()
    with pytest.raises(ValueError):
        t(1).derivative(N + 1)


def test_derivative_is_odd_derivation():
    rng = np.random.default_rng(5)
    for _ in range(100):
        parity = "even" if rng.integers(2) else "odd"
        x = random_element(rng, N, parity=parity, num_terms=3)
        y = random_element(rng, N, num_terms=3)
        i = int(rng.integers(1, N + 1))
        sign = 1.0 if parity == "even" else -1.0
        lhs = (x * y).derivative(i)
        rhs = x.derivative(i) * y + sign * (x * y.derivative(i))
        assert lhs.is_close(rhs)


def test_associativity_random_triples():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        x = random_element(rng, N, num_terms=3)
        y = random_element(rng, N, num_terms=3)
        z = random_element(rng, N, num_terms=3)
        assert ((x * y) * z).is_close(x * (y * z), tol=TOL)


def test_supercommutativity():
    rng = np.random.default_rng(8)
    for _ in range(200):
        px = "even" if rng.integers(2) else "odd"
        py = "even" if rng.integers(2) else "odd"
        x = random_element(rng, N, parity=px, num_terms=3)
        y = random_element(rng, N, parity=py, num_terms=3)
        sign = -1.0 if (px == "odd" and py == "odd") else 1.0
        assert (x * y).is_close(sign * (y * x))


def test_exp_additive_on_even():
    rng = np.random.default_rng(9)
    for _ in range(50):
        x = random_even(rng, N, num_terms=3)
        y = random_even(rng, N, num_terms=3)
        assert (x.exp() * y.exp()).is_close((x + y).exp(), tol=1e-8)


def test_inv_antihomomorphism():
    rng = np.random.default_rng(10)
    for _ in range(50):
        x = random_even_invertible(rng, N, num_terms=3)
        y = random_even_invertible(rng, N, num_terms=3)
        prod_inv = (x * y).inv()
        assert prod_inv.is_close(y.inv() * x.inv())
        assert prod_inv.is_close(x.inv() * y.inv())


def test_parity_query():
    assert one().parity() == "even"
    assert t(1).parity() == "odd"
    assert (one() + t(1)).parity() == "mixed"
    assert GrassmannElement.zero(N).parity() == "even"


def test_canonicalization_prunes_small_terms():
    x = GrassmannElement(N, {0: 1.0, 1: 1e-15})
    assert list(x.terms) == [0]


def test_json_roundtrip():
    rng = np.random.default_rng(11)
    for _ in range(20):
        x = random_element(rng, N, num_terms=4)
        y = GrassmannElement.from_dict(x.to_dict())
        assert y.is_close(x)
    with pytest.raises(ValueError):
        GrassmannElement.from_dict({"n": 4, "terms": [{"mono": [2, 1], "re": 1.0}]})


def test_random_odd_has_odd_parity():
    rng = np.random.default_rng(12)
    for _ in range(20):
        assert random_odd(rng, N).is_odd()
        assert random_even(rng, N).is_even()
