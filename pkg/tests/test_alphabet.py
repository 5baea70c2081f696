import random

import pytest

from z2z4.alphabet import (
    BinaryVector,
    DimensionError,
    Metric,
    MixedVector,
    add,
    distance,
    gray_map,
    gray_symbol,
    inner_product,
    scalar_mul,
    weight,
)

from oracles import (
    iter_vectors,
    naive_distance,
    naive_gray,
    naive_inner,
    naive_weight,
)


def mv(bits, quats):
    return MixedVector.from_digits(bits, quats)


def test_gray_symbol_table():
    assert gray_symbol(0) == (0, 0)
    assert gray_symbol(1) == (0, 1)
    assert gray_symbol(2) == (1, 1)
    assert gray_symbol(3) == (1, 0)


def test_gray_map_examples():
    assert gray_map(mv([1], [2])).bits == (1, 1, 1)
    assert gray_map(mv([0, 0], [0, 0])).bits == (0, 0, 0, 0, 0, 0)
    assert gray_map(mv([], [1, 3])).bits == (0, 1, 1, 0)


def test_gray_map_matches_oracle():
    for bits, quats in iter_vectors(2, 3):
        assert gray_map(mv(bits, quats)).bits == naive_gray(bits, quats)


def test_weight_examples():
    assert weight(mv([1], [3]), Metric.LEE) == 2
    assert weight(mv([1], [3]), Metric.LEE) == gray_map(mv([1], [3])).weight()
    assert weight(mv([0], [2]), Metric.EUCLIDEAN) == 4
    for m in Metric:
        assert weight(mv([0, 0], [0, 0]), m) == 0


def test_weight_matches_oracle_exhaustive():
    for bits, quats in iter_vectors(2, 2):
        v = mv(bits, quats)
        for m in Metric:
            assert v.weight(m) == naive_weight(bits, quats, m.value)


def test_distance_examples():
    assert distance(mv([1], [1]), mv([0], [3]), Metric.LEE) == 3
    v = mv([1, 0], [2, 3])
    for m in Metric:
        assert distance(v, v, m) == 0
    assert distance(mv([0], [0]), mv([1], [2]), Metric.EUCLIDEAN) == 5


def test_distance_symmetry_and_zero_iff_equal():
    pts = list(iter_vectors(1, 2))
    for b1, q1 in pts:
        for b2, q2 in pts:
            u, v = mv(b1, q1), mv(b2, q2)
            for m in Metric:
                d = distance(u, v, m)
                assert d == distance(v, u, m)
                assert (d == 0) == (u == v)


def test_distance_shape_mismatch():
    with pytest.raises(DimensionError):
        distance(mv([1], [1]), mv([1, 0], [1]), Metric.LEE)


def test_inner_product_examples():
    assert inner_product(mv([1], [2]), mv([1], [3])) == 0
    assert inner_product(mv([1], [1]), mv([1], [1])) == 3
    z = MixedVector.zero(2, 2)
    for bits, quats in iter_vectors(2, 2):
        assert inner_product(z, mv(bits, quats)) == 0


def test_inner_product_matches_oracle():
    for u in iter_vectors(2, 2):
        for v in iter_vectors(2, 2):
            assert inner_product(mv(*u), mv(*v)) == naive_inner(u, v)


def test_add_scalar_examples():
    assert scalar_mul(2, mv([1], [1])) == mv([0], [2])
    assert scalar_mul(3, mv([1], [2])) == mv([1], [2])
    assert add(mv([1], [3]), mv([1], [3])) == mv([0], [2])


def test_scalar_mul_is_repeated_add():
    for bits, quats in iter_vectors(2, 2):
        v = mv(bits, quats)
        acc = MixedVector.zero(2, 2)
        for a in range(4):
            assert scalar_mul(a, v) == acc
            acc = acc + v


def test_gray_isometry_random_pairs():
    rng = random.Random(12345)
    for _ in range(2000):
        gamma = rng.randrange(0, 13)
        delta = rng.randrange(0, 13)
        if gamma + delta == 0:
            continue
        u = MixedVector(gamma, delta, rng.getrandbits(gamma + 2 * delta))
        v = MixedVector(gamma, delta, rng.getrandbits(gamma + 2 * delta))
        assert distance(u, v, Metric.LEE) == gray_map(u).distance(gray_map(v))


def test_metric_ordering_lee_below_euclidean():
    for bits, quats in iter_vectors(2, 3):
        v = mv(bits, quats)
        assert v.weight(Metric.LEE) <= v.weight(Metric.EUCLIDEAN)


def _symbol_enumerator(metric):
    """Coefficients of the per-pair weight enumerator over all 8 mixed symbols."""
    coeffs = [0] * 6
    for b in (0, 1):
        for q in (0, 1, 2, 3):
            coeffs[naive_weight((b,), (q,), metric)] += 1
    return coeffs


def test_per_symbol_euclidean_enumerator():
    # 1 + 3x + 2x^2 + x^4 + x^5
    assert _symbol_enumerator("euclidean") == [1, 3, 2, 0, 1, 1]


def test_per_symbol_lee_enumerator():
    # (1 + x)^3
    assert _symbol_enumerator("lee") == [1, 3, 3, 1, 0, 0]


def test_inner_product_biadditive():
    rng = random.Random(999)
    for _ in range(300):
        gamma, delta = rng.randrange(0, 6), rng.randrange(0, 6)
        if gamma + delta == 0:
            continue
        nbits = gamma + 2 * delta
        u = MixedVector(gamma, delta, rng.getrandbits(nbits))
        w = MixedVector(gamma, delta, rng.getrandbits(nbits))
        v = MixedVector(gamma, delta, rng.getrandbits(nbits))
        assert inner_product(u + w, v) == (inner_product(u, v) + inner_product(w, v)) % 4


def test_render_parse_round_trip():
    v = mv([0, 1], [0, 1, 2, 3])
    assert v.render() == "01 | 0123"
    assert MixedVector.parse("01 | 0123") == v
    assert MixedVector.parse(" 0 1 |0 12 3") == v
    assert MixedVector.parse(" | 13") == mv([], [1, 3])
    assert MixedVector.parse("10 | ") == mv([1, 0], [])
    for bits, quats in iter_vectors(2, 2):
        v = mv(bits, quats)
        assert MixedVector.parse(v.render()) == v


def test_parse_rejects_bad_digits():
    with pytest.raises(ValueError):
        MixedVector.parse("02 | 1")
    with pytest.raises(ValueError):
        MixedVector.parse("0 | 4")
    with pytest.raises(ValueError):
        MixedVector.parse("01 01")


def test_binary_vector_basics():
    b = BinaryVector.from_bits([1, 0, 1])
    assert b.bits == (1, 0, 1)
    assert b.weight() == 2
    assert str(b) == "101"
    assert b.distance(BinaryVector.from_bits([0, 0, 1])) == 1


def test_mixed_vector_order():
    assert MixedVector.zero(1, 1).order() == 1
    assert mv([1], [0]).order() == 2
    assert mv([0], [2]).order() == 2
    assert mv([0], [1]).order() == 4
    assert mv([1], [3]).order() == 4
