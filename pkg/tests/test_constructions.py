import numpy as np
import pytest

from z2z4.alphabet import Metric, MixedVector, ambient_size
from z2z4.codes import Code, minimum_distance, weight_distribution
from z2z4.constructions import (
    BlockRepetitionSpec,
    ConstructionError,
    MacDonaldParams,
    SimplexParams,
    arm_first_order,
    arm_recursive,
    binary_simplex,
    block_repetition,
    block_repetition_row,
    delete_columns,
    macdonald_matrix,
    mixed_simplex,
    quaternary_simplex,
    repetition_code,
    repetition_printed_row,
)

from oracles import naive_closure


def digit_set(code):
    return {(v.bits, v.quats) for v in code.iter_codewords()}


def consts(pairs, n):
    return {(tuple([b] * n), tuple([q] * n)) for b, q in pairs}


def test_repetition_c_alpha1():
    c = repetition_code(1, 1)
    assert digit_set(c) == consts([(0, 0), (0, 1), (0, 2), (0, 3)], 1)


def test_repetition_c_alpha5_all_eight_constants():
    c = repetition_code(5, 1)
    assert digit_set(c) == consts(
        [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3)], 1)


def test_repetition_c_alpha4_n2():
    c = repetition_code(4, 2)
    assert digit_set(c) == {((0, 0), (0, 0)), ((1, 1), (0, 0))}


def test_repetition_listings():
    # the full listing for every family at n = 2
    n = 2
    assert digit_set(repetition_code(1, n)) == digit_set(repetition_code(3, n))
    assert digit_set(repetition_code(5, n)) == digit_set(repetition_code(7, n))
    assert digit_set(repetition_code(2, n)) == consts([(0, 0), (0, 2)], n)
    assert digit_set(repetition_code(6, n)) == consts(
        [(0, 0), (0, 2), (1, 0), (1, 2)], n)


def test_repetition_printed_generator_spans_listing_only_for_small_families():
    for i in range(1, 8):
        printed = Code.from_rows([repetition_printed_row(i, 1)])
        listed = repetition_code(i, 1)
        if i in (1, 2, 3, 4):
            assert digit_set(printed) == digit_set(listed)
        else:
            assert digit_set(printed) < digit_set(listed)


def test_repetition_rejects_bad_index():
    with pytest.raises(ValueError):
        repetition_code(0, 1)
    with pytest.raises(ValueError):
        repetition_code(8, 1)


def test_block_repetition_unit_specs():
    c = block_repetition(BlockRepetitionSpec((1, 0, 0, 0, 0, 0, 0)))
    assert digit_set(c) == consts([(0, 0), (0, 1), (0, 2), (0, 3)], 1)
    c = block_repetition(BlockRepetitionSpec((0, 0, 0, 1, 0, 0, 0)))
    assert digit_set(c) == {((0,), (0,)), ((1,), (0,))}


def test_block_repetition_all_ones_generator():
    spec = BlockRepetitionSpec((1, 1, 1, 1, 1, 1, 1))
    c = block_repetition(spec)
    assert c.size == 4
    row = block_repetition_row(spec)
    assert row.bits == (0, 0, 0, 1, 1, 1, 1)
    assert row.quats == (1, 2, 3, 0, 1, 2, 3)


def test_block_repetition_paper_listed_contains_generator_span():
    spec = BlockRepetitionSpec((1, 1, 1, 1, 1, 1, 1))
    gen = block_repetition(spec, "generator")
    listed = block_repetition(spec, "paper_listed")
    assert digit_set(gen) <= digit_set(listed)
    # the listed vectors do not all lie in the one-row span
    assert listed.size > gen.size


def test_binary_simplex_alpha_k1():
    assert binary_simplex(1, "alpha").tolist() == [[0, 1]]


def test_binary_simplex_shapes_and_columns():
    for k in (1, 2, 3):
        a = binary_simplex(k, "alpha")
        b = binary_simplex(k, "beta")
        assert a.shape == (k, 2 ** k)
        assert b.shape == (k, 2 ** k - 1)
        cols = {tuple(a[:, j]) for j in range(a.shape[1])}
        assert len(cols) == 2 ** k
        assert tuple([0] * k) not in {tuple(b[:, j]) for j in range(b.shape[1])}


def test_quaternary_simplex_alpha_k1():
    assert quaternary_simplex(1, "alpha").tolist() == [[0, 1, 2, 3]]


def test_quaternary_simplex_beta_k2():
    g = quaternary_simplex(2, "beta")
    assert g.tolist() == [[1, 1, 1, 1, 0, 2], [0, 1, 2, 3, 1, 1]]


def test_quaternary_simplex_beta_length_and_size():
    for k in (1, 2, 3):
        g = quaternary_simplex(k, "beta")
        assert g.shape == (k, 2 ** (k - 1) * (2 ** k - 1))
        rows = [MixedVector.from_digits([], g[i].tolist()) for i in range(k)]
        c = Code.from_rows(rows, 0, g.shape[1])
        assert c.size == 4 ** k


def test_mixed_simplex_alpha_k1():
    g = mixed_simplex(SimplexParams(1, "alpha"))
    assert (g.gamma, g.delta) == (8, 8)
    assert g.gamma + g.delta == 2 ** (3 * 1 + 1)
    c = Code.from_matrix(g)
    assert c.size == 4
    assert g.rows[0].bits == (0, 1) * 4
    assert g.rows[0].quats == (0, 1, 2, 3) * 2


def test_mixed_simplex_alpha_k2_size():
    g = mixed_simplex(SimplexParams(2, "alpha"))
    assert (g.gamma, g.delta) == (64, 64)
    assert Code.from_matrix(g).size == 2 ** 4


def test_mixed_simplex_beta_k3_shape():
    g = mixed_simplex(SimplexParams(3, "beta"))
    assert (g.gamma, g.delta) == (56, 112)


def test_mixed_simplex_beta_requires_force_below_k3():
    with pytest.raises(ValueError):
        mixed_simplex(SimplexParams(2, "beta"))
    g = mixed_simplex(SimplexParams(1, "beta"), force=True)
    assert (g.gamma, g.delta) == (2, 1)


def test_simplex_tiling_identity_k1():
    g = mixed_simplex(SimplexParams(1, "alpha"))
    tile = 2
    for v in Code.from_matrix(g).iter_codewords():
        first = v.bits[:tile]
        assert v.bits == first * (g.gamma // tile)


def test_simplex_tiling_identity_k2_sampled():
    g = mixed_simplex(SimplexParams(2, "alpha"))
    tile = 4
    words = list(Code.from_matrix(g).iter_codewords())
    for v in words[:8]:
        first = v.bits[:tile]
        assert v.bits == first * (g.gamma // tile)


def test_macdonald_k2_u1_alpha_shape():
    g = macdonald_matrix(MacDonaldParams(2, 1, "alpha"))
    assert (g.gamma, g.delta) == (32, 48)


def test_macdonald_column_counts_all_small_params():
    for k in (2, 3):
        for u in range(1, k):
            g = macdonald_matrix(MacDonaldParams(k, u, "alpha"))
            assert g.gamma == 2 ** (2 * k) * (2 ** k - 2 ** u)
            assert g.delta == 2 ** k * (4 ** k - 4 ** u)


def test_macdonald_deleted_binary_columns_have_zero_top():
    # every deleted column has its top k-u entries zero
    k, u = 3, 2
    host = binary_simplex(k, "alpha")
    kept = {tuple(c) for c in np.array(
        [r.bits for r in macdonald_matrix(MacDonaldParams(k, u, "alpha")).rows]
    ).T[: 2 ** k - 2 ** u].tolist()}
    from z2z4.constructions import _component_macdonald
    comp = _component_macdonald(k, u, "alpha", "z2")
    assert comp.shape == (k, 2 ** k - 2 ** u)
    host_cols = [tuple(host[:, j]) for j in range(host.shape[1])]
    comp_cols = [tuple(comp[:, j]) for j in range(comp.shape[1])]
    removed = list(host_cols)
    for c in comp_cols:
        removed.remove(c)
    assert all(col[: k - u] == (0,) * (k - u) for col in removed)


def test_macdonald_beta_small():
    g = macdonald_matrix(MacDonaldParams(3, 1, "beta"))
    assert (g.gamma, g.delta) == (8 * 6, 4 * 27)


def test_delete_columns_missing_column_errors():
    host = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    victim = np.array([[1], [1]], dtype=np.uint8)
    with pytest.raises(ConstructionError):
        delete_columns(host, victim)


def test_arm_first_order_m3():
    g = arm_first_order(3)
    rows = [(r.bits, r.quats) for r in g.rows]
    assert rows == [((0, 0, 0, 0), (0, 2, 0, 2)), ((1, 1, 1, 1), (1, 1, 1, 1))]
    c = Code.from_matrix(g)
    assert c.size == 8
    naive = naive_closure(4, 4, rows)
    assert digit_set(c) == set(naive)


def test_arm_first_order_m4_shape():
    g = arm_first_order(4)
    assert len(g.rows) == 3
    assert (g.gamma, g.delta) == (8, 8)
    assert g.rows[0].quats == (0, 0, 2, 2, 0, 0, 2, 2)
    assert g.rows[1].quats == (0, 2, 0, 2, 0, 2, 0, 2)


def test_arm_first_order_subcode_and_size():
    for m in (3, 4, 5):
        c = Code.from_matrix(arm_first_order(m))
        assert c.size == 2 ** m
        order2 = [v for v in c.iter_codewords() if v.order() <= 2]
        assert len(order2) == 2 ** (m - 1)


def test_arm_recursive_full_ambient_base():
    c = Code.from_matrix(arm_recursive(2, 2))
    assert c.size == ambient_size(4, 4)


def test_arm_recursive_r0_base():
    c = Code.from_matrix(arm_recursive(0, 3))
    assert c.size == 2
    words = digit_set(c)
    assert ((1,) * 8, (2,) * 8) in words


def test_arm_recursive_sizes_multiply():
    # the Plotkin stack maps coefficient pairs bijectively
    for (r, m) in [(1, 2), (1, 3), (2, 3)]:
        whole = Code.from_matrix(arm_recursive(r, m)).size
        left = Code.from_matrix(arm_recursive(r, m - 1)).size
        low = Code.from_matrix(arm_recursive(r - 1, m - 1)).size
        assert whole == left * low


def test_arm_recursive_cardinalities_enumerated():
    assert len(Code.from_matrix(arm_recursive(1, 3)).codewords()) == 256
    assert len(Code.from_matrix(arm_recursive(1, 4)).codewords()) == 512


def test_arm_recursive_min_lee_distances():
    assert minimum_distance(Code.from_matrix(arm_recursive(1, 2)), Metric.LEE) == 2
    assert minimum_distance(Code.from_matrix(arm_recursive(1, 3)), Metric.LEE) == 4
    assert minimum_distance(Code.from_matrix(arm_recursive(1, 4)), Metric.LEE) == 8


def test_arm_recursive_2_4_min_distance_by_enumeration():
    c = Code.from_matrix(arm_recursive(2, 4))
    assert c.size == 1 << 27
    assert minimum_distance(c, Metric.LEE, budget=1 << 27) == 4


def test_arm_recursive_rejects_bad_range():
    with pytest.raises(ValueError):
        arm_recursive(3, 2)
    with pytest.raises(ValueError):
        arm_recursive(-1, 2)


def test_builders_deterministic():
    a = mixed_simplex(SimplexParams(2, "alpha")).render()
    b = mixed_simplex(SimplexParams(2, "alpha")).render()
    assert a == b
    assert macdonald_matrix(MacDonaldParams(3, 2, "beta")).render() == \
        macdonald_matrix(MacDonaldParams(3, 2, "beta")).render()
    assert arm_recursive(1, 3).render() == arm_recursive(1, 3).render()
