"""Builders for the code families under study.

Repetition and block-repetition codes live in pair form: a "length n" code
occupies n binary and n quaternary coordinates, pair i being (binary i,
quaternary i).  Simplex builders tile binary and quaternary component
generators side by side into k mixed rows; MacDonald builders delete one
occurrence of every column of a zero-padded lower-order generator; the
additive Reed-Muller family doubles coordinates Plotkin-style.

All builders are deterministic: columns are enumerated in lexicographic
order everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .alphabet import MixedVector
from .codes import Code, GeneratorMatrix, ResourceBudgetError

DEFAULT_COORD_BUDGET = 1 << 20


class ConstructionError(ValueError):
    """A required deletion column is absent from the host matrix."""


# ---------------------------------------------------------------------------
# repetition codes

# constant pair generating each of the seven basic repetition codes
REPETITION_PAIRS = {1: (0, 1), 2: (0, 2), 3: (0, 3), 4: (1, 0),
                    5: (1, 1), 6: (1, 2), 7: (1, 3)}

# rows realizing the codes as listed (for i in {5, 6, 7} the single printed
# generator spans a proper subgroup of the listed set; the listing wins and
# the discrepancy is surfaced by the audit)
_REPETITION_ROWS = {
    1: ((0, 1),),
    2: ((0, 2),),
    3: ((0, 3),),
    4: ((1, 0),),
    5: ((1, 0), (0, 1)),
    6: ((1, 0), (0, 2)),
    7: ((1, 0), (0, 3)),
}


def repetition_printed_row(i: int, n: int) -> MixedVector:
    """The one-row generator as printed: the constant pair repeated n times."""
    if i not in REPETITION_PAIRS:
        raise ValueError(f"repetition family index must be 1..7, got {i}")
    b, q = REPETITION_PAIRS[i]
    return MixedVector.from_digits([b] * n, [q] * n)


def repetition_code(i: int, n: int) -> Code:
    """The i-th basic repetition code of n pairs, as the listed constant set."""
    if i not in _REPETITION_ROWS:
        raise ValueError(f"repetition family index must be 1..7, got {i}")
    if n < 1:
        raise ValueError("pair count must be positive")
    rows = [MixedVector.from_digits([b] * n, [q] * n) for b, q in _REPETITION_ROWS[i]]
    return Code.from_rows(rows)


# ---------------------------------------------------------------------------
# block repetition

@dataclass(frozen=True)
class BlockRepetitionSpec:
    blocks: tuple[int, int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.blocks) != 7 or any(b < 0 for b in self.blocks):
            raise ValueError("need seven nonnegative block lengths")
        if sum(self.blocks) == 0:
            raise ValueError("at least one block must be nonzero")

    @property
    def n(self) -> int:
        return sum(self.blocks)


def _blocks_vector(spec: BlockRepetitionSpec, pairs) -> MixedVector:
    bits, quats = [], []
    for length, (b, q) in zip(spec.blocks, pairs):
        bits.extend([b] * length)
        quats.extend([q] * length)
    return MixedVector.from_digits(bits, quats)


def block_repetition_row(spec: BlockRepetitionSpec) -> MixedVector:
    """The printed one-row generator: block i filled with constant pair i."""
    return _blocks_vector(spec, [REPETITION_PAIRS[i] for i in range(1, 8)])


# The eight spanning vectors listed for the block repetition code, by block
# constants.  Blocks 1 and 2 of the eighth vector are garbled in the source
# text and are read as the constants 03 and 02.
_LISTED_BLOCK_VECTORS = (
    ((0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (0, 0)),
    ((0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3)),
    ((0, 1), (0, 2), (0, 3), (0, 0), (0, 1), (0, 2), (0, 3)),
    ((0, 2), (0, 1), (0, 2), (0, 0), (0, 2), (0, 1), (0, 2)),
    ((0, 3), (0, 2), (0, 1), (0, 0), (0, 3), (1, 0), (0, 1)),
    ((0, 0), (0, 0), (0, 0), (1, 0), (1, 0), (1, 0), (1, 0)),
    ((0, 2), (0, 0), (0, 2), (1, 0), (1, 2), (1, 0), (1, 2)),
    ((0, 3), (0, 2), (0, 1), (1, 0), (1, 3), (1, 2), (1, 1)),
)


def block_repetition(spec: BlockRepetitionSpec, span: str = "generator") -> Code:
    """`generator`: the subgroup of the printed one-row matrix (at most 4
    codewords).  `paper_listed`: the additive closure of the eight listed
    vectors, which is generally larger."""
    if span == "generator":
        return Code.from_rows([block_repetition_row(spec)])
    if span == "paper_listed":
        rows = [_blocks_vector(spec, pairs) for pairs in _LISTED_BLOCK_VECTORS]
        return Code.from_rows(rows)
    raise ValueError(f"span must be 'generator' or 'paper_listed', got {span!r}")


# ---------------------------------------------------------------------------
# simplex components

def binary_simplex(k: int, variant: str) -> np.ndarray:
    """k x 2^k (alpha: all columns) or k x (2^k - 1) (beta: nonzero columns),
    columns in lexicographic order, most significant digit in row 0."""
    if k < 1:
        raise ValueError("k must be >= 1")
    start = 0 if variant == "alpha" else 1
    if variant not in ("alpha", "beta"):
        raise ValueError(f"variant must be 'alpha' or 'beta', got {variant!r}")
    cols = [[(j >> (k - 1 - i)) & 1 for i in range(k)] for j in range(start, 1 << k)]
    return np.array(cols, dtype=np.uint8).T.reshape(k, len(cols))


def quaternary_simplex(k: int, variant: str) -> np.ndarray:
    """Alpha: k x 4^k, all Z4^k columns lexicographic.  Beta: the recursion
    from the one-column base [1]: first row is ones over a full alpha block
    then 0s and 2s over two beta blocks, with [alpha | beta | beta] below."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if variant == "alpha":
        cols = [[(j >> (2 * (k - 1 - i))) & 3 for i in range(k)] for j in range(1 << (2 * k))]
        return np.array(cols, dtype=np.uint8).T.reshape(k, len(cols))
    if variant != "beta":
        raise ValueError(f"variant must be 'alpha' or 'beta', got {variant!r}")
    if k == 1:
        return np.array([[1]], dtype=np.uint8)
    prev_a = quaternary_simplex(k - 1, "alpha")
    prev_b = quaternary_simplex(k - 1, "beta")
    la, lb = prev_a.shape[1], prev_b.shape[1]
    top = np.concatenate([np.ones(la, dtype=np.uint8),
                          np.zeros(lb, dtype=np.uint8),
                          np.full(lb, 2, dtype=np.uint8)])
    bottom = np.concatenate([prev_a, prev_b, prev_b], axis=1)
    return np.vstack([top, bottom])


@dataclass(frozen=True)
class SimplexParams:
    k: int
    variant: str

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.variant not in ("alpha", "beta"):
            raise ValueError(f"variant must be 'alpha' or 'beta', got {self.variant!r}")


def _tiled_rows(bin_mat: np.ndarray, bin_reps: int, quat_mat: np.ndarray,
                quat_reps: int, budget: int) -> GeneratorMatrix:
    k = bin_mat.shape[0]
    gamma = bin_mat.shape[1] * bin_reps
    delta = quat_mat.shape[1] * quat_reps
    if gamma + delta > budget:
        raise ResourceBudgetError(f"matrix would have {gamma + delta} columns, budget {budget}")
    rows = [
        MixedVector.from_digits(np.tile(bin_mat[i], bin_reps).tolist(),
                                np.tile(quat_mat[i], quat_reps).tolist())
        for i in range(k)
    ]
    return GeneratorMatrix(gamma, delta, tuple(rows))


def mixed_simplex(p: SimplexParams, force: bool = False,
                  budget: int = DEFAULT_COORD_BUDGET) -> GeneratorMatrix:
    """Alpha: binary component tiled 2^(2k) times, quaternary tiled 2^k
    times.  Beta: tiled 2^k and 2^(k-1) times; defined for k >= 3 (`force`
    permits smaller k for experiments)."""
    k = p.k
    if p.variant == "beta" and k < 3 and not force:
        raise ValueError("beta simplex is defined for k >= 3 (use force to override)")
    if p.variant == "alpha":
        return _tiled_rows(binary_simplex(k, "alpha"), 1 << (2 * k),
                           quaternary_simplex(k, "alpha"), 1 << k, budget)
    return _tiled_rows(binary_simplex(k, "beta"), 1 << k,
                       quaternary_simplex(k, "beta"), 1 << (k - 1), budget)


# ---------------------------------------------------------------------------
# MacDonald codes

@dataclass(frozen=True)
class MacDonaldParams:
    k: int
    u: int
    variant: str

    def __post_init__(self):
        if not 1 <= self.u <= self.k - 1:
            raise ValueError("need 1 <= u <= k - 1")
        if self.variant not in ("alpha", "beta"):
            raise ValueError(f"variant must be 'alpha' or 'beta', got {self.variant!r}")


def delete_columns(host: np.ndarray, victim: np.ndarray) -> np.ndarray:
    """Remove one occurrence of every column of `victim` from `host`."""
    cols = [tuple(host[:, j]) for j in range(host.shape[1])]
    keep = list(range(host.shape[1]))
    for j in range(victim.shape[1]):
        target = tuple(victim[:, j])
        for pos, idx in enumerate(keep):
            if cols[idx] == target:
                del keep[pos]
                break
        else:
            raise ConstructionError(f"column {target} not present in host matrix")
    return host[:, keep]


def _component_macdonald(k: int, u: int, variant: str, ring: str) -> np.ndarray:
    build = binary_simplex if ring == "z2" else quaternary_simplex
    host = build(k, variant)
    sub = build(u, variant)
    victim = np.vstack([np.zeros((k - u, sub.shape[1]), dtype=np.uint8), sub])
    return delete_columns(host, victim)


def macdonald_matrix(p: MacDonaldParams, force: bool = False,
                     budget: int = DEFAULT_COORD_BUDGET) -> GeneratorMatrix:
    """Mixed MacDonald generator: per-copy deletion of the zero-padded
    lower-order simplex columns, then the usual simplex tiling."""
    if p.variant == "beta" and p.k < 3 and not force:
        raise ValueError("beta MacDonald is defined for k >= 3 (use force to override)")
    bm = _component_macdonald(p.k, p.u, p.variant, "z2")
    qm = _component_macdonald(p.k, p.u, p.variant, "z4")
    if p.variant == "alpha":
        return _tiled_rows(bm, 1 << (2 * p.k), qm, 1 << p.k, budget)
    return _tiled_rows(bm, 1 << p.k, qm, 1 << (p.k - 1), budget)


# ---------------------------------------------------------------------------
# additive Reed-Muller

def arm_first_order(m: int) -> GeneratorMatrix:
    """The explicit first-order matrix on 2^(m-1) pairs: m-2 order-two rows
    of alternating 0/2 quaternary blocks (block i has size 2^((m-1)-i)),
    then the constant (1|1) row."""
    if m < 3:
        raise ValueError("m must be >= 3")
    n = 1 << (m - 1)
    rows = []
    for i in range(2, m):
        size = 1 << ((m - 1) - i)
        pattern = ([0] * size + [2] * size) * (n // (2 * size))
        rows.append(MixedVector.from_digits([0] * n, pattern))
    rows.append(MixedVector.from_digits([1] * n, [1] * n))
    return GeneratorMatrix(n, n, tuple(rows))


def _gray_ones(n: int) -> MixedVector:
    # binary image is the all-ones string: binary part 1s, quaternary 2s
    return MixedVector.from_digits([1] * n, [2] * n)


def _full_ambient_rows(n: int) -> list[MixedVector]:
    rows = [MixedVector.from_digits([1 if j == i else 0 for j in range(n)], [0] * n)
            for i in range(n)]
    rows += [MixedVector.from_digits([0] * n, [1 if j == i else 0 for j in range(n)])
             for i in range(n)]
    return rows


def arm_recursive(r: int, m: int, budget: int = DEFAULT_COORD_BUDGET) -> GeneratorMatrix:
    """Plotkin-style doubling on 2^m pairs.

    Base cases: order 0 is the two-element code spanned by the vector whose
    binary image is all ones; order m is the full ambient group.
    """
    if not 0 <= r <= m:
        raise ValueError("need 0 <= r <= m")
    n = 1 << m
    if 2 * n > budget:
        raise ResourceBudgetError(f"matrix would have {2 * n} columns, budget {budget}")
    if r == 0:
        return GeneratorMatrix(n, n, (_gray_ones(n),))
    if r == m:
        return GeneratorMatrix(n, n, tuple(_full_ambient_rows(n)))
    left = arm_recursive(r, m - 1, budget)
    low = arm_recursive(r - 1, m - 1, budget)
    half = 1 << (m - 1)
    rows = [
        MixedVector.from_digits(v.bits + v.bits, v.quats + v.quats)
        for v in left.rows
    ]
    rows += [
        MixedVector.from_digits((0,) * half + w.bits, (0,) * half + w.quats)
        for w in low.rows
    ]
    return GeneratorMatrix(n, n, tuple(rows))
