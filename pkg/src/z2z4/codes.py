"""Codes as row-generated subgroups of Z2^gamma x Z4^delta.

A code is presented by a generator matrix (rows may be dependent; the
effective independent structure is recovered by row reduction).  The
canonical invariants are the type (gamma, delta; lambda, mu; kappa):
|C| = 2^(lambda + 2*mu), the order-two subcode has 2^(lambda + mu)
elements, and kappa is the GF(2) rank of its binary projection.

Two dual-code routes are kept deliberately separate: an algebraic one read
off the standard form (used everywhere, self-checked), and `kernel_dual`,
an exhaustive ambient sweep that serves as the ground-truth oracle at desk
scale.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _bitops as B
from .alphabet import DimensionError, Metric, MixedVector, ambient_size

DEFAULT_AMBIENT_BUDGET = 1 << 24
DEFAULT_SIZE_BUDGET = 1 << 24
HARD_BUDGET_CEILING = 1 << 28
NUMPY_BITS = 62  # keys wider than this fall back to Python ints


class ResourceBudgetError(RuntimeError):
    """A desk-scale budget would be exceeded; names the violated limit."""


class ZeroCodeError(ValueError):
    """The zero code has no nonzero codeword."""


# ---------------------------------------------------------------------------
# generator matrices

@dataclass(frozen=True)
class GeneratorMatrix:
    gamma: int
    delta: int
    rows: tuple[MixedVector, ...]

    def __post_init__(self):
        for r in self.rows:
            if (r.gamma, r.delta) != (self.gamma, self.delta):
                raise DimensionError(
                    f"row shape ({r.gamma},{r.delta}) != matrix shape ({self.gamma},{self.delta})"
                )

    @classmethod
    def from_rows(cls, rows: Sequence[MixedVector], gamma: int | None = None, delta: int | None = None):
        rows = tuple(rows)
        if not rows and (gamma is None or delta is None):
            raise ValueError("empty matrix needs explicit gamma and delta")
        if rows:
            gamma, delta = rows[0].gamma, rows[0].delta
        return cls(gamma, delta, rows)

    @property
    def row_orders(self) -> tuple[str, ...]:
        """'two' when 2*row = 0 (all quaternary entries even), else 'four'."""
        return tuple("four" if r.order() == 4 else "two" for r in self.rows)

    def to_digit_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        bins = np.array([r.bits for r in self.rows], dtype=np.uint8).reshape(len(self.rows), self.gamma)
        quats = np.array([r.quats for r in self.rows], dtype=np.uint8).reshape(len(self.rows), self.delta)
        return bins, quats

    def permuted(self, bin_perm: Sequence[int], quat_perm: Sequence[int]) -> "GeneratorMatrix":
        """Columns reordered so new column j is old column perm[j]."""
        rows = []
        for r in self.rows:
            bits, quats = r.bits, r.quats
            rows.append(MixedVector.from_digits(
                [bits[i] for i in bin_perm], [quats[j] for j in quat_perm]))
        return GeneratorMatrix(self.gamma, self.delta, tuple(rows))

    def render(self) -> str:
        lines = [f"gamma={self.gamma} delta={self.delta}"]
        lines.extend(r.render() for r in self.rows)
        return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(r"^gamma\s*=\s*(\d+)\s+delta\s*=\s*(\d+)\s*$")


def parse_matrix(text: str) -> GeneratorMatrix:
    """Matrix file format: header line `gamma=<g> delta=<d>`, one row per
    line in MixedVector text form, `#` comments ignored."""
    header = None
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise ValueError(f"expected 'gamma=<g> delta=<d>' header, got {line!r}")
            header = (int(m.group(1)), int(m.group(2)))
            continue
        v = MixedVector.parse(line)
        if (v.gamma, v.delta) != header:
            raise DimensionError(f"row shape ({v.gamma},{v.delta}) != header {header}")
        rows.append(v)
    if header is None:
        raise ValueError("missing matrix header line")
    return GeneratorMatrix(header[0], header[1], tuple(rows))


# ---------------------------------------------------------------------------
# type and weight records

@dataclass(frozen=True)
class CodeType:
    gamma: int
    delta: int
    lam: int
    mu: int
    kappa: int

    @property
    def size(self) -> int:
        return 1 << (self.lam + 2 * self.mu)

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "delta": self.delta,
            "lambda": self.lam,
            "mu": self.mu,
            "kappa": self.kappa,
        }

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.gamma, self.delta, self.lam, self.mu, self.kappa)


@dataclass(frozen=True)
class WeightDistribution:
    metric: Metric
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def minimum(self) -> int:
        nz = [w for w, c in self.counts.items() if w > 0 and c > 0]
        if not nz:
            raise ZeroCodeError("zero code has no minimum distance")
        return min(nz)

    def distinct_nonzero(self) -> int:
        return sum(1 for w, c in self.counts.items() if w > 0 and c > 0)

    def to_json(self) -> dict:
        return {
            "metric": self.metric.value,
            "counts": {str(w): self.counts[w] for w in sorted(self.counts)},
        }

    def to_csv(self) -> str:
        lines = ["weight,count"]
        lines.extend(f"{w},{self.counts[w]}" for w in sorted(self.counts))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# standard form

@dataclass(frozen=True)
class StandardForm:
    """Row-reduced generator matrix in the block template

        [ I_k  T' | 2T1  0           0   ]
        [ 0    0  | 2T2  2I_(lam-k)  0   ]
        [ 0    S' | S    R           I_mu]

    together with the column permutation that carries the original code to
    the code generated by `matrix` (new column j = old column perm[j]).
    """

    matrix: GeneratorMatrix
    bin_perm: tuple[int, ...]
    quat_perm: tuple[int, ...]
    kappa: int
    lam: int
    mu: int
    Tp: np.ndarray = field(repr=False)
    T1: np.ndarray = field(repr=False)
    T2: np.ndarray = field(repr=False)
    Sp: np.ndarray = field(repr=False)
    S: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)

    @property
    def q1(self) -> int:
        return self.matrix.delta - (self.lam - self.kappa) - self.mu

    def code_type(self) -> CodeType:
        return CodeType(self.matrix.gamma, self.matrix.delta, self.lam, self.mu, self.kappa)


def standard_form(matrix: GeneratorMatrix) -> StandardForm:
    """Deterministic module row reduction with column permutations only.

    Pivot order: order-four pivots on quaternary columns first, then binary
    pivots, then order-two (doubled) quaternary pivots; columns are scanned
    ascending and the lowest-index candidate row wins.
    """
    gamma, delta = matrix.gamma, matrix.delta
    nrows = len(matrix.rows)
    Bm, Qm = matrix.to_digit_arrays()
    Bm = Bm.astype(np.int64) % 2
    Qm = Qm.astype(np.int64) % 4
    active = list(range(nrows))
    quat4_pivots: list[tuple[int, int]] = []
    bin_pivots: list[tuple[int, int]] = []
    quat2_pivots: list[tuple[int, int]] = []

    def subtract(dst: int, src: int, coef: int) -> None:
        if coef % 4 == 0:
            return
        Bm[dst] = (Bm[dst] - coef * Bm[src]) % 2
        Qm[dst] = (Qm[dst] - coef * Qm[src]) % 4

    # phase 1: unit pivots on quaternary columns
    for col in range(delta):
        pivot = next((r for r in active if Qm[r, col] % 2 == 1), None)
        if pivot is None:
            continue
        if Qm[pivot, col] == 3:
            Qm[pivot] = (3 * Qm[pivot]) % 4  # scale by the unit 3
        for r in range(nrows):
            if r != pivot:
                subtract(r, pivot, int(Qm[r, col]))
        active.remove(pivot)
        quat4_pivots.append((pivot, col))

    # phase 2: binary pivots
    for col in range(gamma):
        pivot = next((r for r in active if Bm[r, col] == 1), None)
        if pivot is None:
            continue
        for r in range(nrows):
            if r != pivot:
                subtract(r, pivot, int(Bm[r, col]))
        active.remove(pivot)
        bin_pivots.append((pivot, col))

    # phase 3: doubled pivots on quaternary columns; odd entries above a
    # doubled pivot can only be reduced mod 2, which is exactly the template
    for col in range(delta):
        pivot = next((r for r in active if Qm[r, col] == 2), None)
        if pivot is None:
            continue
        for r in range(nrows):
            if r != pivot:
                subtract(r, pivot, int(Qm[r, col]) >> 1)
        active.remove(pivot)
        quat2_pivots.append((pivot, col))

    for r in active:  # leftovers must be dependent
        assert not Bm[r].any() and not Qm[r].any(), "row reduction left a nonzero row"

    kappa, mu = len(bin_pivots), len(quat4_pivots)
    lam = kappa + len(quat2_pivots)

    bpiv = [c for _, c in bin_pivots]
    bin_perm = tuple(bpiv + [c for c in range(gamma) if c not in set(bpiv)])
    q2cols = [c for _, c in quat2_pivots]
    q4cols = [c for _, c in quat4_pivots]
    used = set(q2cols) | set(q4cols)
    qfree = [c for c in range(delta) if c not in used]
    quat_perm = tuple(qfree + q2cols + q4cols)

    row_order = [r for r, _ in bin_pivots] + [r for r, _ in quat2_pivots] + [r for r, _ in quat4_pivots]
    Bp = Bm[row_order][:, list(bin_perm)]
    Qp = Qm[row_order][:, list(quat_perm)]

    q1 = len(qfree)
    sl_bin_rest = slice(kappa, gamma)
    r1, r2, r3 = slice(0, kappa), slice(kappa, lam), slice(lam, lam + mu)
    Tp = Bp[r1, sl_bin_rest].astype(np.uint8)
    Sp = Bp[r3, sl_bin_rest].astype(np.uint8)
    T1 = (Qp[r1, :q1] // 2).astype(np.uint8)
    T2 = (Qp[r2, :q1] // 2).astype(np.uint8)
    S = Qp[r3, :q1].astype(np.uint8)
    R = Qp[r3, q1:q1 + lam - kappa].astype(np.uint8)

    assert np.array_equal(Bp[r1, :kappa], np.eye(kappa, dtype=np.int64))
    assert np.array_equal(Qp[r2, q1:q1 + lam - kappa], 2 * np.eye(lam - kappa, dtype=np.int64))
    assert np.array_equal(Qp[r3, q1 + lam - kappa:], np.eye(mu, dtype=np.int64))
    assert not Qp[r1, q1:].any() and not Bp[r2].any() and not Qp[r2, q1 + lam - kappa:].any()
    assert not Bp[r3, :kappa].any() and R.max(initial=0) <= 1

    rows = tuple(
        MixedVector.from_digits(Bp[i].tolist(), Qp[i].tolist()) for i in range(lam + mu)
    )
    return StandardForm(
        matrix=GeneratorMatrix(gamma, delta, rows),
        bin_perm=bin_perm, quat_perm=quat_perm,
        kappa=kappa, lam=lam, mu=mu,
        Tp=Tp, T1=T1, T2=T2, Sp=Sp, S=S, R=R,
    )


def classify_type(matrix: GeneratorMatrix) -> CodeType:
    """(gamma, delta; lambda, mu; kappa) from the reduced independent rows."""
    return standard_form(matrix).code_type()


def _dual_rows(sf: StandardForm, as_printed: bool) -> list[MixedVector]:
    gamma, delta = sf.matrix.gamma, sf.matrix.delta
    kappa, lam, mu, q1 = sf.kappa, sf.lam, sf.mu, sf.q1
    rows = []

    def make(bin_piv, bin_rest, q_free, q_two, q_four):
        bits = list(bin_piv) + list(bin_rest)
        quats = list(q_free) + list(q_two) + list(q_four)
        return MixedVector.from_digits([b % 2 for b in bits], [q % 4 for q in quats])

    for t in range(gamma - kappa):
        e = [1 if i == t else 0 for i in range(gamma - kappa)]
        rows.append(make(sf.Tp[:, t], e, [0] * q1, [0] * (lam - kappa), 2 * sf.Sp[:, t]))
    for j in range(lam - kappa):
        e = [(1 if as_printed else 2) if i == j else 0 for i in range(lam - kappa)]
        rows.append(make([0] * kappa, [0] * (gamma - kappa), [0] * q1, e, 2 * sf.R[:, j]))
    if q1:
        SRT2 = (sf.S.astype(np.int64) + sf.R.astype(np.int64) @ sf.T2.astype(np.int64)) % 4
        for s in range(q1):
            e = [1 if i == s else 0 for i in range(q1)]
            rows.append(make(sf.T1[:, s], [0] * (gamma - kappa), e, sf.T2[:, s], (-SRT2[:, s]) % 4))
    return rows


def parity_check(sf: StandardForm, as_printed: bool = False) -> GeneratorMatrix:
    """Generator matrix of the dual of the standard-form code.

    `as_printed=True` keeps the bare identity block on the order-two rows;
    that variant is generally not orthogonal to the code (it is kept only so
    the audit can report it), while the default doubles the block and is
    verified orthogonal on construction.
    """
    rows = _dual_rows(sf, as_printed)
    H = GeneratorMatrix(sf.matrix.gamma, sf.matrix.delta, tuple(rows))
    if not as_printed:
        assert rows_orthogonal(sf.matrix, H), "derived parity check failed orthogonality"
    return H


def rows_orthogonal(G: GeneratorMatrix, H: GeneratorMatrix) -> bool:
    from .alphabet import inner_product
    return all(inner_product(g, h) == 0 for g in G.rows for h in H.rows)


# ---------------------------------------------------------------------------
# the code object

class Code:
    """An additive code, preferably presented by a generator matrix.

    Codewords are materialized lazily as a sorted array of packed keys
    (numpy uint64 when gamma + 2*delta <= 62, Python ints otherwise).
    """

    def __init__(self, matrix: GeneratorMatrix | None, gamma: int, delta: int,
                 codewords=None):
        if matrix is None and codewords is None:
            raise ValueError("need a generator matrix or an explicit codeword set")
        self.gamma, self.delta = gamma, delta
        self._matrix = matrix
        self._codewords = codewords
        self._sf: StandardForm | None = None

    @classmethod
    def from_matrix(cls, matrix: GeneratorMatrix) -> "Code":
        return cls(matrix, matrix.gamma, matrix.delta)

    @classmethod
    def from_rows(cls, rows: Sequence[MixedVector], gamma: int | None = None,
                  delta: int | None = None) -> "Code":
        m = GeneratorMatrix.from_rows(rows, gamma, delta)
        return cls.from_matrix(m)

    @classmethod
    def from_codewords(cls, gamma: int, delta: int, keys) -> "Code":
        if isinstance(keys, np.ndarray):
            keys = np.unique(keys)
        else:
            keys = sorted(set(int(k) for k in keys))
        return cls(None, gamma, delta, keys)

    # -- structure ---------------------------------------------------------

    @property
    def fits_numpy(self) -> bool:
        return self.gamma + 2 * self.delta <= NUMPY_BITS

    @property
    def matrix(self) -> GeneratorMatrix:
        if self._matrix is None:
            self._matrix = self._derive_matrix()
        return self._matrix

    def standard(self) -> StandardForm:
        if self._sf is None:
            self._sf = standard_form(self.matrix)
        return self._sf

    def type(self) -> CodeType:
        return self.standard().code_type()

    @property
    def size(self) -> int:
        if self._codewords is not None:
            return len(self._codewords)
        return self.type().size

    def ambient_bits(self) -> int:
        return self.gamma + 2 * self.delta

    def _nonzero_multiples(self, k: int) -> list[int]:
        out = []
        a = k
        while a:
            out.append(a)
            a = B.key_add(a, k, self.gamma, self.delta)
        return out

    def _derive_matrix(self) -> GeneratorMatrix:
        """Greedy independent generating set from an explicit codeword set."""
        keys = self._codewords
        rows: list[MixedVector] = []
        if isinstance(keys, np.ndarray):
            span = np.zeros(1, dtype=np.uint64)
            while len(span) < len(keys):
                missing = keys[~np.isin(keys, span)]
                k = int(missing[0])
                rows.append(MixedVector(self.gamma, self.delta, k))
                parts = [span] + [
                    B.key_add_np(span, a, self.gamma, self.delta)
                    for a in self._nonzero_multiples(k)
                ]
                span = np.unique(np.concatenate(parts))
        else:
            span = {0}
            for k in keys:
                if k in span:
                    continue
                rows.append(MixedVector(self.gamma, self.delta, k))
                mults = self._nonzero_multiples(k)
                span |= {B.key_add(s, m, self.gamma, self.delta) for s in span for m in mults}
                if len(span) == len(keys):
                    break
        return GeneratorMatrix(self.gamma, self.delta, tuple(rows))

    # -- enumeration --------------------------------------------------------

    def codewords(self, budget: int = DEFAULT_SIZE_BUDGET):
        """Sorted packed keys of every codeword (dedup-aware)."""
        if self._codewords is None:
            self._codewords = self._enumerate(budget)
        return self._codewords

    def _enumerate(self, budget: int):
        rows = self.matrix.rows
        if self.fits_numpy:
            span = np.zeros(1, dtype=np.uint64)
            for r in rows:
                k = int(r.key)
                pos = np.searchsorted(span, np.uint64(k))
                if pos < len(span) and span[pos] == np.uint64(k):
                    continue
                order = r.order()
                if len(span) * order > budget:
                    raise ResourceBudgetError(f"code size exceeds enumeration budget {budget}")
                parts = [span]
                a = 0
                for _ in range(order - 1):
                    a = B.key_add(a, k, self.gamma, self.delta)
                    parts.append(B.key_add_np(span, a, self.gamma, self.delta))
                span = np.unique(np.concatenate(parts))
            return span
        span = {0}
        for r in rows:
            k = r.key
            if k in span:
                continue
            order = r.order()
            if len(span) * order > budget:
                raise ResourceBudgetError(f"code size exceeds enumeration budget {budget}")
            mults = []
            a = 0
            for _ in range(order - 1):
                a = B.key_add(a, k, self.gamma, self.delta)
                mults.append(a)
            span |= {B.key_add(s, m, self.gamma, self.delta) for s in span for m in mults}
        return sorted(span)

    def iter_codewords(self, budget: int = DEFAULT_SIZE_BUDGET) -> Iterator[MixedVector]:
        for k in self.codewords(budget):
            yield MixedVector(self.gamma, self.delta, int(k))

    def contains(self, v: MixedVector, budget: int = DEFAULT_SIZE_BUDGET) -> bool:
        cw = self.codewords(budget)
        if isinstance(cw, np.ndarray):
            pos = np.searchsorted(cw, np.uint64(v.key))
            return pos < len(cw) and cw[pos] == np.uint64(v.key)
        import bisect
        pos = bisect.bisect_left(cw, v.key)
        return pos < len(cw) and cw[pos] == v.key

    # -- duality -------------------------------------------------------------

    def dual(self) -> "Code":
        """Dual code via the standard form, mapped back to original columns.

        Self-checked: row orthogonality always, and the product of sizes
        must equal the ambient size.
        """
        sf = self.standard()
        H = parity_check(sf, as_printed=False)
        inv_bin = _invert_perm(sf.bin_perm)
        inv_quat = _invert_perm(sf.quat_perm)
        H0 = H.permuted(inv_bin, inv_quat)
        dual = Code.from_matrix(H0)
        assert rows_orthogonal(self.matrix, H0), "dual rows not orthogonal in original coordinates"
        assert self.size * dual.size == ambient_size(self.gamma, self.delta)
        return dual

    def gray_image_keys(self, budget: int = DEFAULT_SIZE_BUDGET):
        """Packed binary keys of the Gray image (same bit layout)."""
        cw = self.codewords(budget)
        if isinstance(cw, np.ndarray):
            return np.unique(B.key_gray_np(cw, self.gamma, self.delta))
        return sorted(B.key_gray(k, self.gamma, self.delta) for k in cw)


def _invert_perm(perm: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for new, old in enumerate(perm):
        inv[old] = new
    return tuple(inv)


def enumerate_codewords(matrix: GeneratorMatrix,
                        budget: int = DEFAULT_SIZE_BUDGET) -> Iterator[MixedVector]:
    """Stream of the distinct codewords generated by `matrix`."""
    return Code.from_matrix(matrix).iter_codewords(budget)


# ---------------------------------------------------------------------------
# kernel dual (exhaustive oracle)

def kernel_dual(code: Code, ambient_budget: int = DEFAULT_AMBIENT_BUDGET,
                chunk: int = 1 << 20) -> Code:
    """All ambient vectors orthogonal to every generator, by full sweep."""
    n = ambient_size(code.gamma, code.delta)
    if n > ambient_budget:
        raise ResourceBudgetError(
            f"ambient size 2^{code.ambient_bits()} exceeds budget {ambient_budget}")
    gens = [B.SyndromeMasks(r.key, code.gamma, code.delta) for r in code.matrix.rows]
    out = []
    for start, stop in B.iter_chunks(n, chunk):
        idx = np.arange(start, stop, dtype=np.uint64)
        ok = np.ones(stop - start, dtype=bool)
        for g in gens:
            ok &= g.eval_np(idx) == 0
        out.append(idx[ok])
    keys = np.concatenate(out) if out else np.zeros(1, dtype=np.uint64)
    return Code.from_codewords(code.gamma, code.delta, keys)


# ---------------------------------------------------------------------------
# weight distribution / minimum distance

def _weight_counts(code: Code, metric: Metric, budget: int,
                   chunk: int = 1 << 20, materialize_limit: int = 1 << 22) -> np.ndarray:
    maxw = code.gamma + 4 * code.delta
    counts = np.zeros(maxw + 1, dtype=np.int64)
    size = code.size
    if size > budget:
        raise ResourceBudgetError(f"code size {size} exceeds weight budget {budget}")
    if not code.fits_numpy:
        for k in code.codewords(budget):
            counts[B.key_weight(k, code.gamma, code.delta, metric.value)] += 1
        return counts
    materialize_limit = min(budget, materialize_limit)
    if code._codewords is not None or size <= materialize_limit:
        cw = code.codewords(budget)
        for start, stop in B.iter_chunks(len(cw), chunk):
            w = B.key_weight_np(cw[start:stop], code.gamma, code.delta, metric.value)
            counts += np.bincount(w, minlength=maxw + 1).astype(np.int64)
        return counts
    # Too large to materialize: split the reduced independent rows into a
    # head whose span is materialized once and a tail streamed as coset
    # representatives.  Coefficient tuples map to codewords bijectively, so
    # no dedup pass is needed.
    from itertools import product as iproduct

    rows = standard_rows_original(code)
    head = np.zeros(1, dtype=np.uint64)
    split = 0
    for r in rows:
        mults = code._nonzero_multiples(r.key)
        if len(head) * (len(mults) + 1) > chunk:
            break
        head = np.concatenate([head] + [B.key_add_np(head, a, code.gamma, code.delta)
                                        for a in mults])
        split += 1
    tails = [[0] + code._nonzero_multiples(r.key) for r in rows[split:]]
    for combo in iproduct(*tails):
        rep = 0
        for a in combo:
            rep = B.key_add(rep, a, code.gamma, code.delta)
        block = B.key_add_np(head, rep, code.gamma, code.delta) if rep else head
        w = B.key_weight_np(block, code.gamma, code.delta, metric.value)
        counts += np.bincount(w, minlength=maxw + 1).astype(np.int64)
    return counts


def standard_rows_original(code: Code) -> list[MixedVector]:
    """The reduced independent generators, in the original column order."""
    sf = code.standard()
    inv_b, inv_q = _invert_perm(sf.bin_perm), _invert_perm(sf.quat_perm)
    return list(sf.matrix.permuted(inv_b, inv_q).rows)


def weight_distribution(code: Code, metric: Metric,
                        budget: int = DEFAULT_SIZE_BUDGET) -> WeightDistribution:
    counts = _weight_counts(code, metric, budget)
    return WeightDistribution(metric, {int(w): int(c) for w, c in enumerate(counts) if c})


def minimum_distance(code: Code, metric: Metric,
                     budget: int = DEFAULT_SIZE_BUDGET) -> int:
    return weight_distribution(code, metric, budget).minimum()
