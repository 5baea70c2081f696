"""Exact covering radii by two independent engines, plus the bound family.

The exhaustive engine sweeps every ambient point and takes the max-min
distance to the code; cost is ambient * |C|.  The coset engine sweeps the
ambient once, labels each point by its syndrome against the dual
generators, and takes the heaviest minimum-weight coset leader; cost is
ambient * (dual generator count), so it also covers codes whose size is
close to the ambient.  Both are deterministic, chunked, and optionally
thread the chunks (the reduction is associative and applied in chunk
order, so thread count never changes the answer).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _bitops as B
from .alphabet import Metric, MixedVector, ambient_size
from .codes import (
    Code,
    GeneratorMatrix,
    ResourceBudgetError,
    weight_distribution,
)

DEFAULT_AMBIENT_BUDGET = 1 << 24
DEFAULT_COSET_BUDGET = 1 << 22
DEFAULT_WORK_FACTOR = 64  # exhaustive work cap = ambient budget * factor
CHUNK = 1 << 20


class EngineDisagreement(RuntimeError):
    """The two covering-radius engines returned different radii."""


@dataclass(frozen=True)
class CoveringResult:
    metric: Metric
    radius: int
    witness: MixedVector
    engine: str

    def to_json(self) -> dict:
        return {
            "metric": self.metric.value,
            "radius": self.radius,
            "witness": self.witness.render(),
            "engine": self.engine,
        }


def _threads(threads: int | None) -> int:
    if threads is None:
        threads = os.cpu_count() or 1
    return max(1, threads)


def _map_chunks(fn, total: int, chunk: int, threads: int):
    ranges = list(B.iter_chunks(total, chunk))
    if threads <= 1 or len(ranges) <= 1:
        return [fn(a, b) for a, b in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, a, b) for a, b in ranges]
        return [f.result() for f in futures]


def _check_ambient(code: Code, ambient_budget: int) -> int:
    n = ambient_size(code.gamma, code.delta)
    if n > ambient_budget:
        raise ResourceBudgetError(
            f"ambient size 2^{code.ambient_bits()} exceeds ambient budget {ambient_budget}")
    return n


def covering_radius_exhaustive(code: Code, metric: Metric,
                               ambient_budget: int = DEFAULT_AMBIENT_BUDGET,
                               work_budget: int | None = None,
                               chunk: int = CHUNK,
                               threads: int | None = None) -> CoveringResult:
    """Exact max-min over the full ambient; witness is the lexicographically
    least deep hole."""
    n = _check_ambient(code, ambient_budget)
    if work_budget is None:
        work_budget = ambient_budget * DEFAULT_WORK_FACTOR
    size = code.size
    if n * size > work_budget:
        raise ResourceBudgetError(
            f"exhaustive work {n}*{size} exceeds work budget {work_budget}")
    cw = code.codewords()
    gamma, delta = code.gamma, code.delta
    negated = [B.key_neg(int(c), gamma, delta) for c in cw]

    def run(start, stop):
        idx = np.arange(start, stop, dtype=np.uint64)
        best = np.full(stop - start, 255, dtype=np.uint8)
        for nc in negated:
            d = B.key_weight_np(B.key_add_np(idx, nc, gamma, delta), gamma, delta, metric.value)
            np.minimum(best, d, out=best)
        r = int(best.max())
        return r, start + int(np.argmax(best == r))

    radius, witness = -1, None
    for r, w in _map_chunks(run, n, chunk, _threads(threads)):
        if r > radius:
            radius, witness = r, w
    return CoveringResult(metric, radius, MixedVector(gamma, delta, witness), "exhaustive")


class CosetEngine:
    """Coset-leader engine with the syndrome labels cached across metrics."""

    def __init__(self, code: Code,
                 ambient_budget: int = DEFAULT_AMBIENT_BUDGET,
                 coset_budget: int = DEFAULT_COSET_BUDGET,
                 chunk: int = CHUNK,
                 threads: int | None = None):
        self.code = code
        self.n = _check_ambient(code, ambient_budget)
        self.n_cosets = self.n // code.size
        if self.n_cosets > coset_budget:
            raise ResourceBudgetError(
                f"coset count {self.n_cosets} exceeds coset budget {coset_budget}")
        self.chunk = chunk
        self.threads = _threads(threads)
        dual_rows = code.dual().matrix.rows
        self._gens = []
        shift = 0
        for r in dual_rows:
            masks = B.SyndromeMasks(r.key, code.gamma, code.delta)
            if r.order() == 4:
                self._gens.append((masks, shift, 0))
                shift += 2
            else:
                # order-two rows have syndromes in {0, 2}: one label bit
                self._gens.append((masks, shift, 1))
                shift += 1
        assert (1 << shift) == self.n_cosets, "dual generators do not label the cosets"
        self._labels: list[np.ndarray] | None = None

    def _label_chunks(self) -> list[np.ndarray]:
        if self._labels is None:
            gens = self._gens

            def run(start, stop):
                idx = np.arange(start, stop, dtype=np.uint64)
                lab = np.zeros(stop - start, dtype=np.uint32)
                for masks, shift, downshift in gens:
                    syn = masks.eval_np(idx).astype(np.uint32)
                    lab |= (syn >> downshift) << shift
                return lab

            self._labels = _map_chunks(run, self.n, self.chunk, self.threads)
        return self._labels

    def _weight_chunks(self, metric: Metric) -> list[np.ndarray]:
        gamma, delta = self.code.gamma, self.code.delta

        def run(start, stop):
            idx = np.arange(start, stop, dtype=np.uint64)
            return B.key_weight_np(idx, gamma, delta, metric.value)

        return _map_chunks(run, self.n, self.chunk, self.threads)

    def leader_weights(self, metric: Metric) -> np.ndarray:
        """Minimum weight of each coset, indexed by syndrome label."""
        labels = self._label_chunks()
        weights = self._weight_chunks(metric)
        combined = np.concatenate([
            lab.astype(np.uint32) << np.uint32(6) | w.astype(np.uint32)
            for lab, w in zip(labels, weights)
        ])
        combined.sort()
        lab_sorted = combined >> np.uint32(6)
        first = np.empty(len(combined), dtype=bool)
        first[0] = True
        np.not_equal(lab_sorted[1:], lab_sorted[:-1], out=first[1:])
        assert int(first.sum()) == self.n_cosets, "some coset received no label"
        leader_weight = np.full(self.n_cosets, 255, dtype=np.uint8)
        leader_weight[lab_sorted[first]] = (combined[first] & np.uint32(63)).astype(np.uint8)
        return leader_weight

    def radius(self, metric: Metric) -> CoveringResult:
        gamma, delta = self.code.gamma, self.code.delta
        leader_weight = self.leader_weights(metric)
        radius = int(leader_weight.max())
        witness = None
        ranges = list(B.iter_chunks(self.n, self.chunk))
        for (start, stop), lab, w in zip(ranges, self._label_chunks(),
                                         self._weight_chunks(metric)):
            cand = (w == radius) & (leader_weight[lab] == radius)
            if cand.any():
                witness = start + int(np.argmax(cand))
                break
        return CoveringResult(metric, radius, MixedVector(gamma, delta, witness), "coset")


def covering_radius_coset(code: Code, metric: Metric,
                          ambient_budget: int = DEFAULT_AMBIENT_BUDGET,
                          coset_budget: int = DEFAULT_COSET_BUDGET,
                          chunk: int = CHUNK,
                          threads: int | None = None) -> CoveringResult:
    """Exact radius as the maximum weight of a minimum-weight coset leader;
    the witness is such a leader."""
    return CosetEngine(code, ambient_budget, coset_budget, chunk, threads).radius(metric)


def run_both_engines(code: Code, metric: Metric,
                     ambient_budget: int = DEFAULT_AMBIENT_BUDGET,
                     coset_budget: int = DEFAULT_COSET_BUDGET,
                     work_budget: int | None = None,
                     threads: int | None = None) -> tuple[CoveringResult, str]:
    """Run every engine the budgets allow; error if they disagree.

    Returns the first result plus a tag: 'both', 'exhaustive', or 'coset'.
    Raises ResourceBudgetError when neither engine fits.
    """
    results = []
    errors = []
    try:
        results.append(covering_radius_exhaustive(
            code, metric, ambient_budget, work_budget, threads=threads))
    except ResourceBudgetError as e:
        errors.append(str(e))
    try:
        results.append(covering_radius_coset(
            code, metric, ambient_budget, coset_budget, threads=threads))
    except ResourceBudgetError as e:
        errors.append(str(e))
    if not results:
        raise ResourceBudgetError("; ".join(errors))
    if len(results) == 2 and results[0].radius != results[1].radius:
        raise EngineDisagreement(
            f"exhaustive radius {results[0].radius} != coset radius {results[1].radius} "
            f"({metric.value}, gamma={code.gamma}, delta={code.delta})")
    tag = "both" if len(results) == 2 else results[0].engine
    return results[0], tag


# ---------------------------------------------------------------------------
# independent binary engine (for Gray-image transfer checks)

def binary_covering_radius(codewords, nbits: int,
                           ambient_budget: int = DEFAULT_AMBIENT_BUDGET,
                           chunk: int = CHUNK) -> int:
    """Hamming covering radius of a set of packed binary words."""
    n = 1 << nbits
    if n > ambient_budget:
        raise ResourceBudgetError(f"binary ambient 2^{nbits} exceeds budget {ambient_budget}")
    words = [np.uint64(int(c)) for c in codewords]
    radius = 0
    for start, stop in B.iter_chunks(n, chunk):
        idx = np.arange(start, stop, dtype=np.uint64)
        best = np.full(stop - start, 255, dtype=np.uint8)
        for c in words:
            np.minimum(best, np.bitwise_count(idx ^ c).astype(np.uint8), out=best)
        radius = max(radius, int(best.max()))
    return radius


def gray_image_radius(code: Code, ambient_budget: int = DEFAULT_AMBIENT_BUDGET) -> int:
    """Binary Hamming covering radius of the Gray image of the code."""
    return binary_covering_radius(code.gray_image_keys(), code.ambient_bits(), ambient_budget)


# ---------------------------------------------------------------------------
# bounds

def _poly_pow(base: list[int], exp: int) -> list[int]:
    result = [1]
    while exp:
        if exp & 1:
            result = _poly_mul(result, base)
        base = _poly_mul(base, base)
        exp >>= 1
    return result


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


_QUAT_POLY = {
    "hamming": [1, 3],
    "lee": [1, 2, 1],
    "euclidean": [1, 2, 0, 0, 1],
}


def ball_coefficients(gamma: int, delta: int, metric: Metric) -> list[int]:
    """Coefficients V_i of the per-coordinate weight enumerator product."""
    return _poly_mul(_poly_pow([1, 1], gamma), _poly_pow(_QUAT_POLY[metric.value], delta))


def sphere_covering_bound(gamma: int, delta: int, size: int, metric: Metric) -> int:
    """Least r with |C| * sum_{i<=r} V_i >= 2^gamma * 4^delta."""
    total = ambient_size(gamma, delta)
    acc = 0
    for r, v in enumerate(ball_coefficients(gamma, delta, metric)):
        acc += v
        if size * acc >= total:
            return r
    return gamma + 4 * delta


def sphere_covering_bound_printed(pairs: int, size: int, metric: Metric) -> int:
    """The inequality in its printed form, with ambient 2^(2n) for n pairs:
    binomials of 2n for Lee, the per-pair euclidean enumerator power for
    Euclidean.  Kept as a recorded variant only."""
    if metric == Metric.LEE:
        coeffs = [math.comb(2 * pairs, i) for i in range(2 * pairs + 1)]
    elif metric == Metric.EUCLIDEAN:
        coeffs = _poly_pow([1, 3, 2, 0, 1, 1], pairs)
    else:
        raise ValueError("printed variant exists for lee and euclidean only")
    total = 1 << (2 * pairs)
    acc = 0
    for r, v in enumerate(coeffs):
        acc += v
        if size * acc >= total:
            return r
    return len(coeffs)


def delsarte_s(code: Code, dual_budget: int = DEFAULT_COSET_BUDGET) -> int:
    """s(C-dual): distinct nonzero Lee weights in the dual code."""
    dual = code.dual()
    if dual.size > dual_budget:
        raise ResourceBudgetError(
            f"dual size {dual.size} exceeds Delsarte budget {dual_budget}")
    return weight_distribution(dual, Metric.LEE, budget=dual_budget).distinct_nonzero()


@dataclass(frozen=True)
class BoundReport:
    gamma: int
    delta: int
    size: int
    sphere_lee: int
    sphere_euclidean: int
    sphere_lee_printed: int | None
    sphere_euclidean_printed: int | None
    delsarte: int | None

    def to_json(self) -> dict:
        return {
            "gamma": self.gamma,
            "delta": self.delta,
            "size": self.size,
            "sphere_lower": {"lee": self.sphere_lee, "euclidean": self.sphere_euclidean},
            "sphere_lower_printed": {
                "lee": self.sphere_lee_printed,
                "euclidean": self.sphere_euclidean_printed,
            },
            "delsarte_s": self.delsarte,
            "delsarte_bounds": None if self.delsarte is None else {
                "lee": self.delsarte,
                "euclidean": 3 * self.delsarte,
            },
        }


def bound_report(code: Code, dual_budget: int = DEFAULT_COSET_BUDGET) -> BoundReport:
    gamma, delta, size = code.gamma, code.delta, code.size
    printed_lee = printed_euc = None
    if gamma == delta:
        printed_lee = sphere_covering_bound_printed(gamma, size, Metric.LEE)
        printed_euc = sphere_covering_bound_printed(gamma, size, Metric.EUCLIDEAN)
    try:
        s = delsarte_s(code, dual_budget)
    except ResourceBudgetError:
        s = None
    return BoundReport(
        gamma=gamma, delta=delta, size=size,
        sphere_lee=sphere_covering_bound(gamma, delta, size, Metric.LEE),
        sphere_euclidean=sphere_covering_bound(gamma, delta, size, Metric.EUCLIDEAN),
        sphere_lee_printed=printed_lee,
        sphere_euclidean_printed=printed_euc,
        delsarte=s,
    )


def sandwich_check(code: Code, **engine_kwargs) -> bool:
    """r_lee <= r_euclidean <= 3 r_lee for this code."""
    rl, _ = run_both_engines(code, Metric.LEE, **engine_kwargs)
    re, _ = run_both_engines(code, Metric.EUCLIDEAN, **engine_kwargs)
    return rl.radius <= re.radius <= 3 * rl.radius


# ---------------------------------------------------------------------------
# Mattson combination

def mattson_combine(g0: GeneratorMatrix, g1: GeneratorMatrix,
                    a_rows: list[MixedVector] | None = None) -> GeneratorMatrix:
    """The stacked block generator [[0, G1], [G0, A]] on concatenated
    coordinates; A defaults to zero and must have one row per G0 row."""
    if a_rows is None:
        a_rows = [MixedVector.zero(g1.gamma, g1.delta) for _ in g0.rows]
    if len(a_rows) != len(g0.rows):
        raise ValueError("A must have exactly one row per G0 row")
    rows = []
    for r1 in g1.rows:
        rows.append(MixedVector.from_digits(
            (0,) * g0.gamma + r1.bits, (0,) * g0.delta + r1.quats))
    for r0, a in zip(g0.rows, a_rows):
        rows.append(MixedVector.from_digits(r0.bits + a.bits, r0.quats + a.quats))
    return GeneratorMatrix(g0.gamma + g1.gamma, g0.delta + g1.delta, tuple(rows))


def mattson_bound(c0: Code, c1: Code, combined: Code, metric: Metric,
                  **engine_kwargs) -> bool:
    """r(combined) <= r(c0) + r(c1) under the given metric."""
    r0, _ = run_both_engines(c0, metric, **engine_kwargs)
    r1, _ = run_both_engines(c1, metric, **engine_kwargs)
    rc, _ = run_both_engines(combined, metric, **engine_kwargs)
    return rc.radius <= r0.radius + r1.radius
