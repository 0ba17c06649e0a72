"""Recover the finest tensor factorization of a pure state and assign its class.

Detection principle: for a globally pure state, the marginal on a subset S is
itself pure exactly when S is a tensor factor.  The minimal pure subset
containing each qubit is therefore that qubit's block, and the index is
E = N - p where p is the number of blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Union

import numpy as np

from .partitions import as_partition, canonical_set_partition, index_of, shape_of
from .states import (
    DEFAULT_TOL,
    DensityMatrix,
    PureState,
    _split_matrix,
    marginal_purity,
    partial_trace,
    qubit_subset,
)

LABEL_SEPARABLE = "fully separable"


class FactorizationError(RuntimeError):
    """Minimal pure subsets overlap without nesting: the tolerance is set
    at a numerically borderline level for this state."""


@dataclass(frozen=True)
class ClassReport:
    """Classification result: block structure, shape, and index E = N - p."""

    n_qubits: int
    blocks: tuple[tuple[int, ...], ...]
    shape: tuple[int, ...]
    index: int
    label: str
    tolerance_used: float
    warning: str | None = None


@dataclass(frozen=True)
class Ensemble:
    """Probability-weighted terms, each an integer partition or a pure state."""

    n_qubits: int
    terms: tuple[tuple[float, Union[tuple[int, ...], PureState]], ...]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        norm_terms = []
        total = 0.0
        for prob, payload in self.terms:
            prob = float(prob)
            if not 0.0 < prob <= 1.0:
                raise ValueError(f"probabilities must lie in (0, 1], got {prob}")
            total += prob
            if isinstance(payload, PureState):
                if payload.n_qubits != self.n_qubits:
                    raise ValueError(
                        f"state term has {payload.n_qubits} qubits, expected {self.n_qubits}"
                    )
            else:
                payload = as_partition(payload)
                if sum(payload) != self.n_qubits:
                    raise ValueError(
                        f"partition term {payload} does not sum to {self.n_qubits}"
                    )
            norm_terms.append((prob, payload))
        if abs(total - 1.0) > DEFAULT_TOL:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")
        object.__setattr__(self, "terms", tuple(norm_terms))


def _scan_minimal_block(
    n: int, i: int, tol: float, pur: Callable[[tuple[int, ...]], float]
) -> tuple[tuple[int, ...], bool]:
    """Smallest subset containing i whose marginal is pure within tol.

    Subsets are visited by increasing size, then lexicographically; the scan
    always terminates because the full set is pure.  Also reports whether any
    rejected subset was within 10*tol of acceptance (near-threshold input).
    """
    others = [q for q in range(n) if q != i]
    near = False
    for size in range(1, n + 1):
        for combo in combinations(others, size - 1):
            subset = tuple(sorted((i,) + combo))
            defect = 1.0 - pur(subset)
            if defect <= tol:
                return subset, near
            if defect <= 10.0 * tol:
                near = True
    raise AssertionError("unreachable: the full qubit set is always pure")


def minimal_pure_subset(psi: PureState, i: int, tol: float = DEFAULT_TOL) -> tuple[int, ...]:
    """The block of qubit ``i``: the smallest S containing i with a pure marginal."""
    n = psi.n_qubits
    if not 0 <= int(i) < n:
        raise ValueError(f"qubit index {i} out of range for {n} qubits")
    block, _ = _scan_minimal_block(n, int(i), tol, lambda s: marginal_purity(psi, s))
    return block


def _validate_blocks(
    n: int, blocks: Iterable[tuple[int, ...]]
) -> tuple[tuple[int, ...], ...]:
    """Deduplicate per-qubit blocks and require a genuine partition of [0, N)."""
    unique: list[tuple[int, ...]] = []
    for b in blocks:
        if b not in unique:
            unique.append(b)
    for a, b in combinations(unique, 2):
        if set(a) & set(b):
            raise FactorizationError(
                f"minimal subsets {a} and {b} overlap without being equal; "
                "the tolerance is numerically borderline for this state"
            )
    covered = sorted(q for b in unique for q in b)
    if covered != list(range(n)):
        raise FactorizationError(f"minimal subsets {unique} do not cover all {n} qubits")
    return canonical_set_partition(unique, n_qubits=n)


def _factorize(psi: PureState, tol: float) -> tuple[tuple[tuple[int, ...], ...], bool]:
    n = psi.n_qubits
    cache: dict[tuple[int, ...], float] = {}

    def pur(subset: tuple[int, ...]) -> float:
        got = cache.get(subset)
        if got is None:
            got = cache[subset] = marginal_purity(psi, subset)
        return got

    near = False
    found: list[tuple[int, ...]] = []
    for i in range(n):
        block, block_near = _scan_minimal_block(n, i, tol, pur)
        near = near or block_near
        found.append(block)
    return _validate_blocks(n, found), near


def finest_factorization(
    psi: PureState, tol: float = DEFAULT_TOL
) -> tuple[tuple[int, ...], ...]:
    """Blocks of the finest tensor factorization, in canonical order."""
    blocks, _ = _factorize(psi, tol)
    return blocks


def entanglement_index(psi: PureState, tol: float = DEFAULT_TOL) -> int:
    """E = N - p for the finest factorization into p blocks."""
    return psi.n_qubits - len(finest_factorization(psi, tol))


def classify(psi: PureState, tol: float = DEFAULT_TOL) -> ClassReport:
    """Full classification: blocks, shape, index, and class label."""
    blocks, near = _factorize(psi, tol)
    shape = shape_of(blocks)
    index = psi.n_qubits - len(blocks)
    label = LABEL_SEPARABLE if index == 0 else f"entangled class E={index}"
    warning = (
        "near-threshold purity defect within 10x tolerance; "
        "classification may be sensitive to tol"
        if near
        else None
    )
    return ClassReport(
        n_qubits=psi.n_qubits,
        blocks=blocks,
        shape=shape,
        index=index,
        label=label,
        tolerance_used=float(tol),
        warning=warning,
    )


def split_factors(
    psi: PureState, subset: Iterable[int]
) -> tuple[PureState, PureState]:
    """Extract the tensor factors across the cut (subset, complement).

    Uses the dominant column of the cross reshaping, so it is exact for
    product states and a best-effort rank-1 fit otherwise.  The returned
    pair reproduces the state with the subset's qubits moved to the front:
    ``kron(a.vec, b.vec)`` approximates ``permute-to-front(psi)``.
    """
    kept = qubit_subset(subset, psi.n_qubits)
    if not kept or len(kept) == psi.n_qubits:
        raise ValueError("subset must be a proper nonempty subset of the qubits")
    m = _split_matrix(psi, kept)
    col = int(np.argmax(np.linalg.norm(m, axis=0)))
    a = m[:, col] / np.linalg.norm(m[:, col])
    b = a.conj() @ m
    b = b / np.linalg.norm(b)
    return PureState(len(kept), a), PureState(psi.n_qubits - len(kept), b)


def ensemble_index(e: Ensemble, tol: float = DEFAULT_TOL) -> float:
    """Probability-weighted index over a given decomposition.

    Partition terms contribute their exact N - p; state terms are
    classified at ``tol`` first.  The result depends on the decomposition
    supplied; no search over alternative decompositions is attempted.
    """
    total = 0.0
    for prob, payload in e.terms:
        if isinstance(payload, PureState):
            total += prob * entanglement_index(payload, tol)
        else:
            total += prob * index_of(payload)
    return total


def _reordered_entries(rho: DensityMatrix, order: list[int]) -> np.ndarray:
    n = rho.n_qubits
    t = rho.mat.reshape([2] * (2 * n))
    axes = order + [n + q for q in order]
    return t.transpose(axes).reshape(2**n, 2**n)


def _split_mixed(rho: DensityMatrix, labels: tuple[int, ...], tol: float) -> list[tuple[int, ...]]:
    n = rho.n_qubits
    if n == 1:
        return [labels]
    for size in range(1, n):
        for local in combinations(range(n), size):
            comp = tuple(q for q in range(n) if q not in local)
            part_a = partial_trace(rho, local)
            part_b = partial_trace(rho, comp)
            product = np.kron(part_a.mat, part_b.mat)
            target = _reordered_entries(rho, list(local) + list(comp))
            if float(np.linalg.norm(target - product)) <= tol:
                return _split_mixed(
                    part_a, tuple(labels[q] for q in local), tol
                ) + _split_mixed(part_b, tuple(labels[q] for q in comp), tol)
    return [labels]


def mixed_product_split(
    rho: DensityMatrix, tol: float = DEFAULT_TOL
) -> tuple[tuple[int, ...], ...]:
    """Coarsest-to-finest product splitting of a density matrix.

    Recursively factors across any bipartition whose product reconstruction
    is within ``tol`` in Frobenius distance, testing smaller subsets first
    with lexicographic tie-break.  Returns block structure only; whether a
    block is entangled is not determined for mixed inputs.
    """
    blocks = _split_mixed(rho, tuple(range(rho.n_qubits)), float(tol))
    return canonical_set_partition(blocks, n_qubits=rho.n_qubits)
