"""Brute-force reference on dense state vectors.

Independent of the coupling machinery: states are explicit vectors on
(C^2)^(x)n, the outcome distribution comes from exact integer total-spin
projectors built by polynomial interpolation, and averaging enumerates all n!
permutations.  Deliberately free of symmetry-reduced representations; the
point is independence, not scale.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.sparse

from .errors import DomainError, SizeCapError
from .numeric import E
from .schur_weyl import ExactPMF, Params

MAX_STATE_N = 14
MAX_PERM_N = 8

_swap_sum_cache: dict[int, scipy.sparse.csr_matrix] = {}
_perm_index_cache: dict[int, np.ndarray] = {}


@dataclass(frozen=True)
class DenseState:
    """A unit vector on n qubits; index bit i (from the left) is (b >> (n-1-i)) & 1."""

    amplitudes: np.ndarray
    n: int

    def __post_init__(self):
        if self.amplitudes.shape != (2**self.n,):
            raise DomainError(f"amplitude vector must have length 2^{self.n}")
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"state norm is {norm}, expected 1 within 1e-12")


def _support_indices(params: Params) -> list[int]:
    # basis indices carrying the state: fixed prefix 1^l 0^(k-l), then every
    # weight-M string on the last N + M qubits
    n, k, l = params.n, params.k, params.l
    tail = params.N + params.M
    prefix = 0
    for i in range(l):
        prefix |= 1 << (n - 1 - i)
    indices = []
    for ones in itertools.combinations(range(tail), params.M):
        b = prefix
        for pos in ones:
            b |= 1 << (tail - 1 - pos)
        indices.append(b)
    return indices


def build_state(params: Params) -> DenseState:
    """The bit string tensored with the Dicke state, as a dense vector."""
    if params.n > MAX_STATE_N:
        raise SizeCapError(f"build_state is capped at n = {MAX_STATE_N}, got {params.n}")
    amp = np.zeros(2**params.n)
    idx = _support_indices(params)
    amp[idx] = 1.0 / math.sqrt(len(idx))
    return DenseState(amp, params.n)


def _swap_sum(n: int) -> scipy.sparse.csr_matrix:
    """sum_{i<j} SWAP_ij as an exact integer sparse matrix."""
    if n not in _swap_sum_cache:
        dim = 2**n
        rows, cols = [], []
        basis = np.arange(dim)
        for i in range(n):
            for j in range(i + 1, n):
                bi = (basis >> (n - 1 - i)) & 1
                bj = (basis >> (n - 1 - j)) & 1
                swapped = basis ^ (((bi ^ bj) << (n - 1 - i)) | ((bi ^ bj) << (n - 1 - j)))
                rows.extend(basis)
                cols.extend(swapped)
        data = np.ones(len(rows), dtype=np.int64)
        mat = scipy.sparse.coo_matrix((data, (rows, cols)), shape=(dim, dim), dtype=np.int64)
        _swap_sum_cache[n] = mat.tocsr()
    return _swap_sum_cache[n]


def _swap_sum_eigenvalue(n: int, x: int) -> int:
    # sum of swaps = J^2 - n(4-n)/4; on the block x the total spin is
    # j = (n - 2x)/2 with J^2 = j(j+1)
    tj = n - 2 * x
    num = tj * (tj + 2) - n * (4 - n)
    assert num % 4 == 0
    return num // 4


def pmf_oracle(params: Params) -> ExactPMF:
    """Outcome distribution from exact integer total-spin projectors.

    The projector onto the block x is the interpolation polynomial
    prod_{x' != x} (C - c(x'))/(c(x) - c(x')) in the integer operator
    C = sum swaps, applied to the (unnormalized, integer) state vector.
    """
    if params.n > MAX_STATE_N:
        raise SizeCapError(f"pmf_oracle is capped at n = {MAX_STATE_N}, got {params.n}")
    n = params.n
    mat = _swap_sum(n)
    support = _support_indices(params)
    psi = np.zeros(2**n, dtype=np.int64)
    psi[support] = 1
    norm_sq = len(support)

    xs = list(range(n // 2 + 1))
    eig = {x: _swap_sum_eigenvalue(n, x) for x in xs}
    row_sum = n * (n - 1) // 2
    masses = {}
    for x in xs:
        vec = psi
        bound = 1
        denom = 1
        for x2 in xs:
            if x2 == x:
                continue
            bound *= row_sum + abs(eig[x2])
            if bound >= 2**62:
                raise SizeCapError("integer projector would overflow int64")
            vec = mat.dot(vec) - eig[x2] * vec
            denom *= eig[x] - eig[x2]
        overlap = sum(int(v) for v in vec[support])
        p = Fraction(overlap, denom * norm_sq)
        if p:
            masses[x] = p
    return ExactPMF(params=params, masses=masses)


def _perm_indices(n: int) -> np.ndarray:
    """(n!, 2^n) table: row g maps basis index b to its image under permutation g."""
    if n not in _perm_index_cache:
        if n == 0:
            _perm_index_cache[n] = np.zeros((1, 1), dtype=np.uint16)
            return _perm_index_cache[n]
        dim = 2**n
        basis = np.arange(dim)
        bits = np.stack([(basis >> (n - 1 - i)) & 1 for i in range(n)], axis=1).astype(np.uint16)
        powers = np.array([1 << (n - 1 - i) for i in range(n)], dtype=np.int64)
        table = np.empty((math.factorial(n), dim), dtype=np.uint16)
        for row, g in enumerate(itertools.permutations(range(n))):
            table[row] = (bits[:, list(g)] @ powers).astype(np.uint16)
        _perm_index_cache[n] = table
    return _perm_index_cache[n]


def avg_state_oracle(params: Params) -> np.ndarray:
    """Average of the projector onto the state over all n! permutations."""
    if params.n > MAX_PERM_N:
        raise SizeCapError(f"avg_state_oracle is capped at n = {MAX_PERM_N}, got {params.n}")
    psi = build_state(params).amplitudes
    table = _perm_indices(params.n)
    total = table.shape[0]
    dim = psi.shape[0]
    acc = np.zeros((dim, dim))
    chunk = max(1, 2**22 // dim)
    for start in range(0, total, chunk):
        block = psi[table[start:start + chunk]]
        acc += block.T @ block
    return acc / total


def entropy_oracle(params: Params, base: float = E) -> float:
    """Von Neumann entropy of the permutation-averaged state, by dense eigensolve."""
    avg = avg_state_oracle(params)
    eigs = np.linalg.eigvalsh(avg)
    eigs = eigs[eigs > 1e-14]
    val = float(-(eigs * np.log(eigs)).sum())
    return val if base == E else val / math.log(base)
