"""Brute-force verification path: the Bogoliubov vacuum as an explicit
many-body vector in the 2^N site-occupation basis, and entropies by exact
partial trace.

Construction
------------
Site basis |n_1 ... n_N> with site 1 on the most significant bit, so a
contiguous leading block of L sites is traced out by a plain reshape (the
Jordan-Wigner string signs are consistent for this ordered contiguous cut).
Momentum operators use the plain transform

    a_k^+ = (1/sqrt N) sum_j e^{ikj} c_j^+ ,

under which the paired ground state is

    |gs> = prod_{0<k<pi} [cos(th_k/2) + i sin(th_k/2) a_k^+ a_{-k}^+] x
           (unpaired k = 0, pi factors: filled iff h - t_k < 0) |0>,

with th_k = atan2(D_k, h - t_k).  The i phase belongs to this transform
convention; the annihilators are gamma_k = cos(th_k/2) a_k - i sin(th_k/2)
a_{-k}^+ and every gamma_k must kill the state (checked on demand).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg as la
from scipy import sparse

from .errors import DomainError, GaplessError, SizeError
from .model import ChainParams, mode_table

_MAX_SITES = 14
_GAP_TOL = 1e-8


@dataclass
class FockState:
    N: int
    amplitudes: np.ndarray


@lru_cache(maxsize=8)
def _cdag_ops(N: int) -> tuple:
    """Sparse c_j^+ for j = 0..N-1 (site j on bit N-1-j; JW string signs)."""
    dim = 1 << N
    ops = []
    for j in range(N):
        bit = 1 << (N - 1 - j)
        basis = np.arange(dim)
        empty = (basis & bit) == 0
        src = basis[empty]
        dst = src | bit
        # parity of occupations on sites < j (higher bits)
        par = np.zeros(len(src), dtype=np.int64)
        shifted = src >> (N - j)
        while np.any(shifted):
            par ^= shifted & 1
            shifted >>= 1
        vals = np.where(par == 1, -1.0, 1.0)
        ops.append(sparse.csr_matrix((vals, (dst, src)), shape=(dim, dim)))
    return tuple(ops)


def _momentum_raising(N: int, k: float) -> sparse.csr_matrix:
    cdag = _cdag_ops(N)
    dim = 1 << N
    op = sparse.csr_matrix((dim, dim), dtype=complex)
    for j in range(N):
        op = op + np.exp(1j * k * (j + 1)) * cdag[j]
    return op / np.sqrt(N)


def build_bcs_vacuum(params: ChainParams) -> FockState:
    """Explicit Bogoliubov vacuum; requires N <= 14 and a gapped spectrum."""
    N = params.N
    if N > _MAX_SITES:
        raise SizeError(f"oracle limited to N <= {_MAX_SITES}, got {N}")
    tab = mode_table(params)
    if float(tab["omega"].min()) < _GAP_TOL:
        raise GaplessError("oracle requires all omega_k > 1e-8")
    ns = tab["n"]
    index = {int(n): i for i, n in enumerate(ns)}

    psi = np.zeros(1 << N, dtype=complex)
    psi[0] = 1.0
    for n in range(1, N // 2):
        i = index[n]
        th = tab["theta"][i]
        ap = _momentum_raising(N, tab["k"][i])
        am = _momentum_raising(N, -tab["k"][i])
        psi = np.cos(th / 2.0) * psi + 1j * np.sin(th / 2.0) * (ap @ (am @ psi))
    for n in (0, N // 2):
        i = index[n]
        if params.h - tab["t"][i] < 0.0:
            psi = _momentum_raising(N, tab["k"][i]) @ psi
    psi /= np.linalg.norm(psi)
    return FockState(N=N, amplitudes=psi)


def vacuum_defect(state: FockState, params: ChainParams) -> float:
    """max_k || gamma_k |psi> ||; < 1e-10 certifies the vacuum."""
    tab = mode_table(params)
    worst = 0.0
    for i, n in enumerate(tab["n"]):
        k = tab["k"][i]
        th = tab["theta"][i]
        lower = _momentum_raising(state.N, k).conj().T
        if n in (0, state.N // 2):
            gam = _momentum_raising(state.N, k) if params.h - tab["t"][i] < 0 \
                else lower
        else:
            gam = np.cos(th / 2.0) * lower \
                - 1j * np.sin(th / 2.0) * _momentum_raising(state.N, -k)
        worst = max(worst, float(np.linalg.norm(gam @ state.amplitudes)))
    return worst


def reduced_density_matrix(state: FockState, L: int) -> np.ndarray:
    """rho_A of the leading L sites by exact partial trace."""
    if not (1 <= L < state.N):
        raise SizeError(f"subsystem length {L} outside [1, N-1]")
    m = state.amplitudes.reshape(1 << L, 1 << (state.N - L))
    rho = m @ m.conj().T
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > 1e-10:
        raise DomainError(f"reduced density matrix trace {tr} != 1")
    return rho


def exact_entropy(state: FockState, L: int, nu: float) -> float:
    """Renyi entropy of rho_A from its full spectrum (nats)."""
    if nu < 1.0:
        raise DomainError(f"Renyi order must be >= 1, got {nu}")
    lam = la.eigvalsh(reduced_density_matrix(state, L))
    if lam.min() < -1e-12:
        raise DomainError(f"rho_A has negative eigenvalue {lam.min():.2e}")
    lam = lam[lam > 1e-16]
    if abs(nu - 1.0) < 1e-12:
        return float(-np.sum(lam * np.log(lam)))
    return float(np.log(np.sum(lam ** nu)) / (1.0 - nu))
