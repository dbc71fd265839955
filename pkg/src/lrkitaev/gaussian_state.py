"""Block correlation matrix of the (possibly population-dressed) Bogoliubov
state and Renyi entropies from its spectrum.

The 2x2 momentum symbol is

    G_k = a_k [cos(phi_k) sz + sin(phi_k) sy] + b_k I,
    a_k = 1 - (f_k + f_{-k}),   b_k = f_{-k} - f_k,
    cos(phi_k) = 2(h - t_k)/omega_k,   sin(phi_k) = -2 D_k/omega_k,

and the real-space matrix is the block Fourier sum V_{ij} = (1/N) sum_k
G_k e^{ik(i-j)}.  For population maps with f_n = f_{-n} (the only ones a
physical density matrix of this translation-invariant family produces) the
identity part drops out and each 2x2 block is real:

    block(r) = [[ C_r,  S_r ],          C_r = (1/N) sum_k a_k cos(phi_k) cos(kr)
                [ -S_r, -C_r ]],        S_r = -(1/N) sum_k a_k sin(phi_k) sin(kr)

so the assembled 2L x 2L matrix is real symmetric and a symmetric
eigensolver applies.  Entropies use the eigenvalues v_j in [-1, 1]:

    S_nu = 1/(2(1-nu)) sum_j ln[ ((1+v_j)/2)^nu + ((1-v_j)/2)^nu ]   (nu > 1)
    S_1  = 1/2 sum_j H2((1+v_j)/2)                                    (binary entropy)

Each fermionic mode contributes a +/- eigenvalue pair, hence the half sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
import scipy.linalg as la

from .errors import DomainError, GaplessError, SizeError
from .model import ChainParams, ModeData, mode_table

_CLAMP_TOL = 1e-9
_ZERO_MODE_TOL = 1e-8


@dataclass(frozen=True)
class SymbolValue:
    """Coefficients of the 2x2 symbol a (cos phi sz + sin phi sy) + b I."""

    a: float
    b: float
    phi: float

    def matrix(self) -> np.ndarray:
        sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
        sy = np.array([[0.0, -1j], [1j, 0.0]], dtype=complex)
        return self.a * (math.cos(self.phi) * sz + math.sin(self.phi) * sy) \
            + self.b * np.eye(2)


@dataclass
class CorrelationMatrix:
    L: int
    entries: np.ndarray
    eigenvalues: np.ndarray = field(default=None)

    def eigs(self) -> np.ndarray:
        if self.eigenvalues is None:
            self.eigenvalues = la.eigvalsh(self.entries)
        return self.eigenvalues


@dataclass(frozen=True)
class EntropyResult:
    L: int
    nu: float
    value: float


def build_symbol(mode: ModeData, mode_neg: ModeData) -> SymbolValue:
    """Symbol coefficients for a +/-k mode pair."""
    a = 1.0 - (mode.f + mode_neg.f)
    b = mode_neg.f - mode.f
    if mode.omega < _ZERO_MODE_TOL and abs(a) > 1e-12:
        raise GaplessError(
            f"mode n={mode.index_n} is gapless; its symbol angle is undefined "
            "unless populations make a_k = 0 (supply f_k + f_-k = 1)")
    return SymbolValue(a=a, b=b, phi=mode.phi)


def _population_array(params: ChainParams,
                      populations: Mapping[int, float] | None) -> np.ndarray:
    ns = params.mode_indices()
    f = np.zeros(params.N)
    if populations:
        index = {int(n): i for i, n in enumerate(ns)}
        for n, v in populations.items():
            if int(n) not in index:
                raise DomainError(f"population given for unknown mode n={n}")
            if not (0.0 <= v <= 1.0):
                raise DomainError(f"population f={v} outside [0, 1]")
            f[index[int(n)]] = float(v)
    return f


def build_correlation_matrix(params: ChainParams, L: int,
                             populations: Mapping[int, float] | None = None
                             ) -> CorrelationMatrix:
    """Assemble the 2L x 2L real correlation matrix of the subsystem.

    Populations default to zero (Bogoliubov vacuum).  Zero modes must carry
    f = 1/2 (their symbol then vanishes identically); any other population
    of a gapless mode raises, as does an asymmetric map f_n != f_{-n}.
    """
    if not (1 <= L <= params.N):
        raise SizeError(f"subsystem length {L} outside [1, N={params.N}]")
    tab = mode_table(params)
    ns, ks = tab["n"], tab["k"]
    f = _population_array(params, populations)

    index = {int(n): i for i, n in enumerate(ns)}
    f_neg = np.array([f[index[-n]] if -n in index else f[index[n]] for n in ns])
    if np.max(np.abs(f - f_neg)) > 1e-12:
        raise DomainError("matrix assembly requires symmetric populations "
                          "(f_n = f_{-n}); asymmetric maps exist only at the "
                          "symbol level")
    a = 1.0 - (f + f_neg)
    gapless = tab["omega"] < _ZERO_MODE_TOL
    bad = gapless & (np.abs(a) > 1e-12)
    if np.any(bad):
        nbad = ns[bad][0]
        raise GaplessError(f"gapless mode n={nbad} needs f=1/2 populations")

    cos_part = a * np.cos(tab["phi"])
    sin_part = a * np.sin(tab["phi"])
    r = np.arange(L)
    c_of_r = (np.cos(np.outer(r, ks)) @ cos_part) / params.N
    s_of_r = -(np.sin(np.outer(r, ks)) @ sin_part) / params.N

    v = np.zeros((2 * L, 2 * L))
    idx = np.arange(L)
    diff = idx[:, None] - idx[None, :]
    cmat = c_of_r[np.abs(diff)]
    smat = s_of_r[np.abs(diff)] * np.sign(diff + 0.0)
    smat[diff == 0] = 0.0
    v[0::2, 0::2] = cmat
    v[1::2, 1::2] = -cmat
    v[0::2, 1::2] = smat
    v[1::2, 0::2] = -smat
    return CorrelationMatrix(L=L, entries=v)


def _clamped(eigs: np.ndarray) -> np.ndarray:
    worst = float(np.max(np.abs(eigs))) - 1.0
    if worst > _CLAMP_TOL:
        raise DomainError(f"correlation eigenvalue exceeds 1 by {worst:.2e}; "
                          "assembly is inconsistent")
    return np.clip(eigs, -1.0, 1.0)


def renyi_entropy(corr: CorrelationMatrix, nu: float) -> EntropyResult:
    """Renyi entropy of order nu >= 1 from the correlation spectrum (nats)."""
    if nu < 1.0:
        raise DomainError(f"Renyi order must be >= 1, got {nu}")
    v = _clamped(corr.eigs())
    p = (1.0 + v) / 2.0
    q = 1.0 - p
    if abs(nu - 1.0) < 1e-12:
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = -(np.where(p > 0, p * np.log(p), 0.0)
                      + np.where(q > 0, q * np.log(q), 0.0))
        s = 0.5 * float(np.sum(terms))
    else:
        s = float(np.sum(np.log(p ** nu + q ** nu))) / (2.0 * (1.0 - nu))
    return EntropyResult(L=corr.L, nu=nu, value=max(0.0, s))


def fh_volume_term(populations: Mapping[int, float] | np.ndarray,
                   nu: float) -> float:
    """Mode-counting (volume) term  1/(1-nu) sum_k ln[(1-f_k)^nu + f_k^nu].

    nu = 1 is served as the binary-entropy limit sum_k H2(f_k).
    """
    if nu < 1.0:
        raise DomainError(f"Renyi order must be >= 1, got {nu}")
    f = np.asarray(list(populations.values()) if isinstance(populations, Mapping)
                   else populations, dtype=float)
    if f.size and (f.min() < 0.0 or f.max() > 1.0):
        raise DomainError("populations must lie in [0, 1]")
    g = 1.0 - f
    if abs(nu - 1.0) < 1e-12:
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = -(np.where(f > 0, f * np.log(f), 0.0)
                      + np.where(g > 0, g * np.log(g), 0.0))
        return float(np.sum(terms))
    return float(np.sum(np.log(g ** nu + f ** nu))) / (1.0 - nu)
