"""Chain definition: couplings, spectrum, Bogoliubov/symbol angles and the
bulk topological invariants.

Model
-----
Spinless fermions on N sites with periodic boundaries,

    H = - sum_j sum_{r=1}^{N/2-1} [ t_r c^+_{j+r} c_j + D_r c^+_{j+r} c^+_j + h.c. ]
        - h sum_j (1 - 2 c^+_j c_j),

    t_r = J / (K_{a1} r^{a1}),   D_r = Delta / (K_{a2} r^{a2}),   J = Delta = 1.

Finite-N convention: both the normalizer K_a and the coupling sums run over
r = 1 .. N/2-1.  (Using N/2 in one and N/2-1 in the other would shift the
k = 0 critical field away from h = 1 at finite N; the shared range keeps
t_0 = 1 exactly at every size.)  The standalone ``kac_norm`` helper keeps
the conventional extensivity sum up to N/2.

Momenta k = 2 pi n / N with integer n in (-N/2, N/2].  Derived per mode:

    t_k = (1/K_{a1}) sum_r cos(kr) r^-a1,   D_k = (1/K_{a2}) sum_r sin(kr) r^-a2
    omega_k = 2 sqrt((h - t_k)^2 + D_k^2)
    theta_k = atan2(D_k, h - t_k)          (Bogoliubov angle)
    phi_k   = atan2(-D_k, h - t_k)         (symbol angle, phi = -theta)

Thermodynamic limit: a > 1 uses Li_a(e^{ik}) / zeta(a); a < 1 keeps the
couplings discrete in n via the strong-range integrals; a = 0 has closed
forms.  a = 1 is marginal and rejected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import specfun
from .errors import CriticalPointError, DomainError, GaplessError, NonQuantizedError

_GAPLESS_TOL = 1e-8


@dataclass(frozen=True)
class ChainParams:
    """Defining parameters of a chain."""

    N: int
    alpha1: float
    alpha2: float
    h: float
    thermodynamic: bool = False

    def __post_init__(self):
        if self.N < 4 or self.N % 2 != 0:
            raise DomainError(f"N must be even and >= 4, got {self.N}")
        if self.alpha1 < 0 or self.alpha2 < 0:
            raise DomainError("decay exponents must be non-negative")
        if self.thermodynamic and (self.alpha1 == 1.0 or self.alpha2 == 1.0):
            raise DomainError("thermodynamic formulas are undefined at alpha = 1 "
                              "(marginal case); use a finite-N chain instead")

    def mode_indices(self) -> np.ndarray:
        return np.arange(-self.N // 2 + 1, self.N // 2 + 1)


@dataclass(frozen=True)
class ModeData:
    """Per-momentum derived quantities."""

    index_n: int
    k: float
    t_tilde: float
    delta_tilde: float
    omega: float
    theta: float
    phi: float
    f: float = 0.0


@dataclass(frozen=True)
class PhaseDiagnostics:
    winding_w: int
    q_sign: int
    h_c_zero: float
    h_c_pi: float


def kac_norm(alpha: float, N: int) -> float:
    """Extensivity normalizer sum_{r=1}^{N/2} r^-alpha."""
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    if N < 2 or N % 2 != 0:
        raise DomainError("N must be even and positive")
    r = np.arange(1, N // 2 + 1, dtype=float)
    return float(np.sum(r ** (-alpha)))


# --------------------------------------------------------------------------
# coupling tables
# --------------------------------------------------------------------------


@lru_cache(maxsize=128)
def _finite_tables(N: int, alpha1: float, alpha2: float) -> tuple:
    """(t_k, D_k) on the n-grid for a finite chain (coupling range N/2-1)."""
    ns = np.arange(-N // 2 + 1, N // 2 + 1)
    ks = 2.0 * np.pi * ns / N
    r = np.arange(1.0, N // 2)
    w1 = r ** (-alpha1)
    w2 = r ** (-alpha2)
    kr = np.outer(ks, r)
    t = (np.cos(kr) @ w1) / w1.sum()
    d = (np.sin(kr) @ w2) / w2.sum()
    t.setflags(write=False)
    d.setflags(write=False)
    return t, d


@lru_cache(maxsize=128)
def _thermo_tables(N: int, alpha1: float, alpha2: float) -> tuple:
    """Thermodynamic-limit couplings evaluated on the N-mode grid."""
    ns = np.arange(-N // 2 + 1, N // 2 + 1)
    ks = 2.0 * np.pi * ns / N
    if alpha1 > 1.0:
        t = specfun.polylog_grid(alpha1, ks).real / specfun.riemann_zeta(alpha1)
    else:
        t = np.array([specfun.strong_range_hopping_integral(alpha1, n) for n in ns])
    if alpha2 > 1.0:
        d = specfun.polylog_grid(alpha2, ks).imag / specfun.riemann_zeta(alpha2)
    else:
        d = np.array([specfun.strong_range_pairing_integral(alpha2, n) for n in ns])
    t.setflags(write=False)
    d.setflags(write=False)
    return t, d


def coupling_tables(params: ChainParams) -> tuple[np.ndarray, np.ndarray]:
    """(t_k, D_k) arrays over the mode grid, regime-dispatched."""
    if params.thermodynamic:
        return _thermo_tables(params.N, params.alpha1, params.alpha2)
    return _finite_tables(params.N, params.alpha1, params.alpha2)


def mode_table(params: ChainParams) -> dict[str, np.ndarray]:
    """All per-mode quantities as arrays keyed by name (f initialized to 0)."""
    ns = params.mode_indices()
    ks = 2.0 * np.pi * ns / params.N
    t, d = coupling_tables(params)
    omega = 2.0 * np.hypot(params.h - t, d)
    theta = np.arctan2(d, params.h - t)
    phi = np.arctan2(0.0 - d, params.h - t)
    return {"n": ns, "k": ks, "t": t, "d": d, "omega": omega,
            "theta": theta, "phi": phi, "f": np.zeros(params.N)}


def couplings_at_mode(params: ChainParams, n: int) -> ModeData:
    """ModeData for a single mode index n in (-N/2, N/2]."""
    ns = params.mode_indices()
    if n < ns[0] or n > ns[-1]:
        raise DomainError(f"mode index {n} outside (-N/2, N/2] for N={params.N}")
    tab = mode_table(params)
    i = int(np.where(tab["n"] == n)[0][0])
    return ModeData(index_n=n, k=float(tab["k"][i]), t_tilde=float(tab["t"][i]),
                    delta_tilde=float(tab["d"][i]), omega=float(tab["omega"][i]),
                    theta=float(tab["theta"][i]), phi=float(tab["phi"][i]), f=0.0)


# --------------------------------------------------------------------------
# critical fields and invariants
# --------------------------------------------------------------------------


def critical_fields(params: ChainParams) -> tuple[float, float]:
    """(t_0, t_pi): chemical potentials where the k=0 / k=pi gaps close."""
    if params.thermodynamic:
        if params.alpha1 > 1.0:
            return 1.0, -(1.0 - 2.0 ** (1.0 - params.alpha1))
        # strong regime: t_0 = 1, large-n couplings vanish
        return 1.0, 0.0
    t, _ = coupling_tables(params)
    ns = params.mode_indices()
    i0 = int(np.where(ns == 0)[0][0])
    ipi = int(np.where(ns == params.N // 2)[0][0])
    return float(t[i0]), float(t[ipi])


def q_invariant(params: ChainParams) -> int:
    """sign[(h - t_0)(h - t_pi)]; -1 in the topological window."""
    t0, tpi = critical_fields(params)
    f0 = params.h - t0
    fpi = params.h - tpi
    if abs(f0) < 1e-12 or abs(fpi) < 1e-12:
        raise CriticalPointError("q undefined at a critical point")
    return int(math.copysign(1.0, f0 * fpi))


def _theta_on_grid(params: ChainParams, m: int) -> np.ndarray:
    """Bogoliubov angle on a uniform m-point k-grid over (-pi, pi]."""
    ks = -np.pi + 2.0 * np.pi * np.arange(1, m + 1) / m
    if params.alpha1 > 1.0:
        t = specfun.polylog_grid(params.alpha1, ks).real / specfun.riemann_zeta(params.alpha1)
    else:
        raise DomainError("winding number requires the weak regime (alpha > 1)")
    if params.alpha2 > 1.0:
        d = specfun.polylog_grid(params.alpha2, ks).imag / specfun.riemann_zeta(params.alpha2)
    else:
        raise DomainError("winding number requires the weak regime (alpha > 1)")
    omega = 2.0 * np.hypot(params.h - t, d)
    if omega.min() < _GAPLESS_TOL:
        raise GaplessError("winding number undefined on a gapless spectrum")
    return np.arctan2(d, params.h - t)


def winding_number(params: ChainParams) -> int:
    """Bulk invariant w = (1/2pi) closed-loop accumulation of d theta_k.

    Wrapped phase differences on a uniform grid, doubled from 2^12 to 2^20
    points until the accumulated winding sits within 1e-6 of an integer
    on two successive grids.
    """
    if not (params.alpha1 > 1.0 and params.alpha2 > 1.0):
        raise DomainError("winding number requires alpha1, alpha2 > 1")
    prev = None
    m = 1 << 12
    while m <= (1 << 20):
        theta = _theta_on_grid(params, m)
        dth = np.diff(theta, append=theta[:1])  # closed loop
        dth = (dth + np.pi) % (2.0 * np.pi) - np.pi
        w = float(np.sum(dth) / (2.0 * np.pi))
        near = round(w)
        if abs(w - near) < 1e-6 and prev == near:
            return abs(int(near))
        prev = near if abs(w - near) < 1e-6 else None
        m *= 2
    if prev is not None and abs(w - prev) < 1e-3:
        return abs(int(prev))
    raise NonQuantizedError(f"winding did not quantize: w = {w}")


def phase_diagnostics(params: ChainParams) -> PhaseDiagnostics:
    t0, tpi = critical_fields(params)
    q = q_invariant(params)
    w = winding_number(params) if (params.alpha1 > 1.0 and params.alpha2 > 1.0) else 0
    return PhaseDiagnostics(winding_w=w, q_sign=q, h_c_zero=t0, h_c_pi=tpi)


# --------------------------------------------------------------------------
# dispersion prefactors (weak-regime critical expansions)
# --------------------------------------------------------------------------


def dispersion_prefactors(alpha1: float, alpha2: float) -> tuple[float, float]:
    """(C, K) controlling the critical dispersions omega/2 near k=0 and k=pi.

    At h = 1:  omega_k / 2 -> C(alpha) |k|^(alpha-1) with alpha = min(a1,a2):

        a1 < a2 :  C = |sin(a1 pi/2) Gamma(1-a1) / zeta(a1)|
        a1 = a2 :  C = |Gamma(1-a) / zeta(a)|
        a1 > a2 :  C = |cos(a2 pi/2) Gamma(1-a2) / zeta(a2)|

    At h = -1 + 2^(1-a1):  omega_k / 2 -> K(a2) |pi - k| with
        K = (1 - 2^(2-a2)) zeta(a2-1) / zeta(a2).
    """
    if not (1.0 < alpha1 < 2.0 and 1.0 < alpha2 < 2.0):
        raise DomainError("dispersion prefactors require 1 < alpha1, alpha2 < 2")
    if alpha1 < alpha2:
        a = alpha1
        c = abs(math.sin(a * math.pi / 2.0) * math.gamma(1.0 - a) / specfun.riemann_zeta(a))
    elif alpha1 > alpha2:
        a = alpha2
        c = abs(math.cos(a * math.pi / 2.0) * math.gamma(1.0 - a) / specfun.riemann_zeta(a))
    else:
        a = alpha1
        c = abs(math.gamma(1.0 - a) / specfun.riemann_zeta(a))
    k_pref = (1.0 - 2.0 ** (2.0 - alpha2)) * specfun._zeta_any(alpha2 - 1.0) \
        / specfun.riemann_zeta(alpha2)
    return c, k_pref


def mean_field_spectrum(n: int, h: float) -> float:
    """Single-particle energy at alpha1 = alpha2 = 0 (flat couplings)."""
    if n == 0:
        return 2.0 * abs(h - 1.0)
    if n % 2 == 0:
        return 2.0 * abs(h)
    return 2.0 * math.hypot(h, 2.0 / (math.pi * n))


def ground_degeneracy_log(N0: int) -> float:
    """log of the zero-mode manifold dimension, ln(2^N0) = N0 ln 2."""
    if N0 < 0:
        raise DomainError("zero-mode count must be non-negative")
    return N0 * math.log(2.0)


def with_populations(mode: ModeData, f: float) -> ModeData:
    """Copy of a mode with its Bogoliubov population replaced."""
    if not (0.0 <= f <= 1.0):
        raise DomainError("populations must lie in [0, 1]")
    return replace(mode, f=f)
