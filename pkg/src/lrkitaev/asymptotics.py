"""Log-coefficients of the entanglement expansion from symbol discontinuities.

A jump of the 2x2 symbol at momentum p, with lateral values
G^+/- = a [cos(phi^+/-) sz + sin(phi^+/-) sy] + b I and opening
dphi = phi^+ - phi^-, feeds the squared-log weight

    b_p(z) = (1/4 pi^2) Tr[ ln (zI - G^-)(zI - G^+)^{-1} ]^2 .

Its contribution to the ln L coefficient of S_nu is

    B_nu^{(p)} = (1/2) * (1/2 pi i) oint_C s_nu(1+eps, z) db_p/dz dz ,

where C encircles [-1, 1]; the overall 1/2 compensates the doubled spectrum
of the block correlation matrix.  Two evaluation routes are implemented:

* residue route (integer nu >= 2): ds_nu/dz is meromorphic with simple
  poles z_l = i tan(pi(2l-1)/2 nu), each of residue 1/(1-nu), giving

      B_nu^{(p)} = 1/(2(1-nu)) sum_l b_p(z_l).

  For the vacuum symbol (a=1, b=0) this reduces to the real form

      B_nu^{(p)} = 1/(pi^2 (nu-1)) sum_l arctan^2[ |sin(dphi/2)| /
                    sqrt(|z_l|^2 + cos^2(dphi/2)) ],

  whose dphi = pi value is the short-range anchor (nu+1)/(12 nu).

* branch-cut route (real nu >= 1): blowing the contour outward crosses the
  cuts of ds_nu/dz along (-inf, -x] and [x, inf) with x = 1 + eps, plus the
  finitely many strip poles at i x tan(pi(2m+1)/(2 nu)); for nu = 1 there
  are no poles and  Im ds_1/dz = -pi/(2x)  on both cuts.  The two real cut
  integrals are done with adaptive Gauss-Legendre panels after t = x cosh u
  (which clusters nodes at the branch point), and the eps -> 0+ limit is a
  Richardson step on eps in {1e-3, 1e-4, 1e-5} against the exact singular
  basis {1, eps ln^2 eps, eps ln eps} - the form the pinned endpoint
  log^2 singularity produces when |b| + a = 1.  Integer nu is served by
  evaluating at nearby non-integer orders and extrapolating, which keeps
  this route independent of the residue formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import specfun
from .errors import ConvergenceError, CriticalPointError, DomainError

_EPS_LADDER = (1e-3, 1e-4, 1e-5)
_CUT_TOL = 1e-9
_SIGMA_MAX = 27.0  # integrand ~ a^2 e^-sigma / pi; cutoff error < 1e-11


class Method(Enum):
    RESIDUE_SUM = "residue_sum"
    BRANCH_CUT_NUMERIC = "branch_cut_numeric"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class Discontinuity:
    """One symbol jump: lateral coefficients and principal opening angle."""

    location_k: float
    a: float
    b: float
    delta_phi: float

    def __post_init__(self):
        if abs(self.b) + abs(self.a) > 1.0 + 1e-9:
            raise DomainError("symbol eigenvalues |b +/- a| must lie in [-1, 1]")
        wrapped = math.remainder(self.delta_phi, 2.0 * math.pi)
        object.__setattr__(self, "delta_phi", wrapped if wrapped != -math.pi else math.pi)


@dataclass(frozen=True)
class FHCoefficient:
    nu: float
    total_B: float
    per_jump: tuple
    method: Method


def _wrap_angle(x):
    return np.remainder(np.asarray(x) + np.pi, 2.0 * np.pi) - np.pi


# --------------------------------------------------------------------------
# squared-log weight of one jump, closed 2x2 form
# --------------------------------------------------------------------------


def _b_weight(z, a: float, b: float, dphi: float):
    """(1/4 pi^2) Tr[ln M]^2 with M = (zI-G^-)(zI-G^+)^{-1}; det M = 1.

    tr M / 2 = 1 + delta with delta = a^2 (1 - cos dphi) / ((z-b)^2 - a^2),
    so the unit-determinant eigenvalue pair is

        mu(+/-) = 1 + delta +/- sqrt(delta (2 + delta)).

    The delta form is cancellation-free for |z| >> 1, where the naive trace
    ratio loses all digits and turns the (vanishing) weight into noise.
    Vectorized over z.
    """
    z = np.asarray(z, dtype=complex)
    delta = a * a * (1.0 - math.cos(dphi)) / ((z - b) ** 2 - a * a)
    disc = np.sqrt(delta * (2.0 + delta))
    mid = 1.0 + delta
    # take the larger root first (no cancellation), invert for the other
    disc = np.where((mid * disc.conj()).real < 0.0, -disc, disc)
    mu_big = mid + disc
    mu_small = 1.0 / mu_big
    return (np.log(mu_big) ** 2 + np.log(mu_small) ** 2) / (4.0 * math.pi ** 2)


def _integer_poles(nu: int) -> np.ndarray:
    taus = [math.tan(math.pi * (2 * m + 1) / (2 * nu))
            for m in range(nu // 2 if nu % 2 == 0 else (nu - 1) // 2)]
    return np.array([s * t for t in taus for s in (1.0, -1.0)])


def vacuum_jump_coefficients(delta_phi, nu: int) -> np.ndarray:
    """Vacuum (a=1, b=0) per-jump coefficients, vectorized over delta_phi."""
    dphi = np.abs(_wrap_angle(delta_phi))
    half = dphi / 2.0
    taus = np.array([math.tan(math.pi * (2 * m + 1) / (2 * nu))
                     for m in range((nu // 2) if nu % 2 == 0 else (nu - 1) // 2)])
    acc = np.zeros_like(np.asarray(dphi, dtype=float))
    for tau in taus:
        acc = acc + np.arctan(np.sin(half)
                              / np.sqrt(tau * tau + np.cos(half) ** 2)) ** 2
    return 2.0 * acc / (math.pi ** 2 * (nu - 1))


def jump_coefficient_residues(d: Discontinuity, nu: int) -> float:
    """Per-jump ln L coefficient by the residue sum (integer nu >= 2)."""
    if int(nu) != nu or nu < 2:
        raise DomainError("residue route requires integer nu >= 2 "
                          "(use the branch-cut route for nu = 1)")
    nu = int(nu)
    if d.a == 0.0 or d.delta_phi == 0.0:
        return 0.0
    zl = 1j * _integer_poles(nu)
    total = np.sum(_b_weight(zl, d.a, d.b, d.delta_phi)) / (2.0 * (1.0 - nu))
    if abs(total.imag) > 1e-10:
        raise ConvergenceError(f"residue sum not real: imag {total.imag:.2e}")
    return float(total.real)


# --------------------------------------------------------------------------
# branch-cut route
# --------------------------------------------------------------------------


def _im_sprime_cuts(x: float, t: np.ndarray, nu: float, side: str) -> np.ndarray:
    """Im ds_nu/dz just above the right/left cut (z = +/- t + i0, t > x)."""
    if abs(nu - 1.0) < 1e-12:
        return np.full_like(t, -math.pi / (2.0 * x))
    if side == "right":
        big_a = (x + t) / 2.0
        mod_b = (t - x) / 2.0
        num = big_a ** (nu - 1.0) - mod_b ** (nu - 1.0) * np.exp(-1j * math.pi * (nu - 1.0))
        den = big_a ** nu + mod_b ** nu * np.exp(-1j * math.pi * nu)
    else:
        mod_a = (t - x) / 2.0
        big_b = (x + t) / 2.0
        num = mod_a ** (nu - 1.0) * np.exp(1j * math.pi * (nu - 1.0)) - big_b ** (nu - 1.0)
        den = mod_a ** nu * np.exp(1j * math.pi * nu) + big_b ** nu
    return ((nu / (2.0 * (1.0 - nu))) * num / den).imag


def _strip_poles(nu: float, x: float) -> np.ndarray:
    taus = []
    m = 0
    while 2 * m + 1 < nu:
        taus.append(math.tan(math.pi * (2 * m + 1) / (2.0 * nu)))
        m += 1
    return np.array([s * x * t for t in taus for s in (1.0, -1.0)])


def _branch_cut_at(x: float, d: Discontinuity, nu: float) -> float:
    """Pole part plus the two real cut integrals at fixed x = 1 + eps."""
    total = 0.0
    if nu > 1.0:
        zl = 1j * _strip_poles(nu, x)
        if len(zl):
            pole = np.sum(_b_weight(zl, d.a, d.b, d.delta_phi)) / (2.0 * (1.0 - nu))
            if abs(pole.imag) > 1e-9:
                raise ConvergenceError("strip-pole sum not real")
            total += float(pole.real)

    def integrand(sig):
        t = x * np.cosh(sig)
        jac = x * np.sinh(sig)
        br = _b_weight(t + 0j, d.a, d.b, d.delta_phi).real
        bl = _b_weight(-t + 0j, d.a, d.b, d.delta_phi).real
        g = _im_sprime_cuts(x, t, nu, "right") * br \
            + _im_sprime_cuts(x, t, nu, "left") * bl
        return g * jac

    cut = specfun.gauss_adaptive(integrand, 0.0, _SIGMA_MAX, tol=_CUT_TOL)
    return total - cut / (2.0 * math.pi)


def _eps_extrapolate(values: np.ndarray, eps: np.ndarray) -> float:
    """Intercept of the fit c0 + c1 e ln^2 e + c2 e ln e through three points."""
    m = np.column_stack([np.ones_like(eps),
                         eps * np.log(eps) ** 2,
                         eps * np.log(eps)])
    coef = np.linalg.solve(m, values)
    return float(coef[0])


def _branch_cut_real_nu(d: Discontinuity, nu: float) -> float:
    eps = np.array(_EPS_LADDER)
    vals = np.array([_branch_cut_at(1.0 + e, d, nu) for e in eps])
    est = _eps_extrapolate(vals, eps)
    direct = _branch_cut_at(1.0, d, nu)
    pinched = abs(d.b) + abs(d.a) > 1.0 - 1e-3
    tol = 3e-5 if pinched else 1e-6
    if abs(est - direct) > tol * max(1.0, abs(est)):
        raise ConvergenceError(
            f"eps-extrapolation disagrees with the eps->0 evaluation by "
            f"{abs(est - direct):.2e} (tol {tol:.0e})")
    return est


def jump_coefficient_branch_cut(d: Discontinuity, nu: float) -> float:
    """Per-jump coefficient by the contour route (real nu >= 1).

    Integer nu >= 2 is evaluated at nearby non-integer orders and
    extrapolated (cubic in the offset), keeping the route numerically
    independent of the residue formula.
    """
    if nu < 1.0:
        raise DomainError(f"branch-cut route requires nu >= 1, got {nu}")
    if d.a == 0.0 or d.delta_phi == 0.0:
        return 0.0
    if abs(nu - round(nu)) > 1e-9 or abs(nu - 1.0) < 1e-9:
        return _branch_cut_real_nu(d, float(nu))
    offsets = np.array([0.08, 0.04, 0.02, 0.01])
    vals = np.array([_branch_cut_real_nu(d, float(nu) - h) for h in offsets])
    coef = np.polyfit(offsets, vals, 3)
    return float(np.polyval(coef, 0.0))


# --------------------------------------------------------------------------
# weak regime (1 <= alpha <= 2): critical-point dispatch
# --------------------------------------------------------------------------


def equal_alpha_log_coefficient(nu: int, alpha: float) -> float:
    """Closed form of the k=0 jump at h=1 with alpha1 = alpha2 = alpha:

        B_{nu,alpha} = 1/(pi^2 (nu-1)) sum_l arctan^2[ cos(alpha pi/2) /
                        sqrt(sin^2(alpha pi/2) + |z_l|^2) ].
    """
    if int(nu) != nu or nu < 2:
        raise DomainError("closed form defined for integer nu >= 2")
    if not (1.0 <= alpha <= 2.0):
        raise DomainError(f"equal-alpha coefficient requires alpha in [1,2], got {alpha}")
    return float(vacuum_jump_coefficients(math.pi * (1.0 - alpha), int(nu)))


def effective_central_charge(nu: int, alpha: float) -> float:
    """c_eff = 6 nu B_{nu,alpha} / (nu + 1); order-dependent away from 1, 2."""
    return 6.0 * nu * equal_alpha_log_coefficient(nu, alpha) / (nu + 1.0)


def short_range_coefficient(nu: float) -> float:
    """Maximal (dphi = pi) jump value (nu+1)/(12 nu); 1/6 at nu = 1."""
    return (nu + 1.0) / (12.0 * nu)


def weak_regime_B(nu: int, alpha1: float, alpha2: float, h: float) -> FHCoefficient:
    """ln L coefficient in the weak regime, dispatched over the phase diagram.

    Gapped h gives zero; h = 1 depends on the ordering of the exponents
    (no jump / equal-alpha form / dphi = pi); h = -1 + 2^(1-alpha1) always
    carries the dphi = pi jump at k = pi.
    """
    if int(nu) != nu or nu < 2:
        raise DomainError("weak_regime_B requires integer nu >= 2")
    if not (1.0 <= alpha1 <= 2.0 and 1.0 <= alpha2 <= 2.0):
        raise DomainError("weak regime requires alpha1, alpha2 in [1, 2]")
    nu = int(nu)
    h_pi = -1.0 + 2.0 ** (1.0 - alpha1)
    if abs(h - 1.0) < 1e-12:
        if alpha1 < alpha2:
            return FHCoefficient(nu, 0.0, (), Method.CLOSED_FORM)
        if alpha1 > alpha2:
            val = short_range_coefficient(nu)
            return FHCoefficient(nu, val, ((0.0, val),), Method.CLOSED_FORM)
        val = equal_alpha_log_coefficient(nu, alpha1)
        return FHCoefficient(nu, val, ((0.0, val),), Method.CLOSED_FORM)
    if abs(h - h_pi) < 1e-12:
        val = short_range_coefficient(nu)
        return FHCoefficient(nu, val, ((math.pi, val),), Method.CLOSED_FORM)
    return FHCoefficient(nu, 0.0, (), Method.CLOSED_FORM)


# --------------------------------------------------------------------------
# strong regime (0 <= alpha < 1): one jump per discrete mode
# --------------------------------------------------------------------------


def _discrete_couplings(alpha1: float, alpha2: float, N: int):
    """Couplings on n = -N/2+1 .. N/2+1 (one extra mode for the last jump)."""
    half = N // 2
    t_pos = np.array([specfun.strong_range_hopping_integral(alpha1, n)
                      for n in range(half + 2)])
    d_pos = np.array([specfun.strong_range_pairing_integral(alpha2, n)
                      for n in range(half + 2)])
    ns = np.arange(-half + 1, half + 2)
    t = t_pos[np.abs(ns)]
    d = d_pos[np.abs(ns)] * np.sign(ns)
    return ns, t, d


def strong_regime_B(nu: int, alpha1: float, alpha2: float, h: float,
                    N: int) -> FHCoefficient:
    """Sum of the N per-mode jump coefficients of the discrete-label symbol.

    Thermodynamic-limit discrete couplings label the modes; consecutive
    symbol angles phi_n = atan2(-D_n, h - t_n) define the jumps
    dphi_n = phi_{n+1} - phi_n for n = -N/2+1 .. N/2.  For h != 0 the total
    converges as N grows; at h = 0 it diverges as N^(1-2 alpha) for
    alpha < 1/2, which is the subvolume-law source.
    """
    if int(nu) != nu or nu < 2:
        raise DomainError("strong_regime_B requires integer nu >= 2")
    if not (0.0 <= alpha1 < 1.0 and 0.0 <= alpha2 < 1.0):
        raise DomainError("strong regime requires 0 <= alpha1, alpha2 < 1")
    if N < 4 or N % 2:
        raise DomainError("N must be even and >= 4")
    nu = int(nu)
    ns, t, d = _discrete_couplings(alpha1, alpha2, N)
    wbar = np.hypot(h - t, d)
    if float(wbar.min()) < 1e-12:
        raise CriticalPointError("a mode is exactly gapless; phi_n undefined")
    phi = np.arctan2(0.0 - d, h - t)
    dphi = _wrap_angle(phi[1:] - phi[:-1])
    vals = vacuum_jump_coefficients(dphi, nu)

    if nu == 2:
        num = wbar[1:] * wbar[:-1] - (h - t[1:]) * (h - t[:-1]) - d[1:] * d[:-1]
        den = 3.0 * wbar[1:] * wbar[:-1] + (h - t[1:]) * (h - t[:-1]) + d[1:] * d[:-1]
        explicit = (2.0 / math.pi ** 2) * np.arctan(
            np.sqrt(np.clip(num, 0.0, None) / den)) ** 2
        worst = float(np.max(np.abs(vals - explicit)))
        if worst > 1e-10:
            raise ConvergenceError(
                f"nu=2 jump values disagree with the explicit arctan form "
                f"by {worst:.2e}")

    return FHCoefficient(nu, float(vals.sum()),
                         tuple(zip(ns[:-1].tolist(), vals.tolist())),
                         Method.RESIDUE_SUM)


def single_discontinuity_approx(nu: int, alpha: float, h: float) -> float:
    """B_nu(h != 0) ~ B^(0) + B^(-1) = 2 B^(0) keeping only the jump between
    the n = 0 mode and its first neighbors.

    phi_0 is pi below the h = 1 transition and 0 above it, so the
    approximant is discontinuous across h = 1 like the full sum.
    """
    if int(nu) != nu or nu < 2:
        raise DomainError("single-discontinuity approximation needs integer nu >= 2")
    if not (0.0 <= alpha < 1.0):
        raise DomainError("strong regime requires 0 <= alpha < 1")
    if h == 0.0:
        raise DomainError("h = 0 has no single-jump regime (all modes matter)")
    if abs(h - 1.0) < 1e-12:
        raise CriticalPointError("phi_0 undefined at h = 1")
    t1 = specfun.strong_range_hopping_integral(alpha, 1)
    d1 = specfun.strong_range_pairing_integral(alpha, 1)
    phi1 = math.atan2(0.0 - d1, h - t1)
    phi0 = math.pi if h < 1.0 else 0.0
    dphi = float(_wrap_angle(phi1 - phi0))
    return 2.0 * float(vacuum_jump_coefficients(dphi, int(nu)))


# --------------------------------------------------------------------------
# h = 0 subvolume exponent and the large-n expansion coefficients
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroFieldExpansion:
    """Large-n coefficients of the h = 0 discrete couplings:

        t_{2n+1} t_{2n}  = s^2 / n^(2-2a) + O(n^(2a-3))
        D_{2n+1} D_{2n}  = c^2 / n^(2-2a) - a_lin^2 / n^2 + O(n^(2a-3))
        w_{2n+1} w_{2n}  = (s^2+c^2) / n^(2-2a) + b_quad / n^2 + O(n^(2a-3))

    with w_n = sqrt(t_n^2 + D_n^2) (half the quasiparticle energy).  The
    parity-alternating 2 a_lin (-1)^(n+1) / n term of D_n drives b_quad;
    expanding the square root gives b_quad = -a_lin^2 cos(alpha pi), which
    direct evaluation of the couplings confirms.
    """

    s: float
    c: float
    a_lin: float
    b_quad: float


def h0_expansion_coefficients(alpha: float) -> ZeroFieldExpansion:
    if not (0.0 < alpha < 1.0):
        raise DomainError("expansion defined for 0 < alpha < 1")
    pref = math.gamma(2.0 - alpha) * (2.0 * math.pi) ** (alpha - 1.0)
    s = math.sin(alpha * math.pi / 2.0) * pref
    c = math.cos(alpha * math.pi / 2.0) * pref
    a_lin = (1.0 - alpha) / (2.0 * math.pi)
    return ZeroFieldExpansion(s=s, c=c, a_lin=a_lin,
                              b_quad=-a_lin ** 2 * math.cos(alpha * math.pi))


def h0_scaling_exponent(alpha: float) -> float:
    """Exponent of the L-dependence of B_nu(h=0): 1-2 alpha below 1/2, else 0."""
    if not (0.0 < alpha < 1.0):
        raise DomainError("exponent defined for 0 < alpha < 1")
    if abs(alpha - 0.5) < 1e-9:
        raise DomainError("alpha = 1/2 is marginal (logarithmic crossover)")
    return 1.0 - 2.0 * alpha if alpha < 0.5 else 0.0
