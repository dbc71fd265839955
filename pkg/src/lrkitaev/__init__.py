"""Ground-state entanglement of the long-range Kitaev chain.

Numerical route: Bogoliubov couplings -> block correlation matrix ->
Renyi/von Neumann entropies.  Analytic route: per-discontinuity
log-coefficients of the large-L expansion.  A Fock-space brute-force
oracle cross-checks the numerics on small chains.
"""

from .analysis import ScalingFit, fit_log_plus_subleading, fit_power_law_exponent, sweep
from .asymptotics import (Discontinuity, FHCoefficient, ZeroFieldExpansion,
                          effective_central_charge, equal_alpha_log_coefficient,
                          h0_expansion_coefficients, h0_scaling_exponent,
                          jump_coefficient_branch_cut, jump_coefficient_residues,
                          short_range_coefficient, single_discontinuity_approx,
                          strong_regime_B, vacuum_jump_coefficients, weak_regime_B)
from .gaussian_state import (CorrelationMatrix, EntropyResult, SymbolValue,
                             build_correlation_matrix, build_symbol,
                             fh_volume_term, renyi_entropy)
from .model import (ChainParams, ModeData, PhaseDiagnostics, couplings_at_mode,
                    critical_fields, dispersion_prefactors, ground_degeneracy_log,
                    kac_norm, mean_field_spectrum, mode_table, phase_diagnostics,
                    q_invariant, winding_number)
from .oracle import FockState, build_bcs_vacuum, exact_entropy, vacuum_defect
from .specfun import (PolylogValue, polylog_unit_circle, riemann_zeta,
                      strong_range_hopping_integral, strong_range_pairing_integral)

__version__ = "0.1.0"

__all__ = [
    "ChainParams", "ModeData", "PhaseDiagnostics", "CorrelationMatrix",
    "EntropyResult", "SymbolValue", "FockState", "Discontinuity",
    "FHCoefficient", "ZeroFieldExpansion", "ScalingFit", "PolylogValue",
    "kac_norm", "couplings_at_mode", "mode_table", "critical_fields",
    "winding_number", "q_invariant", "phase_diagnostics",
    "dispersion_prefactors", "mean_field_spectrum", "ground_degeneracy_log",
    "build_symbol", "build_correlation_matrix", "renyi_entropy",
    "fh_volume_term", "build_bcs_vacuum", "vacuum_defect", "exact_entropy",
    "jump_coefficient_residues", "jump_coefficient_branch_cut",
    "vacuum_jump_coefficients", "weak_regime_B", "equal_alpha_log_coefficient",
    "effective_central_charge", "short_range_coefficient", "strong_regime_B",
    "single_discontinuity_approx", "h0_scaling_exponent",
    "h0_expansion_coefficients", "fit_log_plus_subleading",
    "fit_power_law_exponent", "sweep", "riemann_zeta", "polylog_unit_circle",
    "strong_range_hopping_integral", "strong_range_pairing_integral",
]
