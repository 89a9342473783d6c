"""Homological invariants of pairs of modules and checks of depth conditions."""
from .checks import (FAILS, HOLDS, INCONCLUSIVE, PairCheckReport, ReflexivityReport, biduality,
                     check_depth_formula, check_derived_formula, check_uac_bound, check_ubc,
                     qr_formula_at_m, totally_reflexive)
from .crosscheck import (KINDS, CrosscheckFailure, CrosscheckReport, cutdown_conditions, dagger,
                         is_cm_of_dim, is_mcm, koszul_cutdown, lemma_crosscheck, negativeqr_complex)
from .vanishing import (EXACT_ID, EXACT_PD, WINDOW, VanishingReport, b_window, ext_module, pd_detect,
                        q_window, tor_module)

__all__ = [
    "VanishingReport", "tor_module", "ext_module", "q_window", "b_window", "pd_detect",
    "EXACT_PD", "EXACT_ID", "WINDOW",
    "PairCheckReport", "ReflexivityReport", "HOLDS", "FAILS", "INCONCLUSIVE",
    "check_depth_formula", "check_derived_formula", "check_ubc", "check_uac_bound",
    "totally_reflexive", "biduality", "qr_formula_at_m",
    "lemma_crosscheck", "CrosscheckReport", "CrosscheckFailure", "KINDS", "koszul_cutdown",
    "negativeqr_complex", "cutdown_conditions", "is_cm_of_dim", "is_mcm", "dagger",
]
