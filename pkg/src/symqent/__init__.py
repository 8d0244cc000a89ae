"""Symmetric N-qubit states in the Dicke basis: reduced states,
anticoherence, spin and Husimi moments, Majorana constellations, SLOCC
normal forms and entanglement measures."""
from .dicke import (SingleQubitOp, SymState, apply_symmetric_op, catalog, chi_state,
                    expand_full, ghz, make_state, p_state, psi_mu, random_state, state_from_json,
                    state_to_json)
from .entanglement import (barycentric_measure, geometric_measure, gme_psi_mu_closed_form,
                           n_tangle)
from .errors import (CanonicalizationFailure, DimensionMismatch, InvalidState, NotCovered,
                     NotGenericState, NumericalFailure, SingularOperator, SizeLimitExceeded,
                     SymqentError, Unsupported)
from .husimi import husimi_eval, husimi_grid, moments
from .majorana import Moebius, apply_moebius, barycenter, canonicalize4, in_S, roots, state_from_roots
from .reduced import anticoherence_order, is_mes, rho_t
from .spin import (decompose_dyad, decompose_operator, order2_spin_conditions, reassemble, rho1_from_spin,
                   rho2_from_spin)

__version__ = "0.1.0"

__all__ = [
    "CanonicalizationFailure", "DimensionMismatch", "InvalidState", "Moebius", "NotCovered",
    "NotGenericState", "NumericalFailure", "SingleQubitOp", "SingularOperator", "SizeLimitExceeded",
    "SymState", "SymqentError", "Unsupported", "anticoherence_order", "apply_moebius",
    "apply_symmetric_op", "barycenter", "barycentric_measure", "canonicalize4", "catalog",
    "chi_state", "decompose_dyad", "decompose_operator", "expand_full", "geometric_measure", "ghz",
    "gme_psi_mu_closed_form", "husimi_eval", "husimi_grid", "in_S", "is_mes", "make_state",
    "moments", "n_tangle", "order2_spin_conditions", "p_state", "psi_mu", "random_state",
    "reassemble", "rho1_from_spin", "rho2_from_spin", "rho_t", "roots", "state_from_json",
    "state_from_roots", "state_to_json",
]
