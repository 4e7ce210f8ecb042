//! Doubling constructions: semidirect products, dual representations,
//! matched-pair assembly, Manin triples, symplectic and pre-Lie conversions
//! and the restricted-dual double.

mod appendix;
mod manin;
mod semidirect;

pub use semidirect::{dual_rep, module_labels, semidirect_perm, zero_rep};
pub use appendix::{
    invariant_form_search, prelie_to_symplectic, restricted_dual_double, restricted_dual_finite, symplectic_to_prelie,
    FormSearchReport, RestrictedDouble, RestrictedDualW1, RestrictedForm,
};
pub use manin::{
    canonical_actions, dual_perm_algebra, kappa_d, manin_double_from_bialgebra, manin_lie_delta, matched_pair_assemble,
    validate_manin, ManinData, ManinLevel, PermDouble,
};
