//! Yang-Baxter type equations: coboundary coproducts, the perm-YBE, the
//! S-equation, the completed CYBE, `r♯`, O-operators and affinized solutions.

mod completed;
mod finite;
mod placement;

pub use completed::{affinize_r, cybe_residual, lie_delta_from_r, RCobracket};
pub use finite::{
    coboundary_delta_perm, coboundary_delta_prelie, is_symmetric, o_to_ybe, perm_ybe_residual, r_sharp,
    r_sharp_criterion, s_equation_residual, tensor_from_entries,
};
pub use placement::{combine, combine_series, place, place_series, Leg, Placement, CYBE, PERM_YBE, S_EQUATION};
