//! Tensor-product constructions: the Lie algebra induced on `P⊗A`, the •
//! cobracket, coproducts induced by invariant forms, graded dual bases and
//! the affinization probe.

mod bullet;
mod form_coproduct;
mod induced;
mod probe;

pub use bullet::{delta_bullet, BulletCobracket};
pub use form_coproduct::{coproduct_from_form, finite_coproduct_from_form, graded_dual_basis, FormCoproduct, Side};
pub use induced::{induced_lie_bracket, InducedLie, Order};
pub use probe::{affinization_probe, Candidate, ProbeVerdict, Special, EXHAUSTIVE_MAX_DIM, SAMPLE_TRIPLES};
