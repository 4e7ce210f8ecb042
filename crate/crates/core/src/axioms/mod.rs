//! Law checkers. Each identity is a residual evaluator; a check evaluates it
//! on every key tuple of a window interior (or the full basis of a finite
//! algebra) and collects the nonzero residuals into a [`CheckReport`].

mod algebra;
mod bialgebra;
mod coalgebra;
mod finite;
mod form;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::families::Space;
use crate::kernel::report::MAX_STORED_VIOLATIONS;
use crate::kernel::{BasisKey, FormalVector, Tensor, Violation, Window};

pub use algebra::{check_algebra, find_algebra_violation};
pub(crate) use algebra::residuals as algebra_residuals;
pub use bialgebra::{check_lie_bialgebra, check_perm_bialgebra, check_prelie_bialgebra};
pub use coalgebra::check_coalgebra;
pub use finite::{
    check_matched_pair, check_o_operator, check_preperm, check_representation, o_operator_residual, star_algebra,
};
pub use form::{check_form, gram_rank};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LawId {
    Perm,
    PreLie,
    Novikov,
    LieJacobi,
    LieSkew,
    CoPerm,
    CoPreLie,
    CoLieSkew,
    CoLieJacobi,
    PermBi,
    PreLieBi,
    LieBiCocycle,
    QuadPreLieForm,
    QuadPermForm,
    ManinPermKd,
    ManinLieB,
    Representation,
    MatchedPairPerm,
    OOperator,
    PrePerm,
    SymplecticLie,
}

impl LawId {
    pub fn name(&self) -> &'static str {
        use LawId::*;
        match self {
            Perm => "Perm",
            PreLie => "PreLie",
            Novikov => "Novikov",
            LieJacobi => "LieJacobi",
            LieSkew => "LieSkew",
            CoPerm => "CoPerm",
            CoPreLie => "CoPreLie",
            CoLieSkew => "CoLieSkew",
            CoLieJacobi => "CoLieJacobi",
            PermBi => "PermBi",
            PreLieBi => "PreLieBi",
            LieBiCocycle => "LieBiCocycle",
            QuadPreLieForm => "QuadPreLieForm",
            QuadPermForm => "QuadPermForm",
            ManinPermKd => "ManinPermKd",
            ManinLieB => "ManinLieB",
            Representation => "Representation",
            MatchedPairPerm => "MatchedPairPerm",
            OOperator => "OOperator",
            PrePerm => "PrePerm",
            SymplecticLie => "SymplecticLie",
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Keys of the checked region and the window to report. Finite spaces are
/// checked on their whole basis and report no window.
pub(crate) fn region(
    space: &Space,
    law: LawId,
    window: Window,
    auto_margin: i64,
) -> Result<(Vec<BasisKey>, Option<Window>, i64)> {
    if !space.has_slots() {
        return Ok((space.keys(0), None, 0));
    }
    let r = window.interior(law.name(), auto_margin)?;
    Ok((space.keys(r), Some(window), r))
}

/// Evaluates `f` on every `arity`-tuple of `items`, in parallel over the
/// first position. Returns the total violation count and the stored ones.
/// With `first_only` the scan stops at the first violating tuple in
/// canonical order.
pub(crate) fn scan<T: Sync>(
    items: &[T],
    arity: usize,
    first_only: bool,
    f: &(dyn Fn(&[&T]) -> Vec<Violation> + Sync),
) -> (u64, Vec<Violation>) {
    let n = items.len();
    if n == 0 || arity == 0 {
        return (0, Vec::new());
    }
    let inner = |i: usize| -> (u64, Vec<Violation>) {
        let mut count = 0u64;
        let mut kept = Vec::new();
        let mut idx = vec![0usize; arity];
        idx[0] = i;
        let mut tuple: Vec<&T> = Vec::with_capacity(arity);
        loop {
            tuple.clear();
            tuple.extend(idx.iter().map(|&k| &items[k]));
            let vs = f(&tuple);
            if !vs.is_empty() {
                count += vs.len() as u64;
                for v in vs {
                    if kept.len() < MAX_STORED_VIOLATIONS {
                        kept.push(v);
                    }
                }
                if first_only {
                    return (count, kept);
                }
            }
            let mut p = arity - 1;
            loop {
                if p == 0 {
                    return (count, kept);
                }
                idx[p] += 1;
                if idx[p] < n {
                    break;
                }
                idx[p] = 0;
                p -= 1;
            }
        }
    };
    if first_only {
        (0..n).into_par_iter().map(inner).find_first(|(c, _)| *c > 0).unwrap_or_default()
    } else {
        let parts: Vec<(u64, Vec<Violation>)> = (0..n).into_par_iter().map(inner).collect();
        let mut count = 0;
        let mut kept = Vec::new();
        for (c, v) in parts {
            count += c;
            kept.extend(v);
        }
        (count, kept)
    }
}

/// `a·v` for a key `a` and a vector `v`.
pub(crate) fn lmul(op: &dyn crate::families::Product, a: &BasisKey, v: &FormalVector) -> FormalVector {
    let mut parts = Vec::new();
    for (k, c) in v.iter() {
        for (k2, c2) in op.mul(a, k).into_terms() {
            parts.push((k2, &c2 * c));
        }
    }
    FormalVector::from_terms(parts)
}

/// `v·b` for a vector `v` and a key `b`.
pub(crate) fn rmul(op: &dyn crate::families::Product, v: &FormalVector, b: &BasisKey) -> FormalVector {
    let mut parts = Vec::new();
    for (k, c) in v.iter() {
        for (k2, c2) in op.mul(k, b).into_terms() {
            parts.push((k2, &c2 * c));
        }
    }
    FormalVector::from_terms(parts)
}

pub(crate) fn flip(t: &Tensor) -> Tensor {
    t.permute(&[1, 0])
}

pub(crate) fn pow_count(n: usize, k: u32) -> u64 {
    (n as u64).saturating_pow(k)
}
