use rayon::prelude::*;

use super::{pow_count, region, LawId};
use crate::error::{Error, Result};
use crate::families::{Coproduct, Space};
use crate::kernel::report::MAX_STORED_VIOLATIONS;
use crate::kernel::{BasisKey, CheckReport, Residual, TemplateSeries, Violation, Window};

const S12: [usize; 3] = [1, 0, 2];

/// `(Δ⊗id)Δ(a)` and `(id⊗Δ)Δ(a)`.
pub(crate) fn compose(delta: &dyn Coproduct, d: &TemplateSeries) -> Result<(TemplateSeries, TemplateSeries)> {
    let rule = |k: &crate::kernel::KeyPattern, v| delta.pieces(k, v);
    Ok((d.apply_at(0, 2, &rule)?, d.apply_at(1, 2, &rule)?))
}

/// Labelled residual series of a coalgebra law at one input key.
fn residuals(delta: &dyn Coproduct, law: LawId, a: &BasisKey) -> Result<Vec<(&'static str, TemplateSeries)>> {
    let d = delta.series(a)?;
    Ok(match law {
        LawId::CoLieSkew => vec![("coskew", d.add(&d.flip_hat()))],
        LawId::CoPerm => {
            let (x, y) = compose(delta, &d)?;
            vec![("cp-assoc", x.sub(&y)), ("cp-flip", x.sub(&x.permute(&S12)))]
        }
        LawId::CoPreLie => {
            let (x, y) = compose(delta, &d)?;
            let r = x.sub(&x.permute(&S12)).sub(&y).add(&y.permute(&S12));
            vec![("coprelie", r)]
        }
        LawId::CoLieJacobi => {
            let (w, z) = compose(delta, &d)?;
            vec![("cojacobi", z.sub(&z.permute(&S12)).sub(&w))]
        }
        other => return Err(Error::Precondition(format!("{other} is not a coalgebra law"))),
    })
}

/// Checks a coalgebra law: for every interior input key, every coefficient
/// of the composed residual series on the interior box must vanish.
pub fn check_coalgebra(delta: &dyn Coproduct, space: &Space, law: LawId, window: Window) -> Result<CheckReport> {
    let legs = if law == LawId::CoLieSkew { 2 } else { 3 };
    let composed = legs as i64 - 1;
    let (keys, w, radius) = region(space, law, window, composed)?;
    let mut rep = CheckReport::new(law.name(), w);
    rep.note("coproduct", delta.name());
    if w.is_some() {
        rep.note("interior", radius);
    }
    rep.checked = (keys.len() as u64).saturating_mul(pow_count(keys.len(), legs));
    let parts: Vec<Result<Vec<Violation>>> = keys
        .par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for (label, s) in residuals(delta, law, a)? {
                let t = s.restrict(radius)?;
                if !t.is_zero() {
                    out.push(Violation::new(label, vec![a.clone()], Residual::Tensor(t)));
                }
            }
            Ok(out)
        })
        .collect();
    let mut count = 0;
    let mut kept = Vec::new();
    for p in parts {
        let vs = p?;
        count += vs.len() as u64;
        if kept.len() < MAX_STORED_VIOLATIONS {
            kept.extend(vs);
        }
    }
    rep.record_many(count, kept);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{catalog, DeltaA, DeltaP, FiniteCoproduct, PerturbedDeltaA, WnCodelta};

    #[test]
    fn closed_form_coproducts_pass() {
        let w = Window::new(3);
        assert!(check_coalgebra(&DeltaP, &Space::Mono, LawId::CoPerm, w).unwrap().pass);
        assert!(check_coalgebra(&DeltaA, &Space::TeeEss, LawId::CoPreLie, w).unwrap().pass);
        assert!(check_coalgebra(&WnCodelta { n: 1 }, &Space::Wn(1), LawId::CoPreLie, w).unwrap().pass);
    }

    #[test]
    fn perturbed_delta_a_fails() {
        let r = check_coalgebra(&PerturbedDeltaA, &Space::TeeEss, LawId::CoPreLie, Window::new(4)).unwrap();
        assert!(!r.pass);
        assert!(r.witness().is_some());
    }

    #[test]
    fn delta_a_is_not_coperm() {
        assert!(!check_coalgebra(&DeltaA, &Space::TeeEss, LawId::CoPerm, Window::new(3)).unwrap().pass);
    }

    #[test]
    fn finite_coproducts() {
        let d = catalog::coproduct("ex-1p").unwrap();
        let a = catalog::algebra("ex-1p").unwrap();
        let r = check_coalgebra(&d, &a.space(), LawId::CoPerm, Window::new(1)).unwrap();
        assert!(r.pass);
        let z = FiniteCoproduct::zero(&a.id, 1);
        for law in [LawId::CoPerm, LawId::CoPreLie, LawId::CoLieSkew, LawId::CoLieJacobi] {
            assert!(check_coalgebra(&z, &a.space(), law, Window::new(1)).unwrap().pass);
        }
        // e ↦ e⊗e is not skew
        assert!(!check_coalgebra(&d, &a.space(), LawId::CoLieSkew, Window::new(1)).unwrap().pass);
    }
}
