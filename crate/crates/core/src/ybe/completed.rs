use std::sync::Arc;

use super::placement::{combine_series, CYBE};
use crate::affinize::graded_dual_basis;
use crate::error::{Error, Result};
use crate::families::{Coproduct, DeltaForm, Product};
use crate::kernel::{
    BasisKey, CheckReport, KeyPattern, Poly, Residual, Template, TemplateSeries, Tensor, Var, Violation, Window,
};

/// `r̃ = Σ_λ Σ_α (p_α⊗e_λ) ⊗ (q_α⊗f_λ)` for a finite `r` and the graded dual
/// bases `{e_λ}`, `{f_λ}` of the form. The finite factor is the left one of
/// each `Pair` key. The window is where the dual basis is verified.
pub fn affinize_r(r: &Tensor, form: &dyn DeltaForm, window: Window) -> Result<TemplateSeries> {
    graded_dual_basis(form, window)?;
    let shapes = form.space().shapes(0);
    let mut out = Vec::new();
    for (ks, c) in r.iter() {
        if ks.len() != 2 {
            return Err(Error::DimensionMismatch("r must be a two-leg tensor".into()));
        }
        for (e, nv) in &shapes {
            let (cf, f) = form.dual_pattern(e);
            let p = KeyPattern::pair(KeyPattern::from_key(&ks[0]), e.clone());
            let q = KeyPattern::pair(KeyPattern::from_key(&ks[1]), f);
            out.push(Template::new(*nv, Poly::constant(c * &cf), vec![p, q]));
        }
    }
    Ok(TemplateSeries::new(2, Vec::new(), out)?.normalize())
}

fn terms_to_violations(label: &str, t: &Tensor, rep: &mut CheckReport) {
    let mut count = 0u64;
    let mut stored = Vec::new();
    for (ks, c) in t.iter() {
        count += 1;
        if stored.len() < crate::kernel::MAX_STORED_VIOLATIONS {
            stored.push(Violation::new(label, ks.clone(), Residual::Scalar(c.clone())));
        }
    }
    rep.record_many(count, stored);
}

/// `[r12,r13] + [r12,r23] + [r13,r23]` for a two-leg series, compared to zero
/// coefficient by coefficient on the window box; also checks skew-symmetry.
pub fn cybe_residual(lie: &dyn Product, rtilde: &TemplateSeries, window: Window) -> Result<CheckReport> {
    let radius = window.interior("CYBE", 0)?;
    let mut rep = CheckReport::new("CYBE", Some(window));
    rep.note("bracket", lie.name());
    rep.note("radius", radius);
    let res = combine_series(lie, rtilde, &CYBE)?.restrict(radius)?;
    let skew = rtilde.add(&rtilde.permute(&[1, 0])).normalize().restrict(radius)?;
    rep.checked = rtilde.templates().len() as u64;
    terms_to_violations("cybe", &res, &mut rep);
    terms_to_violations("skew", &skew, &mut rep);
    Ok(rep.finish())
}

/// The cobracket `δ(a) = (ad a⊗id + id⊗ad a)(r̃)`.
#[derive(Clone)]
pub struct RCobracket {
    pub lie: Arc<dyn Product>,
    pub r: TemplateSeries,
}

impl RCobracket {
    pub fn new(lie: Arc<dyn Product>, r: TemplateSeries) -> Result<Self> {
        if r.arity() != 2 || !r.params().is_empty() {
            return Err(Error::IllPosedTemplate("r̃ must be a parameter-free two-leg series".into()));
        }
        Ok(RCobracket { lie, r })
    }
}

impl Coproduct for RCobracket {
    fn name(&self) -> String {
        format!("ad({})", self.lie.name())
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        let mut out = Vec::new();
        for t in self.r.templates() {
            let t = t.shift_vars(0, next);
            for pos in 0..2 {
                for (c, k) in self.lie.mul_pattern(key, &t.keys[pos]) {
                    let mut keys = t.keys.clone();
                    keys[pos] = k;
                    out.push(Template::new(t.nvars, &t.coeff * &c, keys));
                }
            }
        }
        Ok(out)
    }
}

pub fn lie_delta_from_r(lie: Arc<dyn Product>, rtilde: &TemplateSeries, key: &BasisKey) -> Result<TemplateSeries> {
    RCobracket::new(lie, rtilde.clone())?.series(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affinize::{coproduct_from_form, delta_bullet, InducedLie, Order, Side};
    use crate::families::{catalog, ATs, FiniteAlgebra, GradedPerm, KappaP, OmegaA, Space};
    use crate::kernel::{Scalar, SpaceId};
    use crate::ybe::coboundary_delta_perm;

    fn lie_of(p: &FiniteAlgebra) -> InducedLie {
        InducedLie::new(Arc::new(p.clone()), p.space(), Arc::new(ATs), Space::TeeEss, Order::PA)
    }

    fn sd() -> SpaceId {
        SpaceId::new("ex-semidirect")
    }

    fn k(i: u32, a: BasisKey) -> BasisKey {
        BasisKey::pair(BasisKey::fin(&sd(), i), a)
    }

    #[test]
    fn affinized_semidirect_solution() {
        let (p, r) = catalog::tensor("r-semidirect").unwrap();
        let rt = affinize_r(&r, &OmegaA, Window::new(3)).unwrap();
        let t = rt.restrict(3).unwrap();
        // Σ_i (e t^i⊗e* s^{-i} − e s^{-i}⊗e* t^i + e* t^i⊗e s^{-i} − e* s^{-i}⊗e t^i)
        let mut want = Vec::new();
        for i in -3..=3 {
            let (t_, s_) = (BasisKey::tee(i), BasisKey::ess(-i));
            want.push((vec![k(0, t_.clone()), k(1, s_.clone())], Scalar::one()));
            want.push((vec![k(0, s_.clone()), k(1, t_.clone())], -Scalar::one()));
            want.push((vec![k(1, t_.clone()), k(0, s_.clone())], Scalar::one()));
            want.push((vec![k(1, s_), k(0, t_)], -Scalar::one()));
        }
        assert_eq!(t, Tensor::from_terms(want));
        let rep = cybe_residual(&lie_of(&p), &rt, Window::new(5)).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
    }

    #[test]
    fn zero_and_failing() {
        let (p, r) = catalog::tensor("r-nil2").unwrap();
        assert!(cybe_residual(&lie_of(&p), &TemplateSeries::zero(2), Window::new(4)).unwrap().pass);
        assert!(affinize_r(&Tensor::zero(), &OmegaA, Window::new(3)).unwrap().templates().is_empty());
        let rt = affinize_r(&r, &OmegaA, Window::new(3)).unwrap();
        let rep = cybe_residual(&lie_of(&p), &rt, Window::new(4)).unwrap();
        assert!(!rep.pass && !rep.violations.is_empty());
        assert!(rep.violations.iter().all(|v| v.label == "cybe"));
    }

    #[test]
    fn kappa_case() {
        let a = catalog::algebra("pl-1").unwrap();
        let r = crate::ybe::tensor_from_entries(&a, &[(0, 0, Scalar::one())]);
        let rt = affinize_r(&r, &KappaP, Window::new(2)).unwrap();
        let e = BasisKey::fin(&a.id, 0);
        let pk = |m, n, d| BasisKey::pair(e.clone(), BasisKey::mono(m, n, d));
        assert_eq!(rt.coefficient_at(&[pk(2, -1, 1), pk(-2, 1, 2)]).unwrap(), Scalar::one());
        assert_eq!(rt.coefficient_at(&[pk(2, -1, 2), pk(-2, 1, 1)]).unwrap(), -Scalar::one());
        assert_eq!(rt.coefficient_at(&[pk(2, -1, 1), pk(-2, 1, 1)]).unwrap(), Scalar::zero());
        // the S-equation solution e⊗e of e⋄e=e affinizes to a CYBE solution
        let lie = InducedLie::new(Arc::new(a.clone()), a.space(), Arc::new(GradedPerm), Space::Mono, Order::AP);
        let rep = cybe_residual(&lie, &rt, Window::new(2)).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
        let (b, r2) = catalog::tensor("r-pl-nil2").unwrap();
        let rt2 = affinize_r(&r2, &KappaP, Window::new(2)).unwrap();
        let lie2 = InducedLie::new(Arc::new(b.clone()), b.space(), Arc::new(GradedPerm), Space::Mono, Order::AP);
        assert!(!cybe_residual(&lie2, &rt2, Window::new(2)).unwrap().pass);
    }

    #[test]
    fn final_example_delta_table() {
        let (p, r) = catalog::tensor("r-semidirect").unwrap();
        let rt = affinize_r(&r, &OmegaA, Window::new(3)).unwrap();
        let lie: Arc<dyn Product> = Arc::new(lie_of(&p));
        let int = Scalar::int;
        for i in [-2, 0, 1, 3] {
            // Σ_j (i+2j−1) e* s^{-j} ⊗ e* s^{i+j-1}, the cobracket of e* s^i
            // (degree i−1 on both sides)
            let d = lie_delta_from_r(lie.clone(), &rt, &k(1, BasisKey::ess(i))).unwrap();
            let mut want = Vec::new();
            for j in -8..=8 {
                want.push((vec![k(1, BasisKey::ess(-j)), k(1, BasisKey::ess(i + j - 1))], int(i + 2 * j - 1)));
            }
            let want = Tensor::from_terms(want).filter(|ks| ks.iter().all(|x| x.radius() <= 4));
            assert_eq!(d.restrict(4).unwrap(), want, "i={i}");
            // δ(e t^i): the −i e t^{-j} ⊗ e* s^{i+j-1} term
            let d = lie_delta_from_r(lie.clone(), &rt, &k(0, BasisKey::tee(i))).unwrap();
            for j in -2..=2 {
                let (a, b) = (BasisKey::tee(-j), BasisKey::ess(i + j - 1));
                assert_eq!(d.coefficient_at(&[k(0, a.clone()), k(1, b.clone())]).unwrap(), int(-i));
                assert_eq!(d.coefficient_at(&[k(1, a.clone()), k(0, b.clone())]).unwrap(), int(-i));
                assert_eq!(d.coefficient_at(&[k(1, b.clone()), k(0, a.clone())]).unwrap(), int(i));
                assert_eq!(d.coefficient_at(&[k(0, b), k(1, a)]).unwrap(), int(i));
            }
        }
        assert!(lie_delta_from_r(lie, &TemplateSeries::zero(2), &k(0, BasisKey::tee(1))).unwrap().templates().is_empty());
    }

    #[test]
    fn commutative_diagram() {
        let (p, r) = catalog::tensor("r-semidirect").unwrap();
        let rt = affinize_r(&r, &OmegaA, Window::new(3)).unwrap();
        let lie = lie_of(&p);
        let keys = lie.space().keys(4);
        let via_r = RCobracket::new(Arc::new(lie), rt).unwrap();
        let dp = coboundary_delta_perm(&p, &r).unwrap();
        let da = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie).unwrap();
        for key in &keys {
            let a = via_r.series(key).unwrap().restrict(4).unwrap();
            let b = delta_bullet(Arc::new(dp.clone()), Arc::new(da.clone()), Order::PA, key).unwrap().restrict(4).unwrap();
            assert_eq!(a, b, "{key}");
        }
    }
}
