use super::{flip, region, scan, LawId};
use crate::axioms::{check_algebra, check_coalgebra};
use crate::error::Result;
use crate::families::{coproduct_vec, Coproduct, FiniteAlgebra, FiniteCoproduct, Product, Space};
use crate::kernel::{BasisKey, CheckReport, FormalVector, KeyPattern, Residual, Tensor, TemplateSeries, Violation, Window};

fn push(out: &mut Vec<Violation>, label: &str, keys: &[&BasisKey], r: Tensor) {
    if !r.is_zero() {
        out.push(Violation::new(label, keys.iter().map(|k| (*k).clone()).collect(), Residual::Tensor(r)));
    }
}

struct Ops<'a> {
    a: &'a FiniteAlgebra,
    d: &'a FiniteCoproduct,
}

impl Ops<'_> {
    fn delta(&self, k: &BasisKey) -> Tensor {
        self.d.apply(self.a.index_of(k).expect("key of the algebra"))
    }

    fn delta_vec(&self, v: &FormalVector) -> Tensor {
        self.d.apply_vec(v)
    }

    fn l(&self, p: &BasisKey, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, |k| self.a.mul(p, k))
    }

    fn r(&self, q: &BasisKey, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, |k| self.a.mul(k, q))
    }

    fn l_minus_r(&self, p: &BasisKey, t: &Tensor, leg: usize) -> Tensor {
        t.map_leg(leg, |k| self.a.mul(p, k).sub(&self.a.mul(k, p)))
    }
}

fn finish_finite(
    law: LawId,
    alg: &FiniteAlgebra,
    d: &FiniteCoproduct,
    base: LawId,
    cobase: LawId,
    f: &(dyn Fn(&[&BasisKey]) -> Vec<Violation> + Sync),
) -> Result<CheckReport> {
    let keys = alg.space().keys(0);
    let mut rep = CheckReport::new(law.name(), None);
    rep.checked = (keys.len() * keys.len()) as u64;
    let (count, vs) = scan(&keys, 2, false, f);
    rep.record_many(count, vs);
    let w = Window::new(1);
    rep.absorb(check_algebra(alg, &alg.space(), base, w)?);
    rep.absorb(check_coalgebra(d, &alg.space(), cobase, w)?);
    Ok(rep.finish())
}

/// Perm algebra + perm coalgebra + the three compatibility equations.
pub fn check_perm_bialgebra(alg: &FiniteAlgebra, d: &FiniteCoproduct) -> Result<CheckReport> {
    let o = Ops { a: alg, d };
    let f = |t: &[&BasisKey]| {
        let (p, q) = (t[0], t[1]);
        let mut out = Vec::new();
        let dp = o.delta(p);
        let dq = o.delta(q);
        let dpq = o.delta_vec(&alg.mul(p, q));
        // Δ(pq) = ((L−R)(p)⊗id)Δ(q) + (id⊗R(q))Δ(p)
        let rhs1 = o.l_minus_r(p, &dq, 0).add(&o.r(q, &dp, 1));
        push(&mut out, "pb1", t, dpq.sub(&rhs1));
        // σ(R(q)⊗id)Δ(p) = (R(p)⊗id)Δ(q)
        let r2 = flip(&o.r(q, &dp, 0)).sub(&o.r(p, &dq, 0));
        push(&mut out, "pb2", t, r2);
        // Δ(pq) = (id⊗L(p))Δ(q) + ((L−R)(q)⊗id)(Δ(p) − σΔ(p))
        let rhs3 = o.l(p, &dq, 1).add(&o.l_minus_r(q, &dp.sub(&flip(&dp)), 0));
        push(&mut out, "pb3", t, dpq.sub(&rhs3));
        out
    };
    finish_finite(LawId::PermBi, alg, d, LawId::Perm, LawId::CoPerm, &f)
}

/// Pre-Lie algebra + pre-Lie coalgebra + `ζ(b,a) = ζ(a,b) = σζ(a,b)`.
pub fn check_prelie_bialgebra(alg: &FiniteAlgebra, d: &FiniteCoproduct) -> Result<CheckReport> {
    let o = Ops { a: alg, d };
    // ζ(a,b) = Δ(a⋄b) − (L(a)⊗id + id⊗L(a))Δ(b) − (id⊗R(b))Δ(a)
    let zeta = |a: &BasisKey, b: &BasisKey| {
        let db = o.delta(b);
        o.delta_vec(&alg.mul(a, b)).sub(&o.l(a, &db, 0)).sub(&o.l(a, &db, 1)).sub(&o.r(b, &o.delta(a), 1))
    };
    let f = |t: &[&BasisKey]| {
        let (a, b) = (t[0], t[1]);
        let mut out = Vec::new();
        let zab = zeta(a, b);
        push(&mut out, "zeta-sym", t, zeta(b, a).sub(&zab));
        push(&mut out, "zeta-flip", t, zab.sub(&flip(&zab)));
        out
    };
    finish_finite(LawId::PreLieBi, alg, d, LawId::PreLie, LawId::CoPreLie, &f)
}

/// `(ad(a)⊗id + id⊗ad(a))` applied to a two-leg series.
pub(crate) fn ad_both(lie: &dyn Product, a: &BasisKey, s: &TemplateSeries) -> TemplateSeries {
    let ap = KeyPattern::from_key(a);
    let ad = |k: &KeyPattern| lie.mul_pattern(&ap, k);
    s.map_at(0, &ad).add(&s.map_at(1, &ad)).normalize()
}

/// The cocycle condition
/// `δ([a,b]) = (ad a⊗id + id⊗ad a)δ(b) − (ad b⊗id + id⊗ad b)δ(a)` on
/// interior pairs, with every coefficient on the interior box compared.
pub fn check_lie_bialgebra(lie: &dyn Product, delta: &dyn Coproduct, space: &Space, window: Window) -> Result<CheckReport> {
    let law = LawId::LieBiCocycle;
    let (keys, w, radius) = region(space, law, window, 1 + lie.max_shift())?;
    let mut rep = CheckReport::new(law.name(), w);
    rep.note("bracket", lie.name());
    rep.note("cobracket", delta.name());
    if w.is_some() {
        rep.note("interior", radius);
    }
    rep.checked = (keys.len() * keys.len()) as u64;
    let series: Vec<TemplateSeries> = keys.iter().map(|k| delta.series(k)).collect::<Result<_>>()?;
    let idx = |k: &BasisKey| keys.binary_search(k).expect("interior key");
    let err = std::sync::Mutex::new(None);
    let f = |t: &[&BasisKey]| {
        let (a, b) = (t[0], t[1]);
        let res = coproduct_vec(delta, &lie.mul(a, b)).map(|lhs| {
            let rhs = ad_both(lie, a, &series[idx(b)]).sub(&ad_both(lie, b, &series[idx(a)]));
            lhs.sub(&rhs).normalize().restrict(radius)
        });
        match res.and_then(|x| x) {
            Ok(r) if r.is_zero() => Vec::new(),
            Ok(r) => vec![Violation::new("cocycle", vec![a.clone(), b.clone()], Residual::Tensor(r))],
            Err(e) => {
                err.lock().unwrap().get_or_insert(e);
                Vec::new()
            }
        }
    };
    let (count, vs) = scan(&keys, 2, false, &f);
    if let Some(e) = err.into_inner().unwrap() {
        return Err(e);
    }
    rep.record_many(count, vs);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::catalog;
    use crate::families::finite::AlgebraKind;
    use crate::kernel::Scalar;

    #[test]
    fn ex_1p_is_a_perm_bialgebra() {
        let a = catalog::algebra("ex-1p").unwrap();
        let d = catalog::coproduct("ex-1p").unwrap();
        let r = check_perm_bialgebra(&a, &d).unwrap();
        assert!(r.pass, "{}", r.to_text());
    }

    #[test]
    fn zero_coproduct_is_always_compatible() {
        for id in ["ex-1p", "ex-nil2", "ex-semidirect", "ex-left-unit"] {
            let a = catalog::algebra(id).unwrap();
            let d = FiniteCoproduct::zero(&a.id, a.dim());
            assert!(check_perm_bialgebra(&a, &d).unwrap().pass, "{id}");
        }
    }

    #[test]
    fn twisted_coproduct_fails() {
        // e1·e1 = e2 with Δ(e1) = e1⊗e1: Δ(e1·e1) = 0 but the right side of pb1 is e1⊗e2
        let a = catalog::algebra("ex-nil2").unwrap();
        let mut d = FiniteCoproduct::zero(&a.id, 2);
        d.d[0][0][0] = Scalar::one();
        let r = check_perm_bialgebra(&a, &d).unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.label == "pb1"));
    }

    #[test]
    fn prelie_bialgebra_zero_coproduct() {
        let a = catalog::algebra("pl-1").unwrap();
        assert_eq!(a.kind, AlgebraKind::PreLie);
        let d = FiniteCoproduct::zero(&a.id, 1);
        assert!(check_prelie_bialgebra(&a, &d).unwrap().pass);
    }
}
