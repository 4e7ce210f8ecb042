use std::sync::Arc;

use serde::Serialize;

use crate::affinize::{InducedLie, Order};
use crate::axioms::{check_algebra, check_form, check_matched_pair, check_perm_bialgebra, region, star_algebra, LawId};
use crate::error::{Error, Result};
use crate::families::finite::AlgebraKind;
use crate::families::{DeltaForm, FiniteAlgebra, FiniteCoproduct, FiniteForm, Form, Product, Rep, Space, TensorForm};
use crate::kernel::linalg;
use crate::kernel::{BasisKey, CheckReport, KeyPattern, Residual, Scalar, Tensor, Violation, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ManinLevel {
    /// Perm algebra with the skew form `κ_d`.
    PermKd,
    /// Lie algebra with a symmetric invariant form.
    LieB,
}

/// A total algebra, a form, and the splitting into two subspaces: keys whose
/// finite component has index below `split` are the first subspace.
#[derive(Clone)]
pub struct ManinData {
    pub level: ManinLevel,
    pub product: Arc<dyn Product>,
    pub form: Arc<dyn Form>,
    pub space: Space,
    pub split: u32,
}

fn fin_index(k: &BasisKey) -> Option<u32> {
    match k {
        BasisKey::Fin { i, .. } => Some(*i),
        BasisKey::Pair { l, .. } => fin_index(l),
        _ => None,
    }
}

impl ManinData {
    pub fn in_first(&self, k: &BasisKey) -> bool {
        fin_index(k).is_some_and(|i| i < self.split)
    }
}

/// The form law, the algebra law, and that both subspaces are isotropic
/// subalgebras (on interior key pairs for families).
pub fn validate_manin(data: &ManinData, window: Window) -> Result<CheckReport> {
    let law = match data.level {
        ManinLevel::PermKd => LawId::ManinPermKd,
        ManinLevel::LieB => LawId::ManinLieB,
    };
    let op = data.product.as_ref();
    let mut rep = check_form(op, data.form.as_ref(), &data.space, law, window)?;
    let alg_laws: &[LawId] = match data.level {
        ManinLevel::PermKd => &[LawId::Perm],
        ManinLevel::LieB => &[LawId::LieJacobi, LawId::LieSkew],
    };
    for l in alg_laws {
        rep.absorb(check_algebra(op, &data.space, *l, window)?);
    }
    let (keys, _, _) = region(&data.space, law, window, op.max_shift())?;
    let mut found = Vec::new();
    for a in &keys {
        let side = data.in_first(a);
        for b in keys.iter().filter(|b| data.in_first(b) == side) {
            let f = data.form.eval(a, b);
            if !f.is_zero() {
                found.push(Violation::new("isotropic", vec![a.clone(), b.clone()], Residual::Scalar(f)));
            }
            let ab = op.mul(a, b);
            let out = ab.filter(|k| data.in_first(k) != side);
            if !out.is_zero() {
                found.push(Violation::new("subalgebra", vec![a.clone(), b.clone()], Residual::Vector(out)));
            }
        }
    }
    rep.checked += (keys.len() * keys.len()) as u64;
    rep.record_many(found.len() as u64, found.into_iter().take(crate::kernel::MAX_STORED_VIOLATIONS).collect());
    Ok(rep.finish())
}

/// `(L·*, L·*−R·*)` of `P` on `P*` and `(L∘*, L∘*−R∘*)` of `P*` on `P`.
pub fn canonical_actions(p: &FiniteAlgebra, pstar: &FiniteAlgebra) -> (Rep, Rep) {
    (Rep::adjoint(p).dual(), Rep::adjoint(pstar).dual())
}

/// The ⋆ table on `P1⊕P2`, only after the matched-pair check passes.
pub fn matched_pair_assemble(p1: &FiniteAlgebra, p2: &FiniteAlgebra, rep1: &Rep, rep2: &Rep, id: &str) -> Result<FiniteAlgebra> {
    let rep = check_matched_pair(p1, p2, rep1, rep2)?;
    if let Some(w) = rep.witness() {
        return Err(Error::Rejected(format!("not a matched pair: {w}")));
    }
    star_algebra(p1, p2, rep1, rep2, id)
}

/// The perm algebra `P*` with the product dual to `Δ`.
pub fn dual_perm_algebra(p: &FiniteAlgebra, d: &FiniteCoproduct) -> FiniteAlgebra {
    let labels = p.labels.iter().map(|l| format!("{l}*")).collect();
    d.dual_algebra(&format!("{}*", p.id), labels, AlgebraKind::Perm)
}

/// `κ_d(p1 + p1*, p2 + p2*) = ⟨p1*, p2⟩ − ⟨p2*, p1⟩` on `P⊕P*`.
pub fn kappa_d(id: &str, n: usize) -> FiniteForm {
    let mut m = linalg::zeros(2 * n, 2 * n);
    for i in 0..n {
        m[n + i][i] = Scalar::one();
        m[i][n + i] = -Scalar::one();
    }
    FiniteForm { id: crate::kernel::SpaceId::new(id), m }
}

/// A perm bialgebra's double `P⋈P*` with `κ_d`.
#[derive(Clone, Debug)]
pub struct PermDouble {
    pub base: FiniteAlgebra,
    pub dual: FiniteAlgebra,
    pub algebra: FiniteAlgebra,
    pub kappa: FiniteForm,
}

impl PermDouble {
    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn data(&self) -> ManinData {
        ManinData {
            level: ManinLevel::PermKd,
            product: Arc::new(self.algebra.clone()),
            form: Arc::new(self.kappa.clone()),
            space: self.algebra.space(),
            split: self.n() as u32,
        }
    }

    /// `((P⊕P*)⊗A, P⊗A, P*⊗A)` with `B = κ_d ⊗ ω`.
    pub fn lie_lift(&self, a: Arc<dyn Product>, a_space: Space, omega: Arc<dyn Form>) -> ManinData {
        let lie = InducedLie::new(Arc::new(self.algebra.clone()), self.algebra.space(), a, a_space, Order::PA);
        let space = lie.space();
        ManinData {
            level: ManinLevel::LieB,
            product: Arc::new(lie),
            form: Arc::new(TensorForm { left: Arc::new(self.kappa.clone()), right: omega }),
            space,
            split: self.n() as u32,
        }
    }

    fn lift_key(&self, k: &BasisKey, offset: usize) -> Result<BasisKey> {
        match k {
            BasisKey::Pair { l, r } => match self.base.index_of(l) {
                Some(i) => Ok(BasisKey::pair(self.algebra.key(i + offset), (**r).clone())),
                None => Err(Error::ForeignKey { key: k.to_string(), family: self.base.id.to_string() }),
            },
            _ => Err(Error::ForeignKey { key: k.to_string(), family: self.base.id.to_string() }),
        }
    }
}

pub fn manin_double_from_bialgebra(p: &FiniteAlgebra, d: &FiniteCoproduct) -> Result<PermDouble> {
    let bi = check_perm_bialgebra(p, d)?;
    if let Some(w) = bi.witness() {
        return Err(Error::Rejected(format!("not a perm bialgebra: {w}")));
    }
    let dual = dual_perm_algebra(p, d);
    let (r1, r2) = canonical_actions(p, &dual);
    let id = format!("{}⋈{}", p.id, dual.id);
    let algebra = matched_pair_assemble(p, &dual, &r1, &r2, &id)?;
    let kappa = kappa_d(&id, p.dim());
    let double = PermDouble { base: p.clone(), dual, algebra, kappa };
    let rep = validate_manin(&double.data(), Window::new(1))?;
    if let Some(w) = rep.witness() {
        return Err(Error::Rejected(format!("not a Manin triple: {w}")));
    }
    Ok(double)
}

/// `δ(x) = Σ_{y,z} B(x, [u_y, u_z]) y⊗z` on the box of radius `radius`, where
/// `u_y ∈ P*⊗A` is the `B`-dual of `y ∈ P⊗A`. This is the cobracket dual to
/// the bracket of the second subspace of the lifted Manin triple.
pub fn manin_lie_delta(
    double: &PermDouble,
    a: Arc<dyn Product>,
    a_space: Space,
    omega: &dyn DeltaForm,
    x: &BasisKey,
    radius: i64,
) -> Result<Tensor> {
    let lie = InducedLie::new(Arc::new(double.algebra.clone()), double.algebra.space(), a, a_space.clone(), Order::PA);
    let b = |x: &BasisKey, y: &BasisKey| match (x, y) {
        (BasisKey::Pair { l: l1, r: r1 }, BasisKey::Pair { l: l2, r: r2 }) => {
            let k = double.kappa.eval(l1, l2);
            if k.is_zero() {
                k
            } else {
                k * omega.eval(r1, r2)
            }
        }
        _ => Scalar::zero(),
    };
    let xd = double.lift_key(x, 0)?;
    let keys = Space::tensor(double.base.space(), a_space).keys(radius);
    let n = double.n();
    // u_y = c·(f_i⊗g) with ω(c·g, a) = 1, so that B(e_i⊗a, u_y) = 1
    let mut duals = Vec::with_capacity(keys.len());
    for y in &keys {
        let BasisKey::Pair { l, r } = y else { unreachable!() };
        let i = double.base.index_of(l).expect("base key");
        let (c, g) = omega.dual_pattern(&KeyPattern::from_key(r));
        let g = g.as_key().ok_or_else(|| Error::IllPosedTemplate("symbolic dual of a concrete key".into()))?;
        duals.push((c, BasisKey::pair(double.algebra.key(n + i), g)));
    }
    let mut terms = Vec::new();
    for (yi, y) in keys.iter().enumerate() {
        for (zi, z) in keys.iter().enumerate() {
            let (cy, uy) = &duals[yi];
            let (cz, uz) = &duals[zi];
            let br = lie.mul(uy, uz);
            let mut v = Scalar::zero();
            for (k, c) in br.iter() {
                let f = b(&xd, k);
                if !f.is_zero() {
                    v += &(&f * c);
                }
            }
            if !v.is_zero() {
                terms.push((vec![y.clone(), z.clone()], &(&v * cy) * cz));
            }
        }
    }
    Ok(Tensor::from_terms(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affinize::{coproduct_from_form, delta_bullet, Side};
    use crate::families::{catalog, ATs, OmegaA};

    fn ex_1p() -> (FiniteAlgebra, FiniteCoproduct) {
        (catalog::algebra("ex-1p").unwrap(), catalog::coproduct("ex-1p").unwrap())
    }

    #[test]
    fn double_of_ex_1p() {
        let (p, d) = ex_1p();
        let dbl = manin_double_from_bialgebra(&p, &d).unwrap();
        assert_eq!(dbl.algebra.dim(), 2);
        assert_eq!(dbl.dual.c[0][0][0], Scalar::one());
        assert!(validate_manin(&dbl.data(), Window::new(1)).unwrap().pass);
        // restrictions equal the inputs
        assert_eq!(dbl.algebra.c[0][0][0], Scalar::one());
        assert_eq!(dbl.algebra.c[1][1][1], Scalar::one());
    }

    #[test]
    fn zero_coproduct_double_is_trivial_extension() {
        let (p, _) = ex_1p();
        let z = FiniteCoproduct::zero(&p.id, 1);
        let dbl = manin_double_from_bialgebra(&p, &z).unwrap();
        // e·e = e, e·e* = L*(e)e* = e*, e*·e = (L*−R*)(e)e* = 0
        let want = FiniteAlgebra::from_entries("x", &["e", "e*"], AlgebraKind::Perm, &[(0, 0, 0, Scalar::one()), (0, 1, 1, Scalar::one())]);
        assert_eq!(dbl.algebra.c, want.c);
    }

    #[test]
    fn three_way_agreement() {
        let (p, d) = ex_1p();
        for d in [d, FiniteCoproduct::zero(&p.id, 1)] {
            let bi = check_perm_bialgebra(&p, &d).unwrap().pass;
            let dual = dual_perm_algebra(&p, &d);
            let (r1, r2) = canonical_actions(&p, &dual);
            let mp = check_matched_pair(&p, &dual, &r1, &r2).unwrap().pass;
            let manin = manin_double_from_bialgebra(&p, &d).is_ok();
            assert!(bi && mp && manin);
        }
    }

    #[test]
    fn non_bialgebra_is_rejected_everywhere() {
        let p = catalog::algebra("ex-nil2").unwrap();
        let mut d = FiniteCoproduct::zero(&p.id, 2);
        d.d[0][0][0] = Scalar::one();
        assert!(!check_perm_bialgebra(&p, &d).unwrap().pass);
        let dual = dual_perm_algebra(&p, &d);
        let (r1, r2) = canonical_actions(&p, &dual);
        assert!(!check_matched_pair(&p, &dual, &r1, &r2).unwrap().pass);
        assert!(matches!(matched_pair_assemble(&p, &dual, &r1, &r2, "x"), Err(Error::Rejected(_))));
        assert!(matches!(manin_double_from_bialgebra(&p, &d), Err(Error::Rejected(_))));
    }

    #[test]
    fn lie_level_manin() {
        let (p, d) = ex_1p();
        let dbl = manin_double_from_bialgebra(&p, &d).unwrap();
        let data = dbl.lie_lift(Arc::new(ATs), Space::TeeEss, Arc::new(OmegaA));
        let rep = validate_manin(&data, Window::new(4)).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
    }

    #[test]
    fn manin_delta_matches_bullet() {
        let (p, d) = ex_1p();
        let dbl = manin_double_from_bialgebra(&p, &d).unwrap();
        let da = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie).unwrap();
        let r = 3;
        for x in Space::tensor(p.space(), Space::TeeEss).keys(2) {
            let m = manin_lie_delta(&dbl, Arc::new(ATs), Space::TeeEss, &OmegaA, &x, r).unwrap();
            let b = delta_bullet(Arc::new(d.clone()), Arc::new(da.clone()), Order::PA, &x).unwrap().restrict(r).unwrap();
            assert_eq!(m, b, "{x}");
        }
    }
}
