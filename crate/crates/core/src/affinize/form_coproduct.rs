use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::axioms::{check_form, LawId};
use crate::error::{Error, Result};
use crate::families::{Coproduct, DeltaForm, FiniteAlgebra, FiniteCoproduct, FiniteForm, Form, Product};
use crate::families::finite::zero_table;
use crate::kernel::linalg;
use crate::kernel::{Affine, BasisKey, KeyPattern, Scalar, Template, Var, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    PreLie,
    Perm,
}

impl Side {
    fn law(self) -> LawId {
        match self {
            Side::PreLie => LawId::QuadPreLieForm,
            Side::Perm => LawId::QuadPermForm,
        }
    }
}

/// The coproduct determined by `B̃(Δ(a), b⊗c) = −B(a, b·c)`:
/// `Δ(a) = Σ_{b,c} −B(a, b·c) f_b ⊗ f_c` over the graded dual basis `f`.
/// Templates are built symbolically from the product and pairing patterns.
#[derive(Clone)]
pub struct FormCoproduct {
    pub alg: Arc<dyn Product>,
    pub form: Arc<dyn DeltaForm>,
    pub side: Side,
}

/// Window on which the form is required to pass its law before use.
const PRECHECK_WINDOW: i64 = 3;

pub fn coproduct_from_form(alg: Arc<dyn Product>, form: Arc<dyn DeltaForm>, side: Side) -> Result<FormCoproduct> {
    let rep = check_form(alg.as_ref(), form.as_ref(), &form.space(), side.law(), Window::new(PRECHECK_WINDOW))?;
    if rep.notes.get("window-nondegenerate").map(String::as_str) != Some("true") {
        return Err(Error::Degenerate(format!("{} on the window N={PRECHECK_WINDOW}", form.name())));
    }
    if !rep.pass {
        return Err(Error::Precondition(format!("{} fails {}", form.name(), side.law())));
    }
    Ok(FormCoproduct { alg, form, side })
}

/// Eliminates variables `>= first` using the conditions `cond == 0`.
/// Returns the substitution, or `None` if a condition is a nonzero constant.
fn eliminate(conds: &[Affine], first: Var, nvars: usize) -> Result<Option<Vec<Option<Affine>>>> {
    let mut subs: Vec<Option<Affine>> = vec![None; first as usize + nvars];
    for c in conds {
        let c = c.substitute(&subs);
        if let Some(k) = c.as_constant() {
            if k != 0 {
                return Ok(None);
            }
            continue;
        }
        let Some(&(v, coef)) = c.terms().iter().find(|(v, k)| *v >= first && k.abs() == 1) else {
            return Err(Error::IllPosedTemplate(format!("cannot solve pairing condition {c}")));
        };
        // v = -(c - coef·v) / coef
        let rest = &c - &Affine::from_terms(0, [(v, coef)]);
        let e = rest.scale(-coef);
        let mut one: Vec<Option<Affine>> = vec![None; subs.len()];
        one[v as usize] = Some(e.clone());
        for s in subs.iter_mut().flatten() {
            *s = s.substitute(&one);
        }
        subs[v as usize] = Some(e);
    }
    Ok(Some(subs))
}

impl Coproduct for FormCoproduct {
    fn name(&self) -> String {
        format!("Delta[{},{}]", self.alg.name(), self.form.name())
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        let space = self.form.space();
        let mut out = Vec::new();
        for (b, nb) in space.shapes(next) {
            for (c, nc) in space.shapes(next + nb as Var) {
                let n = nb + nc;
                let (cb, fb) = self.form.dual_pattern(&b);
                let (cc, fc) = self.form.dual_pattern(&c);
                for (poly, k) in self.alg.mul_pattern(&b, &c) {
                    let Some((c0, conds)) = self.form.pair_pattern(key, &k) else { continue };
                    let Some(subs) = eliminate(&conds, next, n)? else { continue };
                    let free: Vec<Var> = (next..next + n as Var).filter(|v| subs[*v as usize].is_none()).collect();
                    let rename = |v: Var| match free.iter().position(|w| *w == v) {
                        Some(p) => next + p as Var,
                        None => v,
                    };
                    let scale = -(&(&c0 * &cb) * &cc);
                    let coeff = poly.substitute(&subs).scale(&scale).rename(&rename);
                    if coeff.is_zero() {
                        continue;
                    }
                    let keys = vec![fb.substitute(&subs).rename(&rename), fc.substitute(&subs).rename(&rename)];
                    out.push(Template::new(free.len(), coeff, keys));
                }
            }
        }
        Ok(out)
    }
}

/// The same construction for a finite algebra with a nondegenerate form,
/// using the inverse Gram matrix.
pub fn finite_coproduct_from_form(alg: &FiniteAlgebra, form: &FiniteForm) -> Result<FiniteCoproduct> {
    let n = alg.dim();
    if form.m.len() != n || form.m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("form must be {n}x{n}")));
    }
    let x = linalg::inverse(&form.m).map_err(|_| Error::Degenerate(form.name()))?;
    let mut d = zero_table(n);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                // B(e_a, e_b·e_c)
                let mut v = Scalar::zero();
                for k in 0..n {
                    if !alg.c[b][c][k].is_zero() {
                        v += &(&form.m[a][k] * &alg.c[b][c][k]);
                    }
                }
                if v.is_zero() {
                    continue;
                }
                for i in 0..n {
                    for j in 0..n {
                        let t = &(&v * &x[b][i]) * &x[c][j];
                        d[a][i][j] -= &t;
                    }
                }
            }
        }
    }
    FiniteCoproduct::new(&alg.id, d)
}

/// For every window key `e`, the pair `(c, f)` with `c·f` dual to `e`;
/// verified on the whole window.
pub fn graded_dual_basis(form: &dyn DeltaForm, window: Window) -> Result<Vec<(BasisKey, Scalar, BasisKey)>> {
    let keys = form.space().keys(window.n);
    let mut out = Vec::with_capacity(keys.len());
    for e in &keys {
        let (c, f) = form.dual_pattern(&KeyPattern::from_key(e));
        let f = f.as_key().ok_or_else(|| Error::IllPosedTemplate("dual of a concrete key is symbolic".into()))?;
        for e2 in &keys {
            let v = &c * &form.eval(&f, e2);
            let want = if e == e2 { Scalar::one() } else { Scalar::zero() };
            if v != want {
                return Err(Error::Degenerate(format!("{}: dual of {e} pairs to {v} with {e2}", form.name())));
            }
        }
        out.push((e.clone(), c, f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::finite::AlgebraKind;
    use crate::families::{ATs, DeltaA, DeltaP, GradedPerm, KappaP, OmegaA, Space};

    fn same(a: &dyn Coproduct, b: &dyn Coproduct, keys: &[BasisKey], r: i64) {
        for k in keys {
            let x = a.series(k).unwrap().restrict(r).unwrap();
            let y = b.series(k).unwrap().restrict(r).unwrap();
            assert_eq!(x, y, "at {k}");
        }
    }

    #[test]
    fn omega_gives_delta_a() {
        let d = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie).unwrap();
        same(&d, &DeltaA, &Space::TeeEss.keys(3), 5);
    }

    #[test]
    fn kappa_gives_delta_p() {
        let d = coproduct_from_form(Arc::new(GradedPerm), Arc::new(KappaP), Side::Perm).unwrap();
        same(&d, &DeltaP, &Space::Mono.keys(1), 3);
    }

    #[test]
    fn defining_pairing_holds() {
        let d = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie).unwrap();
        let keys = Space::TeeEss.keys(2);
        for a in &keys {
            let t = d.series(a).unwrap().restrict(2).unwrap();
            for b in &keys {
                for c in &keys {
                    let mut lhs = Scalar::zero();
                    for (ks, x) in t.iter() {
                        lhs += &(&(x * &OmegaA.eval(&ks[0], b)) * &OmegaA.eval(&ks[1], c));
                    }
                    let bc = ATs.mul(b, c);
                    let rhs = -crate::families::form_vec(&OmegaA, &crate::kernel::FormalVector::basis(a.clone()), &bc);
                    assert_eq!(lhs, rhs, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn wrong_side_is_rejected() {
        assert!(coproduct_from_form(Arc::new(GradedPerm), Arc::new(KappaP), Side::PreLie).is_err());
    }

    #[test]
    fn dual_bases() {
        let db = graded_dual_basis(&OmegaA, Window::new(3)).unwrap();
        assert!(db.contains(&(BasisKey::tee(2), Scalar::one(), BasisKey::ess(-2))));
        assert!(db.contains(&(BasisKey::ess(-2), Scalar::int(-1), BasisKey::tee(2))));
        let db = graded_dual_basis(&KappaP, Window::new(2)).unwrap();
        assert!(db.contains(&(BasisKey::mono(1, 0, 1), Scalar::one(), BasisKey::mono(-1, 0, 2))));
        assert!(db.contains(&(BasisKey::mono(1, 0, 2), Scalar::int(-1), BasisKey::mono(-1, 0, 1))));
    }

    #[test]
    fn finite_forms() {
        let zero = FiniteAlgebra::from_entries("z", &["e"], AlgebraKind::Perm, &[]);
        let f = FiniteForm { id: zero.id.clone(), m: vec![vec![Scalar::one()]] };
        let d = finite_coproduct_from_form(&zero, &f).unwrap();
        assert!(d.apply(0).is_zero());
        let deg = FiniteForm { id: zero.id.clone(), m: vec![vec![Scalar::zero()]] };
        assert!(matches!(finite_coproduct_from_form(&zero, &deg), Err(Error::Degenerate(_))));
    }
}
