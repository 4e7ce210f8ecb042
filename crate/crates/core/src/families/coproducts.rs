//! Completed coproducts of the graded families, as template rules.

use super::Coproduct;
use crate::error::{Error, Result};
use crate::kernel::{Affine, KeyPattern, Poly, Template, Var};

fn foreign(k: &KeyPattern, fam: &str) -> Error {
    Error::ForeignKey { key: k.fmt_with(&|v| format!("v{v}")), family: fam.into() }
}

/// Completed perm coalgebra on `x1^m x2^n ∂_d`:
/// `Σ_{i1,i2} x^{i}∂1 ⊗ x^{m-i1, n-i2+1}∂d - x^{i}∂2 ⊗ x^{m-i1+1, n-i2}∂d`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DeltaP;

impl Coproduct for DeltaP {
    fn name(&self) -> String {
        "Delta_P".into()
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        let KeyPattern::Mono(m, n, d) = key else { return Err(foreign(key, "Mono")) };
        let (i1, i2) = (Affine::var(next), Affine::var(next + 1));
        Ok(vec![
            Template::new(
                2,
                Poly::one(),
                vec![
                    KeyPattern::Mono(i1.clone(), i2.clone(), 1),
                    KeyPattern::Mono(m - &i1, (n - &i2).offset(1), *d),
                ],
            ),
            Template::new(
                2,
                Poly::int(-1),
                vec![KeyPattern::Mono(i1.clone(), i2.clone(), 2), KeyPattern::Mono((m - &i1).offset(1), n - &i2, *d)],
            ),
        ])
    }
}

/// Completed pre-Lie coalgebra on `t^i, s^i`:
/// `Δ(t^i) = Σ_j (i+j-1) t^{-j}⊗s^{i+j-1} + (i-j) s^{-j}⊗t^{i+j-1}`,
/// `Δ(s^i) = Σ_j (i+j-1) s^{-j}⊗s^{i+j-1}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DeltaA;

impl Coproduct for DeltaA {
    fn name(&self) -> String {
        "Delta_A".into()
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        let j = Affine::var(next);
        match key {
            KeyPattern::Tee(i) => {
                let ij = (i + &j).offset(-1);
                Ok(vec![
                    Template::new(1, Poly::from_affine(&ij), vec![KeyPattern::Tee(-&j), KeyPattern::Ess(ij.clone())]),
                    Template::new(1, Poly::from_affine(&(i - &j)), vec![KeyPattern::Ess(-&j), KeyPattern::Tee(ij)]),
                ])
            }
            KeyPattern::Ess(i) => {
                let ij = (i + &j).offset(-1);
                Ok(vec![Template::new(1, Poly::from_affine(&ij), vec![KeyPattern::Ess(-&j), KeyPattern::Ess(ij)])])
            }
            _ => Err(foreign(key, "Tee/Ess")),
        }
    }
}

/// `Δ_A` with the `s`-branch coefficient `(i+j)` in place of `(i+j-1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PerturbedDeltaA;

impl Coproduct for PerturbedDeltaA {
    fn name(&self) -> String {
        "Delta_A+perturbation".into()
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        match key {
            KeyPattern::Ess(i) => {
                let j = Affine::var(next);
                let ij = (i + &j).offset(-1);
                Ok(vec![Template::new(1, Poly::from_affine(&(i + &j)), vec![KeyPattern::Ess(-&j), KeyPattern::Ess(ij)])])
            }
            _ => DeltaA.pieces(key, next),
        }
    }
}

/// Completed coproduct on `W_n`:
/// `Δ(x^I ∂_s) = Σ_J Σ_t J_t x^{I-J+e_t} ∂_t ⊗ x^J ∂_s`.
#[derive(Clone, Copy, Debug)]
pub struct WnCodelta {
    pub n: u8,
}

impl Coproduct for WnCodelta {
    fn name(&self) -> String {
        format!("codelta_W{}", self.n)
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        let KeyPattern::WnMono(ei, s) = key else { return Err(foreign(key, "WnMono")) };
        let n = self.n as usize;
        if ei.len() != n {
            return Err(foreign(key, &format!("W_{n}")));
        }
        let js: Vec<Affine> = (0..n).map(|k| Affine::var(next + k as Var)).collect();
        let mut out = Vec::new();
        for t in 0..n {
            let left = ei
                .iter()
                .zip(&js)
                .enumerate()
                .map(|(k, (e, j))| (e - j).offset(i64::from(k == t)))
                .collect();
            out.push(Template::new(
                n,
                Poly::from_affine(&js[t]),
                vec![KeyPattern::WnMono(left, t as u8 + 1), KeyPattern::WnMono(js.iter().cloned().collect(), *s)],
            ));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{BasisKey, Scalar};

    fn coeff(d: &dyn Coproduct, k: BasisKey, a: BasisKey, b: BasisKey) -> Scalar {
        d.series(&k).unwrap().coefficient_at(&[a, b]).unwrap()
    }

    #[test]
    fn delta_a_examples() {
        assert_eq!(coeff(&DeltaA, BasisKey::tee(0), BasisKey::tee(0), BasisKey::ess(-1)), Scalar::int(-1));
        assert_eq!(coeff(&DeltaA, BasisKey::tee(2), BasisKey::tee(-1), BasisKey::ess(2)), Scalar::int(2));
        assert_eq!(coeff(&DeltaA, BasisKey::ess(1), BasisKey::ess(-3), BasisKey::ess(3)), Scalar::int(3));
    }

    #[test]
    fn delta_p_example() {
        let c = coeff(&DeltaP, BasisKey::mono(0, 0, 1), BasisKey::mono(0, 0, 1), BasisKey::mono(0, 1, 1));
        assert_eq!(c, Scalar::one());
    }

    #[test]
    fn delta_p_degree_shift() {
        // every term of Δ_P(k) has total degree deg(k) + 2
        for k in [BasisKey::mono(1, -2, 1), BasisKey::mono(0, 3, 2)] {
            let t = DeltaP.series(&k).unwrap().restrict(4).unwrap();
            assert!(!t.is_zero());
            for (ks, _) in t.iter() {
                assert_eq!(ks[0].degree() + ks[1].degree(), k.degree() + 2);
            }
        }
    }

    #[test]
    fn wn1_codelta_exponents() {
        // Δ(t^i ∂) = Σ_j j t^{i-j+1}∂ ⊗ t^j ∂
        let d = WnCodelta { n: 1 };
        let s = d.series(&BasisKey::wn(&[2], 1)).unwrap();
        assert_eq!(s.coefficient_at(&[BasisKey::wn(&[0], 1), BasisKey::wn(&[3], 1)]).unwrap(), Scalar::int(3));
        assert_eq!(s.coefficient_at(&[BasisKey::wn(&[-1], 1), BasisKey::wn(&[3], 1)]).unwrap(), Scalar::zero());
    }
}
