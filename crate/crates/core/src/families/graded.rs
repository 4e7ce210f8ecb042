//! Closed-form products of the infinite graded families.

use super::Product;
use crate::kernel::{BasisKey, FormalVector, KeyPattern, Poly, Scalar};

/// The pre-Lie algebra spanned by `t^i, s^i`:
/// `t^i⋄t^j = j t^{i+j-1}`, `t^i⋄s^j = (2i+j-1) s^{i+j-1}`,
/// `s^j⋄t^i = i s^{i+j-1}`, `s⋄s = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ATs;

impl Product for ATs {
    fn name(&self) -> String {
        "a_ts".into()
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        match (a, b) {
            (BasisKey::Tee { i }, BasisKey::Tee { i: j }) => {
                FormalVector::term(BasisKey::tee(i + j - 1), Scalar::int(*j))
            }
            (BasisKey::Tee { i }, BasisKey::Ess { i: j }) => {
                FormalVector::term(BasisKey::ess(i + j - 1), Scalar::int(2 * i + j - 1))
            }
            (BasisKey::Ess { i: j }, BasisKey::Tee { i }) => {
                FormalVector::term(BasisKey::ess(i + j - 1), Scalar::int(*i))
            }
            _ => FormalVector::zero(),
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        let out = match (a, b) {
            (KeyPattern::Tee(i), KeyPattern::Tee(j)) => {
                (Poly::from_affine(j), KeyPattern::Tee((i + j).offset(-1)))
            }
            (KeyPattern::Tee(i), KeyPattern::Ess(j)) => {
                (Poly::from_affine(&(&i.scale(2) + j).offset(-1)), KeyPattern::Ess((i + j).offset(-1)))
            }
            (KeyPattern::Ess(j), KeyPattern::Tee(i)) => {
                (Poly::from_affine(i), KeyPattern::Ess((i + j).offset(-1)))
            }
            _ => return Vec::new(),
        };
        if out.0.is_zero() {
            Vec::new()
        } else {
            vec![out]
        }
    }
}

/// `a_ts` with the extra term `s^j⋄t^i += s^{i+j-1}`; breaks the pre-Lie law
/// at `(t^i, s^j, t^k)` whenever `i + k != 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PerturbedATs;

impl Product for PerturbedATs {
    fn name(&self) -> String {
        "a_ts+perturbation".into()
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        let base = ATs.mul(a, b);
        match (a, b) {
            (BasisKey::Ess { i: j }, BasisKey::Tee { i }) => {
                base.add(&FormalVector::basis(BasisKey::ess(i + j - 1)))
            }
            _ => base,
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        match (a, b) {
            (KeyPattern::Ess(j), KeyPattern::Tee(i)) => {
                let c = Poly::from_affine(&i.offset(1));
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(c, KeyPattern::Ess((i + j).offset(-1)))]
                }
            }
            _ => ATs.mul_pattern(a, b),
        }
    }
}

/// The graded perm algebra on `x1^i1 x2^i2 ∂_d`:
/// `(x^i ∂_s)·(x^j ∂_t) = x^{i+j+e_s} ∂_t`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GradedPerm;

impl Product for GradedPerm {
    fn name(&self) -> String {
        "graded-perm-P".into()
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        match (a, b) {
            (BasisKey::Mono { i1, i2, dir: s }, BasisKey::Mono { i1: j1, i2: j2, dir: t }) => {
                let (e1, e2) = if *s == 1 { (1, 0) } else { (0, 1) };
                FormalVector::basis(BasisKey::mono(i1 + j1 + e1, i2 + j2 + e2, *t))
            }
            _ => FormalVector::zero(),
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        match (a, b) {
            (KeyPattern::Mono(i1, i2, s), KeyPattern::Mono(j1, j2, t)) => {
                let (e1, e2) = if *s == 1 { (1, 0) } else { (0, 1) };
                vec![(Poly::one(), KeyPattern::Mono((i1 + j1).offset(e1), (i2 + j2).offset(e2), *t))]
            }
            _ => Vec::new(),
        }
    }
}

/// `W_n`: `x^I ∂_a ⋄ x^J ∂_b = J_a x^{I+J-e_a} ∂_b`.
#[derive(Clone, Copy, Debug)]
pub struct Wn {
    pub n: u8,
}

impl Product for Wn {
    fn name(&self) -> String {
        format!("W_{}", self.n)
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        match (a, b) {
            (BasisKey::WnMono { exps: ei, dir: da }, BasisKey::WnMono { exps: ej, dir: db })
                if ei.len() == self.n as usize && ej.len() == self.n as usize =>
            {
                let ai = (*da - 1) as usize;
                let c = ej[ai];
                if c == 0 {
                    return FormalVector::zero();
                }
                let exps = ei
                    .iter()
                    .zip(ej)
                    .enumerate()
                    .map(|(k, (x, y))| x + y - i64::from(k == ai))
                    .collect();
                FormalVector::term(BasisKey::WnMono { exps, dir: *db }, Scalar::int(c))
            }
            _ => FormalVector::zero(),
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        match (a, b) {
            (KeyPattern::WnMono(ei, da), KeyPattern::WnMono(ej, db))
                if ei.len() == self.n as usize && ej.len() == self.n as usize =>
            {
                let ai = (*da - 1) as usize;
                let c = Poly::from_affine(&ej[ai]);
                if c.is_zero() {
                    return Vec::new();
                }
                let exps = ei
                    .iter()
                    .zip(ej.iter())
                    .enumerate()
                    .map(|(k, (x, y))| (x + y).offset(-i64::from(k == ai)))
                    .collect();
                vec![(c, KeyPattern::WnMono(exps, *db))]
            }
            _ => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(v: &FormalVector) -> (BasisKey, Scalar) {
        assert_eq!(v.len(), 1, "{v}");
        let (k, c) = v.iter().next().unwrap();
        (k.clone(), c.clone())
    }

    #[test]
    fn perm_examples() {
        let p = GradedPerm;
        // ∂1 · ∂2 = x1 ∂2
        assert_eq!(single(&p.mul(&BasisKey::mono(0, 0, 1), &BasisKey::mono(0, 0, 2))).0, BasisKey::mono(1, 0, 2));
        // (x1 ∂2)·(x2 ∂1) = x1 x2^2 ∂1
        assert_eq!(single(&p.mul(&BasisKey::mono(1, 0, 2), &BasisKey::mono(0, 1, 1))).0, BasisKey::mono(1, 2, 1));
    }

    #[test]
    fn ats_examples() {
        let a = ATs;
        assert_eq!(single(&a.mul(&BasisKey::tee(2), &BasisKey::tee(3))), (BasisKey::tee(4), Scalar::int(3)));
        assert_eq!(single(&a.mul(&BasisKey::tee(1), &BasisKey::ess(0))), (BasisKey::ess(0), Scalar::int(1)));
        assert_eq!(single(&a.mul(&BasisKey::ess(0), &BasisKey::tee(2))), (BasisKey::ess(1), Scalar::int(2)));
        assert!(a.mul(&BasisKey::ess(1), &BasisKey::ess(1)).is_zero());
    }

    #[test]
    fn wn_examples() {
        let w = Wn { n: 2 };
        // ∂1 ⋄ x1^2 ∂1 = 2 x1 ∂1
        let r = w.mul(&BasisKey::wn(&[0, 0], 1), &BasisKey::wn(&[2, 0], 1));
        assert_eq!(single(&r), (BasisKey::wn(&[1, 0], 1), Scalar::int(2)));
        assert!(w.mul(&BasisKey::wn(&[0, 0], 1), &BasisKey::wn(&[0, 0], 2)).is_zero());
        // W_1 agrees with a_ts on t-keys
        let w1 = Wn { n: 1 };
        for i in -3..=3 {
            for j in -3..=3 {
                let x = w1.mul(&BasisKey::wn(&[i], 1), &BasisKey::wn(&[j], 1));
                let y = ATs.mul(&BasisKey::tee(i), &BasisKey::tee(j));
                let x = x.map_keys(|k| match k {
                    BasisKey::WnMono { exps, .. } => BasisKey::tee(exps[0]),
                    _ => unreachable!(),
                });
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn pattern_and_concrete_agree() {
        let ops: Vec<Box<dyn Product>> = vec![Box::new(ATs), Box::new(GradedPerm), Box::new(Wn { n: 2 }), Box::new(PerturbedATs)];
        let keys = [
            BasisKey::tee(2),
            BasisKey::ess(-1),
            BasisKey::tee(0),
            BasisKey::mono(1, -1, 1),
            BasisKey::mono(0, 2, 2),
            BasisKey::wn(&[1, 0], 1),
            BasisKey::wn(&[-1, 2], 2),
        ];
        for op in &ops {
            for a in &keys {
                for b in &keys {
                    let sym: Vec<(BasisKey, Scalar)> = op
                        .mul_pattern(&KeyPattern::from_key(a), &KeyPattern::from_key(b))
                        .into_iter()
                        .map(|(c, k)| (k.as_key().unwrap(), c.as_constant().unwrap()))
                        .collect();
                    assert_eq!(FormalVector::from_terms(sym), op.mul(a, b), "{} {a} {b}", op.name());
                }
            }
        }
    }
}
