//! Invariant bilinear forms on the graded families.

use std::sync::Arc;

use super::{DeltaForm, Form, Space};
use crate::kernel::{Affine, BasisKey, KeyPattern, Scalar};

fn delta(c: bool) -> Scalar {
    if c {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// `ω(s^i, t^j) = -ω(t^j, s^i) = δ_{i+j,0}`, zero on `t,t` and `s,s`.
#[derive(Clone, Copy, Debug, Default)]
pub struct OmegaA;

impl Form for OmegaA {
    fn name(&self) -> String {
        "omega_a".into()
    }

    fn eval(&self, a: &BasisKey, b: &BasisKey) -> Scalar {
        match (a, b) {
            (BasisKey::Ess { i }, BasisKey::Tee { i: j }) => delta(i + j == 0),
            (BasisKey::Tee { i: j }, BasisKey::Ess { i }) => -delta(i + j == 0),
            _ => Scalar::zero(),
        }
    }
}

impl DeltaForm for OmegaA {
    fn pair_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Option<(Scalar, Vec<Affine>)> {
        match (a, b) {
            (KeyPattern::Ess(x), KeyPattern::Tee(y)) => Some((Scalar::one(), vec![x + y])),
            (KeyPattern::Tee(y), KeyPattern::Ess(x)) => Some((Scalar::int(-1), vec![x + y])),
            _ => None,
        }
    }

    fn dual_pattern(&self, e: &KeyPattern) -> (Scalar, KeyPattern) {
        match e {
            KeyPattern::Tee(x) => (Scalar::one(), KeyPattern::Ess(-x)),
            KeyPattern::Ess(x) => (Scalar::int(-1), KeyPattern::Tee(-x)),
            _ => panic!("omega_a: foreign key pattern"),
        }
    }

    fn space(&self) -> Space {
        Space::TeeEss
    }
}

/// `κ(x^i ∂2, x^j ∂1) = -κ(x^j ∂1, x^i ∂2) = δ_{i+j,0}`, zero on equal directions.
#[derive(Clone, Copy, Debug, Default)]
pub struct KappaP;

impl Form for KappaP {
    fn name(&self) -> String {
        "kappa_p".into()
    }

    fn eval(&self, a: &BasisKey, b: &BasisKey) -> Scalar {
        match (a, b) {
            (BasisKey::Mono { i1, i2, dir: 2 }, BasisKey::Mono { i1: j1, i2: j2, dir: 1 }) => {
                delta(i1 + j1 == 0 && i2 + j2 == 0)
            }
            (BasisKey::Mono { i1: j1, i2: j2, dir: 1 }, BasisKey::Mono { i1, i2, dir: 2 }) => {
                -delta(i1 + j1 == 0 && i2 + j2 == 0)
            }
            _ => Scalar::zero(),
        }
    }
}

impl DeltaForm for KappaP {
    fn pair_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Option<(Scalar, Vec<Affine>)> {
        match (a, b) {
            (KeyPattern::Mono(a1, a2, 2), KeyPattern::Mono(b1, b2, 1)) => {
                Some((Scalar::one(), vec![a1 + b1, a2 + b2]))
            }
            (KeyPattern::Mono(b1, b2, 1), KeyPattern::Mono(a1, a2, 2)) => {
                Some((Scalar::int(-1), vec![a1 + b1, a2 + b2]))
            }
            _ => None,
        }
    }

    fn dual_pattern(&self, e: &KeyPattern) -> (Scalar, KeyPattern) {
        match e {
            KeyPattern::Mono(a, b, 1) => (Scalar::one(), KeyPattern::Mono(-a, -b, 2)),
            KeyPattern::Mono(a, b, 2) => (Scalar::int(-1), KeyPattern::Mono(-a, -b, 1)),
            _ => panic!("kappa_p: foreign key pattern"),
        }
    }

    fn space(&self) -> Space {
        Space::Mono
    }
}

/// `B(x⊗a, y⊗b) = left(x, y) · right(a, b)` on `Pair` keys.
#[derive(Clone)]
pub struct TensorForm {
    pub left: Arc<dyn Form>,
    pub right: Arc<dyn Form>,
}

impl Form for TensorForm {
    fn name(&self) -> String {
        format!("{}*{}", self.left.name(), self.right.name())
    }

    fn eval(&self, a: &BasisKey, b: &BasisKey) -> Scalar {
        match (a, b) {
            (BasisKey::Pair { l: l1, r: r1 }, BasisKey::Pair { l: l2, r: r2 }) => {
                let x = self.left.eval(l1, l2);
                if x.is_zero() {
                    return x;
                }
                x * self.right.eval(r1, r2)
            }
            _ => Scalar::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_patterns_are_dual() {
        let forms: Vec<Box<dyn DeltaForm>> = vec![Box::new(OmegaA), Box::new(KappaP)];
        for f in &forms {
            let keys = f.space().keys(2);
            for e in &keys {
                let (c, fp) = f.dual_pattern(&KeyPattern::from_key(e));
                let fk = fp.as_key().unwrap();
                for e2 in &keys {
                    let v = &c * &f.eval(&fk, e2);
                    assert_eq!(v, if e == e2 { Scalar::one() } else { Scalar::zero() });
                }
            }
        }
    }

    #[test]
    fn pattern_form_agrees() {
        for f in [&OmegaA as &dyn DeltaForm, &KappaP] {
            let keys = f.space().keys(1);
            for a in &keys {
                for b in &keys {
                    let v = match f.pair_pattern(&KeyPattern::from_key(a), &KeyPattern::from_key(b)) {
                        Some((c, conds)) if conds.iter().all(|x| x.as_constant() == Some(0)) => c,
                        _ => Scalar::zero(),
                    };
                    assert_eq!(v, f.eval(a, b));
                }
            }
        }
    }
}
