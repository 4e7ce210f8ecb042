use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{Product, Space};
use crate::kernel::{BasisKey, FormalVector, KeyPattern, Poly};

/// Which tensor factor is the perm algebra: `P⊗A` or `A⊗P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Order {
    PA,
    AP,
}

/// The Lie bracket on `X⊗Y` induced by a perm algebra and a pre-Lie algebra:
/// `[x1y1, x2y2] = x1x2 ⊗ y1y2 − x2x1 ⊗ y2y1`. In order `PA` the left
/// factor is the perm algebra, in order `AP` the right one.
#[derive(Clone)]
pub struct InducedLie {
    pub left: Arc<dyn Product>,
    pub right: Arc<dyn Product>,
    pub left_space: Space,
    pub right_space: Space,
    pub order: Order,
}

impl InducedLie {
    pub fn new(left: Arc<dyn Product>, left_space: Space, right: Arc<dyn Product>, right_space: Space, order: Order) -> Self {
        InducedLie { left, right, left_space, right_space, order }
    }

    pub fn space(&self) -> Space {
        Space::tensor(self.left_space.clone(), self.right_space.clone())
    }

    fn split<'a>(&self, k: &'a BasisKey) -> Result<(&'a BasisKey, &'a BasisKey)> {
        match k {
            BasisKey::Pair { l, r } if self.left_space.contains(l) && self.right_space.contains(r) => Ok((l, r)),
            _ => Err(Error::ForeignKey { key: k.to_string(), family: self.name() }),
        }
    }

    /// The bracket with a family check on both arguments.
    pub fn bracket(&self, x: &BasisKey, y: &BasisKey) -> Result<FormalVector> {
        self.split(x)?;
        self.split(y)?;
        Ok(self.mul(x, y))
    }

    fn half(&self, x1: &BasisKey, y1: &BasisKey, x2: &BasisKey, y2: &BasisKey) -> FormalVector {
        let a = self.left.mul(x1, x2);
        if a.is_zero() {
            return a;
        }
        let b = self.right.mul(y1, y2);
        let mut parts = Vec::new();
        for (ka, ca) in a.iter() {
            for (kb, cb) in b.iter() {
                parts.push((BasisKey::pair(ka.clone(), kb.clone()), ca * cb));
            }
        }
        FormalVector::from_terms(parts)
    }

    fn half_pattern(&self, x1: &KeyPattern, y1: &KeyPattern, x2: &KeyPattern, y2: &KeyPattern, sign: &Poly) -> Vec<(Poly, KeyPattern)> {
        let a = self.left.mul_pattern(x1, x2);
        if a.is_empty() {
            return a;
        }
        let b = self.right.mul_pattern(y1, y2);
        let mut out = Vec::new();
        for (ca, ka) in &a {
            for (cb, kb) in &b {
                out.push((&(ca * cb) * sign, KeyPattern::pair(ka.clone(), kb.clone())));
            }
        }
        out
    }
}

impl Product for InducedLie {
    fn name(&self) -> String {
        format!("[{}⊗{}]", self.left.name(), self.right.name())
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        match (a, b) {
            (BasisKey::Pair { l: x1, r: y1 }, BasisKey::Pair { l: x2, r: y2 }) => {
                self.half(x1, y1, x2, y2).sub(&self.half(x2, y2, x1, y1))
            }
            _ => FormalVector::zero(),
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        match (a, b) {
            (KeyPattern::Pair(x1, y1), KeyPattern::Pair(x2, y2)) => {
                let mut out = self.half_pattern(x1, y1, x2, y2, &Poly::one());
                out.extend(self.half_pattern(x2, y2, x1, y1, &Poly::int(-1)));
                out
            }
            _ => Vec::new(),
        }
    }

    fn max_shift(&self) -> i64 {
        self.left.max_shift().max(self.right.max_shift())
    }
}

/// `[x, y]` in the Lie algebra induced by `p` and `a` in the given order.
pub fn induced_lie_bracket(
    p: Arc<dyn Product>,
    p_space: Space,
    a: Arc<dyn Product>,
    a_space: Space,
    order: Order,
    x: &BasisKey,
    y: &BasisKey,
) -> Result<FormalVector> {
    let lie = match order {
        Order::PA => InducedLie::new(p, p_space, a, a_space, order),
        Order::AP => InducedLie::new(a, a_space, p, p_space, order),
    };
    lie.bracket(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_algebra, LawId};
    use crate::families::{catalog, ATs, GradedPerm};
    use crate::kernel::{Scalar, Window};

    fn ex_1p_ats() -> InducedLie {
        let p = catalog::algebra("ex-1p").unwrap();
        let sp = p.space();
        InducedLie::new(Arc::new(p), sp, Arc::new(ATs), Space::TeeEss, Order::PA)
    }

    fn e() -> BasisKey {
        BasisKey::fin(&crate::kernel::SpaceId::new("ex-1p"), 0)
    }

    #[test]
    fn displayed_brackets() {
        let l = ex_1p_ats();
        for (i, j) in [(2, 5), (-1, 3), (0, 0)] {
            let v = l.bracket(&BasisKey::pair(e(), BasisKey::tee(i)), &BasisKey::pair(e(), BasisKey::tee(j))).unwrap();
            assert_eq!(v.get(&BasisKey::pair(e(), BasisKey::tee(i + j - 1))), Scalar::int(j - i));
        }
        let v = l.bracket(&BasisKey::pair(e(), BasisKey::tee(2)), &BasisKey::pair(e(), BasisKey::ess(0))).unwrap();
        assert_eq!(v, FormalVector::basis(BasisKey::pair(e(), BasisKey::ess(1))));
        assert!(l.bracket(&BasisKey::tee(1), &BasisKey::tee(2)).is_err());
    }

    #[test]
    fn pattern_agrees_with_keys() {
        let l = ex_1p_ats();
        let keys = l.space().keys(2);
        for a in &keys {
            for b in &keys {
                let pat: FormalVector = FormalVector::from_terms(
                    l.mul_pattern(&KeyPattern::from_key(a), &KeyPattern::from_key(b))
                        .into_iter()
                        .map(|(c, k)| (k.as_key().unwrap(), c.eval(&[]))),
                );
                assert_eq!(pat, l.mul(a, b));
            }
        }
    }

    #[test]
    fn catalog_perm_algebras_give_lie_algebras() {
        for id in ["ex-1p", "ex-nil2", "ex-semidirect", "ex-left-unit"] {
            let p = catalog::algebra(id).unwrap();
            let sp = p.space();
            let l = InducedLie::new(Arc::new(p), sp, Arc::new(ATs), Space::TeeEss, Order::PA);
            let w = Window::new(5);
            assert!(check_algebra(&l, &l.space(), LawId::LieJacobi, w).unwrap().pass, "{id}");
            assert!(check_algebra(&l, &l.space(), LawId::LieSkew, w).unwrap().pass, "{id}");
        }
    }

    #[test]
    fn mirrored_order() {
        let a = catalog::algebra("pl-left-unit").unwrap();
        let sa = a.space();
        let l = InducedLie::new(Arc::new(a), sa, Arc::new(GradedPerm), Space::Mono, Order::AP);
        assert!(check_algebra(&l, &l.space(), LawId::LieJacobi, Window::new(3)).unwrap().pass);
    }
}
