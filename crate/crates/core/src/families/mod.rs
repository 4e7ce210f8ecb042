//! Concrete families: the graded perm algebra on Laurent vector fields, the
//! pre-Lie algebra `a_ts`, the Witt type algebras `W_n`, their completed
//! coproducts and invariant forms, and finite-dimensional algebras.

pub mod catalog;
pub mod coproducts;
pub mod finite;
pub mod forms;
pub mod graded;

use crate::error::Result;
use crate::kernel::{Affine, BasisKey, FormalVector, KeyPattern, Poly, Scalar, SpaceId, Template, TemplateSeries, Var};

pub use coproducts::{DeltaA, DeltaP, PerturbedDeltaA, WnCodelta};
pub use finite::{FiniteAlgebra, FiniteCoproduct, FiniteForm, PrePermAlgebra, Rep};
pub use forms::{KappaP, OmegaA, TensorForm};
pub use graded::{ATs, GradedPerm, PerturbedATs, Wn};

/// A bilinear product given on basis keys, both concretely and on patterns.
pub trait Product: Send + Sync {
    fn name(&self) -> String;

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector;

    /// The product on symbolic keys; coefficients are polynomials in the
    /// pattern variables.
    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)>;

    /// Largest change of an integer slot caused by one product.
    fn max_shift(&self) -> i64 {
        1
    }
}

/// Bilinear extension of a product to vectors.
pub fn mul_vec(op: &dyn Product, a: &FormalVector, b: &FormalVector) -> FormalVector {
    let mut parts = Vec::new();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let cab = ca * cb;
            for (k, c) in op.mul(ka, kb).into_terms() {
                parts.push((k, &c * &cab));
            }
        }
    }
    FormalVector::from_terms(parts)
}

/// `[a, b] = a·b - b·a`
pub fn commutator(op: &dyn Product, a: &BasisKey, b: &BasisKey) -> FormalVector {
    op.mul(a, b).sub(&op.mul(b, a))
}

/// A (completed) coproduct given on key patterns.
pub trait Coproduct: Send + Sync {
    fn name(&self) -> String;

    /// Two-leg templates for the coproduct of `key`; new summation variables
    /// are numbered from `next_var`.
    fn pieces(&self, key: &KeyPattern, next_var: Var) -> Result<Vec<Template>>;

    fn series(&self, key: &BasisKey) -> Result<TemplateSeries> {
        let ts = self.pieces(&KeyPattern::from_key(key), 0)?;
        Ok(TemplateSeries::new(2, Vec::new(), ts)?.normalize())
    }
}

/// Coproduct of a finite linear combination.
pub fn coproduct_vec(d: &dyn Coproduct, v: &FormalVector) -> Result<TemplateSeries> {
    let mut acc = TemplateSeries::zero(2);
    for (k, c) in v.iter() {
        acc = acc.add(&d.series(k)?.scale(c));
    }
    Ok(acc.normalize())
}

/// A bilinear form on basis keys.
pub trait Form: Send + Sync {
    fn name(&self) -> String;
    fn eval(&self, a: &BasisKey, b: &BasisKey) -> Scalar;
}

pub fn form_vec(f: &dyn Form, a: &FormalVector, b: &FormalVector) -> Scalar {
    let mut acc = Scalar::zero();
    for (ka, ca) in a.iter() {
        for (kb, cb) in b.iter() {
            let v = f.eval(ka, kb);
            if !v.is_zero() {
                acc += &(&v * &(ca * cb));
            }
        }
    }
    acc
}

/// A graded δ-pairing: the form value on two patterns is a constant times a
/// product of Kronecker conditions `aff == 0`, and the dual basis has a
/// closed form.
pub trait DeltaForm: Form {
    fn pair_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Option<(Scalar, Vec<Affine>)>;

    /// `(c, f)` with `form(c·f, e) = 1` and `form(c·f, e') = 0` for other basis keys.
    fn dual_pattern(&self, e: &KeyPattern) -> (Scalar, KeyPattern);

    fn space(&self) -> Space;
}

/// Index sets of basis keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    /// `t^i, s^i`
    TeeEss,
    /// `x1^i1 x2^i2 ∂_d`
    Mono,
    /// `W_n` monomials
    Wn(u8),
    Fin { id: SpaceId, dim: u32 },
    /// `Pair` keys of two spaces
    Tensor(Box<Space>, Box<Space>),
}

impl Space {
    pub fn fin(id: &SpaceId, dim: usize) -> Self {
        Space::Fin { id: id.clone(), dim: dim as u32 }
    }

    pub fn tensor(a: Space, b: Space) -> Self {
        Space::Tensor(Box::new(a), Box::new(b))
    }

    pub fn has_slots(&self) -> bool {
        match self {
            Space::Fin { .. } => false,
            Space::Tensor(a, b) => a.has_slots() || b.has_slots(),
            _ => true,
        }
    }

    /// All keys whose integer slots lie in `[-radius, radius]`, canonically sorted.
    pub fn keys(&self, radius: i64) -> Vec<BasisKey> {
        let range = || -radius..=radius;
        let mut out = match self {
            Space::TeeEss => range().map(BasisKey::tee).chain(range().map(BasisKey::ess)).collect(),
            Space::Mono => {
                let mut v = Vec::new();
                for d in 1..=2u8 {
                    for a in range() {
                        for b in range() {
                            v.push(BasisKey::mono(a, b, d));
                        }
                    }
                }
                v
            }
            Space::Wn(n) => {
                let mut exps: Vec<Vec<i64>> = vec![Vec::new()];
                for _ in 0..*n {
                    exps = exps
                        .into_iter()
                        .flat_map(|e| range().map(move |x| [e.clone(), vec![x]].concat()))
                        .collect();
                }
                let mut v = Vec::new();
                for d in 1..=*n {
                    for e in &exps {
                        v.push(BasisKey::wn(e, d));
                    }
                }
                v
            }
            Space::Fin { id, dim } => (0..*dim).map(|i| BasisKey::fin(id, i)).collect(),
            Space::Tensor(a, b) => {
                let (ka, kb) = (a.keys(radius), b.keys(radius));
                let mut v = Vec::new();
                for x in &ka {
                    for y in &kb {
                        v.push(BasisKey::pair(x.clone(), y.clone()));
                    }
                }
                v
            }
        };
        out.sort();
        out
    }

    /// Generic basis elements with fresh variables starting at `first`;
    /// returns each shape with the number of variables it uses.
    pub fn shapes(&self, first: Var) -> Vec<(KeyPattern, usize)> {
        let v = |k: Var| Affine::var(first + k);
        match self {
            Space::TeeEss => vec![(KeyPattern::Tee(v(0)), 1), (KeyPattern::Ess(v(0)), 1)],
            Space::Mono => (1..=2).map(|d| (KeyPattern::Mono(v(0), v(1), d), 2)).collect(),
            Space::Wn(n) => (1..=*n)
                .map(|d| (KeyPattern::WnMono((0..*n as Var).map(v).collect(), d), *n as usize))
                .collect(),
            Space::Fin { id, dim } => (0..*dim).map(|i| (KeyPattern::Fin(id.clone(), i), 0)).collect(),
            Space::Tensor(a, b) => {
                let mut out = Vec::new();
                for (pa, na) in a.shapes(first) {
                    for (pb, nb) in b.shapes(first + na as Var) {
                        out.push((KeyPattern::pair(pa.clone(), pb), na + nb));
                    }
                }
                out
            }
        }
    }

    pub fn contains(&self, k: &BasisKey) -> bool {
        match (self, k) {
            (Space::TeeEss, BasisKey::Tee { .. } | BasisKey::Ess { .. }) => true,
            (Space::Mono, BasisKey::Mono { dir, .. }) => (1..=2).contains(dir),
            (Space::Wn(n), BasisKey::WnMono { exps, dir }) => exps.len() == *n as usize && (1..=*n).contains(dir),
            (Space::Fin { id, dim }, BasisKey::Fin { space, i }) => id == space && i < dim,
            (Space::Tensor(a, b), BasisKey::Pair { l, r }) => a.contains(l) && b.contains(r),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_key_counts() {
        assert_eq!(Space::TeeEss.keys(2).len(), 10);
        assert_eq!(Space::Mono.keys(1).len(), 18);
        assert_eq!(Space::Wn(2).keys(1).len(), 18);
        assert_eq!(Space::Wn(1).keys(3).len(), 7);
        let fin = Space::fin(&SpaceId::new("x"), 2);
        assert_eq!(Space::tensor(fin, Space::TeeEss).keys(1).len(), 12);
    }

    #[test]
    fn shapes_cover_keys() {
        let sh = Space::Mono.shapes(3);
        assert_eq!(sh.len(), 2);
        assert_eq!(sh[0].0.instantiate(&[0, 0, 0, 4, -1]), BasisKey::mono(4, -1, 1));
    }
}
