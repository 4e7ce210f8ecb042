//! Finite-dimensional algebras, coalgebras, forms and representations given
//! by structure constants.

use serde::{Deserialize, Serialize};

use super::{Coproduct, Form, Product, Space};
use crate::error::{Error, Result};
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::{BasisKey, FormalVector, KeyPattern, Poly, Scalar, SpaceId, Template, Tensor, Var};

/// `t[i][j][k]` is the coefficient of `e_k` in `e_i * e_j`.
pub type Table = Vec<Vec<Vec<Scalar>>>;

pub fn zero_table(n: usize) -> Table {
    vec![vec![vec![Scalar::zero(); n]; n]; n]
}

fn check_table(t: &Table, n: usize, what: &str) -> Result<()> {
    let ok = t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n));
    if ok {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{what} must be {n}x{n}x{n}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraKind {
    Perm,
    PreLie,
    Lie,
    Other,
}

/// Dense vector helpers for a finite space.
pub fn dense_to_vec(id: &SpaceId, x: &[Scalar]) -> FormalVector {
    FormalVector::from_terms(x.iter().enumerate().map(|(i, c)| (BasisKey::fin(id, i as u32), c.clone())))
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub id: SpaceId,
    pub labels: Vec<String>,
    pub kind: AlgebraKind,
    pub c: Table,
}

impl FiniteAlgebra {
    pub fn new(id: &str, labels: Vec<String>, kind: AlgebraKind, c: Table) -> Result<Self> {
        check_table(&c, labels.len(), "structure constants")?;
        Ok(FiniteAlgebra { id: SpaceId::new(id), labels, kind, c })
    }

    /// Builds from nonzero entries `(i, j, k, coeff)` meaning `e_i*e_j += coeff·e_k`.
    pub fn from_entries(id: &str, labels: &[&str], kind: AlgebraKind, entries: &[(usize, usize, usize, Scalar)]) -> Self {
        let n = labels.len();
        let mut c = zero_table(n);
        for (i, j, k, x) in entries {
            c[*i][*j][*k] += x;
        }
        FiniteAlgebra { id: SpaceId::new(id), labels: labels.iter().map(|s| s.to_string()).collect(), kind, c }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn space(&self) -> Space {
        Space::fin(&self.id, self.dim())
    }

    pub fn key(&self, i: usize) -> BasisKey {
        BasisKey::fin(&self.id, i as u32)
    }

    pub fn index_of(&self, k: &BasisKey) -> Option<usize> {
        match k {
            BasisKey::Fin { space, i } if *space == self.id && (*i as usize) < self.dim() => Some(*i as usize),
            _ => None,
        }
    }

    pub fn with_id(&self, id: &str) -> Self {
        FiniteAlgebra { id: SpaceId::new(id), ..self.clone() }
    }

    pub fn mul_dense(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        out[k] += &(&ab * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|j| self.c[i][j][k].clone()).collect()).collect()
    }

    /// Matrix of right multiplication by `e_i`.
    pub fn right_matrix(&self, i: usize) -> Matrix {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|j| self.c[j][i][k].clone()).collect()).collect()
    }

    pub fn to_dense(&self, v: &FormalVector) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (k, c) in v.iter() {
            let i = self.index_of(k).ok_or_else(|| Error::ForeignKey { key: k.to_string(), family: self.id.to_string() })?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn to_vec(&self, x: &[Scalar]) -> FormalVector {
        dense_to_vec(&self.id, x)
    }

    /// Structure constants in the basis `f_a = Σ_b m[b][a] e_b`.
    pub fn change_basis(&self, m: &Matrix) -> Result<FiniteAlgebra> {
        let n = self.dim();
        let inv = linalg::inverse(m)?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|a| (0..n).map(|b| m[b][a].clone()).collect()).collect();
        let mut c = zero_table(n);
        for a in 0..n {
            for b in 0..n {
                let prod = self.mul_dense(&cols[a], &cols[b]);
                let coords = linalg::mat_vec(&inv, &prod);
                c[a][b] = coords;
            }
        }
        Ok(FiniteAlgebra { c, ..self.clone() })
    }

    /// The opposite-free commutator algebra `[a, b] = ab - ba`.
    pub fn commutator_algebra(&self, id: &str) -> FiniteAlgebra {
        let n = self.dim();
        let mut c = zero_table(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = &self.c[i][j][k] - &self.c[j][i][k];
                }
            }
        }
        FiniteAlgebra { id: SpaceId::new(id), labels: self.labels.clone(), kind: AlgebraKind::Lie, c }
    }
}

impl Product for FiniteAlgebra {
    fn name(&self) -> String {
        self.id.to_string()
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => FormalVector::from_terms(
                self.c[i][j].iter().enumerate().map(|(k, x)| (self.key(k), x.clone())),
            ),
            _ => FormalVector::zero(),
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        match (a.as_key(), b.as_key()) {
            (Some(x), Some(y)) => self
                .mul(&x, &y)
                .iter()
                .map(|(k, c)| (Poly::constant(c.clone()), KeyPattern::from_key(k)))
                .collect(),
            _ => Vec::new(),
        }
    }

    fn max_shift(&self) -> i64 {
        0
    }
}

/// A finite coproduct: `d[k][i][j]` is the coefficient of `e_i⊗e_j` in `Δ(e_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCoproduct {
    pub id: SpaceId,
    pub d: Table,
}

impl FiniteCoproduct {
    pub fn new(id: &SpaceId, d: Table) -> Result<Self> {
        let n = d.len();
        check_table(&d, n, "coproduct table")?;
        Ok(FiniteCoproduct { id: id.clone(), d })
    }

    pub fn zero(id: &SpaceId, n: usize) -> Self {
        FiniteCoproduct { id: id.clone(), d: zero_table(n) }
    }

    pub fn dim(&self) -> usize {
        self.d.len()
    }

    pub fn key(&self, i: usize) -> BasisKey {
        BasisKey::fin(&self.id, i as u32)
    }

    /// `Δ(e_k)` as a two-leg tensor.
    pub fn apply(&self, k: usize) -> Tensor {
        let n = self.dim();
        let mut terms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                terms.push((vec![self.key(i), self.key(j)], self.d[k][i][j].clone()));
            }
        }
        Tensor::from_terms(terms)
    }

    pub fn apply_vec(&self, v: &FormalVector) -> Tensor {
        let mut out = Tensor::zero();
        for (k, c) in v.iter() {
            if let BasisKey::Fin { space, i } = k {
                if *space == self.id {
                    out.add_scaled(&self.apply(*i as usize), c);
                }
            }
        }
        out
    }

    /// Builds from a map `e_k ↦ Δ(e_k)`.
    pub fn from_fn(id: &SpaceId, n: usize, f: impl Fn(usize) -> Tensor) -> Result<Self> {
        let mut d = zero_table(n);
        for (k, dk) in d.iter_mut().enumerate() {
            for (ks, c) in f(k).iter() {
                let idx = |b: &BasisKey| match b {
                    BasisKey::Fin { space, i } if space == id && (*i as usize) < n => Ok(*i as usize),
                    _ => Err(Error::ForeignKey { key: b.to_string(), family: id.to_string() }),
                };
                dk[idx(&ks[0])?][idx(&ks[1])?] = c.clone();
            }
        }
        Ok(FiniteCoproduct { id: id.clone(), d })
    }

    /// The dual algebra on `P*`: `e_i* ∘ e_j* = Σ_k d[k][i][j] e_k*`.
    pub fn dual_algebra(&self, id: &str, labels: Vec<String>, kind: AlgebraKind) -> FiniteAlgebra {
        let n = self.dim();
        let mut c = zero_table(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = self.d[k][i][j].clone();
                }
            }
        }
        FiniteAlgebra { id: SpaceId::new(id), labels, kind, c }
    }

    /// The dual coproduct of a finite algebra: `Δ(e_k*) = Σ c[i][j][k] e_i*⊗e_j*`.
    pub fn dual_of(alg: &FiniteAlgebra, id: &SpaceId) -> Self {
        let n = alg.dim();
        let mut d = zero_table(n);
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    d[k][i][j] = alg.c[i][j][k].clone();
                }
            }
        }
        FiniteCoproduct { id: id.clone(), d }
    }
}

impl Coproduct for FiniteCoproduct {
    fn name(&self) -> String {
        format!("Delta[{}]", self.id)
    }

    fn pieces(&self, key: &KeyPattern, _next: Var) -> Result<Vec<Template>> {
        let k = match key {
            KeyPattern::Fin(s, i) if *s == self.id && (*i as usize) < self.dim() => *i as usize,
            _ => {
                return Err(Error::ForeignKey {
                    key: key.fmt_with(&|v| format!("v{v}")),
                    family: self.id.to_string(),
                })
            }
        };
        Ok(self
            .apply(k)
            .iter()
            .map(|(ks, c)| Template::new(0, Poly::constant(c.clone()), ks.iter().map(KeyPattern::from_key).collect()))
            .collect())
    }
}

/// A bilinear form on a finite space given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteForm {
    pub id: SpaceId,
    pub m: Matrix,
}

impl Form for FiniteForm {
    fn name(&self) -> String {
        format!("form[{}]", self.id)
    }

    fn eval(&self, a: &BasisKey, b: &BasisKey) -> Scalar {
        match (a, b) {
            (BasisKey::Fin { space: s1, i }, BasisKey::Fin { space: s2, i: j }) if *s1 == self.id && *s2 == self.id => {
                self.m[*i as usize][*j as usize].clone()
            }
            _ => Scalar::zero(),
        }
    }
}

/// A pre-perm algebra `(◁, ▷)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrePermAlgebra {
    pub id: SpaceId,
    pub labels: Vec<String>,
    pub lhd: Table,
    pub rhd: Table,
}

impl PrePermAlgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn table_alg(&self, t: &Table, suffix: &str) -> FiniteAlgebra {
        FiniteAlgebra {
            id: SpaceId::new(&format!("{}{suffix}", self.id)),
            labels: self.labels.clone(),
            kind: AlgebraKind::Other,
            c: t.clone(),
        }
    }

    /// The sub-adjacent perm algebra `p·q = p◁q + p▷q`.
    pub fn subadjacent(&self) -> FiniteAlgebra {
        let n = self.dim();
        let mut c = zero_table(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = &self.lhd[i][j][k] + &self.rhd[i][j][k];
                }
            }
        }
        FiniteAlgebra { id: self.id.clone(), labels: self.labels.clone(), kind: AlgebraKind::Perm, c }
    }

    /// The representation `(L_▷, R_◁)` of the sub-adjacent algebra on itself.
    pub fn rep(&self) -> Rep {
        let l = self.table_alg(&self.rhd, ":rhd");
        let r = self.table_alg(&self.lhd, ":lhd");
        let n = self.dim();
        Rep { dim: n, l: (0..n).map(|i| l.left_matrix(i)).collect(), r: (0..n).map(|i| r.right_matrix(i)).collect() }
    }

    pub fn lhd_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.table_alg(&self.lhd, "").mul_dense(a, b)
    }

    pub fn rhd_mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.table_alg(&self.rhd, "").mul_dense(a, b)
    }
}

/// A pair of linear maps `l, r: P → End(V)` given on the basis of `P`;
/// `l[i][row][col]` acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dim: usize,
    pub l: Vec<Matrix>,
    pub r: Vec<Matrix>,
}

impl Rep {
    /// `(L, R)` of an algebra on itself.
    pub fn adjoint(p: &FiniteAlgebra) -> Rep {
        let n = p.dim();
        Rep { dim: n, l: (0..n).map(|i| p.left_matrix(i)).collect(), r: (0..n).map(|i| p.right_matrix(i)).collect() }
    }

    /// The dual pair `(l*, l* - r*)` on `V*`, where `*` is the transpose.
    pub fn dual(&self) -> Rep {
        let l: Vec<Matrix> = self.l.iter().map(linalg::transpose).collect();
        let r = self
            .l
            .iter()
            .zip(&self.r)
            .map(|(a, b)| linalg::transpose(&linalg::mat_add(a, b, &Scalar::int(-1))))
            .collect();
        Rep { dim: self.dim, l, r }
    }

    fn combine(ms: &[Matrix], x: &[Scalar], dim: usize) -> Matrix {
        let mut out = linalg::zeros(dim, dim);
        for (m, c) in ms.iter().zip(x) {
            if !c.is_zero() {
                out = linalg::mat_add(&out, m, c);
            }
        }
        out
    }

    /// `l(x)` for a dense element `x` of `P`.
    pub fn l_of(&self, x: &[Scalar]) -> Matrix {
        Self::combine(&self.l, x, self.dim)
    }

    pub fn r_of(&self, x: &[Scalar]) -> Matrix {
        Self::combine(&self.r, x, self.dim)
    }

    pub fn scale_l(&self, k: &Scalar) -> Rep {
        let scale = |ms: &Vec<Matrix>| {
            ms.iter().map(|m| m.iter().map(|row| row.iter().map(|x| x * k).collect()).collect()).collect()
        };
        Rep { dim: self.dim, l: scale(&self.l), r: self.r.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nil2() -> FiniteAlgebra {
        FiniteAlgebra::from_entries("n", &["e1", "e2"], AlgebraKind::Perm, &[(0, 0, 1, Scalar::one())])
    }

    #[test]
    fn product_on_keys() {
        let a = nil2();
        let v = a.mul(&a.key(0), &a.key(0));
        assert_eq!(v, FormalVector::basis(a.key(1)));
        assert!(a.mul(&a.key(1), &a.key(0)).is_zero());
    }

    #[test]
    fn left_right_matrices() {
        let a = nil2();
        let l = a.left_matrix(0);
        assert_eq!(linalg::mat_vec(&l, &unit(2, 0)), unit(2, 1));
        let r = a.right_matrix(0);
        assert_eq!(linalg::mat_vec(&r, &unit(2, 0)), unit(2, 1));
    }

    #[test]
    fn change_basis_round_trip() {
        let a = nil2();
        let m: Matrix = vec![vec![Scalar::int(1), Scalar::int(1)], vec![Scalar::int(0), Scalar::int(2)]];
        let b = a.change_basis(&m).unwrap();
        let back = b.change_basis(&linalg::inverse(&m).unwrap()).unwrap();
        assert_eq!(back.c, a.c);
    }

    #[test]
    fn coproduct_dual_algebra() {
        let a = nil2();
        let d = FiniteCoproduct::dual_of(&a, &a.id);
        let back = d.dual_algebra("n", a.labels.clone(), AlgebraKind::Perm);
        assert_eq!(back.c, a.c);
        let t = d.apply(1);
        assert_eq!(t.get(&vec![a.key(0), a.key(0)]), Scalar::one());
    }
}
