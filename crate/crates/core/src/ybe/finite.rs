use super::placement::{combine, PERM_YBE, S_EQUATION};
use crate::axioms::{check_o_operator, o_operator_residual};
use crate::doubles::{dual_rep, module_labels, semidirect_perm};
use crate::error::{Error, Result};
use crate::families::{FiniteAlgebra, FiniteCoproduct, Product, Rep};
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::{CheckReport, Scalar, Tensor};

fn check_over(alg: &FiniteAlgebra, r: &Tensor) -> Result<()> {
    for ks in r.keys() {
        if ks.len() != 2 {
            return Err(Error::DimensionMismatch("r must be a two-leg tensor".into()));
        }
        if let Some(k) = ks.iter().find(|k| alg.index_of(k).is_none()) {
            return Err(Error::ForeignKey { key: k.to_string(), family: alg.id.to_string() });
        }
    }
    Ok(())
}

/// `Δ(p) = (id⊗R(p) − (L−R)(p)⊗id)(r)`.
pub fn coboundary_delta_perm(alg: &FiniteAlgebra, r: &Tensor) -> Result<FiniteCoproduct> {
    check_over(alg, r)?;
    FiniteCoproduct::from_fn(&alg.id, alg.dim(), |i| {
        let p = alg.key(i);
        let right = r.map_leg(1, |q| alg.mul(q, &p));
        let lmr = r.map_leg(0, |x| alg.mul(&p, x).sub(&alg.mul(x, &p)));
        right.sub(&lmr)
    })
}

/// `Δ(a) = (L(a)⊗id + id⊗(L−R)(a))(r)`.
pub fn coboundary_delta_prelie(alg: &FiniteAlgebra, r: &Tensor) -> Result<FiniteCoproduct> {
    check_over(alg, r)?;
    FiniteCoproduct::from_fn(&alg.id, alg.dim(), |i| {
        let a = alg.key(i);
        let left = r.map_leg(0, |x| alg.mul(&a, x));
        let lmr = r.map_leg(1, |y| alg.mul(&a, y).sub(&alg.mul(y, &a)));
        left.add(&lmr)
    })
}

pub fn perm_ybe_residual(alg: &FiniteAlgebra, r: &Tensor) -> Result<Tensor> {
    check_over(alg, r)?;
    combine(alg, r, &PERM_YBE)
}

pub fn s_equation_residual(alg: &FiniteAlgebra, r: &Tensor) -> Result<Tensor> {
    check_over(alg, r)?;
    combine(alg, r, &S_EQUATION)
}

pub fn is_symmetric(r: &Tensor) -> bool {
    r == &r.permute(&[1, 0])
}

/// Matrix of `r♯: P* → P`, `p* ↦ Σ ⟨p*, p_α⟩ q_α`; column `i` is `r♯(e_i*)`.
pub fn r_sharp(alg: &FiniteAlgebra, r: &Tensor) -> Result<Matrix> {
    check_over(alg, r)?;
    let n = alg.dim();
    let mut m = linalg::zeros(n, n);
    for (ks, c) in r.iter() {
        let (i, j) = (alg.index_of(&ks[0]).unwrap(), alg.index_of(&ks[1]).unwrap());
        m[j][i] += c;
    }
    Ok(m)
}

/// Whether `r♯` is an O-operator of `P` for `(P*, L*, L*−R*)`.
pub fn r_sharp_criterion(alg: &FiniteAlgebra, r: &Tensor) -> Result<CheckReport> {
    let m = r_sharp(alg, r)?;
    let mut rep = check_o_operator(&m, alg, &dual_rep(&Rep::adjoint(alg)))?;
    rep.note("operator", "r-sharp");
    Ok(rep)
}

/// `r = T + σ(T)` in `P ⋉_{l*, l*−r*} V*` for an O-operator `T: V → P`
/// (`dim P × dim V`). Returns the semidirect algebra and `r`.
pub fn o_to_ybe(t: &Matrix, alg: &FiniteAlgebra, rep: &Rep) -> Result<(FiniteAlgebra, Tensor)> {
    let res = o_operator_residual(t, alg, rep)?;
    if let Some(w) = res.first() {
        return Err(Error::Rejected(format!("not an O-operator ({} violations), first: {w}", res.len())));
    }
    let n = alg.dim();
    let id = format!("{}⋉V*", alg.id);
    let sd = semidirect_perm(alg, &dual_rep(rep), &id, module_labels(alg, rep.dim, true))?;
    let mut terms = Vec::new();
    for (k, row) in t.iter().enumerate() {
        for (i, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (e, f) = (sd.key(k), sd.key(n + i));
            terms.push((vec![e.clone(), f.clone()], c.clone()));
            terms.push((vec![f, e], c.clone()));
        }
    }
    Ok((sd, Tensor::from_terms(terms)))
}

/// `r` given by `(i, j, c)` entries `c·e_i⊗e_j`.
pub fn tensor_from_entries(alg: &FiniteAlgebra, entries: &[(usize, usize, Scalar)]) -> Tensor {
    Tensor::from_terms(entries.iter().map(|(i, j, c)| (vec![alg.key(*i), alg.key(*j)], c.clone())))
}
