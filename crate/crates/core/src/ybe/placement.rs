//! The `r_ij · r'_kl` placements. With `r = Σ p_α⊗q_α` and `r' = Σ p'_β⊗q'_β`
//! the four sources are numbered `p_α = 0, q_α = 1, p'_β = 2, q'_β = 3`; each
//! placement says which sources land in each of the three legs, and which
//! two are multiplied.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::Product;
use crate::kernel::{BasisKey, FormalVector, KeyPattern, Poly, Scalar, Template, TemplateSeries, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    One(usize),
    Mul(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Placement {
    R12R23,
    R13R23,
    R13R12,
    R12R13,
    R23R13,
    R23R12,
}

use Leg::{Mul, One};

impl Placement {
    pub const ALL: [Placement; 6] = [
        Placement::R12R23,
        Placement::R13R23,
        Placement::R13R12,
        Placement::R12R13,
        Placement::R23R13,
        Placement::R23R12,
    ];

    pub fn legs(self) -> [Leg; 3] {
        match self {
            // p ⊗ q·p' ⊗ q'
            Placement::R12R23 => [One(0), Mul(1, 2), One(3)],
            // p ⊗ p' ⊗ q·q'
            Placement::R13R23 => [One(0), One(2), Mul(1, 3)],
            // p·p' ⊗ q' ⊗ q
            Placement::R13R12 => [Mul(0, 2), One(3), One(1)],
            // p·p' ⊗ q ⊗ q'
            Placement::R12R13 => [Mul(0, 2), One(1), One(3)],
            // p' ⊗ p ⊗ q·q'
            Placement::R23R13 => [One(2), One(0), Mul(1, 3)],
            // p' ⊗ p·q' ⊗ q
            Placement::R23R12 => [One(2), Mul(0, 3), One(1)],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Placement::R12R23 => "r12r23",
            Placement::R13R23 => "r13r23",
            Placement::R13R12 => "r13r12",
            Placement::R12R13 => "r12r13",
            Placement::R23R13 => "r23r13",
            Placement::R23R12 => "r23r12",
        }
    }
}

/// `r12·r23 − r13·r23 + r12·r13 − r13·r12`
pub const PERM_YBE: [(i64, Placement); 4] =
    [(1, Placement::R12R23), (-1, Placement::R13R23), (1, Placement::R12R13), (-1, Placement::R13R12)];

/// `−r12⋄r13 + r12⋄r23 + r13⋄r23 − r23⋄r13`
pub const S_EQUATION: [(i64, Placement); 4] =
    [(-1, Placement::R12R13), (1, Placement::R12R23), (1, Placement::R13R23), (-1, Placement::R23R13)];

/// `[r12,r13] + [r12,r23] + [r13,r23]`
pub const CYBE: [(i64, Placement); 3] = [(1, Placement::R12R13), (1, Placement::R12R23), (1, Placement::R13R23)];

fn two_legged(r: &Tensor) -> Result<()> {
    if r.keys().any(|k| k.len() != 2) {
        return Err(Error::DimensionMismatch("r must be a two-leg tensor".into()));
    }
    Ok(())
}

/// One placement of a finite two-tensor.
pub fn place(op: &dyn Product, r: &Tensor, p: Placement) -> Result<Tensor> {
    two_legged(r)?;
    let legs = p.legs();
    let mut out = Tensor::zero();
    for (a, ca) in r.iter() {
        for (b, cb) in r.iter() {
            let src: [&BasisKey; 4] = [&a[0], &a[1], &b[0], &b[1]];
            let vs: Vec<FormalVector> = legs
                .iter()
                .map(|l| match *l {
                    One(i) => FormalVector::basis(src[i].clone()),
                    Mul(i, j) => op.mul(src[i], src[j]),
                })
                .collect();
            if vs.iter().any(FormalVector::is_zero) {
                continue;
            }
            out.add_scaled(&Tensor::outer(&[&vs[0], &vs[1], &vs[2]]), &(ca * cb));
        }
    }
    Ok(out)
}

/// `Σ sign · placement` of a finite two-tensor.
pub fn combine(op: &dyn Product, r: &Tensor, terms: &[(i64, Placement)]) -> Result<Tensor> {
    let mut out = Tensor::zero();
    for (s, p) in terms {
        out.add_scaled(&place(op, r, *p)?, &Scalar::int(*s));
    }
    Ok(out)
}

/// One placement of a two-leg series, through the product's pattern rule.
pub fn place_series(op: &dyn Product, r: &TemplateSeries, p: Placement) -> Result<TemplateSeries> {
    if r.arity() != 2 || !r.params().is_empty() {
        return Err(Error::IllPosedTemplate("expected a parameter-free two-leg series".into()));
    }
    let rr = r.tensor(r);
    let legs = p.legs();
    let mut out = Vec::new();
    for t in rr.templates() {
        let choices: Vec<Vec<(Poly, KeyPattern)>> = legs
            .iter()
            .map(|l| match *l {
                One(i) => vec![(Poly::one(), t.keys[i].clone())],
                Mul(i, j) => op.mul_pattern(&t.keys[i], &t.keys[j]),
            })
            .collect();
        for (c0, k0) in &choices[0] {
            for (c1, k1) in &choices[1] {
                for (c2, k2) in &choices[2] {
                    let coeff = &(&(&t.coeff * c0) * c1) * c2;
                    if !coeff.is_zero() {
                        out.push(Template::new(t.nvars, coeff, vec![k0.clone(), k1.clone(), k2.clone()]));
                    }
                }
            }
        }
    }
    Ok(TemplateSeries::new(3, Vec::new(), out)?.normalize())
}

pub fn combine_series(op: &dyn Product, r: &TemplateSeries, terms: &[(i64, Placement)]) -> Result<TemplateSeries> {
    let mut out = TemplateSeries::zero(3);
    for (s, p) in terms {
        out = out.add(&place_series(op, r, *p)?.scale(&Scalar::int(*s)));
    }
    Ok(out.normalize())
}
