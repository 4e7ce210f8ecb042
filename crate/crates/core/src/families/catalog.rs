//! Named finite-dimensional examples.

use super::finite::{zero_table, AlgebraKind, FiniteAlgebra, FiniteCoproduct, PrePermAlgebra};
use crate::error::{Error, Result};
use crate::kernel::{BasisKey, Scalar, SpaceId, Tensor};

fn one() -> Scalar {
    Scalar::one()
}

/// Ids of finite algebras.
pub const ALGEBRA_IDS: &[&str] = &[
    "ex-1p",
    "ex-1p-zero",
    "ex-nil2",
    "ex-semidirect",
    "ex-left-unit",
    "pl-1",
    "pl-nil2",
    "pl-left-unit",
];

/// Ids of catalog tensors.
pub const TENSOR_IDS: &[&str] = &["r-semidirect", "r-nil2", "r-pl-1", "r-pl-nil2"];

pub const PREPERM_IDS: &[&str] = &["ex-preperm-1"];

pub fn algebra(id: &str) -> Result<FiniteAlgebra> {
    use AlgebraKind::*;
    Ok(match id {
        // e·e = e
        "ex-1p" | "ex-1p-zero" => FiniteAlgebra::from_entries(id, &["e"], Perm, &[(0, 0, 0, one())]),
        // e1·e1 = e2
        "ex-nil2" => FiniteAlgebra::from_entries(id, &["e1", "e2"], Perm, &[(0, 0, 1, one())]),
        // e·e = e, e·e* = e*·e = e*
        "ex-semidirect" => FiniteAlgebra::from_entries(
            id,
            &["e", "e*"],
            Perm,
            &[(0, 0, 0, one()), (0, 1, 1, one()), (1, 0, 1, one())],
        ),
        // e1·e1 = e1, e1·e2 = e2
        "ex-left-unit" => {
            FiniteAlgebra::from_entries(id, &["e1", "e2"], Perm, &[(0, 0, 0, one()), (0, 1, 1, one())])
        }
        "pl-1" => FiniteAlgebra::from_entries(id, &["e"], PreLie, &[(0, 0, 0, one())]),
        "pl-nil2" => FiniteAlgebra::from_entries(id, &["e1", "e2"], PreLie, &[(0, 0, 1, one())]),
        "pl-left-unit" => {
            FiniteAlgebra::from_entries(id, &["e1", "e2"], PreLie, &[(0, 0, 0, one()), (0, 1, 1, one())])
        }
        _ => return Err(Error::UnknownId(id.to_string())),
    })
}

/// The coproduct that makes a catalog algebra a bialgebra.
pub fn coproduct(id: &str) -> Result<FiniteCoproduct> {
    let a = algebra(id)?;
    let n = a.dim();
    let mut d = zero_table(n);
    match id {
        // Δ(e) = e⊗e
        "ex-1p" => d[0][0][0] = one(),
        "ex-1p-zero" => {}
        _ => return Err(Error::UnknownId(format!("{id} has no catalog coproduct"))),
    }
    FiniteCoproduct::new(&a.id, d)
}

pub fn preperm(id: &str) -> Result<PrePermAlgebra> {
    match id {
        // e◁e = 0, e▷e = e
        "ex-preperm-1" => {
            let mut rhd = zero_table(1);
            rhd[0][0][0] = one();
            Ok(PrePermAlgebra { id: SpaceId::new(id), labels: vec!["e".into()], lhd: zero_table(1), rhd })
        }
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

/// A catalog two-tensor together with the id of its algebra.
pub fn tensor(id: &str) -> Result<(FiniteAlgebra, Tensor)> {
    let (alg, pairs): (&str, Vec<(u32, u32)>) = match id {
        "r-semidirect" => ("ex-semidirect", vec![(0, 1), (1, 0)]),
        "r-nil2" => ("ex-nil2", vec![(0, 0)]),
        "r-pl-1" => ("pl-1", vec![(0, 0)]),
        "r-pl-nil2" => ("pl-nil2", vec![(0, 0)]),
        _ => return Err(Error::UnknownId(id.to_string())),
    };
    let a = algebra(alg)?;
    let t = Tensor::from_terms(
        pairs.into_iter().map(|(i, j)| (vec![BasisKey::fin(&a.id, i), BasisKey::fin(&a.id, j)], one())),
    );
    Ok((a, t))
}
