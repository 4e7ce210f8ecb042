use crate::axioms::{check_representation, star_algebra};
use crate::error::{Error, Result};
use crate::families::finite::{zero_table, AlgebraKind};
use crate::families::{FiniteAlgebra, Rep};
use crate::kernel::linalg;

/// `(l*, l* − r*)` on `V*`.
pub fn dual_rep(rep: &Rep) -> Rep {
    rep.dual()
}

/// The zero representation of `alg` on a space of dimension `dim`.
pub fn zero_rep(alg: &FiniteAlgebra, dim: usize) -> Rep {
    let z = linalg::zeros(dim, dim);
    Rep { dim, l: vec![z.clone(); alg.dim()], r: vec![z; alg.dim()] }
}

/// Default labels for the basis of a module: `label*` when the module has the
/// algebra's dimension (the dual of the regular module), else `v{i}`.
pub fn module_labels(alg: &FiniteAlgebra, dim: usize, dual: bool) -> Vec<String> {
    let star = if dual { "*" } else { "" };
    if dim == alg.dim() {
        alg.labels.iter().map(|l| format!("{l}{star}")).collect()
    } else {
        (0..dim).map(|i| format!("v{i}{star}")).collect()
    }
}

/// `P ⋉ V` with `(p1 + v1)·(p2 + v2) = p1·p2 + l(p1)v2 + r(p2)v1`.
/// The basis of `P` comes first.
pub fn semidirect_perm(alg: &FiniteAlgebra, rep: &Rep, id: &str, v_labels: Vec<String>) -> Result<FiniteAlgebra> {
    if v_labels.len() != rep.dim {
        return Err(Error::DimensionMismatch(format!("{} labels for a module of dimension {}", v_labels.len(), rep.dim)));
    }
    let report = check_representation(alg, rep)?;
    if let Some(w) = report.witness() {
        return Err(Error::Precondition(format!("not a representation of {}: {w}", alg.id)));
    }
    let v = FiniteAlgebra::new(&format!("{id}.V"), v_labels, AlgebraKind::Other, zero_table(rep.dim))?;
    star_algebra(alg, &v, rep, &zero_rep(&v, alg.dim()), id)
}
