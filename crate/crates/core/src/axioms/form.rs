use std::collections::BTreeSet;

use super::{pow_count, region, scan, LawId};
use crate::error::{Error, Result};
use crate::families::{Form, Product, Space};
use crate::kernel::linalg::SparseEchelon;
use crate::kernel::{BasisKey, CheckReport, FormalVector, Residual, Scalar, Violation, Window};

fn fv(f: &dyn Form, v: &FormalVector, k: &BasisKey) -> Scalar {
    let mut acc = Scalar::zero();
    for (a, c) in v.iter() {
        let x = f.eval(a, k);
        if !x.is_zero() {
            acc += &(&x * c);
        }
    }
    acc
}

fn kf(f: &dyn Form, k: &BasisKey, v: &FormalVector) -> Scalar {
    let mut acc = Scalar::zero();
    for (b, c) in v.iter() {
        let x = f.eval(k, b);
        if !x.is_zero() {
            acc += &(&x * c);
        }
    }
    acc
}

/// Rank of the Gram matrix of `form` on `keys`.
pub fn gram_rank(form: &dyn Form, keys: &[BasisKey]) -> usize {
    let mut ech = SparseEchelon::new();
    for a in keys {
        let row: Vec<(usize, Scalar)> =
            keys.iter().enumerate().map(|(j, b)| (j, form.eval(a, b))).filter(|(_, x)| !x.is_zero()).collect();
        ech.insert(row);
    }
    ech.rank()
}

enum Symmetry {
    Skew,
    Symmetric,
}

/// Checks a form law: (skew-)symmetry and gradedness on the window,
/// invariance on interior triples, and full rank of the Gram matrix on the
/// window ("window-nondegenerate").
pub fn check_form(op: &dyn Product, form: &dyn Form, space: &Space, law: LawId, window: Window) -> Result<CheckReport> {
    let sym = match law {
        LawId::QuadPreLieForm | LawId::QuadPermForm | LawId::ManinPermKd | LawId::SymplecticLie => Symmetry::Skew,
        LawId::ManinLieB => Symmetry::Symmetric,
        other => return Err(Error::Precondition(format!("{other} is not a form law"))),
    };
    let (inner, w, radius) = region(space, law, window, op.max_shift())?;
    let outer = if space.has_slots() { space.keys(window.n) } else { inner.clone() };
    let mut rep = CheckReport::new(law.name(), w);
    rep.note("op", op.name());
    rep.note("form", form.name());
    if w.is_some() {
        rep.note("interior", radius);
    }

    // symmetry and grading on window pairs
    let mut degrees = BTreeSet::new();
    let mut sym_bad = Vec::new();
    let mut sym_count = 0u64;
    for a in &outer {
        for b in &outer {
            let x = form.eval(a, b);
            let y = form.eval(b, a);
            let r = match sym {
                Symmetry::Skew => &x + &y,
                Symmetry::Symmetric => &x - &y,
            };
            if !r.is_zero() {
                sym_count += 1;
                sym_bad.push(Violation::new(
                    match sym {
                        Symmetry::Skew => "skew",
                        Symmetry::Symmetric => "symmetric",
                    },
                    vec![a.clone(), b.clone()],
                    Residual::Scalar(r),
                ));
            }
            if !x.is_zero() {
                degrees.insert(a.degree() + b.degree());
            }
        }
    }
    sym_bad.truncate(crate::kernel::report::MAX_STORED_VIOLATIONS);
    rep.record_many(sym_count, sym_bad);
    if space.has_slots() {
        match degrees.len() {
            0 => rep.note("m", "none"),
            1 => rep.note("m", degrees.iter().next().unwrap()),
            _ => {
                let ds: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                rep.note("m", format!("mixed({})", ds.join(",")));
                rep.record(Violation::new("graded", Vec::new(), Residual::Scalar(Scalar::int(degrees.len() as i64))));
            }
        }
    }

    // invariance on interior triples
    let n = inner.len();
    let prod: Vec<Vec<FormalVector>> =
        inner.iter().map(|a| inner.iter().map(|b| op.mul(a, b)).collect()).collect();
    let pos = |k: &BasisKey| inner.binary_search(k).expect("interior key");
    let f = |t: &[&BasisKey]| {
        let (i, j, l) = (pos(t[0]), pos(t[1]), pos(t[2]));
        let (a, b, c) = (t[0], t[1], t[2]);
        let (label, r) = match law {
            // ω(a⋄b, c) + ω(b, a⋄c − c⋄a)
            LawId::QuadPreLieForm => {
                ("invariance", fv(form, &prod[i][j], c) + kf(form, b, &prod[i][l]) - kf(form, b, &prod[l][i]))
            }
            // κ(a·b, c) − κ(a, b·c − c·b)
            LawId::QuadPermForm | LawId::ManinPermKd => {
                ("invariance", fv(form, &prod[i][j], c) - kf(form, a, &prod[j][l]) + kf(form, a, &prod[l][j]))
            }
            // B([a,b], c) − B(a, [b,c])
            LawId::ManinLieB => ("invariance", fv(form, &prod[i][j], c) - kf(form, a, &prod[j][l])),
            // ω([a,b],c) + ω([b,c],a) + ω([c,a],b)
            _ => ("cocycle", fv(form, &prod[i][j], c) + fv(form, &prod[j][l], a) + fv(form, &prod[l][i], b)),
        };
        if r.is_zero() {
            Vec::new()
        } else {
            vec![Violation::new(label, t.iter().map(|k| (*k).clone()).collect(), Residual::Scalar(r))]
        }
    };
    rep.checked = pow_count(n, 3) + (outer.len() * outer.len()) as u64;
    let (count, vs) = scan(&inner, 3, false, &f);
    rep.record_many(count, vs);

    let rank = gram_rank(form, &outer);
    let nondeg = rank == outer.len();
    rep.note("window-nondegenerate", nondeg);
    if !nondeg {
        rep.record(Violation::new(
            "nondegenerate",
            Vec::new(),
            Residual::Scalar(Scalar::int((outer.len() - rank) as i64)),
        ));
    }
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::finite::AlgebraKind;
    use crate::families::{ATs, FiniteAlgebra, FiniteForm, GradedPerm, KappaP, OmegaA};

    #[test]
    fn omega_on_a_ts() {
        let r = check_form(&ATs, &OmegaA, &Space::TeeEss, LawId::QuadPreLieForm, Window::new(4)).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.notes["m"], "-2");
        assert_eq!(r.notes["window-nondegenerate"], "true");
    }

    #[test]
    fn kappa_on_perm() {
        let r = check_form(&GradedPerm, &KappaP, &Space::Mono, LawId::QuadPermForm, Window::new(3)).unwrap();
        assert!(r.pass, "{}", r.to_text());
        assert_eq!(r.notes["m"], "2");
    }

    #[test]
    fn one_dim_form_is_not_invariant() {
        let a = FiniteAlgebra::from_entries("e", &["e"], AlgebraKind::Perm, &[(0, 0, 0, Scalar::one())]);
        let form = FiniteForm { id: a.id.clone(), m: vec![vec![Scalar::one()]] };
        let r = check_form(&a, &form, &a.space(), LawId::QuadPermForm, Window::new(1)).unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.label == "invariance"));
    }
}
