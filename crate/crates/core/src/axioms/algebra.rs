use super::{lmul, pow_count, region, rmul, scan, LawId};
use crate::error::{Error, Result};
use crate::families::{Product, Space};
use crate::kernel::{BasisKey, CheckReport, FormalVector, Residual, Violation, Window};

fn push(out: &mut Vec<Violation>, label: &str, keys: &[&BasisKey], r: FormalVector) {
    if !r.is_zero() {
        out.push(Violation::new(label, keys.iter().map(|k| (*k).clone()).collect(), Residual::Vector(r)));
    }
}

/// Residuals of one law at one key tuple.
pub(crate) fn residuals(op: &dyn Product, law: LawId, t: &[&BasisKey]) -> Vec<Violation> {
    let mut out = Vec::new();
    match law {
        LawId::Perm => {
            let (p, q, r) = (t[0], t[1], t[2]);
            let pq_r = rmul(op, &op.mul(p, q), r);
            let p_qr = lmul(op, p, &op.mul(q, r));
            let qp_r = rmul(op, &op.mul(q, p), r);
            push(&mut out, "perm-assoc", t, p_qr.sub(&pq_r));
            push(&mut out, "perm-lcomm", t, pq_r.sub(&qp_r));
        }
        LawId::PreLie | LawId::Novikov => {
            let (a, b, c) = (t[0], t[1], t[2]);
            // (b⋄a)⋄c − b⋄(a⋄c) − (a⋄b)⋄c + a⋄(b⋄c)
            let ab = op.mul(a, b);
            let ba = op.mul(b, a);
            let ab_c = rmul(op, &ab, c);
            let mut r = rmul(op, &ba, c);
            r = r.sub(&lmul(op, b, &op.mul(a, c)));
            r = r.sub(&ab_c);
            r = r.add(&lmul(op, a, &op.mul(b, c)));
            push(&mut out, "prelie", t, r);
            if law == LawId::Novikov {
                let ac_b = rmul(op, &op.mul(a, c), b);
                push(&mut out, "novikov", t, ab_c.sub(&ac_b));
            }
        }
        LawId::LieJacobi => {
            let (a, b, c) = (t[0], t[1], t[2]);
            let r = rmul(op, &op.mul(a, b), c).add(&rmul(op, &op.mul(b, c), a)).add(&rmul(op, &op.mul(c, a), b));
            push(&mut out, "jacobi", t, r);
        }
        LawId::LieSkew => {
            let (a, b) = (t[0], t[1]);
            push(&mut out, "skew", t, op.mul(a, b).add(&op.mul(b, a)));
        }
        _ => unreachable!(),
    }
    out
}

fn arity(law: LawId) -> Result<usize> {
    match law {
        LawId::Perm | LawId::PreLie | LawId::Novikov | LawId::LieJacobi => Ok(3),
        LawId::LieSkew => Ok(2),
        other => Err(Error::Precondition(format!("{other} is not an algebra law"))),
    }
}

fn run(op: &dyn Product, space: &Space, law: LawId, window: Window, first_only: bool) -> Result<CheckReport> {
    let k = arity(law)?;
    let composed = k as i64 - 1;
    let (keys, w, radius) = region(space, law, window, composed * op.max_shift())?;
    let mut rep = CheckReport::new(law.name(), w);
    rep.note("op", op.name());
    if w.is_some() {
        rep.note("interior", radius);
    }
    rep.checked = pow_count(keys.len(), k as u32);
    let (count, vs) = scan(&keys, k, first_only, &|t| residuals(op, law, t));
    rep.record_many(count, vs);
    Ok(rep.finish())
}

/// Checks an algebra law on all interior key tuples.
pub fn check_algebra(op: &dyn Product, space: &Space, law: LawId, window: Window) -> Result<CheckReport> {
    run(op, space, law, window, false)
}

/// The first violation in canonical order, if any.
pub fn find_algebra_violation(
    op: &dyn Product,
    space: &Space,
    law: LawId,
    window: Window,
) -> Result<Option<Violation>> {
    Ok(run(op, space, law, window, true)?.violations.into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{catalog, ATs, GradedPerm, PerturbedATs, Wn};
    use crate::kernel::Scalar;

    #[test]
    fn graded_families_pass() {
        let w = Window::new(3);
        assert!(check_algebra(&GradedPerm, &Space::Mono, LawId::Perm, w).unwrap().pass);
        assert!(check_algebra(&ATs, &Space::TeeEss, LawId::PreLie, w).unwrap().pass);
        assert!(check_algebra(&Wn { n: 1 }, &Space::Wn(1), LawId::Novikov, w).unwrap().pass);
        assert!(check_algebra(&Wn { n: 2 }, &Space::Wn(2), LawId::PreLie, w).unwrap().pass);
    }

    #[test]
    fn a_ts_is_not_perm() {
        assert!(!check_algebra(&ATs, &Space::TeeEss, LawId::Perm, Window::new(3)).unwrap().pass);
    }

    #[test]
    fn perturbed_fails_with_witness() {
        let r = check_algebra(&PerturbedATs, &Space::TeeEss, LawId::PreLie, Window::new(4)).unwrap();
        assert!(!r.pass);
        assert!(!r.violations.is_empty());
        let hand = residuals(&PerturbedATs, LawId::PreLie, &[&BasisKey::tee(1), &BasisKey::ess(0), &BasisKey::tee(0)]);
        assert_eq!(hand.len(), 1);
        let zero = residuals(&PerturbedATs, LawId::PreLie, &[&BasisKey::tee(1), &BasisKey::ess(0), &BasisKey::tee(-1)]);
        assert!(zero.is_empty());
    }

    #[test]
    fn catalog_kinds_hold() {
        for id in catalog::ALGEBRA_IDS {
            let a = catalog::algebra(id).unwrap();
            let law = match a.kind {
                crate::families::finite::AlgebraKind::Perm => LawId::Perm,
                _ => LawId::PreLie,
            };
            let r = check_algebra(&a, &a.space(), law, Window::new(1)).unwrap();
            assert!(r.pass, "{id}");
            assert!(r.window.is_none());
        }
    }

    #[test]
    fn left_commutativity_witness() {
        // e1·e2 = e1: (e1·e2)·e2 = e1 but e1·(e2·e2) = 0
        let a = crate::families::FiniteAlgebra::from_entries(
            "x",
            &["e1", "e2"],
            crate::families::finite::AlgebraKind::Other,
            &[(0, 1, 0, Scalar::one())],
        );
        let v = find_algebra_violation(&a, &a.space(), LawId::Perm, Window::new(1)).unwrap();
        assert!(v.is_some());
    }

    #[test]
    fn window_too_small() {
        let e = check_algebra(&ATs, &Space::TeeEss, LawId::PreLie, Window::new(2));
        assert!(matches!(e, Err(Error::InsufficientWindow { .. })));
    }
}
