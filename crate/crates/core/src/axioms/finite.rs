use super::{check_algebra, LawId};
use crate::error::{Error, Result};
use crate::families::finite::{dense_to_vec, unit, zero_table, AlgebraKind};
use crate::families::{FiniteAlgebra, PrePermAlgebra, Rep};
use crate::kernel::linalg::{mat_add, mat_mul, mat_vec, Matrix};
use crate::kernel::{BasisKey, CheckReport, Residual, Scalar, SpaceId, Tensor, Violation, Window};

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

fn mat_tensor(m: &Matrix) -> Tensor {
    let v = SpaceId::new("V");
    let mut terms = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if !x.is_zero() {
                terms.push((vec![BasisKey::fin(&v, i as u32), BasisKey::fin(&v, j as u32)], x.clone()));
            }
        }
    }
    Tensor::from_terms(terms)
}

fn vec_violation(label: &str, keys: Vec<BasisKey>, id: &SpaceId, v: &[Scalar]) -> Violation {
    Violation::new(label, keys, Residual::Vector(dense_to_vec(id, v)))
}

fn check_rep_shape(alg: &FiniteAlgebra, rep: &Rep) -> Result<()> {
    let n = alg.dim();
    let sq = |m: &Matrix| m.len() == rep.dim && m.iter().all(|r| r.len() == rep.dim);
    if rep.l.len() != n || rep.r.len() != n || !rep.l.iter().all(sq) || !rep.r.iter().all(sq) {
        return Err(Error::DimensionMismatch(format!(
            "representation of {} needs {n} pairs of {d}x{d} matrices",
            alg.id,
            d = rep.dim
        )));
    }
    Ok(())
}

/// `(l, r)` is a representation of the perm algebra `alg`:
/// `l(p1p2) = l(p1)l(p2) = l(p2)l(p1)` and
/// `r(p1p2) = r(p2)r(p1) = r(p2)l(p1) = l(p1)r(p2)`.
pub fn check_representation(alg: &FiniteAlgebra, rep: &Rep) -> Result<CheckReport> {
    check_rep_shape(alg, rep)?;
    let n = alg.dim();
    let mut report = CheckReport::new(LawId::Representation.name(), None);
    report.note("algebra", alg.id.as_str());
    report.checked = (n * n) as u64;
    let minus = Scalar::int(-1);
    for i in 0..n {
        for j in 0..n {
            let pq = alg.mul_dense(&unit(n, i), &unit(n, j));
            let (li, lj, ri, rj) = (&rep.l[i], &rep.l[j], &rep.r[i], &rep.r[j]);
            let l_pq = rep.l_of(&pq);
            let r_pq = rep.r_of(&pq);
            let ll = mat_mul(li, lj);
            let rr = mat_mul(rj, ri);
            let rl = mat_mul(rj, li);
            let residuals = [
                ("rep1a", mat_add(&l_pq, &ll, &minus)),
                ("rep1b", mat_add(&ll, &mat_mul(lj, li), &minus)),
                ("rep2a", mat_add(&r_pq, &rr, &minus)),
                ("rep2b", mat_add(&rr, &rl, &minus)),
                ("rep2c", mat_add(&rl, &mat_mul(li, rj), &minus)),
            ];
            for (label, m) in residuals {
                let t = mat_tensor(&m);
                if !t.is_zero() {
                    report.record(Violation::new(label, vec![alg.key(i), alg.key(j)], Residual::Tensor(t)));
                }
            }
        }
    }
    Ok(report.finish())
}

/// One half of the matched-pair equations: `a` runs over `pa`, `b, c` over
/// `pb`; `ra` is `pa` acting on `pb` and `rb` is `pb` acting on `pa`.
fn matched_half(
    pa: &FiniteAlgebra,
    pb: &FiniteAlgebra,
    ra: &Rep,
    rb: &Rep,
    labels: [&str; 5],
    report: &mut CheckReport,
) {
    let (na, nb) = (pa.dim(), pb.dim());
    let mv = |m: &Matrix, v: &[Scalar]| mat_vec(m, v);
    let mb = |x: &[Scalar], y: &[Scalar]| pb.mul_dense(x, y);
    for i in 0..na {
        let a = unit(na, i);
        let (la, ra_a) = (ra.l_of(&a), ra.r_of(&a));
        for j in 0..nb {
            let b = unit(nb, j);
            let lb_a = mv(&rb.l_of(&b), &a);
            let rb_a = mv(&rb.r_of(&b), &a);
            for k in 0..nb {
                let c = unit(nb, k);
                let bc = mb(&b, &c);
                let la_b = mv(&la, &b);
                let ra_b = mv(&ra_a, &b);
                let rc_a = mv(&rb.r_of(&c), &a);
                let lc_a = mv(&rb.l_of(&c), &a);
                // l(a)(b∘c) = (l(a)b)∘c + l(r(b)a)c
                let r1 = sub(&mv(&la, &bc), &add(&mb(&la_b, &c), &mv(&ra.l_of(&rb_a), &c)));
                // r(a)(b∘c) = b∘(r(a)c) + r(l(c)a)b
                let r2 = sub(&mv(&ra_a, &bc), &add(&mb(&b, &mv(&ra_a, &c)), &mv(&ra.r_of(&lc_a), &b)));
                // (r(a)b)∘c + l(l(b)a)c = b∘(l(a)c) + r(r(c)a)b
                let lhs5 = add(&mb(&ra_b, &c), &mv(&ra.l_of(&lb_a), &c));
                let r5 = sub(&lhs5, &add(&mb(&b, &mv(&la, &c)), &mv(&ra.r_of(&rc_a), &b)));
                // (l(a)b)∘c + l(r(b)a)c = (r(a)b)∘c + l(l(b)a)c
                let r7 = sub(&add(&mb(&la_b, &c), &mv(&ra.l_of(&rb_a), &c)), &lhs5);
                // r(a)(b∘c) = r(a)(c∘b)
                let r9 = mv(&ra_a, &sub(&bc, &mb(&c, &b)));
                for (label, r) in labels.iter().zip([r1, r2, r5, r7, r9]) {
                    if !is_zero(&r) {
                        report.record(vec_violation(label, vec![pa.key(i), pb.key(j), pb.key(k)], &pb.id, &r));
                    }
                }
            }
        }
    }
}

/// The algebra `P1 ⊕ P2` with the product built from the two actions.
/// Basis: `P1` first, then `P2`.
pub fn star_algebra(p1: &FiniteAlgebra, p2: &FiniteAlgebra, rep1: &Rep, rep2: &Rep, id: &str) -> Result<FiniteAlgebra> {
    check_rep_shape(p1, rep1)?;
    check_rep_shape(p2, rep2)?;
    let (n1, n2) = (p1.dim(), p2.dim());
    if rep1.dim != n2 || rep2.dim != n1 {
        return Err(Error::DimensionMismatch("actions must be on the other algebra".into()));
    }
    let n = n1 + n2;
    let mut c = zero_table(n);
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                c[i][j][k] = p1.c[i][j][k].clone();
            }
        }
        for j in 0..n2 {
            // e_i⋆f_j = rP2(f_j)e_i + lP1(e_i)f_j and f_j⋆e_i = lP2(f_j)e_i + rP1(e_i)f_j
            for k in 0..n1 {
                c[i][n1 + j][k] = rep2.r[j][k][i].clone();
                c[n1 + j][i][k] = rep2.l[j][k][i].clone();
            }
            for k in 0..n2 {
                c[i][n1 + j][n1 + k] = rep1.l[i][k][j].clone();
                c[n1 + j][i][n1 + k] = rep1.r[i][k][j].clone();
            }
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            for k in 0..n2 {
                c[n1 + i][n1 + j][n1 + k] = p2.c[i][j][k].clone();
            }
        }
    }
    let labels = p1.labels.iter().chain(&p2.labels).cloned().collect();
    FiniteAlgebra::new(id, labels, AlgebraKind::Perm, c)
}

/// All matched-pair equations, both representations, both perm algebras
/// and the perm law of the assembled algebra.
pub fn check_matched_pair(p1: &FiniteAlgebra, p2: &FiniteAlgebra, rep1: &Rep, rep2: &Rep) -> Result<CheckReport> {
    let star = star_algebra(p1, p2, rep1, rep2, &format!("{}+{}", p1.id, p2.id))?;
    let mut report = CheckReport::new(LawId::MatchedPairPerm.name(), None);
    report.note("p1", p1.id.as_str());
    report.note("p2", p2.id.as_str());
    let (n1, n2) = (p1.dim() as u64, p2.dim() as u64);
    report.checked = n1 * n2 * n2 + n2 * n1 * n1;
    matched_half(p1, p2, rep1, rep2, ["pmp1", "pmp2", "pmp5", "pmp7", "pmp9"], &mut report);
    matched_half(p2, p1, rep2, rep1, ["pmp3", "pmp4", "pmp6", "pmp8", "pmp10"], &mut report);
    report.absorb(check_representation(p1, rep1)?);
    report.absorb(check_representation(p2, rep2)?);
    let w = Window::new(1);
    report.absorb(check_algebra(p1, &p1.space(), LawId::Perm, w)?);
    report.absorb(check_algebra(p2, &p2.space(), LawId::Perm, w)?);
    report.absorb(check_algebra(&star, &star.space(), LawId::Perm, w)?);
    Ok(report.finish())
}

/// Nonzero values of `T(u)·T(v) − T(l(T(u))v + r(T(v))u)` over basis pairs
/// of `V`. `t` is `dim P × dim V`.
pub fn o_operator_residual(t: &Matrix, alg: &FiniteAlgebra, rep: &Rep) -> Result<Vec<Violation>> {
    check_rep_shape(alg, rep)?;
    let (n, d) = (alg.dim(), rep.dim);
    if t.len() != n || t.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch(format!("operator must be {n}x{d}")));
    }
    let v = SpaceId::new("V");
    let mut out = Vec::new();
    for i in 0..d {
        let u = unit(d, i);
        let tu = mat_vec(t, &u);
        for j in 0..d {
            let w = unit(d, j);
            let tw = mat_vec(t, &w);
            let inner = add(&mat_vec(&rep.l_of(&tu), &w), &mat_vec(&rep.r_of(&tw), &u));
            let r = sub(&alg.mul_dense(&tu, &tw), &mat_vec(t, &inner));
            if !is_zero(&r) {
                out.push(vec_violation(
                    "o-operator",
                    vec![BasisKey::fin(&v, i as u32), BasisKey::fin(&v, j as u32)],
                    &alg.id,
                    &r,
                ));
            }
        }
    }
    Ok(out)
}

pub fn check_o_operator(t: &Matrix, alg: &FiniteAlgebra, rep: &Rep) -> Result<CheckReport> {
    let mut report = CheckReport::new(LawId::OOperator.name(), None);
    report.note("algebra", alg.id.as_str());
    report.checked = (rep.dim * rep.dim) as u64;
    for v in o_operator_residual(t, alg, rep)? {
        report.record(v);
    }
    report.absorb(check_representation(alg, rep)?);
    Ok(report.finish())
}

/// The pre-perm identities on all basis triples, plus the perm law of the
/// sub-adjacent algebra and the representation `(L▷, R◁)`. Also returns the
/// sub-adjacent algebra.
pub fn check_preperm(pp: &PrePermAlgebra) -> Result<(CheckReport, FiniteAlgebra)> {
    let n = pp.dim();
    let sa = pp.subadjacent();
    let mut report = CheckReport::new(LawId::PrePerm.name(), None);
    report.note("algebra", pp.id.as_str());
    report.checked = (n * n * n) as u64;
    let l = |a: &[Scalar], b: &[Scalar]| pp.lhd_mul(a, b);
    let r = |a: &[Scalar], b: &[Scalar]| pp.rhd_mul(a, b);
    for i in 0..n {
        let p1 = unit(n, i);
        for j in 0..n {
            let p2 = unit(n, j);
            let p12 = add(&l(&p1, &p2), &r(&p1, &p2));
            for k in 0..n {
                let p3 = unit(n, k);
                let keys = || vec![sa.key(i), sa.key(j), sa.key(k)];
                // p1◁(p2◁p3 + p2▷p3) = (p1◁p2)◁p3 = (p2▷p1)◁p3 = p2▷(p1◁p3)
                let a = l(&p1, &add(&l(&p2, &p3), &r(&p2, &p3)));
                let b = l(&l(&p1, &p2), &p3);
                let c = l(&r(&p2, &p1), &p3);
                let d = r(&p2, &l(&p1, &p3));
                // (p1◁p2 + p1▷p2)▷p3 = p1▷(p2▷p3) = p2▷(p1▷p3)
                let e = r(&p12, &p3);
                let f = r(&p1, &r(&p2, &p3));
                let g = r(&p2, &r(&p1, &p3));
                let pairs = [
                    ("pp-1a", sub(&a, &b)),
                    ("pp-1b", sub(&b, &c)),
                    ("pp-1c", sub(&c, &d)),
                    ("pp-2a", sub(&e, &f)),
                    ("pp-2b", sub(&f, &g)),
                ];
                for (label, res) in pairs {
                    if !is_zero(&res) {
                        report.record(vec_violation(label, keys(), &sa.id, &res));
                    }
                }
            }
        }
    }
    report.absorb(check_algebra(&sa, &sa.space(), LawId::Perm, Window::new(1))?);
    report.absorb(check_representation(&sa, &pp.rep())?);
    Ok((report.finish(), sa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{catalog, FiniteCoproduct};
    use crate::kernel::linalg::identity;

    #[test]
    fn adjoint_and_dual_reps() {
        for id in ["ex-1p", "ex-nil2", "ex-semidirect", "ex-left-unit"] {
            let a = catalog::algebra(id).unwrap();
            let ad = Rep::adjoint(&a);
            assert!(check_representation(&a, &ad).unwrap().pass, "{id}");
            assert!(check_representation(&a, &ad.dual()).unwrap().pass, "{id} dual");
        }
    }

    #[test]
    fn scaled_left_action_is_not_a_rep() {
        let a = catalog::algebra("ex-1p").unwrap();
        let r = check_representation(&a, &Rep::adjoint(&a).scale_l(&Scalar::int(2))).unwrap();
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.label == "rep1a"));
    }

    #[test]
    fn bialgebra_gives_matched_pair() {
        let a = catalog::algebra("ex-1p").unwrap();
        let d = catalog::coproduct("ex-1p").unwrap();
        let b = d.dual_algebra("ex-1p*", vec!["e*".into()], AlgebraKind::Perm);
        let r = check_matched_pair(&a, &b, &Rep::adjoint(&a).dual(), &Rep::adjoint(&b).dual()).unwrap();
        assert!(r.pass, "{}", r.to_text());
        let s = star_algebra(&a, &b, &Rep::adjoint(&a).dual(), &Rep::adjoint(&b).dual(), "d").unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn bad_coproduct_breaks_matched_pair() {
        let a = catalog::algebra("ex-nil2").unwrap();
        let mut d = FiniteCoproduct::zero(&a.id, 2);
        d.d[0][0][0] = Scalar::one();
        let b = d.dual_algebra("nil2*", vec!["f1".into(), "f2".into()], AlgebraKind::Perm);
        let r = check_matched_pair(&a, &b, &Rep::adjoint(&a).dual(), &Rep::adjoint(&b).dual()).unwrap();
        assert!(!r.pass);
    }

    #[test]
    fn o_operators() {
        let pp = catalog::preperm("ex-preperm-1").unwrap();
        let (rep, sa) = check_preperm(&pp).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
        assert!(check_o_operator(&identity(1), &sa, &pp.rep()).unwrap().pass);
        // the identity with the adjoint action: e·e = e but T(2e) = 2e
        let a = catalog::algebra("ex-1p").unwrap();
        let r = check_o_operator(&identity(1), &a, &Rep::adjoint(&a)).unwrap();
        assert!(!r.pass);
        assert!(o_operator_residual(&vec![vec![Scalar::one(); 2]], &a, &Rep::adjoint(&a)).is_err());
    }

    #[test]
    fn broken_preperm() {
        let mut pp = catalog::preperm("ex-preperm-1").unwrap();
        pp.lhd[0][0][0] = Scalar::one();
        pp.rhd[0][0][0] = Scalar::zero();
        // e◁e = e: (e◁e)◁e = e but (e▷e)◁e = 0
        let (rep, _) = check_preperm(&pp).unwrap();
        assert!(!rep.pass);
    }
}
