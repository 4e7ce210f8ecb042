use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use super::manin::kappa_d;
use crate::axioms::{check_algebra, check_form, LawId};
use crate::error::{Error, Result};
use crate::families::finite::{zero_table, AlgebraKind};
use crate::families::{catalog, DeltaForm, FiniteAlgebra, FiniteForm, Form, Product, Space, Wn};
use crate::kernel::linalg::{self, SparseEchelon, SparseRow};
use crate::kernel::{Affine, BasisKey, FormalVector, KeyPattern, Poly, Scalar, Window};

const W1: Wn = Wn { n: 1 };

fn w1(i: i64) -> BasisKey {
    BasisKey::wn(&[i], 1)
}

fn w1_pattern(x: &Affine) -> KeyPattern {
    KeyPattern::WnMono(std::iter::once(x.clone()).collect(), 1)
}

/// Coefficient of `t^e` in a one-term W₁ pattern product, if the output exponent is `e`.
fn w1_coeff(out: Vec<(Poly, KeyPattern)>, e: &Affine) -> Poly {
    let mut c = Poly::zero();
    for (p, k) in out {
        if let KeyPattern::WnMono(ex, 1) = &k {
            if ex[0] == *e {
                c = &c + &p;
            }
        }
    }
    c
}

/// The restricted-dual double `W₁ ⊕ W₁°` with `t^i = t^i∂` and `s^j` the dual
/// of `t^{-j}`:
/// `a⋄'b* = −L*(a)b* + R*(a)b*`, `a*⋄'b = R*(b)a*`, `a*⋄'b* = 0`, where
/// `⟨L*(a)b*, c⟩ = ⟨b*, a⋄c⟩` and `⟨R*(a)b*, c⟩ = ⟨b*, c⋄a⟩`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RestrictedDualW1;

fn coeff(v: &FormalVector, k: &BasisKey) -> Scalar {
    v.get(k)
}

impl Product for RestrictedDualW1 {
    fn name(&self) -> String {
        "W_1+W_1°".into()
    }

    fn mul(&self, a: &BasisKey, b: &BasisKey) -> FormalVector {
        match (a, b) {
            (BasisKey::Tee { i }, BasisKey::Tee { i: j }) => {
                let p = W1.mul(&w1(*i), &w1(*j));
                FormalVector::from_terms(p.iter().map(|(k, c)| match k {
                    BasisKey::WnMono { exps, .. } => (BasisKey::tee(exps[0]), c.clone()),
                    _ => unreachable!(),
                }))
            }
            // the output s^m pairs only with t^{-m}; grading forces m = i+j−1
            (BasisKey::Tee { i }, BasisKey::Ess { i: j }) => {
                let m = i + j - 1;
                let c = -&coeff(&W1.mul(&w1(*i), &w1(-m)), &w1(-j)) + coeff(&W1.mul(&w1(-m), &w1(*i)), &w1(-j));
                FormalVector::term(BasisKey::ess(m), c)
            }
            (BasisKey::Ess { i: j }, BasisKey::Tee { i }) => {
                let m = i + j - 1;
                let c = coeff(&W1.mul(&w1(-m), &w1(*i)), &w1(-j));
                FormalVector::term(BasisKey::ess(m), c)
            }
            _ => FormalVector::zero(),
        }
    }

    fn mul_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Vec<(Poly, KeyPattern)> {
        let (c, k) = match (a, b) {
            (KeyPattern::Tee(i), KeyPattern::Tee(j)) => {
                let m = (i + j).offset(-1);
                (w1_coeff(W1.mul_pattern(&w1_pattern(i), &w1_pattern(j)), &m), KeyPattern::Tee(m))
            }
            (KeyPattern::Tee(i), KeyPattern::Ess(j)) => {
                let m = (i + j).offset(-1);
                let (ti, tm, tj) = (w1_pattern(i), w1_pattern(&-&m), -j);
                let l = w1_coeff(W1.mul_pattern(&ti, &tm), &tj);
                let r = w1_coeff(W1.mul_pattern(&tm, &ti), &tj);
                (&r - &l, KeyPattern::Ess(m))
            }
            (KeyPattern::Ess(j), KeyPattern::Tee(i)) => {
                let m = (i + j).offset(-1);
                (w1_coeff(W1.mul_pattern(&w1_pattern(&-&m), &w1_pattern(i)), &-j), KeyPattern::Ess(m))
            }
            _ => return Vec::new(),
        };
        if c.is_zero() {
            Vec::new()
        } else {
            vec![(c, k)]
        }
    }
}

/// `ω(a + a*, b + b*) = ⟨a*, b⟩ − ⟨b*, a⟩` with `⟨s^i, t^j⟩ = δ_{i+j,0}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RestrictedForm;

fn pairing(a: &BasisKey, b: &BasisKey) -> Scalar {
    match (a, b) {
        (BasisKey::Ess { i }, BasisKey::Tee { i: j }) if i + j == 0 => Scalar::one(),
        _ => Scalar::zero(),
    }
}

impl Form for RestrictedForm {
    fn name(&self) -> String {
        "restricted-dual".into()
    }

    fn eval(&self, a: &BasisKey, b: &BasisKey) -> Scalar {
        pairing(a, b) - pairing(b, a)
    }
}

impl DeltaForm for RestrictedForm {
    fn pair_pattern(&self, a: &KeyPattern, b: &KeyPattern) -> Option<(Scalar, Vec<Affine>)> {
        match (a, b) {
            (KeyPattern::Ess(x), KeyPattern::Tee(y)) => Some((Scalar::one(), vec![x + y])),
            (KeyPattern::Tee(y), KeyPattern::Ess(x)) => Some((Scalar::int(-1), vec![x + y])),
            _ => None,
        }
    }

    fn dual_pattern(&self, e: &KeyPattern) -> (Scalar, KeyPattern) {
        match e {
            KeyPattern::Tee(x) => (Scalar::one(), KeyPattern::Ess(-x)),
            KeyPattern::Ess(x) => (Scalar::int(-1), KeyPattern::Tee(-x)),
            _ => panic!("restricted-dual: foreign key pattern"),
        }
    }

    fn space(&self) -> Space {
        Space::TeeEss
    }
}

/// `A ⊕ A*` for a finite pre-Lie algebra, with `ω` as the Gram matrix
/// `ω(e_i*, e_j) = δ_ij = −ω(e_j, e_i*)`.
pub fn restricted_dual_finite(a: &FiniteAlgebra) -> Result<(FiniteAlgebra, FiniteForm)> {
    let rep = check_algebra(a, &a.space(), LawId::PreLie, Window::new(1))?;
    if let Some(w) = rep.witness() {
        return Err(Error::Precondition(format!("{} is not pre-Lie: {w}", a.id)));
    }
    let n = a.dim();
    let mut c = zero_table(2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = a.c[i][j][k].clone();
                // e_i ⋄' e_j* = Σ_k (c_ki^j − c_ik^j) e_k*
                c[i][n + j][n + k] = &a.c[k][i][j] - &a.c[i][k][j];
                // e_j* ⋄' e_i = Σ_k c_ki^j e_k*
                c[n + j][i][n + k] = a.c[k][i][j].clone();
            }
        }
    }
    let id = format!("{}+{}°", a.id, a.id);
    let labels = a.labels.iter().cloned().chain(a.labels.iter().map(|l| format!("{l}°"))).collect();
    let alg = FiniteAlgebra::new(&id, labels, AlgebraKind::PreLie, c)?;
    Ok((alg, kappa_d(&id, n)))
}

/// Result of the restricted-dual construction.
#[derive(Debug)]
pub enum RestrictedDouble {
    W1 { product: RestrictedDualW1, form: RestrictedForm },
    Finite { algebra: FiniteAlgebra, form: FiniteForm },
}

/// `"w1"` or the id of a catalog pre-Lie algebra.
pub fn restricted_dual_double(family: &str) -> Result<RestrictedDouble> {
    match family {
        "w1" | "W1" | "w_1" => Ok(RestrictedDouble::W1 { product: RestrictedDualW1, form: RestrictedForm }),
        _ => match catalog::algebra(family) {
            Ok(a) if a.kind == AlgebraKind::PreLie => {
                let (algebra, form) = restricted_dual_finite(&a)?;
                Ok(RestrictedDouble::Finite { algebra, form })
            }
            _ => Err(Error::Precondition(format!(
                "restricted dual is supported for w1 and finite pre-Lie algebras, not {family:?}"
            ))),
        },
    }
}

/// `g(A) ⋉_{−L*} A*` with `ω_p(a + a*, b + b*) = ⟨a*, b⟩ − ⟨b*, a⟩`.
pub fn prelie_to_symplectic(a: &FiniteAlgebra) -> Result<(FiniteAlgebra, FiniteForm)> {
    let rep = check_algebra(a, &a.space(), LawId::PreLie, Window::new(1))?;
    if let Some(w) = rep.witness() {
        return Err(Error::Precondition(format!("{} is not pre-Lie: {w}", a.id)));
    }
    let n = a.dim();
    let mut c = zero_table(2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = &a.c[i][j][k] - &a.c[j][i][k];
                // [e_i, e_j*] = −L*(e_i)e_j* = −Σ_k c_ik^j e_k*
                c[i][n + j][n + k] = -&a.c[i][k][j];
                c[n + j][i][n + k] = a.c[i][k][j].clone();
            }
        }
    }
    let id = format!("g({})⋉{}*", a.id, a.id);
    let labels = a.labels.iter().cloned().chain(a.labels.iter().map(|l| format!("{l}*"))).collect();
    let lie = FiniteAlgebra::new(&id, labels, AlgebraKind::Lie, c)?;
    Ok((lie, kappa_d(&id, n)))
}

/// The compatible pre-Lie product `ω(a⋄b, c) = −ω(b, [a, c])`: for each `a`,
/// `Ωᵀ L(a) = −ad(a)ᵀ Ωᵀ`.
pub fn symplectic_to_prelie(lie: &FiniteAlgebra, form: &FiniteForm) -> Result<FiniteAlgebra> {
    let n = lie.dim();
    if form.m.len() != n || form.m.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!("form is not {n}×{n}")));
    }
    let form = FiniteForm { id: lie.id.clone(), m: form.m.clone() };
    if linalg::rank(&form.m) < n {
        return Err(Error::Degenerate(format!("rank {} < {n}", linalg::rank(&form.m))));
    }
    let rep = check_form(lie, &form, &lie.space(), LawId::SymplecticLie, Window::new(1))?;
    if let Some(w) = rep.witness() {
        return Err(Error::Precondition(format!("not a symplectic Lie algebra: {w}")));
    }
    let ot = linalg::transpose(&form.m);
    let mut c = zero_table(n);
    for i in 0..n {
        let ad_t = linalg::transpose(&lie.left_matrix(i));
        let rhs: linalg::Matrix = linalg::mat_mul(&ad_t, &ot).into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
        let m = linalg::solve_unique(&ot, &rhs)?;
        for j in 0..n {
            for k in 0..n {
                c[i][j][k] = m[k][j].clone();
            }
        }
    }
    let out = FiniteAlgebra::new(&format!("{}-prelie", lie.id), lie.labels.clone(), AlgebraKind::PreLie, c)?;
    let rep = check_algebra(&out, &out.space(), LawId::PreLie, Window::new(1))?;
    if let Some(w) = rep.witness() {
        return Err(Error::Rejected(format!("solved product is not pre-Lie: {w}")));
    }
    if out.commutator_algebra(&lie.id.to_string()).c != lie.c {
        return Err(Error::Rejected("solved product is not compatible with the bracket".into()));
    }
    Ok(out)
}

/// What the windowed invariance system forces on a skew form over `W_n`.
#[derive(Clone, Debug, Serialize)]
pub struct FormSearchReport {
    pub n: u8,
    pub window: i64,
    pub keys: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub solution_dim: usize,
    /// Every solution vanishes on `(x₁∂₁, k)` for all window keys `k`.
    pub euler_degenerate: bool,
    pub forced_zero: usize,
    /// Unknown pairs `ω(a, b)`, `a < b` in window order.
    #[serde(skip)]
    pub pairs: Vec<(BasisKey, BasisKey)>,
    /// Solution basis: one sparse vector over `pairs` per free unknown.
    #[serde(skip)]
    pub basis: Vec<SparseRow>,
}

fn canonical(mut row: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    row.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|t| t.1 != 0);
    let g = out.iter().fold(0i64, |g, t| g.gcd(&t.1));
    if g > 1 {
        out.iter_mut().for_each(|t| t.1 /= g);
    }
    if out.first().is_some_and(|t| t.1 < 0) {
        out.iter_mut().for_each(|t| t.1 = -t.1);
    }
    out
}

/// Unknown skew `ω` on window keys of `W_n`; imposes
/// `ω(a⋄b, c) + ω(b, a⋄c − c⋄a) = 0` for every triple whose products stay in
/// the window, and solves exactly.
pub fn invariant_form_search(n: u8, window: Window) -> Result<FormSearchReport> {
    if !(1..=2).contains(&n) {
        return Err(Error::Precondition(format!("n must be 1 or 2, got {n}")));
    }
    if window.n > 4 {
        return Err(Error::Precondition(format!("window N={} exceeds 4", window.n)));
    }
    if window.n < 2 {
        return Err(Error::InsufficientWindow { law: "invariant_form_search".into(), n: window.n, margin: 2 });
    }
    let wn = Wn { n };
    let keys = Space::Wn(n).keys(window.n);
    let index: std::collections::HashMap<&BasisKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let m = keys.len();
    // unknown for a < b
    let var = |a: usize, b: usize| -> Option<(usize, i64)> {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => Some((a * m + b - (a + 1) * (a + 2) / 2, 1)),
            Greater => Some((b * m + a - (b + 1) * (b + 2) / 2, -1)),
            Equal => None,
        }
    };
    let mut pairs = Vec::with_capacity(m * (m - 1) / 2);
    for a in 0..m {
        for b in a + 1..m {
            pairs.push((keys[a].clone(), keys[b].clone()));
        }
    }
    // products as (index, coefficient); None when they leave the window
    let prod = |a: usize, b: usize| -> Option<Vec<(usize, i64)>> {
        wn.mul(&keys[a], &keys[b])
            .iter()
            .map(|(k, c)| Some((*index.get(k)?, c.to_i64().expect("integer W_n constant"))))
            .collect()
    };
    let table: Vec<Vec<Option<Vec<(usize, i64)>>>> = (0..m).map(|a| (0..m).map(|b| prod(a, b)).collect()).collect();
    let mut rows = HashSet::new();
    for a in 0..m {
        for b in 0..m {
            let Some(ab) = &table[a][b] else { continue };
            for c in 0..m {
                let (Some(ac), Some(ca)) = (&table[a][c], &table[c][a]) else { continue };
                let mut row = Vec::new();
                for &(k, x) in ab {
                    row.extend(var(k, c).map(|(u, s)| (u, s * x)));
                }
                for &(k, x) in ac {
                    row.extend(var(b, k).map(|(u, s)| (u, s * x)));
                }
                for &(k, x) in ca {
                    row.extend(var(b, k).map(|(u, s)| (u, -s * x)));
                }
                let row = canonical(row);
                if !row.is_empty() {
                    rows.insert(row);
                }
            }
        }
    }
    let mut rows: Vec<_> = rows.into_iter().collect();
    rows.sort_unstable_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    let mut ech = SparseEchelon::new();
    for r in &rows {
        ech.insert(r.iter().map(|&(c, v)| (c, Scalar::int(v))).collect());
    }
    ech.reduce();
    let unknowns = pairs.len();
    let pivots: HashSet<usize> = ech.pivots().collect();
    let free: Vec<usize> = (0..unknowns).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v: SparseRow = vec![(f, Scalar::one())];
        for p in ech.pivots() {
            if let Some((_, x)) = ech.row(p).unwrap().iter().find(|t| t.0 == f) {
                v.push((p, -x));
            }
        }
        v.sort_by_key(|t| t.0);
        basis.push(v);
    }
    let euler = BasisKey::wn(&{
        let mut e = vec![0; n as usize];
        e[0] = 1;
        e
    }, 1);
    let ei = index[&euler];
    let euler_degenerate = (0..m).filter(|&k| k != ei).all(|k| ech.forced_zero(var(ei, k).unwrap().0));
    let forced_zero = (0..unknowns).filter(|&c| ech.forced_zero(c)).count();
    Ok(FormSearchReport {
        n,
        window: window.n,
        keys: m,
        unknowns,
        equations: rows.len(),
        rank: ech.rank(),
        solution_dim: free.len(),
        euler_degenerate,
        forced_zero,
        pairs,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{ATs, OmegaA};

    #[test]
    fn w1_double_is_a_ts() {
        let keys = Space::TeeEss.keys(6);
        for a in &keys {
            for b in &keys {
                assert_eq!(RestrictedDualW1.mul(a, b), ATs.mul(a, b), "{a} {b}");
                assert_eq!(RestrictedForm.eval(a, b), OmegaA.eval(a, b), "{a} {b}");
            }
        }
        assert!(RestrictedDualW1.mul(&BasisKey::ess(1), &BasisKey::ess(2)).is_zero());
    }

    #[test]
    fn w1_double_patterns_match_a_ts() {
        for (a, b) in Space::TeeEss.shapes(0).iter().flat_map(|a| Space::TeeEss.shapes(1).into_iter().map(move |b| (a.0.clone(), b.0))) {
            assert_eq!(RestrictedDualW1.mul_pattern(&a, &b), ATs.mul_pattern(&a, &b));
        }
    }

    #[test]
    fn w1_double_is_quadratic() {
        let rep = check_form(&RestrictedDualW1, &RestrictedForm, &Space::TeeEss, LawId::QuadPreLieForm, Window::new(4)).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
    }

    #[test]
    fn finite_double_of_pl_1() {
        let a = catalog::algebra("pl-1").unwrap();
        let (d, f) = restricted_dual_finite(&a).unwrap();
        // e⋄'e = e, e⋄'e° = (1 − 1)e° = 0, e°⋄'e = e°
        let one = Scalar::one;
        assert_eq!(d.c[0][0][0], one());
        assert!(d.c[0][1][1].is_zero());
        assert_eq!(d.c[1][0][1], one());
        assert!(d.c[1][1].iter().all(Scalar::is_zero));
        let rep = check_form(&d, &f, &d.space(), LawId::QuadPreLieForm, Window::new(1)).unwrap();
        assert!(rep.pass, "{}", rep.to_text());
        for id in ["pl-nil2", "pl-left-unit"] {
            let (d, f) = restricted_dual_finite(&catalog::algebra(id).unwrap()).unwrap();
            assert!(check_form(&d, &f, &d.space(), LawId::QuadPreLieForm, Window::new(1)).unwrap().pass, "{id}");
        }
        assert!(matches!(restricted_dual_double("a_ts"), Err(Error::Precondition(_))));
        assert!(matches!(restricted_dual_double("ex-1p"), Err(Error::Precondition(_))));
    }

    #[test]
    fn symplectic_of_pl_1() {
        let a = catalog::algebra("pl-1").unwrap();
        let (lie, w) = prelie_to_symplectic(&a).unwrap();
        assert_eq!(lie.c[0][1][1], -Scalar::one());
        assert_eq!(lie.c[1][0][1], Scalar::one());
        assert!(check_form(&lie, &w, &lie.space(), LawId::SymplecticLie, Window::new(1)).unwrap().pass);
        assert!(check_algebra(&lie, &lie.space(), LawId::LieJacobi, Window::new(1)).unwrap().pass);
    }

    #[test]
    fn abelian_cases() {
        let ab = FiniteAlgebra::from_entries("ab", &["x", "y"], AlgebraKind::PreLie, &[]);
        let (lie, w) = prelie_to_symplectic(&ab).unwrap();
        assert!(lie.c.iter().flatten().flatten().all(Scalar::is_zero));
        let p = symplectic_to_prelie(&lie, &w).unwrap();
        assert!(p.c.iter().flatten().flatten().all(Scalar::is_zero));
    }

    #[test]
    fn round_trip_is_compatible() {
        for id in ["pl-1", "pl-nil2", "pl-left-unit"] {
            let a = catalog::algebra(id).unwrap();
            let (lie, w) = prelie_to_symplectic(&a).unwrap();
            let p = symplectic_to_prelie(&lie, &w).unwrap();
            assert_eq!(p.commutator_algebra("c").c, lie.c, "{id}");
            // the defining identity, directly
            let n = lie.dim();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let lhs: Scalar = (0..n).map(|m| &p.c[i][j][m] * &w.m[m][k]).fold(Scalar::zero(), |s, x| s + x);
                        let rhs: Scalar = (0..n).map(|m| &lie.c[i][k][m] * &w.m[j][m]).fold(Scalar::zero(), |s, x| s + x);
                        assert_eq!(lhs, -rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_form_is_rejected() {
        let a = catalog::algebra("pl-1").unwrap();
        let (lie, _) = prelie_to_symplectic(&a).unwrap();
        let zero = FiniteForm { id: lie.id.clone(), m: linalg::zeros(2, 2) };
        assert!(matches!(symplectic_to_prelie(&lie, &zero), Err(Error::Degenerate(_))));
    }

    #[test]
    fn w1_search_forces_euler_degeneracy() {
        let r = invariant_form_search(1, Window::new(3)).unwrap();
        assert_eq!(r.keys, 7);
        assert_eq!(r.unknowns, 21);
        assert!(r.euler_degenerate);
        assert_eq!(r.solution_dim, r.unknowns - r.rank);
        assert_eq!(r.basis.len(), r.solution_dim);
    }

    #[test]
    fn w2_search_forces_euler_degeneracy() {
        let r = invariant_form_search(2, Window::new(3)).unwrap();
        assert_eq!(r.keys, 98);
        assert!(r.euler_degenerate);
        // the zero form is a solution, so the system is consistent
        assert_eq!(r.solution_dim + r.rank, r.unknowns);
    }

    #[test]
    fn search_rejects_bad_inputs() {
        assert!(matches!(invariant_form_search(1, Window::new(1)), Err(Error::InsufficientWindow { .. })));
        assert!(matches!(invariant_form_search(3, Window::new(3)), Err(Error::Precondition(_))));
        assert!(matches!(invariant_form_search(1, Window::new(5)), Err(Error::Precondition(_))));
    }
}
