//! Named verification suites. Every check runs at `min(N, nominal window)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affinize::{
    affinization_probe, coproduct_from_form, delta_bullet, BulletCobracket, Candidate, InducedLie, Order, Side, Special,
};
use crate::axioms::{
    check_algebra, check_coalgebra, check_form, check_lie_bialgebra, check_matched_pair, check_perm_bialgebra,
    check_prelie_bialgebra, check_preperm, LawId,
};
use crate::doubles::{
    canonical_actions, dual_perm_algebra, invariant_form_search, manin_double_from_bialgebra, manin_lie_delta,
    prelie_to_symplectic, restricted_dual_finite, symplectic_to_prelie, validate_manin, RestrictedDualW1, RestrictedForm,
};
use crate::error::{Error, Result};
use crate::families::finite::AlgebraKind;
use crate::families::{
    catalog, Coproduct, DeltaA, DeltaP, FiniteAlgebra, FiniteCoproduct, Form, GradedPerm, KappaP, OmegaA, PerturbedATs,
    PerturbedDeltaA, Product, Space, Wn, WnCodelta, ATs,
};
use crate::kernel::linalg::{self, Matrix};
use crate::kernel::{BasisKey, CheckReport, Residual, Scalar, SpaceId, Tensor, Violation, Window, MAX_STORED_VIOLATIONS};
use crate::ybe::{
    affinize_r, coboundary_delta_perm, coboundary_delta_prelie, cybe_residual, lie_delta_from_r, o_to_ybe,
    perm_ybe_residual, r_sharp_criterion, s_equation_residual, tensor_from_entries, RCobracket,
};

pub const SUITES: &[&str] = &["paper-examples", "ybe", "doubles", "appendix"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub window: i64,
    pub margin: Option<i64>,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { window: 6, margin: None, seed: 0 }
    }
}

impl SuiteConfig {
    fn w(&self, nominal: i64) -> Window {
        let n = self.window.min(nominal);
        match self.margin {
            Some(m) => Window::with_margin(n, m),
            None => Window::new(n),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub suite: String,
    pub name: String,
    /// Negative controls are expected to fail.
    pub expect_pass: bool,
    pub ok: bool,
    pub report: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub window: i64,
    pub margin: Option<i64>,
    pub seed: u64,
    pub pass: bool,
    pub entries: Vec<Entry>,
}

impl SuiteReport {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "suite {} (N={}, seed={}): {}\n",
            self.suite,
            self.window,
            self.seed,
            if self.pass { "PASS" } else { "FAIL" }
        );
        for e in &self.entries {
            let tag = match (e.ok, e.expect_pass) {
                (true, true) => "ok",
                (true, false) => "ok (fails as expected)",
                (false, _) => "NOT OK",
            };
            s.push_str(&format!("[{}] {}: {}\n  {}\n", e.suite, e.name, tag, e.report.to_text().replace('\n', "\n  ")));
        }
        s
    }
}

struct Run {
    suite: &'static str,
    cfg: SuiteConfig,
    entries: Vec<Entry>,
}

impl Run {
    fn push(&mut self, name: &str, expect_pass: bool, report: CheckReport) {
        let ok = report.pass == expect_pass;
        self.entries.push(Entry { suite: self.suite.into(), name: name.into(), expect_pass, ok, report });
    }

    fn expect(&mut self, name: &str, report: CheckReport) {
        self.push(name, true, report)
    }

    fn control(&mut self, name: &str, report: CheckReport) {
        self.push(name, false, report)
    }
}

/// A report listing the differing coefficients of `got − want`.
pub fn compare(law: &str, window: Option<Window>, checked: u64, got: &Tensor, want: &Tensor) -> CheckReport {
    let mut rep = CheckReport::new(law, window);
    rep.checked = checked;
    let diff = got.sub(want);
    let stored = diff
        .iter()
        .take(MAX_STORED_VIOLATIONS)
        .map(|(ks, c)| Violation::new("mismatch", ks.clone(), Residual::Scalar(c.clone())))
        .collect();
    rep.record_many(diff.len() as u64, stored);
    rep.finish()
}

fn residual_report(law: &str, label: &str, t: &Tensor) -> CheckReport {
    let mut rep = CheckReport::new(law, None);
    rep.checked = 1;
    let stored =
        t.iter().take(MAX_STORED_VIOLATIONS).map(|(ks, c)| Violation::new(label, ks.clone(), Residual::Scalar(c.clone()))).collect();
    rep.record_many(t.len() as u64, stored);
    rep.finish()
}

/// Turns an error of a pipeline step into a failing report; window errors
/// still propagate.
fn step(law: &str, r: Result<CheckReport>) -> Result<CheckReport> {
    match r {
        Err(e @ Error::InsufficientWindow { .. }) => Err(e),
        Err(e) => {
            let mut rep = CheckReport::new(law, None);
            rep.note("error", e);
            rep.record_many(1, Vec::new());
            Ok(rep.finish())
        }
        ok => ok,
    }
}

fn e_key(id: &str) -> BasisKey {
    BasisKey::fin(&SpaceId::new(id), 0)
}

fn pe(x: BasisKey) -> BasisKey {
    BasisKey::pair(e_key("ex-1p"), x)
}

// ---- worked examples ------------------------------------------------------

fn graded_laws(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(6);
    let w1 = Wn { n: 1 };
    let w2 = Wn { n: 2 };
    let cases: [(&str, &dyn Product, Space, LawId); 5] = [
        ("graded-perm", &GradedPerm, Space::Mono, LawId::Perm),
        ("W1", &w1, Space::Wn(1), LawId::PreLie),
        ("W1", &w1, Space::Wn(1), LawId::Novikov),
        ("W2", &w2, Space::Wn(2), LawId::PreLie),
        ("a_ts", &ATs, Space::TeeEss, LawId::PreLie),
    ];
    for (name, op, space, law) in cases {
        let rep = check_algebra(op, &space, law, w)?;
        run.expect(&format!("{name} {law}"), rep);
    }
    let rep = check_algebra(&PerturbedATs, &Space::TeeEss, LawId::PreLie, w)?;
    run.control("perturbed a_ts PreLie", rep);
    Ok(())
}

fn coalgebra_laws(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(4);
    let cases: [(&str, &dyn Coproduct, Space, LawId); 3] = [
        ("delta_p", &DeltaP, Space::Mono, LawId::CoPerm),
        ("delta_a", &DeltaA, Space::TeeEss, LawId::CoPreLie),
        ("codelta W1", &WnCodelta { n: 1 }, Space::Wn(1), LawId::CoPreLie),
    ];
    for (name, d, space, law) in cases {
        run.expect(&format!("{name} {law}"), check_coalgebra(d, &space, law, w)?);
    }
    run.control("perturbed delta_a CoPreLie", check_coalgebra(&PerturbedDeltaA, &Space::TeeEss, LawId::CoPreLie, w)?);
    Ok(())
}

fn with_note_check(mut rep: CheckReport, key: &str, want: &str) -> CheckReport {
    let got = rep.notes.get(key).cloned().unwrap_or_default();
    if got != want {
        rep.record(Violation::new(&format!("{key}={got}, expected {want}"), Vec::new(), Residual::Scalar(Scalar::zero())));
        rep = rep.finish();
    }
    rep
}

fn forms(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(6);
    let rep = check_form(&ATs, &OmegaA, &Space::TeeEss, LawId::QuadPreLieForm, w)?;
    let rep = with_note_check(with_note_check(rep, "m", "-2"), "window-nondegenerate", "true");
    run.expect("(a_ts, omega) QuadPreLieForm", rep);
    let rep = check_form(&GradedPerm, &KappaP, &Space::Mono, LawId::QuadPermForm, w)?;
    let rep = with_note_check(with_note_check(rep, "m", "2"), "window-nondegenerate", "true");
    run.expect("(graded perm, kappa) QuadPermForm", rep);
    Ok(())
}

/// `[e t^i, e t^j] = (j−i) e t^{i+j−1}`, `[e t^i, e s^j] = (i+j−1) e s^{i+j−1}`,
/// `[e s^i, e s^j] = 0` for `|i|, |j| ≤ N`.
pub fn forward_brackets(n: i64) -> Result<CheckReport> {
    let p = catalog::algebra("ex-1p")?;
    let lie = InducedLie::new(Arc::new(p.clone()), p.space(), Arc::new(ATs), Space::TeeEss, Order::PA);
    let mut got = Vec::new();
    let mut want = Vec::new();
    let mut checked = 0;
    for i in -n..=n {
        for j in -n..=n {
            let pairs = [
                (BasisKey::tee(i), BasisKey::tee(j), Some((j - i, BasisKey::tee(i + j - 1)))),
                (BasisKey::tee(i), BasisKey::ess(j), Some((i + j - 1, BasisKey::ess(i + j - 1)))),
                (BasisKey::ess(j), BasisKey::tee(i), Some((1 - i - j, BasisKey::ess(i + j - 1)))),
                (BasisKey::ess(i), BasisKey::ess(j), None),
            ];
            for (a, b, w) in pairs {
                checked += 1;
                let (x, y) = (pe(a), pe(b));
                for (k, c) in lie.bracket(&x, &y)?.iter() {
                    got.push((vec![x.clone(), y.clone(), k.clone()], c.clone()));
                }
                if let Some((c, k)) = w {
                    want.push((vec![x, y, pe(k)], Scalar::int(c)));
                }
            }
        }
    }
    let mut rep = compare("displayed-brackets", Some(Window::new(n)), checked, &Tensor::from_terms(got), &Tensor::from_terms(want));
    rep.note("algebra", "ex-1p (x) a_ts");
    Ok(rep)
}

fn affinization_forward(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(6);
    run.expect("ex-1p (x) a_ts displayed brackets", forward_brackets(w.n)?);
    let p = catalog::algebra("ex-1p")?;
    let lie = InducedLie::new(Arc::new(p.clone()), p.space(), Arc::new(ATs), Space::TeeEss, Order::PA);
    run.expect("ex-1p (x) a_ts LieJacobi", check_algebra(&lie, &lie.space(), LawId::LieJacobi, w)?);
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m: Matrix = (0..2).map(|_| (0..2).map(|_| Scalar::int(rng.gen_range(-2..=2))).collect()).collect();
        if linalg::rank(&m) == 2 {
            return m;
        }
    }
}

/// `count` seeded 2-dim tables: half are perm algebras in a random basis,
/// half are sparse random tables with entries in `{−1, 0, 1}`.
pub fn random_tables(seed: u64, count: usize) -> Vec<FiniteAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perm = ["ex-nil2", "ex-semidirect", "ex-left-unit"];
    (0..count)
        .map(|k| {
            let id = format!("rand-{k}");
            if rng.gen_bool(0.5) {
                let base = catalog::algebra(perm[rng.gen_range(0..perm.len())]).unwrap();
                base.change_basis(&random_matrix(&mut rng)).unwrap().with_id(&id)
            } else {
                let mut entries = Vec::new();
                for i in 0..2 {
                    for j in 0..2 {
                        for l in 0..2 {
                            if rng.gen_bool(0.3) {
                                entries.push((i, j, l, Scalar::int(if rng.gen_bool(0.5) { 1 } else { -1 })));
                            }
                        }
                    }
                }
                let labels = ["e1", "e2"];
                FiniteAlgebra::from_entries(&id, &labels, AlgebraKind::Other, &entries)
            }
        })
        .collect()
}

/// Probe agreement over random tables; one violation per disagreement.
pub fn probe_agreement(seed: u64, count: usize, alg_window: Window, coalg_window: Window) -> Result<(CheckReport, CheckReport)> {
    let tables = random_tables(seed, count);
    let mut alg = CheckReport::new("probe-agreement[algebra]", Some(alg_window));
    let mut coalg = CheckReport::new("probe-agreement[coalgebra]", Some(coalg_window));
    let (mut laws, mut colaws) = (0, 0);
    for t in &tables {
        let v = affinization_probe(&Candidate::Algebra(t.clone()), Special::ATs, alg_window, seed)?;
        alg.checked += 1;
        laws += usize::from(v.direct_pass);
        if !v.agree() {
            alg.record(Violation::new(&format!("{} disagrees", t.id), Vec::new(), Residual::Scalar(Scalar::zero())));
        }
        let d = FiniteCoproduct::dual_of(t, &t.id);
        let v = affinization_probe(&Candidate::Coalgebra(d), Special::ATs, coalg_window, seed)?;
        coalg.checked += 1;
        colaws += usize::from(v.direct_pass);
        if !v.agree() {
            coalg.record(Violation::new(&format!("{} disagrees", t.id), Vec::new(), Residual::Scalar(Scalar::zero())));
        }
    }
    alg.note("perm-candidates", laws);
    coalg.note("coperm-candidates", colaws);
    Ok((alg.finish(), coalg.finish()))
}

fn affinization_converse(run: &mut Run) -> Result<()> {
    let (a, c) = probe_agreement(run.cfg.seed, 100, run.cfg.w(5), run.cfg.w(4))?;
    run.expect("probe vs Perm, 100 random tables", a);
    run.expect("probe vs CoPerm, 100 random tables", c);
    Ok(())
}

/// `δ(e t^i) = Σ_k i (e s^{−k}⊗e t^{i+k−1} − e t^{i+k−1}⊗e s^{−k})` and
/// `δ(e s^i) = Σ_k (i+2k−1) e s^{−k}⊗e s^{i+k−1}`, restricted to `radius`.
pub fn displayed_delta(x: &BasisKey, radius: i64) -> Tensor {
    let BasisKey::Pair { r, .. } = x else { return Tensor::zero() };
    let mut terms = Vec::new();
    let big = 3 * radius + 3;
    for k in -big..=big {
        match **r {
            BasisKey::Tee { i } => {
                terms.push((vec![pe(BasisKey::ess(-k)), pe(BasisKey::tee(i + k - 1))], Scalar::int(i)));
                terms.push((vec![pe(BasisKey::tee(i + k - 1)), pe(BasisKey::ess(-k))], Scalar::int(-i)));
            }
            BasisKey::Ess { i } => {
                terms.push((vec![pe(BasisKey::ess(-k)), pe(BasisKey::ess(i + k - 1))], Scalar::int(i + 2 * k - 1)));
            }
            _ => {}
        }
    }
    Tensor::from_terms(terms).filter(|ks| ks.iter().all(|k| k.radius() <= radius))
}

fn main_theorem(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(5);
    let radius = w.interior("delta-formulas", 2)?;
    let p = catalog::algebra("ex-1p")?;
    let dp = Arc::new(catalog::coproduct("ex-1p")?);
    let da = Arc::new(coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie)?);
    let space = Space::tensor(p.space(), Space::TeeEss);
    let keys = space.keys(radius);
    let mut got = Tensor::zero();
    let mut want = Tensor::zero();
    for x in &keys {
        let d = delta_bullet(dp.clone(), da.clone(), Order::PA, x)?.restrict(w.n)?;
        got = got.add(&d.map_leg(0, |k| mark(x, k)));
        want = want.add(&displayed_delta(x, w.n).map_leg(0, |k| mark(x, k)));
    }
    run.expect("delta(e t^i), delta(e s^i) displayed formulas", compare("displayed-delta", Some(w), keys.len() as u64, &got, &want));
    let delta = BulletCobracket { left: dp, right: da, order: Order::PA };
    let lie = InducedLie::new(Arc::new(p.clone()), p.space(), Arc::new(ATs), Space::TeeEss, Order::PA);
    run.expect("ex-1p (x) a_ts LieBiCocycle", check_lie_bialgebra(&lie, &delta, &space, w)?);
    for law in [LawId::CoLieSkew, LawId::CoLieJacobi] {
        run.expect(&format!("ex-1p (x) a_ts {law}"), check_coalgebra(&delta, &space, law, w)?);
    }
    Ok(())
}

/// Tags the first leg with the input key so several `δ(x)` fit in one tensor.
fn mark(x: &BasisKey, k: &BasisKey) -> crate::kernel::FormalVector {
    crate::kernel::FormalVector::basis(BasisKey::pair(x.clone(), k.clone()))
}

fn same_coproduct(law: &str, a: &dyn Coproduct, b: &dyn Coproduct, keys: &[BasisKey], w: Window) -> Result<CheckReport> {
    let mut got = Tensor::zero();
    let mut want = Tensor::zero();
    for x in keys {
        got = got.add(&a.series(x)?.restrict(w.n)?.map_leg(0, |k| mark(x, k)));
        want = want.add(&b.series(x)?.restrict(w.n)?.map_leg(0, |k| mark(x, k)));
    }
    Ok(compare(law, Some(w), keys.len() as u64, &got, &want))
}

fn form_coproducts(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(6);
    let d = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie)?;
    run.expect("form coproduct (a_ts, omega) = delta_a", same_coproduct("form-coproduct", &d, &DeltaA, &Space::TeeEss.keys(w.n), w)?);
    let d = coproduct_from_form(Arc::new(GradedPerm), Arc::new(KappaP), Side::Perm)?;
    run.expect("form coproduct (graded perm, kappa) = delta_p", same_coproduct("form-coproduct", &d, &DeltaP, &Space::Mono.keys(w.n.min(3)), w)?);
    Ok(())
}

fn worked_examples(run: &mut Run) -> Result<()> {
    graded_laws(run)?;
    coalgebra_laws(run)?;
    forms(run)?;
    affinization_forward(run)?;
    affinization_converse(run)?;
    main_theorem(run)?;
    form_coproducts(run)
}

// ---- Yang-Baxter ----------------------------------------------------------

fn sd(i: u32, a: BasisKey) -> BasisKey {
    BasisKey::pair(e_key("ex-semidirect").with_index(i), a)
}

trait WithIndex {
    fn with_index(self, i: u32) -> Self;
}

impl WithIndex for BasisKey {
    fn with_index(self, i: u32) -> Self {
        match self {
            BasisKey::Fin { space, .. } => BasisKey::Fin { space, i },
            k => k,
        }
    }
}

/// The final worked example: `δ(e* s^i) = Σ_j (i+2j−1) e* s^{−j}⊗e* s^{i+j−1}`
/// and the four `±i` families of `δ(e t^i)`.
pub fn final_example(rtilde: &crate::kernel::TemplateSeries, lie: Arc<dyn Product>, radius: i64) -> Result<CheckReport> {
    let mut rep = CheckReport::new("final-example", Some(Window::new(radius)));
    for i in -radius + 1..radius {
        let d = lie_delta_from_r(lie.clone(), rtilde, &sd(1, BasisKey::ess(i)))?;
        let mut want = Vec::new();
        for j in -3 * radius..=3 * radius {
            want.push((vec![sd(1, BasisKey::ess(-j)), sd(1, BasisKey::ess(i + j - 1))], Scalar::int(i + 2 * j - 1)));
        }
        let want = Tensor::from_terms(want).filter(|ks| ks.iter().all(|k| k.radius() <= radius));
        rep.absorb(compare("final-example", None, 1, &d.restrict(radius)?, &want));
        let d = lie_delta_from_r(lie.clone(), rtilde, &sd(0, BasisKey::tee(i)))?;
        for j in -radius..=radius {
            let (a, b) = (BasisKey::tee(-j), BasisKey::ess(i + j - 1));
            if b.radius() > radius {
                continue;
            }
            let checks = [
                ([sd(0, a.clone()), sd(1, b.clone())], -i),
                ([sd(1, a.clone()), sd(0, b.clone())], -i),
                ([sd(1, b.clone()), sd(0, a.clone())], i),
                ([sd(0, b.clone()), sd(1, a.clone())], i),
            ];
            for (ks, c) in checks {
                rep.checked += 1;
                let got = d.coefficient_at(&ks)?;
                if got != Scalar::int(c) {
                    rep.record(Violation::new("mismatch", ks.to_vec(), Residual::Scalar(got - Scalar::int(c))));
                }
            }
        }
    }
    Ok(rep.finish())
}

fn ybe_positive(run: &mut Run) -> Result<()> {
    let (p, r) = catalog::tensor("r-semidirect")?;
    run.expect("r-semidirect perm-YBE residual", residual_report("PermYBE", "perm-ybe", &perm_ybe_residual(&p, &r)?));
    let d = coboundary_delta_perm(&p, &r)?;
    run.expect("r-semidirect coboundary PermBi", check_perm_bialgebra(&p, &d)?);
    run.expect("r-semidirect r-sharp O-operator", r_sharp_criterion(&p, &r)?);
    let rt = affinize_r(&r, &OmegaA, run.cfg.w(3))?;
    let lie = InducedLie::new(Arc::new(p.clone()), p.space(), Arc::new(ATs), Space::TeeEss, Order::PA);
    run.expect("affinized r-semidirect CYBE", cybe_residual(&lie, &rt, run.cfg.w(5))?);
    let radius = run.cfg.w(4).interior("final-example", 0)?;
    run.expect("final example delta formulas", final_example(&rt, Arc::new(lie.clone()), radius)?);
    // commuting diagram: δ from r̃ equals the • cobracket of the coboundary Δ
    let w = run.cfg.w(4);
    let via_r = RCobracket::new(Arc::new(lie.clone()), rt)?;
    let da = coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie)?;
    let bullet = BulletCobracket { left: Arc::new(d), right: Arc::new(da), order: Order::PA };
    run.expect("commutative diagram r -> delta", same_coproduct("diagram", &via_r, &bullet, &lie.space().keys(w.n), w)?);
    Ok(())
}

fn ybe_prelie(run: &mut Run) -> Result<()> {
    let (a, r) = catalog::tensor("r-pl-1")?;
    run.expect("r-pl-1 S-equation residual", residual_report("SEquation", "s-eq", &s_equation_residual(&a, &r)?));
    let d = coboundary_delta_prelie(&a, &r)?;
    run.expect("r-pl-1 coboundary PreLieBi", check_prelie_bialgebra(&a, &d)?);
    let w = run.cfg.w(2);
    let rt = affinize_r(&r, &KappaP, w)?;
    let lie = InducedLie::new(Arc::new(a.clone()), a.space(), Arc::new(GradedPerm), Space::Mono, Order::AP);
    run.expect("affinized r-pl-1 CYBE", cybe_residual(&lie, &rt, w)?);
    let (b, r2) = catalog::tensor("r-pl-nil2")?;
    run.control("r-pl-nil2 S-equation residual", residual_report("SEquation", "s-eq", &s_equation_residual(&b, &r2)?));
    Ok(())
}

fn ybe_o_operators(run: &mut Run) -> Result<()> {
    let pp = catalog::preperm("ex-preperm-1")?;
    let (rep, p) = check_preperm(&pp)?;
    run.expect("ex-preperm-1 PrePerm", rep);
    let (sdp, r) = o_to_ybe(&linalg::identity(1), &p, &pp.rep())?;
    run.expect("T=id pre-perm O-operator gives a solution", residual_report("PermYBE", "perm-ybe", &perm_ybe_residual(&sdp, &r)?));
    let mut broken = pp.clone();
    broken.lhd[0][0][0] = Scalar::one();
    broken.rhd[0][0][0] = Scalar::zero();
    run.control("broken pre-perm table", check_preperm(&broken)?.0);
    let e1 = catalog::algebra("ex-1p")?;
    let rep = step("OOperator", crate::axioms::check_o_operator(&linalg::identity(1), &e1, &crate::families::Rep::adjoint(&e1)));
    run.control("T=id for adjoint ex-1p", rep?);
    Ok(())
}

fn ybe_negative(run: &mut Run) -> Result<()> {
    let (p, r) = catalog::tensor("r-nil2")?;
    run.control("r-nil2 perm-YBE residual", residual_report("PermYBE", "perm-ybe", &perm_ybe_residual(&p, &r)?));
    run.control("r-nil2 r-sharp O-operator", r_sharp_criterion(&p, &r)?);
    let rt = affinize_r(&r, &OmegaA, run.cfg.w(3))?;
    let lie = InducedLie::new(Arc::new(p.clone()), p.space(), Arc::new(ATs), Space::TeeEss, Order::PA);
    run.control("affinized r-nil2 CYBE", cybe_residual(&lie, &rt, run.cfg.w(4))?);
    Ok(())
}

/// Seeded random symmetric `r`: every perm-YBE solution must give a perm
/// bialgebra and the `r♯` criterion must agree with the residual.
pub fn random_symmetric_r(seed: u64, per_algebra: usize) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = CheckReport::new("random-symmetric-r", None);
    let mut solutions = 0;
    for id in ["ex-nil2", "ex-semidirect", "ex-left-unit"] {
        let p = catalog::algebra(id)?;
        for _ in 0..per_algebra {
            let (x, y, z) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            let r = tensor_from_entries(&p, &[(0, 0, Scalar::int(x)), (0, 1, Scalar::int(y)), (1, 0, Scalar::int(y)), (1, 1, Scalar::int(z))]);
            rep.checked += 1;
            let res = perm_ybe_residual(&p, &r)?;
            let crit = r_sharp_criterion(&p, &r)?.pass;
            let keys = vec![p.key(0), p.key(1)];
            if crit != res.is_zero() {
                rep.record(Violation::new(&format!("{id} criterion disagrees for ({x},{y},{z})"), keys.clone(), Residual::Tensor(res.clone())));
            }
            if res.is_zero() {
                solutions += 1;
                let bi = check_perm_bialgebra(&p, &coboundary_delta_perm(&p, &r)?)?;
                if let Some(w) = bi.witness() {
                    rep.record(Violation::new(&format!("{id} ({x},{y},{z}) not a bialgebra: {}", w.label), keys, Residual::Tensor(res)));
                }
            }
        }
    }
    rep.note("solutions", solutions);
    Ok(rep.finish())
}

fn ybe(run: &mut Run) -> Result<()> {
    ybe_positive(run)?;
    ybe_prelie(run)?;
    ybe_o_operators(run)?;
    ybe_negative(run)?;
    let rep = random_symmetric_r(run.cfg.seed, 30)?;
    run.expect("random symmetric r: solutions give bialgebras", rep);
    Ok(())
}

// ---- doubles --------------------------------------------------------------

fn three_way(run: &mut Run, id: &str) -> Result<()> {
    let p = catalog::algebra(id)?;
    let d = catalog::coproduct(id)?;
    run.expect(&format!("{id} PermBi"), check_perm_bialgebra(&p, &d)?);
    let dual = dual_perm_algebra(&p, &d);
    let (r1, r2) = canonical_actions(&p, &dual);
    run.expect(&format!("{id} matched pair"), check_matched_pair(&p, &dual, &r1, &r2)?);
    let dbl = manin_double_from_bialgebra(&p, &d)?;
    run.expect(&format!("{id} Manin triple"), validate_manin(&dbl.data(), Window::new(1))?);
    Ok(())
}

fn doubles(run: &mut Run) -> Result<()> {
    three_way(run, "ex-1p")?;
    three_way(run, "ex-1p-zero")?;
    let p = catalog::algebra("ex-1p")?;
    let d = catalog::coproduct("ex-1p")?;
    let dbl = manin_double_from_bialgebra(&p, &d)?;
    let w = run.cfg.w(4);
    let data = dbl.lie_lift(Arc::new(ATs), Space::TeeEss, Arc::new(OmegaA));
    run.expect("ex-1p Lie-level Manin triple", validate_manin(&data, w)?);
    // commuting diagram: Manin cobracket equals the • cobracket
    let radius = w.interior("manin-diagram", 1)?;
    let da = Arc::new(coproduct_from_form(Arc::new(ATs), Arc::new(OmegaA), Side::PreLie)?);
    let mut got = Tensor::zero();
    let mut want = Tensor::zero();
    let keys = Space::tensor(p.space(), Space::TeeEss).keys(radius);
    for x in &keys {
        let m = manin_lie_delta(&dbl, Arc::new(ATs), Space::TeeEss, &OmegaA, x, w.n)?;
        let b = delta_bullet(Arc::new(d.clone()), da.clone(), Order::PA, x)?.restrict(w.n)?;
        got = got.add(&m.map_leg(0, |k| mark(x, k)));
        want = want.add(&b.map_leg(0, |k| mark(x, k)));
    }
    run.expect("Manin double diagram", compare("manin-diagram", Some(w), keys.len() as u64, &got, &want));
    // e1 ↦ e1⊗e1 on ex-nil2 is not compatible
    let nil = catalog::algebra("ex-nil2")?;
    let mut bad = FiniteCoproduct::zero(&nil.id, 2);
    bad.d[0][0][0] = Scalar::one();
    run.control("ex-nil2 twisted coproduct PermBi", check_perm_bialgebra(&nil, &bad)?);
    let dual = dual_perm_algebra(&nil, &bad);
    let (r1, r2) = canonical_actions(&nil, &dual);
    run.control("ex-nil2 twisted matched pair", check_matched_pair(&nil, &dual, &r1, &r2)?);
    Ok(())
}

// ---- appendix -------------------------------------------------------------

/// Structure constants and form of the W₁ restricted dual against `(a_ts, ω)`.
pub fn restricted_dual_vs_a_ts(n: i64) -> CheckReport {
    let keys = Space::TeeEss.keys(n);
    let mut got = Vec::new();
    let mut want = Vec::new();
    for a in &keys {
        for b in &keys {
            for (k, c) in RestrictedDualW1.mul(a, b).iter() {
                got.push((vec![a.clone(), b.clone(), k.clone()], c.clone()));
            }
            for (k, c) in ATs.mul(a, b).iter() {
                want.push((vec![a.clone(), b.clone(), k.clone()], c.clone()));
            }
            got.push((vec![a.clone(), b.clone()], RestrictedForm.eval(a, b)));
            want.push((vec![a.clone(), b.clone()], OmegaA.eval(a, b)));
        }
    }
    compare("restricted-dual", Some(Window::new(n)), (keys.len() * keys.len()) as u64, &Tensor::from_terms(got), &Tensor::from_terms(want))
}

pub fn symplectic_round_trip(id: &str) -> Result<CheckReport> {
    let a = catalog::algebra(id)?;
    let (lie, w) = prelie_to_symplectic(&a)?;
    let mut rep = check_form(&lie, &w, &lie.space(), LawId::SymplecticLie, Window::new(1))?;
    rep.absorb(check_algebra(&lie, &lie.space(), LawId::LieJacobi, Window::new(1))?);
    let p = symplectic_to_prelie(&lie, &w)?;
    rep.absorb(check_algebra(&p, &p.space(), LawId::PreLie, Window::new(1))?);
    let c = p.commutator_algebra(lie.id.as_str());
    let mut got = Vec::new();
    let mut want = Vec::new();
    for i in 0..lie.dim() {
        for j in 0..lie.dim() {
            for (k, x) in c.mul(&c.key(i), &c.key(j)).iter() {
                got.push((vec![c.key(i), c.key(j), k.clone()], x.clone()));
            }
            for (k, x) in lie.mul(&lie.key(i), &lie.key(j)).iter() {
                want.push((vec![lie.key(i), lie.key(j), k.clone()], x.clone()));
            }
        }
    }
    rep.absorb(compare("commutator", None, 1, &Tensor::from_terms(got), &Tensor::from_terms(want)));
    rep.law = "symplectic-round-trip".into();
    rep.note("algebra", id);
    Ok(rep.finish())
}

fn appendix(run: &mut Run) -> Result<()> {
    let w = run.cfg.w(6);
    run.expect("restricted dual W1 = (a_ts, omega)", restricted_dual_vs_a_ts(w.n));
    run.expect(
        "restricted dual W1 QuadPreLieForm",
        check_form(&RestrictedDualW1, &RestrictedForm, &Space::TeeEss, LawId::QuadPreLieForm, run.cfg.w(4))?,
    );
    for id in ["pl-1", "pl-nil2", "pl-left-unit"] {
        let (d, f) = restricted_dual_finite(&catalog::algebra(id)?)?;
        run.expect(&format!("restricted dual {id} QuadPreLieForm"), check_form(&d, &f, &d.space(), LawId::QuadPreLieForm, Window::new(1))?);
    }
    let sw = run.cfg.w(3);
    for n in [1u8, 2] {
        let r = invariant_form_search(n, sw)?;
        let mut rep = CheckReport::new("invariant-form-search", Some(sw));
        rep.checked = r.equations as u64;
        for (k, v) in [("keys", r.keys), ("unknowns", r.unknowns), ("rank", r.rank), ("solution-dim", r.solution_dim), ("forced-zero", r.forced_zero)] {
            rep.note(k, v);
        }
        if !r.euler_degenerate {
            rep.record(Violation::new("x1d1 not forced degenerate", Vec::new(), Residual::Scalar(Scalar::zero())));
        }
        run.expect(&format!("W{n} invariant forms vanish on x1d1"), rep.finish());
    }
    for id in ["pl-1", "pl-nil2", "pl-left-unit"] {
        run.expect(&format!("{id} symplectic round trip"), symplectic_round_trip(id)?);
    }
    Ok(())
}

pub fn run_suite(name: &str, cfg: SuiteConfig) -> Result<SuiteReport> {
    let names: Vec<&'static str> = match name {
        "all" => SUITES.to_vec(),
        _ => vec![*SUITES.iter().find(|s| **s == name).ok_or_else(|| Error::UnknownId(format!("suite {name}")))?],
    };
    if cfg.window < 1 {
        return Err(Error::InsufficientWindow { law: "suite".into(), n: cfg.window, margin: 0 });
    }
    let mut entries = Vec::new();
    for s in names {
        let mut run = Run { suite: s, cfg, entries: Vec::new() };
        match s {
            "paper-examples" => worked_examples(&mut run)?,
            "ybe" => ybe(&mut run)?,
            "doubles" => doubles(&mut run)?,
            "appendix" => appendix(&mut run)?,
            _ => unreachable!(),
        }
        entries.extend(run.entries);
    }
    let pass = entries.iter().all(|e| e.ok);
    Ok(SuiteReport { suite: name.into(), window: cfg.window, margin: cfg.margin, seed: cfg.seed, pass, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_tables_mix_perm_and_not() {
        let ts = random_tables(3, 40);
        let perm = ts.iter().filter(|t| check_algebra(*t, &t.space(), LawId::Perm, Window::new(1)).unwrap().pass).count();
        assert!(perm > 5 && perm < 35, "{perm}");
        assert_eq!(random_tables(3, 40).iter().map(|t| t.c.clone()).collect::<Vec<_>>(), ts.iter().map(|t| t.c.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn forward_brackets_small() {
        assert!(forward_brackets(3).unwrap().pass);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", SuiteConfig::default()), Err(Error::UnknownId(_))));
    }

    #[test]
    fn small_window_is_an_error() {
        let cfg = SuiteConfig { window: 2, ..Default::default() };
        assert!(matches!(run_suite("paper-examples", cfg), Err(Error::InsufficientWindow { .. })));
    }

    #[test]
    fn restricted_dual_small() {
        assert!(restricted_dual_vs_a_ts(3).pass);
    }
}
