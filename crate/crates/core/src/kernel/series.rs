//! Template series: finite sums of templates, each standing for an infinite
//! sum over integer summation variables of `coeff(vars) · key_1(vars)⊗…⊗key_k(vars)`.
//!
//! Variables `0..P` are the series parameters (symbolic input indices) and the
//! summation variables of a template are `P..P+nvars`.

use std::collections::BTreeMap;

use super::key::{BasisKey, KeyPattern};
use super::lincomb::Tensor;
use super::linalg::{self, Matrix};
use super::poly::{Affine, Poly, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Template {
    pub nvars: usize,
    pub coeff: Poly,
    pub keys: Vec<KeyPattern>,
}

impl Template {
    pub fn new(nvars: usize, coeff: Poly, keys: Vec<KeyPattern>) -> Self {
        Template { nvars, coeff, keys }
    }

    /// Shifts every variable `>= from` by `by`.
    pub fn shift_vars(&self, from: Var, by: Var) -> Template {
        let f = |v: Var| if v >= from { v + by } else { v };
        Template {
            nvars: self.nvars,
            coeff: self.coeff.rename(&f),
            keys: self.keys.iter().map(|k| k.rename(&f)).collect(),
        }
    }

    fn slot_rows(&self) -> Vec<Affine> {
        let mut rows = Vec::new();
        for k in &self.keys {
            k.slots(&mut rows);
        }
        rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateSeries {
    arity: usize,
    params: Vec<String>,
    templates: Vec<Template>,
}

const VAR_NAMES: [&str; 8] = ["j", "k", "l", "m", "n", "p", "q", "u"];

impl TemplateSeries {
    pub fn zero(arity: usize) -> Self {
        TemplateSeries { arity, params: Vec::new(), templates: Vec::new() }
    }

    pub fn new(arity: usize, params: Vec<String>, templates: Vec<Template>) -> Result<Self> {
        for t in &templates {
            if t.keys.len() != arity {
                return Err(Error::IllPosedTemplate(format!(
                    "template has {} keys, series arity is {arity}",
                    t.keys.len()
                )));
            }
        }
        Ok(TemplateSeries { arity, params, templates })
    }

    /// A finite tensor viewed as a series with no summation variables.
    pub fn finite(arity: usize, t: &Tensor) -> Self {
        let templates = t
            .iter()
            .map(|(ks, c)| Template::new(0, Poly::constant(c.clone()), ks.iter().map(KeyPattern::from_key).collect()))
            .collect();
        TemplateSeries { arity, params: Vec::new(), templates }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn first_var(&self) -> Var {
        self.params.len() as Var
    }

    pub fn var_name(&self, v: Var) -> String {
        let p = self.params.len();
        if (v as usize) < p {
            return self.params[v as usize].clone();
        }
        let k = v as usize - p;
        match VAR_NAMES.get(k) {
            Some(n) if !self.params.iter().any(|q| q == n) => n.to_string(),
            _ => format!("j{k}"),
        }
    }

    pub fn push(&mut self, t: Template) {
        debug_assert_eq!(t.keys.len(), self.arity);
        self.templates.push(t);
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = self.clone();
        for t in out.templates.iter_mut() {
            t.coeff = t.coeff.scale(k);
        }
        out.templates.retain(|t| !t.coeff.is_zero());
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.arity, other.arity, "series arity mismatch");
        assert_eq!(self.params, other.params, "series parameter mismatch");
        let mut out = self.clone();
        out.templates.extend(other.templates.iter().cloned());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    /// Leg `i` of the result is leg `perm[i]` of self.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = self.clone();
        for t in out.templates.iter_mut() {
            t.keys = perm.iter().map(|&p| t.keys[p].clone()).collect();
        }
        out
    }

    /// The completed flip of a two-leg series.
    pub fn flip_hat(&self) -> Self {
        assert_eq!(self.arity, 2);
        self.permute(&[1, 0])
    }

    /// Replaces leg `pos` by the `legs`-leg output of `rule`, which receives
    /// the leg's pattern and the first free variable id and returns templates
    /// whose new summation variables start at that id.
    pub fn apply_at(
        &self,
        pos: usize,
        legs: usize,
        rule: &dyn Fn(&KeyPattern, Var) -> Result<Vec<Template>>,
    ) -> Result<Self> {
        let p = self.first_var();
        let mut out = Vec::new();
        let arity = self.arity - 1 + legs;
        for t in &self.templates {
            let next = p + t.nvars as Var;
            for piece in rule(&t.keys[pos], next)? {
                let mut keys = t.keys[..pos].to_vec();
                keys.extend(piece.keys.iter().cloned());
                keys.extend(t.keys[pos + 1..].iter().cloned());
                if keys.len() != arity {
                    return Err(Error::IllPosedTemplate(format!("rule must produce {legs} legs")));
                }
                let coeff = &t.coeff * &piece.coeff;
                if !coeff.is_zero() {
                    out.push(Template::new(t.nvars + piece.nvars, coeff, keys));
                }
            }
        }
        Ok(TemplateSeries { arity, params: self.params.clone(), templates: out }.normalize())
    }

    /// Applies a linear map that introduces no new variables to leg `pos`.
    pub fn map_at(&self, pos: usize, f: &dyn Fn(&KeyPattern) -> Vec<(Poly, KeyPattern)>) -> Self {
        let mut out = Vec::new();
        for t in &self.templates {
            for (c, k) in f(&t.keys[pos]) {
                let coeff = &t.coeff * &c;
                if coeff.is_zero() {
                    continue;
                }
                let mut keys = t.keys.clone();
                keys[pos] = k;
                out.push(Template::new(t.nvars, coeff, keys));
            }
        }
        TemplateSeries { arity: self.arity, params: self.params.clone(), templates: out }.normalize()
    }

    /// Tensor product of two parameter-free series with variables renamed apart.
    pub fn tensor(&self, other: &Self) -> Self {
        assert!(self.params.is_empty() && other.params.is_empty());
        let mut out = Vec::new();
        for a in &self.templates {
            for b in &other.templates {
                let b2 = b.shift_vars(0, a.nvars as Var);
                let mut keys = a.keys.clone();
                keys.extend(b2.keys);
                out.push(Template::new(a.nvars + b.nvars, &a.coeff * &b2.coeff, keys));
            }
        }
        TemplateSeries { arity: self.arity + other.arity, params: Vec::new(), templates: out }
    }

    /// Substitutes integer values for all parameters.
    pub fn bind(&self, values: &[i64]) -> Result<Self> {
        let p = self.params.len();
        if values.len() != p {
            return Err(Error::UnboundParams(format!("expected {p} values, got {}", values.len())));
        }
        let max_vars = self.templates.iter().map(|t| t.nvars).max().unwrap_or(0);
        let mut subs: Vec<Option<Affine>> = values.iter().map(|&v| Some(Affine::constant(v))).collect();
        // summation variables move down to start at 0
        for k in 0..max_vars {
            subs.push(Some(Affine::var(k as Var)));
        }
        let templates = self
            .templates
            .iter()
            .map(|t| Template {
                nvars: t.nvars,
                coeff: t.coeff.substitute(&subs),
                keys: t.keys.iter().map(|k| k.substitute(&subs)).collect(),
            })
            .collect();
        Ok(TemplateSeries { arity: self.arity, params: Vec::new(), templates }.normalize())
    }

    /// Merges templates with identical keys and drops zero coefficients.
    pub fn normalize(self) -> Self {
        let mut merged: BTreeMap<(usize, Vec<KeyPattern>), Poly> = BTreeMap::new();
        for t in self.templates {
            let e = merged.entry((t.nvars, t.keys)).or_default();
            *e = &*e + &t.coeff;
        }
        let templates = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((nvars, keys), coeff)| Template { nvars, coeff, keys })
            .collect();
        TemplateSeries { arity: self.arity, params: self.params, templates }
    }

    fn require_bound(&self) -> Result<()> {
        if self.params.is_empty() {
            Ok(())
        } else {
            Err(Error::UnboundParams(self.params.join(",")))
        }
    }

    /// Coefficient of one pure tensor of keys.
    pub fn coefficient_at(&self, keys: &[BasisKey]) -> Result<Scalar> {
        self.require_bound()?;
        if keys.len() != self.arity {
            return Err(Error::DimensionMismatch(format!("{} keys for arity {}", keys.len(), self.arity)));
        }
        let mut total = Scalar::zero();
        let mut eqs = Vec::new();
        for t in &self.templates {
            eqs.clear();
            if !t.keys.iter().zip(keys).all(|(p, k)| p.match_key(k, &mut eqs)) {
                continue;
            }
            if let Some(assign) = solve_assignment(t.nvars, &eqs)? {
                total += &t.coeff.eval(&assign);
            }
        }
        Ok(total)
    }

    /// All coefficients whose key slots lie in `[-radius, radius]`.
    pub fn restrict(&self, radius: i64) -> Result<Tensor> {
        self.require_bound()?;
        let mut acc: BTreeMap<Vec<BasisKey>, Scalar> = BTreeMap::new();
        for t in &self.templates {
            enumerate_template(t, radius, &mut |keys, c| {
                let e = acc.entry(keys).or_default();
                *e += &c;
            })?;
        }
        Ok(Tensor::from_terms(acc))
    }

    pub fn fmt_template(&self, t: &Template) -> String {
        let names = |v: Var| self.var_name(v);
        let keys: Vec<String> = t.keys.iter().map(|k| k.fmt_with(&names)).collect();
        format!("({}) {}", t.coeff.fmt_with(&names), keys.join("⊗"))
    }
}

/// Solves the slot equations for the summation variables `0..nvars`.
/// `Ok(None)` means no integer solution (the template does not contribute).
fn solve_assignment(nvars: usize, eqs: &[(Affine, i64)]) -> Result<Option<Vec<i64>>> {
    let mut rows: Matrix = Vec::with_capacity(eqs.len());
    for (a, v) in eqs {
        let mut row = vec![Scalar::zero(); nvars + 1];
        for &(var, c) in a.terms() {
            if var as usize >= nvars {
                return Err(Error::IllPosedTemplate(format!("variable v{var} out of range")));
            }
            row[var as usize] = Scalar::int(c);
        }
        row[nvars] = Scalar::int(v - a.constant_term());
        rows.push(row);
    }
    let pivots = linalg::rref(&mut rows);
    if pivots.contains(&nvars) {
        return Ok(None);
    }
    if pivots.len() < nvars {
        return Err(Error::IllPosedTemplate(format!(
            "{} summation variables but only {} independent slot equations",
            nvars,
            pivots.len()
        )));
    }
    let mut assign = vec![0; nvars];
    for (r, &p) in pivots.iter().enumerate() {
        match rows[r][nvars].to_i64() {
            Some(x) => assign[p] = x,
            None => return Ok(None),
        }
    }
    Ok(Some(assign))
}

/// Enumerates every instance of a parameter-free template whose slots all lie
/// in `[-radius, radius]`.
pub(crate) fn enumerate_template(
    t: &Template,
    radius: i64,
    sink: &mut dyn FnMut(Vec<BasisKey>, Scalar),
) -> Result<()> {
    let rows = t.slot_rows();
    let k = t.nvars;
    if k == 0 {
        let assign: [i64; 0] = [];
        if rows.iter().all(|r| r.eval(&assign).abs() <= radius) {
            let c = t.coeff.eval(&assign);
            if !c.is_zero() {
                sink(t.keys.iter().map(|p| p.instantiate(&assign)).collect(), c);
            }
        }
        return Ok(());
    }
    // pick k independent slot rows
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Matrix = Vec::new();
    for (ri, r) in rows.iter().enumerate() {
        if r.vars().any(|v| v as usize >= k) {
            return Err(Error::IllPosedTemplate(format!("slot {r} uses an unknown variable")));
        }
        let mut cand = basis.clone();
        cand.push((0..k).map(|v| Scalar::int(r.coeff(v as Var))).collect());
        if linalg::rank(&cand) == cand.len() {
            basis = cand;
            chosen.push(ri);
            if chosen.len() == k {
                break;
            }
        }
    }
    if chosen.len() < k {
        return Err(Error::IllPosedTemplate(format!(
            "{k} summation variables but only {} independent slots",
            chosen.len()
        )));
    }
    let inv = linalg::inverse(&basis)?;
    // integer form: vars = num · (v - c) / den
    let mut den: i128 = 1;
    for row in &inv {
        for x in row {
            let (_, d) = x.numer_denom();
            let d: i128 = d.try_into().map_err(|_| Error::IllPosedTemplate("huge inverse".into()))?;
            den = num_integer::lcm(den, d);
        }
    }
    let num: Vec<Vec<i128>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * &Scalar::from_i128_int(den);
                    y.to_i64().map(|v| v as i128).ok_or_else(|| Error::IllPosedTemplate("huge inverse".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let consts: Vec<i64> = chosen.iter().map(|&r| rows[r].constant_term()).collect();
    let mut v = vec![-radius; k];
    let mut assign = vec![0i64; k];
    'outer: loop {
        let mut ok = true;
        for j in 0..k {
            let mut s: i128 = 0;
            for l in 0..k {
                s += num[j][l] * (v[l] - consts[l]) as i128;
            }
            if s % den != 0 {
                ok = false;
                break;
            }
            assign[j] = (s / den) as i64;
        }
        if ok && rows.iter().all(|r| r.eval(&assign).abs() <= radius) {
            let c = t.coeff.eval(&assign);
            if !c.is_zero() {
                sink(t.keys.iter().map(|p| p.instantiate(&assign)).collect(), c);
            }
        }
        for l in 0..k {
            if v[l] < radius {
                v[l] += 1;
                continue 'outer;
            }
            v[l] = -radius;
        }
        break;
    }
    Ok(())
}

/// Pairs a finite tensor with a series leg by leg into `Pair` keys; both must
/// have the same arity.
pub fn bullet(finite: &Tensor, series: &TemplateSeries) -> TemplateSeries {
    let mut out = TemplateSeries { arity: series.arity, params: series.params.clone(), templates: Vec::new() };
    for (fk, c) in finite.iter() {
        assert_eq!(fk.len(), series.arity, "bullet arity mismatch");
        for t in &series.templates {
            let keys = fk
                .iter()
                .zip(&t.keys)
                .map(|(a, b)| KeyPattern::pair(KeyPattern::from_key(a), b.clone()))
                .collect();
            out.templates.push(Template::new(t.nvars, t.coeff.scale(c), keys));
        }
    }
    out.normalize()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Σ_j (i+j-1) t^{-j} ⊗ s^{i+j-1} with the parameter i.
    fn sample() -> TemplateSeries {
        let i = Affine::var(0);
        let j = Affine::var(1);
        let shifted = (&i + &j).offset(-1);
        TemplateSeries::new(
            2,
            vec!["i".into()],
            vec![Template::new(
                1,
                Poly::from_affine(&shifted),
                vec![KeyPattern::Tee(-&j), KeyPattern::Ess(shifted.clone())],
            )],
        )
        .unwrap()
    }

    #[test]
    fn coefficient_lookup() {
        let s = sample();
        assert!(s.coefficient_at(&[BasisKey::tee(0), BasisKey::ess(-1)]).is_err());
        let b = s.bind(&[2]).unwrap();
        // i=2: key (t^-1, s^2) has j=1, coefficient 2
        assert_eq!(b.coefficient_at(&[BasisKey::tee(-1), BasisKey::ess(2)]).unwrap(), Scalar::int(2));
        assert_eq!(b.coefficient_at(&[BasisKey::tee(-1), BasisKey::ess(3)]).unwrap(), Scalar::zero());
        assert_eq!(b.coefficient_at(&[BasisKey::ess(-1), BasisKey::ess(2)]).unwrap(), Scalar::zero());
    }

    #[test]
    fn restrict_matches_pointwise() {
        let b = sample().bind(&[1]).unwrap();
        let t = b.restrict(3).unwrap();
        for (ks, c) in t.iter() {
            assert_eq!(&b.coefficient_at(ks).unwrap(), c);
        }
        // j ranges where both |-j| <= 3 and |j| <= 3 with nonzero coefficient j
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn underdetermined_template_is_rejected() {
        let s = TemplateSeries::new(
            1,
            vec![],
            vec![Template::new(2, Poly::one(), vec![KeyPattern::Tee(&Affine::var(0) + &Affine::var(1))])],
        )
        .unwrap();
        assert!(matches!(s.coefficient_at(&[BasisKey::tee(0)]), Err(Error::IllPosedTemplate(_))));
        assert!(s.restrict(2).is_err());
    }

    #[test]
    fn apply_and_flip() {
        let b = sample().bind(&[0]).unwrap();
        let f = b.flip_hat();
        assert_eq!(
            f.coefficient_at(&[BasisKey::ess(-1), BasisKey::tee(0)]).unwrap(),
            Scalar::int(-1)
        );
        // identity rule keeps the series
        let id = b
            .apply_at(0, 1, &|k, _| Ok(vec![Template::new(0, Poly::one(), vec![k.clone()])]))
            .unwrap();
        assert_eq!(id.restrict(3).unwrap(), b.restrict(3).unwrap());
    }
}
