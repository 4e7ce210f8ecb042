//! Integer affine expressions and rational polynomials over template variables.
//!
//! Variables are small integer ids. A template series numbers its parameters
//! first and its summation variables after them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::scalar::Scalar;

pub type Var = u16;

/// `constant + Σ coef·var` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    constant: i64,
    /// sorted by variable, no zero coefficients
    terms: SmallVec<[(Var, i64); 2]>,
}

impl Affine {
    pub fn constant(c: i64) -> Self {
        Affine { constant: c, terms: SmallVec::new() }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = SmallVec::new();
        terms.push((v, 1));
        Affine { constant: 0, terms }
    }

    pub fn from_terms(constant: i64, terms: impl IntoIterator<Item = (Var, i64)>) -> Self {
        let mut a = Affine::constant(constant);
        for (v, c) in terms {
            a.add_term(v, c);
        }
        a
    }

    fn add_term(&mut self, v: Var, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.binary_search_by_key(&v, |t| t.0) {
            Ok(pos) => {
                self.terms[pos].1 += c;
                if self.terms[pos].1 == 0 {
                    self.terms.remove(pos);
                }
            }
            Err(pos) => self.terms.insert(pos, (v, c)),
        }
    }

    pub fn constant_term(&self) -> i64 {
        self.constant
    }

    pub fn terms(&self) -> &[(Var, i64)] {
        &self.terms
    }

    pub fn coeff(&self, v: Var) -> i64 {
        self.terms.iter().find(|t| t.0 == v).map_or(0, |t| t.1)
    }

    pub fn as_constant(&self) -> Option<i64> {
        self.terms.is_empty().then_some(self.constant)
    }

    pub fn offset(&self, c: i64) -> Affine {
        let mut a = self.clone();
        a.constant += c;
        a
    }

    pub fn scale(&self, k: i64) -> Affine {
        if k == 0 {
            return Affine::constant(0);
        }
        Affine {
            constant: self.constant * k,
            terms: self.terms.iter().map(|&(v, c)| (v, c * k)).collect(),
        }
    }

    pub fn eval(&self, assign: &[i64]) -> i64 {
        self.terms.iter().fold(self.constant, |acc, &(v, c)| acc + c * assign[v as usize])
    }

    /// Replaces each variable `v` with `subs[v]` when present.
    pub fn substitute(&self, subs: &[Option<Affine>]) -> Affine {
        let mut out = Affine::constant(self.constant);
        for &(v, c) in &self.terms {
            match subs.get(v as usize).and_then(|s| s.as_ref()) {
                Some(e) => {
                    out.constant += c * e.constant;
                    for &(w, d) in &e.terms {
                        out.add_term(w, c * d);
                    }
                }
                None => out.add_term(v, c),
            }
        }
        out
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> Affine {
        Affine::from_terms(self.constant, self.terms.iter().map(|&(v, c)| (f(v), c)))
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.terms.iter().map(|t| t.0)
    }

    pub fn fmt_with(&self, names: &dyn Fn(Var) -> String) -> String {
        let mut s = String::new();
        for (k, &(v, c)) in self.terms.iter().enumerate() {
            let name = names(v);
            match (k, c) {
                (0, 1) => s.push_str(&name),
                (0, -1) => s.push_str(&format!("-{name}")),
                (0, c) => s.push_str(&format!("{c}*{name}")),
                (_, 1) => s.push_str(&format!("+{name}")),
                (_, -1) => s.push_str(&format!("-{name}")),
                (_, c) if c > 0 => s.push_str(&format!("+{c}*{name}")),
                (_, c) => s.push_str(&format!("{c}*{name}")),
            }
        }
        if s.is_empty() {
            return self.constant.to_string();
        }
        if self.constant > 0 {
            s.push_str(&format!("+{}", self.constant));
        } else if self.constant < 0 {
            s.push_str(&self.constant.to_string());
        }
        s
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, rhs: &Affine) -> Affine {
        let mut out = self.clone();
        out.constant += rhs.constant;
        for &(v, c) in &rhs.terms {
            out.add_term(v, c);
        }
        out
    }
}

impl Add for Affine {
    type Output = Affine;
    fn add(self, rhs: Affine) -> Affine {
        &self + &rhs
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, rhs: &Affine) -> Affine {
        self + &rhs.scale(-1)
    }
}

impl Sub for Affine {
    type Output = Affine;
    fn sub(self, rhs: Affine) -> Affine {
        &self - &rhs
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        self.scale(-1)
    }
}

impl Neg for Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        self.scale(-1)
    }
}

impl From<i64> for Affine {
    fn from(c: i64) -> Self {
        Affine::constant(c)
    }
}

/// A monomial as sorted `(var, exponent)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[(Var, u16); 3]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        let mut m = SmallVec::new();
        m.push((v, 1));
        Monomial(m)
    }

    pub fn factors(&self) -> &[(Var, u16)] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: SmallVec<[(Var, u16); 3]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn from_factors(mut f: Vec<(Var, u16)>) -> Monomial {
        f.sort();
        let mut m = Monomial::one();
        for (v, e) in f {
            if e > 0 {
                let mut single = SmallVec::new();
                single.push((v, e));
                m = m.mul(&Monomial(single));
            }
        }
        m
    }
}

/// A polynomial with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_monomial(Monomial::one(), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(Scalar::int(c))
    }

    pub fn one() -> Self {
        Poly::int(1)
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.add_monomial(Monomial::var(v), Scalar::one());
        p
    }

    pub fn from_affine(a: &Affine) -> Self {
        let mut p = Poly::int(a.constant_term());
        for &(v, c) in a.terms() {
            p.add_monomial(Monomial::var(v), Scalar::int(c));
        }
        p
    }

    pub fn add_monomial(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, k: &Scalar) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn eval(&self, assign: &[i64]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v: Option<i128> = Some(1);
            for &(x, e) in m.factors() {
                for _ in 0..e {
                    v = v.and_then(|v| v.checked_mul(assign[x as usize] as i128));
                }
            }
            let term = match v {
                Some(v) => Scalar::from_i128_int(v),
                None => m
                    .factors()
                    .iter()
                    .map(|&(x, e)| Scalar::int(assign[x as usize]).pow(e as u32))
                    .fold(Scalar::one(), |a, b| a * b),
            };
            acc += &(c * &term);
        }
        acc
    }

    /// Substitutes affine expressions for variables; `None` leaves a variable alone.
    pub fn substitute(&self, subs: &[Option<Affine>]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for &(v, e) in m.factors() {
                let base = match subs.get(v as usize).and_then(|s| s.as_ref()) {
                    Some(a) => Poly::from_affine(a),
                    None => Poly::var(v),
                };
                for _ in 0..e {
                    term = &term * &base;
                }
            }
            out = &out + &term;
        }
        out
    }

    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let renamed = Monomial::from_factors(m.factors().iter().map(|&(v, e)| (f(v), e)).collect());
            out.add_monomial(renamed, c.clone());
        }
        out
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.factors().iter().map(|f| f.0)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn fmt_with(&self, names: &dyn Fn(Var) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .factors()
                .iter()
                .map(|&(v, e)| if e == 1 { names(v) } else { format!("{}^{e}", names(v)) })
                .collect();
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            if !s.is_empty() {
                s.push(if neg { '-' } else { '+' });
            } else if neg {
                s.push('-');
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_monomial(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_monomial(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::int(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_monomial(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|v| format!("v{v}")))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&|v| format!("v{v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_arith() {
        let i = Affine::var(0);
        let j = Affine::var(1);
        let e = &(&i + &j).offset(-1) - &j;
        assert_eq!(e, i.offset(-1));
        assert_eq!(e.eval(&[5, 9]), 4);
        let s = (&i + &j).substitute(&[None, Some(Affine::var(0).scale(-1).offset(2))]);
        assert_eq!(s.as_constant(), Some(2));
    }

    #[test]
    fn poly_eval_and_substitute() {
        // (i + j - 1) at i=2, j=1
        let p = Poly::from_affine(&Affine::from_terms(-1, [(0, 1), (1, 1)]));
        assert_eq!(p.eval(&[2, 1]), Scalar::int(2));
        let sq = &p * &p;
        assert_eq!(sq.eval(&[2, 1]), Scalar::int(4));
        let sub = sq.substitute(&[Some(Affine::constant(1)), None]);
        assert_eq!(sub.eval(&[0, 3]), Scalar::int(9));
        assert_eq!(sub.vars(), vec![1]);
    }

    #[test]
    fn poly_display() {
        let p = &Poly::from_affine(&Affine::from_terms(-1, [(0, 2), (1, 1)])) * &Poly::var(0);
        let names = |v: Var| ["i", "j"][v as usize].to_string();
        assert_eq!(p.fmt_with(&names), "-i+i*j+2*i^2");
    }

    #[test]
    fn eval_overflow_is_exact() {
        let p = &(&Poly::var(0) * &Poly::var(0)) * &(&Poly::var(0) * &Poly::var(0));
        let x = 1i64 << 40;
        let expect = Scalar::int(x).pow(4);
        assert_eq!(p.eval(&[x]), expect);
    }
}
