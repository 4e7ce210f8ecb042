//! Finitely supported linear combinations over ordered keys.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::key::BasisKey;
use super::scalar::Scalar;

/// Sorted, zero-free list of `(key, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K> {
    terms: Vec<(K, Scalar)>,
}

/// A finite linear combination of basis keys.
pub type FormalVector = LinComb<BasisKey>;

/// A finite multi-tensor; every key tuple has the same length.
pub type Tensor = LinComb<Vec<BasisKey>>;

impl<K: Ord + Clone> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: Vec::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LinComb { terms: vec![(k, c)] }
        }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, Scalar::one())
    }

    /// Sums possibly repeated terms.
    pub fn from_terms(it: impl IntoIterator<Item = (K, Scalar)>) -> Self {
        let mut acc: BTreeMap<K, Scalar> = BTreeMap::new();
        for (k, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.entry(k) {
                std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += &c,
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        LinComb { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|t| t.0.cmp(&k)) {
            Ok(pos) => {
                self.terms[pos].1 += &c;
                if self.terms[pos].1.is_zero() {
                    self.terms.remove(pos);
                }
            }
            Err(pos) => self.terms.insert(pos, (k, c)),
        }
    }

    pub fn get(&self, k: &K) -> Scalar {
        match self.terms.binary_search_by(|t| t.0.cmp(k)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter().map(|(k, c)| (k, c))
    }

    pub fn into_terms(self) -> Vec<(K, Scalar)> {
        self.terms
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.iter().map(|t| &t.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(key, c)| (key.clone(), c * k)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Scalar::int(-1))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, &Scalar::int(-1))
    }

    /// `self + k·other`
    pub fn add_scaled(&mut self, other: &Self, k: &Scalar) {
        *self = self.merge(other, k);
    }

    fn merge(&self, other: &Self, k: &Scalar) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let c = &b.1 * k;
                    if !c.is_zero() {
                        out.push((b.0.clone(), c));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a.1 + &(&b.1 * k);
                    if !c.is_zero() {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for b in &other.terms[j..] {
            let c = &b.1 * k;
            if !c.is_zero() {
                out.push((b.0.clone(), c));
            }
        }
        LinComb { terms: out }
    }

    pub fn map_keys<L: Ord + Clone>(&self, f: impl Fn(&K) -> L) -> LinComb<L> {
        LinComb::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Ord + Clone>(&self, f: impl Fn(&K) -> LinComb<L>) -> LinComb<L> {
        let mut parts = Vec::new();
        for (k, c) in &self.terms {
            for (l, d) in f(k).terms {
                parts.push((l, &d * c));
            }
        }
        LinComb::from_terms(parts)
    }

    pub fn filter(&self, pred: impl Fn(&K) -> bool) -> Self {
        LinComb { terms: self.terms.iter().filter(|t| pred(&t.0)).cloned().collect() }
    }
}

impl LinComb<BasisKey> {
    pub fn key(k: BasisKey) -> Self {
        Self::basis(k)
    }
}

impl Tensor {
    /// Tensor product of vectors.
    pub fn outer(parts: &[&FormalVector]) -> Tensor {
        let mut acc: Vec<(Vec<BasisKey>, Scalar)> = vec![(Vec::new(), Scalar::one())];
        for v in parts {
            let mut next = Vec::new();
            for (ks, c) in &acc {
                for (k, d) in v.iter() {
                    let mut ks2 = ks.clone();
                    ks2.push(k.clone());
                    next.push((ks2, c * d));
                }
            }
            acc = next;
        }
        Tensor::from_terms(acc)
    }

    /// Reorders tensor legs: leg `i` of the result is leg `perm[i]` of self.
    pub fn permute(&self, perm: &[usize]) -> Tensor {
        self.map_keys(|ks| perm.iter().map(|&p| ks[p].clone()).collect())
    }

    /// Applies a linear map to one leg.
    pub fn map_leg(&self, leg: usize, f: impl Fn(&BasisKey) -> FormalVector) -> Tensor {
        self.map_linear(|ks| {
            let img = f(&ks[leg]);
            LinComb::from_terms(img.iter().map(|(k, c)| {
                let mut ks2 = ks.clone();
                ks2[leg] = k.clone();
                (ks2, c.clone())
            }))
        })
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){k}")?;
        }
        Ok(())
    }
}

/// Displays tensor key tuples as `a⊗b⊗c`.
pub struct TupleDisplay<'a>(pub &'a [BasisKey]);

impl fmt::Display for TupleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join("⊗"))
    }
}

/// Keys that serialize as a run of basis keys inside `[key..., coeff]`.
pub trait KeyTuple: Ord + Clone {
    fn parts(&self) -> Vec<&BasisKey>;
    fn from_parts(parts: Vec<BasisKey>) -> Option<Self>;
}

impl KeyTuple for BasisKey {
    fn parts(&self) -> Vec<&BasisKey> {
        vec![self]
    }
    fn from_parts(mut parts: Vec<BasisKey>) -> Option<Self> {
        (parts.len() == 1).then(|| parts.pop().unwrap())
    }
}

impl KeyTuple for Vec<BasisKey> {
    fn parts(&self) -> Vec<&BasisKey> {
        self.iter().collect()
    }
    fn from_parts(parts: Vec<BasisKey>) -> Option<Self> {
        Some(parts)
    }
}

struct Row<'a>(Vec<&'a BasisKey>, &'a Scalar);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len() + 1))?;
        for k in &self.0 {
            seq.serialize_element(k)?;
        }
        seq.serialize_element(self.1)?;
        seq.end()
    }
}

impl<K: KeyTuple> Serialize for LinComb<K> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&Row(k.parts(), c))?;
        }
        seq.end()
    }
}

impl<'de, K: KeyTuple> Deserialize<'de> for LinComb<K> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let mut terms = Vec::new();
        for mut row in rows {
            let c = row.pop().ok_or_else(|| D::Error::custom("empty tensor row"))?;
            let c: Scalar = serde_json::from_value(c).map_err(D::Error::custom)?;
            let parts: Vec<BasisKey> = row
                .into_iter()
                .map(serde_json::from_value)
                .collect::<Result<_, _>>()
                .map_err(D::Error::custom)?;
            let k = K::from_parts(parts).ok_or_else(|| D::Error::custom("wrong key arity"))?;
            terms.push((k, c));
        }
        Ok(LinComb::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(i64, i64)]) -> FormalVector {
        LinComb::from_terms(terms.iter().map(|&(i, c)| (BasisKey::tee(i), Scalar::int(c))))
    }

    #[test]
    fn zero_free_and_sorted() {
        let a = v(&[(3, 1), (1, 2), (3, -1)]);
        assert_eq!(a.len(), 1);
        assert_eq!(a.get(&BasisKey::tee(1)), Scalar::int(2));
        let b = a.sub(&a);
        assert!(b.is_zero());
        let c = v(&[(2, 1)]).add(&v(&[(1, 1)]));
        let keys: Vec<_> = c.keys().cloned().collect();
        assert_eq!(keys, vec![BasisKey::tee(1), BasisKey::tee(2)]);
    }

    #[test]
    fn tensor_ops() {
        let a = v(&[(1, 1), (2, 2)]);
        let t = Tensor::outer(&[&a, &a]);
        assert_eq!(t.len(), 4);
        assert_eq!(t.get(&vec![BasisKey::tee(1), BasisKey::tee(2)]), Scalar::int(2));
        let flipped = t.permute(&[1, 0]);
        assert_eq!(flipped, t);
        let doubled = t.map_leg(0, |k| FormalVector::term(k.clone(), Scalar::int(2)));
        assert_eq!(doubled, t.scale(&Scalar::int(2)));
    }

    #[test]
    fn json_round_trip() {
        let t = Tensor::outer(&[&v(&[(1, 1)]), &v(&[(-2, 3)])]);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"[[{"t":"Tee","i":1},{"t":"Tee","i":-2},"3"]]"#);
        assert_eq!(serde_json::from_str::<Tensor>(&s).unwrap(), t);
    }
}
