//! Basis keys of the graded families and their symbolic patterns.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::poly::{Affine, Var};

/// Identifier of a finite-dimensional space, e.g. a catalog algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceId(Arc<str>);

impl SpaceId {
    pub fn new(s: &str) -> Self {
        SpaceId(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for SpaceId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for SpaceId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(SpaceId::new(&String::deserialize(d)?))
    }
}

/// A basis element. The derived order (family tag first, then integer slots
/// lexicographically) is the canonical order used everywhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "t")]
pub enum BasisKey {
    /// `t^i`
    Tee { i: i64 },
    /// `s^i`
    Ess { i: i64 },
    /// `x1^i1 x2^i2 ∂_dir`, dir ∈ {1, 2}
    Mono { i1: i64, i2: i64, dir: u8 },
    /// `x^exps ∂_dir` in n variables, dir ∈ 1..=n
    WnMono { exps: SmallVec<[i64; 3]>, dir: u8 },
    /// basis vector `i` of a finite space
    Fin { space: SpaceId, i: u32 },
    /// pure tensor of two keys
    Pair { l: Box<BasisKey>, r: Box<BasisKey> },
}

impl BasisKey {
    pub fn tee(i: i64) -> Self {
        BasisKey::Tee { i }
    }

    pub fn ess(i: i64) -> Self {
        BasisKey::Ess { i }
    }

    pub fn mono(i1: i64, i2: i64, dir: u8) -> Self {
        BasisKey::Mono { i1, i2, dir }
    }

    pub fn wn(exps: &[i64], dir: u8) -> Self {
        BasisKey::WnMono { exps: exps.iter().copied().collect(), dir }
    }

    pub fn fin(space: &SpaceId, i: u32) -> Self {
        BasisKey::Fin { space: space.clone(), i }
    }

    pub fn pair(l: BasisKey, r: BasisKey) -> Self {
        BasisKey::Pair { l: Box::new(l), r: Box::new(r) }
    }

    /// Degree in the family grading; finite keys have degree 0.
    pub fn degree(&self) -> i64 {
        match self {
            BasisKey::Tee { i } | BasisKey::Ess { i } => i - 1,
            BasisKey::Mono { i1, i2, .. } => i1 + i2 + 1,
            BasisKey::WnMono { exps, .. } => exps.iter().sum::<i64>() - 1,
            BasisKey::Fin { .. } => 0,
            BasisKey::Pair { l, r } => l.degree() + r.degree(),
        }
    }

    /// Largest absolute value of an integer slot (0 for finite keys).
    pub fn radius(&self) -> i64 {
        match self {
            BasisKey::Tee { i } | BasisKey::Ess { i } => i.abs(),
            BasisKey::Mono { i1, i2, .. } => i1.abs().max(i2.abs()),
            BasisKey::WnMono { exps, .. } => exps.iter().map(|e| e.abs()).max().unwrap_or(0),
            BasisKey::Fin { .. } => 0,
            BasisKey::Pair { l, r } => l.radius().max(r.radius()),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            BasisKey::Tee { .. } | BasisKey::Ess { .. } => "Tee/Ess",
            BasisKey::Mono { .. } => "Mono",
            BasisKey::WnMono { .. } => "WnMono",
            BasisKey::Fin { .. } => "Fin",
            BasisKey::Pair { .. } => "Pair",
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Tee { i } => write!(f, "t^{i}"),
            BasisKey::Ess { i } => write!(f, "s^{i}"),
            BasisKey::Mono { i1, i2, dir } => write!(f, "x1^{i1}x2^{i2}d{dir}"),
            BasisKey::WnMono { exps, dir } => {
                let e: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                write!(f, "x^({})d{dir}", e.join(","))
            }
            BasisKey::Fin { space, i } => write!(f, "{space}#{i}"),
            BasisKey::Pair { l, r } => write!(f, "{l}.{r}"),
        }
    }
}

/// A key whose integer slots are affine expressions in template variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KeyPattern {
    Tee(Affine),
    Ess(Affine),
    Mono(Affine, Affine, u8),
    WnMono(SmallVec<[Affine; 3]>, u8),
    Fin(SpaceId, u32),
    Pair(Box<KeyPattern>, Box<KeyPattern>),
}

impl KeyPattern {
    pub fn pair(l: KeyPattern, r: KeyPattern) -> Self {
        KeyPattern::Pair(Box::new(l), Box::new(r))
    }

    pub fn from_key(k: &BasisKey) -> Self {
        match k {
            BasisKey::Tee { i } => KeyPattern::Tee(Affine::constant(*i)),
            BasisKey::Ess { i } => KeyPattern::Ess(Affine::constant(*i)),
            BasisKey::Mono { i1, i2, dir } => {
                KeyPattern::Mono(Affine::constant(*i1), Affine::constant(*i2), *dir)
            }
            BasisKey::WnMono { exps, dir } => {
                KeyPattern::WnMono(exps.iter().map(|e| Affine::constant(*e)).collect(), *dir)
            }
            BasisKey::Fin { space, i } => KeyPattern::Fin(space.clone(), *i),
            BasisKey::Pair { l, r } => KeyPattern::pair(Self::from_key(l), Self::from_key(r)),
        }
    }

    /// The concrete key when all slots are constant.
    pub fn as_key(&self) -> Option<BasisKey> {
        Some(match self {
            KeyPattern::Tee(a) => BasisKey::tee(a.as_constant()?),
            KeyPattern::Ess(a) => BasisKey::ess(a.as_constant()?),
            KeyPattern::Mono(a, b, d) => BasisKey::mono(a.as_constant()?, b.as_constant()?, *d),
            KeyPattern::WnMono(es, d) => BasisKey::WnMono {
                exps: es.iter().map(|e| e.as_constant()).collect::<Option<_>>()?,
                dir: *d,
            },
            KeyPattern::Fin(s, i) => BasisKey::fin(s, *i),
            KeyPattern::Pair(l, r) => BasisKey::pair(l.as_key()?, r.as_key()?),
        })
    }

    pub fn instantiate(&self, assign: &[i64]) -> BasisKey {
        match self {
            KeyPattern::Tee(a) => BasisKey::tee(a.eval(assign)),
            KeyPattern::Ess(a) => BasisKey::ess(a.eval(assign)),
            KeyPattern::Mono(a, b, d) => BasisKey::mono(a.eval(assign), b.eval(assign), *d),
            KeyPattern::WnMono(es, d) => {
                BasisKey::WnMono { exps: es.iter().map(|e| e.eval(assign)).collect(), dir: *d }
            }
            KeyPattern::Fin(s, i) => BasisKey::fin(s, *i),
            KeyPattern::Pair(l, r) => BasisKey::pair(l.instantiate(assign), r.instantiate(assign)),
        }
    }

    /// Integer slots in canonical order.
    pub fn slots(&self, out: &mut Vec<Affine>) {
        match self {
            KeyPattern::Tee(a) | KeyPattern::Ess(a) => out.push(a.clone()),
            KeyPattern::Mono(a, b, _) => {
                out.push(a.clone());
                out.push(b.clone());
            }
            KeyPattern::WnMono(es, _) => out.extend(es.iter().cloned()),
            KeyPattern::Fin(..) => {}
            KeyPattern::Pair(l, r) => {
                l.slots(out);
                r.slots(out);
            }
        }
    }

    pub fn map_slots(&self, f: &impl Fn(&Affine) -> Affine) -> KeyPattern {
        match self {
            KeyPattern::Tee(a) => KeyPattern::Tee(f(a)),
            KeyPattern::Ess(a) => KeyPattern::Ess(f(a)),
            KeyPattern::Mono(a, b, d) => KeyPattern::Mono(f(a), f(b), *d),
            KeyPattern::WnMono(es, d) => KeyPattern::WnMono(es.iter().map(f).collect(), *d),
            KeyPattern::Fin(s, i) => KeyPattern::Fin(s.clone(), *i),
            KeyPattern::Pair(l, r) => KeyPattern::pair(l.map_slots(f), r.map_slots(f)),
        }
    }

    pub fn substitute(&self, subs: &[Option<Affine>]) -> KeyPattern {
        self.map_slots(&|a| a.substitute(subs))
    }

    pub fn rename(&self, f: &impl Fn(Var) -> Var) -> KeyPattern {
        self.map_slots(&|a| a.rename(f))
    }

    /// Structural match against a concrete key. On success pushes the slot
    /// equations `slot == value` and returns true.
    pub fn match_key(&self, key: &BasisKey, eqs: &mut Vec<(Affine, i64)>) -> bool {
        match (self, key) {
            (KeyPattern::Tee(a), BasisKey::Tee { i }) | (KeyPattern::Ess(a), BasisKey::Ess { i }) => {
                eqs.push((a.clone(), *i));
                true
            }
            (KeyPattern::Mono(a, b, d), BasisKey::Mono { i1, i2, dir }) if d == dir => {
                eqs.push((a.clone(), *i1));
                eqs.push((b.clone(), *i2));
                true
            }
            (KeyPattern::WnMono(es, d), BasisKey::WnMono { exps, dir })
                if d == dir && es.len() == exps.len() =>
            {
                eqs.extend(es.iter().cloned().zip(exps.iter().copied()));
                true
            }
            (KeyPattern::Fin(s, i), BasisKey::Fin { space, i: j }) => s == space && i == j,
            (KeyPattern::Pair(l, r), BasisKey::Pair { l: kl, r: kr }) => {
                l.match_key(kl, eqs) && r.match_key(kr, eqs)
            }
            _ => false,
        }
    }

    pub fn fmt_with(&self, names: &dyn Fn(Var) -> String) -> String {
        match self {
            KeyPattern::Tee(a) => format!("t^{{{}}}", a.fmt_with(names)),
            KeyPattern::Ess(a) => format!("s^{{{}}}", a.fmt_with(names)),
            KeyPattern::Mono(a, b, d) => {
                format!("x1^{{{}}}x2^{{{}}}d{d}", a.fmt_with(names), b.fmt_with(names))
            }
            KeyPattern::WnMono(es, d) => {
                let e: Vec<String> = es.iter().map(|e| e.fmt_with(names)).collect();
                format!("x^({})d{d}", e.join(","))
            }
            KeyPattern::Fin(s, i) => format!("{s}#{i}"),
            KeyPattern::Pair(l, r) => format!("{}.{}", l.fmt_with(names), r.fmt_with(names)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(BasisKey::tee(3).degree(), 2);
        assert_eq!(BasisKey::ess(0).degree(), -1);
        assert_eq!(BasisKey::mono(1, -2, 1).degree(), 0);
        assert_eq!(BasisKey::wn(&[2, 1], 2).degree(), 2);
    }

    #[test]
    fn canonical_order_tags_first() {
        let mut keys = vec![BasisKey::ess(-5), BasisKey::mono(0, 0, 1), BasisKey::tee(9), BasisKey::tee(-1)];
        keys.sort();
        assert_eq!(
            keys,
            vec![BasisKey::tee(-1), BasisKey::tee(9), BasisKey::ess(-5), BasisKey::mono(0, 0, 1)]
        );
    }

    #[test]
    fn json_shape() {
        let k = BasisKey::tee(2);
        assert_eq!(serde_json::to_string(&k).unwrap(), r#"{"t":"Tee","i":2}"#);
        let p = BasisKey::pair(BasisKey::fin(&SpaceId::new("ex-1p"), 0), BasisKey::ess(-1));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<BasisKey>(&s).unwrap(), p);
    }

    #[test]
    fn pattern_match() {
        let p = KeyPattern::Tee(Affine::var(0).offset(-1));
        let mut eqs = Vec::new();
        assert!(p.match_key(&BasisKey::tee(4), &mut eqs));
        assert_eq!(eqs, vec![(Affine::var(0).offset(-1), 4)]);
        assert!(!p.match_key(&BasisKey::ess(4), &mut eqs));
        assert_eq!(p.instantiate(&[5]), BasisKey::tee(4));
    }
}
