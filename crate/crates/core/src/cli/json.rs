//! JSON documents: scalars are strings `"num/den"` (integers print without a
//! denominator), keys are tagged objects, tensors are arrays of
//! `[key..., coeff]` rows, templates are `{vars, coeff, keys}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::doubles::PermDouble;
use crate::error::{Error, Result};
use crate::families::finite::{AlgebraKind, Table};
use crate::families::{FiniteAlgebra, FiniteCoproduct};
use crate::kernel::linalg::Matrix;
use crate::kernel::{Affine, BasisKey, KeyPattern, Scalar, TemplateSeries, Tensor, Var};

/// A pattern with its integer slots as affine strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "t")]
pub enum PatternJson {
    Tee { i: String },
    Ess { i: String },
    Mono { i1: String, i2: String, dir: u8 },
    WnMono { exps: Vec<String>, dir: u8 },
    Fin { space: String, i: u32 },
    Pair { l: Box<PatternJson>, r: Box<PatternJson> },
}

impl PatternJson {
    pub fn from_pattern(p: &KeyPattern, names: &dyn Fn(Var) -> String) -> Self {
        let a = |x: &Affine| x.fmt_with(names);
        match p {
            KeyPattern::Tee(x) => PatternJson::Tee { i: a(x) },
            KeyPattern::Ess(x) => PatternJson::Ess { i: a(x) },
            KeyPattern::Mono(x, y, d) => PatternJson::Mono { i1: a(x), i2: a(y), dir: *d },
            KeyPattern::WnMono(es, d) => PatternJson::WnMono { exps: es.iter().map(a).collect(), dir: *d },
            KeyPattern::Fin(s, i) => PatternJson::Fin { space: s.to_string(), i: *i },
            KeyPattern::Pair(l, r) => PatternJson::Pair {
                l: Box::new(Self::from_pattern(l, names)),
                r: Box::new(Self::from_pattern(r, names)),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateJson {
    pub vars: Vec<String>,
    pub coeff: String,
    pub keys: Vec<PatternJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesJson {
    pub arity: usize,
    pub params: Vec<String>,
    pub templates: Vec<TemplateJson>,
}

impl SeriesJson {
    pub fn new(s: &TemplateSeries) -> Self {
        let names = |v: Var| s.var_name(v);
        let first = s.first_var();
        let templates = s
            .templates()
            .iter()
            .map(|t| TemplateJson {
                vars: (0..t.nvars as Var).map(|v| s.var_name(first + v)).collect(),
                coeff: t.coeff.fmt_with(&names),
                keys: t.keys.iter().map(|k| PatternJson::from_pattern(k, &names)).collect(),
            })
            .collect();
        SeriesJson { arity: s.arity(), params: s.params().to_vec(), templates }
    }
}

/// Rows `[i, j, coeff]` of `Δ(e_k)` per input `k`, in index form.
fn delta_rows(d: &FiniteCoproduct) -> Vec<Vec<(u32, u32, Scalar)>> {
    d.d.iter()
        .map(|m| {
            let mut rows = Vec::new();
            for (i, r) in m.iter().enumerate() {
                for (j, c) in r.iter().enumerate() {
                    if !c.is_zero() {
                        rows.push((i as u32, j as u32, c.clone()));
                    }
                }
            }
            rows
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraJson {
    pub id: String,
    pub n: usize,
    pub kind: AlgebraKind,
    pub labels: Vec<String>,
    /// `c[i][j][k]`: coefficient of `e_k` in `e_i e_j`
    pub c: Table,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Vec<(u32, u32, Scalar)>>>,
}

impl AlgebraJson {
    pub fn new(a: &FiniteAlgebra, d: Option<&FiniteCoproduct>) -> Self {
        AlgebraJson {
            id: a.id.to_string(),
            n: a.dim(),
            kind: a.kind,
            labels: a.labels.clone(),
            c: a.c.clone(),
            delta: d.map(delta_rows),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DoubleJson {
    pub id: String,
    pub n: usize,
    pub labels: Vec<String>,
    /// `0` for the base algebra, `1` for its dual, per basis vector
    pub subspace: Vec<u8>,
    pub c: Table,
    pub kappa: Matrix,
}

impl DoubleJson {
    pub fn new(d: &PermDouble) -> Self {
        let n = d.n();
        DoubleJson {
            id: d.algebra.id.to_string(),
            n: 2 * n,
            labels: d.algebra.labels.clone(),
            subspace: (0..2 * n).map(|i| u8::from(i >= n)).collect(),
            c: d.algebra.c.clone(),
            kappa: d.kappa.m.clone(),
        }
    }
}

/// Input of the residual command: an algebra id and a two-tensor whose keys
/// are basis indices or tagged key objects.
#[derive(Clone, Debug, Deserialize)]
pub struct ResidualInput {
    pub algebra: String,
    #[serde(default)]
    pub r: Vec<Vec<Value>>,
    /// `omega_a` or `kappa_p`, for the CYBE residual
    #[serde(default)]
    pub form: Option<String>,
}

impl ResidualInput {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn tensor(&self, alg: &FiniteAlgebra) -> Result<Tensor> {
        let mut terms = Vec::new();
        for row in &self.r {
            let Some((c, keys)) = row.split_last() else {
                return Err(Error::Parse("empty tensor row".into()));
            };
            let c: Scalar = serde_json::from_value(c.clone())?;
            let keys = keys
                .iter()
                .map(|k| match k {
                    Value::Number(n) => {
                        let i = n.as_u64().ok_or_else(|| Error::Parse(format!("bad index {n}")))? as usize;
                        if i >= alg.dim() {
                            return Err(Error::ForeignKey { key: format!("#{i}"), family: alg.id.to_string() });
                        }
                        Ok(alg.key(i))
                    }
                    _ => Ok(serde_json::from_value::<BasisKey>(k.clone())?),
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push((keys, c));
        }
        Ok(Tensor::from_terms(terms))
    }
}

pub fn to_pretty<T: Serialize>(x: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(x)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::catalog;
    use crate::kernel::{Poly, Template};

    #[test]
    fn ex_1p_export_shape() {
        let a = catalog::algebra("ex-1p").unwrap();
        let d = catalog::coproduct("ex-1p").unwrap();
        let v: Value = serde_json::from_str(&to_pretty(&AlgebraJson::new(&a, Some(&d))).unwrap()).unwrap();
        assert_eq!(v["n"], 1);
        assert_eq!(v["c"][0][0][0], "1");
        assert_eq!(v["delta"][0], serde_json::json!([[0, 0, "1"]]));
    }

    #[test]
    fn tensor_rows_round_trip() {
        let (a, r) = catalog::tensor("r-semidirect").unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let input = ResidualInput::parse(&format!(r#"{{"algebra":"ex-semidirect","r":{text}}}"#)).unwrap();
        assert_eq!(input.tensor(&a).unwrap(), r);
        let by_index = ResidualInput::parse(r#"{"algebra":"ex-semidirect","r":[[0,1,"1"],[1,0,"1"]]}"#).unwrap();
        assert_eq!(by_index.tensor(&a).unwrap(), r);
        let half = ResidualInput::parse(r#"{"algebra":"ex-semidirect","r":[[0,1,"1/2"]]}"#).unwrap();
        assert_eq!(half.tensor(&a).unwrap().iter().next().unwrap().1, &"1/2".parse::<Scalar>().unwrap());
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = ResidualInput::parse("{\n  \"algebra\": \"ex-1p\",\n  \"r\": [[0, 0 \"1\"]]\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        let a = catalog::algebra("ex-1p").unwrap();
        let bad = ResidualInput::parse(r#"{"algebra":"ex-1p","r":[[0,5,"1"]]}"#).unwrap();
        assert!(matches!(bad.tensor(&a), Err(Error::ForeignKey { .. })));
    }

    #[test]
    fn template_json() {
        let t = Template::new(1, Poly::var(0), vec![KeyPattern::Tee(Affine::var(0)), KeyPattern::Ess(Affine::var(0).offset(-1))]);
        let s = TemplateSeries::new(2, Vec::new(), vec![t]).unwrap();
        let j = serde_json::to_value(SeriesJson::new(&s)).unwrap();
        assert_eq!(j["templates"][0]["vars"], serde_json::json!(["j"]));
        assert_eq!(j["templates"][0]["coeff"], "j");
        assert_eq!(j["templates"][0]["keys"][1], serde_json::json!({"t": "Ess", "i": "j-1"}));
    }
}
