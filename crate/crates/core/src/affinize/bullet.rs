use std::sync::Arc;

use super::Order;
use crate::error::{Error, Result};
use crate::families::Coproduct;
use crate::kernel::{BasisKey, KeyPattern, Poly, Template, TemplateSeries, Var};

/// `δ(x⊗y) = (id − σ̂)(Δ_left(x) • Δ_right(y))` on `Pair` keys, where `•`
/// pairs the legs: `(x1⊗x2) • (y1⊗y2) = x1y1 ⊗ x2y2`.
#[derive(Clone)]
pub struct BulletCobracket {
    pub left: Arc<dyn Coproduct>,
    pub right: Arc<dyn Coproduct>,
    pub order: Order,
}

fn two_legs(ts: &[Template], who: &str) -> Result<()> {
    if ts.iter().any(|t| t.keys.len() != 2) {
        return Err(Error::IllPosedTemplate(format!("{who} must produce two-leg templates")));
    }
    Ok(())
}

impl Coproduct for BulletCobracket {
    fn name(&self) -> String {
        format!("({}•{})", self.left.name(), self.right.name())
    }

    fn pieces(&self, key: &KeyPattern, next: Var) -> Result<Vec<Template>> {
        let KeyPattern::Pair(x, y) = key else {
            return Err(Error::ForeignKey { key: key.fmt_with(&|v| format!("v{v}")), family: self.name() });
        };
        let lt = self.left.pieces(x, next)?;
        two_legs(&lt, "left coproduct")?;
        let mut out = Vec::new();
        for a in &lt {
            let rt = self.right.pieces(y, next + a.nvars as Var)?;
            two_legs(&rt, "right coproduct")?;
            for b in &rt {
                let coeff = &a.coeff * &b.coeff;
                let nvars = a.nvars + b.nvars;
                let k0 = KeyPattern::pair(a.keys[0].clone(), b.keys[0].clone());
                let k1 = KeyPattern::pair(a.keys[1].clone(), b.keys[1].clone());
                out.push(Template::new(nvars, &coeff * &Poly::int(-1), vec![k1.clone(), k0.clone()]));
                out.push(Template::new(nvars, coeff, vec![k0, k1]));
            }
        }
        Ok(out)
    }
}

/// `δ(key)` for the • cobracket of two coproducts.
pub fn delta_bullet(
    left: Arc<dyn Coproduct>,
    right: Arc<dyn Coproduct>,
    order: Order,
    key: &BasisKey,
) -> Result<TemplateSeries> {
    BulletCobracket { left, right, order }.series(key)
}
