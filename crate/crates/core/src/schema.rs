//! JSON interchange formats. Every object is integers only; maps keyed by
//! element index serialize with string keys in ascending order.

use std::collections::BTreeMap;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::FiniteGroup;
use crate::monoid::CommMonoid;
use crate::partial_module::{PartialGModule, SModule};
use crate::schur::{FiniteField, KLinearModule};
use crate::semigroup::InvSemigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    /// Malformed JSON or a shape the schema does not admit.
    #[error("parse error: {0}")]
    Parse(String),
    /// Well-formed input that fails the algebraic axioms of `object`.
    #[error("invalid {object}: {detail}")]
    Invalid { object: &'static str, detail: String },
}

fn invalid(object: &'static str, detail: impl ToString) -> SchemaError {
    SchemaError::Invalid { object, detail: detail.to_string() }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, SchemaError> {
    serde_json::from_str(text).map_err(|e| SchemaError::Parse(e.to_string()))
}

/// `{"n": int, "table": [[int]]}` shared by groups, monoids and semigroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableJson {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

impl TableJson {
    pub fn new(table: &[Vec<usize>]) -> Self {
        Self { n: table.len(), table: table.to_vec() }
    }

    fn checked(self, object: &'static str) -> Result<Vec<Vec<usize>>, SchemaError> {
        if self.n == 0 || self.table.len() != self.n || self.table.iter().any(|r| r.len() != self.n) {
            return Err(SchemaError::Parse(format!("{object}: table must be n rows of length n with n > 0")));
        }
        if self.table.iter().flatten().any(|&v| v >= self.n) {
            return Err(SchemaError::Parse(format!("{object}: table entries must lie in 0..n")));
        }
        Ok(self.table)
    }

    pub fn group(self) -> Result<FiniteGroup, SchemaError> {
        FiniteGroup::from_table(self.checked("group")?).map_err(|e| invalid("group", e))
    }

    pub fn monoid(self) -> Result<CommMonoid, SchemaError> {
        CommMonoid::from_table(self.checked("monoid")?).map_err(|e| invalid("monoid", e))
    }

    pub fn semigroup(self) -> Result<InvSemigroup, SchemaError> {
        InvSemigroup::validate(self.checked("invsemigroup")?).map_err(|e| invalid("invsemigroup", e))
    }
}

/// Partial map on `0..len` from `[[from, to]]` pairs.
fn pairs_to_partial(pairs: &[[usize; 2]], len: usize, what: &str) -> Result<Vec<Option<usize>>, SchemaError> {
    let mut out = vec![None; len];
    for &[from, to] in pairs {
        if from >= len || to >= len {
            return Err(SchemaError::Parse(format!("{what}: pair [{from}, {to}] out of range")));
        }
        if out[from].replace(to).is_some() {
            return Err(SchemaError::Parse(format!("{what}: {from} mapped twice")));
        }
    }
    Ok(out)
}

fn partial_to_pairs(row: &[Option<usize>]) -> Vec<[usize; 2]> {
    row.iter().enumerate().filter_map(|(a, b)| b.map(|b| [a, b])).collect()
}

fn keyed<T: Clone>(map: &BTreeMap<usize, T>, n: usize, what: &str) -> Result<Vec<T>, SchemaError> {
    if map.len() != n || map.keys().enumerate().any(|(i, &k)| i != k) {
        return Err(SchemaError::Parse(format!("{what}: need exactly one entry per index 0..{n}")));
    }
    Ok(map.values().cloned().collect())
}

/// `{"group"?, "monoid", "unit_idems": {x: e}, "theta": {x: [[from, to]]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<TableJson>,
    pub monoid: TableJson,
    pub unit_idems: BTreeMap<usize, usize>,
    pub theta: BTreeMap<usize, Vec<[usize; 2]>>,
}

impl PModuleJson {
    /// `group` overrides a missing `"group"` key; one of the two must be present.
    pub fn build(self, group: Option<&FiniteGroup>) -> Result<PartialGModule, SchemaError> {
        let g = match (self.group, group) {
            (Some(t), _) => t.group()?,
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(SchemaError::Parse("pmodule: no group given".into())),
        };
        let a = self.monoid.monoid()?;
        let n = g.order();
        let unit_idems = keyed(&self.unit_idems, n, "unit_idems")?;
        let theta = keyed(&self.theta, n, "theta")?
            .iter()
            .enumerate()
            .map(|(x, pairs)| pairs_to_partial(pairs, a.len(), &format!("theta[{x}]")))
            .collect::<Result<Vec<_>, _>>()?;
        PartialGModule::new(g, a, unit_idems, theta).map_err(|e| invalid("pmodule", e))
    }
}

impl From<&PartialGModule> for PModuleJson {
    fn from(m: &PartialGModule) -> Self {
        Self {
            group: Some(TableJson::new(m.group().table())),
            monoid: TableJson::new(m.monoid().table()),
            unit_idems: m.unit_idems().iter().copied().enumerate().collect(),
            theta: m.theta_table().iter().map(|r| partial_to_pairs(r)).enumerate().collect(),
        }
    }
}

/// `{"semigroup", "monoid", "lambda": {s: [int]}, "alpha": {e: a}}`; `alpha`
/// is keyed by the idempotents of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SModuleJson {
    pub semigroup: TableJson,
    pub monoid: TableJson,
    pub lambda: BTreeMap<usize, Vec<usize>>,
    pub alpha: BTreeMap<usize, usize>,
}

impl SModuleJson {
    pub fn build(self) -> Result<SModule, SchemaError> {
        let s = self.semigroup.semigroup()?;
        let a = self.monoid.monoid()?;
        let lambda = keyed(&self.lambda, s.len(), "lambda")?;
        let mut alpha = vec![None; s.len()];
        for (&e, &v) in &self.alpha {
            if e >= s.len() || !s.is_idempotent(e) {
                return Err(SchemaError::Parse(format!("alpha: {e} is not an idempotent of S")));
            }
            alpha[e] = Some(v);
        }
        if s.idempotents().iter().any(|&e| alpha[e].is_none()) {
            return Err(SchemaError::Parse("alpha: every idempotent of S needs a value".into()));
        }
        SModule::new(s, a, lambda, alpha).map_err(|e| invalid("smodule", e))
    }
}

impl From<&SModule> for SModuleJson {
    fn from(m: &SModule) -> Self {
        Self {
            semigroup: TableJson::new(m.semigroup().table()),
            monoid: TableJson::new(m.monoid().table()),
            lambda: m.lambda_table().iter().cloned().enumerate().collect(),
            alpha: m.alpha_table().iter().enumerate().filter_map(|(e, a)| a.map(|a| (e, a))).collect(),
        }
    }
}

/// `{"group"?, "monoid", "action": [[int]]}`: a global module, row `x` the automorphism `θ_x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GModuleJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<TableJson>,
    pub monoid: TableJson,
    pub action: Vec<Vec<usize>>,
}

impl GModuleJson {
    pub fn build(self, group: Option<&FiniteGroup>) -> Result<PartialGModule, SchemaError> {
        let g = match (self.group, group) {
            (Some(t), _) => t.group()?,
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(SchemaError::Parse("gmodule: no group given".into())),
        };
        let a = self.monoid.monoid()?;
        if self.action.len() != g.order() || self.action.iter().any(|r| r.len() != a.len() || r.iter().any(|&b| b >= a.len())) {
            return Err(SchemaError::Parse("gmodule: action must be |G| rows of length |A|".into()));
        }
        PartialGModule::global(g, a, self.action).map_err(|e| invalid("gmodule", e))
    }
}

/// `{"module": pmodule, "field": q, "scalar": [[int]]}` with row `k` the map `a ↦ k·a`
/// (`k = 0` is zero, `k ≥ 1` is `α^{k−1}` for the fixed primitive `α`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KModuleJson {
    pub module: PModuleJson,
    pub field: usize,
    pub scalar: Vec<Vec<usize>>,
}

impl KModuleJson {
    pub fn build(self, group: Option<&FiniteGroup>) -> Result<KLinearModule, SchemaError> {
        let m = self.module.build(group)?;
        let field = FiniteField::new(self.field).map_err(|e| invalid("kmodule", e))?;
        KLinearModule::new(m, field, self.scalar).map_err(|e| invalid("kmodule", e))
    }
}

impl From<&KLinearModule> for KModuleJson {
    fn from(k: &KLinearModule) -> Self {
        Self {
            module: k.module().into(),
            field: k.field().order(),
            scalar: k.scalar_table().to_vec(),
        }
    }
}

pub fn parse_group(text: &str) -> Result<FiniteGroup, SchemaError> {
    parse::<TableJson>(text)?.group()
}

pub fn parse_semigroup(text: &str) -> Result<InvSemigroup, SchemaError> {
    parse::<TableJson>(text)?.semigroup()
}

pub fn parse_pmodule(text: &str, group: Option<&FiniteGroup>) -> Result<PartialGModule, SchemaError> {
    parse::<PModuleJson>(text)?.build(group)
}

pub fn parse_smodule(text: &str) -> Result<SModule, SchemaError> {
    parse::<SModuleJson>(text)?.build()
}

pub fn parse_gmodule(text: &str, group: Option<&FiniteGroup>) -> Result<PartialGModule, SchemaError> {
    parse::<GModuleJson>(text)?.build(group)
}

pub fn parse_kmodule(text: &str, group: Option<&FiniteGroup>) -> Result<KLinearModule, SchemaError> {
    parse::<KModuleJson>(text)?.build(group)
}

/// Compact JSON with keys in ascending order.
pub fn to_json<T: Serialize>(value: &T) -> String {
    // `serde_json::Value` maps are ordered, which sorts struct fields too.
    let v = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string(&v).expect("values serialize")
}

/// Pretty JSON with keys in ascending order.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report types serialize");
    serde_json::to_string_pretty(&v).expect("values serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pmodule_parses_and_writes_back() {
        let m = fixtures::sign_module();
        let text = to_json(&PModuleJson::from(&m));
        assert_eq!(parse_pmodule(&text, None).unwrap(), m);
        assert!(text.starts_with("{\"group\":"));
        let k = fixtures::gf3_partial_module();
        assert_eq!(parse_kmodule(&to_json(&KModuleJson::from(&k)), None).unwrap(), k);
    }

    #[test]
    fn pmodule_without_group_uses_supplied_group() {
        let text = r#"{"monoid":{"n":2,"table":[[0,1],[1,0]]},"unit_idems":{"0":0,"1":0},"theta":{"0":[[0,0],[1,1]],"1":[[0,0],[1,1]]}}"#;
        assert!(matches!(parse_pmodule(text, None), Err(SchemaError::Parse(_))));
        let m = parse_pmodule(text, Some(&fixtures::z2())).unwrap();
        assert_eq!(m, PartialGModule::trivial(fixtures::z2(), CommMonoid::cyclic_group(2)));
    }

    #[test]
    fn parse_and_validation_errors_are_distinct() {
        assert!(matches!(parse_group("{\"n\":2}"), Err(SchemaError::Parse(_))));
        assert!(matches!(parse_group("{\"n\":2,\"table\":[[0,1],[1,2]]}"), Err(SchemaError::Parse(_))));
        assert!(matches!(parse_group("{\"n\":2,\"table\":[[0,1],[0,1]]}"), Err(SchemaError::Invalid { object: "group", .. })));
        // θ_g is defined outside 1_{g⁻¹}A = {z}.
        let bad = r#"{"group":{"n":2,"table":[[0,1],[1,0]]},"monoid":{"n":2,"table":[[0,1],[1,1]]},
            "unit_idems":{"0":0,"1":1},"theta":{"0":[[0,0],[1,1]],"1":[[0,1],[1,0]]}}"#;
        assert!(matches!(parse_pmodule(bad, None), Err(SchemaError::Invalid { .. })));
    }

    #[test]
    fn smodule_and_gmodule() {
        let s = fixtures::z2_with_zero();
        let sm = SModule::self_module(&s).unwrap();
        assert_eq!(parse_smodule(&to_json(&SModuleJson::from(&sm))).unwrap(), sm);
        let text = r#"{"group":{"n":2,"table":[[0,1],[1,0]]},"monoid":{"n":3,"table":[[0,1,2],[1,2,0],[2,0,1]]},"action":[[0,1,2],[0,2,1]]}"#;
        let m = parse_gmodule(text, None).unwrap();
        assert_eq!(m.theta(1, 1), 2);
        let wrong = r#"{"monoid":{"n":3,"table":[[0,1,2],[1,2,0],[2,0,1]]},"action":[[0,1,2],[1,2,0]]}"#;
        assert!(matches!(parse_gmodule(wrong, Some(&fixtures::z2())), Err(SchemaError::Invalid { .. })));
    }
}
