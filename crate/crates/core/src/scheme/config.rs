//! Text configuration for schemes.
//!
//! Schemes are TOML documents. Rationals are written as strings `"p/q"` (plain
//! integers are accepted too) and field elements as coefficient lists over
//! 1, θ, θ², …
//!
//! ```toml
//! name = "golden"
//! N = 2
//! d = 1
//! window = "canonical"
//! basis_E = [[["1"]], [["0", "1"]]]
//!
//! [field]
//! minpoly = [-1, -1, 1]
//! interval = ["1", "2"]
//! ```

use serde::{Deserialize, Serialize};

use crate::exact::{parse_rational, FieldContext, FieldElement};

use super::SchemeError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum RatLit {
    Int(i64),
    Str(String),
}

impl RatLit {
    pub fn as_string(&self) -> String {
        match self {
            RatLit::Int(i) => i.to_string(),
            RatLit::Str(s) => s.clone(),
        }
    }
}

/// A field element literal: a single rational or a coefficient list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ElemLit {
    Scalar(RatLit),
    Coeffs(Vec<RatLit>),
}

impl ElemLit {
    pub fn to_element(&self, field: &FieldContext) -> Result<FieldElement, SchemeError> {
        let strs: Vec<String> = match self {
            ElemLit::Scalar(r) => vec![r.as_string()],
            ElemLit::Coeffs(v) => v.iter().map(RatLit::as_string).collect(),
        };
        Ok(field.element_from_strs(&strs)?)
    }

    pub fn from_element(e: &FieldElement) -> ElemLit {
        ElemLit::Coeffs(e.to_strings().into_iter().map(RatLit::Str).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FieldConfig {
    /// Integer coefficients, constant term first.
    pub minpoly: Vec<i64>,
    pub interval: [RatLit; 2],
}

impl FieldConfig {
    pub fn build(&self) -> Result<FieldContext, SchemeError> {
        let lo = parse_rational(&self.interval[0].as_string())?;
        let hi = parse_rational(&self.interval[1].as_string())?;
        Ok(FieldContext::new(
            self.minpoly.iter().map(|&c| c.into()).collect(),
            lo,
            hi,
        )?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum WindowConfig {
    Keyword(String),
    Vertices { vertices: Vec<Vec<ElemLit>> },
}

/// A claimed identity `value² = square` with `value > 0`, checked at load.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdentityCheck {
    pub label: String,
    pub value: ElemLit,
    pub square: RatLit,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SchemeConfig {
    pub name: String,
    pub field: FieldConfig,
    #[serde(rename = "N")]
    pub n: usize,
    pub d: usize,
    /// N rows of d entries: row k holds the k-th coordinates of the E basis vectors.
    #[serde(rename = "basis_E")]
    pub basis_e: Vec<Vec<ElemLit>>,
    #[serde(rename = "basis_F", default, skip_serializing_if = "Option::is_none")]
    pub basis_f: Option<Vec<Vec<ElemLit>>>,
    pub window: WindowConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityCheck>,
}

impl SchemeConfig {
    pub fn from_toml(text: &str) -> Result<Self, SchemeError> {
        toml::from_str(text).map_err(|e| SchemeError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scheme config serializes")
    }
}

/// Built-in scheme files shipped with the crate.
pub const BUILTIN_SCHEMES: [(&str, &str); 4] = [
    ("octagonal.scheme", include_str!("../../data/octagonal.scheme")),
    ("golden_sturmian.scheme", include_str!("../../data/golden_sturmian.scheme")),
    ("billiard3.scheme", include_str!("../../data/billiard3.scheme")),
    ("generic42.scheme", include_str!("../../data/generic42.scheme")),
];

pub fn builtin(name: &str) -> Option<&'static str> {
    let base = std::path::Path::new(name)
        .file_name()
        .and_then(|s| s.to_str())
        .unwrap_or(name);
    BUILTIN_SCHEMES
        .iter()
        .find(|(n, _)| *n == base || n.trim_end_matches(".scheme") == base)
        .map(|(_, t)| *t)
}
