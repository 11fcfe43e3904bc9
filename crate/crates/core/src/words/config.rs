//! Text configuration for word sources.
//!
//! ```toml
//! kind = "sturmian"          # explicit | periodic | sturmian | billiard | sft | counterexample
//! alphabet = "ab"
//! slope = ["-1", "1"]        # field element, coefficients over 1, θ, …
//! intercept = "0"
//!
//! [field]
//! minpoly = [-1, -1, 1]
//! interval = ["1", "2"]
//! ```
//!
//! Other kinds use `word` (explicit, periodic), `scheme` (billiard, a path
//! relative to the config file or a built-in name), `forbidden` (sft) and
//! `k` (counterexample).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::scheme::config::{ElemLit, FieldConfig};
use crate::scheme::load_scheme;

use super::{counterexample_build, WordError, WordSource};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct WordConfig {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphabet: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slope: Option<ElemLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intercept: Option<ElemLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

/// Built-in word configs shipped with the crate.
pub const BUILTIN_WORDS: [(&str, &str); 4] = [
    ("fibonacci.word", include_str!("../../data/fibonacci.word")),
    ("billiard3.word", include_str!("../../data/billiard3.word")),
    ("no_aa.word", include_str!("../../data/no_aa.word")),
    ("counterexample.word", include_str!("../../data/counterexample.word")),
];

fn builtin(name: &str) -> Option<&'static str> {
    let base = Path::new(name).file_name().and_then(|s| s.to_str()).unwrap_or(name);
    BUILTIN_WORDS
        .iter()
        .find(|(n, _)| *n == base || n.trim_end_matches(".word") == base)
        .map(|(_, t)| *t)
}

impl WordConfig {
    pub fn from_toml(text: &str) -> Result<Self, WordError> {
        toml::from_str(text).map_err(|e| WordError::Config(e.to_string()))
    }

    fn need<'a, T>(&self, v: &'a Option<T>, name: &str) -> Result<&'a T, WordError> {
        v.as_ref().ok_or_else(|| WordError::Config(format!("`{}` sources need `{name}`", self.kind)))
    }

    /// Builds the source; relative scheme paths resolve against `base_dir`.
    pub fn build(&self, base_dir: Option<&Path>) -> Result<WordSource, WordError> {
        match self.kind.as_str() {
            "explicit" => Ok(WordSource::Finite { word: self.need(&self.word, "word")?.as_bytes().to_vec(), certified_len: None }),
            "periodic" => {
                let period = self.need(&self.word, "word")?.as_bytes().to_vec();
                if period.is_empty() {
                    return Err(WordError::Config("empty period".into()));
                }
                Ok(WordSource::Periodic { period })
            }
            "sturmian" => {
                let field = self.need(&self.field, "field")?.build().map_err(|e| WordError::Config(e.to_string()))?;
                let elem = |lit: &ElemLit| lit.to_element(&field).map_err(|e| WordError::Config(e.to_string()));
                let slope = elem(self.need(&self.slope, "slope")?)?;
                let intercept = match &self.intercept {
                    Some(lit) => elem(lit)?,
                    None => field.zero(),
                };
                let alphabet = self.alphabet.as_deref().unwrap_or("ab").as_bytes();
                let [a, b] = alphabet else {
                    return Err(WordError::Config("sturmian alphabet needs two letters".into()));
                };
                Ok(WordSource::Sturmian { slope, intercept, alphabet: [*a, *b] })
            }
            "billiard" => {
                let name = self.need(&self.scheme, "scheme")?;
                let path = match base_dir {
                    Some(dir) if dir.join(name).exists() => dir.join(name).to_string_lossy().into_owned(),
                    _ => name.clone(),
                };
                let s = load_scheme(&path).map_err(|e| WordError::Config(e.to_string()))?;
                let mut src = WordSource::billiard(&s)?;
                if let (Some(a), WordSource::Billiard { alphabet, .. }) = (&self.alphabet, &mut src) {
                    if a.len() != alphabet.len() {
                        return Err(WordError::Config(format!("billiard alphabet needs {} letters", alphabet.len())));
                    }
                    *alphabet = a.as_bytes().to_vec();
                }
                Ok(src)
            }
            "sft" => {
                let alphabet = self.need(&self.alphabet, "alphabet")?.as_bytes().to_vec();
                let forbidden = self
                    .need(&self.forbidden, "forbidden")?
                    .iter()
                    .map(|w| {
                        <[u8; 2]>::try_from(w.as_bytes())
                            .map_err(|_| WordError::Config(format!("forbidden word `{w}` must have two letters")))
                    })
                    .collect::<Result<_, _>>()?;
                Ok(WordSource::Sft { alphabet, forbidden })
            }
            "counterexample" => Ok(counterexample_build(*self.need(&self.k, "k")?)?.source()),
            other => Err(WordError::Config(format!("unknown word kind `{other}`"))),
        }
    }
}

/// Reads a word config from a file, falling back to the built-in configs by name.
pub fn load_word_source(path: &str) -> Result<(WordConfig, WordSource), WordError> {
    let (text, dir) = match std::fs::read_to_string(path) {
        Ok(t) => (t, Path::new(path).parent().map(Path::to_path_buf)),
        Err(e) => match builtin(path) {
            Some(t) => (t.to_string(), None),
            None => return Err(WordError::Io(format!("{path}: {e}"))),
        },
    };
    let cfg = WordConfig::from_toml(&text)?;
    let src = cfg.build(dir.as_deref())?;
    Ok((cfg, src))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        for (name, _) in BUILTIN_WORDS {
            load_word_source(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_kind_is_rejected() {
        let cfg = WordConfig::from_toml("kind = \"nope\"").unwrap();
        assert!(matches!(cfg.build(None), Err(WordError::Config(_))));
        assert!(WordConfig::from_toml("kind = \"sft\"\nbogus = 1").is_err());
    }

    #[test]
    fn periodic_round_trip() {
        let cfg = WordConfig::from_toml("kind = \"periodic\"\nword = \"ab\"").unwrap();
        let back = WordConfig::from_toml(&toml::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(cfg, back);
    }
}
