//! One-dimensional words: sources, factor languages, complexity, Rauzy
//! graphs and a word of high complexity with simple Rauzy graphs.

pub mod config;
pub mod counterexample;
pub mod rauzy;
pub mod source;

use std::collections::{HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

pub use config::{load_word_source, WordConfig};
pub use counterexample::{counterexample_build, golden_cover, Counterexample, CounterexampleLevel};
pub use rauzy::{gamma_map, rauzy_graph, GammaMap, RauzyEdge, RauzyGraph};
pub use source::WordSource;

use source::{sft_counts, sft_words, Generator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("factor set of length {n} not stable before the window cap {window}")]
    SaturationNotReached { n: usize, window: usize },
    #[error("base point is singular: two crossings coincide")]
    SingularBasePoint,
    #[error("invalid word source: {0}")]
    BadParameter(String),
    #[error("Rauzy graph is not connected")]
    DisconnectedGraph,
    #[error("graph map not well defined: {0}")]
    MapNotWellDefined(String),
    #[error("length {n} exceeds the certified range {max} of this source")]
    OutOfCertifiedRange { n: usize, max: usize },
    #[error("level {0} needs a covering word that is too long to build")]
    LevelTooDeep(usize),
    #[error("word config: {0}")]
    Config(String),
    #[error("cannot read {0}")]
    Io(String),
}

/// Limits for the window-doubling factor search.
#[derive(Clone, Copy, Debug)]
pub struct FactorOptions {
    /// First window length; defaults to max(1024, 32(m+1)²) for factors of length m.
    pub initial_window: Option<usize>,
    pub max_window: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions { initial_window: None, max_window: 1 << 26 }
    }
}

/// All factors of one length `len`, from which every shorter factor set is
/// read off as a set of prefixes.
///
/// For finite words the table holds every suffix truncated to `len`, so
/// factors close to the end are kept.
#[derive(Clone, Debug)]
pub struct Language {
    pub len: usize,
    /// Generated window length that certified the table (0 when exact by construction).
    pub window: usize,
    words: Vec<Vec<u8>>,
}

impl Language {
    fn from_sorted(len: usize, window: usize, mut words: Vec<Vec<u8>>) -> Self {
        words.sort_unstable();
        words.dedup();
        Language { len, window, words }
    }

    /// Sorted factors of length `n ≤ len`.
    pub fn factors(&self, n: usize) -> Vec<&[u8]> {
        assert!(n <= self.len, "factor length {n} beyond table length {}", self.len);
        let mut out: Vec<&[u8]> = Vec::new();
        for w in self.words.iter().filter(|w| w.len() >= n) {
            let p = &w[..n];
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        out
    }

    /// p(n) for n = 0..=len.
    pub fn counts(&self) -> Vec<u64> {
        let m = self.len;
        let mut at_least = vec![0u64; m + 2];
        let mut lcp_at_least = vec![0u64; m + 2];
        for (i, w) in self.words.iter().enumerate() {
            at_least[w.len().min(m)] += 1;
            if i > 0 {
                let prev = &self.words[i - 1];
                let l = prev.iter().zip(w).take_while(|(a, b)| a == b).count();
                lcp_at_least[l.min(m)] += 1;
            }
        }
        for n in (0..=m).rev() {
            at_least[n] += at_least[n + 1];
            lcp_at_least[n] += lcp_at_least[n + 1];
        }
        (0..=m).map(|n| at_least[n] - lcp_at_least[n]).collect()
    }

    /// Factors of length n with at least two right extensions.
    pub fn right_special(&self, n: usize) -> Vec<Vec<u8>> {
        let longer = self.factors(n + 1);
        let mut out = Vec::new();
        let mut i = 0;
        while i < longer.len() {
            let mut j = i + 1;
            while j < longer.len() && longer[j][..n] == longer[i][..n] {
                j += 1;
            }
            if j - i >= 2 {
                out.push(longer[i][..n].to_vec());
            }
            i = j;
        }
        out
    }
}

/// Builds the factor table of length `len` for a source.
pub fn language(src: &WordSource, len: usize, opts: FactorOptions) -> Result<Language, WordError> {
    match src {
        WordSource::Finite { word, certified_len } => {
            if let Some(max) = *certified_len {
                if len > max {
                    return Err(WordError::OutOfCertifiedRange { n: len, max });
                }
            }
            let words = (0..word.len()).map(|i| word[i..word.len().min(i + len)].to_vec()).collect();
            Ok(Language::from_sorted(len, word.len(), words))
        }
        WordSource::Periodic { period } => {
            let w = src.prefix(period.len() + len)?;
            let words = (0..period.len()).map(|i| w[i..i + len].to_vec()).collect();
            Ok(Language::from_sorted(len, w.len(), words))
        }
        WordSource::Sft { alphabet, forbidden } => {
            let total = sft_counts(alphabet, forbidden, len)[len];
            if total > 1 << 24 {
                return Err(WordError::BadParameter(format!("{total} admissible words of length {len}")));
            }
            Ok(Language::from_sorted(len, 0, sft_words(alphabet, forbidden, len)))
        }
        WordSource::Sturmian { .. } | WordSource::Billiard { .. } => saturate(src, len, opts),
    }
}

const HASH_MOD: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 0x1f3d_5b79_a2c4_e681 % HASH_MOD;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % HASH_MOD as u128) as u64
}

/// Distinct factors of one length in a growing buffer, keyed by a rolling hash
/// with every hash hit verified against the stored occurrence.
struct FactorSet {
    len: usize,
    top: u64,
    by_hash: HashMap<u64, usize>,
    collided: HashSet<Vec<u8>>,
    scanned: usize,
    hash: u64,
}

impl FactorSet {
    fn new(len: usize) -> Self {
        let mut top = 1;
        for _ in 1..len {
            top = mulmod(top, HASH_BASE);
        }
        FactorSet { len, top, by_hash: HashMap::new(), collided: HashSet::new(), scanned: 0, hash: 0 }
    }

    fn count(&self) -> usize {
        self.by_hash.len() + self.collided.len()
    }

    /// Registers every factor starting before `buf.len() − len + 1`.
    fn scan(&mut self, buf: &[u8]) {
        let m = self.len;
        if buf.len() < m {
            return;
        }
        if self.scanned == 0 {
            self.hash = buf[..m].iter().fold(0, |h, &c| (mulmod(h, HASH_BASE) + c as u64) % HASH_MOD);
            self.insert(buf, 0);
            self.scanned = 1;
        }
        while self.scanned + m <= buf.len() {
            let i = self.scanned;
            let out = mulmod(buf[i - 1] as u64, self.top);
            let h = (self.hash + HASH_MOD - out) % HASH_MOD;
            self.hash = (mulmod(h, HASH_BASE) + buf[i + m - 1] as u64) % HASH_MOD;
            self.insert(buf, i);
            self.scanned += 1;
        }
    }

    fn insert(&mut self, buf: &[u8], start: usize) {
        let m = self.len;
        let w = &buf[start..start + m];
        match self.by_hash.get(&self.hash) {
            None => {
                self.by_hash.insert(self.hash, start);
            }
            Some(&s) if &buf[s..s + m] == w => {}
            Some(_) => {
                self.collided.insert(w.to_vec());
            }
        }
    }

    fn words(&self, buf: &[u8]) -> Vec<Vec<u8>> {
        let m = self.len;
        self.by_hash
            .values()
            .map(|&s| buf[s..s + m].to_vec())
            .chain(self.collided.iter().cloned())
            .collect()
    }
}

/// Doubles the generated window until the number of length-`len` factors is
/// unchanged over two consecutive doublings.
fn saturate(src: &WordSource, len: usize, opts: FactorOptions) -> Result<Language, WordError> {
    let mut gen = Generator::new(src)?;
    let mut window = opts.initial_window.unwrap_or(1024usize.max(32 * (len + 1) * (len + 1))).max(len + 1);
    let mut buf = Vec::new();
    let mut set = FactorSet::new(len.max(1));
    let mut history: Vec<usize> = Vec::new();
    loop {
        if window > opts.max_window {
            return Err(WordError::SaturationNotReached { n: len, window: opts.max_window });
        }
        gen.extend(&mut buf, window)?;
        if len == 0 {
            return Ok(Language::from_sorted(0, window, vec![Vec::new()]));
        }
        set.scan(&buf);
        history.push(set.count());
        let h = history.len();
        if h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3] {
            return Ok(Language::from_sorted(len, window, set.words(&buf)));
        }
        window *= 2;
    }
}

/// F_n of a source.
pub fn factors(src: &WordSource, n: usize) -> Result<Vec<Vec<u8>>, WordError> {
    let lang = language(src, n, FactorOptions::default())?;
    Ok(lang.factors(n).into_iter().map(<[u8]>::to_vec).collect())
}

/// p(n) and s(n) = p(n+1) − p(n) for n = 1..=n_max.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordComplexity {
    pub n_values: Vec<usize>,
    pub p: Vec<u64>,
    pub s: Vec<i64>,
    /// Window length that certified the counts (0 when exact by construction).
    pub window: usize,
}

pub fn complexity_series(src: &WordSource, n_max: usize, opts: FactorOptions) -> Result<WordComplexity, WordError> {
    let (counts, window) = match src {
        WordSource::Sft { alphabet, forbidden } => (
            sft_counts(alphabet, forbidden, n_max + 1)
                .into_iter()
                .map(|c| u64::try_from(c).unwrap_or(u64::MAX))
                .collect::<Vec<_>>(),
            0,
        ),
        _ => {
            let lang = language(src, n_max + 1, opts)?;
            (lang.counts(), lang.window)
        }
    };
    let n_values: Vec<usize> = (1..=n_max).collect();
    let p = n_values.iter().map(|&n| counts[n]).collect();
    let s = n_values.iter().map(|&n| counts[n + 1] as i64 - counts[n] as i64).collect();
    Ok(WordComplexity { n_values, p, s, window })
}

/// Right-special factors of length n.
pub fn right_special(src: &WordSource, n: usize) -> Result<Vec<Vec<u8>>, WordError> {
    Ok(language(src, n + 1, FactorOptions::default())?.right_special(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldContext;

    fn periodic_ab() -> WordSource {
        WordSource::Periodic { period: b"ab".to_vec() }
    }

    pub(crate) fn fibonacci() -> WordSource {
        let f = FieldContext::from_parts(&[-1, -1, 1], "1", "2").unwrap();
        WordSource::Sturmian { slope: &f.theta() - &f.one(), intercept: f.zero(), alphabet: *b"ab" }
    }

    #[test]
    fn periodic_factors() {
        assert_eq!(factors(&periodic_ab(), 3).unwrap(), vec![b"aba".to_vec(), b"bab".to_vec()]);
        let c = complexity_series(&periodic_ab(), 6, FactorOptions::default()).unwrap();
        assert!(c.p.iter().all(|&p| p == 2));
        assert!(c.s.iter().all(|&s| s == 0));
        assert!(right_special(&periodic_ab(), 4).unwrap().is_empty());
    }

    #[test]
    fn fibonacci_factors() {
        assert_eq!(factors(&fibonacci(), 1).unwrap().len(), 2);
        assert_eq!(factors(&fibonacci(), 4).unwrap().len(), 5);
        let c = complexity_series(&fibonacci(), 40, FactorOptions::default()).unwrap();
        assert!(c.p.iter().zip(&c.n_values).all(|(&p, &n)| p == n as u64 + 1));
        assert_eq!(right_special(&fibonacci(), 7).unwrap().len(), 1);
    }

    #[test]
    fn counts_match_direct_factor_sets() {
        let lang = language(&fibonacci(), 12, FactorOptions::default()).unwrap();
        let counts = lang.counts();
        for n in 0..=12 {
            assert_eq!(counts[n], lang.factors(n).len() as u64);
        }
    }

    #[test]
    fn finite_word_keeps_factors_near_the_end() {
        let src = WordSource::Finite { word: b"aab".to_vec(), certified_len: None };
        let lang = language(&src, 3, FactorOptions::default()).unwrap();
        assert_eq!(lang.counts(), vec![1, 2, 2, 1]);
        assert_eq!(lang.factors(2), vec![b"aa".as_slice(), b"ab".as_slice()]);
    }

    #[test]
    fn certified_range_is_enforced() {
        let src = WordSource::Finite { word: b"abab".to_vec(), certified_len: Some(2) };
        assert_eq!(
            language(&src, 3, FactorOptions::default()).unwrap_err(),
            WordError::OutOfCertifiedRange { n: 3, max: 2 }
        );
    }

    #[test]
    fn no_aa_shift_is_exponential() {
        let src = WordSource::Sft { alphabet: b"ab".to_vec(), forbidden: vec![*b"aa"] };
        let c = complexity_series(&src, 15, FactorOptions::default()).unwrap();
        for k in 1..=5 {
            assert!(c.p[3 * k - 1] >= 1 << k);
        }
        // Fibonacci numbers, and enumeration agrees with counting.
        assert_eq!(&c.p[..5], &[2, 3, 5, 8, 13]);
        assert_eq!(factors(&src, 6).unwrap().len(), 21);
    }

    #[test]
    fn saturation_cap_is_reported() {
        let opts = FactorOptions { initial_window: Some(64), max_window: 128 };
        assert_eq!(
            language(&fibonacci(), 30, opts).unwrap_err(),
            WordError::SaturationNotReached { n: 30, window: 128 }
        );
    }

    #[test]
    fn sturmian_prefix_matches_floor_formula() {
        let alpha = (5f64.sqrt() - 1.0) / 2.0;
        let w = fibonacci().prefix(1000).unwrap();
        for (i, &c) in w.iter().enumerate() {
            let step = ((i + 1) as f64 * alpha).floor() - (i as f64 * alpha).floor();
            assert_eq!(c, if step > 0.5 { b'b' } else { b'a' }, "letter {i}");
        }
    }
}
