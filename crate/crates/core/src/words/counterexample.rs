//! A binary word of super-polynomial complexity built by nested blocks.
//!
//! Level 1: `u = aab·f·baa`, `v = abb·f·baa` with `f = abba`. Level k+1:
//! `f' = σ(c)` where `c` is a binary word without `00` containing every such
//! word of length |u|, and `σ` maps 0 ↦ u, 1 ↦ v; then
//! `u' = u u v f' v u u` and `v' = u v v f' v u u`.
//!
//! The limit word is a concatenation of level-k blocks for every k, and its
//! block sequence is made of level-(k+1) blocks `001c100` and `011c100`.
//! Every binary word of length 3 occurs in that sequence: those without `00`
//! inside `c`, the others at block junctions `…100|001…` and `…100|011…`.
//! A factor of length at most 2|u|+1 meets at most three consecutive
//! blocks, so the factors of that length are exactly the factors of σ
//! applied to the eight binary words of length 3. The finite window
//! `σ(0001011100)` contains all eight and serves as the certified source.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{WordError, WordSource};

/// Longest block length for which a covering word is built.
pub const MAX_COVER_LEN: usize = 24;

/// Binary word containing every binary word of length 3.
const ALL_TRIPLES: &[u8] = b"0001011100";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleLevel {
    pub k: usize,
    #[serde(serialize_with = "ser_word")]
    pub u: Vec<u8>,
    #[serde(serialize_with = "ser_word")]
    pub v: Vec<u8>,
    /// Middle word of u and v at this level, over {a, b}.
    #[serde(serialize_with = "ser_word")]
    pub f: Vec<u8>,
    /// Binary covering word substituted into `f`; empty at level 1.
    #[serde(serialize_with = "ser_word")]
    pub cover: Vec<u8>,
}

fn ser_word<S: serde::Serializer>(w: &[u8], s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&String::from_utf8_lossy(w))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub levels: Vec<CounterexampleLevel>,
}

/// Words over {0,1} avoiding `00` of length `m`, as bit masks (bit i = letter i).
fn admissible(mask: u32, m: usize) -> bool {
    m < 2 || (!mask & !(mask >> 1)) & ((1 << (m - 1)) - 1) == 0
}

/// A word over {0,1} without `00` in which every such word of length `m`
/// occurs. Built greedily: extend by a letter giving a new length-m word
/// (trying 1 first), otherwise walk the shortest admissible path to one.
pub fn golden_cover(m: usize) -> Result<Vec<u8>, WordError> {
    if m == 0 || m > MAX_COVER_LEN {
        return Err(WordError::LevelTooDeep(m));
    }
    let total = (0..1u32 << m).filter(|&w| admissible(w, m)).count();
    let full = (1u32 << m) - 1;
    // Window mask: bit 0 is the oldest letter of the current length-m window.
    let mut word = vec![b'1'; m];
    let mut state = full;
    let mut seen: HashSet<u32> = HashSet::from([state]);
    let push = |state: u32, bit: u32| (state >> 1) | (bit << (m - 1));
    while seen.len() < total {
        let direct = [1u32, 0].into_iter().map(|b| (b, push(state, b))).find(|&(_, s)| admissible(s, m) && !seen.contains(&s));
        if let Some((b, s)) = direct {
            word.push(b'0' + b as u8);
            seen.insert(s);
            state = s;
            continue;
        }
        // Breadth-first search over windows for the nearest unseen one.
        let mut prev: std::collections::HashMap<u32, (u32, u32)> = std::collections::HashMap::new();
        let mut queue = VecDeque::from([state]);
        let mut target = None;
        while let Some(s) = queue.pop_front() {
            for b in [1u32, 0] {
                let t = push(s, b);
                if !admissible(t, m) || t == state || prev.contains_key(&t) {
                    continue;
                }
                prev.insert(t, (s, b));
                if !seen.contains(&t) {
                    target = Some(t);
                    break;
                }
                queue.push_back(t);
            }
            if target.is_some() {
                break;
            }
        }
        let target = target.expect("admissible window graph is strongly connected");
        let mut path = Vec::new();
        let mut t = target;
        while t != state {
            let (s, b) = prev[&t];
            path.push((b, t));
            t = s;
        }
        for &(b, t) in path.iter().rev() {
            word.push(b'0' + b as u8);
            seen.insert(t);
        }
        state = target;
    }
    Ok(word)
}

fn substitute(cover: &[u8], u: &[u8], v: &[u8]) -> Vec<u8> {
    cover.iter().flat_map(|&c| if c == b'0' { u } else { v }.iter().copied()).collect()
}

/// Levels 1..=k_max.
pub fn counterexample_build(k_max: usize) -> Result<Counterexample, WordError> {
    if k_max == 0 {
        return Err(WordError::BadParameter("level must be at least 1".into()));
    }
    let f = b"abba".to_vec();
    let u = [b"aab".as_slice(), &f, b"baa"].concat();
    let v = [b"abb".as_slice(), &f, b"baa"].concat();
    let mut levels = vec![CounterexampleLevel { k: 1, u, v, f, cover: Vec::new() }];
    for k in 1..k_max {
        let last = &levels[k - 1];
        if last.u.len() > MAX_COVER_LEN {
            return Err(WordError::LevelTooDeep(k + 1));
        }
        let cover = golden_cover(last.u.len())?;
        let f = substitute(&cover, &last.u, &last.v);
        let (u0, v0) = (&last.u, &last.v);
        let u = [u0, u0, v0, &f, v0, u0, u0].map(|w| w.as_slice()).concat();
        let v = [u0, v0, v0, &f, v0, u0, u0].map(|w| w.as_slice()).concat();
        levels.push(CounterexampleLevel { k: k + 1, u, v, f, cover });
    }
    Ok(Counterexample { levels })
}

impl Counterexample {
    pub fn top(&self) -> &CounterexampleLevel {
        self.levels.last().expect("at least one level")
    }

    pub fn level(&self, k: usize) -> Option<&CounterexampleLevel> {
        self.levels.get(k.checked_sub(1)?)
    }

    /// Longest factor length certified by the top level.
    pub fn certified_len(&self) -> usize {
        2 * self.top().u.len() + 1
    }

    /// Finite window whose factors up to [`Self::certified_len`] are those of the limit word.
    pub fn source(&self) -> WordSource {
        let top = self.top();
        WordSource::Finite { word: substitute(ALL_TRIPLES, &top.u, &top.v), certified_len: Some(self.certified_len()) }
    }

    /// |u_{k+1}| + 4|u_k|, when level k+1 is built.
    pub fn special_length(&self, k: usize) -> Option<usize> {
        Some(self.level(k + 1)?.u.len() + 4 * self.level(k)?.u.len())
    }

    /// Structural checks: equal block lengths, prefix shape, covering words.
    pub fn check(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for (i, l) in self.levels.iter().enumerate() {
            if l.u.len() != l.v.len() {
                problems.push(format!("level {}: |u| = {} but |v| = {}", l.k, l.u.len(), l.v.len()));
            }
            if i > 0 {
                let prev = &self.levels[i - 1];
                let m = prev.u.len();
                if !l.u.starts_with(&[prev.u.as_slice(), &prev.u].concat()) {
                    problems.push(format!("level {}: u does not start with the previous u twice", l.k));
                }
                if l.u.len() != 6 * m + l.f.len() {
                    problems.push(format!("level {}: unexpected block length", l.k));
                }
                if l.cover.windows(2).any(|w| w == b"00") {
                    problems.push(format!("level {}: covering word contains 00", l.k));
                }
                let found: HashSet<&[u8]> = l.cover.windows(m).collect();
                let total = (0..1u32 << m).filter(|&w| admissible(w, m)).count();
                if found.len() != total {
                    problems.push(format!("level {}: covering word misses {} words", l.k, total - found.len()));
                }
            }
        }
        problems
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{language, FactorOptions};

    #[test]
    fn first_level() {
        let c = counterexample_build(1).unwrap();
        assert_eq!(c.levels[0].u, b"aababbabaa".to_vec());
        assert_eq!(c.levels[0].v, b"abbabbabaa".to_vec());
        assert!(c.check().is_empty());
    }

    #[test]
    fn covers_are_complete_and_admissible() {
        for m in 1..=12 {
            let w = golden_cover(m).unwrap();
            assert!(!w.windows(2).any(|p| p == b"00"));
            let found: HashSet<&[u8]> = w.windows(m).collect();
            let total = (0..1u32 << m).filter(|&x| admissible(x, m)).count();
            assert_eq!(found.len(), total, "m = {m}");
        }
        assert_eq!(golden_cover(25).unwrap_err(), WordError::LevelTooDeep(25));
    }

    #[test]
    fn second_level_shape() {
        let c = counterexample_build(2).unwrap();
        assert!(c.check().is_empty(), "{:?}", c.check());
        let (l1, l2) = (&c.levels[0], &c.levels[1]);
        assert_eq!(l2.u.len(), 6 * l1.u.len() + l2.f.len());
        assert!(l2.u.starts_with(&[l1.u.as_slice(), &l1.u].concat()));
        assert_eq!(counterexample_build(3).unwrap_err(), WordError::LevelTooDeep(3));
    }

    #[test]
    fn level_one_window_agrees_with_level_two() {
        // Both certified sources must give the same factors where both apply.
        let one = counterexample_build(1).unwrap();
        let two = counterexample_build(2).unwrap();
        let n = one.certified_len();
        let a = language(&one.source(), n, FactorOptions::default()).unwrap();
        let b = language(&two.source(), n, FactorOptions::default()).unwrap();
        assert_eq!(a.factors(n), b.factors(n));
    }
}
