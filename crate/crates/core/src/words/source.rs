//! Word sources and their exact letter generators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::exact::fast::{common_denominator, numerator};
use crate::exact::{cmp_num, FieldElement, IntVec};
use crate::scheme::Scheme;

use super::WordError;

/// A deterministic description of a (one- or bi-infinite) word.
#[derive(Clone, Debug)]
pub enum WordSource {
    /// A finite word. Its factors are those of the word itself; when
    /// `certified_len` is set, they are the factors of an infinite word for
    /// every length up to that bound and no further lengths may be queried.
    Finite { word: Vec<u8>, certified_len: Option<usize> },
    /// The periodic word `period^∞`.
    Periodic { period: Vec<u8> },
    /// Mechanical word with letters `floor((i+1)·slope + intercept) − floor(i·slope + intercept)`.
    Sturmian { slope: FieldElement, intercept: FieldElement, alphabet: [u8; 2] },
    /// Cube billiard: the sequence of coordinate hyperplanes crossed by the
    /// ray `base + t·direction`, letter `alphabet[k]` for coordinate k.
    Billiard { direction: Vec<FieldElement>, base: Vec<BigRational>, alphabet: Vec<u8> },
    /// Shift of finite type given by forbidden two-letter words.
    Sft { alphabet: Vec<u8>, forbidden: Vec<[u8; 2]> },
}

impl WordSource {
    /// Billiard word along the one-dimensional physical space of a scheme.
    pub fn billiard(s: &Scheme) -> Result<WordSource, WordError> {
        if s.d != 1 {
            return Err(WordError::BadParameter(format!("billiard words need d = 1, got d = {}", s.d)));
        }
        let mut direction: Vec<FieldElement> = s.basis_e.iter().map(|row| row[0].clone()).collect();
        if direction.iter().all(|u| u.sign() < 0) {
            direction = direction.iter().map(|u| -u).collect();
        }
        if direction.iter().any(|u| u.sign() <= 0) {
            return Err(WordError::BadParameter("billiard direction must have positive coordinates".into()));
        }
        let base = (0..s.n)
            .map(|k| BigRational::new(BigInt::one(), BigInt::from(10u32).pow(k as u32 + 1)))
            .collect();
        let alphabet = (0..s.n).map(|k| b'a' + k as u8).collect();
        Ok(WordSource::Billiard { direction, base, alphabet })
    }

    /// Whether every factor extends on both sides inside the language.
    pub fn is_extendable(&self) -> bool {
        !matches!(self, WordSource::Finite { certified_len: None, .. })
    }

    pub fn alphabet(&self) -> Vec<u8> {
        let mut a: Vec<u8> = match self {
            WordSource::Finite { word, .. } => word.clone(),
            WordSource::Periodic { period } => period.clone(),
            WordSource::Sturmian { alphabet, .. } => alphabet.to_vec(),
            WordSource::Billiard { alphabet, .. } | WordSource::Sft { alphabet, .. } => alphabet.clone(),
        };
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Prefix of length `len` of the generated one-sided word, for sources
    /// that have one.
    pub fn prefix(&self, len: usize) -> Result<Vec<u8>, WordError> {
        let mut g = Generator::new(self)?;
        let mut buf = Vec::with_capacity(len);
        g.extend(&mut buf, len)?;
        Ok(buf)
    }
}

/// Incremental letter generator for infinite sources.
pub(crate) enum Generator<'a> {
    Periodic { period: &'a [u8], pos: usize },
    Sturmian { field: crate::exact::FieldContext, step: IntVec, one: IntVec, x: IntVec, alphabet: [u8; 2] },
    Billiard { field: crate::exact::FieldContext, steps: Vec<IntVec>, next: Vec<IntVec>, alphabet: &'a [u8] },
    Fixed { word: &'a [u8], pos: usize },
}

/// Exact floor of a field element.
pub fn floor_elem(e: &FieldElement) -> BigInt {
    let f = e.field();
    let mut k = BigInt::from(e.to_f64().floor().to_i64().unwrap_or(0));
    loop {
        let kk = f.from_rational(BigRational::from_integer(k.clone()));
        let diff = e - &kk;
        if diff.sign() < 0 {
            k -= 1;
        } else if (&diff - &f.one()).sign() >= 0 {
            k += 1;
        } else {
            return k;
        }
    }
}

impl<'a> Generator<'a> {
    pub(crate) fn new(src: &'a WordSource) -> Result<Self, WordError> {
        Ok(match src {
            WordSource::Finite { word, .. } => Generator::Fixed { word, pos: 0 },
            WordSource::Periodic { period } => {
                if period.is_empty() {
                    return Err(WordError::BadParameter("empty period".into()));
                }
                Generator::Periodic { period, pos: 0 }
            }
            WordSource::Sturmian { slope, intercept, alphabet } => {
                let field = slope.field().clone();
                if slope.sign() <= 0 || (slope - &field.one()).sign() >= 0 {
                    return Err(WordError::BadParameter("slope must lie in (0, 1)".into()));
                }
                let fl = floor_elem(intercept);
                let frac = intercept - &field.from_rational(BigRational::from_integer(fl));
                let one = field.one();
                let den = common_denominator([slope, &frac, &one]);
                Generator::Sturmian {
                    step: numerator(slope, &den),
                    one: numerator(&one, &den),
                    x: numerator(&frac, &den),
                    field,
                    alphabet: *alphabet,
                }
            }
            WordSource::Billiard { direction, base, alphabet } => {
                let n = direction.len();
                if n == 0 || base.len() != n || alphabet.len() != n {
                    return Err(WordError::BadParameter("billiard dimensions disagree".into()));
                }
                if direction.iter().any(|u| u.sign() <= 0) {
                    return Err(WordError::BadParameter("billiard direction must have positive coordinates".into()));
                }
                let field = direction[0].field().clone();
                // Crossing k at time (m − x_k)/u_k; scaled by Π u_j this is (m − x_k)·Π_{j≠k} u_j.
                let others: Vec<FieldElement> = (0..n)
                    .map(|k| {
                        (0..n).filter(|&j| j != k).fold(field.one(), |acc, j| &acc * &direction[j])
                    })
                    .collect();
                let firsts: Vec<FieldElement> = (0..n)
                    .map(|k| {
                        let x = &base[k];
                        if !x.is_positive() || x >= &BigRational::one() {
                            return Err(WordError::BadParameter("billiard base point must lie in (0, 1)^N".into()));
                        }
                        let gap = BigRational::one() - x;
                        Ok(others[k].scale(&gap))
                    })
                    .collect::<Result<_, _>>()?;
                let den = common_denominator(others.iter().chain(&firsts));
                Generator::Billiard {
                    steps: others.iter().map(|e| numerator(e, &den)).collect(),
                    next: firsts.iter().map(|e| numerator(e, &den)).collect(),
                    field,
                    alphabet,
                }
            }
            WordSource::Sft { .. } => {
                return Err(WordError::BadParameter("shifts of finite type have no generated prefix".into()))
            }
        })
    }

    /// Appends letters until `buf` has length `len`.
    pub(crate) fn extend(&mut self, buf: &mut Vec<u8>, len: usize) -> Result<(), WordError> {
        while buf.len() < len {
            let letter = match self {
                Generator::Fixed { word, pos } => {
                    let Some(&c) = word.get(*pos) else { break };
                    *pos += 1;
                    c
                }
                Generator::Periodic { period, pos } => {
                    let c = period[*pos];
                    *pos = (*pos + 1) % period.len();
                    c
                }
                Generator::Sturmian { field, step, one, x, alphabet } => {
                    let y = x.add(step);
                    if cmp_num(&y, one, field).is_ge() {
                        *x = y.sub(one);
                        alphabet[1]
                    } else {
                        *x = y;
                        alphabet[0]
                    }
                }
                Generator::Billiard { field, steps, next, alphabet } => {
                    let mut best = 0;
                    for k in 1..next.len() {
                        if cmp_num(&next[k], &next[best], field).is_lt() {
                            best = k;
                        }
                    }
                    // Simultaneous crossings have no letter.
                    if (0..next.len()).any(|k| k != best && cmp_num(&next[k], &next[best], field).is_eq()) {
                        return Err(WordError::SingularBasePoint);
                    }
                    next[best] = next[best].add(&steps[best]);
                    alphabet[best]
                }
            };
            buf.push(letter);
        }
        Ok(())
    }
}

/// All words of length `len` in a one-step shift of finite type, restricted
/// to letters lying on bi-infinite paths, in lexicographic order.
pub(crate) fn sft_words(alphabet: &[u8], forbidden: &[[u8; 2]], len: usize) -> Vec<Vec<u8>> {
    let live = sft_live_letters(alphabet, forbidden);
    let allowed = |a: u8, b: u8| !forbidden.contains(&[a, b]);
    let mut out: Vec<Vec<u8>> = if len == 0 { vec![Vec::new()] } else { live.iter().map(|&c| vec![c]).collect() };
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &out {
            let last = *w.last().expect("nonempty");
            for &c in &live {
                if allowed(last, c) {
                    let mut v = w.clone();
                    v.push(c);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// Number of admissible words of each length 0..=len, without enumeration.
pub(crate) fn sft_counts(alphabet: &[u8], forbidden: &[[u8; 2]], len: usize) -> Vec<u128> {
    let live = sft_live_letters(alphabet, forbidden);
    let mut ends: Vec<u128> = vec![1; live.len()];
    let mut out = vec![1u128];
    if len == 0 {
        return out;
    }
    out.push(live.len() as u128);
    for _ in 1..len {
        ends = live
            .iter()
            .map(|&c| {
                live.iter()
                    .zip(&ends)
                    .filter(|(&a, _)| !forbidden.contains(&[a, c]))
                    .map(|(_, &k)| k)
                    .fold(0u128, |s, k| s.saturating_add(k))
            })
            .collect();
        out.push(ends.iter().fold(0u128, |s, &k| s.saturating_add(k)));
    }
    out
}

fn sft_live_letters(alphabet: &[u8], forbidden: &[[u8; 2]]) -> Vec<u8> {
    let mut live: Vec<u8> = alphabet.to_vec();
    live.sort_unstable();
    live.dedup();
    loop {
        let keep: Vec<u8> = live
            .iter()
            .copied()
            .filter(|&c| {
                live.iter().any(|&d| !forbidden.contains(&[c, d])) && live.iter().any(|&d| !forbidden.contains(&[d, c]))
            })
            .collect();
        if keep.len() == live.len() {
            return live;
        }
        live = keep;
    }
}
