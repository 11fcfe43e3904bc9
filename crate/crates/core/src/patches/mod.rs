//! Direct patch counting: seeds of the point set, patches of size n, their
//! classes up to translation, and the complexity series p(n), p_pt(n).

pub mod fit;

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exact::fast::{common_denominator, numerator};
use crate::exact::matrix::dot;
use crate::exact::{cmp_num, AffineForm, FieldElement, IntLattice, IntVec};
use crate::scheme::{l1_ball, Point, Scheme};

pub use fit::{slope_fit, SlopeFit};

#[derive(Debug, Error, PartialEq)]
pub enum PatchError {
    #[error("seed is singular at size {0}")]
    SingularSeed(usize),
    #[error("counts did not stabilize below search radius {radius}")]
    SaturationNotReached { radius: usize, partial: Box<ComplexitySeries> },
    #[error("not enough data points for a slope fit")]
    InsufficientData,
    #[error("no regular base point found")]
    NoRegularBase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    /// π_F of the seed, in F-coordinates.
    pub internal: Point,
    pub lattice_point: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct Patch {
    pub size: usize,
    /// Lattice offsets w with ‖w‖₁ ≤ n whose internal image lies in K.
    pub lifted: Vec<Vec<i64>>,
    /// π(w) in E-coordinates, in the same order.
    pub physical: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalPatchKey(pub Vec<Vec<FieldElement>>);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexitySeries {
    pub n_values: Vec<usize>,
    pub p: Vec<u64>,
    pub p_pt: Vec<u64>,
    /// Search radius at which each count reached its final value.
    pub saturation_radius: Vec<usize>,
    /// Largest number of pointed classes sharing one unpointed class.
    pub multiplicity: Vec<u64>,
    pub seeds: usize,
}

/// True iff no t + π_F(z), ‖z‖₁ ≤ n, lies on the window boundary.
pub fn is_n_regular(s: &Scheme, internal: &[FieldElement], n: usize) -> bool {
    l1_ball(s.n, n).iter().all(|z| {
        let p: Point = internal.iter().zip(s.internal(z)).map(|(a, b)| a + &b).collect();
        !s.window.on_boundary(&p)
    })
}

pub fn build_patch(s: &Scheme, seed: &Seed, n: usize) -> Result<Patch, PatchError> {
    if !is_n_regular(s, &seed.internal, n) {
        return Err(PatchError::SingularSeed(n));
    }
    let mut lifted = Vec::new();
    let mut physical = Vec::new();
    for w in l1_ball(s.n, n) {
        let p: Point = seed.internal.iter().zip(s.internal(&w)).map(|(a, b)| a + &b).collect();
        if s.window.contains_closed(&p) {
            physical.push(s.physical(&w));
            lifted.push(w);
        }
    }
    Ok(Patch { size: n, lifted, physical })
}

fn lex(a: &[FieldElement], b: &[FieldElement]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp_exact(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Sorted physical offsets, re-based at the lexicographic minimum when unpointed.
pub fn canonical_key(p: &Patch, pointed: bool) -> CanonicalPatchKey {
    let mut pts = p.physical.clone();
    pts.sort_by(|a, b| lex(a, b));
    if !pointed {
        if let Some(base) = pts.first().cloned() {
            pts = pts.iter().map(|x| x.iter().zip(&base).map(|(a, b)| a - b).collect()).collect();
        }
    }
    CanonicalPatchKey(pts)
}

/// A base point t₀ of F such that t₀ + π_F(z) avoids every facet hyperplane
/// for all z ∈ Z^N.
pub fn regular_base_point(s: &Scheme) -> Result<Point, PatchError> {
    let field = &s.field;
    let k = s.internal_dim();
    for attempt in 0..64i64 {
        let t0: Point = (0..k)
            .map(|t| {
                let den = 10i64.pow(t as u32 + 1) + 3 * attempt;
                &s.window.interior[t] + &field.from_rational(BigRational::new(BigInt::one(), den.into()))
            })
            .collect();
        if !s.window.contains_strict(&t0) {
            continue;
        }
        let regular = s.window.facets.iter().all(|f| {
            let target = &f.offset - &dot(&f.normal, &t0, field);
            let gens: Vec<FieldElement> = s.f_images.iter().map(|g| dot(&f.normal, g, field)).collect();
            let den = common_denominator(std::iter::once(&target).chain(&gens)).lcm(&BigInt::one());
            let deg = field.degree();
            let lat = IntLattice::new(&gens.iter().map(|g| numerator(g, &den).to_big(deg)).collect::<Vec<_>>(), deg);
            !lat.contains(&numerator(&target, &den).to_big(deg))
        });
        if regular {
            return Ok(t0);
        }
    }
    Err(PatchError::NoRegularBase)
}

#[derive(Clone, Copy, Debug)]
pub struct PatchOptions {
    pub initial_radius: usize,
    /// Counts are not trusted as stable before this many seeds.
    pub min_seeds: usize,
    /// Hard cap on the number of seeds visited.
    pub max_seeds: usize,
}

impl PatchOptions {
    pub fn for_size(n_max: usize) -> Self {
        PatchOptions {
            initial_radius: 4 * (n_max + 1),
            min_seeds: 1 << 20,
            max_seeds: 1 << 23,
        }
    }
}

/// Membership bits of the ball around a seed.
type Bits = Vec<u64>;

struct Enumerator<'a> {
    s: &'a Scheme,
    forms: Vec<AffineForm>,
    base: Vec<IntVec>,
    ball: Vec<Vec<i64>>,
    /// Per facet, the sorted thresholds: w is in the patch of a seed with
    /// facet numerator x iff x < threshold(w) for every facet.
    thresholds: Vec<Vec<IntVec>>,
    /// Per facet, the position of each ball point's threshold.
    position: Vec<Vec<u32>>,
    /// Ball prefix length for each size n.
    prefix: Vec<usize>,
    /// Position of each ball point in the exact lexicographic order of π(w).
    phys_rank: Vec<usize>,
}

impl<'a> Enumerator<'a> {
    fn new(s: &'a Scheme, t0: &Point, n_max: usize) -> Self {
        let field = &s.field;
        let forms: Vec<AffineForm> = s
            .window
            .facets
            .iter()
            .map(|f| {
                let w: Vec<FieldElement> = s.f_images.iter().map(|g| dot(&f.normal, g, field)).collect();
                AffineForm::new(&(dot(&f.normal, t0, field) - &f.offset), &w)
            })
            .collect();
        let base: Vec<IntVec> = forms.iter().map(|f| f.base().clone()).collect();
        let ball = l1_ball(s.n, n_max);
        let mut thresholds = Vec::new();
        let mut position = Vec::new();
        for f in &forms {
            let th: Vec<IntVec> = ball.iter().map(|w| f.linear(w).neg()).collect();
            let mut order: Vec<usize> = (0..ball.len()).collect();
            order.sort_by(|&a, &b| cmp_num(&th[a], &th[b], field));
            let mut pos = vec![0u32; ball.len()];
            for (r, &k) in order.iter().enumerate() {
                pos[k] = r as u32;
            }
            thresholds.push(order.iter().map(|&k| th[k].clone()).collect());
            position.push(pos);
        }
        let prefix = (0..=n_max)
            .map(|n| ball.iter().take_while(|w| w.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>() <= n).count())
            .collect();
        let phys: Vec<Point> = ball.iter().map(|w| s.physical(w)).collect();
        let mut order: Vec<usize> = (0..ball.len()).collect();
        order.sort_by(|&a, &b| lex(&phys[a], &phys[b]));
        let mut phys_rank = vec![0; ball.len()];
        for (r, &i) in order.iter().enumerate() {
            phys_rank[i] = r;
        }
        Enumerator {
            s,
            forms,
            base,
            ball,
            thresholds,
            position,
            prefix,
            phys_rank,
        }
    }

    fn inside(&self, nums: &[IntVec]) -> bool {
        nums.iter().all(|v| v.sign(&self.s.field) < 0)
    }

    /// Number of thresholds below the seed value, per facet.
    fn ranks(&self, nums: &[IntVec]) -> Vec<u32> {
        nums.iter()
            .zip(&self.thresholds)
            .map(|(x, th)| th.partition_point(|t| cmp_num(t, x, &self.s.field).is_lt()) as u32)
            .collect()
    }

    fn bits(&self, ranks: &[u32]) -> Bits {
        let mut bits = vec![0u64; self.ball.len().div_ceil(64)];
        for k in 0..self.ball.len() {
            if self.position.iter().zip(ranks).all(|(pos, &r)| pos[k] >= r) {
                bits[k / 64] |= 1 << (k % 64);
            }
        }
        bits
    }

    fn prefix_bits(bits: &Bits, len: usize) -> Bits {
        let mut out: Bits = bits[..len.div_ceil(64)].to_vec();
        if len % 64 != 0 {
            *out.last_mut().unwrap() &= (1u64 << (len % 64)) - 1;
        }
        out
    }

    fn unpointed(&self, bits: &Bits, len: usize) -> Vec<Vec<i64>> {
        let members: Vec<usize> = (0..len).filter(|&k| bits[k / 64] >> (k % 64) & 1 == 1).collect();
        let Some(&base) = members.iter().min_by_key(|&&k| self.phys_rank[k]) else {
            return Vec::new();
        };
        let mut out: Vec<Vec<i64>> = members
            .iter()
            .map(|&k| self.ball[k].iter().zip(&self.ball[base]).map(|(a, b)| a - b).collect())
            .collect();
        out.sort();
        out
    }
}

/// p(n) and p_pt(n) for n ≤ n_max from the seeds of one point set.
///
/// Seeds are the lattice points z with t₀ + π_F(z) in K, reached by unit
/// steps from the origin inside the ball of the current search radius. The
/// radius doubles until every count is unchanged over two doublings and at
/// least `min_seeds` seeds have been seen.
pub fn complexity_direct(s: &Scheme, n_max: usize, opts: PatchOptions) -> Result<ComplexitySeries, PatchError> {
    let t0 = regular_base_point(s)?;
    let en = Enumerator::new(s, &t0, n_max);
    let dim = s.n;
    let steps: Vec<Vec<IntVec>> = (0..dim)
        .map(|k| {
            let mut e = vec![0i64; dim];
            e[k] = 1;
            en.forms.iter().map(|f| f.linear(&e)).collect()
        })
        .collect();
    let mut visited: HashSet<Vec<i64>> = HashSet::new();
    let origin = vec![0i64; dim];
    visited.insert(origin.clone());
    let mut pending: Vec<(Vec<i64>, Vec<IntVec>)> = vec![(origin, en.base.clone())];
    let mut seeds = 0usize;
    let mut tuples: HashSet<Vec<u32>> = HashSet::new();
    let mut classes: Vec<HashSet<Bits>> = vec![HashSet::new(); n_max + 1];
    let mut history: Vec<Vec<u64>> = Vec::new();
    let mut radii: Vec<usize> = Vec::new();
    let mut radius = opts.initial_radius.max(1);
    loop {
        let mut later = Vec::new();
        let mut queue: std::collections::VecDeque<(Vec<i64>, Vec<IntVec>)> = pending.drain(..).collect();
        while let Some((z, nums)) = queue.pop_front() {
            let norm: usize = z.iter().map(|x| x.unsigned_abs() as usize).sum();
            if norm > radius {
                later.push((z, nums));
                continue;
            }
            seeds += 1;
            let r = en.ranks(&nums);
            if !tuples.contains(&r) {
                let b = en.bits(&r);
                for (n, set) in classes.iter_mut().enumerate() {
                    set.insert(Enumerator::prefix_bits(&b, en.prefix[n]));
                }
                tuples.insert(r);
            }
            for (k, step) in steps.iter().enumerate() {
                for sign in [-1i64, 1] {
                    let mut y = z.clone();
                    y[k] += sign;
                    if visited.contains(&y) {
                        continue;
                    }
                    let ny: Vec<IntVec> = nums
                        .iter()
                        .zip(step)
                        .map(|(a, b)| if sign > 0 { a.add(b) } else { a.sub(b) })
                        .collect();
                    if en.inside(&ny) {
                        visited.insert(y.clone());
                        queue.push_back((y, ny));
                    }
                }
            }
        }
        pending = later;
        history.push(classes.iter().map(|c| c.len() as u64).collect());
        radii.push(radius);
        let h = history.len();
        let stable = h >= 3
            && history[h - 1] == history[h - 2]
            && history[h - 2] == history[h - 3]
            && seeds >= opts.min_seeds;
        if stable || pending.is_empty() || seeds > opts.max_seeds {
            let series = finish(&en, &classes, &history, &radii, seeds);
            if stable || pending.is_empty() {
                return Ok(series);
            }
            return Err(PatchError::SaturationNotReached {
                radius,
                partial: Box::new(series),
            });
        }
        radius *= 2;
    }
}

fn finish(en: &Enumerator, classes: &[HashSet<Bits>], history: &[Vec<u64>], radii: &[usize], seeds: usize) -> ComplexitySeries {
    let n_max = classes.len() - 1;
    let last = history.last().unwrap();
    let mut p = Vec::new();
    let mut multiplicity = Vec::new();
    for (n, set) in classes.iter().enumerate() {
        let mut counts: HashMap<Vec<Vec<i64>>, u64> = HashMap::new();
        let mut sorted: Vec<&Bits> = set.iter().collect();
        sorted.sort();
        for b in sorted {
            *counts.entry(en.unpointed(b, en.prefix[n])).or_default() += 1;
        }
        p.push(counts.len() as u64);
        multiplicity.push(counts.values().copied().max().unwrap_or(0));
    }
    let saturation_radius = (0..=n_max)
        .map(|n| {
            let first = history.iter().position(|h| h[n] == last[n]).unwrap();
            radii[first]
        })
        .collect();
    ComplexitySeries {
        n_values: (0..=n_max).collect(),
        p,
        p_pt: last.clone(),
        saturation_radius,
        multiplicity,
        seeds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::load_scheme;

    #[test]
    fn base_point_is_regular() {
        for name in ["golden_sturmian", "octagonal", "billiard3", "generic42"] {
            let s = load_scheme(name).unwrap();
            let t0 = regular_base_point(&s).unwrap();
            assert!(s.window.contains_strict(&t0));
            assert!(is_n_regular(&s, &t0, 3), "{name}");
        }
    }

    #[test]
    fn vertex_seed_is_singular() {
        let s = load_scheme("octagonal").unwrap();
        assert!(!is_n_regular(&s, &s.window.vertices[0], 0));
        assert!(is_n_regular(&s, &s.window.interior, 0));
    }

    #[test]
    fn small_patches() {
        let s = load_scheme("golden_sturmian").unwrap();
        let t0 = regular_base_point(&s).unwrap();
        let seed = Seed {
            internal: t0.clone(),
            lattice_point: vec![0, 0],
        };
        let p0 = build_patch(&s, &seed, 0).unwrap();
        assert_eq!(p0.lifted, vec![vec![0, 0]]);
        let p3 = build_patch(&s, &seed, 3).unwrap();
        let expect = l1_ball(2, 3)
            .iter()
            .filter(|w| {
                let x: Point = t0.iter().zip(s.internal(w)).map(|(a, b)| a + &b).collect();
                s.window.contains_closed(&x)
            })
            .count();
        assert_eq!(p3.lifted.len(), expect);
        // Re-basing makes the unpointed key independent of the seed point.
        let f = &s.field;
        let two = Patch {
            size: 1,
            lifted: vec![],
            physical: vec![vec![f.zero()], vec![f.one()]],
        };
        let shifted = Patch {
            size: 1,
            lifted: vec![],
            physical: vec![vec![f.from_int(-1)], vec![f.zero()]],
        };
        assert_eq!(canonical_key(&two, false), canonical_key(&shifted, false));
        assert_ne!(canonical_key(&two, true), canonical_key(&shifted, true));
    }

    #[test]
    fn octagonal_small_series() {
        let s = load_scheme("octagonal").unwrap();
        let series = complexity_direct(&s, 2, PatchOptions::for_size(2)).unwrap();
        assert_eq!(series.p_pt, vec![1, 41, 185]);
        for n in 0..=2 {
            assert!(series.p[n] <= series.p_pt[n]);
            assert!(series.p_pt[n] <= series.multiplicity[n] * series.p[n]);
        }
    }
}
