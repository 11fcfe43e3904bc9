//! Univariate polynomial helpers over Z, Q and Z/p.
//!
//! Coefficient vectors are stored constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IntPoly = Vec<BigInt>;
pub type RatPoly = Vec<BigRational>;

pub fn trim_rat(p: &mut RatPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn to_rat(p: &[BigInt]) -> RatPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub fn derivative_int(p: &[BigInt]) -> IntPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

pub fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn eval_rat(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sign of an integer polynomial at a rational point, without building the
/// rational value of every Horner step.
pub fn sign_int_at(p: &[BigInt], x: &BigRational) -> i32 {
    // Homogenised Horner: q^deg * p(a/q).
    let (a, q) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * a + c * &qpow;
        qpow *= q;
    }
    sign_of(&acc)
}

pub fn sign_of<T: Signed>(v: &T) -> i32 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Quotient and remainder over Q. Panics on a zero divisor.
pub fn divrem_rat(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut b = b.to_vec();
    trim_rat(&mut b);
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = a.to_vec();
    trim_rat(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (k, bc) in b.iter().enumerate() {
            let t = &f * bc;
            r[shift + k] -= t;
        }
        q[shift] = f;
        r.pop();
        trim_rat(&mut r);
    }
    (q, r)
}

pub fn gcd_rat(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_rat(&mut x);
    trim_rat(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem_rat(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &l;
        }
    }
    x
}

pub fn mul_rat(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Number of distinct real roots of a squarefree polynomial in the closed
/// interval `[lo, hi]`, by Sturm sequences.
pub fn sturm_count(p: &[BigInt], lo: &BigRational, hi: &BigRational) -> usize {
    let f = to_rat(p);
    let mut seq: Vec<RatPoly> = vec![f.clone(), to_rat(&derivative_int(p))];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = divrem_rat(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |x: &BigRational| {
        let signs: Vec<i32> = seq
            .iter()
            .map(|q| sign_of(&eval_rat(q, x)))
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let mut count = changes(lo).saturating_sub(changes(hi));
    if eval_rat(&f, lo).is_zero() {
        count += 1;
    }
    count
}

/// Encloses `p(x)` for `x` in `[a, b]` by interval Horner evaluation.
pub fn interval_eval(p: &[BigRational], a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for c in p.iter().rev() {
        let cands = [&lo * a, &lo * b, &hi * a, &hi * b];
        let mut mn = cands[0].clone();
        let mut mx = cands[0].clone();
        for v in &cands[1..] {
            if *v < mn {
                mn = v.clone();
            }
            if *v > mx {
                mx = v.clone();
            }
        }
        lo = mn + c;
        hi = mx + c;
    }
    (lo, hi)
}

// ---------------------------------------------------------------------------
// Irreducibility over Q for monic integer polynomials of degree <= 6.

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Does the monic integer polynomial have a rational (hence integer) root?
pub fn has_rational_root(p: &[BigInt]) -> bool {
    if p[0].is_zero() {
        return true;
    }
    divisors(&p[0])
        .into_iter()
        .flat_map(|d| [d.clone(), -d])
        .any(|r| eval_int(p, &r).is_zero())
}

fn is_squarefree(p: &[BigInt]) -> bool {
    let g = gcd_rat(&to_rat(p), &to_rat(&derivative_int(p)));
    g.len() <= 1
}

// Polynomials over Z/p with u64 coefficients.
type ModPoly = Vec<u64>;

fn trim_mod(p: &mut ModPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn inv_mod(a: u64, m: u64) -> u64 {
    let (g, x, _) = egcd(a as i128, m as i128);
    debug_assert_eq!(g, 1);
    x.rem_euclid(m as i128) as u64
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

fn rem_mod(a: &[u64], b: &[u64], m: u64) -> ModPoly {
    let mut r = a.to_vec();
    trim_mod(&mut r);
    let inv = inv_mod(*b.last().unwrap(), m);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = (*r.last().unwrap() as u128 * inv as u128 % m as u128) as u64;
        for (k, bc) in b.iter().enumerate() {
            let t = (f as u128 * *bc as u128 % m as u128) as u64;
            r[shift + k] = (r[shift + k] + m - t) % m;
        }
        trim_mod(&mut r);
    }
    r
}

fn mulmod_poly(a: &[u64], b: &[u64], f: &[u64], m: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + *x as u128 * *y as u128) % m as u128) as u64;
        }
    }
    rem_mod(&out, f, m)
}

fn gcd_mod(a: &[u64], b: &[u64], m: u64) -> ModPoly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_mod(&mut x);
    trim_mod(&mut y);
    while !y.is_empty() {
        let r = rem_mod(&x, &y, m);
        x = y;
        y = r;
    }
    x
}

fn powmod_poly(base: &[u64], mut e: u64, f: &[u64], m: u64) -> ModPoly {
    let mut result = vec![1u64];
    let mut b = rem_mod(base, f, m);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_poly(&result, &b, f, m);
        }
        b = mulmod_poly(&b, &b, f, m);
        e >>= 1;
    }
    result
}

fn divexact_mod(a: &[u64], b: &[u64], m: u64) -> ModPoly {
    let mut r = a.to_vec();
    let inv = inv_mod(*b.last().unwrap(), m);
    let mut q = vec![0u64; r.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = (*r.last().unwrap() as u128 * inv as u128 % m as u128) as u64;
        q[shift] = f;
        for (k, bc) in b.iter().enumerate() {
            let t = (f as u128 * *bc as u128 % m as u128) as u64;
            r[shift + k] = (r[shift + k] + m - t) % m;
        }
        r.pop();
    }
    q
}

/// Degrees of the irreducible factors of `p mod m`, or `None` when the
/// reduction is not squarefree (the prime is then useless).
fn factor_degrees_mod(p: &[BigInt], m: u64) -> Option<Vec<usize>> {
    let big_m = BigInt::from(m);
    let mut f: ModPoly = p
        .iter()
        .map(|c| c.mod_floor(&big_m).to_u64().unwrap())
        .collect();
    trim_mod(&mut f);
    let df: ModPoly = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| (*c as u128 * k as u128 % m as u128) as u64)
        .collect();
    let mut df = df;
    trim_mod(&mut df);
    if df.is_empty() || gcd_mod(&f, &df, m).len() > 1 {
        return None;
    }
    let mut degrees = Vec::new();
    let mut rest = f;
    let x: ModPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    while rest.len() > 1 {
        if 2 * d > rest.len() - 1 {
            degrees.push(rest.len() - 1);
            break;
        }
        h = powmod_poly(&h, m, &rest, m);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + m - 1) % m;
        trim_mod(&mut hx);
        let g = gcd_mod(&rest, &hx, m);
        if g.len() > 1 {
            let gdeg = g.len() - 1;
            for _ in 0..gdeg / d {
                degrees.push(d);
            }
            rest = divexact_mod(&rest, &g, m);
            h = rem_mod(&h, &rest, m);
        }
        d += 1;
    }
    Some(degrees)
}

fn subset_sums(parts: &[usize], total: usize) -> Vec<bool> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &k in parts {
        for s in (k..=total).rev() {
            if reach[s - k] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Searches for a monic integer factor of the given degree by Kronecker's
/// interpolation method.
fn kronecker_factor(p: &[BigInt], k: usize) -> Option<IntPoly> {
    // Pick k+1 integer points with small nonzero values.
    let mut points: Vec<(BigInt, BigInt)> = Vec::new();
    let mut cands: Vec<i64> = (0..40).flat_map(|i| [i, -i - 1]).collect();
    cands.sort_by_key(|x| x.abs());
    let mut scored: Vec<(BigInt, BigInt)> = cands
        .iter()
        .map(|&x| {
            let x = BigInt::from(x);
            let v = eval_int(p, &x);
            (x, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    scored.sort_by_key(|(_, v)| divisors(v).len());
    points.extend(scored.into_iter().take(k + 1));
    let divs: Vec<Vec<BigInt>> = points
        .iter()
        .map(|(_, v)| {
            divisors(v)
                .into_iter()
                .flat_map(|d| [d.clone(), -d])
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; k + 1];
    loop {
        let vals: Vec<BigInt> = idx.iter().zip(&divs).map(|(i, d)| d[*i].clone()).collect();
        if let Some(g) = interpolate_monic(&points, &vals, k) {
            let (_, r) = divrem_rat(&to_rat(p), &to_rat(&g));
            if r.is_empty() {
                return Some(g);
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < divs[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn interpolate_monic(points: &[(BigInt, BigInt)], vals: &[BigInt], k: usize) -> Option<IntPoly> {
    let mut acc: RatPoly = Vec::new();
    for (i, (xi, _)) in points.iter().enumerate() {
        let mut basis: RatPoly = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = mul_rat(&basis, &[BigRational::from_integer(-xj), BigRational::one()]);
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(vals[i].clone()) / denom;
        acc.resize(acc.len().max(basis.len()), BigRational::zero());
        for (t, c) in basis.into_iter().enumerate() {
            acc[t] += c * &scale;
        }
    }
    trim_rat(&mut acc);
    if acc.len() != k + 1 || !acc[k].is_one() || acc.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(acc.into_iter().map(|c| c.to_integer()).collect())
}

const SMALL_PRIMES: [u64; 15] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

/// Irreducibility of a monic integer polynomial of degree at most 6.
/// Returns `None` when the degree is outside the supported range.
pub fn is_irreducible(p: &[BigInt]) -> Option<bool> {
    let deg = p.len() - 1;
    if deg == 1 {
        return Some(true);
    }
    if deg > 6 {
        return None;
    }
    if has_rational_root(p) || !is_squarefree(p) {
        return Some(false);
    }
    if deg <= 3 {
        return Some(true);
    }
    let mut possible = vec![true; deg + 1];
    for &m in SMALL_PRIMES.iter().chain(&[2u64]) {
        if let Some(degs) = factor_degrees_mod(p, m) {
            let reach = subset_sums(&degs, deg);
            for s in 1..deg {
                possible[s] &= reach[s];
            }
        }
        if (1..deg).all(|s| !possible[s]) {
            return Some(true);
        }
    }
    // Exact search for a factor of degree 2 or 3 (degree 1 was excluded).
    for k in 2..=deg / 2 {
        if possible[k] && kronecker_factor(p, k).is_some() {
            return Some(false);
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn irreducibility_cases() {
        assert_eq!(is_irreducible(&ip(&[-2, 0, 1])), Some(true));
        assert_eq!(is_irreducible(&ip(&[-1, -1, 1])), Some(true));
        assert_eq!(is_irreducible(&ip(&[-4, 0, 1])), Some(false));
        assert_eq!(is_irreducible(&ip(&[1, 0, -10, 0, 1])), Some(true));
        // (x^2 - 2)(x^2 - 3)
        assert_eq!(is_irreducible(&ip(&[6, 0, -5, 0, 1])), Some(false));
        // (x^2 + x + 1)(x^3 - 2)
        assert_eq!(is_irreducible(&ip(&[-2, -2, -2, 1, 1, 1])), Some(false));
        assert_eq!(is_irreducible(&ip(&[1, 0, 0, 0, 0, 0, 0, 1])), None);
    }

    #[test]
    fn sturm_counts_roots() {
        let p = ip(&[-2, 0, 1]);
        assert_eq!(sturm_count(&p, &q(1, 1), &q(2, 1)), 1);
        assert_eq!(sturm_count(&p, &q(-2, 1), &q(2, 1)), 2);
        assert_eq!(sturm_count(&p, &q(2, 1), &q(3, 1)), 0);
        let p = ip(&[1, 0, -10, 0, 1]);
        assert_eq!(sturm_count(&p, &q(3, 1), &q(4, 1)), 1);
        assert_eq!(sturm_count(&p, &q(0, 1), &q(4, 1)), 2);
    }

    #[test]
    fn mod_p_degrees() {
        // x^4 - 10x^2 + 1 splits into factors of degree <= 2 modulo every prime.
        for &m in &SMALL_PRIMES {
            if let Some(d) = factor_degrees_mod(&ip(&[1, 0, -10, 0, 1]), m) {
                assert!(d.iter().all(|&k| k <= 2), "p = {m}: {d:?}");
            }
        }
        assert_eq!(factor_degrees_mod(&ip(&[-2, 0, 1]), 5), Some(vec![2]));
    }
}
