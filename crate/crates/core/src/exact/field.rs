//! Real number fields Q(θ) given by a minimal polynomial and an isolating
//! interval, and exact elements of such fields.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, IntPoly, RatPoly};
use super::ExactError;

/// Binary digits kept in the cached enclosure of θ.
const REFINE_BITS: u64 = 100;
/// Fixed-point scale of the dyadic power table used by the integer sign filter.
pub(crate) const DYADIC_SHIFT: u32 = 64;

#[derive(Clone)]
pub struct FieldContext(Arc<FieldInner>);

struct FieldInner {
    minpoly: IntPoly,
    interval: (BigRational, BigRational),
    /// θ lies strictly inside (lo, hi), or lo = hi = θ for degree one.
    lo: BigRational,
    hi: BigRational,
    /// Enclosures of θ^t scaled by 2^DYADIC_SHIFT, when they fit in i128.
    dyadic: Option<Vec<(i128, i128)>>,
    approx: f64,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(θ) minpoly {:?} θ≈{}", self.minpoly_i64(), self.0.approx)
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.minpoly == other.0.minpoly && self.0.lo <= other.0.hi && other.0.lo <= self.0.hi)
    }
}
impl Eq for FieldContext {}

impl FieldContext {
    /// Validates the polynomial and the interval and builds the context.
    pub fn new(minpoly: IntPoly, lo: BigRational, hi: BigRational) -> Result<Self, ExactError> {
        let mut minpoly = minpoly;
        while minpoly.len() > 1 && minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        if minpoly.len() < 2 {
            return Err(ExactError::DegreeTooLow);
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(ExactError::NotMonic);
        }
        if lo > hi {
            return Err(ExactError::NoRootInInterval);
        }
        match poly::is_irreducible(&minpoly) {
            None => return Err(ExactError::UnsupportedDegree(minpoly.len() - 1)),
            Some(false) => return Err(ExactError::ReduciblePolynomial),
            Some(true) => {}
        }
        let roots = if lo == hi {
            usize::from(poly::sign_int_at(&minpoly, &lo) == 0)
        } else {
            poly::sturm_count(&minpoly, &lo, &hi)
        };
        match roots {
            0 => return Err(ExactError::NoRootInInterval),
            1 => {}
            _ => return Err(ExactError::MultipleRootsInInterval),
        }
        let interval = (lo.clone(), hi.clone());
        let (lo, hi) = if minpoly.len() == 2 {
            let root = BigRational::from_integer(-minpoly[0].clone());
            (root.clone(), root)
        } else {
            refine(&minpoly, lo, hi, REFINE_BITS)
        };
        let approx = ((&lo + &hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN);
        let dyadic = dyadic_powers(minpoly.len() - 1, &lo, &hi);
        Ok(FieldContext(Arc::new(FieldInner {
            minpoly,
            interval,
            lo,
            hi,
            dyadic,
            approx,
        })))
    }

    /// Convenience constructor from machine integers and rational strings.
    pub fn from_parts(minpoly: &[i64], lo: &str, hi: &str) -> Result<Self, ExactError> {
        let lo = parse_rational(lo)?;
        let hi = parse_rational(hi)?;
        Self::new(minpoly.iter().map(|&c| BigInt::from(c)).collect(), lo, hi)
    }

    pub fn rationals() -> Self {
        Self::from_parts(&[0, 1], "0", "0").expect("x is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.0.minpoly
    }

    pub fn minpoly_i64(&self) -> Vec<i64> {
        self.0.minpoly.iter().map(|c| c.to_i64().unwrap_or(i64::MAX)).collect()
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.0.interval.0, &self.0.interval.1)
    }

    pub fn theta_approx(&self) -> f64 {
        self.0.approx
    }

    pub fn same(&self, other: &FieldContext) -> bool {
        self == other
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            ctx: self.clone(),
            c: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_rational(&self, v: BigRational) -> FieldElement {
        let mut e = self.zero();
        e.c[0] = v;
        e
    }

    /// θ itself (for degree one this is the rational root).
    pub fn theta(&self) -> FieldElement {
        self.element(vec![BigRational::zero(), BigRational::one()])
    }

    /// Builds Σ coeffs[k] θ^k, reducing modulo the minimal polynomial.
    pub fn element(&self, coeffs: Vec<BigRational>) -> FieldElement {
        let c = self.reduce(coeffs);
        FieldElement { ctx: self.clone(), c }
    }

    pub fn element_from_strs<S: AsRef<str>>(&self, coeffs: &[S]) -> Result<FieldElement, ExactError> {
        let c = coeffs
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.element(c))
    }

    fn reduce(&self, mut c: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        let m = &self.0.minpoly;
        while c.len() > d {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = c.len() - d;
            for t in 0..d {
                if !m[t].is_zero() {
                    c[shift + t] -= &top * BigRational::from_integer(m[t].clone());
                }
            }
        }
        c.resize(d, BigRational::zero());
        c
    }

    /// Exact sign of Σ c_t θ^t for rational coefficients.
    pub fn sign_of_coeffs(&self, c: &[BigRational]) -> i32 {
        if c.iter().all(|x| x.is_zero()) {
            return 0;
        }
        if self.degree() == 1 {
            return poly::sign_of(&poly::eval_rat(c, &self.0.lo));
        }
        let mut lo = self.0.lo.clone();
        let mut hi = self.0.hi.clone();
        loop {
            let (a, b) = poly::interval_eval(c, &lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            // The element is nonzero, so a fine enough enclosure separates it from 0.
            (lo, hi) = refine(&self.0.minpoly, lo, hi, 32);
        }
    }

    /// Sign of Σ a_t θ^t for integer coefficients. The dyadic table decides
    /// most cases; the remainder falls back to the exact routine.
    pub fn sign_of_ints(&self, a: &[i128]) -> i32 {
        if let Some(s) = self.sign_filter(a) {
            return s;
        }
        let c: Vec<BigRational> = a.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        self.sign_of_coeffs(&c)
    }

    pub(crate) fn sign_filter(&self, a: &[i128]) -> Option<i32> {
        if a.iter().all(|&x| x == 0) {
            return Some(0);
        }
        let table = self.0.dyadic.as_ref()?;
        let mut lo: i128 = 0;
        let mut hi: i128 = 0;
        for (&x, &(pl, ph)) in a.iter().zip(table) {
            if x == 0 {
                continue;
            }
            let (l, h) = if x > 0 {
                (x.checked_mul(pl)?, x.checked_mul(ph)?)
            } else {
                (x.checked_mul(ph)?, x.checked_mul(pl)?)
            };
            lo = lo.checked_add(l)?;
            hi = hi.checked_add(h)?;
        }
        if lo > 0 {
            Some(1)
        } else if hi < 0 {
            Some(-1)
        } else {
            None
        }
    }

    pub fn sign_of_bigints(&self, a: &[BigInt]) -> i32 {
        if let Some(small) = a.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>() {
            return self.sign_of_ints(&small);
        }
        let c: Vec<BigRational> = a.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.sign_of_coeffs(&c)
    }

    /// Enclosure of the field element's value, as rationals.
    pub fn enclose(&self, c: &[BigRational]) -> (BigRational, BigRational) {
        if self.degree() == 1 {
            let v = poly::eval_rat(c, &self.0.lo);
            return (v.clone(), v);
        }
        poly::interval_eval(c, &self.0.lo, &self.0.hi)
    }
}

/// Bisects (lo, hi) around the unique root until the width shrinks by `bits`.
fn refine(p: &[BigInt], mut lo: BigRational, mut hi: BigRational, bits: u64) -> (BigRational, BigRational) {
    let target = (&hi - &lo) / BigRational::from_integer(BigInt::one() << bits);
    let mut s_lo = poly::sign_int_at(p, &lo);
    if s_lo == 0 {
        // Endpoint root only happens for degree one, handled by the caller;
        // nudge inward otherwise.
        return (lo.clone(), lo);
    }
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let s = poly::sign_int_at(p, &mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    // Keep the root strictly inside.
    if poly::sign_int_at(p, &hi) == 0 {
        hi += &target;
    }
    (lo, hi)
}

fn dyadic_powers(deg: usize, lo: &BigRational, hi: &BigRational) -> Option<Vec<(i128, i128)>> {
    let scale = BigRational::from_integer(BigInt::one() << DYADIC_SHIFT);
    let mut out = Vec::with_capacity(deg);
    for t in 0..deg {
        let mut mono = vec![BigRational::zero(); t + 1];
        mono[t] = BigRational::one();
        let (a, b) = poly::interval_eval(&mono, lo, hi);
        let a = (a * &scale).floor().to_integer().to_i128()?;
        let b = (b * &scale).ceil().to_integer().to_i128()?;
        // Leave headroom for coefficients up to 2^40.
        if a.unsigned_abs().max(b.unsigned_abs()) >= 1u128 << 86 {
            return None;
        }
        out.push((a, b));
    }
    Some(out)
}

pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| ExactError::BadRational(s.to_string()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| ExactError::BadRational(s.to_string()))?;
        if d.is_zero() {
            return Err(ExactError::BadRational(s.to_string()));
        }
        Ok(BigRational::new(n, d))
    } else {
        BigInt::from_str(t)
            .map(BigRational::from_integer)
            .map_err(|_| ExactError::BadRational(s.to_string()))
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An exact element Σ c_k θ^k of a number field.
#[derive(Clone)]
pub struct FieldElement {
    ctx: FieldContext,
    c: Vec<BigRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = format_rational(c);
            terms.push(match k {
                0 => coeff,
                1 => format!("{coeff}·θ"),
                _ => format!("{coeff}·θ^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.ctx == other.ctx
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn sign(&self) -> i32 {
        self.ctx.sign_of_coeffs(&self.c)
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    pub fn abs(&self) -> FieldElement {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (a, b) = self.ctx.enclose(&self.c);
        ((a + b) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    pub fn enclosure(&self) -> (BigRational, BigRational) {
        self.ctx.enclose(&self.c)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(format_rational).collect()
    }

    pub fn scale(&self, q: &BigRational) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|x| x * q).collect(),
        }
    }

    pub fn inv(&self) -> Result<FieldElement, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let m = poly::to_rat(self.ctx.minpoly());
        let s = inverse_mod(&self.c, &m);
        Ok(self.ctx.element(s))
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut r = self.ctx.one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    fn check(&self, other: &Self) {
        assert!(
            self.ctx == other.ctx,
            "arithmetic between elements of different fields"
        );
    }
}

/// s with s·a ≡ 1 mod m, for a coprime to m.
fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> RatPoly {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    poly::trim_rat(&mut r1);
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while r1.len() > 1 {
        let (q, r) = poly::divrem_rat(&r0, &r1);
        let qs = poly::mul_rat(&q, &s1);
        let mut s2 = s0.clone();
        s2.resize(s2.len().max(qs.len()), BigRational::zero());
        for (k, v) in qs.into_iter().enumerate() {
            s2[k] -= v;
        }
        poly::trim_rat(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    let c = r1[0].clone();
    s1.into_iter().map(|x| x / &c).collect()
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        FieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        FieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, o: &FieldElement) -> FieldElement {
        self.check(o);
        let prod = poly::mul_rat(&self.c, &o.c);
        self.ctx.element(prod)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn div(self, o: &FieldElement) -> FieldElement {
        let inv = o.inv().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            ctx: self.ctx.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> FieldContext {
        FieldContext::from_parts(&[-2, 0, 1], "1", "2").unwrap()
    }

    #[test]
    fn make_examples() {
        let q = FieldContext::from_parts(&[-1, 1], "1", "1").unwrap();
        assert_eq!(q.degree(), 1);
        assert_eq!(q.theta().sign(), 1);
        assert_eq!((q.theta() - q.one()).sign(), 0);
        assert!((sqrt2().theta_approx() - 2f64.sqrt()).abs() < 1e-12);
        let b = FieldContext::from_parts(&[1, 0, -10, 0, 1], "3", "4").unwrap();
        assert!((b.theta_approx() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn make_rejections() {
        assert_eq!(
            FieldContext::from_parts(&[-4, 0, 1], "1", "3").unwrap_err(),
            ExactError::ReduciblePolynomial
        );
        assert_eq!(
            FieldContext::from_parts(&[-2, 0, 1], "2", "3").unwrap_err(),
            ExactError::NoRootInInterval
        );
        assert_eq!(
            FieldContext::from_parts(&[-2, 0, 1], "-2", "2").unwrap_err(),
            ExactError::MultipleRootsInInterval
        );
    }

    #[test]
    fn sign_examples() {
        let f = sqrt2();
        assert_eq!(f.zero().sign(), 0);
        assert_eq!((f.theta() - f.one()).sign(), 1);
        assert_eq!((f.from_int(3) - f.theta() * f.from_int(2)).sign(), 1);
        assert_eq!(f.sign_of_ints(&[-3, 2]), -1);
    }

    #[test]
    fn inverse_and_identities() {
        let f = FieldContext::from_parts(&[1, 0, -10, 0, 1], "3", "4").unwrap();
        let t = f.theta();
        let s2 = (t.pow(3) - f.from_int(9) * &t).scale(&BigRational::new(1.into(), 2.into()));
        let s3 = (f.from_int(11) * &t - t.pow(3)).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(&s2 * &s2, f.from_int(2));
        assert_eq!(&s3 * &s3, f.from_int(3));
        let a = &s2 + &f.from_int(5);
        assert_eq!(&a * &a.inv().unwrap(), f.one());
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;

    use super::*;

    fn golden() -> FieldContext {
        FieldContext::from_parts(&[-1, -1, 1], "1", "2").unwrap()
    }

    fn elem(f: &FieldContext, (a, b): (i64, i64)) -> FieldElement {
        &f.from_int(a) + &(&f.from_int(b) * &f.theta())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn field_axioms(x in (-50i64..50, -50i64..50), y in (-50i64..50, -50i64..50)) {
            let f = golden();
            let (a, b) = (elem(&f, x), elem(&f, y));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b) * b.inv().unwrap(), a.clone());
            }
        }

        #[test]
        fn order_agrees_with_floats(x in (-50i64..50, -50i64..50), y in (-50i64..50, -50i64..50)) {
            let f = golden();
            let (a, b) = (elem(&f, x), elem(&f, y));
            let (fa, fb) = (a.to_f64(), b.to_f64());
            if (fa - fb).abs() > 1e-9 {
                prop_assert_eq!(a.cmp_exact(&b), fa.partial_cmp(&fb).unwrap());
            } else {
                prop_assert_eq!(a.cmp_exact(&b) == std::cmp::Ordering::Equal, a == b);
            }
        }
    }
}
