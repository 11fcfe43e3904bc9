//! Integer-coefficient representation of field elements with a shared
//! denominator, for tight loops over lattice points.
//!
//! Values are kept as fixed-width coefficient arrays while they fit; any
//! overflow promotes the computation to arbitrary precision, so results are
//! always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::field::{FieldContext, FieldElement};

pub const MAX_DEGREE: usize = 6;

/// Small entries stay well inside i128 so that sums of a few of them and
/// products with the dyadic table are checked rather than wrapped.
fn fits(v: i128) -> bool {
    v.unsigned_abs() < 1u128 << 100
}

/// Numerator coefficients of a field element over an implicit denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IntVec {
    Small([i128; MAX_DEGREE]),
    Big(Vec<BigInt>),
}

impl IntVec {
    pub fn zero() -> Self {
        IntVec::Small([0; MAX_DEGREE])
    }

    pub fn from_big(mut v: Vec<BigInt>) -> Self {
        v.resize(MAX_DEGREE, BigInt::zero());
        let mut a = [0i128; MAX_DEGREE];
        for (k, x) in v.iter().enumerate() {
            match x.to_i128() {
                Some(s) if fits(s) => a[k] = s,
                _ => return IntVec::Big(v),
            }
        }
        IntVec::Small(a)
    }

    pub fn to_big(&self, deg: usize) -> Vec<BigInt> {
        match self {
            IntVec::Small(a) => a[..deg].iter().map(|&x| BigInt::from(x)).collect(),
            IntVec::Big(v) => {
                let mut v = v.clone();
                v.resize(deg, BigInt::zero());
                v
            }
        }
    }

    pub fn add(&self, o: &IntVec) -> IntVec {
        if let (IntVec::Small(a), IntVec::Small(b)) = (self, o) {
            let mut out = [0i128; MAX_DEGREE];
            let mut ok = true;
            for k in 0..MAX_DEGREE {
                match a[k].checked_add(b[k]) {
                    Some(v) if fits(v) => out[k] = v,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return IntVec::Small(out);
            }
        }
        let a = self.to_big(MAX_DEGREE);
        let b = o.to_big(MAX_DEGREE);
        IntVec::from_big(a.into_iter().zip(b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, o: &IntVec) -> IntVec {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> IntVec {
        match self {
            IntVec::Small(a) => {
                let mut out = [0i128; MAX_DEGREE];
                for k in 0..MAX_DEGREE {
                    out[k] = -a[k];
                }
                IntVec::Small(out)
            }
            IntVec::Big(v) => IntVec::Big(v.iter().map(|x| -x).collect()),
        }
    }

    /// Multiplies by a machine integer.
    pub fn scale(&self, s: i64) -> IntVec {
        if let IntVec::Small(a) = self {
            let mut out = [0i128; MAX_DEGREE];
            let mut ok = true;
            for k in 0..MAX_DEGREE {
                match a[k].checked_mul(s as i128) {
                    Some(v) if fits(v) => out[k] = v,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return IntVec::Small(out);
            }
        }
        IntVec::from_big(self.to_big(MAX_DEGREE).into_iter().map(|x| x * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IntVec::Small(a) => a.iter().all(|&x| x == 0),
            IntVec::Big(v) => v.iter().all(|x| x.is_zero()),
        }
    }

    /// Exact sign of the represented numerator.
    pub fn sign(&self, field: &FieldContext) -> i32 {
        let deg = field.degree();
        match self {
            IntVec::Small(a) => field.sign_of_ints(&a[..deg]),
            IntVec::Big(v) => field.sign_of_bigints(&v[..deg.min(v.len())]),
        }
    }
}

/// The affine map z ↦ (base + Σ z_k weights[k]) / den from Z^n to the field.
#[derive(Clone, Debug)]
pub struct AffineForm {
    field: FieldContext,
    den: BigInt,
    base: IntVec,
    weights: Vec<IntVec>,
}

/// Least common denominator of a list of field elements.
pub fn common_denominator<'a>(elems: impl IntoIterator<Item = &'a FieldElement>) -> BigInt {
    elems
        .into_iter()
        .flat_map(|e| e.coeffs().iter())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Numerator of `e` over the denominator `den` (which must clear it).
pub fn numerator(e: &FieldElement, den: &BigInt) -> IntVec {
    let scale = BigRational::from_integer(den.clone());
    let v: Vec<BigInt> = e
        .coeffs()
        .iter()
        .map(|c| {
            let x = c * &scale;
            debug_assert!(x.is_integer());
            x.to_integer()
        })
        .collect();
    IntVec::from_big(v)
}

impl AffineForm {
    pub fn new(base: &FieldElement, weights: &[FieldElement]) -> Self {
        let den = common_denominator(std::iter::once(base).chain(weights));
        Self::with_denominator(base, weights, den)
    }

    pub fn with_denominator(base: &FieldElement, weights: &[FieldElement], den: BigInt) -> Self {
        AffineForm {
            field: base.field().clone(),
            base: numerator(base, &den),
            weights: weights.iter().map(|w| numerator(w, &den)).collect(),
            den,
        }
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    /// Numerator of the linear part only (no base).
    pub fn linear(&self, z: &[i64]) -> IntVec {
        let mut acc = IntVec::zero();
        for (w, &k) in self.weights.iter().zip(z) {
            if k != 0 {
                acc = acc.add(&w.scale(k));
            }
        }
        acc
    }

    pub fn base(&self) -> &IntVec {
        &self.base
    }

    pub fn numerator_at(&self, z: &[i64]) -> IntVec {
        self.base.add(&self.linear(z))
    }

    pub fn sign_at(&self, z: &[i64]) -> i32 {
        self.numerator_at(z).sign(&self.field)
    }

    pub fn value_at(&self, z: &[i64]) -> FieldElement {
        self.to_element(&self.numerator_at(z))
    }

    pub fn to_element(&self, num: &IntVec) -> FieldElement {
        let deg = self.field.degree();
        let c = num
            .to_big(deg)
            .into_iter()
            .map(|x| BigRational::new(x, self.den.clone()))
            .collect();
        self.field.element(c)
    }
}

/// Total order on numerators sharing a denominator.
pub fn cmp_num(a: &IntVec, b: &IntVec, field: &FieldContext) -> std::cmp::Ordering {
    a.sub(b).sign(field).cmp(&0)
}

/// Integer matrix acting on numerator vectors.
#[derive(Clone, Debug)]
pub struct IntMat {
    big: Vec<Vec<BigInt>>,
    small: Option<[[i128; MAX_DEGREE]; MAX_DEGREE]>,
}

impl IntMat {
    /// `rows[r][c]`: contribution of input coefficient `c` to output `r`.
    pub fn new(mut rows: Vec<Vec<BigInt>>) -> Self {
        rows.resize(MAX_DEGREE, Vec::new());
        for r in rows.iter_mut() {
            r.resize(MAX_DEGREE, BigInt::zero());
        }
        let mut small = [[0i128; MAX_DEGREE]; MAX_DEGREE];
        let mut ok = true;
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                match x.to_i128() {
                    Some(v) if fits(v) => small[r][c] = v,
                    _ => ok = false,
                }
            }
        }
        IntMat {
            big: rows,
            small: ok.then_some(small),
        }
    }

    /// Multiplication by `e` on coefficient vectors, scaled by `scale`;
    /// `None` unless the result is integral.
    pub fn multiplication(e: &FieldElement, scale: &BigRational) -> Option<Self> {
        let field = e.field();
        let deg = field.degree();
        let mut rows = vec![vec![BigInt::zero(); deg]; deg];
        let mut pow = field.one();
        for c in 0..deg {
            let col = (e * &pow).scale(scale);
            for (r, x) in col.coeffs().iter().enumerate() {
                if !x.is_integer() {
                    return None;
                }
                rows[r][c] = x.to_integer();
            }
            pow = &pow * &field.theta();
        }
        Some(IntMat::new(rows))
    }

    pub fn apply(&self, v: &IntVec) -> IntVec {
        if let (Some(m), IntVec::Small(a)) = (&self.small, v) {
            let mut out = [0i128; MAX_DEGREE];
            let mut ok = true;
            'outer: for r in 0..MAX_DEGREE {
                let mut acc: i128 = 0;
                for c in 0..MAX_DEGREE {
                    if m[r][c] == 0 || a[c] == 0 {
                        continue;
                    }
                    match m[r][c].checked_mul(a[c]).and_then(|p| acc.checked_add(p)) {
                        Some(x) => acc = x,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
                if !fits(acc) {
                    ok = false;
                    break;
                }
                out[r] = acc;
            }
            if ok {
                return IntVec::Small(out);
            }
        }
        let x = v.to_big(MAX_DEGREE);
        IntVec::from_big(
            self.big
                .iter()
                .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_matches_field_arithmetic() {
        let f = FieldContext::from_parts(&[-2, 0, 1], "1", "2").unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let base = (f.theta() - f.from_int(1)).scale(&half);
        let w = vec![f.theta().scale(&BigRational::new(1.into(), 4.into())), f.from_int(-3)];
        let form = AffineForm::new(&base, &w);
        for z in [[0i64, 0], [3, -1], [-7, 2], [100, 41]] {
            let direct = &base + &(&w[0] * &f.from_int(z[0]) + &w[1] * &f.from_int(z[1]));
            assert_eq!(form.value_at(&z), direct);
            assert_eq!(form.sign_at(&z), direct.sign());
        }
    }

    #[test]
    fn multiplication_matrix_matches_product() {
        let f = FieldContext::from_parts(&[1, 0, -10, 0, 1], "3", "4").unwrap();
        let e = f.element_from_strs(&["1/2", "3", "0", "-1/2"]).unwrap();
        let m = IntMat::multiplication(&e, &BigRational::from_integer(2.into())).unwrap();
        let x = f.element_from_strs(&["4", "-1", "7", "2"]).unwrap();
        let got = m.apply(&numerator(&x, &BigInt::one()));
        let want = numerator(&(&e * &x).scale(&BigRational::from_integer(2.into())), &BigInt::one());
        assert_eq!(got, want);
    }

    #[test]
    fn overflow_promotes() {
        let big = IntVec::Small([i128::MAX - 1, 0, 0, 0, 0, 0]);
        let s = big.add(&IntVec::Small([5, 0, 0, 0, 0, 0]));
        assert!(matches!(s, IntVec::Big(_)));
        let back = s.sub(&IntVec::Small([5, 0, 0, 0, 0, 0]));
        assert_eq!(back.to_big(1)[0], BigInt::from(i128::MAX - 1));
    }
}
