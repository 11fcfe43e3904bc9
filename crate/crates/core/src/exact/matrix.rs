//! Dense exact matrices: rational rank and kernel, Gaussian elimination over
//! a number field, and the rational decomposition of field-valued rows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldContext, FieldElement};
use super::ExactError;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<BigRational>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        RationalMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn stack(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RationalMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Rows scaled to primitive integer vectors.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect()
    }

    /// Rank over Q by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.integer_rows();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    m[i][j] = v / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    /// Reduced row echelon form over Q; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self.get(r, c).recip();
            for j in 0..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j) - &f * self.get(r, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right null space, one vector per free column, scaled to
    /// primitive integer vectors.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m.get(r, f).clone();
                }
                primitive(v)
            })
            .collect()
    }
}

/// Scales a rational vector to a primitive integer vector with positive
/// last nonzero entry.
pub fn primitive(v: Vec<BigRational>) -> Vec<BigRational> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = if ints.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter()
        .map(|x| BigRational::from_integer(x / &g * &sign))
        .collect()
}

/// Expands field-valued constraint rows into their θ-graded rational rows.
/// Each input row becomes D consecutive output rows, row t holding the
/// θ^t coefficients; a rational vector q then satisfies Σ q_j v_j ∈ Q
/// exactly when it annihilates the rows with t ≥ 1.
pub fn q_decompose(rows: &[Vec<FieldElement>]) -> Result<RationalMatrix, ExactError> {
    let cols = rows.first().map_or(0, |r| r.len());
    let Some(field) = rows.iter().flatten().next().map(|e| e.field().clone()) else {
        return Ok(RationalMatrix::zeros(0, cols));
    };
    if rows.iter().flatten().any(|e| !e.field().same(&field)) {
        return Err(ExactError::MixedFieldContexts);
    }
    let d = field.degree();
    let mut out = RationalMatrix::zeros(0, cols);
    for row in rows {
        assert_eq!(row.len(), cols, "ragged constraint rows");
        for t in 0..d {
            out.push_row(row.iter().map(|e| e.coeffs()[t].clone()).collect());
        }
    }
    Ok(out)
}

/// Rows of a `q_decompose` result carrying only the θ^t parts with t ≥ 1.
pub fn irrational_rows(m: &RationalMatrix, degree: usize) -> RationalMatrix {
    let mut out = RationalMatrix::zeros(0, m.cols());
    for r in 0..m.rows() {
        if r % degree != 0 {
            out.push_row(m.row(r).to_vec());
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Linear algebra over a number field.

/// In-place reduced row echelon form; returns pivot columns.
pub fn field_rref(m: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in 0..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in 0..cols {
                let v = &m[i][j] - &(&f * &m[r][j]);
                m[i][j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn field_rank(m: &[Vec<FieldElement>]) -> usize {
    let mut w = m.to_vec();
    field_rref(&mut w).len()
}

/// Right null space over the field.
pub fn field_kernel(m: &[Vec<FieldElement>], cols: usize, field: &FieldContext) -> Vec<Vec<FieldElement>> {
    let mut w = m.to_vec();
    let pivots = field_rref(&mut w);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&w[r][f];
            }
            v
        })
        .collect()
}

/// Inverse of a square field matrix, or `None` when singular.
pub fn field_inverse(m: &[Vec<FieldElement>], field: &FieldContext) -> Option<Vec<Vec<FieldElement>>> {
    let n = m.len();
    let mut aug: Vec<Vec<FieldElement>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let pivots = field_rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn field_mat_vec(m: &[Vec<FieldElement>], v: &[FieldElement], field: &FieldContext) -> Vec<FieldElement> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(field.zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn field_mat_mul(a: &[Vec<FieldElement>], b: &[Vec<FieldElement>], field: &FieldContext) -> Vec<Vec<FieldElement>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(field.zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn dot(a: &[FieldElement], b: &[FieldElement], field: &FieldContext) -> FieldElement {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(RationalMatrix::identity(2).kernel().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 2).kernel().len(), 2);
        let k = RationalMatrix::from_i64(&[&[1, 2]]).kernel();
        assert_eq!(k, vec![vec![q(-2), q(1)]]);
    }

    #[test]
    fn decompose_examples() {
        let r = FieldContext::rationals();
        let m = q_decompose(&[vec![r.from_int(1), r.from_int(2)]]).unwrap();
        assert_eq!(m, RationalMatrix::from_i64(&[&[1, 2]]));
        let f = FieldContext::from_parts(&[-2, 0, 1], "1", "2").unwrap();
        let m = q_decompose(&[vec![f.theta()]]).unwrap();
        assert_eq!(m, RationalMatrix::from_i64(&[&[0], &[1]]));
        let a = f.from_int(1) + f.from_int(3) * f.theta();
        let b = f.from_int(2) * f.theta();
        let m = q_decompose(&[vec![a, b]]).unwrap();
        assert_eq!(m, RationalMatrix::from_i64(&[&[1, 0], &[3, 2]]));
        let mixed = q_decompose(&[vec![f.theta(), r.one()]]);
        assert_eq!(mixed.unwrap_err(), ExactError::MixedFieldContexts);
    }

    #[test]
    fn field_inverse_roundtrip() {
        let f = FieldContext::from_parts(&[-2, 0, 1], "1", "2").unwrap();
        let m = vec![
            vec![f.theta(), f.one()],
            vec![f.from_int(3), f.theta() + f.one()],
        ];
        let inv = field_inverse(&m, &f).unwrap();
        let id = field_mat_mul(&m, &inv, &f);
        assert_eq!(id[0][0], f.one());
        assert!(id[0][1].is_zero());
        assert!(id[1][0].is_zero());
        assert_eq!(id[1][1], f.one());
    }
}
