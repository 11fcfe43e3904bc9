//! Integer lattices given by generator rows: echelon basis and membership.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row echelon basis of the Z-span of some integer vectors.
#[derive(Clone, Debug)]
pub struct IntLattice {
    dim: usize,
    /// (pivot column, row) pairs with increasing pivot columns.
    basis: Vec<(usize, Vec<BigInt>)>,
}

impl IntLattice {
    pub fn new(generators: &[Vec<BigInt>], dim: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut basis = Vec::new();
        for c in 0..dim {
            loop {
                let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                nz.sort_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
                let p = nz[0];
                let pivot = rows[p].clone();
                for &i in &nz[1..] {
                    let f = rows[i][c].div_floor(&pivot[c]);
                    for j in 0..dim {
                        let v = &rows[i][j] - &f * &pivot[j];
                        rows[i][j] = v;
                    }
                }
            }
            if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
                let mut row = rows.swap_remove(i);
                if row[c].is_negative() {
                    row.iter_mut().for_each(|x| *x = -x.clone());
                }
                basis.push((c, row));
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        IntLattice { dim, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        assert_eq!(target.len(), self.dim);
        let mut t = target.to_vec();
        let mut next = 0;
        for c in 0..self.dim {
            if next < self.basis.len() && self.basis[next].0 == c {
                let row = &self.basis[next].1;
                let (q, r) = t[c].div_rem(&row[c]);
                if !r.is_zero() {
                    return false;
                }
                for j in c..self.dim {
                    let v = &t[j] - &q * &row[j];
                    t[j] = v;
                }
                next += 1;
            } else if !t[c].is_zero() {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn membership() {
        let l = IntLattice::new(&[v(&[2, 0]), v(&[1, 3])], 2);
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&v(&[3, 3])));
        assert!(l.contains(&v(&[0, 6])));
        assert!(!l.contains(&v(&[0, 3])));
        assert!(!l.contains(&v(&[1, 0])));
        let line = IntLattice::new(&[v(&[2, 4]), v(&[3, 6])], 2);
        assert_eq!(line.rank(), 1);
        assert!(line.contains(&v(&[1, 2])));
        assert!(!line.contains(&v(&[1, 3])));
    }
}
