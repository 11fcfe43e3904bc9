//! Growth exponents of complexity series.

use serde::Serialize;

use super::PatchError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    /// Least-squares slope of log p against log n.
    pub lsq_exponent: f64,
    /// Root mean square residual of that fit.
    pub lsq_residual: f64,
    /// Mean of log2(p(2n)/p(n)) over the available pairs.
    pub dyadic_exponent: f64,
    /// Standard deviation of those ratios.
    pub dyadic_residual: f64,
}

/// Fits over the points with `lo <= n <= hi`.
pub fn slope_fit(ns: &[usize], values: &[u64], lo: usize, hi: usize) -> Result<SlopeFit, PatchError> {
    let pts: Vec<(usize, u64)> = ns
        .iter()
        .zip(values)
        .filter(|(&n, &p)| n >= lo && n <= hi && n > 0 && p > 0)
        .map(|(&n, &p)| (n, p))
        .collect();
    if pts.len() < 4 {
        return Err(PatchError::InsufficientData);
    }
    let xs: Vec<f64> = pts.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|&(_, p)| (p as f64).ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let lsq_residual = (xs.iter().zip(&ys).map(|(x, y)| (y - icpt - slope * x).powi(2)).sum::<f64>() / k).sqrt();
    let ratios: Vec<f64> = pts
        .iter()
        .filter_map(|&(n, p)| pts.iter().find(|&&(m, _)| m == 2 * n).map(|&(_, q)| (q as f64 / p as f64).log2()))
        .collect();
    if ratios.is_empty() {
        return Err(PatchError::InsufficientData);
    }
    let r = ratios.len() as f64;
    let dyadic = ratios.iter().sum::<f64>() / r;
    let dyadic_residual = (ratios.iter().map(|x| (x - dyadic).powi(2)).sum::<f64>() / r).sqrt();
    Ok(SlopeFit {
        lsq_exponent: slope,
        lsq_residual,
        dyadic_exponent: dyadic,
        dyadic_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_series() {
        let ns: Vec<usize> = (1..=32).collect();
        let sq: Vec<u64> = ns.iter().map(|&n| (n * n) as u64).collect();
        let f = slope_fit(&ns, &sq, 4, 32).unwrap();
        assert!((f.lsq_exponent - 2.0).abs() < 1e-9 && (f.dyadic_exponent - 2.0).abs() < 1e-9);
        let c = vec![7u64; 32];
        let f = slope_fit(&ns, &c, 4, 32).unwrap();
        assert!(f.lsq_exponent.abs() < 1e-9 && f.dyadic_exponent.abs() < 1e-9);
        assert_eq!(slope_fit(&ns, &c, 4, 6), Err(PatchError::InsufficientData));
    }
}
