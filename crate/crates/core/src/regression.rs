//! Reduction of a Gaussian linear regression z = Xβ + u to the sequence model.
//!
//! With M = (X'X)^{1/2} the vector Mβ̂ = M^{-1}X'z is N(Mβ, I_d) when
//! u ~ N(0, I_n), so any test of the sequence model applies to it. The square
//! root comes from a symmetric eigendecomposition of X'X.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative singular-value tolerance below which X is treated as rank deficient.
pub const RANK_TOL: f64 = 1e-10;

/// M^{-1}X'z with M = (X'X)^{1/2}. `x` is row-major with n rows of length d.
pub fn regression_reduce(x: &[Vec<f64>], z: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    if n == 0 {
        return Err(Error::domain("design matrix has no rows"));
    }
    let d = x[0].len();
    if d == 0 {
        return Err(Error::domain("design matrix has no columns"));
    }
    if let Some(row) = x.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: row.len() });
    }
    if z.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.len() });
    }
    if d > n {
        return Err(Error::LinearAlgebra(format!("need n >= d for full column rank, got n = {n}, d = {d}")));
    }
    if x.iter().flatten().chain(z).any(|v| !v.is_finite()) {
        return Err(Error::domain("non-finite entry in regression data"));
    }
    let xm = DMatrix::from_fn(n, d, |i, j| x[i][j]);
    let zv = DVector::from_column_slice(z);
    let gram = xm.transpose() * &xm;
    let eig = gram.symmetric_eigen();
    let lmax = eig.eigenvalues.max();
    let lmin = eig.eigenvalues.min();
    // Singular values of X are the square roots of the eigenvalues of X'X.
    if !(lmax > 0.0) || !(lmin > 0.0) || lmin.sqrt() < RANK_TOL * lmax.sqrt() {
        return Err(Error::LinearAlgebra(format!(
            "design matrix is rank deficient: singular values {:.3e} .. {:.3e}",
            lmin.max(0.0).sqrt(),
            lmax.max(0.0).sqrt()
        )));
    }
    let q = &eig.eigenvectors;
    let inv_sqrt = DVector::from_iterator(d, eig.eigenvalues.iter().map(|l| 1.0 / l.sqrt()));
    let xtz = xm.transpose() * zv;
    // M^{-1} v = Q diag(λ^{-1/2}) Q' v.
    let rotated = q.transpose() * xtz;
    let scaled = rotated.component_mul(&inv_sqrt);
    Ok((q * scaled).iter().copied().collect())
}

/// Parses whitespace-delimited rows `z x_1 … x_d`; `#` starts a comment.
pub fn parse_regression_data(text: &str) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let mut x = Vec::new();
    let mut z = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let vals = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::Parse { line: n + 1, msg: format!("bad number '{t}'") }))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() < 2 {
            return Err(Error::Parse { line: n + 1, msg: "need a response and at least one regressor".into() });
        }
        if let Some(first) = x.first().map(|r: &Vec<f64>| r.len()) {
            if first != vals.len() - 1 {
                return Err(Error::Parse { line: n + 1, msg: format!("expected {} regressors, got {}", first, vals.len() - 1) });
            }
        }
        z.push(vals[0]);
        x.push(vals[1..].to_vec());
    }
    if z.is_empty() {
        return Err(Error::Parse { line: 0, msg: "no data rows".into() });
    }
    Ok((x, z))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_design_returns_response() {
        let x: Vec<Vec<f64>> = (0..4).map(|i| (0..4).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        let z = vec![1.5, -2.0, 0.25, 3.0];
        let out = regression_reduce(&x, &z).unwrap();
        for (a, b) in out.iter().zip(&z) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn orthonormal_columns_give_projection() {
        let s = 0.5f64.sqrt();
        let x = vec![vec![s, 0.0], vec![s, 0.0], vec![0.0, 1.0]];
        let z = vec![1.0, 3.0, -2.0];
        let out = regression_reduce(&x, &z).unwrap();
        assert!((out[0] - s * 4.0).abs() < 1e-12);
        assert!((out[1] + 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficiency_is_rejected() {
        let x = vec![vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]];
        assert!(matches!(regression_reduce(&x, &[1.0, 2.0, 3.0]), Err(Error::LinearAlgebra(_))));
        assert!(regression_reduce(&[vec![1.0, 2.0]], &[1.0]).is_err());
    }

    #[test]
    fn parses_rows() {
        let (x, z) = parse_regression_data("# z x1 x2\n1 2 3\n4 5 6 # c\n").unwrap();
        assert_eq!(z, vec![1.0, 4.0]);
        assert_eq!(x, vec![vec![2.0, 3.0], vec![5.0, 6.0]]);
        assert!(parse_regression_data("1 2\n1 2 3\n").is_err());
        assert!(parse_regression_data("1 x\n").is_err());
    }
}
