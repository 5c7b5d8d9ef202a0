use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebra::IntMatrix;
use crate::error::InvariantError;

/// Relative eigenvalue margin: min |λ| must exceed this times the Frobenius norm.
pub const LT_MARGIN: f64 = 1e-6;

/// Signature of V + V^T, by exact symmetric Gaussian elimination over Q.
pub fn signature(v: &IntMatrix) -> i64 {
    let n = v.rows();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(v.get(i, j) + v.get(j, i))).collect()).collect();
    let mut sig = 0i64;
    let mut live: Vec<usize> = (0..n).collect();
    while !live.is_empty() {
        let piv = live.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // all diagonal entries vanish; fold a row with a nonzero off-diagonal entry
                let hit =
                    live.iter().flat_map(|&i| live.iter().map(move |&j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
                let Some((i, j)) = hit else { break };
                // row/col i += row/col j: new a_ii = 2 a_ij
                for k in 0..n {
                    let x = a[j][k].clone();
                    a[i][k] += x;
                }
                for k in 0..n {
                    let x = a[k][j].clone();
                    a[k][i] += x;
                }
                i
            }
        };
        let d = a[p][p].clone();
        sig += if d.is_positive() { 1 } else { -1 };
        live.retain(|&x| x != p);
        for &i in &live {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &live {
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
            a[i][p] = BigRational::zero();
        }
        for &j in &live {
            a[p][j] = BigRational::zero();
        }
    }
    sig
}

#[derive(Clone, Debug, PartialEq)]
pub struct LtSignature {
    pub value: i64,
    pub min_abs_eigenvalue: f64,
    pub margin: f64,
}

fn hermitian_form(v: &IntMatrix, theta: f64) -> DMatrix<Complex64> {
    let n = v.rows();
    let w = Complex64::from_polar(1.0, theta);
    let one = Complex64::new(1.0, 0.0);
    let (c1, c2) = (one - w, one - w.conj());
    DMatrix::from_fn(n, n, |i, j| {
        let a = v.get(i, j).to_f64().unwrap();
        let b = v.get(j, i).to_f64().unwrap();
        c1 * a + c2 * b
    })
}

/// Levine–Tristram signature at e^{iθ} with its eigenvalue margin.
pub fn lt_signature_detail(v: &IntMatrix, theta: f64) -> Result<LtSignature, InvariantError> {
    let n = v.rows();
    if n == 0 {
        return Ok(LtSignature { value: 0, min_abs_eigenvalue: f64::INFINITY, margin: 0.0 });
    }
    let b = hermitian_form(v, theta);
    let margin = LT_MARGIN * b.norm();
    let eig = b.symmetric_eigenvalues();
    let min_abs = eig.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    if min_abs <= margin {
        return Err(InvariantError::NearSingular { min_abs, margin });
    }
    let value = eig.iter().map(|&x| if x > 0.0 { 1 } else { -1 }).sum();
    Ok(LtSignature { value, min_abs_eigenvalue: min_abs, margin })
}

pub fn lt_signature(v: &IntMatrix, theta: f64) -> Result<i64, InvariantError> {
    lt_signature_detail(v, theta).map(|s| s.value)
}

/// det of the Hermitian form at e^{iθ}, for sign cross-checks.
pub(crate) fn hermitian_det(v: &IntMatrix, theta: f64) -> f64 {
    if v.rows() == 0 {
        return 1.0;
    }
    hermitian_form(v, theta).determinant().re
}
