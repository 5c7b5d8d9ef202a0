//! Plumbings of two positive trefoils and the single crossing change model.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::delta_d;
use super::signature::{hermitian_det, lt_signature_detail};
use crate::algebra::IntMatrix;
use crate::error::InvariantError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlumbingTag {
    TrefoilSum,
    T25,
    K10n14,
    SignatureMinusTwo,
}

impl fmt::Display for PlumbingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlumbingTag::TrefoilSum => "T(2,3)#2",
            PlumbingTag::T25 => "T(2,5)",
            PlumbingTag::K10n14 => "K10n14",
            PlumbingTag::SignatureMinusTwo => "SignatureMinusTwo",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrefoilPlumbingReport {
    pub a: i64,
    pub b: i64,
    pub d: u64,
    pub tag: PlumbingTag,
    pub lt_signature: i64,
    pub min_abs_eigenvalue: f64,
    pub margin: f64,
    /// Sign of det of the Hermitian form agrees with the sign of Δ_d(e^{0.11πi}).
    pub det_sign_agrees: bool,
}

/// The 4x4 Seifert matrix of a plumbing of two positive trefoils with plumbing arc class (a, b).
pub fn trefoil_plumbing_matrix(a: i64, b: i64) -> IntMatrix {
    IntMatrix::from_rows(&[[-1, 1, 0, 0], [0, -1, 0, 0], [0, 0, -1, 1], [a, b, 0, -1]])
}

pub const PLUMBING_THETA: f64 = 0.11 * PI;

pub fn two_trefoil_report(a: i64, b: i64) -> Result<TrefoilPlumbingReport, InvariantError> {
    if (a, b) != (0, 0) && a.gcd(&b) != 1 {
        return Err(InvariantError::InvalidPair(a, b));
    }
    let d = (a * a + a * b + b * b) as u64;
    let tag = match d {
        0 => PlumbingTag::TrefoilSum,
        1 => PlumbingTag::T25,
        3 => PlumbingTag::K10n14,
        _ => PlumbingTag::SignatureMinusTwo,
    };
    let m = trefoil_plumbing_matrix(a, b);
    let lt = lt_signature_detail(&m, PLUMBING_THETA)?;
    let dd = delta_d(d);
    let theta = PLUMBING_THETA;
    // Δ_d is symmetric, so its value on the unit circle is real
    let val: f64 = dd.terms().map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * (k as f64 * theta).cos()).sum();
    let det = hermitian_det(&m, theta);
    Ok(TrefoilPlumbingReport {
        a,
        b,
        d,
        tag,
        lt_signature: lt.value,
        min_abs_eigenvalue: lt.min_abs_eigenvalue,
        margin: lt.margin,
        det_sign_agrees: (det < 0.0) == (val < 0.0),
    })
}

/// C = [[B, v, 0], [w^T, x, 1], [0, 0, ε]]: a Seifert matrix of the knot obtained from the
/// knot of B by one crossing change. Setting the corner to 0 gives a matrix S-equivalent to B.
pub fn crossing_change_model(
    b: &IntMatrix,
    v: &[i64],
    w: &[i64],
    x: i64,
    eps: i64,
) -> Result<IntMatrix, InvariantError> {
    let m = b.rows();
    if v.len() != m || w.len() != m || !b.is_square() {
        return Err(crate::error::AlgebraError::Shape(format!(
            "vectors of length {} and {} for a {}x{} matrix",
            v.len(),
            w.len(),
            b.rows(),
            b.cols()
        ))
        .into());
    }
    if eps.abs() != 1 {
        return Err(crate::error::AlgebraError::Shape("corner entry must be ±1".into()).into());
    }
    let mut c = IntMatrix::zeros(m + 2, m + 2);
    for i in 0..m {
        for j in 0..m {
            c.set(i, j, b.get(i, j).clone());
        }
        c.set(i, m, BigInt::from(v[i]));
        c.set(m, i, BigInt::from(w[i]));
    }
    c.set(m, m, BigInt::from(x));
    c.set(m, m + 1, BigInt::from(1));
    c.set(m + 1, m + 1, BigInt::from(eps));
    Ok(c)
}

/// B̃ = C + E: the model matrix with its ±1 corner cancelled.
pub fn cancel_corner(c: &IntMatrix) -> IntMatrix {
    let n = c.rows();
    let mut out = c.clone();
    out.set(n - 1, n - 1, BigInt::from(0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::alexander;

    #[test]
    fn table_rows() {
        assert_eq!(two_trefoil_report(0, 0).unwrap().tag, PlumbingTag::TrefoilSum);
        assert_eq!(two_trefoil_report(-2, 1).unwrap().tag, PlumbingTag::K10n14);
        let r = two_trefoil_report(3, 1).unwrap();
        assert_eq!((r.d, r.tag, r.lt_signature), (13, PlumbingTag::SignatureMinusTwo, -2));
        assert!(r.det_sign_agrees);
        assert!(two_trefoil_report(2, 4).is_err());
    }

    #[test]
    fn model_degenerate_block() {
        let c = crossing_change_model(&IntMatrix::zeros(0, 0), &[], &[], 5, -1).unwrap();
        assert_eq!(c, IntMatrix::from_rows(&[[5, 1], [0, -1]]));
        let t = IntMatrix::from_rows(&[[-1, 1], [0, -1]]);
        let c = crossing_change_model(&t, &[0, 0], &[0, 0], 0, 1).unwrap();
        assert_eq!(alexander(&c).unwrap(), alexander(&t).unwrap());
    }
}
