//! Invariants of Seifert matrices: Alexander polynomial, branched-cover homology,
//! Gordian distance bounds and signatures.

mod plumbing;
mod signature;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed};

use crate::algebra::{
    expand_to_integers, n_qe, snf_cyclotomic, snf_integers, CycloElement, CycloMatrix, IntMatrix, InvariantFactors,
    LaurentPoly,
};
use crate::error::{AlgebraError, InvariantError};

pub use plumbing::{
    cancel_corner, crossing_change_model, trefoil_plumbing_matrix, two_trefoil_report, PlumbingTag,
    TrefoilPlumbingReport, PLUMBING_THETA,
};
pub use signature::{lt_signature, lt_signature_detail, signature, LtSignature, LT_MARGIN};

/// Checks det(V - V^T) = ±1.
pub fn check_seifert(v: &IntMatrix) -> Result<(), InvariantError> {
    if !v.is_square() {
        return Err(InvariantError::NotASeifertMatrix("matrix is not square".into()));
    }
    let d = (v - &v.transpose()).det();
    if d.abs() != BigInt::one() {
        return Err(InvariantError::NotASeifertMatrix(d.to_string()));
    }
    Ok(())
}

/// Alexander polynomial det(tV - V^T), normalized so that Δ(t) = Δ(1/t) and Δ(1) = 1.
pub fn alexander(v: &IntMatrix) -> Result<LaurentPoly, InvariantError> {
    check_seifert(v)?;
    Ok(alexander_unchecked(v))
}

pub(crate) fn alexander_unchecked(v: &IntMatrix) -> LaurentPoly {
    if v.rows() == 0 {
        return LaurentPoly::one();
    }
    let neg_vt = v.transpose().scale(&BigInt::from(-1));
    let coeffs = v.pencil_det(&neg_vt);
    LaurentPoly::from_coeffs(0, &coeffs).symmetrized().expect("knot Alexander polynomial is nonzero")
}

/// (t^-1 - 1 + t)^2 + d (t^-1 - 2 + t).
pub fn delta_d(d: u64) -> LaurentPoly {
    let tr = LaurentPoly::from_coeffs(-1, &[1, -1, 1]);
    let sq = &tr * &tr;
    let lin = LaurentPoly::from_coeffs(-1, &[d as i64, -2 * d as i64, d as i64]);
    sq + lin
}

/// H_1 of the p-fold branched cover: the R_p-module (p = 2, 3) and its underlying abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchedHomology {
    pub p: u32,
    pub module: Option<InvariantFactors<CycloElement>>,
    pub abelianization: InvariantFactors<BigInt>,
}

impl BranchedHomology {
    /// dim over F_q of H_1(Σ_p; F_q).
    pub fn dim_mod(&self, q: u64) -> usize {
        let q = BigInt::from(q);
        self.abelianization.diagonal.iter().filter(|d| d.is_multiple_of(&q)).count()
    }
}

/// Integer presentation of H_1(Σ_p) as an abelian group: tV - V^T with t acting by the
/// companion matrix of 1 + t + ... + t^(p-1).
pub fn expand_pencil(v: &IntMatrix, p: u32) -> IntMatrix {
    let k = (p - 1) as usize;
    let m = v.rows();
    let mut out = IntMatrix::zeros(m * k, m * k);
    for i in 0..m {
        for j in 0..m {
            let a = v.get(i, j);
            let b = v.get(j, i);
            for r in 0..k {
                // t * t^r = t^(r+1); t^(p-1) = -(1 + ... + t^(p-2))
                if r + 1 < k {
                    out.set(i * k + r + 1, j * k + r, out.get(i * k + r + 1, j * k + r) + a);
                } else {
                    for s in 0..k {
                        out.set(i * k + s, j * k + r, out.get(i * k + s, j * k + r) - a);
                    }
                }
                out.set(i * k + r, j * k + r, out.get(i * k + r, j * k + r) - b);
            }
        }
    }
    out
}

pub fn branched_homology(v: &IntMatrix, p: u32) -> Result<BranchedHomology, InvariantError> {
    if p < 2 || !crate::algebra::cyclo::is_prime(p) {
        return Err(AlgebraError::UnsupportedModulus(p).into());
    }
    let module = if p <= 3 {
        let pencil = CycloMatrix::pencil(p, v, &v.transpose());
        Some(snf_cyclotomic(&pencil)?)
    } else {
        None
    };
    let abelianization = snf_integers(&expand_pencil(v, p));
    Ok(BranchedHomology { p, module, abelianization })
}

/// Abelian group underlying an R_p-module given by its invariant factors.
pub fn restrict_scalars(f: &InvariantFactors<CycloElement>, p: u32) -> InvariantFactors<BigInt> {
    let m = f.diagonal.len();
    let mut d = CycloMatrix::zeros(p, m, m);
    for (i, x) in f.diagonal.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    snf_integers(&expand_to_integers(&d))
}

/// n_{p,q,e}: the number of R_p-invariant factors of tV - V^T divisible by q^e.
pub fn n_pqe(v: &IntMatrix, p: u32, q: &CycloElement, e: u32) -> Result<usize, InvariantError> {
    if q.p() != p {
        return Err(AlgebraError::Shape(format!("q lives in R_{}, not R_{}", q.p(), p)).into());
    }
    let h = branched_homology(v, p)?;
    let module = h.module.ok_or(AlgebraError::UnsupportedModulus(p))?;
    Ok(n_qe(&module, q, e))
}

/// |n_pqe(V1) - n_pqe(V2)|, a lower bound for the (algebraic) Gordian distance.
pub fn gordian_lower_bound(
    v1: &IntMatrix,
    v2: &IntMatrix,
    p: u32,
    q: &CycloElement,
    e: u32,
) -> Result<usize, InvariantError> {
    let a = n_pqe(v1, p, q, e)?;
    let b = n_pqe(v2, p, q, e)?;
    Ok(a.abs_diff(b))
}

/// Wendt's bound |dim H_1(Σ_p(K); F_q) - dim H_1(Σ_p(J); F_q)| / (p - 1).
pub fn wendt_bound(v1: &IntMatrix, v2: &IntMatrix, p: u32, q: u64) -> Result<Ratio<u64>, InvariantError> {
    let a = branched_homology(v1, p)?.dim_mod(q);
    let b = branched_homology(v2, p)?.dim_mod(q);
    Ok(Ratio::new(a.abs_diff(b) as u64, (p - 1) as u64))
}

/// |Δ(-1)| for the determinant cross-check against H_1(Σ_2).
pub fn determinant(v: &IntMatrix) -> BigInt {
    let s = v + &v.transpose();
    s.det().abs()
}
