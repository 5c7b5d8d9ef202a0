//! S-equivalence moves and algebraic unknotting moves on Seifert matrices, and
//! replayable certificates built from them.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::textfmt::{format_int_matrix, parse_matrix_lines, ParsedMatrix};
use crate::algebra::IntMatrix;
use crate::error::CertificateError;
use crate::invariants::alexander;

pub const CERT_HEADER: &str = "algebraic-unknotting-certificate 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Congruence(IntMatrix),
    UnknottingMove(Vec<BigInt>),
    /// Zero-based indices.
    Reduction(usize, usize),
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Congruence(_) => "congruence",
            Move::UnknottingMove(_) => "unknotting",
            Move::Reduction(..) => "reduction",
        }
    }
}

/// A move together with the matrix it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertStep {
    pub mv: Move,
    pub result: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicUnknottingCertificate {
    pub start: IntMatrix,
    pub steps: Vec<CertStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verified {
    pub ua_upper_bound: usize,
    pub final_matrix: IntMatrix,
    /// Alexander polynomial after each step, recomputed from scratch.
    pub transcript: Vec<String>,
}

fn shape(msg: String) -> CertificateError {
    CertificateError::PatternMismatch(msg)
}

/// P A P^T.
pub fn congruence(a: &IntMatrix, p: &IntMatrix) -> Result<IntMatrix, CertificateError> {
    if !a.is_square() || !p.is_square() || p.rows() != a.rows() {
        return Err(shape(format!(
            "congruence of a {}x{} matrix by a {}x{} matrix",
            a.rows(),
            a.cols(),
            p.rows(),
            p.cols()
        )));
    }
    if p.det().abs() != BigInt::one() {
        return Err(shape(format!("base change has det {}", p.det())));
    }
    Ok(&(p * a) * &p.transpose())
}

/// A + w^T w.
pub fn unknotting_move(a: &IntMatrix, w: &[BigInt]) -> Result<IntMatrix, CertificateError> {
    if !a.is_square() || w.len() != a.rows() {
        return Err(shape(format!("vector of length {} for a {}x{} matrix", w.len(), a.rows(), a.cols())));
    }
    let mut out = a.clone();
    for i in 0..w.len() {
        for j in 0..w.len() {
            out.set(i, j, a.get(i, j) + &w[i] * &w[j]);
        }
    }
    Ok(out)
}

pub fn unknotting_move_i64(a: &IntMatrix, w: &[i64]) -> Result<IntMatrix, CertificateError> {
    unknotting_move(a, &w.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
}

/// Deletes rows and columns i and j, provided row i vanishes and column i has a single
/// nonzero entry, equal to ±1, in row j.
pub fn reduce(a: &IntMatrix, i: usize, j: usize) -> Result<IntMatrix, CertificateError> {
    let n = a.rows();
    if !a.is_square() || i >= n || j >= n || i == j {
        return Err(shape(format!("indices ({}, {}) invalid for a {}x{} matrix", i, j, n, a.cols())));
    }
    if let Some(k) = (0..n).find(|&k| !a.get(i, k).is_zero()) {
        return Err(shape(format!("row {} has a nonzero entry in column {}", i, k)));
    }
    if let Some(k) = (0..n).find(|&k| k != j && !a.get(k, i).is_zero()) {
        return Err(shape(format!("column {} has a nonzero entry in row {}", i, k)));
    }
    if a.get(j, i).abs() != BigInt::one() {
        return Err(shape(format!("entry ({}, {}) is {}, not ±1", j, i, a.get(j, i))));
    }
    Ok(a.delete(&[i, j], &[i, j]))
}

/// Applies one move.
pub fn apply(a: &IntMatrix, mv: &Move) -> Result<IntMatrix, CertificateError> {
    match mv {
        Move::Congruence(p) => congruence(a, p),
        Move::UnknottingMove(w) => unknotting_move(a, w),
        Move::Reduction(i, j) => reduce(a, *i, *j),
    }
}

pub fn verify_certificate(cert: &AlgebraicUnknottingCertificate) -> Result<Verified, CertificateError> {
    let mut cur = cert.start.clone();
    let mut moves = 0;
    let mut transcript = Vec::with_capacity(cert.steps.len());
    for (k, step) in cert.steps.iter().enumerate() {
        let next =
            apply(&cur, &step.mv).map_err(|e| CertificateError::ReplayError { step: k + 1, msg: e.to_string() })?;
        if next != step.result {
            return Err(CertificateError::ReplayError {
                step: k + 1,
                msg: format!("recorded matrix differs from the replayed one:\n{}", format_int_matrix(&next)),
            });
        }
        if let Move::UnknottingMove(_) = step.mv {
            moves += 1;
        }
        let delta = alexander(&next).map_err(|e| CertificateError::ReplayError { step: k + 1, msg: e.to_string() })?;
        transcript.push(delta.to_string());
        cur = next;
    }
    let delta =
        alexander(&cur).map_err(|e| CertificateError::ReplayError { step: cert.steps.len(), msg: e.to_string() })?;
    if !delta.is_one() {
        return Err(CertificateError::NontrivialResult(delta.to_string()));
    }
    Ok(Verified { ua_upper_bound: moves, final_matrix: cur, transcript })
}

impl AlgebraicUnknottingCertificate {
    pub fn new(start: IntMatrix) -> Self {
        AlgebraicUnknottingCertificate { start, steps: Vec::new() }
    }

    pub fn current(&self) -> &IntMatrix {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.start)
    }

    /// Applies `mv` to the current matrix and records it.
    pub fn push(&mut self, mv: Move) -> Result<&IntMatrix, CertificateError> {
        let result = apply(self.current(), &mv)?;
        self.steps.push(CertStep { mv, result });
        Ok(self.current())
    }

    /// Appends the steps of `other`, whose start must equal the current matrix.
    pub fn chain(&mut self, other: &AlgebraicUnknottingCertificate) -> Result<(), CertificateError> {
        if self.current() != &other.start {
            return Err(shape("chained certificate does not start at the current matrix".into()));
        }
        self.steps.extend(other.steps.iter().cloned());
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", CERT_HEADER).unwrap();
        writeln!(s, "START").unwrap();
        s.push_str(&format_int_matrix(&self.start));
        for step in &self.steps {
            match &step.mv {
                Move::Congruence(p) => {
                    writeln!(s, "MOVE congruence").unwrap();
                    s.push_str(&format_int_matrix(p));
                }
                Move::UnknottingMove(w) => {
                    let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                    writeln!(s, "MOVE unknotting {}", w.join(" ")).unwrap();
                }
                Move::Reduction(i, j) => writeln!(s, "MOVE reduction {} {}", i + 1, j + 1).unwrap(),
            }
            writeln!(s, "RESULT").unwrap();
            s.push_str(&format_int_matrix(&step.result));
        }
        writeln!(s, "FINAL").unwrap();
        s.push_str(&format_int_matrix(self.current()));
        s
    }

    /// Parses the text format. Reduction indices are one-based in text.
    pub fn from_text(text: &str) -> Result<Self, CertificateError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let mut pos = 0;
        let perr = |line: usize, msg: String| CertificateError::Parse { line, msg };
        let last_line = lines.last().map(|l| l.0).unwrap_or(0);
        let expect = |pos: &mut usize, what: &str| -> Result<(usize, String), CertificateError> {
            let (ln, l) = lines.get(*pos).copied().ok_or_else(|| perr(last_line, format!("missing {}", what)))?;
            *pos += 1;
            Ok((ln, l.to_string()))
        };
        let (ln, h) = expect(&mut pos, "header")?;
        if h != CERT_HEADER {
            return Err(perr(ln, format!("expected '{}'", CERT_HEADER)));
        }
        let (ln, h) = expect(&mut pos, "START")?;
        if h != "START" {
            return Err(perr(ln, "expected START".into()));
        }
        let read_matrix = |pos: &mut usize| -> Result<IntMatrix, CertificateError> {
            let ln = lines.get(*pos).map(|l| l.0).unwrap_or(last_line);
            let mut it = lines[*pos..].iter().map(|l| l.1);
            let before = it.len();
            let m = parse_matrix_lines(&mut it).map_err(|e| perr(ln, e.to_string()))?;
            *pos += before - it.len();
            match m {
                ParsedMatrix::Int(m) => Ok(m),
                ParsedMatrix::Cyclo(_) => Err(perr(ln, "expected an integer matrix".into())),
            }
        };
        let start = read_matrix(&mut pos)?;
        let mut steps = Vec::new();
        loop {
            let (ln, l) = expect(&mut pos, "MOVE or FINAL")?;
            let toks: Vec<&str> = l.split_whitespace().collect();
            let mv = match toks.as_slice() {
                ["FINAL"] => {
                    let fin = read_matrix(&mut pos)?;
                    if pos != lines.len() {
                        return Err(perr(lines[pos].0, "trailing data after FINAL".into()));
                    }
                    let cert = AlgebraicUnknottingCertificate { start, steps };
                    if &fin != cert.current() {
                        return Err(perr(ln, "FINAL matrix differs from the last recorded matrix".into()));
                    }
                    return Ok(cert);
                }
                ["MOVE", "congruence"] => Move::Congruence(read_matrix(&mut pos)?),
                ["MOVE", "unknotting", rest @ ..] => {
                    let w = rest
                        .iter()
                        .map(|t| t.parse::<BigInt>().map_err(|_| perr(ln, format!("bad integer '{}'", t))))
                        .collect::<Result<Vec<_>, _>>()?;
                    Move::UnknottingMove(w)
                }
                ["MOVE", "reduction", i, j] => {
                    let idx = |t: &str| -> Result<usize, CertificateError> {
                        match t.parse::<usize>() {
                            Ok(k) if k >= 1 => Ok(k - 1),
                            _ => Err(perr(ln, format!("bad index '{}'", t))),
                        }
                    };
                    Move::Reduction(idx(i)?, idx(j)?)
                }
                _ => return Err(perr(ln, format!("unexpected line '{}'", l))),
            };
            let (ln, l) = expect(&mut pos, "RESULT")?;
            if l != "RESULT" {
                return Err(perr(ln, "expected RESULT".into()));
            }
            let result = read_matrix(&mut pos)?;
            steps.push(CertStep { mv, result });
        }
    }
}

/// The certificate u_a(K11a361) <= 2, bundled as text.
pub fn k11a361_certificate() -> AlgebraicUnknottingCertificate {
    AlgebraicUnknottingCertificate::from_text(include_str!("../data/k11a361.cert")).expect("bundled certificate parses")
}

/// u_a(D1) <= 7: five crossing changes of D1 written as unknotting moves on its canonical
/// Seifert matrix, reduction to a 4x4 matrix congruent to the K11a361 start, then that certificate.
pub fn d1_certificate() -> AlgebraicUnknottingCertificate {
    AlgebraicUnknottingCertificate::from_text(include_str!("../data/d1.cert")).expect("bundled certificate parses")
}

/// A primitive integer vector x with V^T x = 0, if V is singular.
fn left_kernel_vector(v: &IntMatrix) -> Option<Vec<BigInt>> {
    let n = v.rows();
    // rows of V^T, reduced over Q
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(v.get(j, i).clone())).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..n {
                    let t = &f * &a[r][k];
                    a[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); n];
    x[free] = BigRational::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -a[row][free].clone();
    }
    let den = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&den / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, a| g.gcd(a));
    Some(ints.into_iter().map(|a| a / &g).collect())
}

/// Unimodular U with U v = e_0 for a primitive v, together with U^{-1}.
fn to_first_basis_vector(v: &[BigInt]) -> Option<(IntMatrix, IntMatrix)> {
    let n = v.len();
    let mut v = v.to_vec();
    let mut u = IntMatrix::identity(n);
    let mut ui = IntMatrix::identity(n);
    let row_sub = |m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
        for c in 0..n {
            let x = m.get(dst, c) - q * m.get(src, c);
            m.set(dst, c, x);
        }
    };
    let col_add = |m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt| {
        for r in 0..n {
            let x = m.get(r, dst) + q * m.get(r, src);
            m.set(r, dst, x);
        }
    };
    let swap = |u: &mut IntMatrix, ui: &mut IntMatrix, a: usize, b: usize| {
        for c in 0..n {
            let (x, y) = (u.get(a, c).clone(), u.get(b, c).clone());
            u.set(a, c, y);
            u.set(b, c, x);
            let (x, y) = (ui.get(c, a).clone(), ui.get(c, b).clone());
            ui.set(c, a, y);
            ui.set(c, b, x);
        }
    };
    for k in 1..n {
        while !v[k].is_zero() {
            let q = v[0].div_floor(&v[k]);
            let t = &v[0] - &q * &v[k];
            v[0] = t;
            row_sub(&mut u, 0, k, &q);
            col_add(&mut ui, k, 0, &q);
            v.swap(0, k);
            swap(&mut u, &mut ui, 0, k);
        }
    }
    if v[0].is_negative() {
        v[0] = -v[0].clone();
        for c in 0..n {
            let x = -u.get(0, c);
            u.set(0, c, x);
            let y = -ui.get(c, 0);
            ui.set(c, 0, y);
        }
    }
    v[0].is_one().then_some((u, ui))
}

/// For a singular Seifert matrix V, a unimodular P such that P V P^T has the reduction
/// pattern at (0, 1). Returns None if V is nonsingular.
pub fn reduction_congruence(v: &IntMatrix) -> Option<IntMatrix> {
    let n = v.rows();
    if n < 2 || !v.det().is_zero() {
        return None;
    }
    let x = left_kernel_vector(v)?;
    let xm = IntMatrix::from_vec(n, 1, x.clone());
    let y = v * &xm;
    let y: Vec<BigInt> = (0..n).map(|i| y.get(i, 0).clone()).collect();
    // rows u_k of U satisfy <u_k, y> = delta_{k0}
    let (u, ui) = to_first_basis_vector(&y)?;
    // x lies in the span of rows 1..n of U; its coordinates there are c = (U^{-T} x)[1..]
    let c_full = &ui.transpose() * &xm;
    if !c_full.get(0, 0).is_zero() {
        return None;
    }
    let c: Vec<BigInt> = (1..n).map(|i| c_full.get(i, 0).clone()).collect();
    let (_, ri) = to_first_basis_vector(&c)?;
    // R^{-1} has first column c, so its transpose is unimodular with first row c
    let r = ri.transpose();
    let mut p = IntMatrix::zeros(n, n);
    for col in 0..n {
        p.set(1, col, u.get(0, col).clone());
    }
    for k in 0..n - 1 {
        let dst = if k == 0 { 0 } else { k + 1 };
        for col in 0..n {
            let mut s = BigInt::zero();
            for l in 0..n - 1 {
                s += r.get(k, l) * u.get(l + 1, col);
            }
            p.set(dst, col, s);
        }
    }
    Some(p)
}

/// Congruence followed by reduction, repeated while the matrix is singular.
pub fn reduce_to_nonsingular(cert: &mut AlgebraicUnknottingCertificate) -> Result<(), CertificateError> {
    while let Some(p) = reduction_congruence(cert.current()) {
        cert.push(Move::Congruence(p))?;
        cert.push(Move::Reduction(0, 1))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_block_reduces_to_nothing() {
        let h = IntMatrix::from_rows(&[[0, 0], [1, 0]]);
        let r = reduce(&h, 0, 1).unwrap();
        assert_eq!(r.rows(), 0);
        assert!(alexander(&r).unwrap().is_one());
    }

    #[test]
    fn pattern_violations() {
        let a = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert!(matches!(reduce(&a, 0, 1), Err(CertificateError::PatternMismatch(_))));
        let b = IntMatrix::from_rows(&[[0, 0], [2, 0]]);
        assert!(reduce(&b, 0, 1).is_err());
        assert!(reduce(&b, 0, 0).is_err());
    }

    #[test]
    fn kernel_reduction_on_stabilized_trefoil() {
        let t = IntMatrix::from_rows(&[[-1, 1], [0, -1]]);
        let s = IntMatrix::from_rows(&[[0, 0], [1, 0]]).block_diag(&t);
        let p = IntMatrix::from_rows(&[[1, 0, 0, 0], [1, 1, 0, 0], [0, 1, 1, 0], [2, 0, -1, 1]]);
        let v = congruence(&s, &p).unwrap();
        let mut cert = AlgebraicUnknottingCertificate::new(v);
        reduce_to_nonsingular(&mut cert).unwrap();
        assert_eq!(cert.current().rows(), 2);
        assert_eq!(alexander(cert.current()).unwrap(), alexander(&t).unwrap());
    }
}
