use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclo::{CycloElement, EuclideanRing};
use super::intmat::IntMatrix;
use crate::error::AlgebraError;

/// Matrix over R_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<CycloElement>,
}

impl CycloMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        CycloMatrix { p, rows, cols, data: vec![CycloElement::integer(p, 0); rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, CycloElement::integer(p, 1));
        }
        m
    }

    pub fn from_vec(p: u32, rows: usize, cols: usize, data: Vec<CycloElement>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape(format!("{}x{} matrix given {} entries", rows, cols, data.len())));
        }
        if let Some(e) = data.iter().find(|e| e.p() != p) {
            return Err(AlgebraError::Shape(format!("entry {} is not in R_{}", e, p)));
        }
        Ok(CycloMatrix { p, rows, cols, data })
    }

    /// Image of an integer matrix under Z -> R_p.
    pub fn from_int(p: u32, m: &IntMatrix) -> Self {
        let data = m
            .entries()
            .iter()
            .map(|x| {
                let mut c = vec![BigInt::zero(); (p - 1) as usize];
                c[0] = x.clone();
                CycloElement::new(p, c).expect("valid modulus")
            })
            .collect();
        CycloMatrix { p, rows: m.rows(), cols: m.cols(), data }
    }

    /// t·A - B over R_p for integer matrices A, B.
    pub fn pencil(p: u32, a: &IntMatrix, b: &IntMatrix) -> Self {
        let t = CycloElement::t(p);
        let ta = Self::from_int(p, a);
        let bb = Self::from_int(p, b);
        let data = ta.data.iter().zip(&bb.data).map(|(x, y)| t.mul(x).sub(y)).collect();
        CycloMatrix { p, rows: a.rows(), cols: a.cols(), data }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &CycloElement {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: CycloElement) {
        assert_eq!(v.p(), self.p);
        self.data[i * self.cols + j] = v;
    }
    pub fn entries(&self) -> &[CycloElement] {
        &self.data
    }

    pub fn mul(&self, o: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Self::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = CycloElement::integer(self.p, 0);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                m.set(i, j, acc);
            }
        }
        m
    }
}

impl fmt::Debug for CycloMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloMatrix(p={}, {:?})", self.p, self.data.chunks(self.cols.max(1)).collect::<Vec<_>>())
    }
}

/// Which ring the invariant factors live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    Integers,
    Cyclotomic(u32),
}

/// Diagonal d_1 | d_2 | ... | d_m of a Smith normal form, each in canonical associate form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors<R> {
    pub ring: RingTag,
    pub diagonal: Vec<R>,
}

impl<R: EuclideanRing> InvariantFactors<R> {
    /// Entries that are not units: the cyclic summands of the cokernel.
    pub fn nontrivial(&self) -> Vec<&R> {
        self.diagonal.iter().filter(|d| !d.is_unit()).collect()
    }

    pub fn is_chain(&self) -> bool {
        self.diagonal.windows(2).all(|w| w[0].divides(&w[1]))
    }

    /// True when the cokernel is the zero module.
    pub fn is_trivial_module(&self) -> bool {
        self.diagonal.iter().all(|d| d.is_unit())
    }

    /// Order of the cokernel as an abelian group, None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for d in &self.diagonal {
            if d.is_zero() {
                return None;
            }
            acc *= d.norm();
        }
        Some(acc)
    }
}

impl InvariantFactors<BigInt> {
    /// "Z5^2 + Z15" style description; "0" for the trivial group.
    pub fn abelian_string(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let nt: Vec<BigInt> = self.nontrivial().into_iter().cloned().collect();
        let mut i = 0;
        while i < nt.len() {
            let mut j = i;
            while j < nt.len() && nt[j] == nt[i] {
                j += 1;
            }
            let base = if Zero::is_zero(&nt[i]) { "Z".to_string() } else { format!("Z{}", nt[i]) };
            parts.push(if j - i > 1 { format!("{}^{}", base, j - i) } else { base });
            i = j;
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Nontrivial factors as plain integers (0 for free summands).
    pub fn torsion_list(&self) -> Vec<BigInt> {
        self.nontrivial().into_iter().cloned().collect()
    }
}

impl InvariantFactors<CycloElement> {
    /// "(R3/(4))^2" style description; "0" for the zero module.
    pub fn module_string(&self) -> String {
        let p = match self.ring {
            RingTag::Cyclotomic(p) => p,
            RingTag::Integers => 0,
        };
        let nt: Vec<&CycloElement> = self.nontrivial();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < nt.len() {
            let mut j = i;
            while j < nt.len() && nt[j] == nt[i] {
                j += 1;
            }
            let base = if nt[i].is_zero() { format!("R{}", p) } else { format!("R{}/({})", p, short_cyclo(nt[i])) };
            parts.push(if j - i > 1 { format!("({})^{}", base, j - i) } else { base });
            i = j;
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Drops zero t-coordinates: "4" rather than "4+0*t".
pub fn short_cyclo(x: &CycloElement) -> String {
    if x.coords().iter().skip(1).all(Zero::is_zero) {
        x.coords()[0].to_string()
    } else {
        x.to_string()
    }
}

/// Result of a Smith normal form with the unimodular transforms, U·M·V = D.
pub struct SnfDecomposition<R> {
    pub factors: InvariantFactors<R>,
    pub u: Vec<R>,
    pub v: Vec<R>,
}

struct Work<R> {
    r: usize,
    c: usize,
    a: Vec<R>,
    u: Option<Vec<R>>,
    v: Option<Vec<R>>,
}

impl<R: EuclideanRing> Work<R> {
    fn at(&self, i: usize, j: usize) -> &R {
        &self.a[i * self.c + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.c {
            self.a.swap(i * self.c + j, k * self.c + j);
        }
        if let Some(u) = self.u.as_mut() {
            for j in 0..self.r {
                u.swap(i * self.r + j, k * self.r + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.r {
            self.a.swap(i * self.c + j, i * self.c + k);
        }
        if let Some(v) = self.v.as_mut() {
            for i in 0..self.c {
                v.swap(i * self.c + j, i * self.c + k);
            }
        }
    }

    /// row_i -= q * row_k
    fn row_axpy(&mut self, i: usize, k: usize, q: &R) {
        for j in 0..self.c {
            let x = self.a[i * self.c + j].sub(&q.mul(&self.a[k * self.c + j]));
            self.a[i * self.c + j] = x;
        }
        if let Some(u) = self.u.as_mut() {
            for j in 0..self.r {
                let x = u[i * self.r + j].sub(&q.mul(&u[k * self.r + j]));
                u[i * self.r + j] = x;
            }
        }
    }

    /// col_j -= q * col_k
    fn col_axpy(&mut self, j: usize, k: usize, q: &R) {
        for i in 0..self.r {
            let x = self.a[i * self.c + j].sub(&q.mul(&self.a[i * self.c + k]));
            self.a[i * self.c + j] = x;
        }
        if let Some(v) = self.v.as_mut() {
            for i in 0..self.c {
                let x = v[i * self.c + j].sub(&q.mul(&v[i * self.c + k]));
                v[i * self.c + j] = x;
            }
        }
    }

    fn scale_row(&mut self, i: usize, unit: &R) {
        for j in 0..self.c {
            self.a[i * self.c + j] = self.a[i * self.c + j].mul(unit);
        }
        if let Some(u) = self.u.as_mut() {
            for j in 0..self.r {
                u[i * self.r + j] = u[i * self.r + j].mul(unit);
            }
        }
    }
}

fn identity_like<R: EuclideanRing>(proto: &R, n: usize) -> Vec<R> {
    let mut m = vec![proto.zero_like(); n * n];
    for i in 0..n {
        m[i * n + i] = proto.one_like();
    }
    m
}

/// Smith normal form over a Euclidean ring, pivoting on the entry of least norm.
fn smith<R: EuclideanRing>(
    r: usize,
    c: usize,
    a: Vec<R>,
    proto: &R,
    track: bool,
) -> (Vec<R>, Option<Vec<R>>, Option<Vec<R>>) {
    let mut w = Work { r, c, a, u: track.then(|| identity_like(proto, r)), v: track.then(|| identity_like(proto, c)) };
    let m = r.min(c);
    let mut diag = Vec::with_capacity(m);
    for k in 0..m {
        loop {
            let mut best: Option<(BigInt, usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    let x = w.at(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    let n = x.norm();
                    if best.as_ref().is_none_or(|(bn, _, _)| &n < bn) {
                        best = Some((n, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let piv = w.at(k, k).clone();
            let mut dirty = false;
            for i in k + 1..r {
                if w.at(i, k).is_zero() {
                    continue;
                }
                let (q, rem) = w.at(i, k).div_rem(&piv);
                w.row_axpy(i, k, &q);
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..c {
                if w.at(k, j).is_zero() {
                    continue;
                }
                let (q, rem) = w.at(k, j).div_rem(&piv);
                w.col_axpy(j, k, &q);
                if !rem.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let offender = (k + 1..r).find(|&i| (k + 1..c).any(|j| !piv.divides(w.at(i, j))));
            if let Some(i) = offender {
                w.row_axpy(k, i, &proto.one_like().neg());
                continue;
            }
            break;
        }
        let d = w.at(k, k).clone();
        if !d.is_zero() {
            let canon = d.canonical();
            if canon != d {
                let (unit, rem) = canon.div_rem(&d);
                debug_assert!(rem.is_zero() && unit.is_unit());
                w.scale_row(k, &unit);
            }
        }
        diag.push(w.at(k, k).clone());
    }
    (diag, w.u, w.v)
}

pub fn snf_integers(m: &IntMatrix) -> InvariantFactors<BigInt> {
    let (diag, _, _) = smith(m.rows(), m.cols(), m.entries().to_vec(), &BigInt::zero(), false);
    InvariantFactors { ring: RingTag::Integers, diagonal: diag }
}

/// Integer Smith normal form with transforms: U·M·V = diag.
pub fn snf_integers_with_transforms(m: &IntMatrix) -> (InvariantFactors<BigInt>, IntMatrix, IntMatrix) {
    let (diag, u, v) = smith(m.rows(), m.cols(), m.entries().to_vec(), &BigInt::zero(), true);
    (
        InvariantFactors { ring: RingTag::Integers, diagonal: diag },
        IntMatrix::from_vec(m.rows(), m.rows(), u.unwrap()),
        IntMatrix::from_vec(m.cols(), m.cols(), v.unwrap()),
    )
}

fn check_modulus(p: u32) -> Result<(), AlgebraError> {
    if p == 2 || p == 3 {
        Ok(())
    } else {
        Err(AlgebraError::UnsupportedModulus(p))
    }
}

pub fn snf_cyclotomic(m: &CycloMatrix) -> Result<InvariantFactors<CycloElement>, AlgebraError> {
    check_modulus(m.p)?;
    let proto = CycloElement::integer(m.p, 0);
    let (diag, _, _) = smith(m.rows, m.cols, m.data.clone(), &proto, false);
    Ok(InvariantFactors { ring: RingTag::Cyclotomic(m.p), diagonal: diag })
}

pub fn snf_cyclotomic_with_transforms(m: &CycloMatrix) -> Result<SnfDecomposition<CycloElement>, AlgebraError> {
    check_modulus(m.p)?;
    let proto = CycloElement::integer(m.p, 0);
    let (diag, u, v) = smith(m.rows, m.cols, m.data.clone(), &proto, true);
    Ok(SnfDecomposition {
        factors: InvariantFactors { ring: RingTag::Cyclotomic(m.p), diagonal: diag },
        u: u.unwrap(),
        v: v.unwrap(),
    })
}

/// Number of diagonal entries divisible by q^e.
pub fn n_qe<R: EuclideanRing>(factors: &InvariantFactors<R>, q: &R, e: u32) -> usize {
    let qe = q.pow(e);
    factors.diagonal.iter().filter(|d| qe.divides(d)).count()
}

/// Minimal number of generators of the column space of M over R_p/(q^e), as m - n_qe.
pub fn rank_mod_qe(m: &CycloMatrix, q: &CycloElement, e: u32) -> Result<usize, AlgebraError> {
    if m.rows != m.cols {
        return Err(AlgebraError::Shape("rank_mod_qe needs a square matrix".into()));
    }
    let f = snf_cyclotomic(m)?;
    Ok(m.rows - n_qe(&f, q, e))
}

/// Restriction of scalars: each entry becomes its (p-1)x(p-1) multiplication matrix
/// in the basis 1, t, ..., t^(p-2).
pub fn expand_to_integers(m: &CycloMatrix) -> IntMatrix {
    let k = (m.p - 1) as usize;
    let mut out = IntMatrix::zeros(m.rows * k, m.cols * k);
    let basis: Vec<CycloElement> = (0..k)
        .map(|i| {
            let mut c = vec![BigInt::zero(); k];
            c[i] = BigInt::one();
            CycloElement::new(m.p, c).unwrap()
        })
        .collect();
    for i in 0..m.rows {
        for j in 0..m.cols {
            let x = m.get(i, j);
            for (col, b) in basis.iter().enumerate() {
                let img = x.mul(b);
                for (row, v) in img.coords().iter().enumerate() {
                    out.set(i * k + row, j * k + col, v.clone());
                }
            }
        }
    }
    out
}
