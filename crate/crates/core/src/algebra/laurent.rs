use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Laurent polynomial in `t` with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// Builds `Σ c_i t^(low + i)`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(low: i64, cs: &[C]) -> Self {
        let mut p = Self::zero();
        for (i, c) in cs.iter().enumerate() {
            p.add_term(low + i as i64, c.clone().into());
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitute t -> t^-1.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 { pow_rat(t, *e as u64) } else { pow_rat(t, e.unsigned_abs()).recip() };
            acc += p * BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(t)))
    }

    /// Sum of coefficients, i.e. the value at t = 1.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Alexander-style normalization: centre the support around exponent 0 and fix the
    /// sign so the value at 1 is positive. Returns None when the span is odd.
    pub fn symmetrized(&self) -> Option<Self> {
        let (lo, hi) = match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(Self::zero()),
        };
        if (hi - lo) % 2 != 0 {
            return None;
        }
        let mut p = self.shift(-(lo + hi) / 2);
        let at_one = p.eval_one();
        if at_one.is_negative() || (at_one.is_zero() && p.coeff(hi - (lo + hi) / 2).is_negative()) {
            p = -p;
        }
        Some(p)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Dense coefficient vector starting at `min_degree`.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => {
                let v = (lo..=hi).map(|e| self.coeff(e)).collect();
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }
}

fn pow_rat(t: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= t;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", a)?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// Dense polynomial arithmetic on coefficient vectors (index = exponent), used by the
/// fraction-free determinant.
pub(crate) mod dense {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::Zero;

    pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }

    /// Exact quotient a / b. Panics if the division is not exact over the integers.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            assert!(trim(r).is_empty(), "inexact polynomial division");
            return Vec::new();
        }
        let lb = b.last().unwrap();
        let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(lb);
            assert!(rem.is_zero(), "inexact polynomial division");
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &qq * bj;
            }
            q[k] = qq;
        }
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        trim(q)
    }
}
