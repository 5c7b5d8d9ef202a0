use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::AlgebraError;

/// Operations needed by the Smith normal form: a Euclidean domain with a norm.
pub trait EuclideanRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Euclidean norm; zero only for zero.
    fn norm(&self) -> BigInt;
    /// a = q·b + r with norm(r) < norm(b). b must be nonzero.
    fn div_rem(&self, b: &Self) -> (Self, Self);
    /// Canonical representative of the associate class.
    fn canonical(&self) -> Self;

    fn divides(&self, a: &Self) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        a.div_rem(self).1.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl EuclideanRing for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn norm(&self) -> BigInt {
        self.abs()
    }
    fn div_rem(&self, b: &Self) -> (Self, Self) {
        Integer::div_rem(self, b)
    }
    fn canonical(&self) -> Self {
        self.abs()
    }
}

/// Element of R_p = Z[t]/(1 + t + ... + t^(p-1)), stored in the basis 1, t, ..., t^(p-2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    p: u32,
    coords: Vec<BigInt>,
}

/// Round n/d to the nearest integer, ties toward zero. d > 0.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = Integer::div_rem(n, d);
    let twice = r.abs() * 2u32;
    if &twice > d {
        if n.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

impl CycloElement {
    pub fn new(p: u32, coords: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if p < 2 || !is_prime(p) {
            return Err(AlgebraError::UnsupportedModulus(p));
        }
        if coords.len() != (p - 1) as usize {
            return Err(AlgebraError::Shape(format!(
                "R_{} element needs {} coordinates, got {}",
                p,
                p - 1,
                coords.len()
            )));
        }
        Ok(CycloElement { p, coords })
    }

    pub fn from_i64(p: u32, coords: &[i64]) -> Self {
        Self::new(p, coords.iter().map(|&c| BigInt::from(c)).collect()).expect("valid element")
    }

    pub fn integer(p: u32, n: i64) -> Self {
        let mut c = vec![BigInt::zero(); (p - 1) as usize];
        c[0] = BigInt::from(n);
        CycloElement { p, coords: c }
    }

    /// The class of t.
    pub fn t(p: u32) -> Self {
        Self::from_poly(p, &[BigInt::zero(), BigInt::one()])
    }

    /// Reduces Σ c_i t^i modulo 1 + t + ... + t^(p-1).
    pub fn from_poly(p: u32, cs: &[BigInt]) -> Self {
        let pu = p as usize;
        let mut full = vec![BigInt::zero(); pu];
        for (i, c) in cs.iter().enumerate() {
            full[i % pu] += c;
        }
        let top = full[pu - 1].clone();
        let coords = full[..pu - 1].iter().map(|c| c - &top).collect();
        CycloElement { p, coords }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixed moduli");
    }

    /// Galois conjugate t -> t^-1 = t^(p-1).
    pub fn conj(&self) -> Self {
        let pu = self.p as usize;
        let mut cs = vec![BigInt::zero(); pu];
        for (i, c) in self.coords.iter().enumerate() {
            cs[(pu - i) % pu] += c;
        }
        Self::from_poly(self.p, &cs)
    }

    /// The 6 (p = 3) or 2 (p = 2) unit multiples.
    pub fn associates(&self) -> Vec<Self> {
        let one = self.one_like();
        let mut units = vec![one.clone(), one.neg()];
        if self.p == 3 {
            let t = Self::t(3);
            let t2 = t.mul(&t);
            units.extend([t.clone(), t.neg(), t2.clone(), t2.neg()]);
        }
        units.iter().map(|u| self.mul(u)).collect()
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl EuclideanRing for CycloElement {
    fn zero_like(&self) -> Self {
        Self::integer(self.p, 0)
    }

    fn one_like(&self) -> Self {
        Self::integer(self.p, 1)
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn add(&self, o: &Self) -> Self {
        self.check(o);
        CycloElement { p: self.p, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        CycloElement { p: self.p, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }

    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coords.len();
        let mut prod = vec![BigInt::zero(); 2 * n];
        for (i, a) in self.coords.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::from_poly(self.p, &prod)
    }

    fn neg(&self) -> Self {
        CycloElement { p: self.p, coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// |a| for p = 2, a² - ab + b² for p = 3. Other moduli are not Euclidean here.
    fn norm(&self) -> BigInt {
        match self.p {
            2 => self.coords[0].abs(),
            3 => {
                let (a, b) = (&self.coords[0], &self.coords[1]);
                a * a - a * b + b * b
            }
            p => panic!("norm not implemented for R_{}", p),
        }
    }

    fn div_rem(&self, b: &Self) -> (Self, Self) {
        self.check(b);
        assert!(!b.is_zero(), "division by zero");
        match self.p {
            2 => {
                let q = round_div(&self.coords[0], &b.coords[0].abs()) * if b.coords[0].is_negative() { -1 } else { 1 };
                let q = CycloElement { p: 2, coords: vec![q] };
                let r = self.sub(&q.mul(b));
                (q, r)
            }
            3 => {
                let n = b.norm();
                let num = self.mul(&b.conj());
                let q =
                    CycloElement { p: 3, coords: vec![round_div(&num.coords[0], &n), round_div(&num.coords[1], &n)] };
                let r = self.sub(&q.mul(b));
                debug_assert!(r.norm() < n);
                (q, r)
            }
            p => panic!("division not implemented for R_{}", p),
        }
    }

    /// p = 2: nonnegative. p = 3: the associate a + b·t with a > 0 and 0 <= b < a,
    /// i.e. argument in [0, π/3), which is unique among the six associates.
    fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        match self.p {
            2 => CycloElement { p: 2, coords: vec![self.coords[0].abs()] },
            3 => self
                .associates()
                .into_iter()
                .find(|x| {
                    let (a, b) = (&x.coords[0], &x.coords[1]);
                    a.is_positive() && !b.is_negative() && b < a
                })
                .expect("unit sector covers every nonzero element"),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coords[0])?;
        for (i, c) in self.coords.iter().enumerate().skip(1) {
            if c.is_negative() {
                write!(f, "-{}*t", c.abs())?;
            } else {
                write!(f, "+{}*t", c)?;
            }
            if i > 1 {
                write!(f, "^{}", i)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::str::FromStr for CycloElement {
    type Err = AlgebraError;

    /// Parses "a", "a+b*t", "a-b*t", "a+b*t+c*t^2", ... The modulus is inferred as
    /// (highest power + 2) only when `parse_with_p` is not used, so prefer that.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let terms = parse_terms(s)?;
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let p = (hi as u32 + 2).max(2);
        build_from_terms(p, &terms, s)
    }
}

impl CycloElement {
    pub fn parse_with_p(s: &str, p: u32) -> Result<Self, AlgebraError> {
        let terms = parse_terms(s)?;
        build_from_terms(p, &terms, s)
    }
}

fn build_from_terms(p: u32, terms: &[(usize, BigInt)], src: &str) -> Result<CycloElement, AlgebraError> {
    let mut c = vec![BigInt::zero(); (p.max(2) - 1) as usize];
    for (e, v) in terms {
        if *e >= c.len() {
            return Err(AlgebraError::Parse(format!("exponent too large for R_{} in '{}'", p, src)));
        }
        c[*e] += v;
    }
    CycloElement::new(p, c)
}

fn parse_terms(s: &str) -> Result<Vec<(usize, BigInt)>, AlgebraError> {
    let bad = || AlgebraError::Parse(format!("bad ring element '{}'", s));
    let s = s.trim();
    if s.is_empty() {
        return Err(bad());
    }
    // split into signed chunks
    let mut chunks = Vec::new();
    let mut cur = String::new();
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') && !cur.is_empty() {
            chunks.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    chunks.push(cur);
    let mut out = Vec::new();
    for ch in chunks {
        let ch = ch.trim();
        let (neg, body) = match ch.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, ch.strip_prefix('+').unwrap_or(ch)),
        };
        let (coef, exp) = if let Some(idx) = body.find('t') {
            let cpart = body[..idx].trim_end_matches('*');
            let coef: BigInt = if cpart.is_empty() { BigInt::one() } else { cpart.parse().map_err(|_| bad())? };
            let rest = &body[idx + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
            };
            (coef, exp)
        } else {
            (body.parse::<BigInt>().map_err(|_| bad())?, 0)
        };
        out.push((exp, if neg { -coef } else { coef }));
    }
    Ok(out)
}
