use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::laurent::dense;

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        IntMatrix { rows, cols, data }
    }

    /// Builds from small-integer rows; all rows must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.as_ref().len(), c, "ragged matrix rows");
            data.extend(row.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Deletes the listed rows and columns (indices refer to the original matrix).
    pub fn delete(&self, rows: &[usize], cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|i| !rows.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|j| !cols.contains(j)).collect();
        let mut data = Vec::with_capacity(keep_r.len() * keep_c.len());
        for &i in &keep_r {
            for &j in &keep_c {
                data.push(self.get(i, j).clone());
            }
        }
        IntMatrix { rows: keep_r.len(), cols: keep_c.len(), data }
    }

    pub fn block_diag(&self, other: &IntMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// det(t·self + b) as a dense polynomial in t (index = exponent).
    pub fn pencil_det(&self, b: &IntMatrix) -> Vec<BigInt> {
        assert!(self.is_square() && self.rows == b.rows && self.cols == b.cols);
        let n = self.rows;
        if n == 0 {
            return vec![BigInt::one()];
        }
        let mut a: Vec<Vec<BigInt>> =
            (0..n * n).map(|k| dense::trim(vec![b.data[k].clone(), self.data[k].clone()])).collect();
        let mut negate = false;
        let mut prev = vec![BigInt::one()];
        for k in 0..n - 1 {
            if a[k * n + k].is_empty() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_empty()) {
                    Some(r) => {
                        for j in 0..n {
                            a.swap(k * n + j, r * n + j);
                        }
                        negate = !negate;
                    }
                    None => return Vec::new(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let x = dense::sub(
                        &dense::mul(&a[i * n + j], &a[k * n + k]),
                        &dense::mul(&a[i * n + k], &a[k * n + j]),
                    );
                    a[i * n + j] = dense::div_exact(&x, &prev);
                }
            }
            prev = a[k * n + k].clone();
        }
        let mut d = a[n * n - 1].clone();
        if negate {
            for c in d.iter_mut() {
                *c = -c.clone();
            }
        }
        d
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut m = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    m.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        m
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
