#![allow(dead_code)]
//! Helpers shared by the integration tests: random unimodular matrices, random Seifert
//! matrices and a brute-force module rank over quotients of R_3.

use gordian::algebra::*;
use gordian::braid::BraidWord;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ce(a: i64, b: i64) -> CycloElement {
    CycloElement::from_i64(3, &[a, b])
}

pub fn cmat(n: usize, e: &[(i64, i64)]) -> CycloMatrix {
    CycloMatrix::from_vec(3, n, n, e.iter().map(|&(a, b)| ce(a, b)).collect()).unwrap()
}

pub fn random_cmat(n: usize, r: i64, rng: &mut ChaCha8Rng) -> CycloMatrix {
    let e: Vec<(i64, i64)> = (0..n * n).map(|_| (rng.gen_range(-r..=r), rng.gen_range(-r..=r))).collect();
    cmat(n, &e)
}

pub fn random_imat(rows: usize, cols: usize, r: i64, rng: &mut ChaCha8Rng) -> IntMatrix {
    IntMatrix::from_vec(rows, cols, (0..rows * cols).map(|_| rng.gen_range(-r..=r).into()).collect())
}

/// 2g x 2g integer matrix V with V - V^T block-diagonal hyperbolic, so det(V - V^T) = 1.
pub fn random_seifert(g: usize, r: i64, rng: &mut ChaCha8Rng) -> IntMatrix {
    let n = 2 * g;
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let x: i64 = rng.gen_range(-r..=r);
            v.set(i, j, x.into());
            if i != j {
                v.set(j, i, x.into());
            }
        }
    }
    for k in 0..g {
        v.add_at(2 * k, 2 * k + 1, 1);
    }
    v
}

/// Positive braid word on at most `max_strands` strands whose closure is a knot.
pub fn random_positive_knot_word(max_strands: usize, max_len: usize, rng: &mut ChaCha8Rng) -> BraidWord {
    loop {
        let n = rng.gen_range(2..=max_strands);
        let len = rng.gen_range(1..=max_len);
        let w = BraidWord::new(n, (0..len).map(|_| rng.gen_range(1..n as i32)).collect()).unwrap();
        if w.component_count() == 1 {
            return w;
        }
    }
}

pub fn random_int_unimodular(n: usize, rng: &mut ChaCha8Rng) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    for _ in 0..4 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            if rng.gen_bool(0.3) {
                for c in 0..n {
                    let x = -p.get(i, c).clone();
                    p.set(i, c, x);
                }
            }
            continue;
        }
        let k: i64 = rng.gen_range(-3..=3);
        for c in 0..n {
            let x = p.get(i, c) + p.get(j, c) * k;
            p.set(i, c, x);
        }
    }
    p
}

pub fn random_cyclo_unimodular(n: usize, rng: &mut ChaCha8Rng) -> CycloMatrix {
    let mut p = CycloMatrix::identity(3, n);
    for _ in 0..4 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            // multiply a row by the unit t
            for c in 0..n {
                p.set(i, c, p.get(i, c).mul(&CycloElement::t(3)));
            }
            continue;
        }
        let k = ce(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        for c in 0..n {
            let x = p.get(i, c).add(&k.mul(p.get(j, c)));
            p.set(i, c, x);
        }
    }
    p
}

/// R_3 modulo the ideal (g): canonical residues from the Hermite form of the lattice g·Z[t].
pub struct Quotient {
    h11: i64,
    h12: i64,
    h22: i64,
}

impl Quotient {
    pub fn new(g: &CycloElement) -> Self {
        let x: i64 = (&g.coords()[0]).try_into().unwrap();
        let y: i64 = (&g.coords()[1]).try_into().unwrap();
        // rows g and g*t = -y + (x - y) t
        let (mut a, mut b) = ([x, y], [-y, x - y]);
        // Euclid on the first coordinate
        while b[0] != 0 {
            let q = a[0].div_euclid(b[0]);
            a = [a[0] - q * b[0], a[1] - q * b[1]];
            std::mem::swap(&mut a, &mut b);
        }
        if a[0] < 0 {
            a = [-a[0], -a[1]];
        }
        let h22 = b[1].abs();
        Quotient { h11: a[0], h12: a[1].rem_euclid(h22), h22 }
    }

    pub fn size(&self) -> usize {
        (self.h11 * self.h22) as usize
    }

    fn reduce(&self, v: [i64; 2]) -> [i64; 2] {
        let k = v[0].div_euclid(self.h11);
        [v[0] - k * self.h11, (v[1] - k * self.h12).rem_euclid(self.h22)]
    }

    fn elements(&self) -> Vec<[i64; 2]> {
        let mut out = Vec::new();
        for a in 0..self.h11 {
            for b in 0..self.h22 {
                out.push([a, b]);
            }
        }
        out
    }

    fn mul(&self, u: [i64; 2], v: [i64; 2]) -> [i64; 2] {
        // t^2 = -1 - t
        self.reduce([u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0] - u[1] * v[1]])
    }

    fn add(&self, u: [i64; 2], v: [i64; 2]) -> [i64; 2] {
        self.reduce([u[0] + v[0], u[1] + v[1]])
    }
}

/// Smallest number of generators of the column module of an m x m matrix (m <= 2) over R_3/(g),
/// found by enumerating the module.
pub fn brute_rank(m: &CycloMatrix, g: &CycloElement) -> usize {
    let q = Quotient::new(g);
    let n = m.rows();
    let entry = |i: usize, j: usize| -> [i64; 2] {
        let c = m.get(i, j).coords();
        q.reduce([(&c[0]).try_into().unwrap(), (&c[1]).try_into().unwrap()])
    };
    let cols: Vec<Vec<[i64; 2]>> = (0..n).map(|j| (0..n).map(|i| entry(i, j)).collect()).collect();
    let ring = q.elements();
    let span = |gens: &[Vec<[i64; 2]>]| -> std::collections::BTreeSet<Vec<[i64; 2]>> {
        let mut set = std::collections::BTreeSet::new();
        let mut coeffs = vec![0usize; gens.len()];
        loop {
            let mut v = vec![[0, 0]; n];
            for (g, &c) in gens.iter().zip(&coeffs) {
                for i in 0..n {
                    v[i] = q.add(v[i], q.mul(ring[c], g[i]));
                }
            }
            set.insert(v);
            let mut k = 0;
            while k < coeffs.len() {
                coeffs[k] += 1;
                if coeffs[k] < ring.len() {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
            if k == coeffs.len() {
                break;
            }
        }
        set
    };
    let module = span(&cols);
    if module.len() == 1 {
        return 0;
    }
    for r in 1..n {
        // try every r-tuple of module elements (r = 1 only, since n <= 2)
        assert_eq!(r, 1);
        let elems: Vec<_> = module.iter().cloned().collect();
        if elems.iter().any(|v| span(std::slice::from_ref(v)) == module) {
            return 1;
        }
    }
    n
}
