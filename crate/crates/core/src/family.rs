//! The family of positive diagrams D_n: 2n+1 copies of a fixed tangle T glued in a cycle.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::{snf_integers, InvariantFactors, RingTag};
use crate::diagram::{genus_positive, seifert_matrix, Diagram};
use crate::error::DiagramError;
use crate::invariants::{alexander, delta_d, determinant};

/// A two-string tangle in PD form. Both strings run from the west ends to the east ends;
/// `west[i]` and `east[i]` are the labels of the boundary edges at height i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleData {
    pub crossings: Vec<[u32; 4]>,
    pub west: [u32; 2],
    pub east: [u32; 2],
    /// Two changes after which the closure N(T) is trivial.
    pub recipe_a: Vec<usize>,
    /// Three changes leaving a single positive crossing.
    pub recipe_b: Vec<usize>,
    /// Four changes leaving a single negative crossing.
    pub recipe_c: Vec<usize>,
}

fn perr(line: usize, msg: impl Into<String>) -> DiagramError {
    DiagramError::Parse { pos: line, msg: msg.into() }
}

impl TangleData {
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let mut crossings = Vec::new();
        let (mut west, mut east) = (None, None);
        let mut recipes: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let nums = |from: usize| -> Result<Vec<u32>, DiagramError> {
                toks[from..]
                    .iter()
                    .map(|t| t.parse::<u32>().map_err(|_| perr(ln, format!("bad number '{}'", t))))
                    .collect()
            };
            match toks[0] {
                "west" | "east" => {
                    let v = nums(1)?;
                    let pair: [u32; 2] = v.try_into().map_err(|_| perr(ln, "expected two labels"))?;
                    if toks[0] == "west" {
                        west = Some(pair);
                    } else {
                        east = Some(pair);
                    }
                }
                "X" => {
                    let v = nums(1)?;
                    crossings.push(v.try_into().map_err(|_| perr(ln, "expected four labels"))?);
                }
                "recipe" if toks.len() >= 2 => {
                    let v = nums(2)?;
                    recipes.insert(toks[1].to_string(), v.into_iter().map(|x| x as usize).collect());
                }
                _ => return Err(perr(ln, format!("unexpected line '{}'", line))),
            }
        }
        let west = west.ok_or_else(|| perr(0, "missing west ends"))?;
        let east = east.ok_or_else(|| perr(0, "missing east ends"))?;
        let mut take = |k: &str| recipes.remove(k).ok_or_else(|| perr(0, format!("missing recipe {}", k)));
        let t = TangleData { crossings, west, east, recipe_a: take("a")?, recipe_b: take("b")?, recipe_c: take("c")? };
        let c = t.crossings.len();
        if [&t.recipe_a, &t.recipe_b, &t.recipe_c].iter().any(|r| r.iter().any(|&i| i >= c)) {
            return Err(perr(0, "recipe index out of range"));
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }
}

pub fn bundled_tangle() -> TangleData {
    TangleData::parse(include_str!("../data/tangle_t.txt")).expect("bundled tangle parses")
}

/// Glues `copies` copies of T in a cycle. Crossing i of copy k gets id k * |T| + i.
pub fn cyclic_closure(t: &TangleData, copies: usize) -> Result<Diagram, DiagramError> {
    if copies == 0 {
        return Ok(Diagram::unknot());
    }
    let stride = t.crossings.iter().flatten().chain(&t.west).chain(&t.east).max().copied().unwrap_or(0) + 1;
    let label = |k: usize, l: u32| -> u32 {
        match t.east.iter().position(|&e| e == l) {
            Some(i) => ((k + 1) % copies) as u32 * stride + t.west[i],
            None => k as u32 * stride + l,
        }
    };
    let mut pd = Vec::with_capacity(copies * t.len());
    for k in 0..copies {
        for x in &t.crossings {
            pd.push(x.map(|l| label(k, l)));
        }
    }
    // compact labels to 1..2c
    let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
    for x in &pd {
        for &l in x {
            let n = seen.len() as u32 + 1;
            seen.entry(l).or_insert(n);
        }
    }
    let pd: Vec<[u32; 4]> = pd.iter().map(|x| x.map(|l| seen[&l])).collect();
    Diagram::from_pd(&pd)
}

/// D_n: the cyclic closure of 2n+1 copies of T.
pub fn build_family_diagram(t: &TangleData, n: usize) -> Diagram {
    assert!(n >= 1, "the family starts at n = 1");
    cyclic_closure(t, 2 * n + 1).expect("a valid tangle closes to a valid diagram")
}

/// H_1 of the double branched cover of D_n as predicted: Z5^(2n+1) + Z_(2n+1) when 5 divides
/// 2n+1, otherwise Z5^(2n) + Z_(5(2n+1)).
pub fn expected_double_cover_homology(n: usize) -> InvariantFactors<BigInt> {
    let m = 2 * n + 1;
    let mut d: Vec<BigInt> = Vec::new();
    if m.is_multiple_of(5) {
        d.extend(std::iter::repeat_n(BigInt::from(5), m));
        d.push(BigInt::from(m));
    } else {
        d.extend(std::iter::repeat_n(BigInt::from(5), 2 * n));
        d.push(BigInt::from(5 * m));
    }
    InvariantFactors { ring: RingTag::Integers, diagonal: d }
}

/// Recipe b in copies 0..n, recipe c in copies n..2n, recipe a in copy 2n; 2 + 7n ids.
pub fn family_unknotting_set(t: &TangleData, n: usize) -> Vec<u32> {
    let c = t.len();
    let mut ids = Vec::with_capacity(2 + 7 * n);
    let mut put = |copy: usize, r: &[usize]| ids.extend(r.iter().map(|&i| (copy * c + i) as u32));
    for k in 0..n {
        put(k, &t.recipe_b);
    }
    for k in n..2 * n {
        put(k, &t.recipe_c);
    }
    put(2 * n, &t.recipe_a);
    ids
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleCheck {
    pub positive: bool,
    /// Alexander polynomial of the one-copy closure.
    pub closure_delta: String,
    /// Whether it equals Δ(T(2,5)).
    pub closure_is_t25: bool,
}

pub fn check_tangle(t: &TangleData) -> Result<TangleCheck, crate::error::InvariantError> {
    let d = cyclic_closure(t, 1).map_err(|e| crate::error::AlgebraError::Shape(e.to_string()))?;
    let v = seifert_matrix(&d).map_err(|e| crate::error::AlgebraError::Shape(e.to_string()))?;
    let delta = alexander(&v)?;
    Ok(TangleCheck { positive: d.is_positive(), closure_is_t25: delta == delta_d(1), closure_delta: delta.to_string() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub n: usize,
    pub crossings: usize,
    pub genus: i64,
    pub expected_genus: i64,
    pub double_cover: InvariantFactors<BigInt>,
    pub expected_double_cover: InvariantFactors<BigInt>,
    pub determinant: BigInt,
    /// Minimal number of generators of H_1(Σ_2).
    pub generators: usize,
    pub unknotting_set: Vec<u32>,
    /// Δ after changing the unknotting set (Δ ≡ 1 is the working proxy for the unknot).
    pub delta_after_set: String,
}

impl FamilyReport {
    pub fn consistent(&self) -> bool {
        self.genus == self.expected_genus
            && self.double_cover.torsion_list() == self.expected_double_cover.torsion_list()
            && self.unknotting_set.len() == 2 + 7 * self.n
            && self.delta_after_set == "1"
    }
}

pub fn family_report(t: &TangleData, n: usize) -> Result<FamilyReport, crate::error::InvariantError> {
    let shape = |e: DiagramError| crate::error::AlgebraError::Shape(e.to_string());
    let d = build_family_diagram(t, n);
    let v = seifert_matrix(&d).map_err(shape)?;
    let genus = genus_positive(&d).map_err(shape)?;
    let double_cover = snf_integers(&(&v + &v.transpose()));
    let generators = double_cover.nontrivial().len();
    let set = family_unknotting_set(t, n);
    let changed = d.change_crossings(&set).map_err(shape)?;
    let after = alexander(&seifert_matrix(&changed).map_err(shape)?)?;
    Ok(FamilyReport {
        n,
        crossings: d.len(),
        genus: genus as i64,
        expected_genus: 2 + 5 * n as i64,
        double_cover,
        expected_double_cover: expected_double_cover_homology(n),
        determinant: determinant(&v),
        generators,
        unknotting_set: set,
        delta_after_set: after.to_string(),
    })
}
