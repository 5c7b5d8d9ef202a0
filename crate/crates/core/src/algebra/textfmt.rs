//! Plain-text matrix format: a header line "rows cols" (integers) or "rows cols p"
//! (R_p entries), then one line per row with whitespace-separated entries. Ring
//! elements are written "a+b*t".

use num_bigint::BigInt;

use super::cyclo::CycloElement;
use super::intmat::IntMatrix;
use super::snf::CycloMatrix;
use crate::error::AlgebraError;

pub fn format_int_matrix(m: &IntMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn format_cyclo_matrix(m: &CycloMatrix) -> String {
    let mut s = format!("{} {} {}\n", m.rows(), m.cols(), m.p());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

/// Either kind of matrix, as read from text.
#[derive(Debug, Clone, PartialEq)]
pub enum ParsedMatrix {
    Int(IntMatrix),
    Cyclo(CycloMatrix),
}

fn perr(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

/// Reads one matrix from the front of `lines`, consuming exactly header + rows lines.
pub fn parse_matrix_lines<'a, I: Iterator<Item = &'a str>>(lines: &mut I) -> Result<ParsedMatrix, AlgebraError> {
    let header = lines.next().ok_or_else(|| perr("missing matrix header"))?;
    let h: Vec<&str> = header.split_whitespace().collect();
    if h.len() != 2 && h.len() != 3 {
        return Err(perr(format!("bad matrix header '{}'", header)));
    }
    let rows: usize = h[0].parse().map_err(|_| perr(format!("bad row count '{}'", h[0])))?;
    let cols: usize = h[1].parse().map_err(|_| perr(format!("bad column count '{}'", h[1])))?;
    let p: Option<u32> = match h.get(2) {
        Some(x) => Some(x.parse().map_err(|_| perr(format!("bad modulus '{}'", x)))?),
        None => None,
    };
    let mut ints = Vec::new();
    let mut cyc = Vec::new();
    for r in 0..rows {
        let line = lines.next().ok_or_else(|| perr(format!("missing row {}", r)))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != cols {
            return Err(perr(format!("row {} has {} entries, expected {}", r, toks.len(), cols)));
        }
        for t in toks {
            match p {
                None => ints.push(t.parse::<BigInt>().map_err(|_| perr(format!("bad integer '{}'", t)))?),
                Some(p) => cyc.push(CycloElement::parse_with_p(t, p)?),
            }
        }
    }
    match p {
        None => Ok(ParsedMatrix::Int(IntMatrix::from_vec(rows, cols, ints))),
        Some(p) => Ok(ParsedMatrix::Cyclo(CycloMatrix::from_vec(p, rows, cols, cyc)?)),
    }
}

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, AlgebraError> {
    let mut it = text.lines().filter(|l| !l.trim().is_empty());
    let m = parse_matrix_lines(&mut it)?;
    if it.next().is_some() {
        return Err(perr("trailing data after matrix"));
    }
    Ok(m)
}

pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, AlgebraError> {
    match parse_matrix(text)? {
        ParsedMatrix::Int(m) => Ok(m),
        ParsedMatrix::Cyclo(_) => Err(perr("expected an integer matrix")),
    }
}
