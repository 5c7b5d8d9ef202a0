//! Knot-table rows (names, flags, genus, unknotting number, PD codes, Seifert matrices)
//! read from comma-separated text, with cross-checks between the representations.
//!
//! Required columns: name, crossing_number, genus, fibered, positive, unknotting.
//! Optional columns: pd, matrix (rows separated by ';'), source. Empty or `?` means unknown.

use std::collections::HashMap;

use crate::algebra::{IntMatrix, LaurentPoly};
use crate::diagram::{parse_diagram, seifert_matrix, Diagram};
use crate::error::CatalogError;
use crate::invariants::{alexander, check_seifert};

pub const REQUIRED_COLUMNS: &[&str] = &["name", "crossing_number", "genus", "fibered", "positive", "unknotting"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub pd: Option<Diagram>,
    pub matrix: Option<IntMatrix>,
    pub fibered: Option<bool>,
    pub positive: Option<bool>,
    pub genus: Option<u32>,
    pub crossing_number: Option<u32>,
    /// As reported by the source table.
    pub unknotting: Option<u32>,
    pub source: String,
    /// 1-based line of the row in the input.
    pub line: usize,
}

impl CatalogEntry {
    /// Alexander polynomial from whichever representation is present (matrix first).
    pub fn alexander(&self) -> Option<LaurentPoly> {
        if let Some(m) = &self.matrix {
            return alexander(m).ok();
        }
        let d = self.pd.as_ref()?;
        alexander(&seifert_matrix(d).ok()?).ok()
    }
}

/// Rows that failed validation, with their line numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ingested {
    pub entries: Vec<CatalogEntry>,
    pub rejected: Vec<(usize, String)>,
}

fn unknown(s: &str) -> bool {
    s.is_empty() || s == "?"
}

fn parse_flag(s: &str) -> Result<Option<bool>, String> {
    match s.to_ascii_lowercase().as_str() {
        x if unknown(x) => Ok(None),
        "yes" | "y" | "true" | "1" => Ok(Some(true)),
        "no" | "n" | "false" | "0" => Ok(Some(false)),
        other => Err(format!("bad flag '{}'", other)),
    }
}

fn parse_count(s: &str) -> Result<Option<u32>, String> {
    if unknown(s) {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| format!("bad number '{}'", s))
}

/// "a b; c d" -> 2x2 matrix.
pub fn parse_row_matrix(s: &str) -> Result<IntMatrix, String> {
    let rows: Vec<Vec<i64>> = s
        .split(';')
        .map(|r| r.split_whitespace().map(|x| x.parse::<i64>().map_err(|_| format!("bad entry '{}'", x))).collect())
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err("matrix is not square".into());
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn validate(e: &CatalogEntry) -> Result<(), String> {
    let from_pd = match &e.pd {
        Some(d) => {
            let v = seifert_matrix(d).map_err(|x| format!("pd: {}", x))?;
            Some(alexander(&v).map_err(|x| format!("pd: {}", x))?)
        }
        None => None,
    };
    let from_matrix = match &e.matrix {
        Some(m) => {
            check_seifert(m).map_err(|x| format!("matrix: {}", x))?;
            Some(alexander(m).map_err(|x| format!("matrix: {}", x))?)
        }
        None => None,
    };
    if let (Some(a), Some(b)) = (&from_pd, &from_matrix) {
        if a != b {
            return Err(format!("Alexander polynomial mismatch: pd gives {}, matrix gives {}", a, b));
        }
    }
    if let Some(delta) = from_pd.or(from_matrix) {
        let top = delta.max_degree().unwrap_or(0);
        if let Some(g) = e.genus {
            if top > g as i64 {
                return Err(format!("genus {} below the Alexander degree {}", g, top));
            }
        }
        if e.fibered == Some(true) && num_traits::Signed::abs(&delta.coeff(top)) != 1.into() {
            return Err(format!("marked fibered but Δ = {} is not monic", delta));
        }
    }
    if let (Some(false), Some(d)) = (e.positive, &e.pd) {
        if !d.is_empty() && d.is_positive() {
            return Err("marked non-positive but the pd diagram is positive".into());
        }
    }
    Ok(())
}

/// Reads a catalog, keeping the valid rows and reporting the others.
pub fn ingest_catalog_report(text: &str) -> Result<Ingested, CatalogError> {
    let mut out = Ingested::default();
    if text.trim().is_empty() {
        return Ok(out);
    }
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(text.as_bytes());
    let headers = rdr.headers()?.clone();
    let col: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for c in REQUIRED_COLUMNS {
        if !col.contains_key(c) {
            return Err(CatalogError::MissingColumn(c.to_string()));
        }
    }
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        let get = |c: &str| col.get(c).and_then(|&i| rec.get(i)).unwrap_or("");
        let parsed = (|| -> Result<CatalogEntry, String> {
            let name = get("name");
            if name.is_empty() {
                return Err("empty name".into());
            }
            let pd = match get("pd") {
                s if unknown(s) => None,
                s => Some(parse_diagram(s).map_err(|e| format!("pd: {}", e))?),
            };
            let matrix = match get("matrix") {
                s if unknown(s) => None,
                s => Some(parse_row_matrix(s).map_err(|e| format!("matrix: {}", e))?),
            };
            Ok(CatalogEntry {
                name: name.to_string(),
                pd,
                matrix,
                fibered: parse_flag(get("fibered"))?,
                positive: parse_flag(get("positive"))?,
                genus: parse_count(get("genus"))?,
                crossing_number: parse_count(get("crossing_number"))?,
                unknotting: parse_count(get("unknotting"))?,
                source: get("source").to_string(),
                line,
            })
        })()
        .and_then(|e| validate(&e).map(|_| e));
        match parsed {
            Ok(e) => out.entries.push(e),
            Err(msg) => out.rejected.push((line, msg)),
        }
    }
    Ok(out)
}

/// Reads a catalog; the first inconsistent row is an error.
pub fn ingest_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let r = ingest_catalog_report(text)?;
    match r.rejected.into_iter().next() {
        Some((line, msg)) => Err(CatalogError::Row { line, msg }),
        None => Ok(r.entries),
    }
}

pub fn bundled_catalog() -> Vec<CatalogEntry> {
    ingest_catalog(include_str!("../data/catalog.csv")).expect("bundled catalog is consistent")
}

/// Fibered positive knots with unknotting number `u` and crossing number at most 4u
/// (a fibered positive knot has c <= 4g, and g <= u).
pub fn fibered_positive_candidates(catalog: &[CatalogEntry], u: u32) -> Vec<CatalogEntry> {
    catalog
        .iter()
        .filter(|e| {
            e.fibered == Some(true)
                && e.positive == Some(true)
                && e.unknotting == Some(u)
                && e.crossing_number.is_some_and(|c| c <= 4 * u)
        })
        .cloned()
        .collect()
}
