//! Bundled diagrams and Seifert matrices of the knots used throughout.

use crate::algebra::IntMatrix;
use crate::braid::BraidWord;
use crate::diagram::{parse_diagram, seifert_matrix, Diagram};
use crate::family::{build_family_diagram, bundled_tangle};
use crate::invariants::trefoil_plumbing_matrix;

const K11N183: &str = include_str!("../data/k11n183.txt");

fn data_line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("bundled data lacks '{}'", key))
}

/// Positive 12-crossing diagram of K11n183.
pub fn k11n183() -> Diagram {
    parse_diagram(data_line(K11N183, "PD[")).expect("bundled K11n183 diagram parses")
}

/// Three crossing ids of `k11n183()` whose change gives Δ ≡ 1.
pub fn k11n183_marked() -> Vec<u32> {
    data_line(K11N183, "marked").split_whitespace().skip(1).map(|t| t.parse().expect("crossing id")).collect()
}

pub fn trefoil() -> Diagram {
    BraidWord::torus(2, 3).closure().expect("T(2,3) closes")
}

pub fn t25() -> Diagram {
    BraidWord::torus(2, 5).closure().expect("T(2,5) closes")
}

/// T(2,3)#T(2,3) as the closure of σ1^3 σ2^3.
pub fn trefoil_sum() -> Diagram {
    BraidWord::new(3, vec![1, 1, 1, 2, 2, 2]).and_then(|w| w.closure()).expect("connected sum closes")
}

/// D_1 of the tangle family.
pub fn d1() -> Diagram {
    build_family_diagram(&bundled_tangle(), 1)
}

/// K11a361 as given by its 4x4 Seifert matrix.
pub fn k11a361_matrix() -> IntMatrix {
    IntMatrix::from_rows(&[[-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -3, 2], [0, 0, 1, -3]])
}

/// Names accepted by `named_matrix`.
pub const NAMES: &[&str] = &["unknot", "trefoil", "T25", "T23#2", "K10n14", "K11n183", "K11a361", "D1"];

/// Seifert matrix of a bundled knot by name (case-insensitive).
pub fn named_matrix(name: &str) -> Option<IntMatrix> {
    let diag = |d: Diagram| seifert_matrix(&d).expect("bundled diagrams are knots");
    Some(match name.to_ascii_lowercase().as_str() {
        "unknot" | "0_1" => IntMatrix::zeros(0, 0),
        "trefoil" | "t23" | "3_1" => diag(trefoil()),
        "t25" | "5_1" => diag(t25()),
        "t23#2" | "trefoilsum" => diag(trefoil_sum()),
        "k10n14" => trefoil_plumbing_matrix(-2, 1),
        "k11n183" => diag(k11n183()),
        "k11a361" => k11a361_matrix(),
        "d1" | "k1" => diag(d1()),
        _ => return None,
    })
}

/// Bundled diagram by name, where one exists.
pub fn named_diagram(name: &str) -> Option<Diagram> {
    Some(match name.to_ascii_lowercase().as_str() {
        "unknot" | "0_1" => Diagram::unknot(),
        "trefoil" | "t23" | "3_1" => trefoil(),
        "t25" | "5_1" => t25(),
        "t23#2" | "trefoilsum" => trefoil_sum(),
        "k11n183" => k11n183(),
        "d1" | "k1" => d1(),
        _ => return None,
    })
}
