//! Oriented knot diagrams in PD form.
//!
//! Convention: a crossing `X[a,b,c,d]` lists its four edge labels counterclockwise,
//! starting with the incoming under-strand `a`; the under-strand leaves along `c`.
//! The over-strand runs between `b` and `d`; the crossing is positive when it runs
//! from `d` to `b`. The over direction is recovered by traversal at parse time and
//! then stored.

mod seifert;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::DiagramError;

pub use seifert::{genus_positive, seifert_circles, seifert_matrix, SeifertCircles, SeifertSurface, SmoothingConfig};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Stable identity; survives crossing changes and is never renumbered.
    pub id: u32,
    /// Edge labels in PD order.
    pub ends: [u32; 4],
    /// Slot (1 or 3) through which the over-strand enters.
    pub over_in: u8,
}

impl Crossing {
    pub fn sign(&self) -> i8 {
        if self.over_in == 3 {
            1
        } else {
            -1
        }
    }

    /// The same crossing with over and under exchanged. The incoming over-strand
    /// becomes the incoming under-strand, so the PD tuple is rotated.
    pub fn changed(&self) -> Crossing {
        let [a, b, c, d] = self.ends;
        if self.over_in == 3 {
            Crossing { id: self.id, ends: [d, a, b, c], over_in: 1 }
        } else {
            Crossing { id: self.id, ends: [b, c, d, a], over_in: 3 }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    components: usize,
    /// Optional (crossing index, corner) of the face to treat as the outer face.
    outer: Option<(usize, u8)>,
}

/// (crossing index, slot) pairs at the two ends of every edge.
pub(crate) type EdgeEnds = BTreeMap<u32, [(usize, u8); 2]>;

impl Diagram {
    /// The 0-crossing diagram of the unknot.
    pub fn unknot() -> Self {
        Diagram { crossings: Vec::new(), components: 1, outer: None }
    }

    /// Builds a diagram from PD tuples; crossing ids are assigned 0, 1, ... in input order.
    pub fn from_pd(pd: &[[u32; 4]]) -> Result<Self, DiagramError> {
        let crossings: Vec<Crossing> =
            pd.iter().enumerate().map(|(i, e)| Crossing { id: i as u32, ends: *e, over_in: 0 }).collect();
        Self::from_crossings(crossings, None)
    }

    pub(crate) fn from_crossings(
        mut crossings: Vec<Crossing>,
        outer: Option<(usize, u8)>,
    ) -> Result<Self, DiagramError> {
        let ids: BTreeSet<u32> = crossings.iter().map(|c| c.id).collect();
        if ids.len() != crossings.len() {
            return Err(DiagramError::Inconsistent("duplicate crossing ids".into()));
        }
        let ends = edge_ends(&crossings)?;
        let components = orient(&mut crossings, &ends)?;
        let d = Diagram { crossings, components, outer };
        d.check_planar(&ends)?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn is_knot(&self) -> bool {
        self.components == 1
    }

    pub fn outer_hint(&self) -> Option<(usize, u8)> {
        self.outer
    }

    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign()).collect()
    }

    pub fn is_positive(&self) -> bool {
        self.crossings.iter().all(|c| c.sign() > 0)
    }

    pub fn ids(&self) -> Vec<u32> {
        self.crossings.iter().map(|c| c.id).collect()
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    pub(crate) fn edge_ends(&self) -> EdgeEnds {
        edge_ends(&self.crossings).expect("validated at construction")
    }

    /// Swaps over and under at the listed crossings. Ids and geometry are preserved.
    pub fn change_crossings(&self, ids: &[u32]) -> Result<Diagram, DiagramError> {
        let mut out = self.clone();
        for &id in ids {
            let i = self.index_of(id).ok_or(DiagramError::UnknownCrossingId(id))?;
            out.crossings[i] = out.crossings[i].changed();
        }
        Ok(out)
    }

    /// Same as `change_crossings` but by position in the crossing list.
    pub fn change_at(&self, idx: &[usize]) -> Diagram {
        let mut out = self.clone();
        for &i in idx {
            out.crossings[i] = out.crossings[i].changed();
        }
        out
    }

    /// Relabels crossings (order and ids) by a permutation: new position k holds old crossing perm[k].
    pub fn permuted(&self, perm: &[usize]) -> Diagram {
        let crossings: Vec<Crossing> = perm.iter().map(|&i| self.crossings[i].clone()).collect();
        let outer = self.outer.map(|(x, k)| (perm.iter().position(|&p| p == x).unwrap(), k));
        Diagram { crossings, components: self.components, outer }
    }

    /// PD text, e.g. "PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]".
    pub fn to_pd_string(&self) -> String {
        let xs: Vec<String> = self
            .crossings
            .iter()
            .map(|c| format!("X[{},{},{},{}]", c.ends[0], c.ends[1], c.ends[2], c.ends[3]))
            .collect();
        format!("PD[{}]", xs.join(", "))
    }

    /// SHA-256 of the PD text and the outer-face hint, hex encoded.
    pub fn checksum(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.to_pd_string().as_bytes());
        if let Some((x, k)) = self.outer {
            h.update(format!(";outer={},{}", x, k).as_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn with_outer_hint(mut self, outer: Option<(usize, u8)>) -> Self {
        self.outer = outer;
        self
    }

    /// Faces as cycles of (crossing index, corner); corner k lies between slots k and k+1.
    pub(crate) fn faces(&self, ends: &EdgeEnds) -> (Vec<[usize; 4]>, Vec<Vec<(usize, u8)>>) {
        let n = self.crossings.len();
        let mut face_of = vec![[usize::MAX; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for k in 0..4u8 {
                if face_of[x][k as usize] != usize::MAX {
                    continue;
                }
                let fid = faces.len();
                let mut cyc = Vec::new();
                let (mut cx, mut ck) = (x, k);
                while face_of[cx][ck as usize] == usize::MAX {
                    face_of[cx][ck as usize] = fid;
                    cyc.push((cx, ck));
                    let slot = (ck + 1) % 4;
                    let e = self.crossings[cx].ends[slot as usize];
                    let pair = ends[&e];
                    let other = if pair[0] == (cx, slot) { pair[1] } else { pair[0] };
                    cx = other.0;
                    ck = other.1;
                }
                faces.push(cyc);
            }
        }
        (face_of, faces)
    }

    fn check_planar(&self, ends: &EdgeEnds) -> Result<(), DiagramError> {
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        // connectivity of the 4-valent graph
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for e in self.crossings[x].ends {
                for (y, _) in ends[&e] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(DiagramError::Inconsistent("diagram graph is disconnected".into()));
        }
        let (_, faces) = self.faces(ends);
        if faces.len() != n + 2 {
            return Err(DiagramError::Inconsistent(format!(
                "rotation system is not planar: {} faces for {} crossings",
                faces.len(),
                n
            )));
        }
        Ok(())
    }
}

fn edge_ends(crossings: &[Crossing]) -> Result<EdgeEnds, DiagramError> {
    let mut occ: BTreeMap<u32, Vec<(usize, u8)>> = BTreeMap::new();
    for (i, c) in crossings.iter().enumerate() {
        for (s, e) in c.ends.iter().enumerate() {
            occ.entry(*e).or_default().push((i, s as u8));
        }
    }
    let mut out = BTreeMap::new();
    for (e, v) in occ {
        if v.len() != 2 {
            return Err(DiagramError::Parse {
                pos: v[0].0,
                msg: format!("edge {} occurs {} times (crossing {})", e, v.len(), crossings[v[0].0].id),
            });
        }
        out.insert(e, [v[0], v[1]]);
    }
    Ok(out)
}

/// Follows the under-strands to fix the over direction at every crossing.
/// Returns the number of link components that contain an under-passage.
fn orient(crossings: &mut [Crossing], ends: &EdgeEnds) -> Result<usize, DiagramError> {
    let n = crossings.len();
    if n == 0 {
        return Ok(1);
    }
    let mut over_in = vec![0u8; n];
    let mut under_seen = vec![false; n];
    let mut components = 0;
    for start in 0..n {
        if under_seen[start] {
            continue;
        }
        components += 1;
        let (mut x, mut slot) = (start, 0u8);
        loop {
            let out = match slot {
                0 => {
                    if under_seen[x] {
                        return Err(DiagramError::Inconsistent(format!(
                            "under-strand of crossing {} traversed twice",
                            crossings[x].id
                        )));
                    }
                    under_seen[x] = true;
                    2
                }
                1 | 3 => {
                    if over_in[x] != 0 && over_in[x] != slot {
                        return Err(DiagramError::Inconsistent(format!(
                            "over-strand of crossing {} traversed in both directions",
                            crossings[x].id
                        )));
                    }
                    over_in[x] = slot;
                    4 - slot
                }
                _ => {
                    return Err(DiagramError::Inconsistent(format!(
                        "orientation enters crossing {} along its outgoing under-strand",
                        crossings[x].id
                    )))
                }
            };
            let e = crossings[x].ends[out as usize];
            let pair = ends[&e];
            let next = if pair[0] == (x, out) { pair[1] } else { pair[0] };
            x = next.0;
            slot = next.1;
            if (x, slot) == (start, 0) {
                break;
            }
        }
    }
    for (i, c) in crossings.iter_mut().enumerate() {
        if over_in[i] == 0 {
            // over-strand lies on a component without under-passages
            return Err(DiagramError::Inconsistent(format!("cannot orient the over-strand of crossing {}", c.id)));
        }
        c.over_in = over_in[i];
    }
    Ok(components)
}

/// Parses PD text. Accepts `PD[X[1,5,2,4], ...]`, `X[1,5,2,4] X[...]` or
/// `[[1,5,2,4], ...]`; only the integer sequence and its grouping into fours matter.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let mut nums: Vec<u32> = Vec::new();
    let mut cur: Option<(usize, u64)> = None;
    for (pos, ch) in text.char_indices() {
        if let Some(d) = ch.to_digit(10) {
            let (start, v) = cur.unwrap_or((pos, 0));
            let v = v * 10 + d as u64;
            if v > u32::MAX as u64 {
                return Err(DiagramError::Parse { pos: start, msg: "edge label too large".into() });
            }
            cur = Some((start, v));
            continue;
        }
        if let Some((_, v)) = cur.take() {
            nums.push(v as u32);
        }
        if !(ch.is_whitespace() || "PDX[](),;".contains(ch)) {
            return Err(DiagramError::Parse { pos, msg: format!("unexpected character '{}'", ch) });
        }
    }
    if let Some((_, v)) = cur {
        nums.push(v as u32);
    }
    if !nums.len().is_multiple_of(4) {
        return Err(DiagramError::Parse {
            pos: text.len(),
            msg: format!("{} edge labels is not a multiple of 4", nums.len()),
        });
    }
    let pd: Vec<[u32; 4]> = nums.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
    Diagram::from_pd(&pd)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "PD[X[2,4,3,1], X[4,6,5,3], X[6,2,1,5]]";

    #[test]
    fn trefoil_parses_positive() {
        let d = parse_diagram(TREFOIL).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.components(), 1);
        assert!(d.is_positive());
    }

    #[test]
    fn unmatched_edge() {
        let e = parse_diagram("X[1,2,3,4]").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { .. }));
    }

    #[test]
    fn change_is_involution() {
        let d = parse_diagram(TREFOIL).unwrap();
        let c = d.change_crossings(&[1]).unwrap();
        assert_eq!(c.signs(), vec![1, -1, 1]);
        let back = c.change_crossings(&[1]).unwrap();
        assert_eq!(back.signs(), d.signs());
        assert_eq!(back.crossings()[1].ends, d.crossings()[1].ends);
        assert!(d.change_crossings(&[7]).is_err());
    }

    #[test]
    fn changed_pd_reorients_consistently() {
        let d = parse_diagram(TREFOIL).unwrap().change_crossings(&[0, 2]).unwrap();
        let pd: Vec<[u32; 4]> = d.crossings().iter().map(|c| c.ends).collect();
        let re = Diagram::from_pd(&pd).unwrap();
        assert_eq!(re.signs(), d.signs());
    }
}
