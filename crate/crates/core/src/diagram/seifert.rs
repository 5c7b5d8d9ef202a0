//! Seifert circles, their nesting and the Seifert matrix of the canonical surface.
//!
//! Each crossing is drawn in a local frame where both strands head east. The four
//! corners are then named N, S, W, E; the smoothing joins NW to NE (north arc) and
//! SW to SE (south arc), and W, E lie on the twisted band. Corners and faces are
//! fixed by the planar picture, so a crossing change only flips the band twist.
//!
//! Basis: every face except the outer face and one dropped face per bounded region
//! of the Seifert circles. For a face `f` the basis curve runs around the boundary
//! of `f` on the surface. Its linking with the push-off of another curve is a sum of
//! per-crossing contributions computed in closed form.

use std::collections::BTreeMap;

use super::{Diagram, EdgeEnds};
use crate::algebra::IntMatrix;
use crate::error::DiagramError;

/// Corner index of (N, S, W, E) for a positive and a negative crossing.
const ROLE_POS: [u8; 4] = [2, 0, 3, 1];
const ROLE_NEG: [u8; 4] = [3, 1, 0, 2];

fn roles(sign: i8) -> [u8; 4] {
    if sign > 0 {
        ROLE_POS
    } else {
        ROLE_NEG
    }
}

/// How the two Seifert circles at a crossing sit relative to the band's strip region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothingConfig {
    /// The north circle bounds the strip region (it encloses the south circle).
    NorthParent,
    /// The south circle bounds the strip region.
    SouthParent,
    /// Neither circle encloses the other.
    Siblings,
}

#[derive(Clone, Debug)]
pub struct SeifertCircles {
    pub count: usize,
    /// Circle index of every edge label.
    pub circle_of_edge: BTreeMap<u32, usize>,
    /// Enclosing circle in the nesting forest (None for outermost circles).
    pub parent: Vec<Option<usize>>,
}

/// Combinatorial data of the canonical Seifert surface, reusable across crossing changes.
#[derive(Clone, Debug)]
pub struct SeifertSurface {
    /// Faces at the (N, S, W, E) corners of each crossing.
    pub corner_faces: Vec<[usize; 4]>,
    pub configs: Vec<SmoothingConfig>,
    /// Basis index of every face, or None for the outer face and dropped faces.
    pub basis_index: Vec<Option<usize>>,
    pub rank: usize,
    pub circles: SeifertCircles,
    pub outer_face: usize,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

impl SeifertSurface {
    pub fn new(d: &Diagram) -> Result<Self, DiagramError> {
        let n = d.len();
        if n == 0 {
            return Ok(SeifertSurface {
                corner_faces: vec![],
                configs: vec![],
                basis_index: vec![],
                rank: 0,
                circles: SeifertCircles { count: 1, circle_of_edge: BTreeMap::new(), parent: vec![None] },
                outer_face: 0,
            });
        }
        let ends: EdgeEnds = d.edge_ends();
        let (face_of, faces) = d.faces(&ends);
        let xs = d.crossings();

        // Seifert arcs and circles
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        let mut arcs = Vec::with_capacity(n);
        for c in xs {
            let [a, b, cc, dd] = c.ends;
            let (north, south) = if c.sign() > 0 { ((dd, cc), (a, b)) } else { ((a, dd), (b, cc)) };
            next.insert(north.0, north.1);
            next.insert(south.0, south.1);
            arcs.push((north.0, south.0));
        }
        let mut circle_of_edge: BTreeMap<u32, usize> = BTreeMap::new();
        let mut count = 0;
        let keys: Vec<u32> = next.keys().copied().collect();
        for e in keys {
            if circle_of_edge.contains_key(&e) {
                continue;
            }
            let mut cur = e;
            while let std::collections::btree_map::Entry::Vacant(v) = circle_of_edge.entry(cur) {
                v.insert(count);
                cur = next[&cur];
            }
            count += 1;
        }

        let corner_faces: Vec<[usize; 4]> = xs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = roles(c.sign());
                [
                    face_of[i][r[0] as usize],
                    face_of[i][r[1] as usize],
                    face_of[i][r[2] as usize],
                    face_of[i][r[3] as usize],
                ]
            })
            .collect();

        // regions of the complement of the circles: faces joined across bands
        let nf = faces.len();
        let mut dsu = Dsu((0..nf).collect());
        for cf in &corner_faces {
            dsu.union(cf[2], cf[3]);
        }
        let region: Vec<usize> = (0..nf).map(|f| dsu.find(f)).collect();
        let mut region_ids: Vec<usize> = region.clone();
        region_ids.sort_unstable();
        region_ids.dedup();
        if region_ids.len() != count + 1 {
            return Err(DiagramError::Inconsistent(format!(
                "{} regions for {} Seifert circles",
                region_ids.len(),
                count
            )));
        }

        // each circle separates two regions
        let mut sides: Vec<Option<(usize, usize)>> = vec![None; count];
        for (i, cf) in corner_faces.iter().enumerate() {
            let strip = region[cf[2]];
            let cn = circle_of_edge[&arcs[i].0];
            let cs = circle_of_edge[&arcs[i].1];
            for (c, far) in [(cn, region[cf[0]]), (cs, region[cf[1]])] {
                if far == strip {
                    return Err(DiagramError::Inconsistent("Seifert circle with one side".into()));
                }
                let pair = (strip.min(far), strip.max(far));
                match sides[c] {
                    Some(p) if p != pair => {
                        return Err(DiagramError::Inconsistent("Seifert circle sides disagree".into()))
                    }
                    _ => sides[c] = Some(pair),
                }
            }
        }

        let outer_face = match d.outer_hint() {
            Some((x, k)) => face_of[x][k as usize],
            None => (0..nf).max_by_key(|&f| (faces[f].len(), std::cmp::Reverse(f))).unwrap(),
        };
        let root = region[outer_face];

        // region tree by BFS from the outer region
        let mut adj: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, s) in sides.iter().enumerate() {
            let (r1, r2) = s.expect("every circle meets a crossing");
            adj.entry(r1).or_default().push((c, r2));
            adj.entry(r2).or_default().push((c, r1));
        }
        let mut inside = vec![usize::MAX; count];
        let mut parent_of_region: BTreeMap<usize, Option<usize>> = BTreeMap::new();
        parent_of_region.insert(root, None);
        let mut order = vec![root];
        let mut qi = 0;
        while qi < order.len() {
            let r = order[qi];
            qi += 1;
            for &(c, r2) in adj.get(&r).map(|v| v.as_slice()).unwrap_or(&[]) {
                if let std::collections::btree_map::Entry::Vacant(v) = parent_of_region.entry(r2) {
                    v.insert(Some(c));
                    inside[c] = r2;
                    order.push(r2);
                }
            }
        }
        if inside.contains(&usize::MAX) {
            return Err(DiagramError::Inconsistent("Seifert circles do not form a nesting tree".into()));
        }
        // parent circle: the circle bounding the region just outside
        let parent: Vec<Option<usize>> = (0..count)
            .map(|c| {
                let (r1, r2) = sides[c].unwrap();
                let outside = if inside[c] == r1 { r2 } else { r1 };
                parent_of_region[&outside]
            })
            .collect();

        let configs = corner_faces
            .iter()
            .enumerate()
            .map(|(i, cf)| {
                let strip = region[cf[2]];
                if inside[circle_of_edge[&arcs[i].0]] == strip {
                    SmoothingConfig::NorthParent
                } else if inside[circle_of_edge[&arcs[i].1]] == strip {
                    SmoothingConfig::SouthParent
                } else {
                    SmoothingConfig::Siblings
                }
            })
            .collect();

        // basis faces
        let mut dropped: BTreeMap<usize, usize> = BTreeMap::new();
        for f in 0..nf {
            dropped.entry(region[f]).or_insert(f);
        }
        let mut basis_index = vec![None; nf];
        let mut rank = 0;
        for f in 0..nf {
            let skip = if region[f] == root { f == outer_face } else { dropped[&region[f]] == f };
            if !skip {
                basis_index[f] = Some(rank);
                rank += 1;
            }
        }
        Ok(SeifertSurface {
            corner_faces,
            configs,
            basis_index,
            rank,
            circles: SeifertCircles { count, circle_of_edge, parent },
            outer_face,
        })
    }

    /// Adds the contribution of crossing `i` with the given sign (times `mult`) to `v`.
    pub fn add_contribution(&self, v: &mut [i64], i: usize, sign: i8, mult: i64) {
        let m = self.rank;
        let [n, s, w, e] = self.corner_faces[i].map(|f| self.basis_index[f]);
        let mut put = |a: Option<usize>, b: Option<usize>, x: i64| {
            if let (Some(a), Some(b)) = (a, b) {
                v[a * m + b] += x * mult;
            }
        };
        let t = if sign > 0 { e } else { w };
        put(t, w, 1);
        put(t, e, -1);
        match self.configs[i] {
            SmoothingConfig::NorthParent => {
                put(n, w, -1);
                put(n, e, 1);
            }
            SmoothingConfig::SouthParent => {
                put(w, s, 1);
                put(e, s, -1);
            }
            SmoothingConfig::Siblings => {}
        }
    }

    /// Seifert matrix for the given crossing signs (row-major i64).
    pub fn matrix_with_signs(&self, signs: &[i8]) -> Vec<i64> {
        let mut v = vec![0i64; self.rank * self.rank];
        for (i, &s) in signs.iter().enumerate() {
            self.add_contribution(&mut v, i, s, 1);
        }
        v
    }

    pub fn to_int_matrix(&self, v: &[i64]) -> IntMatrix {
        IntMatrix::from_vec(self.rank, self.rank, v.iter().map(|&x| x.into()).collect())
    }
}

/// Seifert circles of the oriented smoothing and their nesting forest.
pub fn seifert_circles(d: &Diagram) -> Result<SeifertCircles, DiagramError> {
    Ok(SeifertSurface::new(d)?.circles)
}

/// Genus (c - s + 1)/2 of the canonical surface of a positive knot diagram.
pub fn genus_positive(d: &Diagram) -> Result<u32, DiagramError> {
    if let Some(c) = d.crossings().iter().find(|c| c.sign() < 0) {
        return Err(DiagramError::NotPositive(c.id));
    }
    if !d.is_knot() {
        return Err(DiagramError::NonKnot(d.components()));
    }
    let s = seifert_circles(d)?.count;
    Ok(((d.len() + 1 - s) / 2) as u32)
}

/// Seifert matrix of the canonical Seifert surface of a knot diagram.
pub fn seifert_matrix(d: &Diagram) -> Result<IntMatrix, DiagramError> {
    if !d.is_knot() {
        return Err(DiagramError::NonKnot(d.components()));
    }
    let surf = SeifertSurface::new(d)?;
    let v = surf.matrix_with_signs(&d.signs());
    Ok(surf.to_int_matrix(&v))
}
