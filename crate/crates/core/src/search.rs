//! Exhaustive search over crossing-change subsets for Alexander-trivial results.
//!
//! Subsets of each size k are enumerated in colexicographic order, so a shard is a
//! range of colex ranks and can be entered in O(k) without walking the enumeration.
//! Witnesses are candidates only: a trivial Alexander polynomial does not certify the
//! unknot. Results are diagram-level statements about the given diagram.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::{IntMatrix, LaurentPoly};
use crate::diagram::{seifert_matrix, Diagram, SeifertSurface};
use crate::error::{DiagramError, SearchError};
use crate::invariants::alexander;

pub const PREDICATE: &str = "alexander-trivial";
pub const CHECKPOINT_HEADER: &str = "gordian-search-checkpoint 1";
pub const CERTIFICATE_HEADER: &str = "gordian-exhaustion-certificate 1";

/// Binomial coefficients C(n, k) for n <= max_n, k <= max_k.
#[derive(Clone, Debug)]
pub struct Binomials {
    table: Vec<Vec<u64>>,
}

impl Binomials {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let mut table = vec![vec![0u64; max_k + 1]; max_n + 2];
        for n in 0..=max_n + 1 {
            table[n][0] = 1;
            for k in 1..=max_k.min(n) {
                table[n][k] = table[n - 1][k - 1].saturating_add(if k < n { table[n - 1][k] } else { 0 });
            }
        }
        Binomials { table }
    }

    pub fn get(&self, n: usize, k: usize) -> u64 {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }
}

/// Colex rank of a sorted k-subset: sum of C(s_i, i+1).
pub fn colex_rank(b: &Binomials, subset: &[usize]) -> u64 {
    subset.iter().enumerate().map(|(i, &s)| b.get(s, i + 1)).sum()
}

/// Inverse of `colex_rank`.
pub fn colex_unrank(b: &Binomials, mut rank: u64, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        // largest s with C(s, i) <= rank
        let mut s = i - 1;
        while b.get(s + 1, i) <= rank {
            s += 1;
        }
        rank -= b.get(s, i);
        out[i - 1] = s;
    }
    out
}

/// Advances a sorted subset of {0..n} to its colex successor; false after the last one.
pub fn colex_next(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in 0..k {
        let limit = if i + 1 < k { subset[i + 1] } else { n };
        if subset[i] + 1 < limit {
            subset[i] += 1;
            for (j, s) in subset.iter_mut().enumerate().take(i) {
                *s = j;
            }
            return true;
        }
    }
    false
}

/// A range [start, end) of colex ranks of k-subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shard {
    pub k: usize,
    pub start: u64,
    pub end: u64,
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub diagram: Diagram,
    pub k_max: usize,
    pub shard_size: u64,
}

impl SearchTask {
    pub fn new(diagram: Diagram, k_max: usize) -> Self {
        SearchTask { diagram, k_max, shard_size: 2048 }
    }

    pub fn with_shard_size(mut self, s: u64) -> Self {
        self.shard_size = s.max(1);
        self
    }

    pub fn k_max_effective(&self) -> usize {
        self.k_max.min(self.diagram.len())
    }

    /// Shards covering every subset of size 0..=k_max exactly once.
    pub fn shards(&self) -> Vec<Shard> {
        let c = self.diagram.len();
        let km = self.k_max_effective();
        let b = Binomials::new(c, km);
        let mut out = Vec::new();
        for k in 0..=km {
            let total = b.get(c, k);
            let mut s = 0;
            while s < total {
                let e = (s + self.shard_size).min(total);
                out.push(Shard { k, start: s, end: e });
                s = e;
            }
        }
        out
    }

    pub fn expected_count(&self) -> u64 {
        let c = self.diagram.len();
        let km = self.k_max_effective();
        let b = Binomials::new(c, km);
        (0..=km).map(|k| b.get(c, k)).sum()
    }
}

/// A subset whose change gives Δ ≡ 1. Ids are crossing ids of the diagram, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub k: usize,
    pub rank: u64,
    pub ids: Vec<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct Accounting {
    pub wall_clock_secs: f64,
    pub workers: usize,
    pub shards_total: usize,
    pub shards_resumed: usize,
    pub shards_run: usize,
}

#[derive(Clone, Debug)]
pub struct ExhaustionCertificate {
    pub diagram_checksum: String,
    pub crossings: usize,
    pub k_max: usize,
    /// Subsets examined for each size 0..=k_max.
    pub examined: Vec<u64>,
    pub witnesses: Vec<Witness>,
    pub accounting: Accounting,
}

/// Compares results only; timing and shard accounting may differ between runs.
impl PartialEq for ExhaustionCertificate {
    fn eq(&self, o: &Self) -> bool {
        self.diagram_checksum == o.diagram_checksum
            && self.crossings == o.crossings
            && self.k_max == o.k_max
            && self.examined == o.examined
            && self.witnesses == o.witnesses
    }
}

impl ExhaustionCertificate {
    pub fn examined_total(&self) -> u64 {
        self.examined.iter().sum()
    }

    /// Smallest witness size, if any.
    pub fn min_witness_size(&self) -> Option<usize> {
        self.witnesses.iter().map(|w| w.k).min()
    }

    /// Line-oriented text with a trailing SHA-256 over all previous lines. Timing is
    /// written as comments, which the hash and the parser skip.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", CERTIFICATE_HEADER).unwrap();
        writeln!(s, "predicate {}", PREDICATE).unwrap();
        writeln!(s, "scope diagram-level").unwrap();
        writeln!(s, "diagram {}", self.diagram_checksum).unwrap();
        writeln!(s, "crossings {}", self.crossings).unwrap();
        writeln!(s, "kmax {}", self.k_max).unwrap();
        for (k, n) in self.examined.iter().enumerate() {
            writeln!(s, "examined {} {}", k, n).unwrap();
        }
        writeln!(s, "examined-total {}", self.examined_total()).unwrap();
        writeln!(s, "witnesses {}", self.witnesses.len()).unwrap();
        for w in &self.witnesses {
            writeln!(s, "witness {} candidate", join_ids(&w.ids)).unwrap();
        }
        let hash = content_hash(&s);
        let a = &self.accounting;
        writeln!(
            s,
            "# wall-clock {:.3}s workers {} shards {} resumed {} run {}",
            a.wall_clock_secs, a.workers, a.shards_total, a.shards_resumed, a.shards_run
        )
        .unwrap();
        writeln!(s, "sha256 {}", hash).unwrap();
        s
    }

    pub fn from_text(text: &str) -> Result<Self, SearchError> {
        let body = verify_hashed(text)?;
        let corrupt = |m: String| SearchError::CheckpointCorrupt(m);
        let mut lines = body.lines();
        if lines.next() != Some(CERTIFICATE_HEADER) {
            return Err(corrupt("bad certificate header".into()));
        }
        let mut cert = ExhaustionCertificate {
            diagram_checksum: String::new(),
            crossings: 0,
            k_max: 0,
            examined: Vec::new(),
            witnesses: Vec::new(),
            accounting: Accounting::default(),
        };
        for l in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            let num = |i: usize| -> Result<u64, SearchError> {
                t.get(i).and_then(|x| x.parse().ok()).ok_or_else(|| corrupt(format!("bad line '{}'", l)))
            };
            match t.first().copied() {
                Some("predicate") | Some("scope") | Some("examined-total") | Some("witnesses") => {}
                Some("diagram") => cert.diagram_checksum = t.get(1).unwrap_or(&"").to_string(),
                Some("crossings") => cert.crossings = num(1)? as usize,
                Some("kmax") => cert.k_max = num(1)? as usize,
                Some("examined") => cert.examined.push(num(2)?),
                Some("witness") => {
                    let ids = parse_ids(t.get(1).copied().unwrap_or(""))
                        .ok_or_else(|| corrupt(format!("bad line '{}'", l)))?;
                    let b = Binomials::new(cert.crossings, ids.len());
                    // rank is over positions, which equal ids for diagrams built by from_pd
                    let pos: Vec<usize> = ids.iter().map(|&i| i as usize).collect();
                    cert.witnesses.push(Witness { k: ids.len(), rank: colex_rank(&b, &pos), ids });
                }
                _ => return Err(corrupt(format!("unexpected line '{}'", l))),
            }
        }
        Ok(cert)
    }
}

fn join_ids(ids: &[u32]) -> String {
    if ids.is_empty() {
        return "-".into();
    }
    ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_ids(s: &str) -> Option<Vec<u32>> {
    if s == "-" {
        return Some(Vec::new());
    }
    s.split(',').map(|x| x.parse().ok()).collect()
}

fn content_hash(s: &str) -> String {
    let mut h = Sha256::new();
    for l in s.lines().filter(|l| !l.starts_with('#')) {
        h.update(l.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Checks the trailing "sha256" line and returns the hashed body without comments.
fn verify_hashed(text: &str) -> Result<String, SearchError> {
    let corrupt = |m: &str| SearchError::CheckpointCorrupt(m.to_string());
    let trimmed = text.trim_end_matches('\n');
    let (body, last) = trimmed.rsplit_once('\n').ok_or_else(|| corrupt("file too short"))?;
    let hash = last.strip_prefix("sha256 ").ok_or_else(|| corrupt("missing integrity hash"))?;
    let body = format!("{}\n", body);
    if content_hash(&body) != hash.trim() {
        return Err(corrupt("integrity hash mismatch"));
    }
    Ok(body.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{}\n", l)).collect())
}

/// How the Seifert matrix of a changed diagram is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluation {
    /// Rebuild the diagram and its Seifert surface for every subset.
    Naive,
    /// Reuse the Seifert surface and patch the sign contributions of the changed crossings.
    Incremental,
}

/// Per-diagram precomputation shared by all workers.
pub struct SubsetEvaluator {
    diagram: Diagram,
    surface: SeifertSurface,
    base: Vec<i64>,
    signs: Vec<i8>,
    mode: Evaluation,
}

impl SubsetEvaluator {
    pub fn new(diagram: &Diagram, mode: Evaluation) -> Result<Self, DiagramError> {
        if !diagram.is_knot() {
            return Err(DiagramError::NonKnot(diagram.components()));
        }
        let surface = SeifertSurface::new(diagram)?;
        let signs = diagram.signs();
        let base = surface.matrix_with_signs(&signs);
        Ok(SubsetEvaluator { diagram: diagram.clone(), surface, base, signs, mode })
    }

    /// Seifert matrix after changing the crossings at the given positions.
    pub fn matrix(&self, positions: &[usize]) -> IntMatrix {
        match self.mode {
            Evaluation::Naive => {
                seifert_matrix(&self.diagram.change_at(positions)).expect("crossing changes keep a knot")
            }
            Evaluation::Incremental => {
                let mut v = self.base.clone();
                for &i in positions {
                    let s = self.signs[i];
                    self.surface.add_contribution(&mut v, i, s, -1);
                    self.surface.add_contribution(&mut v, i, -s, 1);
                }
                self.surface.to_int_matrix(&v)
            }
        }
    }

    /// Δ ≡ 1 test with two conservative integer screens: a trivial Δ forces
    /// |det(V + V^T)| = 1 and |det(2V - V^T)| = 2^g.
    pub fn is_trivial(&self, positions: &[usize]) -> bool {
        let v = self.matrix(positions);
        alexander_trivial(&v)
    }
}

/// Whether Δ(V) ≡ 1, screened by Δ(-1) and Δ(2) before the full determinant.
pub fn alexander_trivial(v: &IntMatrix) -> bool {
    let n = v.rows();
    if n == 0 {
        return true;
    }
    let vt = v.transpose();
    if !(v + &vt).det().abs().is_one() {
        return false;
    }
    let two = v.scale(&BigInt::from(2));
    if (&two - &vt).det().abs() != BigInt::one() << (n / 2) {
        return false;
    }
    alexander(v).map(|d| d.is_one()).unwrap_or(false)
}

/// Δ of the diagram with the given crossings changed, computed from scratch.
pub fn witness_check(d: &Diagram, ids: &[u32]) -> Result<LaurentPoly, SearchError> {
    let e = d.change_crossings(ids)?;
    let v = seifert_matrix(&e)?;
    Ok(alexander(&v)?)
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    /// Stop after this many newly completed shards (fault injection and time slicing).
    pub stop_after: Option<usize>,
    pub mode: Option<Evaluation>,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Complete(ExhaustionCertificate),
    Interrupted { done: usize, total: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct CheckpointState {
    done: Vec<Shard>,
    witnesses: Vec<Witness>,
}

fn fingerprint(task: &SearchTask) -> String {
    format!(
        "diagram {}\ncrossings {}\nkmax {}\nshard-size {}\n",
        task.diagram.checksum(),
        task.diagram.len(),
        task.k_max_effective(),
        task.shard_size
    )
}

fn checkpoint_text(task: &SearchTask, st: &CheckpointState) -> String {
    let mut s = format!("{}\n{}", CHECKPOINT_HEADER, fingerprint(task));
    let mut done = st.done.clone();
    done.sort();
    for d in &done {
        writeln!(s, "done {} {} {}", d.k, d.start, d.end).unwrap();
    }
    let mut ws = st.witnesses.clone();
    ws.sort();
    for w in &ws {
        writeln!(s, "witness {} {} {}", w.k, w.rank, join_ids(&w.ids)).unwrap();
    }
    let h = content_hash(&s);
    writeln!(s, "sha256 {}", h).unwrap();
    s
}

fn read_checkpoint(task: &SearchTask, path: &Path) -> Result<CheckpointState, SearchError> {
    let text = fs::read_to_string(path)?;
    let body = verify_hashed(&text)?;
    let corrupt = |m: String| SearchError::CheckpointCorrupt(m);
    let expect = format!("{}\n{}", CHECKPOINT_HEADER, fingerprint(task));
    let head: String = body.lines().take(5).map(|l| format!("{}\n", l)).collect();
    if !body.starts_with(CHECKPOINT_HEADER) {
        return Err(corrupt("bad checkpoint header".into()));
    }
    if head != expect {
        return Err(SearchError::CheckpointMismatch(format!("checkpoint is for a different task:\n{}", head)));
    }
    let valid: std::collections::BTreeSet<Shard> = task.shards().into_iter().collect();
    let mut st = CheckpointState::default();
    for l in body.lines().skip(5) {
        let t: Vec<&str> = l.split_whitespace().collect();
        let num = |i: usize| -> Result<u64, SearchError> {
            t.get(i).and_then(|x| x.parse().ok()).ok_or_else(|| corrupt(format!("bad line '{}'", l)))
        };
        match t.first().copied() {
            Some("done") if t.len() == 4 => {
                let sh = Shard { k: num(1)? as usize, start: num(2)?, end: num(3)? };
                if !valid.contains(&sh) {
                    return Err(corrupt(format!("unknown shard '{}'", l)));
                }
                st.done.push(sh);
            }
            Some("witness") if t.len() == 4 => {
                let ids = parse_ids(t[3]).ok_or_else(|| corrupt(format!("bad line '{}'", l)))?;
                st.witnesses.push(Witness { k: num(1)? as usize, rank: num(2)?, ids });
            }
            _ => return Err(corrupt(format!("unexpected line '{}'", l))),
        }
    }
    Ok(st)
}

fn write_atomic(path: &Path, text: &str) -> Result<(), SearchError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn run_shard(ev: &SubsetEvaluator, b: &Binomials, n: usize, sh: Shard) -> Vec<Witness> {
    let ids = ev.diagram.ids();
    let mut cur = colex_unrank(b, sh.start, sh.k);
    let mut out = Vec::new();
    let mut rank = sh.start;
    while rank < sh.end {
        if ev.is_trivial(&cur) {
            let mut w: Vec<u32> = cur.iter().map(|&i| ids[i]).collect();
            w.sort_unstable();
            out.push(Witness { k: sh.k, rank, ids: w });
        }
        rank += 1;
        if rank < sh.end && !colex_next(&mut cur, n) {
            break;
        }
    }
    out
}

/// Runs (or resumes) the search. With `stop_after`, returns `Interrupted` once that many
/// shards have been completed in this session.
pub fn search_with(task: &SearchTask, opts: &SearchOptions) -> Result<SearchOutcome, SearchError> {
    let t0 = Instant::now();
    let d = &task.diagram;
    if !d.is_knot() {
        return Err(DiagramError::NonKnot(d.components()).into());
    }
    let n = d.len();
    let km = task.k_max_effective();
    let b = Binomials::new(n, km);
    let shards = task.shards();
    let mut state = CheckpointState::default();
    if opts.resume {
        if let Some(p) = opts.checkpoint.as_ref().filter(|p| p.exists()) {
            state = read_checkpoint(task, p)?;
        }
    }
    let resumed = state.done.len();
    let done: std::collections::BTreeSet<Shard> = state.done.iter().copied().collect();
    let mut pending: Vec<Shard> = shards.iter().copied().filter(|s| !done.contains(s)).collect();
    if let Some(limit) = opts.stop_after {
        pending.truncate(limit);
    }
    let ev = SubsetEvaluator::new(d, opts.mode.unwrap_or(Evaluation::Incremental))?;
    let workers = opts.workers.max(1);
    let shared = Mutex::new((state, None::<SearchError>));
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    pool.install(|| {
        pending.par_iter().for_each(|&sh| {
            let found = run_shard(&ev, &b, n, sh);
            // single writer: the checkpoint file is rewritten under the lock
            let mut g = shared.lock().unwrap();
            g.0.done.push(sh);
            g.0.witnesses.extend(found);
            if let Some(p) = &opts.checkpoint {
                if let Err(e) = write_atomic(p, &checkpoint_text(task, &g.0)) {
                    g.1.get_or_insert(e);
                }
            }
        });
    });
    let (mut state, err) = shared.into_inner().unwrap();
    if let Some(e) = err {
        return Err(e);
    }
    if state.done.len() < shards.len() {
        return Ok(SearchOutcome::Interrupted { done: state.done.len(), total: shards.len() });
    }
    // accounting: every subset of every size counted exactly once
    let mut examined = vec![0u64; km + 1];
    let mut seen = std::collections::BTreeSet::new();
    for s in &state.done {
        if !seen.insert(*s) {
            return Err(SearchError::CheckpointCorrupt(format!("shard {:?} completed twice", s)));
        }
        examined[s.k] += s.end - s.start;
    }
    for k in 0..=km {
        if examined[k] != b.get(n, k) {
            return Err(SearchError::CheckpointCorrupt(format!(
                "size {} examined {} of {}",
                k,
                examined[k],
                b.get(n, k)
            )));
        }
    }
    state.witnesses.sort();
    state.witnesses.dedup();
    // independent recomputation of every witness on the naive path
    for w in &state.witnesses {
        if !witness_check(d, &w.ids)?.is_one() {
            return Err(SearchError::CheckpointCorrupt(format!("witness {:?} fails recomputation", w.ids)));
        }
    }
    Ok(SearchOutcome::Complete(ExhaustionCertificate {
        diagram_checksum: d.checksum(),
        crossings: n,
        k_max: km,
        examined,
        witnesses: state.witnesses,
        accounting: Accounting {
            wall_clock_secs: t0.elapsed().as_secs_f64(),
            workers,
            shards_total: shards.len(),
            shards_resumed: resumed,
            shards_run: pending.len(),
        },
    }))
}

pub fn search(
    task: &SearchTask,
    workers: usize,
    checkpoint: Option<&Path>,
) -> Result<ExhaustionCertificate, SearchError> {
    let opts = SearchOptions {
        workers,
        checkpoint: checkpoint.map(Path::to_path_buf),
        resume: checkpoint.is_some(),
        ..Default::default()
    };
    match search_with(task, &opts)? {
        SearchOutcome::Complete(c) => Ok(c),
        SearchOutcome::Interrupted { .. } => unreachable!("no stop limit was set"),
    }
}
