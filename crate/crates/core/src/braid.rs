//! Braid words, their closures, and optimal unknotting sets for positive braid closures.
//!
//! The unknotting recursion works on the braid word itself. Position 1 is the outermost
//! Seifert circle d_1 of the closure. Every letter keeps the id of the crossing it came
//! from, so crossings selected in a reduced word can be found in the original diagram.

use std::fmt;
use std::str::FromStr;

use crate::diagram::Diagram;
use crate::error::BraidError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::Parse("a braid needs at least one strand".into()));
        }
        if let Some(&l) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(BraidError::Parse(format!("letter {} is not a generator on {} strands", l, strands)));
        }
        Ok(BraidWord { strands, letters })
    }

    /// (σ_1 ⋯ σ_{p-1})^q, whose closure is the torus knot T(p, q).
    pub fn torus(p: usize, q: usize) -> Self {
        let letters = (0..q).flat_map(|_| 1..p as i32).collect();
        BraidWord { strands: p, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Number of components of the closure: cycles of the induced permutation.
    pub fn component_count(&self) -> usize {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = perm[x];
            }
        }
        cycles
    }

    /// PD tuples of the closure, one per letter in letter order.
    pub fn closure_pd(&self) -> Vec<[u32; 4]> {
        let n = self.strands;
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let first = cur.clone();
        let mut next = n as u32 + 1;
        let mut pd = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (nw, sw) = (cur[i], cur[i + 1]);
            let (ne, se) = (next, next + 1);
            next += 2;
            pd.push(if l > 0 { [sw, se, ne, nw] } else { [nw, sw, se, ne] });
            cur[i] = ne;
            cur[i + 1] = se;
        }
        let rename = |e: u32| cur.iter().position(|&c| c == e).map(|k| first[k]).unwrap_or(e);
        let mut pd: Vec<[u32; 4]> = pd.into_iter().map(|x| x.map(rename)).collect();
        // compact labels to 1..2c
        let mut labels: Vec<u32> = pd.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        for x in pd.iter_mut() {
            for e in x.iter_mut() {
                *e = labels.binary_search(e).unwrap() as u32 + 1;
            }
        }
        pd
    }

    /// The closure as a diagram; crossing ids follow letter order and the outer face
    /// is the one above the first σ_1. Fails only for split closures (some generator
    /// σ_i never occurs), which have no connected PD code.
    pub fn closure(&self) -> Result<Diagram, BraidError> {
        if self.letters.is_empty() && self.strands == 1 {
            return Ok(Diagram::unknot());
        }
        for i in 1..self.strands as i32 {
            if !self.letters.iter().any(|l| l.abs() == i) {
                return Err(BraidError::SplitClosure(i as usize));
            }
        }
        let d = Diagram::from_pd(&self.closure_pd()).map_err(|e| BraidError::Parse(e.to_string()))?;
        let outer =
            self.letters.iter().position(|l| l.abs() == 1).map(|x| (x, if self.letters[x] > 0 { 2 } else { 3 }));
        Ok(d.with_outer_hint(outer))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {}", l)?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// "n: i1 i2 ..." with generators separated by spaces or commas.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, rest) = s.split_once(':').ok_or_else(|| BraidError::Parse("expected 'n: letters'".into()))?;
        let strands: usize =
            n.trim().parse().map_err(|_| BraidError::Parse(format!("bad strand count '{}'", n.trim())))?;
        let letters = rest
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i32>().map_err(|_| BraidError::Parse(format!("bad letter '{}'", t))))
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepCase {
    EmbeddedArc,
    Loop,
}

impl fmt::Display for StepCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepCase::EmbeddedArc => "embedded-arc",
            StepCase::Loop => "loop",
        })
    }
}

/// One recursion step: the walk α (crossing ids in order, ending at the repeated
/// crossing in the loop case), the changed underpasses and the deleted crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub case: StepCase,
    pub alpha: Vec<u32>,
    pub changed: Vec<u32>,
    /// Deleted crossings; in the loop case the double point comes last.
    pub removed: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknottingCertificate {
    pub word: BraidWord,
    pub selected: Vec<u32>,
    pub steps: Vec<TraceStep>,
}

/// Positive braid word whose letters carry crossing ids.
#[derive(Clone, Debug)]
struct Tracked {
    strands: usize,
    letters: Vec<(u32, usize)>,
}

impl Tracked {
    fn from_word(w: &BraidWord) -> Self {
        Tracked {
            strands: w.strands,
            letters: w.letters.iter().enumerate().map(|(k, &l)| (k as u32, l as usize)).collect(),
        }
    }

    /// Walks from position 1 before the first letter. Returns the step this word calls for.
    fn next_step(&self) -> Result<Option<(TraceStep, Vec<Option<usize>>)>, String> {
        let m = self.letters.len();
        if m == 0 {
            return Ok(None);
        }
        let mut pos = 1usize;
        // (letter index, position before, position after) for every passage
        let mut walk: Vec<(usize, usize, usize)> = Vec::new();
        let mut visited = vec![usize::MAX; m];
        let mut t = 0usize;
        let mut left = false;
        loop {
            let k = t % m;
            let i = self.letters[k].1;
            if i == pos || i + 1 == pos {
                let after = if i == pos { i + 1 } else { i };
                if visited[k] != usize::MAX {
                    // first crossing visited twice: α_0 runs from its first visit to here
                    let first = visited[k];
                    walk.push((k, pos, after));
                    return Ok(Some(self.loop_step(&walk, first)));
                }
                visited[k] = walk.len();
                walk.push((k, pos, after));
                pos = after;
                if pos > 1 {
                    left = true;
                } else if left {
                    // an embedded α closes up within the first lap
                    if t >= m {
                        return Err("embedded arc winds around the closure".into());
                    }
                    return Ok(Some(self.arc_step(&walk)));
                }
            }
            t += 1;
            // every lap passes at least one crossing, and none is passed three times
            if t > m * (m + 2) {
                return Err("walk does not return".into());
            }
        }
    }

    fn arc_step(&self, walk: &[(usize, usize, usize)]) -> (TraceStep, Vec<Option<usize>>) {
        let m = self.letters.len();
        let last = walk.last().unwrap().0;
        // α position at every letter of its span, letters after the span untouched
        let mut newidx: Vec<Option<usize>> = self.letters.iter().map(|&(_, i)| Some(i)).collect();
        let mut hit = vec![false; m];
        for &(k, _, _) in walk {
            hit[k] = true;
        }
        let mut pos = 1;
        for (k, &(_, i)) in self.letters.iter().enumerate().take(last + 1) {
            if hit[k] {
                newidx[k] = None;
                pos = if i == pos { i + 1 } else { i };
            } else if i + 1 < pos {
                newidx[k] = Some(i + 1);
            }
        }
        let id = |k: usize| self.letters[k].0;
        let step = TraceStep {
            case: StepCase::EmbeddedArc,
            alpha: walk.iter().map(|w| id(w.0)).collect(),
            changed: walk.iter().filter(|w| w.2 < w.1).map(|w| id(w.0)).collect(),
            removed: walk.iter().map(|w| id(w.0)).collect(),
        };
        (step, newidx)
    }

    fn loop_step(&self, walk: &[(usize, usize, usize)], first: usize) -> (TraceStep, Vec<Option<usize>>) {
        let m = self.letters.len();
        let c = walk[first].0;
        let lap = &walk[first + 1..walk.len() - 1];
        // α_0 occupies one full lap; record its position at every other letter
        let mut newidx: Vec<Option<usize>> = vec![None; m];
        let mut on_loop = vec![false; m];
        for &(k, _, _) in lap {
            on_loop[k] = true;
        }
        let mut pos = walk[first].2;
        for off in 1..m {
            let k = (c + off) % m;
            let i = self.letters[k].1;
            if on_loop[k] {
                pos = if i == pos { i + 1 } else { i };
            } else if i > pos {
                newidx[k] = Some(i - 1);
            } else {
                newidx[k] = Some(i);
            }
        }
        let id = |k: usize| self.letters[k].0;
        let mut removed: Vec<u32> = lap.iter().map(|w| id(w.0)).collect();
        removed.push(id(c));
        let step = TraceStep {
            case: StepCase::Loop,
            alpha: walk.iter().map(|w| id(w.0)).collect(),
            changed: lap.iter().filter(|w| w.2 < w.1).map(|w| id(w.0)).collect(),
            removed,
        };
        (step, newidx)
    }

    fn apply(&self, case: StepCase, newidx: &[Option<usize>]) -> Result<Tracked, String> {
        let strands = match case {
            StepCase::EmbeddedArc => self.strands,
            StepCase::Loop => self.strands - 1,
        };
        let letters: Vec<(u32, usize)> =
            self.letters.iter().zip(newidx).filter_map(|(&(id, _), n)| n.map(|i| (id, i))).collect();
        let out = Tracked { strands, letters };
        out.check()?;
        Ok(out)
    }

    /// The reduced word must again close up to a positive braid knot diagram.
    fn check(&self) -> Result<(), String> {
        if let Some(&(id, i)) = self.letters.iter().find(|&&(_, i)| i == 0 || i >= self.strands) {
            return Err(format!("crossing {} lands on generator {} of a {}-strand braid", id, i, self.strands));
        }
        let w = self.word();
        if w.component_count() != 1 {
            return Err(format!("reduced word {} does not close to a knot", w));
        }
        Ok(())
    }

    fn word(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|&(_, i)| i as i32).collect() }
    }
}

fn check_input(w: &BraidWord) -> Result<(), BraidError> {
    if !w.is_positive() {
        return Err(BraidError::NotPositive);
    }
    let c = w.component_count();
    if c != 1 {
        return Err(BraidError::NotAKnot(c));
    }
    Ok(())
}

/// A set of g crossings of the closure of a positive braid knot whose change gives the
/// unknot, with the reduction trace that proves it.
pub fn unknotting_set(w: &BraidWord) -> Result<UnknottingCertificate, BraidError> {
    check_input(w)?;
    let mut cur = Tracked::from_word(w);
    let mut steps = Vec::new();
    while let Some((step, newidx)) =
        cur.next_step().map_err(|msg| BraidError::ReplayMismatch { step: steps.len(), msg })?
    {
        cur = cur.apply(step.case, &newidx).map_err(|msg| BraidError::ReplayMismatch { step: steps.len(), msg })?;
        steps.push(step);
    }
    let selected = steps.iter().flat_map(|s| s.changed.iter().copied()).collect();
    Ok(UnknottingCertificate { word: w.clone(), selected, steps })
}

/// Re-executes the trace and returns the final diagram, which has no crossings.
pub fn replay(cert: &UnknottingCertificate) -> Result<Diagram, BraidError> {
    check_input(&cert.word)?;
    let mut cur = Tracked::from_word(&cert.word);
    let mismatch = |step: usize, msg: String| BraidError::ReplayMismatch { step, msg };
    for (s, rec) in cert.steps.iter().enumerate() {
        let (step, newidx) =
            cur.next_step().map_err(|m| mismatch(s, m))?.ok_or_else(|| mismatch(s, "word is already empty".into()))?;
        if step != *rec {
            return Err(mismatch(s, format!("expected {:?}, recomputed {:?}", rec, step)));
        }
        cur = cur.apply(step.case, &newidx).map_err(|m| mismatch(s, m))?;
    }
    if !cur.letters.is_empty() {
        return Err(mismatch(cert.steps.len(), format!("{} crossings left after the trace", cur.letters.len())));
    }
    let selected: Vec<u32> = cert.steps.iter().flat_map(|s| s.changed.iter().copied()).collect();
    if selected != cert.selected {
        return Err(mismatch(cert.steps.len(), "selected crossings disagree with the trace".into()));
    }
    Ok(Diagram::unknot())
}

fn ids(v: &[u32]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn parse_ids(s: &str) -> Result<Vec<u32>, String> {
    if s == "-" {
        return Ok(vec![]);
    }
    s.split(',').map(|t| t.parse::<u32>().map_err(|_| format!("bad crossing id '{}'", t))).collect()
}

impl UnknottingCertificate {
    /// Line-oriented log, one line per recursion step.
    pub fn to_text(&self) -> String {
        let mut out = String::from("unknotting-certificate 1\n");
        out += &format!("word {}\n", self.word);
        for (k, s) in self.steps.iter().enumerate() {
            out += &format!(
                "step {} {} alpha={} changed={} removed={}\n",
                k,
                s.case,
                ids(&s.alpha),
                ids(&s.changed),
                ids(&s.removed)
            );
        }
        out += &format!("selected {}\n", ids(&self.selected));
        out
    }

    pub fn from_text(text: &str) -> Result<Self, BraidError> {
        let err = |line: usize, msg: String| BraidError::Parse(format!("certificate line {}: {}", line + 1, msg));
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        match lines.next() {
            Some((_, l)) if l.trim() == "unknotting-certificate 1" => {}
            _ => return Err(err(0, "missing header".into())),
        }
        let mut word = None;
        let mut steps = Vec::new();
        let mut selected = None;
        for (n, line) in lines {
            let (key, rest) = line.trim().split_once(' ').unwrap_or((line.trim(), ""));
            match key {
                "word" => word = Some(rest.parse::<BraidWord>()?),
                "step" => {
                    let f: Vec<&str> = rest.split_whitespace().collect();
                    if f.len() != 5 {
                        return Err(err(n, "expected 5 fields".into()));
                    }
                    let case = match f[1] {
                        "embedded-arc" => StepCase::EmbeddedArc,
                        "loop" => StepCase::Loop,
                        x => return Err(err(n, format!("unknown case '{}'", x))),
                    };
                    let field = |s: &str, name: &str| -> Result<Vec<u32>, BraidError> {
                        let v = s.strip_prefix(name).ok_or_else(|| err(n, format!("expected {}", name)))?;
                        parse_ids(v).map_err(|m| err(n, m))
                    };
                    steps.push(TraceStep {
                        case,
                        alpha: field(f[2], "alpha=")?,
                        changed: field(f[3], "changed=")?,
                        removed: field(f[4], "removed=")?,
                    });
                }
                "selected" => selected = Some(parse_ids(rest.trim()).map_err(|m| err(n, m))?),
                x => return Err(err(n, format!("unknown record '{}'", x))),
            }
        }
        Ok(UnknottingCertificate {
            word: word.ok_or_else(|| err(0, "missing word".into()))?,
            selected: selected.ok_or_else(|| err(0, "missing selected".into()))?,
            steps,
        })
    }
}
