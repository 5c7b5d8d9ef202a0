//! `gordian` command-line front end.
//!
//! Exit codes: 0 success, 1 a negative mathematical answer (documented per command),
//! 2 failure to compute, 3 search interrupted with a resumable checkpoint.

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gordian::algebra::textfmt::{format_int_matrix, parse_int_matrix};
use gordian::algebra::{CycloElement, IntMatrix};
use gordian::algebraic::{d1_certificate, k11a361_certificate, verify_certificate, AlgebraicUnknottingCertificate};
use gordian::braid::{replay, unknotting_set, BraidWord};
use gordian::catalog::{bundled_catalog, fibered_positive_candidates, ingest_catalog_report};
use gordian::diagram::{genus_positive, parse_diagram, seifert_matrix, Diagram};
use gordian::error::CertificateError;
use gordian::family::{build_family_diagram, bundled_tangle, family_report};
use gordian::invariants::{
    alexander, branched_homology, determinant, gordian_lower_bound, n_pqe, signature, two_trefoil_report, wendt_bound,
};
use gordian::knots::{named_diagram, named_matrix};
use gordian::search::{search_with, Evaluation, SearchOptions, SearchOutcome, SearchTask};

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "gordian", version, about = "Knot invariants, crossing-change bounds and unknotting certificates")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Alexander polynomial, signature, determinant and branched-cover homology of a knot.
    Invariants {
        /// Bundled name (K11n183, T25, ...) or a file holding PD code or a Seifert matrix.
        knot: String,
    },
    /// Lower bound |n_pqe(K1) - n_pqe(K2)| for the Gordian distance.
    GordianBound {
        #[arg(long, default_value_t = 3)]
        p: u32,
        /// Element of R_p, e.g. 2 or 1+t.
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
        k1: String,
        k2: String,
    },
    /// Unknotting set of a positive braid knot, e.g. "4: 1 2 3 1 2 3".
    UnknotBraid {
        word: String,
        /// Where to write the certificate; printed otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for crossing subsets with trivial Alexander polynomial.
    /// Exit 0 if a witness was found, 1 if the exhaustion found none.
    Search {
        #[arg(long)]
        diagram: String,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: bool,
        /// Stop after this many shards (the checkpoint stays resumable).
        #[arg(long)]
        stop_after: Option<usize>,
        #[arg(long)]
        shard_size: Option<u64>,
        /// Recompute every Seifert matrix from scratch.
        #[arg(long)]
        naive: bool,
        /// Where to write the exhaustion certificate.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay an algebraic unknotting certificate (a file, or the bundled k11a361 / d1).
    /// Exit 1 if the certificate is rejected.
    VerifyUa { cert: String },
    /// The family D_n. Exit 1 if a computed invariant disagrees with the prediction.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Emit::Report)]
        emit: Emit,
    },
    /// Validate a knot table and list fibered positive knots with a given unknotting number.
    /// Exit 1 if some rows were rejected.
    Catalog {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        u_bound: Option<u32>,
    },
    /// Plumbing of two positive trefoils along an arc of class (a, b).
    TwoTrefoil {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Diagram,
    Report,
}

/// Output of one command: stamped inputs, ordered fields and the exit code.
struct Report {
    command: &'static str,
    inputs: Vec<(String, String)>,
    fields: Vec<(String, String)>,
    /// Raw text appended in text format (PD code, certificates).
    body: Option<String>,
    code: u8,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report { command, inputs: Vec::new(), fields: Vec::new(), body: None, code: 0 }
    }

    fn input(&mut self, label: &str, bytes: &[u8]) {
        self.inputs.push((label.to_string(), gordian::sha256_hex(bytes)));
    }

    fn put(&mut self, k: &str, v: impl ToString) {
        self.fields.push((k.to_string(), v.to_string()));
    }

    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Text => {
                s += &format!("# gordian {} {}\n", gordian::VERSION, self.command);
                for (l, h) in &self.inputs {
                    s += &format!("# input {} sha256 {}\n", l, h);
                }
                for (k, v) in &self.fields {
                    s += &format!("{}: {}\n", k, v);
                }
                if let Some(b) = &self.body {
                    s += b;
                    if !b.ends_with('\n') {
                        s.push('\n');
                    }
                }
            }
            Format::Machine => {
                s += "gordian-machine 1\n";
                s += &format!("version {}\ncommand {}\n", gordian::VERSION, self.command);
                for (l, h) in &self.inputs {
                    s += &format!("input {} {}\n", l, h);
                }
                for (k, v) in &self.fields {
                    s += &format!("{}\t{}\n", k, v);
                }
                if let Some(b) = &self.body {
                    s += &format!("body-lines\t{}\n", b.lines().count());
                    s += b;
                    if !b.ends_with('\n') {
                        s.push('\n');
                    }
                }
            }
        }
        s
    }
}

fn inline_matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// A knot given by name or file: its Seifert matrix, a diagram if there is one, and the bytes hashed.
struct KnotInput {
    label: String,
    matrix: IntMatrix,
    diagram: Option<Diagram>,
    bytes: Vec<u8>,
}

fn load_knot(spec: &str) -> Res<KnotInput> {
    if let Some(m) = named_matrix(spec) {
        let diagram = named_diagram(spec);
        let bytes = match &diagram {
            Some(d) => d.to_pd_string().into_bytes(),
            None => format_int_matrix(&m).into_bytes(),
        };
        return Ok(KnotInput { label: spec.to_string(), matrix: m, diagram, bytes });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(format!("'{}' is neither a bundled knot nor a file", spec).into());
    }
    let bytes = fs::read(path)?;
    let text = String::from_utf8(bytes.clone())?;
    let content: String = text.lines().filter(|l| !l.trim_start().starts_with('#')).collect::<Vec<_>>().join("\n");
    if content.contains('[') {
        // a report from `family --emit diagram` carries key: value lines before the code
        let start = content.find("PD[").or_else(|| content.find("X[")).unwrap_or(0);
        let d = parse_diagram(content[start..].trim())?;
        let m = seifert_matrix(&d)?;
        Ok(KnotInput { label: spec.to_string(), matrix: m, diagram: Some(d), bytes })
    } else {
        let m = parse_int_matrix(&content)?;
        Ok(KnotInput { label: spec.to_string(), matrix: m, diagram: None, bytes })
    }
}

fn load_diagram(spec: &str) -> Res<(Diagram, Vec<u8>)> {
    let k = load_knot(spec)?;
    let d = k.diagram.ok_or_else(|| format!("'{}' has no diagram", spec))?;
    Ok((d, k.bytes))
}

fn invariants(knot: &str) -> Res<Report> {
    let k = load_knot(knot)?;
    let mut r = Report::new("invariants");
    r.input(&k.label, &k.bytes);
    let v = &k.matrix;
    if let Some(d) = &k.diagram {
        r.put("crossings", d.len());
        r.put("positive", d.is_positive());
        if d.is_positive() {
            r.put("genus", genus_positive(d)?);
        }
    }
    r.put("seifert-size", v.rows());
    r.put("alexander", alexander(v)?);
    r.put("determinant", determinant(v));
    r.put("signature", signature(v));
    let h2 = branched_homology(v, 2)?;
    r.put("H1(Sigma2)", h2.abelianization.abelian_string());
    let h3 = branched_homology(v, 3)?;
    if let Some(m) = &h3.module {
        r.put("H1(Sigma3;R3)", m.module_string());
    }
    r.put("H1(Sigma3)", h3.abelianization.abelian_string());
    r.put("dim H1(Sigma3;F2)", h3.dim_mod(2));
    Ok(r)
}

fn gordian_bound(p: u32, q: &str, e: u32, k1: &str, k2: &str) -> Res<Report> {
    let a = load_knot(k1)?;
    let b = load_knot(k2)?;
    let q = CycloElement::parse_with_p(q, p)?;
    let mut r = Report::new("gordian-bound");
    r.input(&a.label, &a.bytes);
    r.input(&b.label, &b.bytes);
    r.put("p", p);
    r.put("q", gordian::algebra::snf::short_cyclo(&q));
    r.put("e", e);
    r.put(&format!("n({})", a.label), n_pqe(&a.matrix, p, &q, e)?);
    r.put(&format!("n({})", b.label), n_pqe(&b.matrix, p, &q, e)?);
    r.put("bound", gordian_lower_bound(&a.matrix, &b.matrix, p, &q, e)?);
    if let Some(qi) = q
        .coords()
        .first()
        .and_then(|c| u64::try_from(c).ok())
        .filter(|_| q.coords()[1..].iter().all(|c| c == &0.into()))
    {
        if qi > 1 {
            r.put(&format!("wendt-bound(F{})", qi), wendt_bound(&a.matrix, &b.matrix, p, qi)?);
        }
    }
    Ok(r)
}

fn unknot_braid(word: &str, out: Option<&Path>) -> Res<Report> {
    let w: BraidWord = word.parse()?;
    let cert = unknotting_set(&w)?;
    let d = w.closure()?;
    let changed = d.change_crossings(&cert.selected)?;
    let delta = alexander(&seifert_matrix(&changed)?)?;
    let after = replay(&cert)?;
    let mut r = Report::new("unknot-braid");
    r.input("word", word.as_bytes());
    r.put("word", &w);
    r.put("crossings", d.len());
    r.put("genus", genus_positive(&d)?);
    r.put("size", cert.selected.len());
    r.put("positions", cert.selected.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    r.put("replay-crossings", after.len());
    r.put("alexander-after", delta);
    let text = cert.to_text();
    match out {
        Some(p) => {
            fs::write(p, &text)?;
            r.put("certificate", p.display());
        }
        None => r.body = Some(text),
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn run_search(
    diagram: &str,
    kmax: usize,
    workers: usize,
    checkpoint: Option<PathBuf>,
    resume: bool,
    stop_after: Option<usize>,
    shard_size: Option<u64>,
    naive: bool,
    out: Option<&Path>,
) -> Res<Report> {
    let (d, bytes) = load_diagram(diagram)?;
    let mut task = SearchTask::new(d, kmax);
    if let Some(s) = shard_size {
        task = task.with_shard_size(s);
    }
    let opts = SearchOptions {
        workers,
        checkpoint: checkpoint.clone(),
        resume,
        stop_after,
        mode: naive.then_some(Evaluation::Naive),
    };
    let mut r = Report::new("search");
    r.input(diagram, &bytes);
    r.put("diagram-checksum", task.diagram.checksum());
    r.put("crossings", task.diagram.len());
    r.put("kmax", task.k_max_effective());
    match search_with(&task, &opts)? {
        SearchOutcome::Interrupted { done, total } => {
            r.put("status", "interrupted");
            r.put("shards", format!("{}/{}", done, total));
            if let Some(c) = &checkpoint {
                r.put("checkpoint", c.display());
            }
            r.code = 3;
        }
        SearchOutcome::Complete(cert) => {
            r.put("status", "complete");
            r.put("examined", cert.examined.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            r.put("examined-total", cert.examined_total());
            r.put("witnesses", cert.witnesses.len());
            r.put("min-witness-size", cert.min_witness_size().map_or("none".to_string(), |k| k.to_string()));
            if let Some(w) = cert.witnesses.first() {
                r.put("first-witness", w.ids.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            }
            r.put("shards-resumed", cert.accounting.shards_resumed);
            if let Some(p) = out {
                fs::write(p, cert.to_text())?;
                r.put("certificate", p.display());
            }
            if cert.witnesses.is_empty() {
                r.code = 1;
            }
        }
    }
    Ok(r)
}

fn verify_ua(spec: &str) -> Res<Report> {
    let (cert, bytes) = match spec.to_ascii_lowercase().as_str() {
        "k11a361" => {
            let c = k11a361_certificate();
            let t = c.to_text();
            (c, t.into_bytes())
        }
        "d1" => {
            let c = d1_certificate();
            let t = c.to_text();
            (c, t.into_bytes())
        }
        _ => {
            let bytes = fs::read(spec)?;
            let c = AlgebraicUnknottingCertificate::from_text(std::str::from_utf8(&bytes)?)?;
            (c, bytes)
        }
    };
    let mut r = Report::new("verify-ua");
    r.input(spec, &bytes);
    r.put("start-size", cert.start.rows());
    r.put("steps", cert.steps.len());
    match verify_certificate(&cert) {
        Ok(v) => {
            r.put("status", "valid");
            r.put("ua-upper-bound", v.ua_upper_bound);
            r.put("final", inline_matrix(&v.final_matrix));
            r.put("final-alexander", alexander(&v.final_matrix)?);
        }
        Err(
            e @ (CertificateError::ReplayError { .. }
            | CertificateError::PatternMismatch(_)
            | CertificateError::NontrivialResult(_)),
        ) => {
            r.put("status", "rejected");
            r.put("reason", e);
            r.code = 1;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn family(n: usize, emit: Emit) -> Res<Report> {
    if n == 0 {
        return Err("the family starts at n = 1".into());
    }
    let t = bundled_tangle();
    let mut r = Report::new("family");
    r.input("tangle", include_str!("../../core/data/tangle_t.txt").as_bytes());
    r.put("n", n);
    match emit {
        Emit::Diagram => {
            let d = build_family_diagram(&t, n);
            r.put("crossings", d.len());
            r.put("checksum", d.checksum());
            r.body = Some(d.to_pd_string());
        }
        Emit::Report => {
            let f = family_report(&t, n)?;
            r.put("crossings", f.crossings);
            r.put("genus", f.genus);
            r.put("expected-genus", f.expected_genus);
            r.put("H1(Sigma2)", f.double_cover.abelian_string());
            r.put("expected-H1(Sigma2)", f.expected_double_cover.abelian_string());
            r.put("determinant", &f.determinant);
            r.put("generators", f.generators);
            r.put("unknotting-set-size", f.unknotting_set.len());
            r.put("unknotting-set", f.unknotting_set.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            r.put("alexander-after-set", &f.delta_after_set);
            r.put("consistent", f.consistent());
            if !f.consistent() {
                r.code = 1;
            }
        }
    }
    Ok(r)
}

fn catalog(file: Option<&Path>, u: Option<u32>) -> Res<Report> {
    let mut r = Report::new("catalog");
    let text = match file {
        Some(p) => fs::read_to_string(p)?,
        None => include_str!("../../core/data/catalog.csv").to_string(),
    };
    r.input(&file.map_or("bundled".to_string(), |p| p.display().to_string()), text.as_bytes());
    let ing = if file.is_some() {
        ingest_catalog_report(&text)?
    } else {
        gordian::catalog::Ingested { entries: bundled_catalog(), rejected: vec![] }
    };
    r.put("entries", ing.entries.len());
    r.put("rejected", ing.rejected.len());
    for (line, msg) in &ing.rejected {
        r.put(&format!("rejected-line-{}", line), msg);
    }
    let cross = ing.entries.iter().filter(|e| e.pd.is_some() && e.matrix.is_some()).count();
    r.put("cross-validated", cross);
    if let Some(u) = u {
        let c = fibered_positive_candidates(&ing.entries, u);
        r.put("u-bound", u);
        r.put("candidates", c.iter().map(|e| e.name.as_str()).collect::<Vec<_>>().join(" "));
    }
    if !ing.rejected.is_empty() {
        r.code = 1;
    }
    Ok(r)
}

fn two_trefoil(a: i64, b: i64) -> Res<Report> {
    let t = two_trefoil_report(a, b)?;
    let mut r = Report::new("two-trefoil");
    r.input("pair", format!("{} {}", a, b).as_bytes());
    r.put("a", a);
    r.put("b", b);
    r.put("d", t.d);
    r.put("class", t.tag);
    r.put("lt-signature", t.lt_signature);
    r.put("min-abs-eigenvalue", format!("{:.6e}", t.min_abs_eigenvalue));
    r.put("margin", format!("{:.1e}", t.margin));
    r.put("det-sign-agrees", t.det_sign_agrees);
    Ok(r)
}

fn dispatch(cli: &Cli) -> Res<Report> {
    match &cli.cmd {
        Cmd::Invariants { knot } => invariants(knot),
        Cmd::GordianBound { p, q, e, k1, k2 } => gordian_bound(*p, q, *e, k1, k2),
        Cmd::UnknotBraid { word, out } => unknot_braid(word, out.as_deref()),
        Cmd::Search { diagram, kmax, workers, checkpoint, resume, stop_after, shard_size, naive, out } => run_search(
            diagram,
            *kmax,
            *workers,
            checkpoint.clone(),
            *resume,
            *stop_after,
            *shard_size,
            *naive,
            out.as_deref(),
        ),
        Cmd::VerifyUa { cert } => verify_ua(cert),
        Cmd::Family { n, emit } => family(*n, *emit),
        Cmd::Catalog { file, u_bound } => catalog(file.as_deref(), *u_bound),
        Cmd::TwoTrefoil { a, b } => two_trefoil(*a, *b),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(r) => {
            print!("{}", r.render(cli.format));
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
