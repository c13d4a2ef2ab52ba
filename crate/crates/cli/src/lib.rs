//! Command-line front end: the pretheory file format, command dispatch and
//! reports.

pub mod dsl;
pub mod experiments;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use lawkit_core::models::{carriers, count_models};
use lawkit_core::pretheory::{congruence_closure_with, hom_classes, ClosureOptions, Pretheory, DEFAULT_BOUND};
use lawkit_core::theorycheck::{complete_to_theory, is_theory, theories_isomorphic_bounded, IsoOptions, IsoStatus, TheoryStatus, DEFAULT_DEPTH};
use lawkit_core::util::Budget;

use experiments::Experiment;
use report::{Report, EXIT_FAIL, EXIT_INPUT, EXIT_PASS, EXIT_UNKNOWN, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(name = "lawkit", version, about = "Bounded checks for finite pretheories and computable monads")]
pub struct Cli {
    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide the theory condition at a word-length bound.
    CheckTheory {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Count concrete models on every carrier with at most SIZE elements per component.
    Models {
        file: PathBuf,
        #[arg(long)]
        size: usize,
    },
    /// List the hom classes from A to B.
    Hom {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Complete to a theory through truncated free models.
    Complete {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
    },
    /// Compare the completed theories of two presentations.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
    /// Run a bundled experiment.
    Experiment { name: Experiment },
    /// Show a bundled presentation.
    Bundled {
        name: String,
        /// Print it in the file format.
        #[arg(long)]
        emit: bool,
    },
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(code: i32, msg: String) -> Self {
        Outcome { stdout: String::new(), stderr: msg, code }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::error(code, text) } else { Outcome { stdout: text, stderr: String::new(), code } };
        }
    };
    if let Command::Bundled { name, emit: true } = &cli.command {
        return match Pretheory::bundled(name) {
            Ok(p) => Outcome { stdout: dsl::emit(&p), stderr: String::new(), code: EXIT_PASS },
            Err(e) => Outcome::error(EXIT_INPUT, format!("error: {e}\n")),
        };
    }
    match dispatch(&cli.command) {
        Ok(r) => Outcome { stdout: r.render(cli.json), stderr: String::new(), code: r.exit },
        Err(msg) => Outcome::error(EXIT_INPUT, format!("error: {msg}\n")),
    }
}

fn load(path: &Path) -> Result<Pretheory, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    dsl::parse(&text).map(|f| f.pretheory).map_err(|e| format!("{}:{e}", path.display()))
}

fn arity(p: &Pretheory, s: &str) -> Result<usize, String> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    let a: usize = t.parse().map_err(|_| format!("`{s}` is not an arity"))?;
    if !p.family.is_object(a) {
        return Err(format!("{} has no arity {a}", p.family.name()));
    }
    Ok(a)
}

#[derive(Serialize)]
struct CarrierCount {
    sizes: Vec<usize>,
    edges: Vec<(usize, usize)>,
    models: Option<usize>,
}

fn dispatch(cmd: &Command) -> Result<Report, String> {
    match cmd {
        Command::CheckTheory { file, bound } => {
            let p = load(file)?;
            let v = is_theory(&p, *bound);
            let exit = match v.status {
                TheoryStatus::Theory => EXIT_PASS,
                TheoryStatus::NotTheory => EXIT_FAIL,
                TheoryStatus::UnknownAtBound => EXIT_UNKNOWN,
            };
            let mut r = Report::new("check-theory", v.status.to_string(), exit).bound(*bound);
            r = r.line(format!("passed targets: {:?}", v.passed));
            if let Some(w) = &v.witness {
                r = r.line(format!(
                    "witness: {:?} at target {} over {}: ({}){}",
                    w.kind,
                    p.family.arity_label(w.target),
                    p.family.arity_label(w.apex),
                    w.components.join(", "),
                    if w.certified { ", certified" } else { "" }
                ));
            }
            if !v.incomplete.is_empty() {
                r = r.line(format!("incomplete hom tables: {:?}", v.incomplete));
            }
            Ok(r.data(&v))
        }
        Command::Models { file, size } => {
            let p = load(file)?;
            let mut rows = Vec::new();
            let mut complete = true;
            for x in carriers(p.family.shape(), *size) {
                let n = count_models(&p, &x, &Budget::from_env()).ok();
                complete &= n.is_some();
                let edges = if x.num_components() > 1 { x.edge_list() } else { Vec::new() };
                rows.push(CarrierCount { sizes: x.sizes().to_vec(), edges, models: n });
            }
            let exit = if complete { EXIT_PASS } else { EXIT_UNKNOWN };
            let text = rows.iter().map(|c| {
                let shown = c.models.map_or("budget exceeded".to_string(), |n| n.to_string());
                if c.sizes.len() > 1 {
                    format!("{} vertices, edges {:?}: {shown}", c.sizes[0], c.edges)
                } else {
                    format!("{} elements: {shown}", c.sizes[0])
                }
            });
            Ok(Report::new("models", if complete { "complete" } else { "partial" }, exit).exact(complete).lines(text.collect::<Vec<_>>()).data(&rows))
        }
        Command::Hom { file, a, b, bound } => {
            let p = load(file)?;
            let (a, b) = (arity(&p, a)?, arity(&p, b)?);
            let table = congruence_closure_with(&p, &ClosureOptions::new(*bound).with_arities(&[a, b]));
            let classes: Vec<String> = hom_classes(&table, a, b).iter().map(|w| p.show(w)).collect();
            let complete = table.is_complete(a, b);
            let exit = if complete { EXIT_PASS } else { EXIT_UNKNOWN };
            let mut r = Report::new("hom", format!("{} classes", classes.len()), exit).bound(*bound).exact(complete);
            r = r.lines(classes.iter().cloned());
            Ok(r.data(serde_json::json!({ "src": a, "dst": b, "classes": classes })))
        }
        Command::Complete { file, bound, depth } => {
            let p = load(file)?;
            let t = complete_to_theory(&p, *bound, *depth).map_err(|e| e.to_string())?;
            let v = t.verdict();
            let s = t.summary();
            let exit = if s.exact { EXIT_PASS } else { EXIT_UNKNOWN };
            let lines = s.homs.iter().map(|(a, b, n)| format!("hom({}, {}) = {n}", p.family.arity_label(*a), p.family.arity_label(*b)));
            Ok(Report::new("complete", v.status.to_string(), exit)
                .bound(*bound)
                .depth(*depth)
                .exact(s.exact)
                .lines(lines.collect::<Vec<_>>())
                .data(serde_json::json!({ "table": s, "verdict": v })))
        }
        Command::Iso { file1, file2, depth, max_arity } => {
            let (p1, p2) = (load(file1)?, load(file2)?);
            let v = theories_isomorphic_bounded(&p1, &p2, &IsoOptions::new(*depth, *max_arity)).map_err(|e| e.to_string())?;
            let exit = match v.status {
                IsoStatus::Isomorphic => EXIT_PASS,
                IsoStatus::NotIsomorphic | IsoStatus::Rejected => EXIT_FAIL,
                IsoStatus::UnknownAtBound => EXIT_UNKNOWN,
            };
            let mut r = Report::new("iso", v.status.to_string(), exit).depth(*depth);
            r = r.line(format!("model census: {:?} vs {:?}", v.census.0, v.census.1));
            if !v.translation.is_empty() {
                let t: Vec<String> = v.translation.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
                r = r.line(format!("translation: {}", t.join(", ")));
            }
            Ok(r.data(&v))
        }
        Command::Experiment { name } => experiments::run(*name),
        Command::Bundled { name, .. } => {
            let p = Pretheory::bundled(name).map_err(|e| e.to_string())?;
            let gens = p.generators.iter().map(|g| format!("{} : {} -> {}", g.name, p.family.arity_label(g.src), p.family.arity_label(g.dst)));
            Ok(Report::new("bundled", name.clone(), EXIT_PASS)
                .line(format!("base {}; {} generators, {} equations", p.family.name(), p.generators.len(), p.equations.len()))
                .lines(gens.collect::<Vec<_>>())
                .data(serde_json::json!({ "name": name, "family": p.family.name(), "generators": p.generators.len(), "equations": p.equations.len() })))
        }
    }
}
