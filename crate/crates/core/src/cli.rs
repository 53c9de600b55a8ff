//! The `starsemi` command line: argument parsing, dispatch and output
//! formatting. All mathematics lives in the other modules.
//!
//! Exit codes: 0 success, 1 a bound is violated (or output could not be
//! written), 2 malformed input, 3 invalid semigroup, 4 budget exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{classify_up_to, verify_bounds_with, BoundReport, BoundStatus, VerifyConfig, CSV_HEADER};
use crate::enumeration::{dedekind, enumerate_star_operations};
use crate::error::{LimitExceeded, SemigroupError};
use crate::semigroup::{NumericalSemigroup, SemigroupSummary};
use crate::star::StarContext;
use crate::Budget;

#[derive(Parser, Debug)]
#[command(name = "starsemi", version, about = "Star operations on numerical semigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; not every command supports every format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Largest genus processed (also the range of `verify-bounds` sweeps).
    #[arg(long, global = true)]
    pub max_genus: Option<u32>,
    /// Largest number of normalized ideals `|F₀(S)|` accepted.
    #[arg(long, global = true)]
    pub budget_f0: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants, ideal counts and the Q_a decomposition.
    Analyze { semigroup: String },
    /// |Star(S)|.
    Count { semigroup: String },
    /// Every star operation, with its antichain A(★).
    Census { semigroup: String },
    /// Nonsymmetric semigroups with at most N star operations.
    Search { n: u32 },
    /// Checks the lower bounds on one semigroup, or on every nonsymmetric
    /// semigroup of genus at most --max-genus.
    VerifyBounds { semigroup: Option<String> },
    /// The star order on the nondivisorial ideals (Hasse diagram).
    Poset { semigroup: String },
    /// The Dedekind number D(n).
    Dedekind { n: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Dot,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("invalid semigroup: {0}")]
    Semigroup(SemigroupError),
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::Parse(m) => CliError::Parse(m),
            other => CliError::Semigroup(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Semigroup(_) => 3,
            CliError::Limit(_) => 4,
        }
    }
}

/// What a successful run produced.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    /// Some bound was found violated.
    pub violation: bool,
}

/// Accepts `<4,5,6,7>`, a bare list `4,5,6,7`, or `gaps:[1,2,3]`.
pub fn parse_semigroup(text: &str) -> Result<NumericalSemigroup, CliError> {
    let text = text.trim();
    let normalized = if text.starts_with(|c: char| c.is_ascii_digit()) {
        format!("<{text}>")
    } else {
        text.to_string()
    };
    Ok(normalized.parse()?)
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Parse(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Analysis {
    semigroup: SemigroupSummary,
    type_number: usize,
    symmetric: bool,
    pseudosymmetric: bool,
    f0_size: usize,
    g0_size: usize,
    /// `a ↦ |Q_a|` over the gaps, keyed by `a`.
    q_sizes: BTreeMap<u32, usize>,
}

fn analyze(s: &NumericalSemigroup, budget: &Budget, format: Format) -> Result<String, CliError> {
    let ctx = StarContext::new(s, budget)?;
    let a = Analysis {
        semigroup: s.summary(),
        type_number: s.type_number(),
        symmetric: s.is_symmetric(),
        pseudosymmetric: s.is_pseudosymmetric(),
        f0_size: ctx.space().len(),
        g0_size: ctx.poset().len(),
        q_sizes: s.gaps().into_iter().map(|a| (a, ctx.q_set(a).len())).collect(),
    };
    match format {
        Format::Json => Ok(json(&a)),
        Format::Text => {
            let list = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut out = String::new();
            let _ = writeln!(out, "semigroup        {s}");
            let _ = writeln!(out, "gaps             {}", list(&a.semigroup.gaps));
            let _ = writeln!(out, "frobenius        {}", a.semigroup.frobenius);
            let _ = writeln!(out, "genus            {}", a.semigroup.genus);
            let _ = writeln!(out, "multiplicity     {}", a.semigroup.multiplicity);
            let _ = writeln!(out, "type             {} ({})", a.type_number, list(&a.semigroup.type_set));
            let _ = writeln!(out, "symmetric        {}", yes(a.symmetric));
            let _ = writeln!(out, "pseudosymmetric  {}", yes(a.pseudosymmetric));
            let _ = writeln!(out, "|F0|             {}", a.f0_size);
            let _ = writeln!(out, "|G0|             {}", a.g0_size);
            for (q, n) in a.q_sizes.iter().rev().filter(|(_, &n)| n > 0) {
                let _ = writeln!(out, "|Q_{q}|{:width$}{n}", "", width = 13 - q.to_string().len());
            }
            Ok(out)
        }
        other => Err(unsupported("analyze", other)),
    }
}

fn count(s: &NumericalSemigroup, budget: &Budget, format: Format) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Count {
        semigroup: SemigroupSummary,
        star_count: u128,
    }
    let ctx = StarContext::new(s, budget)?;
    let n = crate::counting::star_count(&ctx, budget)?;
    match format {
        Format::Json => Ok(json(&Count {
            semigroup: s.summary(),
            star_count: n,
        })),
        Format::Csv => Ok(format!("semigroup,star_count\n\"{s}\",{n}\n")),
        Format::Text => Ok(format!("{n}\n")),
        other => Err(unsupported("count", other)),
    }
}

fn census(s: &NumericalSemigroup, budget: &Budget, format: Format) -> Result<String, CliError> {
    let ctx = StarContext::new(s, budget)?;
    let c = enumerate_star_operations(&ctx, budget)?;
    let label = |k: &u32| ctx.space().ideal(*k).label(s);
    match format {
        Format::Json => Ok(json(&c.to_json(&ctx))),
        Format::Csv => {
            let mut out = String::from("antichain,closed_count,qm\n");
            for op in &c.operations {
                let a: Vec<String> = op.antichain().iter().map(label).collect();
                let _ = writeln!(out, "\"{}\",{},{}", a.join(";"), op.closed_count(), ctx.qm(op));
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("{s}: {} star operations\n", c.count);
            for op in &c.operations {
                let a: Vec<String> = op.antichain().iter().map(label).collect();
                let _ = writeln!(
                    out,
                    "  {{{}}}  closed={} qm={}",
                    a.join(", "),
                    op.closed_count(),
                    ctx.qm(op)
                );
            }
            Ok(out)
        }
        other => Err(unsupported("census", other)),
    }
}

fn search(n: u32, budget: &Budget, format: Format) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct Row {
        semigroup: String,
        genus: u32,
        multiplicity: u32,
        type_number: usize,
        star_count: u64,
    }
    let rows: Vec<Row> = classify_up_to(n, budget)?
        .into_iter()
        .map(|(s, c)| Row {
            semigroup: s.to_string(),
            genus: s.genus(),
            multiplicity: s.multiplicity(),
            type_number: s.type_number(),
            star_count: c,
        })
        .collect();
    match format {
        Format::Json => Ok(json(&rows)),
        Format::Csv => {
            let mut out = String::from("semigroup,genus,mult,type,star_count\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "\"{}\",{},{},{},{}",
                    r.semigroup, r.genus, r.multiplicity, r.type_number, r.star_count
                );
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = String::new();
            for r in &rows {
                let _ = writeln!(out, "{:<16} {}", r.semigroup, r.star_count);
            }
            Ok(out)
        }
        other => Err(unsupported("search", other)),
    }
}

fn verify(targets: &[NumericalSemigroup], budget: &Budget, format: Format) -> Result<(String, bool), CliError> {
    let cfg = VerifyConfig::default();
    let mut reports: Vec<BoundReport> = Vec::with_capacity(targets.len());
    for s in targets {
        let ctx = StarContext::new(s, budget)?;
        reports.push(verify_bounds_with(&ctx, &cfg));
    }
    let violation = reports.iter().any(|r| r.violations().next().is_some());
    let text = match format {
        Format::Json if targets.len() == 1 => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in &reports {
                for row in r.csv_rows() {
                    let _ = writeln!(out, "{row}");
                }
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                let exact = r.exact.map_or_else(|| format!("≥ {}", r.enumerated), |n| n.to_string());
                let _ = writeln!(out, "{}  |Star| = {exact}", r.semigroup);
                for b in &r.bounds {
                    let status = match b.status {
                        BoundStatus::Satisfied => "satisfied",
                        BoundStatus::Violated => "VIOLATED",
                        BoundStatus::Undetermined => "undetermined",
                        BoundStatus::NotApplicable => "n/a",
                    };
                    let value = b.value.map_or("?".to_string(), |v| v.to_string());
                    let observed = b.observed.map_or("-".to_string(), |o| {
                        if o.exact {
                            o.lower.to_string()
                        } else {
                            format!("≥ {}", o.lower)
                        }
                    });
                    let _ = writeln!(out, "  {:<28} {value:>16}  observed {observed:<16} {status}", b.name);
                }
            }
            let total: usize = reports.iter().map(|r| r.bounds.len()).sum();
            let bad: usize = reports.iter().map(|r| r.violations().count()).sum();
            let open: usize = reports.iter().map(|r| r.undetermined().count()).sum();
            let _ = writeln!(
                out,
                "{} semigroups, {total} bounds, {bad} violated, {open} undetermined",
                reports.len()
            );
            out
        }
        other => return Err(unsupported("verify-bounds", other)),
    };
    Ok((text, violation))
}

fn poset(s: &NumericalSemigroup, budget: &Budget, format: Format) -> Result<String, CliError> {
    #[derive(Serialize)]
    struct PosetJson {
        semigroup: SemigroupSummary,
        elements: Vec<String>,
        /// Cover pairs `[upper, lower]`.
        hasse: Vec<[String; 2]>,
    }
    let ctx = StarContext::new(s, budget)?;
    let p = ctx.poset();
    let labels: Vec<String> = p.elements().iter().map(|i| i.label(s)).collect();
    let edges = p.hasse_edges();
    match format {
        Format::Dot => Ok(p.to_dot(s)),
        Format::Json => Ok(json(&PosetJson {
            semigroup: s.summary(),
            elements: labels.clone(),
            hasse: edges.iter().map(|&(h, l)| [labels[h].clone(), labels[l].clone()]).collect(),
        })),
        Format::Text => {
            let mut out = format!("G0({s}): {} ideals\n", labels.len());
            for (h, l) in edges {
                let _ = writeln!(out, "  {} > {}", labels[h], labels[l]);
            }
            Ok(out)
        }
        other => Err(unsupported("poset", other)),
    }
}

/// Runs one parsed command and returns its output.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let mut budget = Budget::from_env();
    if let Some(g) = cli.max_genus {
        budget.max_genus = g;
    }
    if let Some(f) = cli.budget_f0 {
        if f == 0 {
            return Err(CliError::Parse("--budget-f0 must be positive".into()));
        }
        budget.max_ideals = f;
    }
    let default_format = match cli.command {
        Command::Poset { .. } => Format::Dot,
        _ => Format::Text,
    };
    let format = cli.format.unwrap_or(default_format);
    let plain = |text| Output { text, violation: false };
    Ok(match &cli.command {
        Command::Analyze { semigroup } => plain(analyze(&parse_semigroup(semigroup)?, &budget, format)?),
        Command::Count { semigroup } => plain(count(&parse_semigroup(semigroup)?, &budget, format)?),
        Command::Census { semigroup } => plain(census(&parse_semigroup(semigroup)?, &budget, format)?),
        Command::Search { n } => plain(search(*n, &budget, format)?),
        Command::Poset { semigroup } => plain(poset(&parse_semigroup(semigroup)?, &budget, format)?),
        Command::Dedekind { n } => {
            let d = dedekind(*n)?;
            plain(match format {
                Format::Json => format!("{{\"n\":{n},\"dedekind\":{d}}}\n"),
                Format::Text => format!("{d}\n"),
                other => return Err(unsupported("dedekind", other)),
            })
        }
        Command::VerifyBounds { semigroup } => {
            let targets = match semigroup {
                Some(text) => vec![parse_semigroup(text)?],
                None => {
                    let g = cli.max_genus.ok_or_else(|| {
                        CliError::Parse("verify-bounds needs a semigroup or --max-genus".into())
                    })?;
                    crate::enumerate_semigroups(g).filter(|s| !s.is_symmetric()).collect()
                }
            };
            let (text, violation) = verify(&targets, &budget, format)?;
            Output { text, violation }
        }
    })
}

/// Entry point of the binary: parses `args`, runs, prints, and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return 2;
        }
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = run(&cli).and_then(|out| {
        match &cli.output {
            Some(path) => std::fs::write(path, &out.text)?,
            None => print!("{}", out.text),
        }
        Ok(out)
    });
    match result {
        Ok(out) if out.violation => 1,
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
