//! Command-line front end: `classify`, `invariants`, `quotients`, `burgers`,
//! `equations` and `verify`.
//!
//! Exit codes: 0 success, 1 check failure or bad input, 2 internal defect.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::building::{surface_invariants, BuildingDataNumeric, SurfaceInvariants};
use crate::classify::{
    enumerate, family_table, l_matches_d, lookup, FamilyDescriptor, SearchConfig,
};
use crate::equations::{build_model, eliminate, render};
use crate::error::{Error, Result};
use crate::group::bit_string;
use crate::json::{self, OutputFormat};
use crate::quotient::{
    all_quotient_reports, burger_check, k3_towers, subgroup_name, BurgerTriple, K3Tower,
    QuotientReport, SurfaceKind,
};
use crate::verify::{self, VerifyOptions};

#[derive(Debug, Parser)]
#[command(
    name = "kdouble",
    version,
    about = "Abelian covers of the plane with p_g = 3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for classify and verify.
    #[arg(long, global = true, env = "KDOUBLE_JOBS")]
    pub jobs: Option<usize>,
    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    pub format: OutputFormat,
}

fn parse_format(s: &str) -> std::result::Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all genus-3 families up to rank `--kmax`.
    Classify {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=6))]
        kmax: u8,
        /// Compare against the built-in table and fail on mismatch.
        #[arg(long)]
        check: bool,
    },
    /// Invariants of the total space.
    Invariants(Target),
    /// Every intermediate quotient `X / H`.
    Quotients {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        only_k3: bool,
        /// Also list maximal towers of K3 quotients.
        #[arg(long)]
        towers: bool,
    },
    /// Triples of involutions with K3 quotients splitting the canonical system.
    Burgers(Target),
    /// Weighted projective model after elimination.
    Equations(Target),
    /// Run the verification ledger.
    Verify {
        /// Section number or name; repeatable.
        #[arg(long)]
        section: Vec<String>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Family label such as `B2`.
    #[arg(long)]
    pub family: Option<String>,
    /// JSON file holding building data, bare or in a `building_data` envelope.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

/// Result of one invocation, with output not yet written anywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) {
            2
        } else {
            1
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub label: Option<String>,
    pub data: BuildingDataNumeric,
    pub invariants: SurfaceInvariants,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientsDocument {
    pub label: Option<String>,
    pub quotients: Vec<QuotientReport>,
    pub towers: Option<Vec<K3Tower>>,
}

struct Loaded {
    label: Option<String>,
    data: BuildingDataNumeric,
}

impl Loaded {
    fn name(&self) -> &str {
        self.label.as_deref().unwrap_or("input")
    }
}

fn load(target: &Target) -> Result<Loaded> {
    if let Some(label) = &target.family {
        let f = lookup(label)?;
        return Ok(Loaded {
            label: Some(f.label.clone()),
            data: f.building_data(),
        });
    }
    let path = target
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidData("no family or input given".into()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidData(format!("{}: {e}", path.display())))?;
    let data: BuildingDataNumeric = json::from_json("building_data", &text)
        .or_else(|_| serde_json::from_str(&text).map_err(|e| Error::InvalidData(e.to_string())))?;
    let violations = data.validate();
    if !violations.is_empty() {
        return Err(Error::InvalidData(format!("{violations:?}")));
    }
    Ok(Loaded { label: None, data })
}

/// Parse `args` (including the program name) and run without touching stdout.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut outcome = dispatch(&cli);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.stdout) {
            return Outcome::error(&Error::InvalidData(format!("{}: {e}", path.display())));
        }
        outcome.stdout.clear();
    }
    outcome
}

pub fn main_with_env() -> i32 {
    let outcome = run(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}

fn dispatch(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    let result = match &cli.command {
        Command::Classify { kmax, check } => {
            return cmd_classify(*kmax as usize, *check, cli.jobs, fmt)
        }
        Command::Invariants(t) => load(t).and_then(|l| cmd_invariants(&l, fmt)),
        Command::Quotients {
            target,
            only_k3,
            towers,
        } => load(target).and_then(|l| cmd_quotients(&l, *only_k3, *towers, fmt)),
        Command::Burgers(t) => load(t).and_then(|l| cmd_burgers(&l, fmt)),
        Command::Equations(t) => {
            load(t).and_then(|l| render(&eliminate(&build_model(&l.data)?), fmt))
        }
        Command::Verify { section } => {
            let options = VerifyOptions {
                sections: section.clone(),
                jobs: cli.jobs,
                ..Default::default()
            };
            return run_verify(&options);
        }
    };
    match result {
        Ok(doc) => Outcome::ok(doc),
        Err(e) => Outcome::error(&e),
    }
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_classify(kmax: usize, check: bool, jobs: Option<usize>, fmt: OutputFormat) -> Outcome {
    let config = SearchConfig {
        jobs,
        ..SearchConfig::with_k_max(kmax)
    };
    let found = match enumerate(&config) {
        Ok(found) => found,
        Err(e) => return Outcome::error(&e),
    };
    if let Some(bad) = found.iter().find(|f| !l_matches_d(f)) {
        return Outcome::error(&Error::Internal(format!("{}: l and d disagree", bad.label)));
    }
    let doc = match render_classification(&found, fmt) {
        Ok(doc) => doc,
        Err(e) => return Outcome::error(&e),
    };
    let mut outcome = Outcome::ok(doc);
    if check {
        let mismatches = classification_mismatches(&found, kmax);
        if !mismatches.is_empty() {
            outcome.code = 1;
            outcome.stderr = mismatches
                .iter()
                .map(|m| format!("mismatch: {m}\n"))
                .collect();
        }
    }
    outcome
}

/// Differences between an enumeration and the table restricted to `k <= kmax`.
pub fn classification_mismatches(found: &[FamilyDescriptor], kmax: usize) -> Vec<String> {
    let expected: Vec<FamilyDescriptor> =
        family_table().into_iter().filter(|f| f.k <= kmax).collect();
    let mut out = Vec::new();
    for f in found {
        match expected.iter().find(|e| e.label == f.label) {
            None => out.push(format!("unexpected family {} with d = {:?}", f.label, f.d)),
            Some(e) if e != f => out.push(format!("{} differs from the table", f.label)),
            Some(_) => {}
        }
    }
    let labels: BTreeSet<&str> = found.iter().map(|f| f.label.as_str()).collect();
    for e in &expected {
        if !labels.contains(e.label.as_str()) {
            out.push(format!("missing family {}", e.label));
        }
    }
    if labels.len() != found.len() {
        out.push("a label occurs twice".into());
    }
    out
}

fn render_classification(found: &[FamilyDescriptor], fmt: OutputFormat) -> Result<String> {
    let mut out = String::new();
    match fmt {
        OutputFormat::Json => return json::to_json("classification", &found),
        OutputFormat::Text => {
            let _ = writeln!(
                out,
                "{:<5} {:>2} {:<4} {:<34} {:<34} {:>3} {:>5} {:>7}",
                "label", "k", "type", "d", "l", "K^2", "deg", "mod dim"
            );
            for f in found {
                let _ = writeln!(
                    out,
                    "{:<5} {:>2} {:<4} {:<34} {:<34} {:>3} {:>5} {:>7}",
                    f.label,
                    f.k,
                    f.cover_type,
                    vector(&f.d),
                    vector(&f.l),
                    f.k2,
                    f.deg_canonical,
                    f.modular_dimension
                );
            }
        }
        OutputFormat::Latex => {
            out.push_str("\\begin{tabular}{lrlllrrr}\n");
            out.push_str("label & $k$ & type & $d$ & $l$ & $K^2$ & $\\deg\\varphi$ & mod.\\ dim. \\\\\n\\hline\n");
            for f in found {
                let _ = writeln!(
                    out,
                    "{} & {} & {} & ${}$ & ${}$ & {} & {} & {} \\\\",
                    f.label,
                    f.k,
                    f.cover_type,
                    vector(&f.d),
                    vector(&f.l),
                    f.k2,
                    f.deg_canonical,
                    f.modular_dimension
                );
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    Ok(out)
}

fn cmd_invariants(loaded: &Loaded, fmt: OutputFormat) -> Result<String> {
    let report = InvariantsReport {
        label: loaded.label.clone(),
        data: loaded.data.clone(),
        invariants: surface_invariants(&loaded.data)?,
    };
    let inv = &report.invariants;
    let deg = inv.deg_canonical.map_or("-".to_string(), |d| d.to_string());
    let rows = [
        ("p_g", inv.p_g.to_string()),
        ("q", inv.q.to_string()),
        ("chi(O)", inv.chi_o.to_string()),
        ("K^2", inv.k2.to_string()),
        ("c", inv.c.to_string()),
        ("base points", inv.base_points.to_string()),
        ("deg phi", deg),
    ];
    Ok(match fmt {
        OutputFormat::Json => json::to_json("invariants", &report)?,
        OutputFormat::Text => {
            let mut out = format!(
                "{}: l = {}, d = {}\n",
                loaded.name(),
                vector(&report.data.l),
                vector(&report.data.d)
            );
            for (k, v) in rows {
                let _ = writeln!(out, "  {k:<12} {v}");
            }
            out
        }
        OutputFormat::Latex => {
            let mut out = String::from("\\begin{tabular}{lr}\n");
            for (k, v) in rows {
                let _ = writeln!(out, "{k} & {v} \\\\");
            }
            out.push_str("\\end{tabular}\n");
            out
        }
    })
}

fn cmd_quotients(
    loaded: &Loaded,
    only_k3: bool,
    towers: bool,
    fmt: OutputFormat,
) -> Result<String> {
    let k = loaded.data.group.require_exponent_two()?;
    let quotients: Vec<QuotientReport> = all_quotient_reports(&loaded.data)?
        .into_iter()
        .filter(|r| !only_k3 || r.kind() == SurfaceKind::K3)
        .collect();
    let doc = QuotientsDocument {
        label: loaded.label.clone(),
        quotients,
        towers: if towers {
            Some(k3_towers(&loaded.data)?)
        } else {
            None
        },
    };
    if fmt == OutputFormat::Json {
        return json::to_json("quotients", &doc);
    }
    let latex = fmt == OutputFormat::Latex;
    let mut out = String::new();
    if latex {
        out.push_str("\\begin{tabular}{lrrrrl}\n$H$ & $|H|$ & $K^2$ & $p_g$ & nodes & surface \\\\\n\\hline\n");
    }
    for r in &doc.quotients {
        let name = subgroup_name(&r.subgroup(k), k);
        let inv = &r.invariants;
        let surface = inv.display_name();
        if latex {
            let _ = writeln!(
                out,
                "$\\langle {} \\rangle$ & {} & {} & {} & {} & {} \\\\",
                name.trim_start_matches('<').trim_end_matches('>'),
                r.order,
                inv.k2,
                inv.p_g,
                inv.nodes,
                surface
            );
        } else {
            let _ = writeln!(
                out,
                "{name:<24} |H| = {:<3} K^2 = {:<3} p_g = {:<2} nodes = {:<3} {surface}",
                r.order, inv.k2, inv.p_g, inv.nodes
            );
        }
    }
    if latex {
        out.push_str("\\end{tabular}\n");
    }
    if let Some(towers) = &doc.towers {
        let _ = writeln!(
            out,
            "{}K3 towers: {}",
            if latex { "% " } else { "" },
            towers.len()
        );
        for t in towers {
            let chain: Vec<String> = t.chains[0]
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|&g| bit_string(g, k))
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            let _ = writeln!(
                out,
                "{}  nodes {:?} via <{}> ({} chains)",
                if latex { "% " } else { "" },
                t.nodes,
                chain.join("> < <"),
                t.chains.len()
            );
        }
    }
    Ok(out)
}

fn cmd_burgers(loaded: &Loaded, fmt: OutputFormat) -> Result<String> {
    let k = loaded.data.group.require_exponent_two()?;
    let triples: Vec<BurgerTriple> = burger_check(&loaded.data)?;
    if fmt == OutputFormat::Json {
        return json::to_json("burgers", &triples);
    }
    if triples.is_empty() {
        return Ok("none\n".into());
    }
    let mut out = String::new();
    for t in &triples {
        let sigmas: Vec<String> = t.sigmas.iter().map(|&s| bit_string(s, k)).collect();
        let chis: Vec<String> = t.surviving.iter().map(|&c| bit_string(c, k)).collect();
        let nodes: Vec<String> = t
            .reports
            .iter()
            .map(|r| r.invariants.nodes.to_string())
            .collect();
        if fmt == OutputFormat::Latex {
            let _ = writeln!(
                out,
                "$\\sigma = ({})$, surviving $({})$, nodes $({})$ \\\\",
                sigmas.join(", "),
                chis.join(", "),
                nodes.join(", ")
            );
        } else {
            let _ = writeln!(
                out,
                "sigma = {}  surviving = {}  nodes = {}",
                sigmas.join(", "),
                chis.join(", "),
                nodes.join(", ")
            );
        }
    }
    Ok(out)
}

/// Run the ledger and turn it into an outcome: the full ledger on stdout and,
/// on failure, the first twenty failures on stderr.
pub fn run_verify(options: &VerifyOptions) -> Outcome {
    match verify::run(options) {
        Err(e) => Outcome::error(&e),
        Ok(ledger) => {
            let mut outcome = Outcome::ok(ledger.render());
            if !ledger.passed() {
                outcome.code = 1;
                outcome.stderr = ledger.failure_summary(20);
            }
            outcome
        }
    }
}
