use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permrep_branching::{coding, is_pure, point_spectrum, shift_cycles, validate_branching, words, BranchingSystem};
use permrep_classify::{
    classify_o2_component, o2_components, q2_decomposable, regularity_verdict, Decomposition, RegularityVerdict, RepClass,
};
use permrep_endo::{endo_spec, endo_table, endo_table_report, row_report, RowReport};
use permrep_extension::{build_tau, build_tau_pure, extendible, matchings, verify_q2, Extendibility, Q2System, Tau};
use permrep_maps::{BigInt, Index};
use permrep_states::{omega_z, Phase, StateError};
use serde_json::{json, Value};

use crate::{catalog, CliError, System, CATALOG};

pub const SCHEMA: &str = "permrep/1";

#[derive(Parser, Debug)]
#[command(name = "permrep", version, about = "Permutative representations of O₂ and Q₂ as exact integer maps")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// indices checked by window-based tests
    #[arg(long, global = true, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub window: u64,
    /// coding depth
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: u64,
    /// step budget for core searches and walks
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// recorded in the report; all computations are deterministic
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// built-in system, e.g. canonical, kawamura:12, chi:1, endo:23
    #[arg(long)]
    pub catalog: Option<String>,
    /// JSON file: {"sigma1", "sigma2"} or {"sigma2", "tau"}
    #[arg(long)]
    pub input: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Verb {
    /// check ranges (O₂) or the Q₂ relations
    Validate(Source),
    /// purity, spectra, extendibility and regularity
    Analyze(Source),
    /// construct the permutative extensions
    Extend {
        #[command(flatten)]
        source: Source,
        /// build every extension (up to 16)
        #[arg(long)]
        all: bool,
    },
    /// invariant components and their classes
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        after_extension: bool,
    },
    /// regularity and representation classes
    Classify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        after_extension: bool,
    },
    /// coding sequence of an index ("5" or "3,1")
    Coding {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        index: String,
    },
    /// extendibility table of the quadratic endomorphisms
    EndoTable {
        #[arg(long)]
        row: Option<String>,
    },
    /// Ω_z(S_α S_β* U^h)
    StateEval {
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long, default_value = "")]
        beta: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        upower: i64,
        /// p/q for e^{2πi p/q}, or x+yi
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// evaluate even when z has an excluded order
        #[arg(long)]
        r#override: bool,
    },
    /// list entries, or print one as JSON
    Catalog { name: Option<String> },
}

/// Exit code and report of one request.
#[derive(Debug)]
pub struct Outcome {
    /// 0 verdict, 1 structural error, 2 inconclusive
    pub code: i32,
    pub result: Value,
    pub text: String,
}

impl Outcome {
    fn new(code: i32, result: Value, text: String) -> Self {
        Outcome { code, result, text }
    }

    pub fn render(&self, verb: &str, g: &Global) -> String {
        match g.format {
            Format::Text => self.text.trim_end().to_string(),
            Format::Json => {
                let env = json!({"schema": SCHEMA, "verb": verb, "seed": g.seed, "exit": self.code, "result": self.result});
                serde_json::to_string_pretty(&env).expect("json")
            }
        }
    }
}

pub fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Validate(_) => "validate",
        Verb::Analyze(_) => "analyze",
        Verb::Extend { .. } => "extend",
        Verb::Decompose { .. } => "decompose",
        Verb::Classify { .. } => "classify",
        Verb::Coding { .. } => "coding",
        Verb::EndoTable { .. } => "endo-table",
        Verb::StateEval { .. } => "state-eval",
        Verb::Catalog { .. } => "catalog",
    }
}

fn load(s: &Source) -> Result<System, CliError> {
    match (&s.catalog, &s.input) {
        (Some(name), None) => catalog(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Schema(e.to_string()))?;
            System::from_json(&v)
        }
        _ => Err(CliError::Usage("give exactly one of --catalog NAME or --input FILE".into())),
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable report")
}

/// Runs one parsed request; errors are structural (exit 1).
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.verb {
        Verb::Validate(src) => validate(&load(src)?, g),
        Verb::Analyze(src) => analyze(&load(src)?, g),
        Verb::Extend { source, all } => extend(&load(source)?, g, *all),
        Verb::Decompose { source, after_extension } => decompose(&load(source)?, g, *after_extension),
        Verb::Classify { source, after_extension } => classify(&load(source)?, g, *after_extension),
        Verb::Coding { source, index } => code_of(&load(source)?, g, index),
        Verb::EndoTable { row } => endo(g, row.as_deref()),
        Verb::StateEval { alpha, beta, upower, z, r#override } => state(alpha, beta, *upower, z, *r#override),
        Verb::Catalog { name } => list(name.as_deref()),
    }
}

fn validate(sys: &System, g: &Global) -> Result<Outcome, CliError> {
    match sys {
        System::O2(s) => {
            let r = validate_branching(s);
            let text = match r.witness() {
                None => "valid branching system".to_string(),
                Some(w) => format!("invalid: {w}"),
            };
            Ok(Outcome::new(if r.valid { 0 } else { 1 }, to_value(&r), text))
        }
        System::Q2(q) => {
            let r = verify_q2(q, g.window, 8);
            let text = if r.passed { "valid Q₂ system".to_string() } else { format!("invalid Q₂ system: {}", to_value(&r)) };
            Ok(Outcome::new(if r.passed { 0 } else { 1 }, to_value(&r), text))
        }
    }
}

fn analyze(sys: &System, g: &Global) -> Result<Outcome, CliError> {
    let b = sys.branching();
    let mut text = String::new();
    let mut sides = Vec::new();
    for i in [1u8, 2] {
        let purity = is_pure(b.sigma(i), g.budget);
        let spectrum = point_spectrum(b.sigma(i), g.budget).ok();
        let _ = writeln!(
            text,
            "σ{i}: {:?}; point spectrum {}",
            purity,
            spectrum.as_ref().map_or("undetermined".to_string(), |s| if s.is_empty() {
                "empty".to_string()
            } else {
                format!("{:?}", s.groups)
            })
        );
        sides.push(json!({"sigma": i, "purity": to_value(&purity), "spectrum": spectrum.map(|s| to_value(&s))}));
    }
    let ext = extendible(&b, g.budget);
    let reg = regularity_verdict(&b, g.window, g.depth as usize, g.budget);
    let cycles = shift_cycles(&b, g.budget).ok().map(|c| c.cycles.iter().map(|w| words::show(&w.word)).collect::<Vec<_>>());
    let _ = writeln!(text, "extendible: {}", ext_text(&ext));
    let _ = writeln!(text, "restriction: {:?}", reg.verdict);
    if let Some(c) = &cycles {
        let _ = writeln!(text, "shift cycles: {}", c.join(" "));
    }
    let code = if ext.is_extendible().is_none() || matches!(reg.verdict, RegularityVerdict::Inconclusive { .. }) { 2 } else { 0 };
    let result = json!({"maps": sides, "extendibility": to_value(&ext), "regularity": to_value(&reg), "shift_cycles": cycles});
    Ok(Outcome::new(code, result, text))
}

fn ext_text(e: &Extendibility) -> String {
    match e {
        Extendibility::Extendible { count, .. } => format!("yes ({count:?})"),
        Extendibility::NotExtendible { mismatch_length, .. } => format!("no (cores differ in {mismatch_length}-cycles)"),
        Extendibility::Inconclusive(why) => format!("inconclusive: {why}"),
    }
}

fn tau_text(t: &Tau) -> String {
    match t {
        Tau::Rule(f) => format!("τ = {f}"),
        Tau::Lazy(l) => format!("τ lazy, core table {:?}", l.core_table()),
    }
}

/// Extensions of an O₂ system: the unique one for pure systems, otherwise
/// one per orbit matching (first only unless `all`).
fn extensions(b: &BranchingSystem, g: &Global, all: bool) -> Result<(Extendibility, Vec<Q2System>), CliError> {
    let ext = extendible(b, g.budget);
    if ext.is_extendible() != Some(true) {
        return Ok((ext, vec![]));
    }
    if let Ok(q) = build_tau_pure(b, g.budget) {
        return Ok((ext, vec![q]));
    }
    let ms = matchings(b, g.budget, if all { 16 } else { 1 })?;
    let qs = ms.iter().map(|m| build_tau(b, m, g.budget)).collect::<Result<Vec<_>, _>>()?;
    Ok((ext, qs))
}

fn extend(sys: &System, g: &Global, all: bool) -> Result<Outcome, CliError> {
    let b = match sys {
        System::Q2(q) => {
            let r = verify_q2(q, g.window, 8);
            let text = format!("already a Q₂ system; {}; relations {}", tau_text(&q.tau), if r.passed { "hold" } else { "fail" });
            return Ok(Outcome::new(if r.passed { 0 } else { 1 }, json!({"tau": to_value(&q.tau), "report": to_value(&r)}), text));
        }
        System::O2(b) => b,
    };
    let (ext, qs) = extensions(b, g, all)?;
    let mut text = format!("extendible: {}\n", ext_text(&ext));
    let mut built = Vec::new();
    for q in &qs {
        let r = verify_q2(q, g.window, 8);
        let _ = writeln!(text, "{}; relations {}", tau_text(&q.tau), if r.passed { "hold" } else { "fail" });
        built.push(json!({"tau": to_value(&q.tau), "report": to_value(&r)}));
    }
    let code = if ext.is_extendible().is_none() { 2 } else { 0 };
    Ok(Outcome::new(code, json!({"extendibility": to_value(&ext), "extensions": built}), text))
}

fn extended(sys: &System, g: &Global) -> Result<Option<Q2System>, CliError> {
    match sys {
        System::Q2(q) => Ok(Some(q.clone())),
        System::O2(b) => Ok(extensions(b, g, false)?.1.into_iter().next()),
    }
}

fn decomposition_outcome(d: &Decomposition) -> Outcome {
    let mut text = format!("restriction to O₂: {:?}\n", d.restriction.verdict);
    for (i, c) in d.components.iter().enumerate() {
        let _ = writeln!(text, "component {i}: {c}");
    }
    let undecided = d.decomposable.is_none() || d.components.iter().any(|c| matches!(c, RepClass::Inconclusive { .. }));
    Outcome::new(if undecided { 2 } else { 0 }, to_value(d), text)
}

fn no_extension(b: &BranchingSystem, g: &Global) -> Outcome {
    let ext = extendible(b, g.budget);
    let code = if ext.is_extendible().is_none() { 2 } else { 0 };
    Outcome::new(code, json!({"extendibility": to_value(&ext)}), format!("no extension: {}", ext_text(&ext)))
}

fn decompose(sys: &System, g: &Global, after_extension: bool) -> Result<Outcome, CliError> {
    let depth = g.depth as usize;
    if after_extension || matches!(sys, System::Q2(_)) {
        return Ok(match extended(sys, g)? {
            Some(q) => decomposition_outcome(&q2_decomposable(&q, g.window, depth, g.budget)?),
            None => no_extension(&sys.branching(), g),
        });
    }
    let b = sys.branching();
    let part = o2_components(&b, g.window, g.budget)?;
    let mut text = format!("{} O₂-components{}\n", part.len(), if part.exact { "" } else { " (window)" });
    let mut classes = Vec::new();
    for c in &part.components {
        let class = classify_o2_component(&b, &part, c.id, depth)?;
        let sample: Vec<String> = c.sample.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(text, "component {}: {class}; members {} …", c.id, sample.join(" "));
        classes.push(class);
    }
    let undecided = classes.iter().any(|c| matches!(c, RepClass::Inconclusive { .. }));
    Ok(Outcome::new(if undecided { 2 } else { 0 }, json!({"partition": to_value(&part), "classes": to_value(&classes)}), text))
}

fn classify(sys: &System, g: &Global, after_extension: bool) -> Result<Outcome, CliError> {
    let depth = g.depth as usize;
    if after_extension || matches!(sys, System::Q2(_)) {
        return Ok(match extended(sys, g)? {
            Some(q) => decomposition_outcome(&q2_decomposable(&q, g.window, depth, g.budget)?),
            None => no_extension(&sys.branching(), g),
        });
    }
    let r = regularity_verdict(&sys.branching(), g.window, depth, g.budget);
    let code = if matches!(r.verdict, RegularityVerdict::Inconclusive { .. }) { 2 } else { 0 };
    Ok(Outcome::new(code, to_value(&r), format!("{:?}", r.verdict)))
}

pub fn parse_index(s: &str) -> Result<Index, CliError> {
    let t = s.trim().trim_start_matches('(').trim_end_matches(')');
    let num = |x: &str| x.trim().parse::<BigInt>().map_err(|_| CliError::Usage(format!("bad index {s:?}")));
    match t.split_once(',') {
        Some((a, b)) => Ok(Index::Pair(num(a)?, num(b)?)),
        None => Ok(Index::Int(num(t)?)),
    }
}

fn code_of(sys: &System, g: &Global, index: &str) -> Result<Outcome, CliError> {
    let n = parse_index(index)?;
    let c = coding(&sys.branching(), &n, g.depth as usize)?;
    let mut text = format!("coding of {n}: {}", words::show(&c.digits));
    if let Some(t) = &c.tail {
        let _ = write!(text, " = {}({})^∞", words::show(&t.preperiod), words::show(&t.period));
    }
    Ok(Outcome::new(0, to_value(&c), text))
}

fn row_text(r: &RowReport) -> String {
    let rep = match r.rep_extendible {
        Some(true) => "Yes",
        Some(false) => "No",
        None => "?",
    };
    let mut s = format!(
        "ρ{:9} rep-level {rep:3} table {:3} {:?}{}",
        r.name,
        if r.table_extendible { "Yes" } else { "No" },
        r.level,
        if r.agrees { "" } else { "  DISAGREES" }
    );
    if let Some(c) = &r.candidate {
        let _ = write!(s, "; ρ(u) = {} {}", c.candidate, if c.passed { "passes" } else { "fails" });
    }
    if let Some(c) = &r.refuted_candidate {
        let _ = write!(s, "; candidate {} {}", c.candidate, if c.passed { "passes" } else { "fails" });
    }
    if let Some(n) = &r.note {
        let _ = write!(s, "; {n}");
    }
    s
}

fn endo(g: &Global, row: Option<&str>) -> Result<Outcome, CliError> {
    let rows = match row {
        Some(name) => vec![row_report(endo_spec(name)?, g.window)?],
        None => endo_table_report(g.window)?,
    };
    let text = rows.iter().map(row_text).collect::<Vec<_>>().join("\n");
    let code = if rows.iter().any(|r| r.rep_extendible.is_none()) { 2 } else { 0 };
    Ok(Outcome::new(code, to_value(&rows), text))
}

fn state(alpha: &str, beta: &str, h: i64, z: &str, force: bool) -> Result<Outcome, CliError> {
    let (a, b) = (words::parse(alpha)?, words::parse(beta)?);
    let z = Phase::parse(z)?;
    match omega_z(&a, &b, h, &z, force) {
        Ok(v) => {
            let text = format!("Ω_z = {} · {} ≈ {}", v.coeff, v.phase, v.value());
            Ok(Outcome::new(0, to_value(&v), text))
        }
        Err(e @ StateError::OrderHypothesis { .. }) => Ok(Outcome::new(2, json!({"error": e.to_string()}), e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn list(name: Option<&str>) -> Result<Outcome, CliError> {
    match name {
        None => {
            let rows: Vec<&str> = endo_table().iter().map(|r| r.name).collect();
            let text = format!("{}\nendomorphism rows: {}", CATALOG.join("\n"), rows.join(" "));
            Ok(Outcome::new(0, json!({"entries": CATALOG, "endo_rows": rows}), text))
        }
        Some(n) => {
            let v = catalog(n)?.to_json()?;
            Ok(Outcome::new(0, v.clone(), serde_json::to_string_pretty(&v).expect("json")))
        }
    }
}
