//! The `wkl` command line: argument parsing, job configuration files and
//! rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::chains::{ChainEngine, Family};
use crate::coxeter::{CoxeterSystem, DescentClass, Element, GenSubset, Model};
use crate::error::Error;
use crate::klcore::{KlContext, PolyKind};
use crate::laurent::{HalfExp, LaurentPoly};
use crate::verify::{self, Suite, VerifyOptions, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Subcommand)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    /// Group order, generators, weights and elements.
    Group,
    /// Minimal coset representatives with their descent classes.
    Dj,
    /// One R-polynomial (`--kind R` or `--kind Rtilde`).
    Rpoly,
    /// One KL polynomial P, or the KL basis element C_y when -x is omitted.
    Kl,
    /// One inverse polynomial Q.
    Qpoly,
    /// Chains from x to y with their chain polynomials.
    Chains,
    /// One coefficient [q^gamma] of P or Q from the coefficient formulas.
    Coeff,
    /// Every nonzero entry of one polynomial family.
    Table,
    /// Run the self-check suites.
    Verify,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Recursive,
    Chains,
    Coeff,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    #[serde(rename = "type")]
    pub model: String,
    #[serde(default)]
    pub weights: Option<Vec<i64>>,
}

/// Everything one invocation needs; also the schema of `--config` files.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub system: SystemSpec,
    #[serde(rename = "J", default)]
    pub j: Vec<String>,
    #[serde(default)]
    pub task: Option<Task>,
    #[serde(default)]
    pub x: Option<String>,
    #[serde(default)]
    pub y: Option<String>,
    #[serde(default)]
    pub gamma: Option<String>,
    #[serde(default)]
    pub method: Method,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(rename = "all_J", default)]
    pub all_j: bool,
    #[serde(default)]
    pub multichains: bool,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub max_interval: Option<usize>,
    #[serde(default)]
    pub coeff_stride: Option<usize>,
}

#[derive(Debug, Parser)]
#[command(name = "wkl", version, about = "Weighted parabolic Kazhdan–Lusztig polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub task: Option<Task>,

    /// Group type: A1..A6, B2..B4, D4, I2(m), or products like A1xB2.
    #[arg(long = "type", global = true)]
    pub model: Option<String>,
    /// Comma-separated weights, one per generator (default: all 1).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub weights: Option<Vec<i64>>,
    /// Generators of J, e.g. "" or "s1,s3".
    #[arg(short = 'J', global = true)]
    pub j: Option<String>,
    #[arg(short = 'x', global = true)]
    pub x: Option<String>,
    #[arg(short = 'y', global = true)]
    pub y: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub method: Option<Method>,
    /// Exponent of q as "k" or "k/2".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Polynomial family: R, Rtilde, P or Q.
    #[arg(long, global = true)]
    pub kind: Option<String>,
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Run over every subset J of S.
    #[arg(long = "all-J", global = true)]
    pub all_j: bool,
    /// List multichains instead of strict chains.
    #[arg(long, global = true)]
    pub multichains: bool,
    /// Restrict `verify` to the named suites (repeatable).
    #[arg(long = "suite", global = true)]
    pub suites: Vec<String>,
    /// Longest Bruhat interval entering chain-based checks.
    #[arg(long, global = true)]
    pub max_interval: Option<usize>,
    /// Check coefficient formulas on every n-th pair.
    #[arg(long, global = true)]
    pub coeff_stride: Option<usize>,
    /// Read a JSON job description; flags given alongside override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// A failed job, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(Error),
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math(_) => EXIT_MATH,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Math(e) => write!(f, "error: {e}"),
            CliError::VerifyFailed(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::UnsupportedModel(_) | Error::WeightCount { .. } => {
                CliError::Usage(e.to_string())
            }
            Error::Postcondition(m) => CliError::VerifyFailed(m),
            other => CliError::Math(other),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

impl Cli {
    /// Merges flags over the optional config file.
    pub fn into_config(self) -> CliResult<JobConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
            }
            None => JobConfig::default(),
        };
        if let Some(t) = self.task {
            cfg.task = Some(t);
        }
        if let Some(m) = self.model {
            cfg.system.model = m;
        }
        if let Some(w) = self.weights {
            cfg.system.weights = Some(w);
        }
        if let Some(j) = self.j {
            cfg.j = j
                .split([',', ' '])
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().to_string())
                .collect();
        }
        if self.x.is_some() {
            cfg.x = self.x;
        }
        if self.y.is_some() {
            cfg.y = self.y;
        }
        if self.gamma.is_some() {
            cfg.gamma = self.gamma;
        }
        if let Some(m) = self.method {
            cfg.method = m;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if self.kind.is_some() {
            cfg.kind = self.kind;
        }
        if self.output.is_some() {
            cfg.output = self.output;
        }
        cfg.all_j |= self.all_j;
        cfg.multichains |= self.multichains;
        if !self.suites.is_empty() {
            cfg.suites = self.suites;
        }
        if self.max_interval.is_some() {
            cfg.max_interval = self.max_interval;
        }
        if self.coeff_stride.is_some() {
            cfg.coeff_stride = self.coeff_stride;
        }
        if cfg.system.model.is_empty() {
            return Err(CliError::Usage("missing --type".into()));
        }
        if cfg.task.is_none() {
            return Err(CliError::Usage("missing subcommand".into()));
        }
        Ok(cfg)
    }
}

/// Parses `k` or `k/2` into a `v`-exponent.
pub fn parse_gamma(text: &str) -> Result<HalfExp, Error> {
    let bad = || Error::Parse(format!("bad exponent `{text}`; use k or k/2"));
    let text = text.trim();
    match text.split_once('/') {
        None => text.parse::<i64>().map(HalfExp::from_q).map_err(|_| bad()),
        Some((num, "2")) => num.trim().parse::<i64>().map(HalfExp).map_err(|_| bad()),
        Some(_) => Err(bad()),
    }
}

pub fn build_system(spec: &SystemSpec) -> Result<CoxeterSystem, Error> {
    let model = Model::parse(&spec.model)?;
    match &spec.weights {
        Some(w) => CoxeterSystem::new(model, w),
        None => CoxeterSystem::equal_weights(model),
    }
}

/// Output of a successful or failed job before it is written anywhere.
pub struct Rendered {
    pub body: String,
    pub exit: i32,
    pub diagnostic: Option<String>,
}

/// Runs one job and renders its output.
pub fn run(cfg: &JobConfig) -> Rendered {
    match execute(cfg) {
        Ok(body) => Rendered { body, exit: EXIT_OK, diagnostic: None },
        Err(CliError::VerifyFailed(body)) if cfg.task == Some(Task::Verify) => Rendered {
            diagnostic: body.lines().find(|l| l.starts_with("FAIL")).map(str::to_string),
            body,
            exit: EXIT_VERIFY_FAILED,
        },
        Err(e) => Rendered { body: String::new(), exit: e.exit_code(), diagnostic: Some(e.to_string()) },
    }
}

/// Parses `args`, runs the job, writes output, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let cfg = match cli.into_config() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let out = run(&cfg);
    if let Some(d) = &out.diagnostic {
        eprintln!("{d}");
    }
    if !out.body.is_empty() {
        match &cfg.output {
            Some(path) => {
                if let Err(e) = fs::write(path, &out.body) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return EXIT_USAGE;
                }
            }
            None => print!("{}", out.body),
        }
    }
    out.exit
}

struct Job<'a> {
    cfg: &'a JobConfig,
    sys: &'a CoxeterSystem,
}

fn execute(cfg: &JobConfig) -> CliResult<String> {
    let sys = build_system(&cfg.system)?;
    let job = Job { cfg, sys: &sys };
    let task = cfg.task.expect("checked when the config was built");
    if cfg.all_j && task != Task::Verify {
        return Err(CliError::Usage("--all-J applies to verify only".into()));
    }
    match task {
        Task::Group => Ok(job.group()),
        Task::Dj => job.dj(),
        Task::Rpoly => job.rpoly(),
        Task::Kl => job.kl(),
        Task::Qpoly => job.qpoly(),
        Task::Chains => job.chains(),
        Task::Coeff => job.coeff(),
        Task::Table => job.table(),
        Task::Verify => job.verify(),
    }
}

fn csv_document(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 records")
}

fn json_document(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
    s.push('\n');
    s
}

impl Job<'_> {
    fn j(&self) -> CliResult<GenSubset> {
        Ok(self.sys.parse_subset(&self.cfg.j.join(","))?)
    }

    fn element(&self, which: &str, text: &Option<String>) -> CliResult<Element> {
        let text = text.as_deref().ok_or_else(|| CliError::Usage(format!("missing -{which}")))?;
        Ok(self.sys.parse_element(text)?)
    }

    fn kind(&self, default: PolyKind) -> CliResult<PolyKind> {
        match &self.cfg.kind {
            Some(k) => Ok(k.parse()?),
            None => Ok(default),
        }
    }

    fn gamma(&self) -> CliResult<HalfExp> {
        let text = self.cfg.gamma.as_deref().ok_or_else(|| CliError::Usage("missing --gamma".into()))?;
        Ok(parse_gamma(text)?)
    }

    fn names(&self, j: GenSubset) -> Vec<String> {
        j.iter().map(|s| s.to_string()).collect()
    }

    fn group(&self) -> String {
        let sys = self.sys;
        let elements = sys.enumerate();
        match self.cfg.format {
            Format::Text => {
                let mut out = format!(
                    "{}: order {}, rank {}, weights {}\n",
                    sys.name(),
                    sys.order(),
                    sys.rank(),
                    sys.weights().iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                );
                for w in elements {
                    let _ = writeln!(out, "{}\t{}\t{}", sys.format_element(w), w.length(), sys.weight_of(w));
                }
                out
            }
            Format::Json => {
                let matrix: Vec<Vec<usize>> = sys
                    .generators()
                    .map(|s| sys.generators().map(|t| if s == t { 1 } else { sys.bond(s, t) }).collect())
                    .collect();
                let elems: Vec<_> = elements
                    .iter()
                    .map(|&w| json!({"elem": sys.format_element(w), "length": w.length(), "weight": sys.weight_of(w)}))
                    .collect();
                json_document(json!({
                    "system": sys.name(),
                    "order": sys.order(),
                    "rank": sys.rank(),
                    "weights": sys.weights(),
                    "matrix": matrix,
                    "elements": elems,
                }))
            }
            Format::Csv => csv_document(
                &["elem", "length", "weight"],
                elements.iter().map(|&w| {
                    vec![sys.format_element(w), w.length().to_string(), sys.weight_of(w).to_string()]
                }),
            ),
        }
    }

    fn dj(&self) -> CliResult<String> {
        let sys = self.sys;
        let j = self.j()?;
        let mut rows = Vec::new();
        for w in sys.min_coset_reps(j) {
            let mut classes: [Vec<String>; 3] = Default::default();
            for s in sys.generators() {
                let slot = match sys.classify(j, w, s)? {
                    DescentClass::SD => 0,
                    DescentClass::SA => 1,
                    DescentClass::WD => 2,
                    DescentClass::WA => unreachable!("D_J has no weak ascents"),
                };
                classes[slot].push(s.to_string());
            }
            rows.push((w, classes));
        }
        Ok(match self.cfg.format {
            Format::Text => {
                let mut out = String::new();
                for (w, [sd, sa, wd]) in &rows {
                    let _ = writeln!(
                        out,
                        "{}\tSD={{{}}}\tSA={{{}}}\tWD={{{}}}",
                        sys.format_element(*w),
                        sd.join(","),
                        sa.join(","),
                        wd.join(",")
                    );
                }
                out
            }
            Format::Json => json_document(json!({
                "system": sys.name(),
                "J": self.names(j),
                "elements": rows.iter().map(|(w, [sd, sa, wd])| json!({
                    "elem": sys.format_element(*w),
                    "length": w.length(),
                    "weight": sys.weight_of(*w),
                    "SD": sd, "SA": sa, "WD": wd,
                })).collect::<Vec<_>>(),
            })),
            Format::Csv => csv_document(
                &["elem", "length", "SD", "SA", "WD"],
                rows.iter().map(|(w, [sd, sa, wd])| {
                    vec![sys.format_element(*w), w.length().to_string(), sd.join(" "), sa.join(" "), wd.join(" ")]
                }),
            ),
        })
    }

    fn render_poly(&self, kind: PolyKind, x: Element, y: Element, p: &LaurentPoly) -> String {
        let sys = self.sys;
        match self.cfg.format {
            Format::Text => format!("{p}\n"),
            Format::Json => json_document(json!({
                "kind": kind.to_string(),
                "x": sys.format_element(x),
                "y": sys.format_element(y),
                "poly": p.to_json(),
                "text": p.to_string(),
            })),
            Format::Csv => csv_document(
                &["x", "y", "kind", "poly"],
                [vec![sys.format_element(x), sys.format_element(y), kind.to_string(), p.to_string()]],
            ),
        }
    }

    fn render_coeff(&self, kind: PolyKind, x: Element, y: Element, g: HalfExp, c: &num_bigint::BigInt) -> String {
        let sys = self.sys;
        match self.cfg.format {
            Format::Text => format!("{c}\n"),
            Format::Json => json_document(json!({
                "kind": kind.to_string(),
                "x": sys.format_element(x),
                "y": sys.format_element(y),
                "gamma": g.to_string(),
                "coeff": c.to_string(),
            })),
            Format::Csv => csv_document(
                &["x", "y", "kind", "gamma", "coeff"],
                [vec![sys.format_element(x), sys.format_element(y), kind.to_string(), g.to_string(), c.to_string()]],
            ),
        }
    }

    fn rpoly(&self) -> CliResult<String> {
        let ctx = KlContext::new(self.sys, self.j()?);
        let (x, y) = (self.element("x", &self.cfg.x)?, self.element("y", &self.cfg.y)?);
        let kind = self.kind(PolyKind::R)?;
        if !matches!(kind, PolyKind::R | PolyKind::RTilde) {
            return Err(CliError::Usage("rpoly takes --kind R or Rtilde".into()));
        }
        let p = ctx.poly(kind, x, y)?;
        Ok(self.render_poly(kind, x, y, &p))
    }

    fn kl(&self) -> CliResult<String> {
        let ctx = KlContext::new(self.sys, self.j()?);
        let y = self.element("y", &self.cfg.y)?;
        if self.cfg.x.is_none() {
            let c = ctx.c_basis(y)?;
            return Ok(match self.cfg.format {
                Format::Json => json_document(c.to_json(self.sys, "Gamma")),
                _ => {
                    let mut out = String::new();
                    for (x, p) in c.terms() {
                        let _ = writeln!(out, "{}\t{}", self.sys.format_element(x), p);
                    }
                    out
                }
            });
        }
        let x = self.element("x", &self.cfg.x)?;
        self.single(&ctx, PolyKind::P, x, y)
    }

    fn qpoly(&self) -> CliResult<String> {
        let ctx = KlContext::new(self.sys, self.j()?);
        let (x, y) = (self.element("x", &self.cfg.x)?, self.element("y", &self.cfg.y)?);
        self.single(&ctx, PolyKind::Q, x, y)
    }

    fn single(&self, ctx: &KlContext<'_>, kind: PolyKind, x: Element, y: Element) -> CliResult<String> {
        let eng = ChainEngine::new(ctx);
        let p = match (self.cfg.method, kind) {
            (Method::Recursive, _) => ctx.poly(kind, x, y)?,
            (Method::Chains, PolyKind::P) => eng.p_via_multichains(x, y)?,
            (Method::Chains, _) => eng.q_via_multichains(x, y)?,
            (Method::Coeff, _) => {
                let g = self.gamma()?;
                let c = if kind == PolyKind::P { eng.coeff_p(x, y, g)? } else { eng.coeff_q(x, y, g)? };
                return Ok(self.render_coeff(kind, x, y, g, &c));
            }
        };
        Ok(self.render_poly(kind, x, y, &p))
    }

    fn coeff(&self) -> CliResult<String> {
        let ctx = KlContext::new(self.sys, self.j()?);
        let eng = ChainEngine::new(&ctx);
        let (x, y) = (self.element("x", &self.cfg.x)?, self.element("y", &self.cfg.y)?);
        let g = self.gamma()?;
        let kind = self.kind(PolyKind::P)?;
        let c = match kind {
            PolyKind::P => eng.coeff_p(x, y, g)?,
            PolyKind::Q => eng.coeff_q(x, y, g)?,
            _ => return Err(CliError::Usage("coeff takes --kind P or Q".into())),
        };
        Ok(self.render_coeff(kind, x, y, g, &c))
    }

    fn chains(&self) -> CliResult<String> {
        let sys = self.sys;
        let ctx = KlContext::new(sys, self.j()?);
        let eng = ChainEngine::new(&ctx);
        let (x, y) = (self.element("x", &self.cfg.x)?, self.element("y", &self.cfg.y)?);
        let kind = self.kind(PolyKind::P)?;
        let family = match (kind, self.cfg.multichains) {
            (_, false) => Family::Strict,
            (PolyKind::P, true) => Family::RepeatInitial,
            (PolyKind::Q, true) => Family::RepeatFinal,
            _ => return Err(CliError::Usage("chains takes --kind P or Q".into())),
        };
        let chains = eng.family(family, x, y)?;
        let mut rows = Vec::with_capacity(chains.len());
        let mut sum = LaurentPoly::zero();
        for phi in &chains {
            let value = match kind {
                PolyKind::P => eng.script_r(phi)?,
                _ => eng.script_r_tilde_star(phi)?,
            };
            sum += &value;
            rows.push((phi.format(sys), value));
        }
        Ok(match self.cfg.format {
            Format::Text => {
                let mut out = String::new();
                for (entries, value) in &rows {
                    let _ = writeln!(out, "{}\t{}", entries.join(" ≤ "), value);
                }
                let _ = writeln!(out, "sum\t{sum}");
                out
            }
            Format::Json => json_document(json!({
                "x": sys.format_element(x),
                "y": sys.format_element(y),
                "chains": rows.iter().map(|(entries, value)| json!({
                    "entries": entries,
                    "scriptR": value.to_json(),
                })).collect::<Vec<_>>(),
                "sum": sum.to_json(),
            })),
            Format::Csv => csv_document(
                &["entries", "scriptR"],
                rows.iter()
                    .map(|(entries, value)| vec![entries.join(" "), value.to_string()])
                    .chain([vec!["sum".to_string(), sum.to_string()]]),
            ),
        })
    }

    fn table(&self) -> CliResult<String> {
        let ctx = KlContext::new(self.sys, self.j()?);
        let table = ctx.table(self.kind(PolyKind::P)?)?;
        Ok(match self.cfg.format {
            Format::Text => table.to_text(self.sys),
            Format::Json => json_document(table.to_json(self.sys)),
            Format::Csv => table.to_csv(self.sys),
        })
    }

    fn verify(&self) -> CliResult<String> {
        let suites: Vec<Suite> = if self.cfg.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            self.cfg.suites.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
        };
        let mut opts = VerifyOptions::for_system(self.sys);
        if self.cfg.max_interval.is_some() {
            opts.max_interval = self.cfg.max_interval;
        }
        if let Some(k) = self.cfg.coeff_stride {
            opts.coeff_stride = k;
        }
        let js: Vec<GenSubset> =
            if self.cfg.all_j { GenSubset::all(self.sys.rank()).collect() } else { vec![self.j()?] };
        let reports: Vec<VerifyReport> = js
            .into_iter()
            .map(|j| verify::verify(&KlContext::new(self.sys, j), &suites, &opts))
            .collect();
        let passed = reports.iter().all(VerifyReport::passed);
        let body = match self.cfg.format {
            Format::Json => json_document(json!({
                "system": self.sys.name(),
                "passed": passed,
                "reports": reports.iter().map(|r| json!({
                    "J": self.names(r.j),
                    "checks": r.outcomes.iter().map(|o| json!({
                        "name": o.suite.name(),
                        "passed": o.passed(),
                        "checked": o.report.checked,
                        "failures": o.report.failures,
                        "counterexample": o.report.first_failure,
                        "skipped": o.skipped,
                        "notes": o.notes,
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })),
            Format::Csv => csv_document(
                &["J", "check", "passed", "checked", "failures", "counterexample"],
                reports.iter().flat_map(|r| {
                    r.outcomes.iter().map(move |o| {
                        vec![
                            r.j.to_string(),
                            o.suite.name().to_string(),
                            o.passed().to_string(),
                            o.report.checked.to_string(),
                            o.report.failures.to_string(),
                            o.report.first_failure.clone().unwrap_or_default(),
                        ]
                    })
                }),
            ),
            Format::Text => {
                let mut out = String::new();
                for r in &reports {
                    let _ = writeln!(out, "{} J={}", r.system, r.j);
                    for o in &r.outcomes {
                        let status = match (&o.skipped, o.passed()) {
                            (Some(_), _) => "SKIP",
                            (None, true) => "PASS",
                            (None, false) => "FAIL",
                        };
                        let _ = write!(out, "{status} {} ({} checks)", o.suite, o.report.checked);
                        if let Some(why) = &o.skipped {
                            let _ = write!(out, ": {why}");
                        }
                        if let Some(c) = &o.report.first_failure {
                            let _ = write!(out, ": {c}");
                        }
                        out.push('\n');
                        for n in &o.notes {
                            let _ = writeln!(out, "  note: {n}");
                        }
                    }
                }
                out.push_str(
                    "note: interval sums run over Bruhat order restricted to D_J; \
                     the degree-support-laws suite checks that R vanishes off those intervals\n",
                );
                out
            }
        };
        if passed {
            Ok(body)
        } else {
            Err(CliError::VerifyFailed(body))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Rendered {
        let cli = Cli::try_parse_from(std::iter::once("wkl").chain(args.iter().copied())).unwrap();
        run(&cli.into_config().unwrap())
    }

    #[test]
    fn gamma_parsing() {
        assert_eq!(parse_gamma("1").unwrap(), HalfExp(2));
        assert_eq!(parse_gamma("3/2").unwrap(), HalfExp(3));
        assert_eq!(parse_gamma("-1/2").unwrap(), HalfExp(-1));
        assert!(parse_gamma("1/3").is_err());
    }

    #[test]
    fn documented_examples() {
        let out = run_args(&["kl", "--type", "A2", "--weights", "1,1", "-J", "", "-x", "e", "-y", "s1.s2.s1"]);
        assert_eq!(out.body, "1\n");
        let out = run_args(&[
            "kl", "--type", "A3", "--weights", "1,1,1", "-J", "", "-x", "s2", "-y", "s2.s1.s3.s2", "--method", "chains",
        ]);
        assert_eq!(out.body, "1 + q\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["kl", "--type", "A2", "--weights", "1,2", "-x", "e", "-y", "e"]).exit, EXIT_MATH);
        assert_eq!(run_args(&["kl", "--type", "A2", "-x", "s1", "-y", "e", "--method", "chains"]).exit, EXIT_MATH);
        assert_eq!(run_args(&["kl", "--type", "A2", "-x", "s7", "-y", "e"]).exit, EXIT_USAGE);
        assert_eq!(run_args(&["kl", "--type", "Z9", "-x", "e", "-y", "e"]).exit, EXIT_USAGE);
        assert_eq!(run_args(&["coeff", "--type", "A2", "-x", "e", "-y", "s1"]).exit, EXIT_USAGE);
    }
}
