//! Command-line driver. [`run`] returns the exit code and both output
//! streams so that tests can call it without spawning a process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use flc_core::classifier::ClassifyError;
use flc_core::groups::DEFAULT_MAX_ORDER;
use flc_core::{builtins, classify, ClassifyOptions, DaxOracle, GroupElement, GroupModel, ManifoldData};

use crate::manifold::{parse_manifold, LoadError, ManifoldFile};
use crate::number::Bit;
use crate::report::ReportFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_DEGRADED: i32 = 2;

/// Environment variable overriding the Cayley-table size cap.
pub const MAX_ORDER_VAR: &str = "FLC_MAX_ORDER";

#[derive(Parser, Debug)]
#[command(name = "flc", version, about = "Classify framed circles in oriented 4-manifolds from algebraic data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a circle class in a manifold file or builtin.
    Classify {
        /// Manifold JSON file.
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        path: Option<PathBuf>,
        /// Use a builtin manifold instead of a file.
        #[arg(long)]
        builtin: Option<String>,
        /// `trivial`, `index:K`, `vec:a,b,…`, `c`, `c^k`, or an element label.
        #[arg(long, default_value = "trivial")]
        circle: String,
        /// `zero`, `nonzero`, `absent` or `file:PATH` (a JSON list of
        /// per-generator vanishing bits).
        #[arg(long, default_value = "absent")]
        dax: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with status 2 when a query was left symbolic.
        #[arg(long)]
        strict: bool,
    },
    /// Run every validator on a manifold file and list the violations.
    Validate { path: PathBuf },
    /// Inspect the builtin manifolds.
    Builtin {
        #[command(subcommand)]
        action: BuiltinAction,
    },
}

#[derive(Subcommand, Debug)]
enum BuiltinAction {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn fail(stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome { code: EXIT_INVALID, stdout: String::new(), stderr }
    }
}

/// Size caps in force, after applying [`MAX_ORDER_VAR`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub classify: ClassifyOptions,
}

impl Limits {
    pub fn from_env() -> Result<Self, String> {
        let mut limits = Limits { max_order: DEFAULT_MAX_ORDER, classify: ClassifyOptions::default() };
        if let Ok(v) = std::env::var(MAX_ORDER_VAR) {
            let n: usize = v.trim().parse().map_err(|_| format!("{MAX_ORDER_VAR}: `{v}` is not a positive integer"))?;
            if n == 0 {
                return Err(format!("{MAX_ORDER_VAR} must be positive"));
            }
            limits.max_order = n;
            limits.classify.max_enumerate = n;
        }
        Ok(limits)
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::fail(text) } else { Outcome::ok(text) };
        }
    };
    let limits = match Limits::from_env() {
        Ok(l) => l,
        Err(e) => return Outcome::fail(e),
    };
    match cli.command {
        Command::Classify { path, builtin, circle, dax, format, strict } => {
            cmd_classify(path, builtin.as_deref(), &circle, &dax, format, strict, &limits)
        }
        Command::Validate { path } => cmd_validate(&path, &limits),
        Command::Builtin { action: BuiltinAction::List } => {
            Outcome::ok(builtins::NAMES.iter().map(|n| format!("{n}\n")).collect())
        }
        Command::Builtin { action: BuiltinAction::Show { name } } => match builtins::builtin(&name) {
            Some(x) => {
                let mut s = serde_json::to_string_pretty(&ManifoldFile::from(&x)).expect("manifold serializes");
                s.push('\n');
                Outcome::ok(s)
            }
            None => Outcome::fail(format!("unknown builtin `{name}`; try `flc builtin list`")),
        },
    }
}

fn read(path: &PathBuf) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &PathBuf, limits: &Limits) -> Result<ManifoldData, String> {
    let text = read(path)?;
    let file = parse_manifold(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.to_data(limits.max_order).map_err(|e| format!("{}: {e}", path.display()))
}

/// Resolves a circle spec against the π₁ model.
pub fn parse_circle(pi1: &GroupModel, spec: &str) -> Result<GroupElement, String> {
    let spec = spec.trim();
    let element = if spec == "trivial" {
        pi1.identity()
    } else if let Some(k) = spec.strip_prefix("index:") {
        GroupElement::Index(k.parse().map_err(|_| format!("bad element index `{k}`"))?)
    } else if let Some(v) = spec.strip_prefix("vec:") {
        let coords: Result<Vec<i64>, _> = v.split(',').map(|x| x.trim().parse::<i64>()).collect();
        let coords = coords.map_err(|_| format!("bad coordinate list `{v}`"))?;
        match pi1 {
            GroupModel::FgAbelian(a) if coords.len() == a.ngens() => GroupElement::Vector(a.reduce(&coords)),
            _ => GroupElement::Vector(coords),
        }
    } else if let Some(k) = spec.strip_prefix("c^") {
        GroupElement::CPower(k.parse().map_err(|_| format!("bad exponent `{k}`"))?)
    } else if let Some(e) = pi1.element_by_name(spec) {
        e
    } else {
        return Err(format!("unknown circle `{spec}`: expected trivial, index:K, vec:a,b,…, c, c^k or an element label"));
    };
    pi1.check(&element).map_err(|e| format!("circle: {e}"))?;
    Ok(element)
}

/// Parses a Dax spec. Files hold a JSON list of bits, one per Fix generator.
pub fn parse_dax(spec: &str) -> Result<DaxOracle, String> {
    match spec {
        "zero" => Ok(DaxOracle::AllZero),
        "nonzero" => Ok(DaxOracle::AllNonzero),
        "absent" => Ok(DaxOracle::Absent),
        _ => {
            let path = spec
                .strip_prefix("file:")
                .ok_or_else(|| format!("unknown dax spec `{spec}`: expected zero, nonzero, absent or file:PATH"))?;
            let text = read(&PathBuf::from(path))?;
            let bits: Vec<Bit> = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
            Ok(DaxOracle::PerGenerator(bits.into_iter().map(|b| b.0).collect()))
        }
    }
}

fn cmd_classify(
    path: Option<PathBuf>,
    builtin: Option<&str>,
    circle: &str,
    dax: &str,
    format: Format,
    strict: bool,
    limits: &Limits,
) -> Outcome {
    let x = match (builtin, path) {
        (Some(name), _) => match builtins::builtin(name) {
            Some(x) => x,
            None => return Outcome::fail(format!("unknown builtin `{name}`; try `flc builtin list`")),
        },
        (None, Some(p)) => match load(&p, limits) {
            Ok(x) => x,
            Err(e) => return Outcome::fail(e),
        },
        (None, None) => return Outcome::fail("classify needs a PATH or --builtin NAME"),
    };
    let c = match parse_circle(&x.pi1, circle) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(e),
    };
    let dax = match parse_dax(dax) {
        Ok(d) => d,
        Err(e) => return Outcome::fail(e),
    };
    let report = match classify(&x, &c, &dax, &limits.classify) {
        Ok(r) => r,
        Err(ClassifyError::Invalid(issues)) => {
            let mut s = format!("{}: invalid manifold data\n", x.name);
            for i in issues {
                let _ = writeln!(s, "  {i}");
            }
            return Outcome::fail(s);
        }
        Err(e) => return Outcome::fail(format!("{}: {e}", x.name)),
    };
    let file = ReportFile::from(&report);
    let stdout = match format {
        Format::Json => file.to_json(),
        Format::Text => file.to_text(),
    };
    let mut out = Outcome::ok(stdout);
    if strict && file.degraded {
        out.code = EXIT_DEGRADED;
        out.stderr = "degraded: some queries were left symbolic\n".into();
    }
    out
}

/// Every violation found in `file`, most basic first.
pub fn violations(file: &ManifoldFile, limits: &Limits) -> Vec<String> {
    match file.to_data(limits.max_order) {
        Err(LoadError::Table(v)) => v.into_iter().map(|s| format!("pi1.table: {s}")).collect(),
        Err(e) => vec![e.to_string()],
        Ok(x) => x.violations().iter().map(ToString::to_string).collect(),
    }
}

fn cmd_validate(path: &PathBuf, limits: &Limits) -> Outcome {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(e),
    };
    let file = match parse_manifold(&text) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(format!("{}: {e}", path.display())),
    };
    let v = violations(&file, limits);
    if v.is_empty() {
        return Outcome::ok("OK\n".into());
    }
    let mut s = String::new();
    for line in &v {
        let _ = writeln!(s, "{line}");
    }
    let _ = writeln!(s, "{} violation(s)", v.len());
    Outcome { code: EXIT_INVALID, stdout: s, stderr: String::new() }
}
