//! The `germlab` command line.

mod render;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::connectivity::{analyze, DSpec};
use crate::error::{invalid, Error, Result};
use crate::germs::{bigerm_from_hypersurface, bigerm_stabilization, milnor_number, GermFile};
use crate::icss::{a_mu_betti, bigerm_absolute, bigerm_model, check_augmented_exactness, run_absolute, run_icss};
use crate::icss::{AbsoluteModel, IcssModel};
use crate::linalg::Matrix;
use crate::monodromy::{
    charpoly, jordan_data, monodromy_bounds, propagate_icss_monodromy, random_suite, root_of_unity_certificate,
    MatrixFile, SuiteKind,
};
use crate::multiple_points::{check_specialization, gaffney_multiple_points, strict_multiple_points, union_dim, Route};
use crate::poly::{parse_rational, Polynomial, Ring};

pub use render::render_text;

#[derive(Debug, Parser)]
#[command(
    name = "germlab",
    version,
    about = "Multiple point spaces, connectivity windows and monodromy of map germs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Add wall-clock timing to the report (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// K-finiteness, corank, multiple point dimensions and vanishing windows.
    Analyze {
        germ_file: PathBuf,
        /// Instability dimension: an integer, `empty`, or `auto-bigerm`.
        #[arg(long = "d", default_value = "auto-bigerm")]
        d: String,
        #[arg(long = "kmax")]
        k_max: Option<usize>,
    },
    /// Multiple point spaces D^k(f) or their strict versions.
    Mpoints {
        germ_file: PathBuf,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        #[arg(long, default_value = "divided-diff")]
        route: String,
        /// Strict spaces: closures of tuples of pairwise distinct points.
        #[arg(long)]
        strict: bool,
        /// Compare the slice of the unfolding at this parameter value with the member germ.
        #[arg(long)]
        specialize: Option<String>,
    },
    /// Pages of the image computing spectral sequence of a model file.
    Icss {
        model_file: PathBuf,
        /// Treat the file as an absolute model and check exactness against its image cohomology.
        #[arg(long)]
        absolute: bool,
    },
    /// Jordan data, bounds and property suites for monodromy.
    Monodromy {
        /// Matrix file, or ICSS model file with `--propagate`.
        file: Option<PathBuf>,
        /// Carry the model's fibre monodromy through the spectral sequence.
        #[arg(long)]
        propagate: bool,
        /// Block-size bounds for source dimension n, target dimension p and degree ell.
        #[arg(long, num_args = 3, value_names = ["N", "P", "ELL"])]
        bounds: Option<Vec<u64>>,
        /// Assert that the instability is isolated (with `--bounds`).
        #[arg(long)]
        isolated: bool,
        /// Run a seeded random property suite.
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
    /// Bi-germ (x, g(x)) ⊔ (x, 0) of a hypersurface and its models.
    Bigerm {
        /// Polynomial g, literally or as a file (plain text or `{"vars", "g"}` JSON).
        #[arg(long = "from-hypersurface")]
        from_hypersurface: String,
        /// Variables of g; inferred from the text when omitted.
        #[arg(long, value_delimiter = ',')]
        vars: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Emit::Germ)]
        emit: Emit,
        /// Betti numbers of the Milnor fibre; the A_mu profile from the Milnor number otherwise.
        #[arg(long, value_delimiter = ',')]
        betti: Option<Vec<usize>>,
        /// Write the emitted file here instead of embedding it in the report.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Cm1,
    Cm2,
    Conjugation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Germ,
    Model,
    Absolute,
}

/// Envelope of every command's output.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    /// Key-sorted JSON value.
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("reports serialise")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("reports serialise");
                s.push('\n');
                s
            }
            Format::Text => render_text(&self.to_value()),
        }
    }
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::Invalid(_) | Error::Model(_) => 2,
        Error::ResourceLimit(_) => 3,
        Error::NonCyclotomic(_) | Error::Unsupported(_) => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialise")
}

fn push_unique(out: &mut Vec<String>, items: impl IntoIterator<Item = String>) {
    for f in items {
        if !out.contains(&f) {
            out.push(f);
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report> {
    if let Ok(spec) = std::env::var("GERMLAB_BUDGET") {
        Budget::parse(&spec).map_err(|e| Error::Parse(format!("GERMLAB_BUDGET: {e}")))?;
    }
    let start = Instant::now();
    let (command, inputs, results, warnings) = match &cli.command {
        Command::Analyze { germ_file, d, k_max } => cmd_analyze(germ_file, d, *k_max)?,
        Command::Mpoints {
            germ_file,
            k,
            route,
            strict,
            specialize,
        } => cmd_mpoints(germ_file, *k, route, *strict, specialize.as_deref())?,
        Command::Icss { model_file, absolute } => cmd_icss(model_file, *absolute)?,
        Command::Monodromy {
            file,
            propagate,
            bounds,
            isolated,
            suite,
            seed,
            cases,
        } => cmd_monodromy(
            file.as_deref(),
            *propagate,
            bounds.as_deref(),
            *isolated,
            *suite,
            *seed,
            *cases,
        )?,
        Command::Bigerm {
            from_hypersurface,
            vars,
            emit,
            betti,
            output,
        } => cmd_bigerm(
            from_hypersurface,
            vars.as_deref(),
            *emit,
            betti.as_deref(),
            output.as_deref(),
        )?,
    };
    Ok(Report {
        command: command.to_string(),
        inputs,
        results,
        warnings,
        version: env!("CARGO_PKG_VERSION").to_string(),
        timing_ms: cli.common.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

type Outcome = (&'static str, Value, Value, Vec<String>);

fn cmd_analyze(path: &Path, d: &str, k_max: Option<usize>) -> Result<Outcome> {
    let file = GermFile::from_json_str(&read(path)?)?;
    let spec: DSpec = d.parse()?;
    let a = analyze(&file.germ, spec, k_max, file.unfolding.as_ref())?;
    let warnings = a.flags.clone();
    let inputs = json!({ "germ_file": path.display().to_string(), "d": d, "kmax": k_max });
    Ok(("analyze", inputs, to_value(&a), warnings))
}

fn cmd_mpoints(path: &Path, k: usize, route: &str, strict: bool, specialize: Option<&str>) -> Result<Outcome> {
    let file = GermFile::from_json_str(&read(path)?)?;
    let g = &file.germ;
    let route: Route = route.parse()?;
    let mut warnings = Vec::new();
    let inputs = json!({
        "germ_file": path.display().to_string(),
        "k": k,
        "route": route,
        "strict": strict,
        "specialize": specialize,
    });
    let expected = k as i64 * g.n() as i64 - (k as i64 - 1) * g.p() as i64;
    let (kind, spaces) = if strict {
        ("strict", strict_multiple_points(g, k)?)
    } else {
        let r = gaffney_multiple_points(g, k, route, file.unfolding.as_ref())?;
        push_unique(&mut warnings, r.flags.clone());
        ("gaffney", r.spaces)
    };
    let dim = union_dim(&spaces);
    let correct = dim.value().is_none_or(|d| d as i64 == expected);
    if !correct {
        warnings.push(format!(
            "not dimensionally correct: dim {dim} but expected {expected} for k = {k}"
        ));
    }
    let mut results = json!({
        "k": k,
        "kind": kind,
        "route": if strict { Value::Null } else { to_value(&route) },
        "spaces": to_value(&spaces),
        "dim": to_value(&dim),
        "expected_dim": expected,
        "correct": correct,
    });
    if let Some(v) = specialize {
        let u = file
            .unfolding
            .as_ref()
            .ok_or_else(|| invalid("--specialize needs an unfolding in the germ file"))?;
        let r = check_specialization(u, k, &parse_rational(v)?)?;
        results["specialization"] = to_value(&r);
    }
    Ok(("mpoints", inputs, results, warnings))
}

fn cmd_icss(path: &Path, absolute: bool) -> Result<Outcome> {
    let text = read(path)?;
    let inputs = json!({ "model_file": path.display().to_string(), "absolute": absolute });
    if absolute {
        let m = AbsoluteModel::from_json_str(&text)?;
        let ss = run_absolute(&m)?;
        let ex = check_augmented_exactness(&m)?;
        let results = json!({ "spectral_sequence": to_value(&ss), "augmented_exactness": to_value(&ex) });
        return Ok(("icss", inputs, results, Vec::new()));
    }
    let m = IcssModel::from_json_str(&text)?;
    let ss = run_icss(&m)?;
    let mut results = json!({
        "spectral_sequence": to_value(&ss),
        "reduced_betti": to_value(&ss.total_cohomology),
    });
    if m.has_monodromy() {
        results["monodromy"] = to_value(&propagate_icss_monodromy(&m)?);
    }
    Ok(("icss", inputs, results, Vec::new()))
}

fn matrix_report(h: &Matrix, degree: Option<usize>) -> Result<Value> {
    let j = jordan_data(h)?;
    let supp: Vec<Value> = j
        .supp()
        .iter()
        .map(|e| json!({ "order": e.order, "exponent": e.exponent, "value": e.to_string() }))
        .collect();
    Ok(json!({
        "degree": degree,
        "dim": h.rows(),
        "charpoly": charpoly(h).to_string(),
        "jordan": to_value(&j),
        "supp": supp,
        "max_jordan": j.max_jordan(),
        "root_of_unity_certificate": root_of_unity_certificate(h, &j),
    }))
}

fn cmd_monodromy(
    file: Option<&Path>,
    propagate: bool,
    bounds: Option<&[u64]>,
    isolated: bool,
    suite: Option<SuiteArg>,
    seed: u64,
    cases: usize,
) -> Result<Outcome> {
    let inputs = json!({
        "file": file.map(|p| p.display().to_string()),
        "propagate": propagate,
        "bounds": bounds,
        "isolated": isolated,
        "suite": suite.map(|s| format!("{s:?}").to_lowercase()),
        "seed": seed,
        "cases": cases,
    });
    let mut results = serde_json::Map::new();
    let mut warnings = Vec::new();
    if let Some(path) = file {
        let text = read(path)?;
        if propagate {
            let m = IcssModel::from_json_str(&text)?;
            if !m.has_monodromy() {
                warnings.push("model carries no monodromy; the identity is used".to_string());
            }
            results.insert("propagation".into(), to_value(&propagate_icss_monodromy(&m)?));
        } else {
            let (degree, h) = MatrixFile::from_json_str(&text)?;
            results.insert("matrix".into(), matrix_report(&h, degree)?);
        }
    } else if propagate {
        return Err(invalid("--propagate needs a model file"));
    }
    if let Some(b) = bounds {
        let r = monodromy_bounds(b[0], b[1], b[2], isolated)?;
        push_unique(&mut warnings, r.flags.clone());
        results.insert("bounds".into(), to_value(&r));
    }
    if let Some(s) = suite {
        let kind = match s {
            SuiteArg::Cm1 => SuiteKind::Cm1,
            SuiteArg::Cm2 => SuiteKind::Cm2,
            SuiteArg::Conjugation => SuiteKind::Conjugation,
        };
        results.insert("suite".into(), to_value(&random_suite(kind, seed, cases, 6)?));
    }
    if results.is_empty() {
        return Err(invalid("nothing to do: give a file, --bounds or --suite"));
    }
    Ok(("monodromy", inputs, Value::Object(results), warnings))
}

/// Identifiers in a polynomial text, sorted.
fn infer_vars(text: &str) -> Vec<String> {
    let mut vars: Vec<String> = Vec::new();
    let mut cur = String::new();
    for c in text.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphabetic() || (!cur.is_empty() && (c.is_ascii_digit() || c == '_')) {
            cur.push(c);
        } else if !cur.is_empty() {
            if !vars.contains(&cur) {
                vars.push(std::mem::take(&mut cur));
            } else {
                cur.clear();
            }
        }
    }
    vars.sort();
    vars
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct HypersurfaceJson {
    vars: Vec<String>,
    g: String,
}

fn parse_hypersurface(arg: &str, vars: Option<&[String]>) -> Result<Polynomial> {
    let text = if Path::new(arg).is_file() {
        read(Path::new(arg))?
    } else {
        arg.to_string()
    };
    let trimmed = text.trim();
    let (vars, body) = if trimmed.starts_with('{') {
        let j: HypersurfaceJson = serde_json::from_str(trimmed)?;
        (j.vars, j.g)
    } else {
        let v = vars.map(<[String]>::to_vec).unwrap_or_else(|| infer_vars(trimmed));
        (v, trimmed.to_string())
    };
    if vars.is_empty() {
        return Err(Error::Parse("hypersurface has no variables".into()));
    }
    Ring::new(vars)?.parse(&body)
}

fn cmd_bigerm(
    arg: &str,
    vars: Option<&[String]>,
    emit: Emit,
    betti: Option<&[usize]>,
    output: Option<&Path>,
) -> Result<Outcome> {
    let g = parse_hypersurface(arg, vars)?;
    let mut warnings = Vec::new();
    let inputs = json!({
        "from_hypersurface": arg,
        "g": g.to_string(),
        "vars": g.ring().vars(),
        "emit": emit,
        "betti": betti,
        "output": output.map(|p| p.display().to_string()),
    });
    let mu = milnor_number(&g)?;
    let betti_profile = || -> Result<Vec<usize>> {
        match (betti, mu) {
            (Some(b), _) => Ok(b.to_vec()),
            (None, Some(mu)) => Ok(a_mu_betti(g.ring().nvars(), mu)),
            (None, None) => Err(invalid("g has a non-isolated singularity: supply --betti")),
        }
    };
    let (emitted, mut results) = match emit {
        Emit::Germ => {
            let b = bigerm_from_hypersurface(&g)?;
            let mut j = b.to_json();
            let u = bigerm_stabilization(&b)?;
            let uj = u.to_json();
            j.params = uj.params;
            j.unfolded_components = uj.unfolded_components;
            (to_value(&j), json!({}))
        }
        Emit::Model => {
            let b = betti_profile()?;
            if betti.is_some() {
                warnings.push("fibre Betti numbers supplied by the user".to_string());
            }
            (to_value(&bigerm_model(&b, None)?.to_json()), json!({ "betti": b }))
        }
        Emit::Absolute => {
            let b = betti_profile()?;
            (to_value(&bigerm_absolute(&b)?.to_json()), json!({ "betti": b }))
        }
    };
    results["milnor_number"] = to_value(&mu);
    match output {
        Some(path) => {
            let mut s = serde_json::to_string_pretty(&emitted).expect("serialise");
            s.push('\n');
            std::fs::write(path, s).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            results["written"] = json!(path.display().to_string());
        }
        None => results["emitted"] = emitted,
    }
    Ok(("bigerm", inputs, results, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variables_are_inferred() {
        assert_eq!(infer_vars("x^2*y + 3*z1 - x"), vec!["x", "y", "z1"]);
        assert_eq!(infer_vars("x_1*x_2"), vec!["x_1", "x_2"]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse(String::new())), 2);
        assert_eq!(exit_code(&Error::ResourceLimit(String::new())), 3);
        assert_eq!(exit_code(&Error::NonCyclotomic(String::new())), 1);
    }

    #[test]
    fn bigerm_germ_report() {
        let cli = Cli::parse_from(["germlab", "bigerm", "--from-hypersurface", "x*y"]);
        let r = execute(&cli).unwrap();
        let germ = &r.results["emitted"];
        assert_eq!(germ["branches"].as_array().unwrap().len(), 2);
        assert_eq!(r.results["milnor_number"], json!(1));
    }

    #[test]
    fn bounds_without_file() {
        let cli = Cli::parse_from(["germlab", "monodromy", "--bounds", "16", "21", "3", "--isolated"]);
        let r = execute(&cli).unwrap();
        assert_eq!(r.results["bounds"]["general_bound"], json!(6));
    }
}
