//! `lcdim`: cohomological-dimension analysis of subspace arrangements.
//!
//! Exit codes: 0 success, 1 hypothesis violation, 2 parse or usage error,
//! 3 internal invariant breach.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use lcdim_core::analysis::{analyze, analyze_multi_base, default_names, example_hl, AnalysisError};
use lcdim_core::complex::{SimplicialComplex, StockKind};
use lcdim_core::field::FieldSpec;
use lcdim_core::groebner::buchberger;
use lcdim_core::homology::{reduced_betti, relative_betti_pair};
use lcdim_core::mv::{bound_faltings, bound_hl, bound_main, bound_sum};
use lcdim_core::poly::{MonomialOrder, RingContext};
use lcdim_core::problem::{parse_problem_bytes, NamedIdeal, ProblemFile};
use lcdim_core::report::{digest, emit_multi, emit_report, search_value, to_machine_line, ReportFormat};
use lcdim_core::search::{search_char_dependence, SearchParams};

/// Environment variable capping the worker thread count.
const THREADS_VAR: &str = "LCDIM_THREADS";

#[derive(Parser)]
#[command(name = "lcdim", version, about = "Cohomological dimension of subspace arrangements via the complex Δ")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a problem file and report t, v, w and the verdicts.
    Analyze {
        file: PathBuf,
        /// Coefficient characteristics, e.g. 0,2,7.
        #[arg(long, value_delimiter = ',')]
        coeff_chars: Option<Vec<u64>>,
        #[arg(long)]
        dim_cap: Option<usize>,
        /// Single-line JSON instead of text.
        #[arg(long)]
        machine: bool,
    },
    /// Reduced (and optionally relative) Betti numbers of a complex.
    Homology {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        complex: Option<PathBuf>,
        /// full:N, sphere:N or rp2.
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        /// Degrees to report; all degrees from -1 when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degrees: Option<Vec<i64>>,
        /// Also report dim H_t(S, Δ) for this t.
        #[arg(long)]
        relative: Option<usize>,
        #[arg(long)]
        machine: bool,
    },
    /// The six-plane arrangement whose Δ triangulates the real projective plane.
    ExampleHl {
        /// Parameter a, an integer or p/q.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long = "char")]
        characteristic: u64,
        /// Write the problem file here instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Analyze the arrangement right away.
        #[arg(long)]
        analyze: bool,
        #[arg(long)]
        machine: bool,
    },
    /// Evaluate the vanishing bounds.
    Bounds {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        p: Option<i64>,
    },
    /// Reduced Gröbner basis of one ideal of a problem file.
    Gb {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
    },
    /// Random search for characteristic-dependent w.
    Search {
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        height: usize,
        #[arg(long)]
        primes: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,2,3")]
        coeff_chars: Vec<u64>,
        /// Characteristic of the field the arrangements live over.
        #[arg(long, default_value_t = 32003)]
        field_char: u64,
        /// Also examine the six-plane arrangement with a = 2.
        #[arg(long)]
        inject_example: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn hypothesis(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        Self {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn write_out(bytes: &[u8]) -> CmdResult {
    io::stdout()
        .write_all(bytes)
        .map_err(|e| Failure::usage(format!("cannot write output: {e}")))
}

fn fields(chars: &[u64]) -> Result<Vec<FieldSpec>, Failure> {
    chars
        .iter()
        .map(|&p| FieldSpec::new(p).map_err(|e| Failure::usage(e.to_string())))
        .collect()
}

fn read_problem(path: &Path) -> Result<(ProblemFile, Vec<u8>), Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let problem = parse_problem_bytes(&bytes).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((problem, bytes))
}

/// The base field characteristic plus 2 and 0, without repeats.
fn default_chars(base: u64) -> Vec<u64> {
    let mut out = vec![2, 0];
    if !out.contains(&base) {
        out.push(base);
    }
    out
}

fn run_analysis(problem: &ProblemFile, input: &[u8], chars: Option<Vec<u64>>, dim_cap: Option<usize>, machine: bool) -> CmdResult {
    let chars = chars
        .or_else(|| problem.coeff_chars.clone())
        .unwrap_or_else(|| default_chars(problem.ring.field().characteristic()));
    let chars = fields(&chars)?;
    let dim_cap = dim_cap.or(problem.dim_cap);
    let primes = problem.primes().map_err(|e| Failure::hypothesis(e.to_string()))?;
    let bases = problem.base_ideals().map_err(|e| Failure::hypothesis(e.to_string()))?;
    let names = problem.names();
    let format = if machine { ReportFormat::Machine } else { ReportFormat::Text };
    let input_digest = digest(input);
    match bases.len() {
        0 | 1 => {
            let mut report = analyze(&primes, &names, bases.first(), &chars, dim_cap)?;
            report.input_digest = Some(input_digest);
            write_out(&emit_report(&report, format))
        }
        _ => {
            let mut verdict = analyze_multi_base(&primes, &names, &bases, &chars, dim_cap)?;
            for r in &mut verdict.reports {
                r.input_digest = Some(input_digest.clone());
            }
            write_out(&emit_multi(&verdict, format))
        }
    }
}

fn parse_builtin(spec: &str) -> Result<StockKind, Failure> {
    let bad = || Failure::usage(format!("unknown builtin `{spec}`; use full:N, sphere:N or rp2"));
    if spec == "rp2" {
        return Ok(StockKind::Rp2SixVertex);
    }
    let (kind, n) = spec.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "full" if n >= 1 => Ok(StockKind::Full(n)),
        "sphere" if n >= 2 => Ok(StockKind::SphereBoundary(n)),
        _ => Err(bad()),
    }
}

fn homology(
    complex_path: Option<PathBuf>,
    builtin: Option<String>,
    characteristic: u64,
    degrees: Option<Vec<i64>>,
    relative: Option<usize>,
    machine: bool,
) -> CmdResult {
    let complex = match (complex_path, builtin) {
        (Some(path), _) => {
            let text = fs::read_to_string(&path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            SimplicialComplex::parse_text(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?
        }
        (None, Some(spec)) => SimplicialComplex::stock(&parse_builtin(&spec)?).map_err(|e| Failure::usage(e.to_string()))?,
        (None, None) => return Err(Failure::usage("give --complex or --builtin")),
    };
    let field = FieldSpec::new(characteristic).map_err(|e| Failure::usage(e.to_string()))?;
    let degrees = degrees.unwrap_or_else(|| (-1..=complex.dim_cap() as i64).collect());
    let profile = reduced_betti(&complex, field, &degrees).map_err(|e| Failure::usage(e.to_string()))?;
    let rel = relative
        .map(|t| relative_betti_pair(&complex, field, t).map(|v| (t, v)))
        .transpose()
        .map_err(|e| Failure::usage(e.to_string()))?;
    if machine {
        let mut m = serde_json::Map::new();
        m.insert("char".into(), characteristic.into());
        m.insert("counts".into(), serde_json::json!(complex.counts()));
        let mut red = serde_json::Map::new();
        for (&deg, &v) in &profile.reduced {
            red.insert(deg.to_string(), v.into());
        }
        m.insert("reduced".into(), red.into());
        if let Some((t, v)) = rel {
            let mut r = serde_json::Map::new();
            r.insert(t.to_string(), v.into());
            m.insert("relative".into(), r.into());
        }
        return write_out(&to_machine_line(&m.into()));
    }
    let mut out = String::new();
    let counts: Vec<String> = complex.counts().iter().map(ToString::to_string).collect();
    out.push_str(&format!("simplices per dimension: {}\n", counts.join(" ")));
    for (deg, v) in &profile.reduced {
        out.push_str(&format!("dim H̃_{deg} = {v}  (char {characteristic})\n"));
    }
    if let Some((t, v)) = rel {
        out.push_str(&format!("dim H_{t}(S, Δ) = {v}  (char {characteristic})\n"));
    }
    write_out(out.as_bytes())
}

fn parse_parameter(text: &str, field: FieldSpec) -> Result<lcdim_core::field::FieldElement, Failure> {
    let bad = || Failure::usage(format!("cannot read parameter `{text}`; use an integer or p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    field
        .from_ratio(&num, &den)
        .map_err(|e| Failure::hypothesis(format!("parameter a = {text}: {e}")))
}

fn example(a: String, characteristic: u64, emit: Option<PathBuf>, run: bool, machine: bool) -> CmdResult {
    let field = FieldSpec::new(characteristic).map_err(|e| Failure::usage(e.to_string()))?;
    let ring = RingContext::standard(field, 6).map_err(|e| Failure::usage(e.to_string()))?;
    let a = parse_parameter(&a, field)?;
    let primes = example_hl(&a, &ring)?;
    let problem = ProblemFile {
        ring: ring.clone(),
        ideals: primes
            .iter()
            .zip(default_names(6))
            .map(|(p, name)| NamedIdeal {
                name,
                generators: p.generators().to_vec(),
            })
            .collect(),
        bases: Vec::new(),
        coeff_chars: Some(default_chars(characteristic)),
        dim_cap: None,
    };
    let text = problem.to_text();
    match &emit {
        Some(path) => fs::write(path, &text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None if !run => write_out(text.as_bytes())?,
        None => {}
    }
    if run {
        run_analysis(&problem, text.as_bytes(), None, None, machine)?;
    }
    Ok(())
}

fn bounds(d: i64, c: i64, p: Option<i64>) -> CmdResult {
    let err = |e: lcdim_core::mv::BoundError| Failure::hypothesis(e.to_string());
    let mut out = format!("faltings: {}\nhl: {}\n", bound_faltings(d, c).map_err(err)?, bound_hl(d, c).map_err(err)?);
    let mut failure = None;
    if let Some(p) = p {
        out.push_str(&format!("sum(p={p}): {}\n", bound_sum(d, c, p).map_err(err)?));
        match bound_main(d, c, p) {
            Ok(b) => out.push_str(&format!("main(p={p}): {b}\n")),
            Err(e) => {
                out.push_str(&format!("main(p={p}): undefined\n"));
                failure = Some(err(e));
            }
        }
    }
    write_out(out.as_bytes())?;
    failure.map_or(Ok(()), Err)
}

fn groebner(file: &Path, name: &str, order: OrderArg) -> CmdResult {
    let (problem, _) = read_problem(file)?;
    let ideal = problem
        .ideals
        .iter()
        .chain(&problem.bases)
        .find(|i| i.name == name)
        .ok_or_else(|| Failure::usage(format!("no ideal named `{name}`")))?;
    let order = match order {
        OrderArg::Grevlex => MonomialOrder::Grevlex,
        OrderArg::Lex => MonomialOrder::Lex,
    };
    let gens: Vec<_> = ideal.generators.iter().map(|g| g.with_order(order)).collect();
    let basis = buchberger(&gens, order).map_err(|e| Failure {
        code: 3,
        message: e.to_string(),
    })?;
    let mut out = String::new();
    for g in basis.elements() {
        out.push_str(&format!("{g}\n"));
    }
    write_out(out.as_bytes())
}

#[allow(clippy::too_many_arguments)]
fn search(
    vars: usize,
    height: usize,
    primes: usize,
    trials: u64,
    seed: u64,
    coeff_chars: Vec<u64>,
    field_char: u64,
    inject_example: bool,
) -> CmdResult {
    let field = FieldSpec::new(field_char).map_err(|e| Failure::usage(e.to_string()))?;
    let params = SearchParams {
        n_vars: vars,
        height,
        n_primes: primes,
        trials,
        seed,
        field,
        characteristics: fields(&coeff_chars)?,
    };
    let mut injected = Vec::new();
    if inject_example {
        let ring = RingContext::standard(field, 6).map_err(|e| Failure::usage(e.to_string()))?;
        injected.push(example_hl(&field.from_i64(2), &ring)?);
    }
    let outcome = search_char_dependence(&params, &injected)?;
    write_out(&to_machine_line(&search_value(&outcome, seed)))
}

fn configure_threads() -> CmdResult {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::usage(format!("{THREADS_VAR} must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::usage(e.to_string()))
}

fn run(cli: Cli) -> CmdResult {
    configure_threads()?;
    match cli.command {
        Command::Analyze {
            file,
            coeff_chars,
            dim_cap,
            machine,
        } => {
            let (problem, bytes) = read_problem(&file)?;
            run_analysis(&problem, &bytes, coeff_chars, dim_cap, machine)
        }
        Command::Homology {
            complex,
            builtin,
            characteristic,
            degrees,
            relative,
            machine,
        } => homology(complex, builtin, characteristic, degrees, relative, machine),
        Command::ExampleHl {
            a,
            characteristic,
            emit,
            analyze,
            machine,
        } => example(a, characteristic, emit, analyze, machine),
        Command::Bounds { d, c, p } => bounds(d, c, p),
        Command::Gb { file, ideal, order } => groebner(&file, &ideal, order),
        Command::Search {
            vars,
            height,
            primes,
            trials,
            seed,
            coeff_chars,
            field_char,
            inject_example,
        } => search(vars, height, primes, trials, seed, coeff_chars, field_char, inject_example),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
