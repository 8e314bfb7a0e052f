//! `gateforge` command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::canonical::{decompose_matrix, CanonicalDecomposition};
use crate::circuit::{self, CompilationReport};
use crate::classify::classify;
use crate::codec::{gate_to_json, parse_gate, parse_gate_matrix};
use crate::crot::compile_with;
use crate::error::Error;
use crate::matrix::{phase_distance, CMat, LocalPair, TwoQubitGate, CNOT};
use crate::random::haar_two_qubit;
use crate::tolerance::{Tolerances, CLASSIFY_TOL, UNITARY_TOL, VERIFY_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_PRIMITIVE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "gateforge", version, about = "Compile any entangling two-qubit gate into CNOT")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CliConfig {
    /// Gate file (gateforge-gate/1).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Program file for `compile`, directory for `random`.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, global = true, default_value_t = UNITARY_TOL)]
    pub tol_unitary: f64,
    #[arg(long = "tol-class", global = true, default_value_t = CLASSIFY_TOL)]
    pub tol_classify: f64,
    #[arg(long, global = true, default_value_t = VERIFY_TOL)]
    pub tol_verify: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl CliConfig {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances { unitary: self.tol_unitary, classify: self.tol_classify, verify: self.tol_verify }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Print the canonical decomposition of the input gate.
    Decompose,
    /// Report whether the input gate is primitive.
    Classify,
    /// Compile the input gate into a CNOT program.
    Compile,
    /// Check a program against the input gate.
    Verify {
        #[arg(long)]
        program: PathBuf,
    },
    /// Emit Haar-random gate files.
    Random {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
    /// Report text still worth printing on stdout.
    pub output: Option<String>,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), output: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::NonUnitaryInput { .. }
            | Error::NonUnitaryLocal { .. }
            | Error::InvalidAxis { .. }
            | Error::InvalidAngle { .. }
            | Error::NonNormalizedState { .. } => EXIT_INVALID,
            Error::PrimitiveGate(_) => EXIT_PRIMITIVE,
            Error::VerificationFailed { .. } => EXIT_VERIFY,
            _ => EXIT_INTERNAL,
        };
        Failure::new(code, e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            EXIT_OK
        }
        Err(f) => {
            if let Some(out) = &f.output {
                print!("{out}");
                let _ = std::io::stdout().flush();
            }
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command and returns its stdout text.
pub fn execute(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    for (name, v) in [
        ("--tol-unitary", cfg.tol_unitary),
        ("--tol-class", cfg.tol_classify),
        ("--tol-verify", cfg.tol_verify),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Failure::new(EXIT_INVALID, format!("{name} must be positive, got {v}")));
        }
    }
    match &cli.command {
        Command::Decompose => cmd_decompose(cfg),
        Command::Classify => cmd_classify(cfg),
        Command::Compile => cmd_compile(cfg),
        Command::Verify { program } => cmd_verify(cfg, program),
        Command::Random { count } => cmd_random(cfg, *count),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_INVALID, format!("cannot read {}: {e}", path.display())))
}

fn load_gate(cfg: &CliConfig) -> std::result::Result<TwoQubitGate, Failure> {
    let path = cfg
        .input
        .as_deref()
        .ok_or_else(|| Failure::new(EXIT_INVALID, "--input is required"))?;
    let text = read(path)?;
    let matrix = parse_gate_matrix(&text).map_err(|e| located(e, path))?;
    TwoQubitGate::with_tolerance(matrix, cfg.tol_unitary).map_err(|e| {
        let (_, r, c) = matrix.unitarity_defect();
        let mut f = located(e, path);
        f.message.push_str(&format!(" (worst entry of U^dagger U at [{r}][{c}])"));
        f
    })
}

fn located(e: Error, path: &Path) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn decomposition(cfg: &CliConfig) -> std::result::Result<CanonicalDecomposition, Failure> {
    let u = load_gate(cfg)?;
    Ok(decompose_matrix(u.matrix(), cfg.tol_unitary)?)
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("report serializes");
    s.push('\n');
    s
}

/// Rounds to 12 significant digits for display.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".to_string()
    } else if (1e-4..1e12).contains(&rounded.abs()) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

fn fmt_triple(t: [f64; 3]) -> String {
    format!("[{}, {}, {}]", sig12(t[0]), sig12(t[1]), sig12(t[2]))
}

fn fmt_matrix<const N: usize>(m: &CMat<N>) -> String {
    let rows: Vec<String> = m
        .0
        .iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|z| format!("{}{}i", sig12(z.re), signed(z.im))).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn signed(x: f64) -> String {
    let s = sig12(x);
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

fn fmt_pair(p: &LocalPair) -> String {
    format!("A = {}\n  B = {}", fmt_matrix(p.first.matrix()), fmt_matrix(p.second.matrix()))
}

pub fn cmd_decompose(cfg: &CliConfig) -> Outcome {
    let cd = decomposition(cfg)?;
    if cfg.format == Format::Json {
        return Ok(json_line(&cd.to_report()));
    }
    Ok(format!(
        "theta         {}\nglobal_phase  {}\nafter\n  {}\nbefore\n  {}\n",
        fmt_triple(cd.core.as_array()),
        sig12(cd.global_phase),
        fmt_pair(&cd.after),
        fmt_pair(&cd.before),
    ))
}

pub fn cmd_classify(cfg: &CliConfig) -> Outcome {
    let cd = decomposition(cfg)?;
    let class = classify(&cd, cfg.tol_classify);
    if cfg.format == Format::Json {
        return Ok(json_line(&json!({ "class": class, "theta": cd.core.as_array() })));
    }
    Ok(format!("class  {class}\ntheta  {}\n", fmt_triple(cd.core.as_array())))
}

fn report_text(r: &CompilationReport) -> String {
    format!(
        "class            {}\ncase             {}\ntheta            {}\nphi              {}\nq                {}\n\
         uses_of_u        {}\none_qubit_gates  {}\nlower_bound      {}\nratio            {}\nresidual         {}\n",
        r.gate_class,
        r.case_tag,
        fmt_triple(r.theta),
        sig12(r.phi),
        r.q,
        r.uses_of_u,
        r.one_qubit_gate_count,
        sig12(r.lower_bound_uses),
        sig12(r.ratio),
        sig12(r.verification_residual),
    )
}

pub fn cmd_compile(cfg: &CliConfig) -> Outcome {
    let u = load_gate(cfg)?;
    let c = compile_with(&u, &cfg.tolerances())?;
    if let Some(path) = &cfg.output {
        fs::write(path, circuit::serialize(&c.program)).map_err(|e| {
            Failure::new(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display()))
        })?;
    }
    Ok(match cfg.format {
        Format::Json => format!("{}\n", c.report.to_json()),
        Format::Text => report_text(&c.report),
    })
}

pub fn cmd_verify(cfg: &CliConfig, program: &Path) -> Outcome {
    let p = circuit::parse(&read(program)?).map_err(|e| located(e, program))?;
    let u = load_gate(cfg)?;
    let residual = phase_distance(circuit::evaluate(&p, &u).matrix(), &CNOT);
    let ok = residual <= cfg.tol_verify;
    let out = match cfg.format {
        Format::Json => json_line(&json!({
            "residual": residual,
            "tolerance": cfg.tol_verify,
            "uses_of_u": p.uses_of_u(),
            "ok": ok,
        })),
        Format::Text => format!(
            "residual   {}\nuses_of_u  {}\nstatus     {}\n",
            sig12(residual),
            p.uses_of_u(),
            if ok { "ok" } else { "FAILED" }
        ),
    };
    if ok {
        Ok(out)
    } else {
        let mut f = Failure::from(Error::VerificationFailed { residual, tolerance: cfg.tol_verify });
        f.output = Some(out);
        Err(f)
    }
}

pub fn cmd_random(cfg: &CliConfig, count: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let docs: Vec<String> = (0..count).map(|_| gate_to_json(&haar_two_qubit(&mut rng))).collect();
    let Some(dir) = &cfg.output else {
        return Ok(docs.iter().map(|d| format!("{d}\n")).collect());
    };
    fs::create_dir_all(dir)
        .map_err(|e| Failure::new(EXIT_INTERNAL, format!("cannot create {}: {e}", dir.display())))?;
    let mut listing = String::new();
    for (k, doc) in docs.iter().enumerate() {
        let path = dir.join(format!("gate_{k:04}.json"));
        fs::write(&path, format!("{doc}\n"))
            .map_err(|e| Failure::new(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))?;
        // Generated files must be readable back at the strictest tolerance.
        debug_assert!(parse_gate(doc, 1e-12).is_ok());
        listing.push_str(&format!("{}\n", path.display()));
    }
    Ok(listing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig12_rounds() {
        assert_eq!(sig12(std::f64::consts::FRAC_PI_4), "0.785398163397");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-1.25e-17), "-1.25e-17");
        assert_eq!(sig12(2.0 / 3.0), "0.666666666667");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(["gateforge", "compile", "--input", "g.json", "--tol-class", "1e-6"]).unwrap();
        assert!(matches!(cli.command, Command::Compile));
        assert_eq!(cli.config.tol_classify, 1e-6);
        assert_eq!(cli.config.seed, 0);
        assert!(Cli::try_parse_from(["gateforge", "random", "--count", "0"]).is_err());
    }
}
