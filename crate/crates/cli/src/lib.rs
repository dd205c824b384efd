//! Command-line front end for `torsig`.
//!
//! [`run`] parses arguments, dispatches to the library and returns the exit
//! status together with whatever should go to stdout. Every JSON document is
//! built from one of the `*Output` structs below, which double as the schema.

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use torsig::algebraic::{bound_report, dd_counterexample, kd_squared};
use torsig::fourier::{self, signatures_equal, EqualityVerdict};
use torsig::knot::{newton_to_cables, parse_knot_descriptor, parse_newton_descriptor, parse_triple_set};
use torsig::rat::{self, Rational};
use torsig::rho::{rho_algebraic, rho_closed, rho_integral};
use torsig::seifert::{oracle_check, OracleRow};
use torsig::signature::{dd_link_step_function, knot_signature_function, signature_at, step_function_triple};
use torsig::{CableTriple, StepFunction};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "torsig", version, about = "Tristram-Levine signatures and rho invariants of iterated torus knots")]
pub struct Cli {
    /// Write output to this file instead of stdout
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Signature step function of an iterated torus knot
    Signature(SignatureArgs),
    /// rho invariant (integral of the signature function)
    Rho(RhoArgs),
    /// Normalised Fourier transform of s_{p,q;r}
    Fourier(FourierArgs),
    /// Decide whether two sums of s_{p,q;r} agree
    Compare(CompareArgs),
    /// Singularity invariants from Newton pairs
    Algebraic(AlgebraicArgs),
    /// Signature function of the (d,d) torus link
    LinkDd(LinkDdArgs),
    /// Check s_{p,q} against signatures of braid-closure Seifert matrices
    OracleCheck(OracleArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoMethod {
    #[default]
    Closed,
    Integral,
}

#[derive(Args, Debug)]
pub struct SignatureArgs {
    /// Knot descriptor, outermost cable first, e.g. "(2,5);(2,3)"
    #[arg(long)]
    pub knot: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Emit plot-ready (x, value) rows as CSV
    #[arg(long)]
    pub plot: bool,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    /// Evaluate at a single point "num/den" instead
    #[arg(long, conflicts_with = "plot")]
    pub at: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input")]
pub struct RhoInput {
    #[arg(long)]
    pub knot: Option<String>,
    /// Newton descriptor, e.g. "N:(2,3);(2,1)"
    #[arg(long)]
    pub newton: Option<String>,
}

#[derive(Args, Debug)]
pub struct RhoArgs {
    #[command(flatten)]
    pub input: RhoInput,
    #[arg(long, value_enum, default_value_t)]
    pub method: RhoMethod,
}

#[derive(Args, Debug)]
pub struct FourierArgs {
    /// "p,q,r"
    #[arg(long)]
    pub triple: String,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub beta_im: f64,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Triples "p,q,r" separated by ';'
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Args, Debug)]
pub struct AlgebraicArgs {
    #[arg(long)]
    pub newton: String,
}

#[derive(Args, Debug)]
pub struct LinkDdArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 7)]
    pub p_max: u64,
    #[arg(long, default_value_t = 7)]
    pub q_max: u64,
    #[arg(long, default_value_t = 25)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: TableFormat,
}

// Output schemas. Rationals are "num/den" strings.

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SignatureOutput {
    pub knot: String,
    pub breakpoints: Vec<String>,
    pub values: Vec<i64>,
    pub integral: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PointOutput {
    pub knot: String,
    pub x: String,
    pub value: String,
    pub jump: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct RhoOutput {
    pub knot: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub newton: Option<String>,
    pub rho: String,
    pub method: RhoMethod,
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq)]
pub struct ComplexOutput {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexOutput {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq)]
pub struct TransformOutput {
    /// `n(t)`, or the residue when `pole` is set
    pub value: ComplexOutput,
    pub pole: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct FourierOutput {
    pub triple: String,
    pub beta: ComplexOutput,
    pub closed: ComplexOutput,
    pub numeric: ComplexOutput,
    pub n: TransformOutput,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ResidueOutput {
    pub multiple: u64,
    pub residue: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CompareOutput {
    pub left: String,
    pub right: String,
    pub verdict: bool,
    pub condition_a: bool,
    pub weight_left: String,
    pub weight_right: String,
    pub condition_b: bool,
    pub max_residue: f64,
    pub residue_tolerance: f64,
    pub period_multiple: u64,
    pub residues: Vec<ResidueOutput>,
    pub pointwise_confirmed: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct AlgebraicOutput {
    pub newton: String,
    pub knot: String,
    pub a: Vec<u64>,
    pub kd_squared: String,
    pub h_squared: String,
    pub rho: String,
    pub delta: String,
    pub sharp_bound: String,
    pub delta_positive: bool,
    pub delta_below_two_ninths: bool,
    pub delta_below_sharp_bound: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct LinkDdOutput {
    pub d: u64,
    pub breakpoints: Vec<String>,
    pub values: Vec<i64>,
    pub integral: String,
    pub h_squared: String,
    pub delta: String,
    pub delta_in_unibranch_range: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct MismatchOutput {
    pub x: String,
    pub tl_signature: i64,
    pub s_pq: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OracleRowOutput {
    pub p: u64,
    pub q: u64,
    pub matrix_size: usize,
    pub samples: usize,
    pub agree: usize,
    pub indeterminate: usize,
    pub mismatches: Vec<MismatchOutput>,
    pub passed: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct OracleOutput {
    pub seed: u64,
    pub rows: Vec<OracleRowOutput>,
    pub passed: bool,
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<torsig::Error> for Failure {
    fn from(e: torsig::Error) -> Self {
        let code = if e.is_validation() { EXIT_VALIDATION } else { EXIT_INTERNAL };
        Failure { code, message: e.to_string() }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_VALIDATION, message: message.into() }
}

/// Successful output. `code` is nonzero when the computation finished but
/// found a broken invariant worth reporting in full (oracle mismatches).
#[derive(Debug)]
pub struct Success {
    pub code: i32,
    pub text: String,
}

fn ok(text: String) -> Success {
    Success { code: EXIT_OK, text }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure { code: EXIT_INTERNAL, message: e.to_string() })
}

fn formatted(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(rat::format).collect()
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    let x = rat::parse(text)?;
    if !rat::in_unit_interval(&x) {
        return Err(invalid(format!("x = {text} is outside [0, 1]")));
    }
    Ok(x)
}

fn triple_set_string(set: &[CableTriple]) -> String {
    set.iter().map(ToString::to_string).collect::<Vec<_>>().join(";")
}

/// CSV rows `x,value` for plotting; breakpoints appear twice so jumps render
/// as vertical segments.
pub fn emit_plot_data(f: &StepFunction, samples: usize) -> Result<String, Failure> {
    let mut out = String::from("x,value\n");
    for (x, v) in f.plot_rows(samples)? {
        out.push_str(&format!("{},{v}\n", rat::format(&x)));
    }
    Ok(out)
}

fn signature(args: &SignatureArgs) -> Result<Success, Failure> {
    let knot = parse_knot_descriptor(&args.knot)?;
    if let Some(at) = &args.at {
        let x = parse_rational(at)?;
        let pv = signature_at(&knot, &x)?;
        if args.format == Format::Csv {
            return Ok(ok(format!("x,value,jump\n{},{},{}\n", rat::format(&x), rat::format(&pv.value), pv.jump)));
        }
        let out = PointOutput { knot: knot.to_string(), x: rat::format(&x), value: rat::format(&pv.value), jump: pv.jump };
        return json(&out).map(ok);
    }
    let f = knot_signature_function(&knot);
    if args.plot {
        return emit_plot_data(&f, args.samples).map(ok);
    }
    match args.format {
        Format::Csv => Ok(ok(f.to_csv())),
        Format::Json => json(&SignatureOutput {
            knot: knot.to_string(),
            breakpoints: formatted(f.breakpoints()),
            values: f.values().to_vec(),
            integral: rat::format(&f.integral()),
        })
        .map(ok),
    }
}

fn rho(args: &RhoArgs) -> Result<Success, Failure> {
    let (knot, newton, closed) = match (&args.input.knot, &args.input.newton) {
        (Some(k), None) => {
            let knot = parse_knot_descriptor(k)?;
            let closed = rho_closed(&knot);
            (knot, None, closed)
        }
        (None, Some(n)) => {
            let np = parse_newton_descriptor(n)?;
            let (knot, _) = newton_to_cables(&np);
            (knot, Some(np.to_string()), rho_algebraic(&np))
        }
        _ => return Err(invalid("give exactly one of --knot or --newton")),
    };
    let rho = match args.method {
        RhoMethod::Closed => closed,
        RhoMethod::Integral => rho_integral(&knot),
    };
    json(&RhoOutput { knot: knot.to_string(), newton, rho: rat::format(&rho), method: args.method }).map(ok)
}

fn fourier_cmd(args: &FourierArgs) -> Result<Success, Failure> {
    let set = parse_triple_set(&args.triple)?;
    let [t] = set.as_slice() else {
        return Err(invalid(format!("expected one triple p,q,r, got {}", set.len())));
    };
    if !args.beta.is_finite() || !args.beta_im.is_finite() {
        return Err(invalid("beta must be finite"));
    }
    let beta = Complex64::new(args.beta, args.beta_im);
    let closed = fourier::fourier_closed(t.p, t.q, t.r, beta)?;
    let numeric = fourier::fourier_numeric(&step_function_triple(t), beta);
    let n = fourier::n_triple(t, beta * std::f64::consts::FRAC_PI_2);
    json(&FourierOutput {
        triple: t.to_string(),
        beta: beta.into(),
        closed: closed.into(),
        numeric: numeric.into(),
        n: TransformOutput { value: n.value.into(), pole: n.pole },
    })
    .map(ok)
}

fn compare(args: &CompareArgs) -> Result<Success, Failure> {
    let left = parse_triple_set(&args.left)?;
    let right = parse_triple_set(&args.right)?;
    let v: EqualityVerdict = signatures_equal(&left, &right);
    json(&CompareOutput {
        left: triple_set_string(&left),
        right: triple_set_string(&right),
        verdict: v.verdict,
        condition_a: v.condition_a,
        weight_left: rat::format(&v.weight_left),
        weight_right: rat::format(&v.weight_right),
        condition_b: v.condition_b,
        max_residue: v.max_residue,
        residue_tolerance: v.residue_tolerance,
        period_multiple: v.period_multiple,
        residues: v.residues.iter().map(|r| ResidueOutput { multiple: r.multiple, residue: r.residue.abs() }).collect(),
        pointwise_confirmed: v.pointwise_confirmed,
    })
    .map(ok)
}

fn algebraic(args: &AlgebraicArgs) -> Result<Success, Failure> {
    let np = parse_newton_descriptor(&args.newton)?;
    let (knot, derived) = newton_to_cables(&np);
    let report = bound_report(&np)?;
    json(&AlgebraicOutput {
        newton: np.to_string(),
        knot: knot.to_string(),
        a: derived.a,
        kd_squared: rat::format(&Rational::from_integer(kd_squared(&np))),
        h_squared: rat::format(&report.h_squared),
        rho: rat::format(&report.rho),
        delta: rat::format(&report.delta),
        sharp_bound: rat::format(&report.sharp_bound),
        delta_positive: report.delta_positive(),
        delta_below_two_ninths: report.delta_below_two_ninths(),
        delta_below_sharp_bound: report.delta_below_sharp_bound(),
    })
    .map(ok)
}

fn link_dd(args: &LinkDdArgs) -> Result<Success, Failure> {
    let f = dd_link_step_function(args.d)?;
    if args.format == Format::Csv {
        return Ok(ok(f.to_csv()));
    }
    let c = dd_counterexample(args.d)?;
    json(&LinkDdOutput {
        d: args.d,
        breakpoints: formatted(f.breakpoints()),
        values: f.values().to_vec(),
        integral: rat::format(&c.integral),
        h_squared: rat::format(&Rational::from_integer(c.h_squared.clone())),
        delta: rat::format(&c.delta),
        delta_in_unibranch_range: c.delta_in_unibranch_range(),
    })
    .map(ok)
}

fn oracle_row(row: &OracleRow) -> OracleRowOutput {
    OracleRowOutput {
        p: row.p,
        q: row.q,
        matrix_size: row.matrix_size,
        samples: row.samples,
        agree: row.agree,
        indeterminate: row.indeterminate,
        mismatches: row
            .mismatches
            .iter()
            .map(|(x, tl, s)| MismatchOutput { x: rat::format(x), tl_signature: *tl, s_pq: *s })
            .collect(),
        passed: row.passed(),
    }
}

fn oracle(args: &OracleArgs) -> Result<Success, Failure> {
    let rows = oracle_check(args.p_max, args.q_max, args.samples, args.seed)?;
    let out = OracleOutput { seed: args.seed, rows: rows.iter().map(oracle_row).collect(), passed: rows.iter().all(OracleRow::passed) };
    let text = match args.format {
        TableFormat::Json => json(&out)?,
        TableFormat::Text => {
            let mut s = format!("{:>3} {:>3} {:>6} {:>7} {:>7} {:>13}  result\n", "p", "q", "size", "samples", "agree", "indeterminate");
            for r in &out.rows {
                s.push_str(&format!(
                    "{:>3} {:>3} {:>6} {:>7} {:>7} {:>13}  {}\n",
                    r.p,
                    r.q,
                    r.matrix_size,
                    r.samples,
                    r.agree,
                    r.indeterminate,
                    if r.passed { "PASS" } else { "FAIL" }
                ));
                for m in &r.mismatches {
                    s.push_str(&format!("        x = {}: tl_signature {} != s_pq {}\n", m.x, m.tl_signature, m.s_pq));
                }
            }
            s.push_str(if out.passed { "all rows passed\n" } else { "oracle mismatch\n" });
            s
        }
    };
    Ok(Success { code: if out.passed { EXIT_OK } else { EXIT_INTERNAL }, text })
}

pub fn dispatch(cli: &Cli) -> Result<Success, Failure> {
    match &cli.command {
        Command::Signature(a) => signature(a),
        Command::Rho(a) => rho(a),
        Command::Fourier(a) => fourier_cmd(a),
        Command::Compare(a) => compare(a),
        Command::Algebraic(a) => algebraic(a),
        Command::LinkDd(a) => link_dd(a),
        Command::OracleCheck(a) => oracle(a),
    }
}

/// Runs the CLI on `args` (including the program name), writing output and
/// diagnostics. Returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
        }
    };
    let success = match dispatch(&cli) {
        Ok(s) => s,
        Err(f) => {
            eprintln!("error: {f}");
            return f.code;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &success.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(success.text.as_bytes()).map_err(|e| e.to_string())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INTERNAL;
    }
    success.code
}
