//! Command-line front end for the `gwchi` library: Grothendieck–Witt
//! arithmetic, power-structure computations, étale-linear classes with
//! symmetric powers, zeta-type series, Grassmannian Euler characteristics,
//! the blown-up cubic surface, and the built-in verification suite.
//!
//! Output is plain text by default and stable JSON under `--json`. Batch
//! mode (`--batch`) reads newline-delimited JSON requests from standard
//! input and writes one JSON response per line.
//!
//! Exit codes: 0 on success, 1 on a domain error (the message names the
//! library error case), 2 on a parse or usage error.

mod batch;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gwchi::delpezzo::CubicSurface;
use gwchi::grassmann::{chi_grassmannian, chi_sym_grassmannian, grassmann_zeta, losanitsch};
use gwchi::selftest::{diagnostic_report, run_criterion};
use gwchi::{
    a_basic, a_hyperbolic, geom_pow, kapranov_chi_zeta, sym_power, t_alpha, BaseField, Error,
    GWElement, GWSeries, K0Class, PowerContext, SquareClass,
};

#[derive(Parser)]
#[command(
    name = "gwchi",
    version,
    about = "Exact Grothendieck-Witt arithmetic, symmetric powers, and zeta-type series",
    arg_required_else_help = true
)]
struct Cli {
    /// Base field: Q, R, C, or Fp:<odd prime>
    #[arg(long, global = true, default_value = "Q", value_parser = FieldSel::parse)]
    field: FieldSel,

    /// Emit a structured JSON result instead of plain text
    #[arg(long, global = true)]
    json: bool,

    /// Read newline-delimited JSON requests {"cmd": ..., "args": {...}}
    /// from standard input and answer one JSON response per line
    #[arg(long)]
    batch: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

/// Unvalidated field selector; primality of `p` is checked at use time so
/// that a composite modulus surfaces as a domain error, not a usage error.
#[derive(Clone, Debug)]
enum FieldSel {
    Rationals,
    Reals,
    Complexes,
    Prime(u64),
}

impl FieldSel {
    fn parse(s: &str) -> Result<FieldSel, String> {
        match s {
            "Q" | "q" => Ok(FieldSel::Rationals),
            "R" | "r" => Ok(FieldSel::Reals),
            "C" | "c" => Ok(FieldSel::Complexes),
            _ => {
                let rest = s
                    .strip_prefix("Fp:")
                    .or_else(|| s.strip_prefix("fp:"))
                    .ok_or_else(|| format!("expected Q, R, C, or Fp:<p>, got {s:?}"))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| format!("expected an integer after Fp:, got {rest:?}"))?;
                Ok(FieldSel::Prime(p))
            }
        }
    }

    fn resolve(&self) -> gwchi::Result<BaseField> {
        match self {
            FieldSel::Rationals => Ok(BaseField::Rationals),
            FieldSel::Reals => Ok(BaseField::Reals),
            FieldSel::Complexes => Ok(BaseField::Complexes),
            FieldSel::Prime(p) => BaseField::prime_field(*p),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Grothendieck-Witt ring arithmetic on diagonal-form expressions
    Gw {
        #[command(subcommand)]
        op: GwOp,
    },
    /// Power-structure computations: a_n, torsion elements, closed forms
    Power {
        #[command(subcommand)]
        op: PowerOp,
    },
    /// Etale-linear classes: Euler characteristic, symmetric powers, products
    K0 {
        #[command(subcommand)]
        op: K0Op,
    },
    /// Truncated coefficient series
    Zeta {
        #[command(subcommand)]
        op: ZetaOp,
    },
    /// Grassmannian Euler characteristics and their zeta series
    Grassmann {
        #[command(subcommand)]
        op: GrassmannOp,
    },
    /// The cubic surface obtained by blowing up three conjugate point pairs
    Delpezzo {
        #[command(subcommand)]
        op: DelpezzoOp,
    },
    /// Run the built-in verification suite
    Selftest {
        /// Also print the per-instance diagnostic verdicts
        #[arg(long)]
        report: bool,
        /// Comma-separated check ids to run (default: all nine)
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum GwOp {
    /// Decide equality of two elements
    Eq {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Sum of two elements
    Add {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Product of two elements
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Rank, discriminant, signature, and Hasse data of an element
    Invariants {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Subcommand)]
enum PowerOp {
    /// n-th symmetric-power coefficient a_n(q)
    An {
        #[arg(long)]
        n: u32,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// The order-two element t_alpha = <2> + <alpha> - <1> - <2*alpha>
    Talpha {
        /// Nonzero integer or fraction a/b, read up to squares
        #[arg(long)]
        alpha: String,
    },
    /// Closed forms for a_n on m<(-1)^i> (basic) or m copies of H (hyperbolic)
    Closed {
        #[arg(long, value_enum)]
        shape: ClosedShape,
        /// Multiplicity; may be negative for the hyperbolic shape
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        /// Exponent parity of the basic generator (0 or 1); ignored for
        /// the hyperbolic shape
        #[arg(long, default_value_t = 0)]
        i: u8,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClosedShape {
    Basic,
    Hyperbolic,
}

#[derive(Subcommand)]
enum K0Op {
    /// Euler characteristic of an etale-linear class, as a GW element
    Chi {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// n-th symmetric power of an etale-linear class
    Sym {
        #[arg(long)]
        n: u32,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Product of two etale-linear classes
    Mul {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand)]
enum ZetaOp {
    /// Coefficients of (1-t)^{-q} for a GW element q, up to t^order
    Geom {
        #[arg(long)]
        order: usize,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Euler characteristics of all symmetric powers of a class, up to t^order
    Kapranov {
        #[arg(long)]
        order: usize,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
}

#[derive(Subcommand)]
enum GrassmannOp {
    /// Euler characteristic of Gr(d, r)
    Chi {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
    /// Euler characteristic of the n-th symmetric power of Gr(d, r)
    Sym {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Zeta series of Gr(d, r) up to t^order
    Zeta {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        order: usize,
    },
    /// Triangle entry: counts of even and odd binary necklace weights
    Losanitsch {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Subcommand)]
enum DelpezzoOp {
    /// Euler characteristic of the blown-up surface, with the compact
    /// transcription and the per-instance agreement verdict
    Chi {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
    /// Third symmetric power: convolution vs closed-form expansion
    Sym3 {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        gamma: String,
    },
}

/// Result of one dispatched command: the plain-text rendering, the
/// structured JSON value, optional extra lines for batch diagnostics, and
/// the process exit code (nonzero only for `selftest` failures).
struct Output {
    text: String,
    value: Value,
    diagnostics: Vec<String>,
    exit: u8,
}

impl Output {
    fn new(text: String, value: Value) -> Output {
        Output {
            text,
            value,
            diagnostics: Vec::new(),
            exit: 0,
        }
    }

    fn rendered(text: String) -> Output {
        let value = json!({ "value": text });
        Output::new(text, value)
    }
}

/// Parses a square-class argument: a nonzero integer or a fraction `a/b`,
/// canonicalized up to squares.
fn class_arg(field: BaseField, s: &str) -> gwchi::Result<SquareClass> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: i64 = num
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an integer, got {num:?}")))?;
    let den: i64 = den
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("expected an integer denominator, got {den:?}")))?;
    field.square_class_ratio(num, den)
}

fn series_output(series: &GWSeries) -> Output {
    let coeffs: Vec<String> = series.coeffs().iter().map(GWElement::render).collect();
    let text = series.render();
    let value = json!({ "value": text, "coefficients": coeffs });
    Output::new(text, value)
}

fn invariants_output(x: &GWElement) -> Output {
    let inv = x.invariants();
    let mut text = format!("rank {}\ndisc {}", inv.rank, inv.disc.value());
    let mut value = serde_json::Map::new();
    value.insert("rank".into(), json!(inv.rank));
    value.insert("disc".into(), json!(inv.disc.value().to_string()));
    if let Some(sig) = inv.signature {
        text.push_str(&format!("\nsignature {sig}"));
        value.insert("signature".into(), json!(sig));
    }
    if let Some(hasse) = &inv.hasse {
        let rendered: Vec<String> = hasse.iter().map(|(v, s)| format!("{v}:{s}")).collect();
        text.push_str(&format!("\nhasse {}", rendered.join(" ")));
        value.insert("hasse".into(), json!(rendered));
    }
    Output::new(text, Value::Object(value))
}

fn dispatch(cli: &Cli) -> gwchi::Result<Output> {
    let field = cli.field.resolve()?;
    let command = cli.command.as_ref().expect("presence checked in main");
    match command {
        Command::Gw { op } => gw_command(field, op),
        Command::Power { op } => power_command(field, op),
        Command::K0 { op } => k0_command(field, op),
        Command::Zeta { op } => zeta_command(field, op),
        Command::Grassmann { op } => grassmann_command(field, op),
        Command::Delpezzo { op } => delpezzo_command(field, op),
        Command::Selftest { report, criteria } => selftest_command(*report, criteria),
    }
}

fn gw_command(field: BaseField, op: &GwOp) -> gwchi::Result<Output> {
    match op {
        GwOp::Eq { x, y } => {
            let x = GWElement::parse(field, x)?;
            let y = GWElement::parse(field, y)?;
            let equal = x.eq(&y)?;
            Ok(Output::new(equal.to_string(), json!({ "equal": equal })))
        }
        GwOp::Add { x, y } => {
            let x = GWElement::parse(field, x)?;
            let y = GWElement::parse(field, y)?;
            Ok(Output::rendered(x.add(&y)?.render()))
        }
        GwOp::Mul { x, y } => {
            let x = GWElement::parse(field, x)?;
            let y = GWElement::parse(field, y)?;
            Ok(Output::rendered(x.mul(&y)?.render()))
        }
        GwOp::Invariants { x } => {
            let x = GWElement::parse(field, x)?;
            Ok(invariants_output(&x))
        }
    }
}

fn power_command(field: BaseField, op: &PowerOp) -> gwchi::Result<Output> {
    match op {
        PowerOp::An { n, q } => {
            let q = GWElement::parse(field, q)?;
            let ctx = PowerContext::with_truncation(field, (*n).max(1) as usize)?;
            Ok(Output::rendered(ctx.a_n(&q, *n)?.render()))
        }
        PowerOp::Talpha { alpha } => {
            let alpha = class_arg(field, alpha)?;
            Ok(Output::rendered(t_alpha(&alpha).render()))
        }
        PowerOp::Closed { shape, m, i, n } => {
            let out = match shape {
                ClosedShape::Basic => a_basic(field, *m, *i, *n)?,
                ClosedShape::Hyperbolic => a_hyperbolic(field, *m, *n),
            };
            Ok(Output::rendered(out.render()))
        }
    }
}

fn k0_command(field: BaseField, op: &K0Op) -> gwchi::Result<Output> {
    match op {
        K0Op::Chi { x } => {
            let x = K0Class::parse(field, x)?;
            Ok(Output::rendered(x.chi().render()))
        }
        K0Op::Sym { n, x } => {
            let x = K0Class::parse(field, x)?;
            Ok(Output::rendered(sym_power(&x, *n)?.render()))
        }
        K0Op::Mul { x, y } => {
            let x = K0Class::parse(field, x)?;
            let y = K0Class::parse(field, y)?;
            Ok(Output::rendered(x.mul(&y)?.render()))
        }
    }
}

fn zeta_command(field: BaseField, op: &ZetaOp) -> gwchi::Result<Output> {
    match op {
        ZetaOp::Geom { order, q } => {
            let q = GWElement::parse(field, q)?;
            Ok(series_output(&geom_pow(&q, *order)?))
        }
        ZetaOp::Kapranov { order, x } => {
            let x = K0Class::parse(field, x)?;
            Ok(series_output(&kapranov_chi_zeta(&x, *order)?))
        }
    }
}

fn grassmann_command(field: BaseField, op: &GrassmannOp) -> gwchi::Result<Output> {
    match op {
        GrassmannOp::Chi { d, r } => {
            Ok(Output::rendered(chi_grassmannian(field, *d, *r)?.render()))
        }
        GrassmannOp::Sym { d, r, n } => Ok(Output::rendered(
            chi_sym_grassmannian(field, *d, *r, *n)?.render(),
        )),
        GrassmannOp::Zeta { d, r, order } => {
            Ok(series_output(&grassmann_zeta(field, *d, *r, *order)?))
        }
        GrassmannOp::Losanitsch { d, r } => {
            let (e, o) = losanitsch(*d, *r)?;
            let text = format!("e = {e}, o = {o}");
            let value = json!({
                "e": e.to_string(),
                "o": o.to_string(),
                "total": (e.clone() + o.clone()).to_string(),
            });
            Ok(Output::new(text, value))
        }
    }
}

fn delpezzo_command(field: BaseField, op: &DelpezzoOp) -> gwchi::Result<Output> {
    let (alpha, beta, gamma) = match op {
        DelpezzoOp::Chi { alpha, beta, gamma } | DelpezzoOp::Sym3 { alpha, beta, gamma } => {
            (alpha, beta, gamma)
        }
    };
    let surface = CubicSurface::new(
        class_arg(field, alpha)?,
        class_arg(field, beta)?,
        class_arg(field, gamma)?,
    )?;
    match op {
        DelpezzoOp::Chi { .. } => {
            let chi = surface.chi().render();
            let compact = surface.chi_compact().render();
            let agree = surface.chi_forms_agree()?;
            let text = format!("{chi}\ncompact form agrees: {agree}");
            let value = json!({ "chi": chi, "compact": compact, "forms_agree": agree });
            let mut out = Output::new(text, value);
            out.diagnostics
                .push(format!("compact transcription agrees: {agree}"));
            Ok(out)
        }
        DelpezzoOp::Sym3 { .. } => {
            let outcome = surface.sym3()?;
            let computed = outcome.computed.render();
            let printed = outcome.printed.render();
            let text = format!(
                "computed: {computed}\nprinted: {printed}\nequal: {}",
                outcome.equal
            );
            let value = json!({
                "computed": computed,
                "printed": printed,
                "equal": outcome.equal,
            });
            Ok(Output::new(text, value))
        }
    }
}

fn selftest_command(report: bool, criteria: &[u8]) -> gwchi::Result<Output> {
    let ids: Vec<u8> = if criteria.is_empty() {
        (1..=9).collect()
    } else {
        criteria.to_vec()
    };
    let mut lines = Vec::new();
    let mut checks = Vec::new();
    let mut all_passed = true;
    for id in ids {
        let outcome = run_criterion(id)?;
        all_passed &= outcome.passed;
        lines.push(outcome.summary_line());
        checks.push(json!({
            "id": outcome.id,
            "name": outcome.name,
            "passed": outcome.passed,
            "details": outcome.details,
        }));
    }
    let mut value = serde_json::Map::new();
    value.insert("all_passed".into(), json!(all_passed));
    value.insert("checks".into(), Value::Array(checks));
    if report {
        let report_lines = diagnostic_report();
        lines.push(String::new());
        lines.extend(report_lines.iter().cloned());
        value.insert("report".into(), json!(report_lines));
    }
    let mut out = Output::new(lines.join("\n"), Value::Object(value));
    out.diagnostics = lines;
    out.exit = u8::from(!all_passed);
    Ok(out)
}

/// Exit code for a library error: parse errors are usage-level (2),
/// everything else is a domain error (1).
fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.batch {
        if cli.command.is_some() {
            eprintln!("error: --batch takes requests on standard input, not a subcommand");
            return ExitCode::from(2);
        }
        return batch::run();
    }
    if cli.command.is_none() {
        // match clap's own usage-error convention
        eprintln!("error: a subcommand is required (try --help)");
        return ExitCode::from(2);
    }
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.value);
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            ExitCode::from(error_exit_code(&e))
        }
    }
}
