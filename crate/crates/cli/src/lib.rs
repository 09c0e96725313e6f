//! Command-line front end for `kxval`.
//!
//! Exit codes: 0 success, 1 domain or usage error, 2 inconclusive
//! classification.

pub mod descr;
pub mod workspace;

use std::cmp::Ordering;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kxval::approx::{appr_of_monomial, appr_type, iota, phi, supp_descr, ApproxError, ApproxType};
use kxval::golden::run_examples;
use kxval::ordgroup::{ext_cmp, Rat};
use kxval::parse::parse_elem;
use kxval::pcs::{psi_report, AnalysisOptions, PcsError};
use kxval::poly::{q_expansion, sample_poly_with, PolyK};
use kxval::valuation::{monomial_cmp, val_apply, MonomialOrder, ValDesc};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::descr::render;
use crate::workspace::Workspace;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("Inconclusive: {0}")]
    Inconclusive(String),
}

impl CliError {
    pub fn from_pcs(e: PcsError) -> Self {
        match e {
            PcsError::Inconclusive { reason } => CliError::Inconclusive(reason),
            PcsError::NotStable { .. }
            | PcsError::Undetermined
            | PcsError::AmbiguousAtLimit => CliError::Inconclusive(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }

    pub fn from_approx(e: ApproxError) -> Self {
        match e {
            ApproxError::Pcs(inner) => Self::from_pcs(inner),
            ApproxError::BudgetExhausted { .. } | ApproxError::UndeterminedSup => CliError::Inconclusive(e.to_string()),
            e => CliError::Domain(e.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Inconclusive(_) => 2,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Valuations on K[x] over exactly computable valued fields.
///
/// Without --input the commands run against a built-in workspace over
/// F_2(t)^(1/2^inf) with sequences rt_seq, nt_seq, vt_seq, al_seq and
/// valuations v_t2, nt_val, vt_val, al_val.
#[derive(Parser, Debug)]
#[command(name = "kxval", version)]
pub struct Cli {
    /// JSON workspace file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Largest sequence index inspected by stability checks.
    #[arg(long, global = true, default_value_t = 6)]
    pub budget: usize,
    /// Length of the constant run that certifies a stable value.
    #[arg(long, global = true, default_value_t = 3)]
    pub window: usize,
    /// Degree bound for transcendental-type certificates.
    #[arg(long = "degree-bound", global = true, default_value_t = 3)]
    pub degree_bound: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Value of a polynomial under a valuation (name or descriptor).
    Eval { valuation: String, poly: String },
    /// Compare two valuations: pointwise on --poly, exactly for two
    /// monomial valuations, otherwise on sampled polynomials.
    Compare {
        first: String,
        second: String,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Type and descriptor of the valuation of a sequence.
    Classify { seq: String },
    /// Coefficients of the q-adic expansion of f, lowest power first.
    Expand { f: String, q: String },
    /// Approximation types.
    #[command(subcommand)]
    Appr(ApprCommand),
    /// Run the four reference examples over F_p(t)^(1/p^inf).
    Examples {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ApprCommand {
    /// The type of a named sequence.
    FromSeq { name: String },
    /// The type generated by one ball: `a=<elem> gamma=<rat>`.
    Principal { args: Vec<String> },
    /// Extension type of the valuation of a type: `from-seq <name>` or
    /// `principal a=<elem> gamma=<rat>`.
    Classify { target: Vec<String> },
    /// Valuation descriptor of a type, same target syntax as classify.
    Phi { target: Vec<String> },
}

/// What a command printed and how it exits.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { stderr: text, code: 1, ..Default::default() }
            } else {
                Output { stdout: text, ..Default::default() }
            };
        }
    };
    let format = cli.format;
    match execute(&cli) {
        Ok((text, value, code)) => {
            let stdout = match format {
                Format::Text => text,
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")),
            };
            Output { stdout, stderr: String::new(), code }
        }
        Err(e) => {
            let code = e.exit_code();
            match (format, &e) {
                (Format::Json, _) => {
                    let status = if code == 2 { "inconclusive" } else { "error" };
                    let v = json!({"status": status, "message": e.to_string()});
                    Output { stdout: format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), code, ..Default::default() }
                }
                (Format::Text, CliError::Inconclusive(_)) => Output { stdout: format!("{e}\n"), code, ..Default::default() },
                (Format::Text, _) => Output { stderr: format!("error: {e}\n"), code, ..Default::default() },
            }
        }
    }
}

impl Cli {
    pub fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            upto: self.budget,
            window: self.window,
            degree_bound: self.degree_bound,
            ..Default::default()
        }
    }

    fn workspace(&self) -> Result<Workspace, CliError> {
        match &self.input {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))?;
                Workspace::from_json_str(&text)
            }
            None => Workspace::builtin(2),
        }
    }
}

type Done = (String, Value, i32);

fn execute(cli: &Cli) -> Result<Done, CliError> {
    let opts = cli.options();
    match &cli.command {
        Command::Examples { p, depth } => cmd_examples(*p, *depth),
        Command::Eval { valuation, poly } => {
            let ws = cli.workspace()?;
            cmd_eval(&ws, valuation, poly, &opts)
        }
        Command::Compare { first, second, poly } => cmd_compare(&cli.workspace()?, first, second, poly.as_deref(), &opts),
        Command::Classify { seq } => cmd_classify(&cli.workspace()?, seq, &opts),
        Command::Expand { f, q } => cmd_expand(&cli.workspace()?, f, q),
        Command::Appr(sub) => cmd_appr(&cli.workspace()?, sub, &opts),
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn cmd_eval(ws: &Workspace, valuation: &str, poly: &str, opts: &AnalysisOptions) -> Result<Done, CliError> {
    let (desc, _) = ws.valuation(valuation, opts)?;
    let f = ws.polynomial(poly)?;
    let v = val_apply(&desc, &f).map_err(domain)?;
    let value = json!({"valuation": valuation, "polynomial": f.to_string(), "value": v.to_string()});
    Ok((format!("{v}\n"), value, 0))
}

fn relation(le: bool, ge: bool) -> &'static str {
    match (le, ge) {
        (true, true) => "=",
        (true, false) => "<=",
        (false, true) => ">=",
        (false, false) => "incomparable",
    }
}

pub fn cmd_compare(
    ws: &Workspace,
    first: &str,
    second: &str,
    poly: Option<&str>,
    opts: &AnalysisOptions,
) -> Result<Done, CliError> {
    let (d1, s1) = ws.valuation(first, opts)?;
    let (d2, s2) = ws.valuation(second, opts)?;
    if let Some(poly) = poly {
        let f = ws.polynomial(poly)?;
        let (a, b) = (val_apply(&d1, &f).map_err(domain)?, val_apply(&d2, &f).map_err(domain)?);
        let rel = match ext_cmp(&a, &b).map_err(domain)? {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        };
        let value = json!({"first": a.to_string(), "second": b.to_string(), "relation": rel, "method": "pointwise"});
        return Ok((format!("{a} {rel} {b}\n"), value, 0));
    }
    if let (ValDesc::Monomial { a, gamma: g }, ValDesc::Monomial { a: a2, gamma: g2 }) = (&d1, &d2) {
        if let (Some(g), Some(g2)) = (g.as_fin(), g2.as_fin()) {
            // v_{a,γ} ≤ v_{a',γ'} exactly when B(a', γ') ⊆ B(a, γ)
            let le = monomial_cmp(a2, g2, a, g) == MonomialOrder::LeqHolds;
            let ge = monomial_cmp(a, g, a2, g2) == MonomialOrder::LeqHolds;
            let rel = relation(le, ge);
            return Ok((format!("{rel}\n"), json!({"relation": rel, "method": "balls"}), 0));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut samples: Vec<PolyK> = vec![PolyK::x(ws.field)];
    for (d, spec) in [(&d1, &s1), (&d2, &s2)] {
        match d {
            ValDesc::Monomial { a, .. } => samples.push(PolyK::linear(a)),
            ValDesc::Augmented { key, .. } => samples.push(key.clone()),
            ValDesc::LimitOfFamily { .. } => {}
        }
        if let Some(name) = spec.sequence() {
            for a in ws.sequence(name)?.prefix() {
                samples.push(PolyK::linear(a));
            }
        }
    }
    samples.extend((0..opts.samples).map(|_| sample_poly_with(&mut rng, ws.field, opts.degree_bound, 2)));
    let (mut le, mut ge) = (true, true);
    for f in &samples {
        let (a, b) = (val_apply(&d1, f).map_err(domain)?, val_apply(&d2, f).map_err(domain)?);
        match ext_cmp(&a, &b).map_err(domain)? {
            Ordering::Less => ge = false,
            Ordering::Greater => le = false,
            Ordering::Equal => {}
        }
    }
    let rel = relation(le, ge);
    let n = samples.len();
    Ok((
        format!("{rel} (on {n} sampled polynomials)\n"),
        json!({"relation": rel, "method": "sampled", "samples": n}),
        0,
    ))
}

pub fn cmd_classify(ws: &Workspace, name: &str, opts: &AnalysisOptions) -> Result<Done, CliError> {
    let seq = ws.sequence(name)?;
    let report = psi_report(seq, opts).map_err(CliError::from_pcs)?;
    let head = match (&report.desc, report.desc.gamma()) {
        (ValDesc::LimitOfFamily { certificate, .. }, _) => format!(
            "{}, certified up to degree {}, prefix {}",
            report.vtype, certificate.degree_bound, certificate.prefix
        ),
        (_, Some(g)) => format!("{}, gamma={g}", report.vtype),
        (_, None) => report.vtype.to_string(),
    };
    let descriptor = render(&report.desc, Some(name));
    let mut text = format!("{head}\ndescriptor: {descriptor}\n");
    let witness_values: Vec<String> = report.witness_values.iter().map(ToString::to_string).collect();
    if !witness_values.is_empty() {
        text.push_str(&format!("witness values: [{}]\n", witness_values.join(", ")));
    }
    let certificates: Vec<Value> = report
        .certificates
        .iter()
        .map(|(f, c)| json!({"polynomial": f.to_string(), "certificate": c.to_string()}))
        .collect();
    for (f, c) in &report.certificates {
        text.push_str(&format!("certificate {f}: {c}\n"));
    }
    let value = json!({
        "type": report.vtype.to_string(),
        "gamma": report.desc.gamma().map(ToString::to_string),
        "descriptor": descriptor,
        "witness_values": witness_values,
        "certificates": certificates,
    });
    Ok((text, value, 0))
}

pub fn cmd_expand(ws: &Workspace, f: &str, q: &str) -> Result<Done, CliError> {
    let (f, q) = (ws.polynomial(f)?, ws.polynomial(q)?);
    let parts = q_expansion(&f, &q).map_err(domain)?;
    let shown: Vec<String> = parts.iter().map(ToString::to_string).collect();
    let text = shown.iter().map(|s| format!("{s}\n")).collect();
    Ok((text, json!({"f": f.to_string(), "q": q.to_string(), "coefficients": shown}), 0))
}

fn parse_kv<'a>(args: &'a [String], key: &str) -> Result<&'a str, CliError> {
    args.iter()
        .find_map(|a| a.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| CliError::Domain(format!("expected {key}=<value>")))
}

fn principal(ws: &Workspace, args: &[String]) -> Result<ApproxType, CliError> {
    let a = parse_elem(ws.field, parse_kv(args, "a")?).map_err(domain)?;
    let gamma: Rat = kxval::ordgroup::parse_rational(parse_kv(args, "gamma")?).map_err(domain)?;
    appr_of_monomial(&a, &gamma).map_err(CliError::from_approx)
}

/// `from-seq <name>` or `principal a=<elem> gamma=<rat>`; the name of the
/// sequence behind the type, if any.
fn target(ws: &Workspace, args: &[String]) -> Result<(ApproxType, Option<String>), CliError> {
    match args.first().map(String::as_str) {
        Some("from-seq") => {
            let name = args.get(1).ok_or_else(|| CliError::Domain("from-seq needs a sequence name".into()))?;
            Ok((iota(ws.sequence(name)?).map_err(CliError::from_approx)?, Some(name.clone())))
        }
        Some("principal") => Ok((principal(ws, &args[1..])?, None)),
        _ => Err(CliError::Domain("expected `from-seq <name>` or `principal a=<elem> gamma=<rat>`".into())),
    }
}

fn describe_type(a: &ApproxType) -> Done {
    let supp = match supp_descr(a) {
        Ok(s) => s.to_string(),
        Err(_) => "undetermined".to_string(),
    };
    let (kind, balls): (&str, Vec<String>) = match a {
        ApproxType::Principal(b) => ("principal", vec![b.to_string()]),
        ApproxType::Generated(n) => ("generated", n.prefix().iter().map(ToString::to_string).collect()),
    };
    let mut text = format!("{kind}\n");
    for b in &balls {
        text.push_str(&format!("{b}\n"));
    }
    text.push_str(&format!("supp: {supp}\n"));
    (text, json!({"kind": kind, "balls": balls, "supp": supp}), 0)
}

pub fn cmd_appr(ws: &Workspace, sub: &ApprCommand, opts: &AnalysisOptions) -> Result<Done, CliError> {
    match sub {
        ApprCommand::FromSeq { name } => Ok(describe_type(&iota(ws.sequence(name)?).map_err(CliError::from_approx)?)),
        ApprCommand::Principal { args } => Ok(describe_type(&principal(ws, args)?)),
        ApprCommand::Classify { target: args } => {
            let (a, _) = target(ws, args)?;
            let ty = appr_type(&a, opts).map_err(CliError::from_approx)?;
            Ok((format!("{ty}\n"), json!({"type": ty.to_string()}), 0))
        }
        ApprCommand::Phi { target: args } => {
            let (a, name) = target(ws, args)?;
            let (desc, ty) = phi(&a, opts).map_err(CliError::from_approx)?;
            let descriptor = render(&desc, name.as_deref());
            Ok((format!("{descriptor}\n"), json!({"descriptor": descriptor, "type": ty.to_string()}), 0))
        }
    }
}

pub fn cmd_examples(p: u64, depth: usize) -> Result<Done, CliError> {
    let checks = run_examples(p, depth).map_err(CliError::Domain)?;
    let mut text = String::new();
    for c in &checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{tag} {}: {}\n", c.name, c.detail));
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    text.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
    let value = json!({
        "p": p,
        "depth": depth,
        "checks": checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
    });
    Ok((text, value, if passed == checks.len() { 0 } else { 1 }))
}
