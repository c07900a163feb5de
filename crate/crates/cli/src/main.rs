//! `assoclab` — build, verify, and probe dihedral braid associators.
//!
//! Four subcommands cover the library surface:
//!
//! * `rational`  — exact degree-by-degree construction over the rationals,
//!   written as a JSON document with provenance and verification reports.
//! * `phi0`      — the analytic series from the differential-equation route,
//!   written with its convergence report.
//! * `verify`    — re-run selected checks against a previously written
//!   document (or any hand-written candidate in the same format).
//! * `rep`       — finite-dimensional data: projector spectra over an
//!   angular parameter, or monodromy images driven by an associator file.
//!
//! Exit codes: `0` success, `1` a verification failed, `2` invalid input.
//! `ASSOC_LAB_THREADS` caps the internal thread pool.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use assoclab_core::associator::{Candidate, EquationCheck, VerifyReport};
use assoclab_core::construct::build_rational;
use assoclab_core::error::{Error, Result};
use assoclab_core::json::{
    any_candidate_from_json, rational_build_document, report_to_json, transcendental_document,
    AnyCandidate,
};
use assoclab_core::morphism::Morphism;
use assoclab_core::reps::{
    aba_obstruction, aba_sweep, monodromy_rep, reflection_rep, HSeries, HSeriesMatrix,
};
use assoclab_core::scalar::{cx, rat, Coeff, Cx, Rat};
use assoclab_core::series::GSeries;
use assoclab_core::transcendental::phi0_with_report;

const EXIT_VERIFICATION: u8 = 1;
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(name = "assoclab", version, about = "Dihedral braid associator laboratory")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an exact rational associator and write it with its reports.
    Rational {
        /// Dihedral order (m >= 3).
        #[arg(long)]
        m: u32,
        /// Truncation degree of the series.
        #[arg(long)]
        degree: u32,
        /// Exponent scalar, as `p` or `p/q`.
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the differential-equation route and write the analytic series.
    Phi0 {
        /// Dihedral order (m >= 3).
        #[arg(long)]
        m: u32,
        /// Truncation degree of the series.
        #[arg(long)]
        degree: u32,
        /// Number of Taylor coefficients kept per local solution.
        #[arg(long, default_value_t = 64)]
        xorder: usize,
        /// Tolerance for the verification reports.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run checks against a written associator document.
    Verify {
        /// Input JSON document (as written by `rational` or `phi0`).
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated subset of: grouplike, duality, demi-tour, mirror,
        /// artin, tables, center. Defaults to the first four.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        /// Residual tolerance (0 demands exact cancellation).
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Projector spectra and monodromy data for the 2-dimensional
    /// representations.
    Rep {
        /// Dihedral order (m >= 3).
        #[arg(long)]
        m: u32,
        /// Representation index (1 <= j < m); used by the spectra modes.
        #[arg(long, default_value_t = 1)]
        j: u32,
        /// Single angular parameter.
        #[arg(long)]
        alpha: Option<f64>,
        /// Angular range `start:end:count`.
        #[arg(long)]
        sweep: Option<String>,
        /// Truncation order of the deformation parameter.
        #[arg(long = "h-order", default_value_t = 4)]
        h_order: u32,
        /// Associator document driving the monodromy images.
        #[arg(long)]
        assoc: Option<PathBuf>,
        /// Tolerance for gating the associator file in `--assoc` mode.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("ASSOC_LAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

/// Invalid inputs (including unreadable files) exit 2; failures of the
/// mathematics itself (verification, inconsistency, convergence) exit 1.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_)
        | Error::Incompatible(_)
        | Error::ConstantTerm(_)
        | Error::Io(_)
        | Error::Json(_) => EXIT_INVALID,
        Error::Inconsistent { .. } | Error::Convergence(_) | Error::Verification(_) => {
            EXIT_VERIFICATION
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode> {
    match cmd {
        Cmd::Rational { m, degree, lambda, out } => cmd_rational(m, degree, &lambda, out.as_deref()),
        Cmd::Phi0 { m, degree, xorder, tol, out } => {
            cmd_phi0(m, degree, xorder, tol, out.as_deref())
        }
        Cmd::Verify { input, checks, tol } => cmd_verify(&input, &checks, tol),
        Cmd::Rep { m, j, alpha, sweep, h_order, assoc, tol, format } => {
            if let Some(path) = assoc {
                rep_monodromy(m, &path, h_order, tol, format)
            } else if let Some(spec) = sweep {
                rep_sweep(m, j, &spec, format)
            } else if let Some(a) = alpha {
                rep_single(m, j, a, format)
            } else {
                Err(Error::InvalidInput(
                    "one of --alpha, --sweep, or --assoc is required".into(),
                ))
            }
        }
    }
}

/// Writes pretty JSON to the given path, or to stdout when no path is given.
fn emit(out: Option<&Path>, doc: &Value) -> Result<()> {
    let text = serde_json::to_string_pretty(doc)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn exit_from_reports(reports: &[VerifyReport]) -> ExitCode {
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFICATION)
    }
}

/// Parses `p` or `p/q` into an exact rational.
fn parse_rational_flag(text: &str) -> Result<Rat> {
    let bad = || Error::InvalidInput(format!("cannot parse '{text}' as a rational p or p/q"));
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(rat(p, q))
        }
        None => Ok(rat(text.trim().parse().map_err(|_| bad())?, 1)),
    }
}

fn cmd_rational(m: u32, degree: u32, lambda: &str, out: Option<&Path>) -> Result<ExitCode> {
    let lam = parse_rational_flag(lambda)?;
    let cand = build_rational(m, &lam, degree)?;
    // The construction solves these equations over the rationals, so the
    // exact re-check is a consistency guarantee on the written file.
    let reports = cand.check_all(0.0);
    emit(out, &rational_build_document(&cand, &reports))?;
    Ok(exit_from_reports(&reports))
}

fn cmd_phi0(m: u32, degree: u32, xorder: usize, tol: f64, out: Option<&Path>) -> Result<ExitCode> {
    let (series, convergence) = phi0_with_report(m, degree, xorder)?;
    let cand = Candidate::new(series, cx(0.0, PI))?;
    let reports = cand.check_all(tol);
    emit(out, &transcendental_document(&cand, &convergence, &reports))?;
    Ok(exit_from_reports(&reports))
}

const CANDIDATE_CHECKS: [&str; 4] = ["grouplike", "duality", "demi-tour", "mirror"];
const MORPHISM_CHECKS: [&str; 3] = ["artin", "tables", "center"];

fn cmd_verify(input: &Path, checks: &[String], tol: f64) -> Result<ExitCode> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(input)?)?;
    let selected: Vec<String> = if checks.is_empty() {
        CANDIDATE_CHECKS.iter().map(|s| s.to_string()).collect()
    } else {
        checks.to_vec()
    };
    for name in &selected {
        if !CANDIDATE_CHECKS.contains(&name.as_str()) && !MORPHISM_CHECKS.contains(&name.as_str())
        {
            return Err(Error::InvalidInput(format!(
                "unknown check '{name}' (expected one of grouplike, duality, demi-tour, \
                 mirror, artin, tables, center)"
            )));
        }
    }
    let reports = match any_candidate_from_json(&doc)? {
        AnyCandidate::Rational(cand) => run_checks(&cand, &selected, tol)?,
        AnyCandidate::Complex(cand) => run_checks(&cand, &selected, tol)?,
    };
    let out = json!({
        "tolerance": tol,
        "checks": reports.iter().map(report_to_json).collect::<Vec<_>>(),
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(exit_from_reports(&reports))
}

fn equation_report<C: Coeff>(check: &EquationCheck<C>) -> VerifyReport {
    VerifyReport {
        equation: check.name.clone(),
        pass: check.pass(),
        first_bad_degree: check.first_bad_degree(),
        residual_norm: Some(check.residual_norm()),
    }
}

fn run_checks<C: Coeff>(
    cand: &Candidate<C>,
    selected: &[String],
    tol: f64,
) -> Result<Vec<VerifyReport>> {
    // Build the group morphism once if any of its checks were asked for; it
    // refuses candidates that fail the basic suite, which is the right
    // behaviour here (the morphism identities presuppose a solution).
    let morphism = if selected.iter().any(|s| MORPHISM_CHECKS.contains(&s.as_str())) {
        Some(Morphism::new(cand, tol)?)
    } else {
        None
    };
    let mut reports = Vec::new();
    for name in selected {
        match name.as_str() {
            "grouplike" => reports.push(cand.check_grouplike(tol)),
            "duality" => match cand.check_duality(tol) {
                Some(check) => reports.push(equation_report(&check)),
                None => {
                    return Err(Error::InvalidInput(
                        "duality check requested, but the candidate declares no duality \
                         constraint (flip_duality is false)"
                            .into(),
                    ))
                }
            },
            "demi-tour" => reports.push(equation_report(&cand.check_demi_tour(tol))),
            "mirror" => reports.push(cand.check_mirror(tol)),
            "artin" => {
                let mor = morphism.as_ref().expect("morphism built above");
                reports.extend(mor.artin_checks(tol).iter().map(|c| c.report()));
            }
            "tables" => {
                let mor = morphism.as_ref().expect("morphism built above");
                reports.extend(mor.pure_braid_tables(tol).iter().map(|c| c.report()));
            }
            "center" => {
                let mor = morphism.as_ref().expect("morphism built above");
                reports.push(mor.center_check(tol).report());
            }
            _ => unreachable!("names validated by the caller"),
        }
    }
    Ok(reports)
}

fn rep_single(m: u32, j: u32, alpha: f64, format: Format) -> Result<ExitCode> {
    let report = aba_obstruction(m, j, alpha)?;
    match format {
        Format::Csv => {
            println!("alpha,eig0_re,eig0_im,eig1_re,eig1_im,unitarizable");
            println!(
                "{alpha:.6},{:.10},{:.10},{:.10},{:.10},{}",
                report.spectrum[0].re,
                report.spectrum[0].im,
                report.spectrum[1].re,
                report.spectrum[1].im,
                report.unitarizable
            );
        }
        Format::Json => {
            let doc = json!({
                "m": m, "j": j, "alpha": alpha,
                "spectrum": [
                    [report.spectrum[0].re, report.spectrum[0].im],
                    [report.spectrum[1].re, report.spectrum[1].im],
                ],
                "unitarizable": report.unitarizable,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn rep_sweep(m: u32, j: u32, spec: &str, format: Format) -> Result<ExitCode> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        Error::InvalidInput(format!(
            "cannot parse sweep '{spec}' (expected start:end:count with count >= 2)"
        ))
    };
    let [start, end, count] = parts.as_slice() else {
        return Err(bad());
    };
    let start: f64 = start.trim().parse().map_err(|_| bad())?;
    let end: f64 = end.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if count < 2 || !start.is_finite() || !end.is_finite() {
        return Err(bad());
    }
    let alphas: Vec<f64> = (0..count)
        .map(|i| start + (end - start) * i as f64 / (count - 1) as f64)
        .collect();
    let rows = aba_sweep(m, j, &alphas);
    match format {
        Format::Csv => {
            println!("alpha,eig0_re,eig0_im,eig1_re,eig1_im,unitarizable");
            for (alpha, entry) in &rows {
                match entry {
                    Some(r) => println!(
                        "{alpha:.6},{:.10},{:.10},{:.10},{:.10},{}",
                        r.spectrum[0].re,
                        r.spectrum[0].im,
                        r.spectrum[1].re,
                        r.spectrum[1].im,
                        r.unitarizable
                    ),
                    None => println!("{alpha:.6},,,,,pole"),
                }
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(alpha, entry)| match entry {
                    Some(r) => json!({
                        "alpha": alpha,
                        "spectrum": [
                            [r.spectrum[0].re, r.spectrum[0].im],
                            [r.spectrum[1].re, r.spectrum[1].im],
                        ],
                        "unitarizable": r.unitarizable,
                    }),
                    None => json!({ "alpha": alpha, "pole": true }),
                })
                .collect();
            let doc = json!({ "m": m, "j": j, "rows": rows });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Widens an exact candidate to floating-point coefficients so the numeric
/// monodromy machinery can consume files written by the rational builder.
fn complexify(cand: &Candidate<Rat>) -> Result<Candidate<Cx>> {
    let to_cx = |r: &Rat| cx(r.to_f64().unwrap_or(f64::NAN), 0.0);
    let mut phi = GSeries::<Cx>::zero(cand.m(), cand.trunc());
    for (mono, coeff) in cand.phi().terms() {
        phi.add_term(mono.clone(), to_cx(coeff));
    }
    let widened = Candidate::with_exponents(phi, to_cx(cand.lambda()), to_cx(cand.mu()))?;
    Ok(if cand.uses_flip_duality() {
        widened
    } else {
        widened.without_flip_duality()
    })
}

fn rep_monodromy(m: u32, path: &Path, h_order: u32, tol: f64, format: Format) -> Result<ExitCode> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let cand = match any_candidate_from_json(&doc)? {
        AnyCandidate::Complex(c) => c,
        AnyCandidate::Rational(c) => complexify(&c)?,
    };
    if cand.m() != m {
        return Err(Error::InvalidInput(format!(
            "--m {m} does not match the associator file (m = {})",
            cand.m()
        )));
    }
    if h_order > cand.trunc() {
        return Err(Error::InvalidInput(format!(
            "--h-order {h_order} exceeds the file's truncation degree {}",
            cand.trunc()
        )));
    }
    let morphism = Morphism::new(&cand, tol)?;
    let images = monodromy_rep(&morphism, &reflection_rep(m), h_order)?;
    let v = HSeries::exp_line(*morphism.lambda(), h_order);
    let v2 = HSeries::exp_line(*morphism.lambda() * cx(2.0, 0.0), h_order);
    let one = HSeriesMatrix::identity(2, h_order);

    let mut generators = serde_json::Map::new();
    let mut csv = Vec::new();
    for (name, image) in [("sigma", &images.sigma), ("tau", &images.tau)] {
        let spectrum = image.spectrum2()?;
        // Rescaled image against the quadratic (M' + 1)(M' - v^2) = 0.
        let rescaled = image.scale_series(&v);
        let residual = rescaled
            .add(&one)
            .mul(&rescaled.sub(&one.scale_series(&v2)))
            .max_abs();
        let eigs: Vec<Vec<[f64; 2]>> = spectrum
            .iter()
            .map(|s| (0..=h_order).map(|k| [s.coeff(k).re, s.coeff(k).im]).collect())
            .collect();
        for (e, coeffs) in eigs.iter().enumerate() {
            for (k, c) in coeffs.iter().enumerate() {
                csv.push(format!("{name},{e},{k},{:.12},{:.12}", c[0], c[1]));
            }
        }
        csv.push(format!("{name},quadratic_residual,,{residual:.3e},"));
        generators.insert(
            name.to_string(),
            json!({ "spectrum": eigs, "quadratic_residual": residual }),
        );
    }
    match format {
        Format::Csv => {
            println!("generator,eigenvalue,h_power,re,im");
            for line in csv {
                println!("{line}");
            }
        }
        Format::Json => {
            let doc = json!({ "m": m, "h_order": h_order, "generators": generators });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
