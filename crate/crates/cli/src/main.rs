//! `pell` — command-line interface to the polynomial Pell toolkit.
//!
//! Exit codes: 0 success, 1 certified mathematical negative, 2 unknown
//! (step budget exhausted before a decision), 64 usage error. The step
//! budget defaults to the library default, can be overridden by the
//! `PELL_MAX_STEPS` environment variable, and by `--max-steps` on top of
//! that. All output is deterministic for a fixed command line and seed.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_traits::One;
use pell_core::builder::{enumerate_square_factors, is_square_times_pellian, SquareTimesVerdict};
use pell_core::factor::FactoredPoly;
use pell_core::newfactors::{enumerate_atlas, v_new};
use pell_core::pell::{fundamental_solution_counted, PellInstance, DEFAULT_MAX_STEPS};
use pell_core::psi::{psi, psi_star};
use pell_core::reproots::repeated_roots_report;
use pell_core::verify::run_self_checks;
use pell_core::{Error, QPoly};
use serde_json::{json, Value};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Like `emit!`, but exits quietly when stdout has been closed (for
/// example by `pell … | head`) instead of panicking on the broken pipe.
macro_rules! emit {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let mut so = std::io::stdout().lock();
        if writeln!(so, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "pell",
    about = "Exact solver and analysis tools for polynomial Pell equations u² − D·v² = 1 over ℚ[t]",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct StepsOpt {
    /// Continued-fraction step budget (default: PELL_MAX_STEPS or the
    /// library default)
    #[arg(long, value_name = "N")]
    max_steps: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve u² − D·v² = 1 for the fundamental solution
    Solve {
        /// The polynomial D, e.g. "t^2-1"
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        #[command(flatten)]
        steps: StepsOpt,
    },
    /// Print the n-th solution (u_n, v_n); n may be negative
    Generate {
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        /// Solution index
        #[arg(long, value_name = "N", allow_hyphen_values = true)]
        n: i64,
        #[command(flatten)]
        steps: StepsOpt,
    },
    /// Print ψ_m and its factorization
    Psi {
        /// Index m ≥ 2
        #[arg(long, value_name = "M")]
        m: u64,
        /// Also print the half-degree factor ψ*_m (odd m ≥ 3 only)
        #[arg(long)]
        star: bool,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Print the new part of v_n — the factors appearing first at index n
    Newpart {
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        /// Index n ≥ 1
        #[arg(long, value_name = "N")]
        n: u64,
        #[command(flatten)]
        steps: StepsOpt,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// List all irreducible factors of all v_n up to a degree cap
    Atlas {
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        /// Degree cap N ≥ 1 for the collected factors
        #[arg(long, value_name = "N")]
        max_degree: usize,
        #[command(flatten)]
        steps: StepsOpt,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Locate and certify every repeated root of every new part
    Reproots {
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        #[command(flatten)]
        steps: StepsOpt,
    },
    /// Decide whether F²·D is Pellian
    SquareTimes {
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        /// The square factor F, coprime to D
        #[arg(long = "F", value_name = "POLY")]
        f: String,
        #[command(flatten)]
        steps: StepsOpt,
    },
    /// Enumerate the monic irreducible F of a given degree with F²·D Pellian
    #[command(name = "enumerate-F")]
    EnumerateF {
        #[arg(long = "D", value_name = "POLY")]
        d: String,
        /// Degree of the factors to enumerate
        #[arg(long, value_name = "F")]
        degree: usize,
        #[command(flatten)]
        steps: StepsOpt,
    },
    /// Run the cross-module self-check battery
    Verify {
        /// Seed for the randomized instance shapes
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.print();
            debug_assert!(rendered.is_ok());
            return ExitCode::from(match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    if e.is_certified_negative() {
        EXIT_NEGATIVE
    } else if matches!(e, Error::InvalidArgument(_)) {
        EXIT_USAGE
    } else {
        EXIT_UNKNOWN
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Solve { d, steps } => solve(&d, steps.resolve()?),
        Command::Generate { d, n, steps } => generate(&d, n, steps.resolve()?),
        Command::Psi { m, star, json } => psi_cmd(m, star, json),
        Command::Newpart { d, n, steps, json } => newpart(&d, n, steps.resolve()?, json),
        Command::Atlas {
            d,
            max_degree,
            steps,
            json,
        } => atlas(&d, max_degree, steps.resolve()?, json),
        Command::Reproots { d, steps } => reproots(&d, steps.resolve()?),
        Command::SquareTimes { d, f, steps } => square_times(&d, &f, steps.resolve()?),
        Command::EnumerateF { d, degree, steps } => enumerate_f(&d, degree, steps.resolve()?),
        Command::Verify { seed, json } => verify(seed, json),
    }
}

impl StepsOpt {
    /// Flag beats environment beats library default; must be positive.
    fn resolve(&self) -> Result<usize, Error> {
        let steps = match self.max_steps {
            Some(n) => n,
            None => match std::env::var("PELL_MAX_STEPS") {
                Ok(s) => s.parse().map_err(|_| {
                    Error::InvalidArgument(format!("PELL_MAX_STEPS must be a positive integer, got \"{s}\""))
                })?,
                Err(_) => DEFAULT_MAX_STEPS,
            },
        };
        if steps == 0 {
            return Err(Error::InvalidArgument("the step budget must be positive".into()));
        }
        Ok(steps)
    }
}

fn parse_poly(text: &str) -> Result<QPoly, Error> {
    QPoly::parse(text).map_err(Error::from)
}

fn poly_text(p: &QPoly) -> String {
    p.to_text('t')
}

fn factors_json(fac: &FactoredPoly, var: char) -> Value {
    json!({
        "content": fac.content().to_string(),
        "factors": fac
            .factors()
            .iter()
            .map(|(g, m)| json!({"poly": g.to_text(var), "multiplicity": m}))
            .collect::<Vec<_>>(),
    })
}

fn factors_text(fac: &FactoredPoly, var: char) -> String {
    if fac.factors().is_empty() {
        return fac.content().to_string();
    }
    let mut out = String::new();
    if !fac.content().is_one() {
        out.push_str(&format!("{} * ", fac.content()));
    }
    let parts: Vec<String> = fac
        .factors()
        .iter()
        .map(|(g, m)| {
            let g = g.to_text(var);
            if *m == 1 {
                format!("({g})")
            } else {
                format!("({g})^{m}")
            }
        })
        .collect();
    out.push_str(&parts.join(" * "));
    out
}

fn solve(d_text: &str, max_steps: usize) -> Result<u8, Error> {
    let d = parse_poly(d_text)?;
    match fundamental_solution_counted(&d, max_steps) {
        Ok(Some((u, v, steps))) => {
            emit!(
                "{}",
                json!({
                    "status": "found",
                    "u": poly_text(&u),
                    "v": poly_text(&v),
                    "steps": steps,
                })
            );
            Ok(EXIT_OK)
        }
        Ok(None) => {
            emit!(
                "{}",
                json!({"status": "unknown", "steps": max_steps})
            );
            Ok(EXIT_UNKNOWN)
        }
        Err(e) if e.is_certified_negative() => {
            emit!(
                "{}",
                json!({"status": "not_pellian_certified", "reason": e.to_string()})
            );
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(e),
    }
}

fn solve_instance(d_text: &str, max_steps: usize) -> Result<Option<PellInstance>, Error> {
    PellInstance::solve(&parse_poly(d_text)?, max_steps)
}

fn generate(d_text: &str, n: i64, max_steps: usize) -> Result<u8, Error> {
    let Some(inst) = solve_instance(d_text, max_steps)? else {
        emit!("{}", json!({"status": "unknown", "steps": max_steps}));
        return Ok(EXIT_UNKNOWN);
    };
    let sol = inst.generate(n);
    emit!(
        "{}",
        json!({
            "n": sol.n,
            "u": poly_text(&sol.u_n),
            "v": poly_text(&sol.v_n),
        })
    );
    Ok(EXIT_OK)
}

fn psi_cmd(m: u64, star: bool, json_mode: bool) -> Result<u8, Error> {
    if m < 2 {
        return Err(Error::InvalidArgument(
            "ψ is defined for indices m ≥ 2".into(),
        ));
    }
    let p = psi(m);
    let fac = pell_core::factor::factor_rationals(p.poly());
    let star_poly = if star { Some(psi_star(m)?) } else { None };
    if json_mode {
        let mut obj = json!({
            "m": m,
            "psi": p.poly().to_text('u'),
            "degree": p.degree(),
            "factorization": factors_json(&fac, 'u'),
        });
        if let Some(sp) = &star_poly {
            obj["star"] = Value::String(sp.to_text('u'));
        }
        emit!("{obj}");
    } else {
        emit!("{}", p.poly().to_text('u'));
        emit!("factors: {}", factors_text(&fac, 'u'));
        if let Some(sp) = &star_poly {
            emit!("star: {}", sp.to_text('u'));
        }
    }
    Ok(EXIT_OK)
}

fn newpart(d_text: &str, n: u64, max_steps: usize, json_mode: bool) -> Result<u8, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("the index n must be positive".into()));
    }
    let Some(inst) = solve_instance(d_text, max_steps)? else {
        emit!("{}", json!({"status": "unknown", "steps": max_steps}));
        return Ok(EXIT_UNKNOWN);
    };
    let part = v_new(&inst, n);
    if json_mode {
        emit!(
            "{}",
            json!({
                "n": n,
                "poly": poly_text(part.poly()),
                "factorization": factors_json(part.factors(), 't'),
            })
        );
    } else {
        emit!("v_{n}^new = {}", poly_text(part.poly()));
        emit!("factors: {}", factors_text(part.factors(), 't'));
    }
    Ok(EXIT_OK)
}

fn atlas(d_text: &str, max_degree: usize, max_steps: usize, json_mode: bool) -> Result<u8, Error> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("the degree cap must be positive".into()));
    }
    let Some(inst) = solve_instance(d_text, max_steps)? else {
        emit!("{}", json!({"status": "unknown", "steps": max_steps}));
        return Ok(EXIT_UNKNOWN);
    };
    let atlas = enumerate_atlas(&inst, max_degree);
    if json_mode {
        emit!(
            "{}",
            json!({
                "degree_cap": atlas.degree_cap(),
                "scan_range": atlas.scan_range(),
                "entries": atlas
                    .entries()
                    .iter()
                    .map(|e| json!({"factor": poly_text(&e.factor), "witnesses": e.witnesses}))
                    .collect::<Vec<_>>(),
                "hard_bound": atlas.hard_bound(),
                "soft_bound": atlas.soft_bound(),
            })
        );
    } else {
        emit!(
            "{} factors of degree ≤ {} across indices {:?}",
            atlas.len(),
            atlas.degree_cap(),
            atlas.scan_range(),
        );
        for e in atlas.entries() {
            emit!("{}  (first at n = {:?})", poly_text(&e.factor), e.witnesses);
        }
    }
    Ok(EXIT_OK)
}

fn reproots(d_text: &str, max_steps: usize) -> Result<u8, Error> {
    let Some(inst) = solve_instance(d_text, max_steps)? else {
        emit!("{}", json!({"status": "unknown", "steps": max_steps}));
        return Ok(EXIT_UNKNOWN);
    };
    let specs: Vec<Value> = repeated_roots_report(&inst)
        .into_iter()
        .map(|s| {
            json!({
                "p_alpha": poly_text(&s.p_alpha),
                "d_alpha": s.d_alpha,
                "n": s.n,
                "k": s.k,
                "multiplicity": s.certified_multiplicity,
                "cos_min_poly": s.cos_min_poly.as_ref().map(|m| m.to_text('x')),
            })
        })
        .collect();
    emit!("{}", Value::Array(specs));
    Ok(EXIT_OK)
}

fn square_times(d_text: &str, f_text: &str, max_steps: usize) -> Result<u8, Error> {
    let d = parse_poly(d_text)?;
    let f = parse_poly(f_text)?;
    let q = is_square_times_pellian(&d, &f, max_steps)?;
    let (verdict, code) = match q.verdict() {
        SquareTimesVerdict::Pellian => ("pellian", EXIT_OK),
        SquareTimesVerdict::NotPellian => ("not_pellian", EXIT_NEGATIVE),
        SquareTimesVerdict::BaseNotSolved => ("base_not_solved", EXIT_UNKNOWN),
    };
    emit!(
        "{}",
        json!({
            "verdict": verdict,
            "witness_n": q.witness_n(),
        })
    );
    Ok(code)
}

fn enumerate_f(d_text: &str, degree: usize, max_steps: usize) -> Result<u8, Error> {
    let d = parse_poly(d_text)?;
    let list: Vec<Value> = enumerate_square_factors(&d, degree, max_steps)?
        .into_iter()
        .map(|(g, n)| json!({"F": poly_text(&g), "witness_n": n}))
        .collect();
    emit!("{}", Value::Array(list));
    Ok(EXIT_OK)
}

fn verify(seed: u64, json_mode: bool) -> Result<u8, Error> {
    // Panics inside failing checks are caught by the battery; suppress the
    // default hook's stderr traces so the report stays the only output.
    let prev_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let results = run_self_checks(seed);
    std::panic::set_hook(prev_hook);

    let all_passed = results.iter().all(|c| c.passed);
    if json_mode {
        let items: Vec<Value> = results
            .iter()
            .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
            .collect();
        emit!("{}", Value::Array(items));
    } else {
        for c in &results {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            emit!("{tag} {} — {}", c.name, c.detail);
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_NEGATIVE })
}
