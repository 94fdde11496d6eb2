use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use dahakit::analysis::{
    burnside_irreducible, classify, closure_dimension, criterion, criterion_violations, find_intertwiner, l_matrix,
    l_matrix_all_routes, IntertwinerOutcome, Route,
};
use dahakit::modrep::{
    central_character, commutation_check, ladder_check, make_e, make_o, quotient_check, verify_relations, Ladder,
    ModuleRep,
};
use dahakit::params::{canonical_orbit_rep, in_ep, orbit_members, ParamQuadruple, Parity, TwistElement};
use dahakit::report::Report;
use dahakit::sampling::Sampler;
use dahakit::scalar::{Backend, Field, RatFun, Rational};
use dahakit::suite::{run_suite, SuiteConfig};

use crate::{Cli, Command, ParamArgs, RouteArg};

pub const OK: u8 = 0;
pub const USAGE: u8 = 2;
pub const CONSTRAINT: u8 = 3;
pub const IO: u8 = 4;
pub const VERIFICATION: u8 = 5;
pub const CLASSIFICATION: u8 = 6;
pub const INTERNAL: u8 = 7;

/// A malformed command line that clap's own validation cannot catch.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Maps an error chain to the documented exit code.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<dahakit::Error>() {
            return match err {
                dahakit::Error::Constraint(_) | dahakit::Error::Contract(_) => CONSTRAINT,
                dahakit::Error::Parse(_) => IO,
                dahakit::Error::Classification(_) => CLASSIFICATION,
                _ => INTERNAL,
            };
        }
        if cause.is::<UsageError>() {
            return USAGE;
        }
        if cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return IO;
        }
    }
    INTERNAL
}

pub fn run(cli: &Cli) -> Result<u8> {
    let backend = match cli.backend {
        Some(b) => b,
        None => detect_backend(&cli.command)?,
    };
    match backend {
        Backend::Rational => dispatch::<Rational>(cli),
        Backend::Ratfun => dispatch::<RatFun>(cli),
    }
}

fn detect_backend(cmd: &Command) -> Result<Backend> {
    let path = match cmd {
        Command::Verify { module }
        | Command::Irreducible { module }
        | Command::Classify { module }
        | Command::Twist { module, .. } => module,
        Command::Intertwiner { from, .. } => from,
        _ => return Ok(Backend::Rational),
    };
    let v: Value = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let q = v["params"]["q"].as_str().unwrap_or_default();
    Ok(Backend::detect(q))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load<F: Field>(path: &Path) -> Result<ModuleRep<F>> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing module {}", path.display()))
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match &cli.out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn params<F: Field>(a: &ParamArgs) -> Result<ParamQuadruple<F>> {
    let q: F = a.q.parse()?;
    let k: Vec<F> = a.k.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let k: [F; 4] = k
        .try_into()
        .map_err(|k: Vec<F>| UsageError(format!("--k needs exactly four values, got {}", k.len())))?;
    let parity = a.parity.unwrap_or(if a.d % 2 == 1 { Parity::Even } else { Parity::Odd });
    Ok(ParamQuadruple::new(q, k, a.d, parity)?)
}

fn construct<F: Field>(p: &ParamQuadruple<F>) -> dahakit::Result<ModuleRep<F>> {
    match p.parity() {
        Parity::Even => make_e(p),
        Parity::Odd => make_o(p),
    }
}

fn dispatch<F: Field>(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Construct(a) => {
            emit(cli, &construct(&params::<F>(a)?)?)?;
            Ok(OK)
        }
        Command::Verify { module } => verify::<F>(cli, module),
        Command::Irreducible { module } => {
            let m = load::<F>(module)?;
            let closure = closure_dimension(&m)?;
            emit(
                cli,
                &json!({
                    "dim": m.dim,
                    "closure_dimension": closure,
                    "full_dimension": m.dim * m.dim,
                    "irreducible": closure == m.dim * m.dim,
                    "criterion": criterion(&m.params)?,
                }),
            )?;
            Ok(OK)
        }
        Command::Classify { module } => {
            let m = load::<F>(module)?;
            if !verify_relations(&m).all_passed() {
                emit(cli, &json!({ "verdict": "invalid", "reason": "module fails the defining relations" }))?;
                return Ok(VERIFICATION);
            }
            if !burnside_irreducible(&m)? {
                emit(
                    cli,
                    &json!({ "verdict": "reducible", "dim": m.dim, "closure_dimension": closure_dimension(&m)? }),
                )?;
                return Ok(OK);
            }
            emit(cli, &classify(&m)?)?;
            Ok(OK)
        }
        Command::Intertwiner { from, to } => {
            let (a, b) = (load::<F>(from)?, load::<F>(to)?);
            let v = match find_intertwiner(&a, &b)? {
                IntertwinerOutcome::Found(t) => json!({ "outcome": "found", "matrix": t }),
                IntertwinerOutcome::None => json!({ "outcome": "none" }),
                IntertwinerOutcome::Indeterminate => json!({ "outcome": "indeterminate" }),
            };
            emit(cli, &v)?;
            Ok(OK)
        }
        Command::Twist { module, by } => {
            emit(cli, &load::<F>(module)?.twisted(TwistElement::new(*by)))?;
            Ok(OK)
        }
        Command::Lmatrix { params: a, route } => {
            let p = params::<F>(a)?;
            let route = match route {
                RouteArg::Operator => Some(Route::OperatorProduct),
                RouteArg::Recurrence => Some(Route::Recurrence),
                RouteArg::Closed => Some(Route::ClosedForm),
                RouteArg::All => None,
            };
            match route {
                Some(r) => emit(cli, &l_matrix(&p, r)?)?,
                None => emit(cli, &l_matrix_all_routes(&p)?)?,
            }
            Ok(OK)
        }
        Command::Orbit(a) => {
            let p = params::<F>(a)?;
            p.require(Parity::Even)?;
            emit(
                cli,
                &json!({
                    "canonical": canonical_orbit_rep(&p)?,
                    "members": orbit_members(&p)?,
                    "in_ep": in_ep(&p)?,
                }),
            )?;
            Ok(OK)
        }
        Command::Sweep {
            parity,
            d,
            q,
            grid,
            seed,
        } => sweep::<F>(cli, *parity, *d, q.as_deref(), *grid, *seed),
        Command::Selftest { seed, grid, workers } => {
            let cfg = SuiteConfig {
                seed: *seed,
                grid: *grid,
                backend: cli.backend.unwrap_or(Backend::Rational),
                workers: *workers,
            };
            let outcomes = run_suite(&cfg);
            for o in &outcomes {
                println!("{}", o.line());
                for f in o.failures.iter().take(5) {
                    println!("    {f}");
                }
            }
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&json!({ "config": cfg, "criteria": outcomes }))? + "\n";
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if outcomes.iter().all(|o| o.passed) { OK } else { VERIFICATION })
        }
    }
}

fn verify<F: Field>(cli: &Cli, path: &Path) -> Result<u8> {
    let m = load::<F>(path)?;
    let mut report = verify_relations(&m);
    let chi = central_character(&m).ok();
    if report.all_passed() {
        report.extend(commutation_check(&m));
        if m.twist == TwistElement::IDENTITY {
            for which in [Ladder::X, Ladder::Y] {
                report.extend(ladder_check(&m, which)?);
            }
            report.extend(quotient_check(&m)?);
        }
    }
    let passed = report.all_passed();
    emit(
        cli,
        &json!({
            "label": m.label,
            "dim": m.dim,
            "twist": m.twist,
            "passed": passed,
            "central_character": chi,
            "checks": report_checks(&report),
        }),
    )?;
    Ok(if passed { OK } else { VERIFICATION })
}

fn report_checks(r: &Report) -> Value {
    serde_json::to_value(&r.checks).expect("checks serialize")
}

fn sweep<F: Field>(cli: &Cli, parity: Parity, d: Option<usize>, q: Option<&str>, grid: usize, seed: u64) -> Result<u8> {
    let q: F = match q {
        Some(s) => s.parse()?,
        None if F::BACKEND == "ratfun" => "q".parse()?,
        None => F::from_int(2),
    };
    let ds: Vec<usize> = match (d, parity) {
        (Some(d), _) => vec![d],
        (None, Parity::Even) => vec![1, 3, 5],
        (None, Parity::Odd) => vec![0, 2, 4],
    };
    let mut s = Sampler::new(seed, q);
    let mut rows = Vec::with_capacity(grid);
    let mut agree = true;
    for i in 0..grid {
        let d = ds[i % ds.len()];
        let p = match (i % 4 == 3).then(|| s.adversarial(parity, d)).flatten() {
            Some(p) => p,
            None => s.sample(parity, d),
        };
        let m = construct(&p)?;
        let closure = closure_dimension(&m)?;
        let crit = criterion(&p)?;
        let burnside = closure == m.dim * m.dim;
        agree &= crit == burnside;
        rows.push(json!({
            "params": p,
            "criterion": crit,
            "burnside": burnside,
            "closure_dimension": closure,
            "violations": criterion_violations(&p),
        }));
    }
    emit(cli, &json!({ "seed": seed, "agree": agree, "samples": rows }))?;
    Ok(if agree { OK } else { VERIFICATION })
}
