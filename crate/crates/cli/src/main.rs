//! Command-line front end for the `e510` library.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 an anomaly was found,
//! 3 a certificate failed verification.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use e510::modules_sl5::{build_irreducible, TensorMonomial};
use e510::sl5::weyl_dimension;
use e510::uminus::{omega, omega_basis_dimension, parse_tuple, UElement, UMonomial};
use e510::verma::{
    check_morphism, classify, compose, dual_morphism, morphism_between, search, verify_certificate,
    verify_degree_equations, Certificate, ClassRow, Conditions, Family, ModuleCache, MorphismData,
};
use e510::{Scalar, Weight};

#[derive(Parser)]
#[command(name = "e510", version, about = "Singular vectors and morphisms of generalized Verma modules over E(5,10)")]
struct Cli {
    /// Worker threads for searches and sweeps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Machine readable output.
    #[arg(long, global = true)]
    json: bool,
    /// LaTeX rendering of elements of U_-.
    #[arg(long, global = true)]
    latex: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expansion of ω_I in the PBW basis, e.g. `omega 21,13,45,25`.
    Omega { tuple: String },
    /// Dimension of the degree d part of U_-.
    DimU {
        #[arg(long)]
        degree: usize,
    },
    /// The irreducible sl(5)-module F(λ).
    Irrep {
        #[arg(long)]
        lambda: Weight,
    },
    /// Singular vectors of degree d in M(μ), one certificate each.
    Singular {
        #[arg(long)]
        mu: Weight,
        #[arg(long)]
        degree: usize,
        /// Only look at this weight.
        #[arg(long)]
        lambda: Option<Weight>,
        /// Directory for the certificates.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Re-read and verify the written certificates.
        #[arg(long)]
        verify: bool,
    },
    /// Sweep all dominant μ with entries at most `max-entry`.
    Classify {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        max_entry: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        verify: bool,
    },
    /// Compose degree 1 morphisms M(λ) → M(ν_1) → … → M(μ).
    Compose {
        #[arg(long)]
        lambda: Weight,
        /// Intermediate weights, in order.
        #[arg(long)]
        via: Vec<Weight>,
        #[arg(long)]
        mu: Weight,
    },
    /// Dual of the morphism M(λ) → M(μ) of the given degree.
    Dual {
        #[arg(long)]
        lambda: Weight,
        #[arg(long)]
        mu: Weight,
        #[arg(long)]
        degree: usize,
    },
    /// Recompute the checks of certificate files.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Anomaly,
    Verification(String),
}

impl From<e510::Error> for Failure {
    fn from(e: e510::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    json: bool,
    latex: bool,
}

impl Output {
    fn element(&self, u: &UElement) -> String {
        if self.latex {
            u.to_latex()
        } else {
            u.to_text()
        }
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn cmd_omega(out: &Output, tuple: &str) -> Result<(), Failure> {
    let tuple = parse_tuple(tuple)?;
    let w = omega::<Scalar>(&tuple);
    if out.json {
        print_json(&w.to_json());
    } else {
        println!("{}", out.element(&w));
    }
    Ok(())
}

fn cmd_dim_u(out: &Output, degree: usize) -> Result<(), Failure> {
    let pbw = UMonomial::all_of_degree(degree).len();
    let omega = omega_basis_dimension(degree);
    if pbw != omega {
        return Err(Failure::Verification(format!("PBW count {pbw} differs from the ω basis count {omega}")));
    }
    if out.json {
        print_json(&json!({ "degree": degree, "dimension": pbw }));
    } else {
        println!("{pbw}");
    }
    Ok(())
}

fn cmd_irrep(out: &Output, lambda: Weight) -> Result<(), Failure> {
    let m = build_irreducible::<Scalar>(lambda)?;
    let weyl = weyl_dimension(lambda)?;
    let hw = TensorMonomial::highest(lambda);
    if out.json {
        print_json(
            &json!({ "lambda": lambda, "dimension": m.dim(), "weyl_dimension": weyl, "highest": hw.to_string() }),
        );
    } else {
        println!("F{lambda}: dimension {} (Weyl {weyl}), highest vector {hw}", m.dim());
        for (depth, level) in m.levels().iter().enumerate() {
            println!("  depth {depth}: {}", level.len());
        }
    }
    Ok(())
}

fn certificate_name(c: &Certificate, k: usize) -> String {
    let w = |x: Weight| x.0.map(|v| v.to_string()).join("_");
    format!("mu{}-lambda{}-d{}-{k}.json", w(c.mu), w(c.lambda), c.degree)
}

/// Writes the certificates to `dir` (or prints them when `json` is set and
/// there is no directory), then optionally verifies the written files.
fn emit(out: &Output, certs: &[Certificate], dir: Option<&Path>, verify: bool) -> Result<(), Failure> {
    let mut written = Vec::new();
    if let Some(dir) = dir {
        fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
        for (k, c) in certs.iter().enumerate() {
            let path = dir.join(certificate_name(c, k));
            fs::write(&path, c.to_json_string() + "\n")
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            written.push(path);
        }
    } else if out.json {
        let all: Vec<serde_json::Value> =
            certs.iter().map(|c| serde_json::to_value(c).expect("certificates serialize")).collect();
        print_json(&serde_json::Value::Array(all));
    }
    if verify {
        if written.is_empty() {
            for c in certs {
                let round = Certificate::from_json_str(&c.to_json_string())?;
                check_certificate(&round)?;
            }
        } else {
            verify_files(&written, true)?;
        }
    }
    Ok(())
}

fn check_certificate(c: &Certificate) -> Result<(), Failure> {
    match verify_certificate(c) {
        Ok(checks) if checks.all() || (c.degree > 3 && checks.l0_highest && checks.x5d45 && checks.full_l1) => Ok(()),
        Ok(checks) => Err(Failure::Verification(format!("checks failed: {checks:?}"))),
        Err(e) => Err(Failure::Verification(e.to_string())),
    }
}

fn verify_files(files: &[PathBuf], quiet: bool) -> Result<(), Failure> {
    let mut bad = 0;
    for f in files {
        let text = fs::read_to_string(f).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
        let outcome = Certificate::from_json_str(&text)
            .map_err(|e| Failure::Verification(e.to_string()))
            .and_then(|c| check_certificate(&c));
        match outcome {
            Ok(()) if !quiet => println!("{}: ok", f.display()),
            Ok(()) => {}
            Err(Failure::Verification(msg)) => {
                bad += 1;
                eprintln!("{}: {msg}", f.display());
            }
            Err(other) => return Err(other),
        }
    }
    if bad > 0 {
        return Err(Failure::Verification(format!("{bad} of {} certificates failed", files.len())));
    }
    Ok(())
}

fn cmd_singular(
    out: &Output,
    mu: Weight,
    degree: usize,
    lambda: Option<Weight>,
    dir: Option<&Path>,
    verify: bool,
) -> Result<(), Failure> {
    if degree == 0 {
        return Err(Failure::Usage("degree must be at least 1".into()));
    }
    let cache = ModuleCache::<Scalar>::default();
    let only = lambda.map(|l| vec![l]);
    let spaces = search(&cache, mu, degree, only.as_deref(), Conditions::Singular)?;
    let mut certs = Vec::new();
    let mut anomaly = false;
    for s in &spaces {
        for v in &s.basis {
            let mut c = Certificate::new(&cache, v, s.lambda)?;
            if degree <= 3 && s.basis.len() != 1 {
                c.family = Family::Anomaly.as_str().to_string();
            }
            anomaly |= c.family == Family::Anomaly.as_str();
            certs.push(c);
        }
    }
    if !out.json || dir.is_some() {
        println!("{} singular vector(s) of degree {degree} in M{mu}", certs.len());
        for c in &certs {
            let lead = UElement::from_json(&c.leading_term)?;
            println!("  λ = {}  {}  leading term {}", c.lambda, c.family, out.element(&lead));
        }
    }
    emit(out, &certs, dir, verify)?;
    if anomaly {
        return Err(Failure::Anomaly);
    }
    Ok(())
}

fn row_json(r: &ClassRow) -> serde_json::Value {
    json!({
        "mu": r.mu,
        "lambda": r.lambda,
        "dimension": r.dimension,
        "family": r.family.as_str(),
        "leading_term": r.leading_term.to_json(),
    })
}

fn cmd_classify(out: &Output, degree: usize, max_entry: i64, dir: Option<&Path>, verify: bool) -> Result<(), Failure> {
    if degree == 0 || max_entry < 0 {
        return Err(Failure::Usage("degree must be at least 1 and max-entry nonnegative".into()));
    }
    let cache = ModuleCache::<Scalar>::default();
    let rows = classify(&cache, degree, max_entry)?;
    if out.json {
        print_json(&serde_json::Value::Array(rows.iter().map(row_json).collect()));
    } else {
        for r in &rows {
            println!(
                "μ = {}  λ = {}  dim {}  {}  {}",
                r.mu,
                r.lambda,
                r.dimension,
                r.family,
                out.element(&r.leading_term)
            );
        }
        let anomalies = rows.iter().filter(|r| r.family == Family::Anomaly).count();
        println!("{} hit(s), {anomalies} anomal{}", rows.len(), if anomalies == 1 { "y" } else { "ies" });
    }
    if dir.is_some() || verify {
        let mut certs = Vec::new();
        for r in &rows {
            for v in &r.vectors {
                let mut c = Certificate::new(&cache, v, r.lambda)?;
                if r.family == Family::Anomaly {
                    c.family = Family::Anomaly.as_str().to_string();
                }
                certs.push(c);
            }
        }
        let quiet = Output { json: false, latex: out.latex };
        emit(&quiet, &certs, dir, verify)?;
    }
    if rows.iter().any(|r| r.family == Family::Anomaly) {
        return Err(Failure::Anomaly);
    }
    Ok(())
}

fn describe(out: &Output, name: &str, phi: &MorphismData) -> Result<bool, Failure> {
    let check = check_morphism(phi);
    let equations = if (1..=3).contains(&phi.degree()) { Some(verify_degree_equations(phi)?) } else { None };
    let ok = check.passed() && equations.as_ref().is_none_or(|e| e.passed());
    if out.json {
        print_json(&json!({
            "name": name,
            "lambda": phi.lambda(),
            "mu": phi.mu(),
            "degree": phi.degree(),
            "zero": phi.is_zero(),
            "leading_term": phi.leading_term().to_json(),
            "check_morphism": check.passed(),
            "equations": equations.as_ref().map(|e| e.passed()),
        }));
    } else {
        println!("{name}: M{} → M{}, degree {}", phi.lambda(), phi.mu(), phi.degree());
        if phi.is_zero() {
            println!("  zero map");
        } else {
            println!("  leading term {}", out.element(&phi.leading_term()));
        }
        match &check.failure {
            None => println!("  morphism check: ok"),
            Some(f) => println!("  morphism check: FAILED ({f})"),
        }
        if let Some(e) = &equations {
            for line in e.to_string().lines() {
                println!("  {line}");
            }
        }
    }
    Ok(ok)
}

fn cmd_compose(out: &Output, lambda: Weight, via: &[Weight], mu: Weight) -> Result<(), Failure> {
    let cache = ModuleCache::<Scalar>::default();
    let chain: Vec<Weight> = std::iter::once(lambda).chain(via.iter().copied()).chain(std::iter::once(mu)).collect();
    let mut phi = morphism_between(&cache, chain[0], chain[1], 1)?;
    for step in chain[1..].windows(2) {
        let next = morphism_between(&cache, step[0], step[1], 1)?;
        phi = compose(&next, &phi)?;
    }
    let ok = describe(out, "composite", &phi)?;
    if !ok {
        return Err(Failure::Verification("the composite is not a morphism".into()));
    }
    Ok(())
}

fn cmd_dual(out: &Output, lambda: Weight, mu: Weight, degree: usize) -> Result<(), Failure> {
    let cache = ModuleCache::<Scalar>::default();
    let phi = morphism_between(&cache, lambda, mu, degree)?;
    let psi = dual_morphism(&phi)?;
    let ok = describe(out, "dual", &psi)?;
    if !ok {
        return Err(Failure::Verification("the dual map is not a morphism".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    let out = Output { json: cli.json, latex: cli.latex };
    match cli.command {
        Command::Omega { tuple } => cmd_omega(&out, &tuple),
        Command::DimU { degree } => cmd_dim_u(&out, degree),
        Command::Irrep { lambda } => cmd_irrep(&out, lambda),
        Command::Singular { mu, degree, lambda, out: dir, verify } => {
            cmd_singular(&out, mu, degree, lambda, dir.as_deref(), verify)
        }
        Command::Classify { degree, max_entry, out: dir, verify } => {
            cmd_classify(&out, degree, max_entry, dir.as_deref(), verify)
        }
        Command::Compose { lambda, via, mu } => cmd_compose(&out, lambda, &via, mu),
        Command::Dual { lambda, mu, degree } => cmd_dual(&out, lambda, mu, degree),
        Command::Verify { files } => verify_files(&files, false),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Anomaly) => {
            eprintln!("anomaly found");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
