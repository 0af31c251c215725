//! Command-line front end. Every command is a thin composition of
//! library calls: load an input, run one computation, render the result.
//! Exit codes: 0 on success or a passing certificate, 1 on usage or
//! computation errors, 2 when a requested check or certification fails.

mod input;
mod render;

use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use matlor::charpoly::{
    characteristic_polynomial, finite_field_count, reduced_characteristic_polynomial,
};
use matlor::cone::{approach_alpha, approach_beta, sample_ample, AmplePoint};
use matlor::lorentz::{certify_chain, certify_lorentzian, hodge_2x2, perron, verify_rhw};
use matlor::matroid::{interval_minor, Chain, Matroid};
use matlor::volume::{mixed_degree_all, volume_polynomial, ChainContext};
use matlor::Rational;
use serde::Serialize;

use render::{bigints, emit, poly_in_flat_vars, rationals, CertificateOut, PolyOut, VolumeOut};

const EXIT_CHECK_FAILED: u8 = 2;

#[derive(Parser)]
#[command(
    name = "matlor",
    version,
    about = "Exact matroid invariants, ample-cone sampling, and Lorentzian signature certificates",
    after_help = "Matroid inputs are either `uniform:r,n` or a file. Flats files are JSON \
                  {\"ground\": n, \"flats\": [[..], ..]}; graph files start with `V E` followed \
                  by E edge lines; arrangement files start with `p dims count` followed by count \
                  coefficient rows mod p; matrix files start with `n` followed by n rows of n \
                  rationals. Rationals are written `p/q`."
)]
struct Cli {
    /// Emit a JSON document instead of human-readable text
    #[arg(long, global = true)]
    json: bool,

    /// Refuse matroids with more flats than this
    #[arg(long, global = true, default_value_t = 200)]
    max_flats: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// JSON file listing the ground size and every flat
    Flats,
    /// Edge-list file; the input is the cycle matroid of the graph
    Graph,
    /// Arrangement file; the input is its intersection lattice
    Ffmatrix,
}

#[derive(Args)]
struct MatroidArg {
    /// Matroid source: a file path or `uniform:r,n`
    input: String,

    /// How to read a file input
    #[arg(long, value_enum, default_value_t = Format::Flats)]
    format: Format,
}

impl MatroidArg {
    fn load(&self, max_flats: usize) -> Result<Matroid> {
        input::load_matroid(&self.input, self.format, max_flats)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matroid input and print its basic invariants
    Check(MatroidArg),
    /// Characteristic and reduced characteristic polynomials
    Charpoly(MatroidArg),
    /// Chromatic polynomial of a graph edge list
    Chromatic {
        /// Graph edge-list file
        input: String,
    },
    /// Volume polynomial in the proper-flat variables
    Volume(MatroidArg),
    /// Mixed degrees of the volume polynomial against both boundary classes
    Mixed(MatroidArg),
    /// Lorentzian certificate of the Hessian at a seeded ample point
    Certify {
        #[command(flatten)]
        source: MatroidArg,
        /// Seed for the sampled ample point and directions
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of ample derivative directions taken before the Hessian
        #[arg(long, default_value_t = 0)]
        dirs: usize,
    },
    /// Certificate for the product polynomial over a chain of flats
    CertifyChain {
        #[command(flatten)]
        source: MatroidArg,
        /// Comma-separated interior flat ids, e.g. 3,9
        #[arg(long)]
        chain: String,
        /// Seed for the blockwise sampled ample points
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// 2x2 determinant test near the boundary classes
    Hodge {
        #[command(flatten)]
        source: MatroidArg,
        /// Seed for the sampled ample directions
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Boundary offset, a positive rational like 1/2 (repeatable)
        #[arg(long = "eps")]
        eps: Vec<String>,
    },
    /// Log-concavity report for the characteristic coefficients
    Rhw(MatroidArg),
    /// Complement point counts over finite field extensions
    Ffcount {
        /// Arrangement file
        input: String,
        /// Largest extension degree to count over
        #[arg(long, default_value_t = 2)]
        powers: u32,
    },
    /// Largest eigenvalue and positive eigenvector of a symmetric matrix
    Pf {
        /// Matrix file
        input: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    let max_flats = cli.max_flats;
    match &cli.command {
        Command::Check(arg) => check(arg, json, max_flats),
        Command::Charpoly(arg) => charpoly(&arg.load(max_flats)?, json),
        Command::Chromatic { input } => chromatic(input, json),
        Command::Volume(arg) => volume(&arg.load(max_flats)?, json),
        Command::Mixed(arg) => mixed(&arg.load(max_flats)?, json),
        Command::Certify { source, seed, dirs } => {
            certify(&source.load(max_flats)?, *seed, *dirs, json)
        }
        Command::CertifyChain {
            source,
            chain,
            seed,
        } => certify_over_chain(&source.load(max_flats)?, chain, *seed, json),
        Command::Hodge { source, seed, eps } => hodge(&source.load(max_flats)?, *seed, eps, json),
        Command::Rhw(arg) => rhw(&arg.load(max_flats)?, json),
        Command::Ffcount { input, powers } => ffcount(input, *powers, json),
        Command::Pf { input } => pf(input, json),
    }
}

#[derive(Serialize)]
struct CheckOut {
    valid: bool,
    ground: usize,
    rank: usize,
    flats: usize,
    loopless: bool,
    hash: String,
}

fn check(arg: &MatroidArg, json: bool, max_flats: usize) -> Result<ExitCode> {
    let m = match arg.load(max_flats) {
        Ok(m) => m,
        Err(e) => {
            let io_or_syntax = e.chain().any(|c| {
                c.downcast_ref::<std::io::Error>().is_some()
                    || c.downcast_ref::<serde_json::Error>().is_some()
            });
            if io_or_syntax {
                return Err(e);
            }
            if json {
                emit(&serde_json::json!({ "valid": false, "reason": format!("{e:#}") }))?;
            } else {
                println!("invalid: {e:#}");
            }
            return Ok(ExitCode::from(EXIT_CHECK_FAILED));
        }
    };
    let out = CheckOut {
        valid: true,
        ground: m.ground_size(),
        rank: m.rank(),
        flats: m.num_flats(),
        loopless: m.is_loopless(),
        hash: m.canonical_hash(),
    };
    if json {
        emit(&out)?;
    } else {
        println!(
            "valid: ground {}, rank {}, {} flats, loopless: {}",
            out.ground, out.rank, out.flats, out.loopless
        );
        println!("hash: {}", out.hash);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CharpolyOut {
    characteristic: PolyOut,
    mu: Vec<String>,
    reduced: PolyOut,
    reduced_mu: Vec<String>,
}

fn charpoly(m: &Matroid, json: bool) -> Result<ExitCode> {
    let cp = characteristic_polynomial(m)?;
    let rp = reduced_characteristic_polynomial(m)?;
    if json {
        emit(&CharpolyOut {
            characteristic: PolyOut::new(&cp.poly, "q"),
            mu: bigints(&cp.mu),
            reduced: PolyOut::new(&rp.poly, "q"),
            reduced_mu: bigints(&rp.mu),
        })?;
    } else {
        println!("characteristic: {}", cp.poly.display("q"));
        println!("mu: {}", bigints(&cp.mu).join(" "));
        println!("reduced: {}", rp.poly.display("q"));
        println!("reduced mu: {}", bigints(&rp.mu).join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ChromaticOut {
    chromatic: PolyOut,
    mu: Option<Vec<String>>,
}

fn chromatic(path: &str, json: bool) -> Result<ExitCode> {
    let g = input::load_graph(path)?;
    let p = g.chromatic_polynomial()?;
    let mu = if p.is_zero() {
        None
    } else {
        let m = matlor::graphs::graphic_matroid(&g)?;
        Some(bigints(&characteristic_polynomial(&m)?.mu))
    };
    if json {
        emit(&ChromaticOut {
            chromatic: PolyOut::new(&p, "q"),
            mu,
        })?;
    } else {
        println!("chromatic: {}", p.display("q"));
        match &mu {
            Some(mu) => println!("mu: {}", mu.join(" ")),
            None => println!("mu: none (the graph has a loop)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn volume(m: &Matroid, json: bool) -> Result<ExitCode> {
    let v = volume_polynomial(m)?;
    if json {
        emit(&VolumeOut::new(&v))?;
    } else {
        println!(
            "variables: {} (t<i> is the coordinate of flat id i)",
            v.arity()
        );
        println!("volume: {}", poly_in_flat_vars(&v));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct MixedOut {
    values: Vec<String>,
}

fn mixed(m: &Matroid, json: bool) -> Result<ExitCode> {
    let values = mixed_degree_all(m)?;
    if json {
        emit(&MixedOut {
            values: rationals(&values),
        })?;
    } else {
        for (k, v) in values.iter().enumerate() {
            println!("k={k}: {v}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn finish_certificate(cert: &matlor::lorentz::Certificate, json: bool) -> Result<ExitCode> {
    if json {
        emit(&CertificateOut::from(cert))?;
    } else {
        println!("{cert}");
    }
    Ok(if cert.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn certify(m: &Matroid, seed: u64, dirs: usize, json: bool) -> Result<ExitCode> {
    let u = sample_ample(m, seed)?;
    let directions: Vec<AmplePoint> = (0..dirs)
        .map(|j| sample_ample(m, seed + 1000 + j as u64))
        .collect::<Result<_, _>>()?;
    let cert = certify_lorentzian(m, &u, &directions)?;
    finish_certificate(&cert, json)
}

fn certify_over_chain(m: &Matroid, chain: &str, seed: u64, json: bool) -> Result<ExitCode> {
    let interior = input::parse_chain(chain)?;
    let chain = Chain::new(m, &interior)?;
    let ctx = ChainContext::new(m, chain.clone());
    let mut points = Vec::new();
    for (b, &(lo, hi)) in ctx.blocks().iter().enumerate() {
        let (minor, _) = interval_minor(m, lo, hi)?;
        points.push(sample_ample(&minor, seed + b as u64)?);
    }
    let cert = certify_chain(m, &chain, &points, &[])?;
    finish_certificate(&cert, json)
}

#[derive(Serialize)]
struct HodgeRow {
    eps: String,
    dxx: String,
    dxy: String,
    dyy: String,
    determinant: String,
    nonpositive: bool,
}

fn hodge(m: &Matroid, seed: u64, eps: &[String], json: bool) -> Result<ExitCode> {
    let eps: Vec<Rational> = if eps.is_empty() {
        vec![input::parse_rational("1/2")?]
    } else {
        eps.iter()
            .map(|s| input::parse_rational(s))
            .collect::<Result<_>>()?
    };
    if m.rank() < 3 {
        bail!(
            "the 2x2 test needs rank at least 3, this matroid has rank {}",
            m.rank()
        );
    }
    let dirs: Vec<AmplePoint> = (0..m.rank() - 3)
        .map(|j| sample_ample(m, seed + j as u64))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    let mut all_nonpositive = true;
    for e in &eps {
        if *e <= Rational::from_integer(0.into()) {
            bail!("eps must be positive, got {e}");
        }
        let x = approach_alpha(m, 0, e)?;
        let y = approach_beta(m, 0, e)?;
        let (mat, nonpositive) = hodge_2x2(m, x.class(), y.class(), &dirs)?;
        let (dxx, dxy, dyy) = (mat.get(0, 0), mat.get(0, 1), mat.get(1, 1));
        let det = dxx * dyy - dxy * dxy;
        all_nonpositive &= nonpositive;
        rows.push(HodgeRow {
            eps: e.to_string(),
            dxx: dxx.to_string(),
            dxy: dxy.to_string(),
            dyy: dyy.to_string(),
            determinant: det.to_string(),
            nonpositive,
        });
    }
    if json {
        emit(&rows)?;
    } else {
        for r in &rows {
            println!(
                "eps {}: dxx {} dxy {} dyy {} det {} nonpositive: {}",
                r.eps, r.dxx, r.dxy, r.dyy, r.determinant, r.nonpositive
            );
        }
    }
    Ok(if all_nonpositive {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

#[derive(Serialize)]
struct RhwOut {
    characteristic_mu: Vec<String>,
    reduced_mu: Vec<String>,
    mixed_degrees: Vec<String>,
    characteristic_log_concave: bool,
    reduced_log_concave: bool,
    mixed_matches_reduced: bool,
    sum_rule_holds: bool,
    pass: bool,
}

fn rhw(m: &Matroid, json: bool) -> Result<ExitCode> {
    let report = verify_rhw(m)?;
    if json {
        emit(&RhwOut {
            characteristic_mu: bigints(&report.characteristic_mu),
            reduced_mu: bigints(&report.reduced_mu),
            mixed_degrees: rationals(&report.mixed_degrees),
            characteristic_log_concave: report.characteristic_log_concave,
            reduced_log_concave: report.reduced_log_concave,
            mixed_matches_reduced: report.mixed_matches_reduced,
            sum_rule_holds: report.sum_rule_holds,
            pass: report.pass,
        })?;
    } else {
        println!("{report}");
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

#[derive(Serialize)]
struct FfcountRow {
    power: u32,
    field_size: String,
    count: String,
    characteristic_value: String,
    matches: bool,
}

#[derive(Serialize)]
struct FfcountOut {
    hash: String,
    rank: usize,
    kappa: usize,
    rows: Vec<FfcountRow>,
}

fn ffcount(path: &str, powers: u32, json: bool) -> Result<ExitCode> {
    if powers == 0 {
        bail!("--powers must be at least 1");
    }
    let arr = input::load_arrangement(path)?;
    let mut out: Option<FfcountOut> = None;
    let mut all_match = true;
    for b in 1..=powers {
        let (m, count) = finite_field_count(&arr, b)?;
        let cp = characteristic_polynomial(&m)?;
        let kappa = arr.dims() - m.rank();
        let q = Rational::from_integer(arr.prime().into()).pow(b as i32);
        let expected = q.pow(kappa as i32) * cp.poly.eval(&q);
        let matches = Rational::from_integer(count.clone()) == expected;
        all_match &= matches;
        let row = FfcountRow {
            power: b,
            field_size: q.to_string(),
            count: count.to_string(),
            characteristic_value: expected.to_string(),
            matches,
        };
        match &mut out {
            Some(o) => o.rows.push(row),
            None => {
                out = Some(FfcountOut {
                    hash: m.canonical_hash(),
                    rank: m.rank(),
                    kappa,
                    rows: vec![row],
                })
            }
        }
    }
    let out = out.expect("at least one power");
    if json {
        emit(&out)?;
    } else {
        println!("matroid: {}", out.hash);
        println!("rank: {}, kappa: {}", out.rank, out.kappa);
        for r in &out.rows {
            println!(
                "b={}: q={} count={} characteristic={} match={}",
                r.power, r.field_size, r.count, r.characteristic_value, r.matches
            );
        }
    }
    Ok(if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

#[derive(Serialize)]
struct PfOut {
    value: f64,
    vector: Vec<f64>,
    iterations: usize,
    residual: f64,
    simple: bool,
}

fn pf(path: &str, json: bool) -> Result<ExitCode> {
    let a = input::load_matrix(path)?;
    let p = perron(&a)?;
    if json {
        emit(&PfOut {
            value: p.value,
            vector: p.vector.clone(),
            iterations: p.iterations,
            residual: p.residual,
            simple: p.simple,
        })?;
    } else {
        println!("value: {:.12}", p.value);
        println!(
            "vector: [{}]",
            p.vector
                .iter()
                .map(|v| format!("{v:.12}"))
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!("iterations: {}, residual: {:.3e}", p.iterations, p.residual);
        println!("simple: {}", p.simple);
    }
    Ok(ExitCode::SUCCESS)
}
