//! Command-line surface: construct algebras, dump root tables, build and
//! verify generator pairs, run the verification sweep.
//!
//! Exit codes: 0 success / verdict generated; 1 verdict not_generated;
//! 2 invalid input or parameters; 3 internal invariant failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use liegen_core::error::Error;
use liegen_core::genpair::{
    cartan_pair, classical_pair, even_part_pair, homogeneous_pair, theorem_pair, verify_pair,
    GeneratorCertificate,
};
use liegen_core::models::{build_any, AnyFamily, CartanSpec, FamilySpec};
use liegen_core::rootsys::weight_table;
use liegen_core::serial::{
    algebra_from_json, algebra_to_json, certificate_to_json, generators_from_json,
    root_table_to_json, subspace_to_json,
};
use liegen_core::superalgebra::SuperAlgebra;

#[derive(Parser)]
#[command(name = "liegen", version, about = "Exact models of simple Lie superalgebras and certified two-element generator pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra and write its structure-constant table as JSON.
    Construct {
        /// Family name: gl, A, B, C, D, P, Q, W, S, S~, H
        family: String,
        /// Family parameters (two for gl/A/B/D, one for C/P/Q/W/S/S~/H)
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build an algebra and write its weight-space/root table as JSON.
    Roots {
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate the bracket axioms of a built algebra.
    Check {
        family: String,
        params: Vec<usize>,
    },
    /// Build the generator pair prescribed for the family and certify it.
    Pair(PairArgs),
    /// Re-run the closure on a stored pair and write a fresh certificate.
    Verify {
        #[command(flatten)]
        algebra: AlgebraSource,
        /// JSON file with fields x and y (a certificate file works).
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bracket closure of an arbitrary generator list.
    Closure {
        #[command(flatten)]
        algebra: AlgebraSource,
        /// JSON file with a list of coordinate vectors of "p/q" strings.
        #[arg(long)]
        generators: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the generator-pair recipes across the whole verification list.
    Sweep,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: usize,
    /// Recipe: theorem (default), homogeneous, or even-part.
    #[arg(long, default_value = "theorem")]
    recipe: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AlgebraSource {
    /// Load the algebra from a JSON file written by `construct`.
    #[arg(long, conflicts_with_all = ["family", "m", "n"])]
    algebra: Option<PathBuf>,
    #[arg(long, requires = "n")]
    family: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
}

fn parse_family(name: &str, params: &[usize]) -> Result<AnyFamily, Error> {
    let two = || -> Result<(usize, usize), Error> {
        match params {
            [m, n] => Ok((*m, *n)),
            _ => Err(Error::BadParameters(format!("{name} takes two parameters"))),
        }
    };
    let one = || -> Result<usize, Error> {
        match params {
            [n] => Ok(*n),
            _ => Err(Error::BadParameters(format!("{name} takes one parameter"))),
        }
    };
    let spec = match name {
        "gl" => {
            let (m, n) = two()?;
            AnyFamily::Classical(FamilySpec::gl(m, n))
        }
        "A" | "a" => {
            let (m, n) = two()?;
            AnyFamily::Classical(FamilySpec::a(m, n))
        }
        "B" | "b" => {
            let (m, n) = two()?;
            AnyFamily::Classical(FamilySpec::b(m, n))
        }
        "D" | "d" => {
            let (m, n) = two()?;
            AnyFamily::Classical(FamilySpec::d(m, n))
        }
        "C" | "c" => AnyFamily::Classical(FamilySpec::c(one()?)),
        "P" | "p" => AnyFamily::Classical(FamilySpec::p(one()?)),
        "Q" | "q" => AnyFamily::Classical(FamilySpec::q(one()?)),
        "W" | "w" => AnyFamily::Cartan(CartanSpec::w(one()?)),
        "S" | "s" => AnyFamily::Cartan(CartanSpec::s(one()?)),
        "S~" | "s~" | "St" | "st" | "Stilde" | "stilde" => {
            AnyFamily::Cartan(CartanSpec::stilde(one()?))
        }
        "H" | "h" => AnyFamily::Cartan(CartanSpec::h(one()?)),
        other => return Err(Error::BadParameters(format!("unknown family {other:?}"))),
    };
    match spec {
        AnyFamily::Classical(s) => s.validate()?,
        AnyFamily::Cartan(s) => s.validate()?,
    }
    Ok(spec)
}

fn load_algebra(src: &AlgebraSource) -> Result<SuperAlgebra, Error> {
    match (&src.algebra, &src.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            algebra_from_json(&text)
        }
        (None, Some(name)) => {
            let params: Vec<usize> = src
                .m
                .iter()
                .copied()
                .chain(src.n.iter().copied())
                .collect();
            build_any(parse_family(name, &params)?)
        }
        (None, None) => Err(Error::BadParameters(
            "supply either --algebra FILE or --family/--n".into(),
        )),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

/// The verification list: every instance the test suite certifies.
pub fn sweep_list() -> Vec<AnyFamily> {
    use AnyFamily::{Cartan, Classical};
    vec![
        Classical(FamilySpec::a(1, 0)),
        Classical(FamilySpec::a(2, 1)),
        Classical(FamilySpec::a(1, 1)),
        Classical(FamilySpec::a(2, 2)),
        Classical(FamilySpec::b(0, 1)),
        Classical(FamilySpec::b(1, 1)),
        Classical(FamilySpec::b(2, 1)),
        Classical(FamilySpec::c(2)),
        Classical(FamilySpec::c(3)),
        Classical(FamilySpec::d(2, 1)),
        Classical(FamilySpec::p(2)),
        Classical(FamilySpec::p(3)),
        Classical(FamilySpec::q(2)),
        Classical(FamilySpec::q(3)),
        Cartan(CartanSpec::w(3)),
        Cartan(CartanSpec::w(4)),
        Cartan(CartanSpec::s(4)),
        Cartan(CartanSpec::stilde(4)),
        Cartan(CartanSpec::h(5)),
        Cartan(CartanSpec::h(6)),
        Cartan(CartanSpec::h(7)),
    ]
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Construct { family, params, out } => {
            let l = build_any(parse_family(&family, &params)?)?;
            emit(&out, &algebra_to_json(&l))?;
            Ok(0)
        }
        Command::Roots { family, params, out } => {
            let l = build_any(parse_family(&family, &params)?)?;
            let table = weight_table(&l)?;
            emit(&out, &root_table_to_json(&table))?;
            Ok(0)
        }
        Command::Check { family, params } => {
            let l = build_any(parse_family(&family, &params)?)?;
            let report = l.check_structure();
            println!(
                "{}: skew {} jacobi {}{} parity {} cartan {} z-graded {}",
                l.name,
                if report.skew_ok { "ok" } else { "FAIL" },
                if report.jacobi_ok { "ok" } else { "FAIL" },
                if report.jacobi_sampled { " (sampled)" } else { "" },
                if report.parity_ok { "ok" } else { "FAIL" },
                if report.cartan_ok { "ok" } else { "FAIL" },
                match report.z_graded {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "n/a",
                },
            );
            if let Some(msg) = &report.first_failure {
                println!("first failure: {msg}");
            }
            Ok(if report.pass() { 0 } else { 1 })
        }
        Command::Pair(args) => {
            let params: Vec<usize> =
                args.m.iter().copied().chain(std::iter::once(args.n)).collect();
            let l = build_any(parse_family(&args.family, &params)?)?;
            let cert: GeneratorCertificate = match args.recipe.as_str() {
                "theorem" => theorem_pair(&l)?,
                "classical" => classical_pair(&l)?,
                "cartan" => cartan_pair(&l)?,
                "homogeneous" => homogeneous_pair(&l)?,
                "even-part" => {
                    let (x, y) = even_part_pair(&l)?;
                    verify_pair(&l, &x, &y)?
                }
                other => {
                    return Err(Error::BadParameters(format!("unknown recipe {other:?}")));
                }
            };
            let generated = cert.generated() || args.recipe == "even-part";
            emit(&args.out, &certificate_to_json(&cert))?;
            Ok(if generated { 0 } else { 1 })
        }
        Command::Verify { algebra, generators, out } => {
            let l = load_algebra(&algebra)?;
            let text = fs::read_to_string(&generators).map_err(|e| {
                Error::InvalidInput(format!("cannot read {}: {e}", generators.display()))
            })?;
            let (x, y) = generators_from_json(&text)?;
            if x.len() != l.dim || y.len() != l.dim {
                return Err(Error::InvalidInput("generator length != dim".into()));
            }
            let cert = verify_pair(&l, &x, &y)?;
            let generated = cert.generated();
            emit(&out, &certificate_to_json(&cert))?;
            Ok(if generated { 0 } else { 1 })
        }
        Command::Closure { algebra, generators, out } => {
            let l = load_algebra(&algebra)?;
            let text = fs::read_to_string(&generators).map_err(|e| {
                Error::InvalidInput(format!("cannot read {}: {e}", generators.display()))
            })?;
            let gens: Vec<Vec<String>> = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
            let gens: Vec<Vec<liegen_core::Scalar>> = gens
                .iter()
                .map(|g| g.iter().map(|s| liegen_core::parse_scalar(s)).collect())
                .collect::<Result<_, _>>()?;
            let (span, _) = l.closure(&gens)?;
            emit(&out, &subspace_to_json(&span))?;
            Ok(0)
        }
        Command::Sweep => {
            let mut all_ok = true;
            println!("{:<10} {:>5} {:>8} verdict", "family", "dim", "closure");
            for fam in sweep_list() {
                let l = build_any(fam)?;
                let cert = theorem_pair(&l)?;
                let ok = cert.generated();
                all_ok &= ok;
                println!(
                    "{:<10} {:>5} {:>8} {}",
                    l.name,
                    l.dim,
                    cert.closure_dim,
                    if ok { "generated" } else { "NOT GENERATED" }
                );
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::BadParameters(_)
                | Error::InvalidInput(_)
                | Error::OddSpacesNotOneDim(_)
                | Error::DimensionMismatch { .. }
                | Error::IndexOutOfRange { .. } => 2,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}
