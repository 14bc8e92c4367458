use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kmbranch::emit::{emit_table, Format};
use kmbranch::format::{path_to_json, AlgebraJson, AlgebraReport, WeightJson};
use kmbranch::{driver, CliError};
use kmbranch_core::branching::{character_by_kostant, character_by_paths, kac_identity_holds, weight_multiplicity};
use kmbranch_core::path::{enumerate_ls_paths, is_dominant_path};
use kmbranch_core::rational::rat;
use kmbranch_core::{AffineAlgebra, Basis, Method, Weight, WindingData};
use serde::Serialize;

/// Branching of affine Kac-Moody highest-weight modules to winding subalgebras.
#[derive(Parser)]
#[command(name = "kmbranch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the null vectors, Coxeter numbers and ρ of an algebra.
    Algebra(AlgebraArgs),
    /// List the LS paths of shape λ down to a depth.
    Paths {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        hw: Vec<u64>,
        #[arg(long)]
        depth: u32,
        /// Keep only paths dominant for the winding subalgebra of this u.
        #[arg(long)]
        u: Option<i64>,
    },
    /// Multiplicity in L(λ) of the weight with labels `--mu` and d-value `--d`.
    Mult {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        hw: Vec<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        mu: Vec<i64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        d: i64,
    },
    /// Decompose L(λ) into irreducible modules of the winding subalgebra.
    Branch {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        u: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        hw: Vec<u64>,
        #[arg(long)]
        depth: u32,
        /// Rows compared between methods stop this far above the cutoff (default u).
        #[arg(long)]
        margin: Option<u32>,
        /// paths, steinberg, signed, peel or all.
        #[arg(long, default_value = "all")]
        method: String,
        /// json, csv or pretty.
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the Weyl-Kac identity and the path model against the Kostant formula.
    Verify {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        hw: Vec<u64>,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 1)]
        margin: u32,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct AlgebraArgs {
    /// One of A1_1, A2_1, A3_1, A4_1.
    #[arg(long)]
    preset: Option<String>,
    /// Cartan matrix as inline JSON, or a path to a JSON file.
    #[arg(long)]
    matrix: Option<String>,
}

impl AlgebraArgs {
    fn load(&self) -> Result<AffineAlgebra, CliError> {
        if let Some(name) = &self.preset {
            return Ok(AffineAlgebra::preset(name)?);
        }
        let spec = self.matrix.as_deref().unwrap_or_default();
        let text = if spec.trim_start().starts_with('[') || spec.trim_start().starts_with('{') {
            spec.to_owned()
        } else {
            std::fs::read_to_string(spec)?
        };
        let parsed: AlgebraJson = match serde_json::from_str::<Vec<Vec<i64>>>(&text) {
            Ok(cartan) => AlgebraJson { name: None, cartan },
            Err(_) => serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad matrix: {e}")))?,
        };
        Ok(AffineAlgebra::try_from(&parsed)?)
    }
}

fn highest_weight(alg: &AffineAlgebra, hw: &[u64]) -> Result<Weight, CliError> {
    if hw.len() != alg.rank() {
        return Err(CliError::Usage(format!("--hw needs {} labels, got {}", alg.rank(), hw.len())));
    }
    let labels = hw
        .iter()
        .map(|&x| i64::try_from(x).map_err(|_| CliError::Usage(format!("label {x} too large"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(alg.weight(&labels)?)
}

fn print_json(value: &impl Serialize) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct PathEntry {
    segments: Vec<WeightJson>,
    endpoint: WeightJson,
}

#[derive(Serialize)]
struct MultReport {
    lambda: WeightJson,
    mu: WeightJson,
    mult: u128,
}

#[derive(Serialize)]
struct VerifyReport {
    lambda: WeightJson,
    depth: u32,
    margin: u32,
    kac_identity: bool,
    paths_match_kostant: bool,
    weights: usize,
}

/// `Ok(false)` means the run completed but a check failed.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Algebra(a) => {
            print_json(&AlgebraReport::from(&a.load()?))?;
            Ok(true)
        }
        Command::Paths { algebra, hw, depth, u } => {
            let alg = algebra.load()?;
            let lambda = highest_weight(&alg, &hw)?;
            let winding = u.map(|u| WindingData::new(&alg, u)).transpose()?;
            let paths = enumerate_ls_paths(&Basis::plain(&alg), &lambda, depth)?;
            let entries: Vec<PathEntry> = paths
                .iter()
                .filter(|p| winding.as_ref().is_none_or(|w| is_dominant_path(w, p)))
                .map(|p| PathEntry { segments: path_to_json(p), endpoint: (&p.endpoint()).into() })
                .collect();
            print_json(&entries)?;
            Ok(true)
        }
        Command::Mult { algebra, hw, mu, d } => {
            let alg = algebra.load()?;
            let lambda = highest_weight(&alg, &hw)?;
            if mu.len() != alg.rank() {
                return Err(CliError::Usage(format!("--mu needs {} labels, got {}", alg.rank(), mu.len())));
            }
            let mu = Weight::new(mu.iter().map(|&x| rat(x)).collect(), rat(d));
            let mult = weight_multiplicity(&alg, &lambda, &mu, true)?;
            print_json(&MultReport { lambda: (&lambda).into(), mu: (&mu).into(), mult })?;
            Ok(true)
        }
        Command::Branch { algebra, u, hw, depth, margin, method, format, output } => {
            let alg = algebra.load()?;
            let lambda = highest_weight(&alg, &hw)?;
            let method = match method.as_str() {
                "all" => None,
                m => Some(Method::from_name(m).ok_or_else(|| {
                    CliError::Usage(format!("unknown method {m:?} (paths, steinberg, signed, peel, all)"))
                })?),
            };
            let format: Format = format.parse()?;
            let margin = match margin {
                Some(m) => m,
                None => u32::try_from(u).map_err(|_| CliError::Usage(format!("u = {u} must be positive")))?,
            };
            let table = driver::branch(&alg, &lambda, u, depth, margin, method)?;
            match output {
                Some(p) => emit_table(&table, format, BufWriter::new(File::create(p)?))?,
                None => emit_table(&table, format, io::stdout().lock())?,
            }
            Ok(method.is_some() || table.verified)
        }
        Command::Verify { algebra, hw, depth, margin } => {
            let alg = algebra.load()?;
            let lambda = highest_weight(&alg, &hw)?;
            let by_paths = character_by_paths(&alg, &lambda, depth)?;
            let by_kostant = character_by_kostant(&alg, &lambda, depth)?;
            let report = VerifyReport {
                lambda: (&lambda).into(),
                depth,
                margin,
                kac_identity: kac_identity_holds(&alg, &lambda, &by_paths, margin)?,
                paths_match_kostant: by_paths.differences(&by_kostant, depth).is_empty(),
                weights: by_paths.len(),
            };
            print_json(&report)?;
            Ok(report.kac_identity && report.paths_match_kostant)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
