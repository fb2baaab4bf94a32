//! Command-line driver. Every subcommand prints one JSON report to stdout
//! and exits 0 when all checks pass, 1 on a verification failure, 2 on
//! invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use qschur::arith::CoefficientSpec;
use qschur::braiding::{params_from_json, ParamMatrix};
use qschur::filtration::{DirectSumModule, SkewEmbedding};
use qschur::report::{
    kernel_report, nontrivial_params, run_sweep, schur_basis_report, yb_report, DEFAULT_SEED,
};
use qschur::schur::{build_schur_map, standard_basis, straighten};
use qschur::shapes::{lr_coefficient, natural_order, Letter, Partition, SkewShape, Tableau};
use qschur::{Error, Result};

#[derive(Parser)]
#[command(name = "qschur", version, about = "Exact quantum skew Schur module calculator")]
struct Cli {
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for sweeps; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ShapeArgs {
    /// Outer shape, comma-separated parts, e.g. 3,2,1.
    #[arg(long)]
    lambda: String,

    /// Inner shape; omit or pass 0 for the empty partition.
    #[arg(long, default_value = "0")]
    mu: String,
}

impl ShapeArgs {
    fn skew(&self) -> Result<SkewShape> {
        SkewShape::new(Partition::parse(&self.lambda)?, Partition::parse(&self.mu)?)
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Alphabet size.
    #[arg(long = "N")]
    n: usize,

    /// JSON file {"N": n, "U": [[..]]} with an alternating (N-1)x(N-1)
    /// integer matrix; overrides --preset.
    #[arg(long = "U")]
    u_file: Option<PathBuf>,

    /// Built-in parameter choice: `ones` or `seeded`.
    #[arg(long, default_value = "ones")]
    preset: String,

    /// Seed for the `seeded` preset.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl ParamArgs {
    fn load(&self) -> Result<(ParamMatrix, String)> {
        if self.n == 0 {
            return Err(Error::InvalidInput("alphabet size must be >= 1".into()));
        }
        if let Some(path) = &self.u_file {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            let p = params_from_json(&text)?;
            if p.dim() != self.n {
                return Err(Error::InvalidInput(format!(
                    "parameter file is for {} letters, --N is {}",
                    p.dim(),
                    self.n
                )));
            }
            return Ok((p, format!("file:{}", path.display())));
        }
        match self.preset.as_str() {
            "ones" => Ok((ParamMatrix::ones(self.n), "ones".into())),
            "seeded" => Ok((
                nontrivial_params(self.n, self.seed),
                format!("seeded:{}", self.seed),
            )),
            other => Err(Error::InvalidInput(format!(
                "unknown preset {other:?}; expected ones or seeded"
            ))),
        }
    }
}

#[derive(Args)]
struct SpecArgs {
    /// Specialize at the l-th cyclotomic polynomial.
    #[arg(long)]
    root: Option<u32>,

    /// Evaluate at a nonzero rational, e.g. 1 or -2/3.
    #[arg(long, allow_hyphen_values = true)]
    eval: Option<String>,
}

impl SpecArgs {
    fn spec(&self) -> Result<CoefficientSpec> {
        match (&self.root, &self.eval) {
            (Some(_), Some(_)) => Err(Error::InvalidInput(
                "--root and --eval are mutually exclusive".into(),
            )),
            (Some(l), None) => CoefficientSpec::cyclotomic(*l),
            (None, Some(text)) => {
                let (num, den) = match text.split_once('/') {
                    Some((a, b)) => (parse_i64(a)?, parse_i64(b)?),
                    None => (parse_i64(text)?, 1),
                };
                CoefficientSpec::rational(num, den)
            }
            (None, None) => Ok(CoefficientSpec::Generic),
        }
    }
}

fn parse_i64(s: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("expected an integer, got {s:?}")))
}

#[derive(Subcommand)]
enum Command {
    /// Littlewood-Richardson coefficient of lambda/mu at content nu.
    LrCoeff {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Layer content, comma-separated parts.
        #[arg(long)]
        nu: String,
    },

    /// Rank, standard-tableau count, and kernel rank of one Schur map.
    SchurBasis {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
    },

    /// Expand a row-standard filling in the standard basis.
    Straighten {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
        /// Filling, rows separated by `;`, letters by `,`, e.g. "1,3;2".
        #[arg(long)]
        rows: String,
    },

    /// Check the braid and quadratic identities of the braiding operator.
    VerifyYb {
        #[command(flatten)]
        params: ParamArgs,
    },

    /// Check that the exchange-map image is exactly the Schur-map kernel.
    VerifyKernel {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
    },

    /// Check the layer filtration of one skew module over two alphabets.
    VerifyFiltration {
        #[command(flatten)]
        shape: ShapeArgs,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        spec: SpecArgs,
    },

    /// Check the two-alphabet direct-sum filtration of a skew module.
    VerifyDsum {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Left alphabet size.
        #[arg(long = "N")]
        n: usize,
        /// Right alphabet size.
        #[arg(long = "M")]
        m: usize,
        /// Built-in parameter choice: `ones` or `seeded`.
        #[arg(long, default_value = "ones")]
        preset: String,
        /// Seed for the `seeded` preset.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        spec: SpecArgs,
    },

    /// Run every verification family at desk scale.
    Sweep {
        /// Seed for the randomized parameter matrices.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_rows(text: &str) -> Result<Vec<Vec<Letter>>> {
    let mut rows = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        if part.is_empty() {
            rows.push(Vec::new());
            continue;
        }
        let mut row = Vec::new();
        for tok in part.split(',') {
            let v: u64 = tok
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad letter {tok:?}")))?;
            if v == 0 || v > Letter::MAX as u64 {
                return Err(Error::InvalidInput(format!("letter {v} out of range")));
            }
            row.push(v as Letter);
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Serialize)]
struct StraightenReport {
    shape: String,
    #[serde(rename = "N")]
    n: usize,
    params: String,
    rows: Vec<Vec<Letter>>,
    expansion: Vec<StraightenTerm>,
    status: String,
}

#[derive(Serialize)]
struct StraightenTerm {
    tableau: Vec<Vec<Letter>>,
    coefficient: String,
}

/// Runs one subcommand and returns the JSON report plus whether every
/// check inside it passed.
fn run(command: &Command) -> Result<(serde_json::Value, bool)> {
    match command {
        Command::LrCoeff { shape, nu } => {
            let lam = Partition::parse(&shape.lambda)?;
            let mu = Partition::parse(&shape.mu)?;
            let nu = Partition::parse(nu)?;
            let gamma = lr_coefficient(&lam, &mu, &nu)?;
            Ok((json!({ "gamma": gamma }), true))
        }
        Command::SchurBasis { shape, params } => {
            let skew = shape.skew()?;
            let (p, pname) = params.load()?;
            let rep = schur_basis_report(&skew, params.n, &p, &pname)?;
            let ok = rep.status == "ok";
            Ok((serde_json::to_value(&rep).expect("serializable report"), ok))
        }
        Command::Straighten { shape, params, rows } => {
            let skew = shape.skew()?;
            let (p, pname) = params.load()?;
            let filling = parse_rows(rows)?;
            let schur = build_schur_map(&skew, &p)?;
            let basis = standard_basis(&schur, &natural_order(params.n))?;
            let tab = Tableau::new(skew.clone(), filling.clone(), natural_order(params.n))?;
            let expansion = straighten(&schur, &basis, &tab)?
                .into_iter()
                .map(|(t, c)| StraightenTerm {
                    tableau: t.rows().to_vec(),
                    coefficient: c.to_string(),
                })
                .collect();
            let rep = StraightenReport {
                shape: skew.to_string(),
                n: params.n,
                params: pname,
                rows: filling,
                expansion,
                status: "ok".into(),
            };
            Ok((serde_json::to_value(&rep).expect("serializable report"), true))
        }
        Command::VerifyYb { params } => {
            let (p, pname) = params.load()?;
            let rep = yb_report(params.n, &p, &pname);
            let ok = rep.braid && rep.iwahori;
            Ok((json!({ "braid": rep.braid, "iwahori": rep.iwahori }), ok))
        }
        Command::VerifyKernel { shape, params } => {
            let skew = shape.skew()?;
            let (p, pname) = params.load()?;
            let rep = kernel_report(&skew, params.n, &p, &pname)?;
            let ok = rep.status == "ok";
            Ok((serde_json::to_value(&rep).expect("serializable report"), ok))
        }
        Command::VerifyFiltration { shape, params, spec } => {
            let skew = shape.skew()?;
            let (p, _) = params.load()?;
            let aux = match params.preset.as_str() {
                "seeded" if params.u_file.is_none() => {
                    nontrivial_params(skew.inner().first() as usize, params.seed ^ 0xaaaa)
                }
                _ => ParamMatrix::ones(skew.inner().first() as usize),
            };
            let ctx = SkewEmbedding::new(
                skew.outer().clone(),
                skew.inner().clone(),
                params.n,
                p,
                aux,
            )?;
            let rep = ctx.filtration_verify(&spec.spec()?)?;
            let ok = rep.ok();
            Ok((serde_json::to_value(&rep).expect("serializable report"), ok))
        }
        Command::VerifyDsum { shape, n, m, preset, seed, spec } => {
            let lam = Partition::parse(&shape.lambda)?;
            let mu = Partition::parse(&shape.mu)?;
            let (left, right) = match preset.as_str() {
                "ones" => (ParamMatrix::ones(*n), ParamMatrix::ones(*m)),
                "seeded" => (
                    nontrivial_params(*n, *seed),
                    nontrivial_params(*m, *seed ^ 0xaaaa),
                ),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown preset {other:?}; expected ones or seeded"
                    )))
                }
            };
            let dsum = DirectSumModule::new(lam, mu, &left, &right)?;
            let rep = dsum.verify_all_layers(&spec.spec()?)?;
            let ok = rep.ok();
            Ok((serde_json::to_value(&rep).expect("serializable report"), ok))
        }
        Command::Sweep { seed } => {
            let rep = run_sweep(*seed);
            let ok = rep.status == "ok";
            Ok((serde_json::to_value(&rep).expect("serializable report"), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be >= 1");
            return ExitCode::from(2);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli.command) {
        Ok((report, ok)) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable report");
            // Tolerate a closed pipe, e.g. `qschur sweep | head`.
            let _ = writeln!(io::stdout(), "{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
