use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sepmult::claims::{run_claims, ClaimOptions, VerifyOutcome};
use sepmult::search::DEFAULT_BUDGET;
use sepmult::table::{emit_table, search_table_rows, single_deletion_table, TableFormat};
use sepmult::witnesses::parse_value_list;
use sepmult::{
    enumerate_spectrum, harmonic_level_of, mbar3_interval, multiplicity_at, search_max,
    search_table, BoundsPolicy, DeletionSpec, Error, HarmonicModel, NamedMatrix, RankQuery,
    SearchOptions, SpectralMatrix, Truncation,
};

#[derive(Parser)]
#[command(
    name = "sepmult",
    version,
    about = "Eigenvalue multiplicities of separable spectral matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => TableFormat::Text,
            Format::Json => TableFormat::Json,
            Format::Csv => TableFormat::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// First K labellings of a matrix, grouped by eigenvalue.
    Spectrum {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long = "K")]
        big_k: u64,
    },
    /// Eigenvalue at labelling k and its multiplicity.
    Mult {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long)]
        k: u64,
    },
    /// Harmonic multiplicity and first labelling of level j, or the level at labelling k.
    Harmonic {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, conflicts_with = "k")]
        j: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Single-deletion lower bound at labelling k, or its block table.
    Mbar {
        #[arg(long = "N", default_value_t = 3)]
        n: usize,
        #[arg(long, required_unless_present = "table")]
        k: Option<u64>,
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 6)]
        jmax: u64,
    },
    /// Multiplicity and first labelling of level j after deleting values from the last harmonic row.
    Delete {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_name = "a,b,c", default_value = "")]
        del: String,
        #[arg(long)]
        j: u64,
        /// Also print the matrix cut to this many entries per row.
        #[arg(long)]
        len: Option<usize>,
    },
    /// Largest multiplicity at labelling k over a bounded matrix family.
    Search {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Search maxima for k = 1..=kmax grouped by harmonic level.
    Table {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        kmax: u64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Recompute stored claims, or check one witness with --matrix, --k and --m.
    Verify {
        /// Include the search-backed claims.
        #[arg(long)]
        all: bool,
        #[arg(long, requires_all = ["k", "m"])]
        matrix: Option<String>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        ack: bool,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Args)]
struct MatrixInput {
    /// A matrix file, or a name such as harmonic:3, harmonic:4/del:2,3, blue11.
    #[arg(long)]
    matrix: String,
    /// Treat rows shorter than the requested rank as exhausted.
    #[arg(long)]
    ack: bool,
}

impl MatrixInput {
    fn truncation(&self) -> Truncation {
        if self.ack {
            Truncation::Acknowledged
        } else {
            Truncation::Strict
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "B")]
    b: Option<i64>,
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Skip the B+1 rerun that labels results as saturated.
    #[arg(long)]
    no_saturation: bool,
    /// Report progress on standard error.
    #[arg(long)]
    progress: bool,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            threads: self.threads,
            budget: self.budget,
            check_saturation: !self.no_saturation,
            progress: self.progress,
        }
    }

    fn policy(&self) -> BoundsPolicy {
        BoundsPolicy {
            max_entry: self.b,
            max_row_len: self.l,
        }
    }
}

fn load_matrix(spec: &str, len: u64) -> anyhow::Result<SpectralMatrix> {
    let path = Path::new(spec);
    if path.is_file() {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(SpectralMatrix::parse(&text)?);
    }
    let named: NamedMatrix = spec.parse()?;
    Ok(named.matrix(len.max(1) as usize))
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let format = cli.format;
    match cli.command {
        Command::Spectrum { input, big_k } => {
            let a = load_matrix(&input.matrix, big_k)?;
            let prefix = enumerate_spectrum(&a, big_k, input.truncation())?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&prefix)?),
                Format::Csv => {
                    println!("lambda,m,first_label");
                    let mut first = 1;
                    for level in prefix.entries() {
                        println!("{},{},{first}", level.value, level.multiplicity);
                        first += level.multiplicity;
                    }
                }
                Format::Text => {
                    let mut first = 1;
                    for level in prefix.entries() {
                        println!("k={first} lambda={} m={}", level.value, level.multiplicity);
                        first += level.multiplicity;
                    }
                    println!("covered={}", prefix.covered_rank());
                }
            }
        }
        Command::Mult { input, k } => {
            let a = load_matrix(&input.matrix, k)?;
            let e = multiplicity_at(&a, RankQuery::new(k)?, input.truncation())?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&e)?),
                Format::Csv => println!(
                    "lambda,m,first_label\n{},{},{}",
                    e.value, e.multiplicity, e.first_label
                ),
                Format::Text => println!("lambda={} m={}", e.value, e.multiplicity),
            }
        }
        Command::Harmonic { n, j, k } => {
            let model = HarmonicModel::new(n)?;
            let j = match (j, k) {
                (Some(j), _) => j,
                (None, Some(k)) => harmonic_level_of(n, k)?,
                (None, None) => bail!(Error::InvalidArgument("pass --j or --k".into())),
            };
            let (mu, kmin) = (model.multiplicity(j)?, model.kmin(j)?);
            emit_record(
                format,
                &[("N", n as u64), ("j", j), ("mu", mu), ("kmin", kmin)],
            );
        }
        Command::Mbar { n, k, table, jmax } => {
            if table {
                print!(
                    "{}",
                    emit_table(&single_deletion_table(n, jmax)?, format.into())
                );
            } else {
                let k = k.expect("clap requires --k without --table");
                let value = sepmult::single_deletion_bound(n, k)?;
                let j = harmonic_level_of(n, k)?;
                if n == 3 {
                    let l = mbar3_interval(k).l;
                    emit_record(format, &[("k", k), ("j", j), ("l", l), ("mbar", value)]);
                } else {
                    emit_record(format, &[("k", k), ("j", j), ("mbar", value)]);
                }
            }
        }
        Command::Delete { n, del, j, len } => {
            let spec = DeletionSpec::new(n, parse_value_list(&del)?)?;
            let (mu, kmin) = (spec.multiplicity(j)?, spec.kmin(j)?);
            match (format, len) {
                (Format::Json, Some(len)) => println!(
                    "{}",
                    json!({"N": n, "j": j, "mu": mu, "kmin": kmin, "matrix": spec.matrix(len).rows()})
                ),
                _ => {
                    emit_record(
                        format,
                        &[("N", n as u64), ("j", j), ("mu", mu), ("kmin", kmin)],
                    );
                    if let Some(len) = len {
                        print!("{}", spec.matrix(len).to_text());
                    }
                }
            }
        }
        Command::Search { n, k, search } => {
            let bounds = search.policy().bounds_for(n, k)?;
            let report = search_max(&bounds, &search.options())?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Csv => println!(
                    "N,k,B,L,best,status,examined,pruned,wall_ms\n{n},{k},{},{},{},{},{},{},{}",
                    bounds.max_entry(),
                    bounds.max_row_len(),
                    report.best_multiplicity,
                    report.status.as_str(),
                    report.matrices_examined,
                    report.pruned,
                    report.wall_time.as_millis()
                ),
                Format::Text => {
                    println!(
                        "N={n} k={k} B={} L={} best={} status={}",
                        bounds.max_entry(),
                        bounds.max_row_len(),
                        report.best_multiplicity,
                        report.status.as_str()
                    );
                    println!(
                        "examined={} pruned={} wall_ms={}",
                        report.matrices_examined,
                        report.pruned,
                        report.wall_time.as_millis()
                    );
                    for w in &report.witnesses {
                        println!("witness {}", serde_json::to_string(w.rows())?);
                    }
                }
            }
        }
        Command::Table { n, kmax, search } => {
            let reports = search_table(n, kmax, &search.policy(), &search.options())?;
            print!(
                "{}",
                emit_table(&search_table_rows(n, &reports)?, format.into())
            );
        }
        Command::Verify {
            all,
            matrix,
            k,
            m,
            ack,
            threads,
        } => {
            if let Some(spec) = matrix {
                let (k, m) = (k.expect("clap requires --k"), m.expect("clap requires --m"));
                let a = load_matrix(&spec, k)?;
                let truncation = if ack {
                    Truncation::Acknowledged
                } else {
                    Truncation::Strict
                };
                let computed = multiplicity_at(&a, RankQuery::new(k)?, truncation)?.multiplicity;
                let outcome = VerifyOutcome::new(format!("witness.k{k}"), m, computed);
                return Ok(emit_outcomes(format, &[outcome]));
            }
            let outcomes = run_claims(&ClaimOptions {
                include_search: all,
                threads,
            })?;
            return Ok(emit_outcomes(format, &outcomes));
        }
    }
    Ok(true)
}

fn emit_record(format: Format, fields: &[(&str, u64)]) {
    match format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = fields
                .iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect();
            println!("{}", serde_json::Value::Object(map));
        }
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let values: Vec<String> = fields.iter().map(|(_, v)| v.to_string()).collect();
            println!("{}\n{}", keys.join(","), values.join(","));
        }
        Format::Text => {
            let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("{}", parts.join(" "));
        }
    }
}

fn emit_outcomes(format: Format, outcomes: &[VerifyOutcome]) -> bool {
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    match format {
        Format::Json => println!(
            "{}",
            json!({"claims": outcomes, "passed": outcomes.len() - failed, "failed": failed})
        ),
        Format::Csv => {
            println!("claim_id,expected,computed,pass");
            for o in outcomes {
                println!("{},{},{},{}", o.claim_id, o.expected, o.computed, o.pass);
            }
        }
        Format::Text => {
            for o in outcomes {
                let tag = if o.pass { "PASS" } else { "FAIL" };
                println!(
                    "{tag} {} expected={} computed={}",
                    o.claim_id, o.expected, o.computed
                );
            }
            println!("{} passed, {failed} failed", outcomes.len() - failed);
        }
    }
    failed == 0
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidArgument(_)
            | Error::InvalidBounds(_)
            | Error::Parse { .. }
            | Error::NoRows
            | Error::EmptyRow { .. }
            | Error::NonIncreasingRow { .. }
            | Error::ZeroRank,
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
