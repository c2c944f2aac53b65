//! Command-line front end: tables and verification reports as JSON or CSV.

pub mod error;
pub mod golden;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use simplexharm::modes::{
    isotypic_periodic_basis, periodic_basis, verify_invariance, ModeBasis, MAX_YOUNG_TWO_J,
};
use simplexharm::permgroup::{character_table, partitions, trivial_multiplicity};
use simplexharm::reduction::{
    multiplicity_table, o4_column_order, recursion_report, Chain, MultiplicityTable, ROUNDING_TOL,
};
use simplexharm::weylaction::{character_period, class_character_table, MAX_OPERATOR_TWO_J};

pub use error::{CliError, CliResult, EXIT_CONSISTENCY, EXIT_USAGE};
use report::{CheckResult, ReportDocument};

/// Tolerance for mode orthonormality and invariance checks.
pub const MODE_TOL: f64 = 1e-9;
/// Degree range audited by `reduce --recursion`.
pub const RECURSION_TWO_J: u32 = 60;

#[derive(Debug, Parser)]
#[command(
    name = "simplexharm",
    version,
    about = "Periodic harmonics on simplicial spherical manifolds"
)]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Upper bound on worker threads.
    #[arg(long, global = true, env = "MODES_NUM_THREADS", hide_env_values = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Character table of S(n).
    Chartable {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=5))]
        n: u32,
    },
    /// Multiplicities m(f,0) of the trivial representation of C_n in each D^f.
    Branch {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=5))]
        n: u32,
    },
    /// Multiplicity table of a subgroup chain.
    Reduce {
        #[arg(long, value_enum)]
        chain: ChainArg,
        /// Largest m, l or 2j.
        #[arg(long)]
        max: u32,
        /// Add the period-60 audit of the O(4) characters and multiplicities.
        #[arg(long)]
        recursion: bool,
    },
    /// C5-periodic eigenmodes of degree 2j with an invariance report.
    Modes {
        #[arg(long = "two-j")]
        two_j: u32,
        #[arg(long, default_value_t = 100)]
        verify_points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Split the modes by S(5) representation.
        #[arg(long)]
        tagged: bool,
    },
    /// O(4) characters of the seven S(5) class representatives.
    Classchars {
        #[arg(long = "two-j-max")]
        two_j_max: u32,
    },
    /// Compare the computation with the embedded reference tables.
    Verify {
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChainArg {
    O2s3c3,
    O3s4c4,
    O4s5c5,
}

impl ChainArg {
    fn chain(self) -> Chain {
        match self {
            ChainArg::O2s3c3 => Chain::O2s3c3,
            ChainArg::O3s4c4 => Chain::O3s4c4,
            ChainArg::O4s5c5 => Chain::O4s5c5,
        }
    }
}

/// A rendered report and the number of failed checks it contains.
pub struct Rendered {
    pub text: String,
    pub failures: usize,
    pub total: usize,
}

fn json_only(cli: &Cli) -> CliResult<()> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Reduce { .. }) {
        return Err(CliError::Usage(
            "csv output is only available for reduce".into(),
        ));
    }
    Ok(())
}

fn finish(doc: ReportDocument) -> CliResult<Rendered> {
    Ok(Rendered {
        failures: doc.failures(),
        total: doc.checks.len(),
        text: doc.to_json()?,
    })
}

fn chartable(n: u32) -> CliResult<Rendered> {
    let table = character_table(n)?;
    let sizes: Vec<u64> = table.classes.iter().map(|k| k.class_size()).collect();
    let mut doc = ReportDocument::new(
        "chartable",
        json!({
            "n": n,
            "order": table.order,
            "partitions": table.partitions,
            "dimensions": table.partitions.iter().map(|f| f.dimension()).collect::<Vec<_>>(),
            "classes": table.classes,
            "class_sizes": sizes,
            "values": table.values,
        }),
    )?;
    doc.checks.push(match table.check_row_orthogonality() {
        Ok(()) => CheckResult::pass("row orthogonality", 0.0),
        Err((a, b, v)) => CheckResult::exact("row orthogonality", (a, b, v), (a, b, 0))
            .with_detail(format!("rows {a},{b} give {v}")),
    });
    doc.checks.push(match table.check_column_orthogonality() {
        Ok(()) => CheckResult::pass("column orthogonality", 0.0),
        Err((a, b, v)) => CheckResult::exact("column orthogonality", (a, b, v), (a, b, 0))
            .with_detail(format!("columns {a},{b} give {v}")),
    });
    doc.checks.push(CheckResult::exact(
        "class sizes sum to n!",
        sizes.iter().sum::<u64>(),
        table.order,
    ));
    finish(doc)
}

#[derive(Serialize)]
struct BranchEntry {
    partition: String,
    dimension: u64,
    m0: u64,
}

fn branch(n: u32) -> CliResult<Rendered> {
    let order = if n == 5 {
        o4_column_order()
    } else {
        partitions(n)
    };
    let entries = order
        .iter()
        .map(|f| {
            Ok(BranchEntry {
                partition: f.to_string(),
                dimension: f.dimension(),
                m0: trivial_multiplicity(f)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let values: Vec<u64> = entries.iter().map(|e| e.m0).collect();
    // Σ dim(f)·m(f,0) counts the C_n-fixed vectors of the regular representation
    let fixed: u64 = entries.iter().map(|e| e.dimension * e.m0).sum();
    let regular: u64 = (1..n as u64).product();
    let mut doc = ReportDocument::new(
        "branch",
        json!({"n": n, "entries": entries, "values": values}),
    )?;
    doc.checks.push(CheckResult::exact(
        "Σ dim(f) m(f,0) = (n-1)!",
        fixed,
        regular,
    ));
    finish(doc)
}

fn table_csv(table: &MultiplicityTable) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["label".to_string(), "dimension".to_string()];
    header.extend(table.partitions.iter().map(|f| f.to_string()));
    header.push("periodic".into());
    w.write_record(&header)?;
    for row in &table.rows {
        let mut rec = vec![row.label.clone(), row.dimension.to_string()];
        rec.extend(row.entries.iter().map(u64::to_string));
        rec.push(row.periodic.to_string());
        w.write_record(&rec)?;
    }
    let mut rec = vec!["total".to_string(), table.total_dimension.to_string()];
    rec.extend(table.totals.iter().map(u64::to_string));
    rec.push(table.total_periodic.to_string());
    w.write_record(&rec)?;
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn reduce(chain: ChainArg, max: u32, recursion: bool, format: Format) -> CliResult<Rendered> {
    let chain = chain.chain();
    if recursion && chain != Chain::O4s5c5 {
        return Err(CliError::Usage(
            "--recursion applies to the o4s5c5 chain only".into(),
        ));
    }
    let table = multiplicity_table(chain, max)?;
    if format == Format::Csv {
        if recursion {
            return Err(CliError::Usage("--recursion output is JSON only".into()));
        }
        return Ok(Rendered {
            text: table_csv(&table)?,
            failures: 0,
            total: 0,
        });
    }
    let mut payload = serde_json::to_value(&table)?;
    let mut checks = vec![CheckResult::exact(
        "dimension audit",
        table.dimension_audit().map_err(|e| e.to_string()),
        Ok(()),
    )];
    if recursion {
        let report = recursion_report(RECURSION_TWO_J)?;
        checks.push(CheckResult::exact(
            "period-60 characters",
            report.periodicity_holds(),
            true,
        ));
        checks.push(CheckResult::exact(
            "dimension audit to 2j+60",
            report.dimension_audit_holds,
            true,
        ));
        checks.push(CheckResult::exact(
            "measured increment (2j+31)dim(f)+5χ^f((2)(1)^3)",
            report.increments.iter().all(|r| r.measured_recursion_holds),
            true,
        ));
        payload["recursion"] = serde_json::to_value(&report)?;
    }
    let mut doc = ReportDocument::new("reduce", payload)?.tolerance("rounding", ROUNDING_TOL);
    doc.checks = checks;
    finish(doc)
}

#[derive(Serialize)]
struct ModeEntry {
    index: usize,
    representation: Option<String>,
    /// `[re, im]` per basis function `(2m1, 2m2)`, row-major with `m` ascending.
    coefficients: Vec<[f64; 2]>,
}

fn modes(two_j: u32, points: usize, seed: u64, tagged: bool) -> CliResult<Rendered> {
    if two_j > MAX_OPERATOR_TWO_J {
        return Err(CliError::Usage(format!(
            "--two-j is limited to {MAX_OPERATOR_TWO_J}"
        )));
    }
    if tagged && two_j > MAX_YOUNG_TWO_J {
        return Err(CliError::Usage(format!(
            "--tagged is limited to --two-j {MAX_YOUNG_TWO_J}"
        )));
    }
    let basis: ModeBasis = if tagged {
        isotypic_periodic_basis(two_j)?
    } else {
        periodic_basis(two_j)?
    };
    let invariance = verify_invariance(&basis, points, seed)?;
    let labels: Vec<[i64; 2]> = (0..=two_j as i64)
        .flat_map(|a| (0..=two_j as i64).map(move |b| [2 * a - two_j as i64, 2 * b - two_j as i64]))
        .collect();
    let entries: Vec<ModeEntry> = basis
        .coefficients
        .column_iter()
        .enumerate()
        .map(|(index, col)| ModeEntry {
            index,
            representation: basis.tags.as_ref().map(|t| t[index].to_string()),
            coefficients: col.iter().map(|z| [z.re, z.im]).collect(),
        })
        .collect();
    let defect = basis.orthonormality_defect();
    let mut doc = ReportDocument::new(
        "modes",
        json!({
            "two_j": two_j,
            "count": basis.len(),
            "basis": labels,
            "modes": entries,
            "invariance": invariance,
        }),
    )?
    .tolerance("invariance", MODE_TOL)
    .tolerance("orthonormality", MODE_TOL);
    doc.command.seed = Some(seed);
    doc.checks
        .push(CheckResult::within("orthonormality", defect, MODE_TOL));
    doc.checks.push(CheckResult::within(
        "C5 invariance",
        invariance.max_deviation,
        MODE_TOL,
    ));
    finish(doc)
}

fn classchars(two_j_max: u32) -> CliResult<Rendered> {
    let rows = class_character_table(two_j_max);
    let mut doc = ReportDocument::new("classchars", json!({"two_j_max": two_j_max, "rows": rows}))?
        .tolerance("closed form", golden::REAL_TOL);
    for row in &rows {
        let k = row.class.to_string();
        let dev = match row.class.shape().parts() {
            [1, 1, 1, 1, 1] => Some(max_dev(&row.values, |t| ((t + 1) * (t + 1)) as f64)),
            [2, 1, 1, 1] => Some(max_dev(&row.values, |t| (t + 1) as f64)),
            _ => character_period(&row.class).map(|p| {
                let p = p as usize;
                max_dev(&row.values[p.min(row.values.len())..], |t| row.values[t])
            }),
        };
        if let Some(dev) = dev {
            doc.checks.push(CheckResult::within(
                format!("χ^(j,j){k} recursion"),
                dev,
                golden::REAL_TOL,
            ));
        }
    }
    finish(doc)
}

fn max_dev(values: &[f64], expected: impl Fn(usize) -> f64) -> f64 {
    values
        .iter()
        .enumerate()
        .map(|(t, v)| (v - expected(t)).abs())
        .fold(0.0, f64::max)
}

fn verify(inject: Option<&str>) -> CliResult<Rendered> {
    let v = golden::verify_all(inject)?;
    let mut doc = ReportDocument::new("verify", json!({"assets": v.assets, "errata": v.errata}))?
        .tolerance("real", golden::REAL_TOL);
    doc.checks = v.checks;
    finish(doc)
}

/// Executes one parsed command and renders its report.
pub fn execute(cli: &Cli) -> CliResult<Rendered> {
    json_only(cli)?;
    match &cli.command {
        Command::Chartable { n } => chartable(*n),
        Command::Branch { n } => branch(*n),
        Command::Reduce {
            chain,
            max,
            recursion,
        } => reduce(*chain, *max, *recursion, cli.format),
        Command::Modes {
            two_j,
            verify_points,
            seed,
            tagged,
        } => modes(*two_j, *verify_points, *seed, *tagged),
        Command::Classchars { two_j_max } => classchars(*two_j_max),
        Command::Verify {
            all: _,
            inject_fault,
        } => verify(inject_fault.as_deref()),
    }
}

/// Runs a parsed command end to end: thread pool, execution, output, failure status.
pub fn run(cli: &Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage(
                "MODES_NUM_THREADS must be at least 1".into(),
            ));
        }
        // a pool already installed by an earlier call in the same process is kept
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let rendered = execute(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, &rendered.text)?,
        None => std::io::stdout()
            .lock()
            .write_all(rendered.text.as_bytes())?,
    }
    if rendered.failures > 0 {
        return Err(CliError::Mismatch {
            failed: rendered.failures,
            total: rendered.total,
        });
    }
    Ok(())
}
