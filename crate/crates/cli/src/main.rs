use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use fhl_core::cohomology::{cocycle_for_main, homology_dims_upto, to_csv, HomologyReport};
use fhl_core::laplacian::{spectrum, SpectralReport};
use fhl_core::liealg::{d, inner, AlgebraSpec, Family};
use fhl_core::partitions::{main_partitions, main_partitions_of_dim, Partition};
use fhl_core::qlinalg::format_q;
use fhl_core::stablecycles::{is_stable, CycleRecord};
use fhl_core::verify::{run_suite, Suite, VerifyConfig, VerifyReport};

#[derive(Parser)]
#[command(
    name = "fhl",
    version,
    about = "Homology, Laplacian spectra and stable cycles of the Witt and sl2-loop nilpotent subalgebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chain and homology dimensions per degree and dimension.
    Dims(DimsArgs),
    /// Laplacian eigenvalues with multiplicities per degree.
    Spectrum(SpectrumArgs),
    /// Explicit homology cycles of the main partitions.
    Cycles(CyclesArgs),
    /// Runs a named property suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available cores.
    #[arg(long, env = "FHL_JOBS")]
    jobs: Option<usize>,
    /// Seed recorded with sampled runs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct Algebra {
    #[arg(long, default_value = "witt")]
    family: Family,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    k: i32,
}

#[derive(Args)]
struct Degrees {
    /// A single degree.
    #[arg(long, conflicts_with = "max_degree")]
    degree: Option<i64>,
    /// Every degree from 1 up to this one.
    #[arg(long)]
    max_degree: Option<i64>,
}

impl Degrees {
    fn range(&self) -> Option<Vec<i64>> {
        match (self.degree, self.max_degree) {
            (Some(n), _) => Some(vec![n]),
            (None, Some(m)) => Some((1..=m).collect()),
            (None, None) => None,
        }
    }
}

#[derive(Args)]
struct DimsArgs {
    #[command(flatten)]
    algebra: Algebra,
    #[command(flatten)]
    degrees: Degrees,
    /// Only this chain dimension.
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    algebra: Algebra,
    #[command(flatten)]
    degrees: Degrees,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CyclesArgs {
    #[command(flatten)]
    algebra: Algebra,
    #[command(flatten)]
    degrees: Degrees,
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = Suite::NAMES)]
    suite: String,
    /// Restrict to one family; both by default.
    #[arg(long)]
    family: Option<Family>,
    /// Restrict to one k; the suite's default levels otherwise.
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i32>,
    #[arg(long, default_value_t = 12)]
    max_degree: i64,
    /// Truncation x-degree for the series identities.
    #[arg(long, default_value_t = 60)]
    trunc: usize,
    #[command(flatten)]
    output: Output,
}

enum Failure {
    Usage(String),
    Verification(String),
    Internal(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn setup(o: &Output) -> Outcome {
    if let Some(j) = o.jobs {
        if j == 0 {
            return Err(usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(internal)?;
    }
    Ok(())
}

fn emit(o: &Output, text: &str) -> Outcome {
    match &o.out {
        Some(path) => fs::write(path, text).map_err(internal),
        None => io::stdout().write_all(text.as_bytes()).map_err(internal),
    }
}

fn json<T: Serialize + ?Sized>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(internal)?;
    s.push('\n');
    Ok(s)
}

fn spec_of(a: &Algebra) -> Result<AlgebraSpec, Failure> {
    AlgebraSpec::new(a.family, a.k).map_err(|e| usage(e.to_string()))
}

fn dims(args: &DimsArgs) -> Outcome {
    setup(&args.output)?;
    let spec = spec_of(&args.algebra)?;
    let degrees = args
        .degrees
        .range()
        .ok_or_else(|| usage("dims needs --degree or --max-degree"))?;
    if degrees.iter().any(|&n| n < 0) {
        return Err(usage("degrees must be non-negative"));
    }
    let reports: Vec<HomologyReport> = degrees
        .par_iter()
        .map(|&n| {
            let mut r = homology_dims_upto(&spec, n, args.dim);
            if let Some(q) = args.dim {
                r.rows.retain(|row| row.q == q);
            }
            r
        })
        .collect();
    let text = match args.output.format {
        Format::Json => json(&reports)?,
        Format::Csv => to_csv(&reports),
        Format::Pretty => {
            let mut s = format!(
                "{spec}\n{:>4} {:>3} {:>8} {:>6} {:>5}\n",
                "n", "q", "dimC", "dimH", "main"
            );
            for r in &reports {
                for row in &r.rows {
                    let _ = writeln!(
                        s,
                        "{:>4} {:>3} {:>8} {:>6} {:>5}",
                        r.n,
                        row.q,
                        row.dim_c,
                        row.dim_h,
                        row.main.len()
                    );
                }
            }
            s
        }
    };
    emit(&args.output, &text)
}

fn spectra(args: &SpectrumArgs) -> Outcome {
    setup(&args.output)?;
    let spec = spec_of(&args.algebra)?;
    if !(0..=1).contains(&spec.k) {
        return Err(usage("spectrum supports k = 0 and k = 1"));
    }
    if args.output.format == Format::Csv {
        return Err(usage("csv output is only available for dims"));
    }
    let degrees = args
        .degrees
        .range()
        .ok_or_else(|| usage("spectrum needs --degree or --max-degree"))?;
    let reports: Vec<SpectralReport> = degrees
        .par_iter()
        .map(|&n| spectrum(&spec, n))
        .collect::<Result<_, _>>()
        .map_err(internal)?;
    let text = match args.output.format {
        Format::Pretty => {
            let mut s = format!("{spec}\n");
            for r in &reports {
                let eigen: Vec<String> = r
                    .eigen
                    .iter()
                    .map(|e| format!("{}^{}", e.value, e.mult))
                    .collect();
                let _ = writeln!(
                    s,
                    "n={:<3} harmonic={:<3} {}",
                    r.n,
                    r.harmonic_dim,
                    eigen.join(" ")
                );
                if r.unsplit_degree > 0 {
                    let _ = writeln!(s, "      irrational part of degree {}", r.unsplit_degree);
                }
            }
            s
        }
        _ => json(&reports)?,
    };
    emit(&args.output, &text)
}

#[derive(Serialize)]
struct CycleChecks {
    cycle: bool,
    stable: bool,
    /// Pairing with the representing cocycle of the same partition.
    cocycle_pairing: String,
}

#[derive(Serialize)]
struct CycleOutput {
    #[serde(flatten)]
    record: CycleRecord,
    checks: CycleChecks,
}

impl CycleOutput {
    fn passed(&self) -> bool {
        self.checks.cycle && self.checks.stable && self.checks.cocycle_pairing == "1"
    }
}

fn cycle_output(spec: &AlgebraSpec, i: &Partition) -> Result<CycleOutput, Failure> {
    let record = CycleRecord::new(i, spec.family, spec.k).map_err(internal)?;
    let cocycle = cocycle_for_main(spec, i).map_err(internal)?;
    let checks = CycleChecks {
        cycle: d(spec, &record.chain).is_zero(),
        stable: is_stable(&record.chain, spec).map_err(internal)?,
        cocycle_pairing: format_q(&inner(&cocycle, &record.chain)),
    };
    Ok(CycleOutput { record, checks })
}

fn cycles(args: &CyclesArgs) -> Outcome {
    setup(&args.output)?;
    let spec = spec_of(&args.algebra)?;
    if spec.k < 1 {
        return Err(usage("cycles needs k >= 1"));
    }
    if args.output.format == Format::Csv {
        return Err(usage("csv output is only available for dims"));
    }
    let mut shapes: Vec<Partition> = match (args.degrees.range(), args.dim) {
        (None, None) => return Err(usage("cycles needs --dim or a degree")),
        (None, Some(q)) => main_partitions_of_dim(spec.k, q),
        (Some(ns), dim) => ns
            .iter()
            .flat_map(|&n| main_partitions(spec.k, n, dim))
            .collect(),
    };
    shapes.retain(|i| !i.is_empty());
    let out: Vec<CycleOutput> = shapes
        .par_iter()
        .map(|i| cycle_output(&spec, i))
        .collect::<Result<_, _>>()?;
    let text = match args.output.format {
        Format::Pretty => {
            let mut s = String::new();
            for c in &out {
                let _ = writeln!(
                    s,
                    "{} {}: {}  [cycle={} stable={} pairing={}]",
                    c.record.family,
                    c.record.partition,
                    c.record.chain,
                    c.checks.cycle,
                    c.checks.stable,
                    c.checks.cocycle_pairing
                );
            }
            s
        }
        _ => json(&out)?,
    };
    emit(&args.output, &text)?;
    match out.iter().find(|c| !c.passed()) {
        Some(c) => Err(Failure::Verification(format!(
            "checks failed for {}",
            c.record.partition
        ))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    seed: u64,
    max_degree: i64,
    trunc: usize,
    #[serde(flatten)]
    report: &'a VerifyReport,
}

fn verify(args: &VerifyArgs) -> Outcome {
    setup(&args.output)?;
    let suite: Suite = args.suite.parse().map_err(usage)?;
    if args.output.format == Format::Csv {
        return Err(usage("csv output is only available for dims"));
    }
    if args.max_degree < 0 {
        return Err(usage("--max-degree must be non-negative"));
    }
    let cfg = VerifyConfig {
        families: args.family.into_iter().collect(),
        levels: args.k.into_iter().collect(),
        max_degree: args.max_degree,
        trunc: args.trunc,
    };
    let report = run_suite(suite, &cfg);
    let text = match args.output.format {
        Format::Pretty => {
            let mut s = format!(
                "{}: {} ({} checks, {} failures)\n",
                report.suite,
                if report.passed { "pass" } else { "FAIL" },
                report.checks,
                report.failures.len()
            );
            for f in &report.failures {
                let _ = writeln!(s, "  {} {}: {}", f.suite, f.check, f.detail);
            }
            s
        }
        _ => json(&VerifyOutput {
            seed: args.output.seed,
            max_degree: args.max_degree,
            trunc: args.trunc,
            report: &report,
        })?,
    };
    emit(&args.output, &text)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "suite {} failed",
            report.suite
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dims(a) => dims(a),
        Command::Spectrum(a) => spectra(a),
        Command::Cycles(a) => cycles(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) | Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        let one = Degrees {
            degree: Some(4),
            max_degree: None,
        };
        assert_eq!(one.range(), Some(vec![4]));
        let many = Degrees {
            degree: None,
            max_degree: Some(3),
        };
        assert_eq!(many.range(), Some(vec![1, 2, 3]));
        assert_eq!(
            Degrees {
                degree: None,
                max_degree: None
            }
            .range(),
            None
        );
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
