//! `sslab` — command-line front end wiring the sieved tables, constants,
//! moment sums and verification sweeps to reproducible file outputs.
//!
//! Exit codes: 0 success, 1 domain error (one-line diagnostic naming the
//! violated precondition), 2 I/O error.

mod config;

use clap::{Args, Parser, Subcommand};
use config::{
    parse_count, parse_real, resolve_threads, CommandKind, OutputFormat, RunConfig, YSpec,
};
use sslab_core::verify::{residual_order_scan, run_verification, Thresholds};
use sslab_core::{
    moments, ArithTables, ConstantsBundle, Error as CoreError, MomentKind, MomentParams,
    SeriesTable, TheoremId,
};
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sslab",
    version,
    about = "Singular-series tables, prime-product constants, weighted moment sums and \
             asymptotic residual verification for the prime-pair problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Prime cutoff for every Euler product and prime sum
    #[arg(long = "prime-limit", value_parser = parse_count, default_value = "1e7")]
    prime_limit: u64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long, value_parser = OutputFormat::parse)]
    format: Option<OutputFormat>,
    /// Worker cap for table construction (falls back to SSLAB_THREADS, then 1)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the full constants bundle with tail estimates
    Constants {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Build the per-offset table of the singular series, its truncation and tail
    Table {
        /// Table range: offsets k = 1..=N
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
        /// Truncation level: a number, sqrt(N), or N^theta
        #[arg(long)]
        y: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute weighted moment sums (repeat --kind for a list)
    Moments {
        /// t0|t1|t2|tailavg|s1|s2|s3|lemma4|lemma5|hildebrand|gpartial|psi2
        #[arg(long = "kind", required = true)]
        kinds: Vec<String>,
        #[arg(long = "N", value_parser = parse_count)]
        n: Option<u64>,
        #[arg(long)]
        y: Option<String>,
        /// Real summation limit for the x-parameterized sums
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        x: Option<f64>,
        /// Tail-moment exponent (0, 1 or 2)
        #[arg(long)]
        m: Option<u32>,
        /// Coprimality modulus for Lemma5/Hildebrand
        #[arg(long, value_parser = parse_count)]
        d: Option<u64>,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        b: Option<f64>,
        /// Offset for psi2
        #[arg(long, value_parser = parse_count)]
        k: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Verify one statement over an (N, y) grid
    Verify {
        /// 1..6, cor1a, cor1b, lemma4 or lemma5
        #[arg(long)]
        theorem: String,
        /// Grid point (repeatable)
        #[arg(long = "N", value_parser = parse_count, required = true)]
        n: Vec<u64>,
        /// Truncation level: a number, sqrt(N), or N^theta (evaluated per N)
        #[arg(long)]
        y: String,
        /// Exponent in the Theorem-1/Corollary normalizers (0 < delta < 1)
        #[arg(long, value_parser = parse_real)]
        delta: Option<f64>,
        /// Verdict threshold override for this statement
        #[arg(long, value_parser = parse_real)]
        threshold: Option<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Fit the residual growth exponent over a geometric N grid
    Scan {
        #[arg(long)]
        theorem: String,
        /// Grid point (repeatable, at least 4)
        #[arg(long = "N", value_parser = parse_count, required = true)]
        n: Vec<u64>,
        /// y as a function of N: a number, sqrt(N), or N^theta
        #[arg(long = "y-rule")]
        y_rule: String,
        #[arg(long, value_parser = parse_real)]
        delta: Option<f64>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

struct AppError {
    code: u8,
    message: String,
}

impl AppError {
    fn domain(message: impl Into<String>) -> AppError {
        AppError { code: 1, message: message.into() }
    }
}

impl From<CoreError> for AppError {
    fn from(e: CoreError) -> AppError {
        match e {
            CoreError::Io(io) => AppError { code: 2, message: io.to_string() },
            other => AppError { code: 1, message: other.to_string() },
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> AppError {
        AppError { code: 2, message: e.to_string() }
    }
}

fn to_config(cmd: &Cmd) -> RunConfig {
    let (command, common) = match cmd {
        Cmd::Constants { common } => (CommandKind::Constants, common),
        Cmd::Table { common, .. } => (CommandKind::Table, common),
        Cmd::Moments { common, .. } => (CommandKind::Moments, common),
        Cmd::Verify { common, .. } => (CommandKind::Verify, common),
        Cmd::Scan { common, .. } => (CommandKind::Scan, common),
    };
    let default_format = match command {
        CommandKind::Table => OutputFormat::Csv,
        _ => OutputFormat::Json,
    };
    let threads = resolve_threads(common.threads, std::env::var("SSLAB_THREADS").ok().as_deref());
    let mut cfg = RunConfig {
        command,
        n_values: Vec::new(),
        y_spec: None,
        x: None,
        m: None,
        d: None,
        a: None,
        b: None,
        k: None,
        kinds: Vec::new(),
        theorem: None,
        delta: None,
        prime_limit: common.prime_limit,
        threshold: None,
        output: common.out.clone(),
        format: common.format.unwrap_or(default_format),
        threads,
    };
    match cmd {
        Cmd::Constants { .. } => {}
        Cmd::Table { n, y, .. } => {
            cfg.n_values = vec![*n];
            cfg.y_spec = Some(y.clone());
        }
        Cmd::Moments { kinds, n, y, x, m, d, a, b, k, .. } => {
            cfg.kinds = kinds.clone();
            cfg.n_values = n.iter().copied().collect();
            cfg.y_spec = y.clone();
            cfg.x = *x;
            cfg.m = *m;
            cfg.d = *d;
            cfg.a = *a;
            cfg.b = *b;
            cfg.k = *k;
        }
        Cmd::Verify { theorem, n, y, delta, threshold, .. } => {
            cfg.theorem = Some(theorem.clone());
            cfg.n_values = n.clone();
            cfg.y_spec = Some(y.clone());
            cfg.delta = *delta;
            cfg.threshold = *threshold;
        }
        Cmd::Scan { theorem, n, y_rule, delta, .. } => {
            cfg.theorem = Some(theorem.clone());
            cfg.n_values = n.clone();
            cfg.y_spec = Some(y_rule.clone());
            cfg.delta = *delta;
        }
    }
    cfg
}

fn make_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, AppError> {
    match path {
        Some(p) => {
            let file = std::fs::File::create(p)?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
    }
}

fn bundle_csv(bundle: &ConstantsBundle) -> String {
    let mut out = String::from("name,value\n");
    out.push_str(&format!("P,{}\n", bundle.prime_limit));
    for (name, v) in [
        ("C2", bundle.c2),
        ("A", bundle.big_a),
        ("prodCubed", bundle.prod_cubed),
        ("cThm2", bundle.c_thm2),
        ("c1", bundle.c1),
        ("L1", bundle.l1),
        ("L2", bundle.l2),
        ("L3", bundle.l3),
        ("L4", bundle.l4),
        ("tail.C2", bundle.tails.c2),
        ("tail.A", bundle.tails.big_a),
        ("tail.prodCubed", bundle.tails.prod_cubed),
        ("tail.L1", bundle.tails.l1),
        ("tail.L2", bundle.tails.l2),
        ("tail.L3", bundle.tails.l3),
        ("tail.L4", bundle.tails.l4),
    ] {
        out.push_str(&format!("{name},{v:.16e}\n"));
    }
    out
}

fn table_json<W: Write>(table: &SeriesTable, w: &mut W) -> std::io::Result<()> {
    write!(w, "[")?;
    for k in 1..=table.n() {
        if k > 1 {
            write!(w, ",")?;
        }
        write!(
            w,
            "{{\"k\":{},\"S\":{:.16e},\"Sy\":{:.16e},\"tail\":{:.16e}}}",
            k,
            table.s(k),
            table.sy(k),
            table.tail(k)
        )?;
    }
    writeln!(w, "]")?;
    Ok(())
}

fn execute(cfg: &RunConfig) -> Result<(), AppError> {
    let mut writer = make_writer(&cfg.output)?;
    match cfg.command {
        CommandKind::Constants => {
            let bundle = ConstantsBundle::compute(cfg.prime_limit)?;
            match cfg.format {
                OutputFormat::Json => writeln!(writer, "{}", bundle.to_json())?,
                OutputFormat::Csv => write!(writer, "{}", bundle_csv(&bundle))?,
            }
        }
        CommandKind::Table => {
            let n = cfg.n_values[0];
            let y_spec = YSpec::parse(cfg.y_spec.as_deref().unwrap()).map_err(AppError::domain)?;
            let y = y_spec.eval(n);
            let bundle = ConstantsBundle::compute(cfg.prime_limit)?;
            let limit = n.max(y.max(0.0).floor() as u64);
            let tables = ArithTables::build(limit)?;
            let table = SeriesTable::build_with_threads(n, y, &tables, &bundle, cfg.threads)?;
            match cfg.format {
                OutputFormat::Csv => table.write_csv(&mut writer)?,
                OutputFormat::Json => table_json(&table, &mut writer)?,
            }
        }
        CommandKind::Moments => {
            let y_spec = match &cfg.y_spec {
                Some(s) => Some(YSpec::parse(s).map_err(AppError::domain)?),
                None => None,
            };
            let n = cfg.n_values.first().copied();
            let y = match (y_spec, n) {
                (Some(YSpec::Literal(v)), _) => Some(v),
                (Some(spec), Some(n)) => Some(spec.eval(n)),
                (Some(_), None) => {
                    return Err(AppError::domain("an N-dependent y expression requires --N"))
                }
                (None, _) => None,
            };
            let mut limit = n.unwrap_or(1);
            if let Some(x) = cfg.x {
                limit = limit.max(x.max(0.0).ceil() as u64);
            }
            if let Some(y) = y {
                limit = limit.max(y.max(0.0).floor() as u64);
            }
            let bundle = ConstantsBundle::compute(cfg.prime_limit)?;
            let tables = ArithTables::build(limit)?;
            let series = match (n, y) {
                (Some(n), Some(y)) => {
                    Some(SeriesTable::build_with_threads(n, y, &tables, &bundle, cfg.threads)?)
                }
                _ => None,
            };
            let params = MomentParams {
                n,
                x: cfg.x,
                y,
                m: cfg.m,
                d: cfg.d,
                a: cfg.a,
                b: cfg.b,
                k: cfg.k,
            };
            let mut results = Vec::new();
            for kind_name in &cfg.kinds {
                let kind = MomentKind::parse(kind_name)?;
                results.push(moments::compute(kind, &params, &tables, &bundle, series.as_ref())?);
            }
            match cfg.format {
                OutputFormat::Json => moments::write_json(&results, &mut writer)?,
                OutputFormat::Csv => moments::write_csv_grid(&results, &mut writer)?,
            }
        }
        CommandKind::Verify => {
            let id = TheoremId::parse(cfg.theorem.as_deref().unwrap())?;
            let y_spec = YSpec::parse(cfg.y_spec.as_deref().unwrap()).map_err(AppError::domain)?;
            let grid: Vec<(u64, f64)> =
                cfg.n_values.iter().map(|&n| (n, y_spec.eval(n))).collect();
            let mut thresholds = Thresholds::default();
            if let Some(t) = cfg.threshold {
                thresholds.set(id, t);
            }
            let limit = grid
                .iter()
                .map(|&(n, y)| n.max(y.max(0.0).floor() as u64))
                .max()
                .unwrap_or(1);
            let bundle = ConstantsBundle::compute(cfg.prime_limit)?;
            let tables = ArithTables::build(limit)?;
            let results =
                run_verification(id, &grid, cfg.delta, &thresholds, &bundle, &tables, cfg.threads);
            let mut reports = Vec::with_capacity(results.len());
            for r in results {
                reports.push(r?);
            }
            match cfg.format {
                OutputFormat::Json => sslab_core::verify::write_reports_json(&reports, &mut writer)?,
                OutputFormat::Csv => sslab_core::verify::write_reports_csv(&reports, &mut writer)?,
            }
        }
        CommandKind::Scan => {
            let id = TheoremId::parse(cfg.theorem.as_deref().unwrap())?;
            let y_spec = YSpec::parse(cfg.y_spec.as_deref().unwrap()).map_err(AppError::domain)?;
            let limit = cfg
                .n_values
                .iter()
                .map(|&n| n.max(y_spec.eval(n).max(0.0).floor() as u64))
                .max()
                .unwrap_or(1);
            let bundle = ConstantsBundle::compute(cfg.prime_limit)?;
            let tables = ArithTables::build(limit)?;
            let scan = residual_order_scan(
                id,
                &cfg.n_values,
                y_spec.rule(),
                cfg.delta,
                &bundle,
                &tables,
                cfg.threads,
            )?;
            match cfg.format {
                OutputFormat::Json => sslab_core::verify::write_scan_json(&scan, &mut writer)?,
                OutputFormat::Csv => {
                    writeln!(writer, "N,y,residual,normalizer,fitted,theoretical")?;
                    for p in &scan.points {
                        writeln!(
                            writer,
                            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                            p.n,
                            p.y,
                            p.residual,
                            p.normalizer,
                            scan.fitted_exponent,
                            scan.theoretical_exponent
                        )?;
                    }
                }
            }
        }
    }
    writer.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let cfg = to_config(&cli.command);
    if let Err(msg) = cfg.validate() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match execute(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
