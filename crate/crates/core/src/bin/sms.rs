use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sms_core::benchmarks::{BenchmarkId, BenchmarkInstance};
use sms_core::harness::{format_value, run_experiment, write_outputs, ExperimentConfig, ExperimentReport};
use sms_core::rng::RandomStream;
use sms_core::stats::{parse_column, summarize, wilcoxon_rank_sum};
use sms_core::Error;

#[derive(Parser)]
#[command(name = "sms", version, about = "States of Matter Search experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file.
    Run {
        config: PathBuf,
        /// Write per-cell convergence traces.
        #[arg(long)]
        traces: bool,
        /// Override the config's output directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Describe one benchmark instance and check its known optimum.
    Bench {
        id: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the full instance dump instead of the summary.
        #[arg(long)]
        dump: bool,
    },
    /// Wilcoxon rank-sum test between two files of final values.
    Stats { finals_a: PathBuf, finals_b: PathBuf },
}

const EXIT_CONFIG: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, traces, output_dir } => run(config, traces, output_dir),
        Command::Bench { id, n, seed, dump } => bench(&id, n, seed, dump),
        Command::Stats { finals_a, finals_b } => stats(&finals_a, &finals_b),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Parse { .. } | Error::UnknownBenchmark(_) | Error::Dimension { .. } => {
                    EXIT_CONFIG
                }
                _ => EXIT_RUNTIME,
            })
        }
    }
}

fn run(config: PathBuf, traces: bool, output_dir: Option<PathBuf>) -> sms_core::Result<ExitCode> {
    let mut cfg = ExperimentConfig::from_file(&config)?;
    cfg.traces |= traces;
    if let Some(dir) = output_dir {
        cfg.output_dir = dir;
    }
    let report = run_experiment(&cfg)?;
    write_outputs(&report, &cfg.output_dir).map_err(|e| Error::Logic(e.to_string()))?;
    print_report(&report);
    println!("wrote {}", cfg.output_dir.display());

    let failed = report.failed_runs();
    if failed > 0 {
        eprintln!("{failed} run(s) failed; see report.json");
        return Ok(ExitCode::from(EXIT_RUNTIME));
    }
    Ok(ExitCode::SUCCESS)
}

fn print_report(report: &ExperimentReport) {
    println!("{:<6} {:<5} {:>24} {:>24} {:>24} {:>6}", "bench", "opt", "AB", "MB", "SD", "failed");
    for c in &report.cells {
        let (ab, mb, sd) = c
            .summary
            .map(|s| (format_value(s.ab), format_value(s.mb), format_value(s.sd)))
            .unwrap_or_default();
        println!("{:<6} {:<5} {ab:>24} {mb:>24} {sd:>24} {:>6}", c.benchmark, c.optimizer, c.failed_runs());
    }
    for cmp in &report.comparisons {
        println!(
            "{}: sms vs {} rank_sum={} p={:.6e} ({:?}, {:?})",
            cmp.benchmark, cmp.baseline, cmp.test.rank_sum, cmp.test.p_two_sided, cmp.test.method, cmp.test.direction
        );
    }
}

fn bench(id: &str, n: Option<usize>, seed: u64, dump: bool) -> sms_core::Result<ExitCode> {
    let id: BenchmarkId = id.parse()?;
    let inst = BenchmarkInstance::generate(id, n.unwrap_or(id.default_dim()), seed)?;
    if dump {
        print!("{}", inst.dump());
        return Ok(ExitCode::SUCCESS);
    }
    println!("id = {}", inst.id);
    println!("n = {}", inst.n);
    println!("instance_seed = {}", inst.instance_seed);
    println!("bounds = [{}, {}]", inst.bounds.low()[0], inst.bounds.high()[0]);
    println!("generations = {}", id.default_generations());
    match inst.f_opt {
        Some(f) => println!("f_opt = {f}"),
        None => println!("f_opt = none"),
    }
    match (inst.optimizer_location(), inst.f_opt) {
        (Some(x), Some(f)) if !id.is_noisy() => {
            let v = inst.value(&x, &mut RandomStream::new(0))?;
            println!("f(x_opt) = {v}");
            println!("optimum_error = {:e}", (v - f).abs());
        }
        _ => println!("optimum check: not available for {id}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn stats(a: &PathBuf, b: &PathBuf) -> sms_core::Result<ExitCode> {
    let read = |p: &PathBuf| -> sms_core::Result<Vec<f64>> {
        let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
        parse_column(&text)
    };
    let (fa, fb) = (read(a)?, read(b)?);
    for (name, f) in [("a", &fa), ("b", &fb)] {
        let s = summarize(f)?;
        println!(
            "{name}: count={} AB={} MB={} SD={}",
            s.count,
            format_value(s.ab),
            format_value(s.mb),
            format_value(s.sd)
        );
    }
    let w = wilcoxon_rank_sum(&fa, &fb)?;
    println!("rank_sum = {}", w.rank_sum);
    println!("p_two_sided = {}", format_value(w.p_two_sided));
    println!("method = {}", serde_json::to_value(w.method).unwrap_or_default().as_str().unwrap_or_default());
    println!("direction = {}", serde_json::to_value(w.direction).unwrap_or_default().as_str().unwrap_or_default());
    println!("significant_at_0.05 = {}", w.significant(0.05));
    Ok(ExitCode::SUCCESS)
}
