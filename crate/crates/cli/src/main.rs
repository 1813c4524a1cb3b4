use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use effectkit::commands::{Context, Registry};
use effectkit::Budget;

/// Exit codes: 0 all asserted properties hold, 1 a violation was found,
/// 2 something stayed unknown within the budget, 3 bad input or usage.
#[derive(Parser, Debug)]
#[command(name = "effectkit", version, about = "Effect algebra toolkit")]
struct Cli {
    /// check, rdp, ideals, states, decompose, represent, subdirect or classify
    command: String,
    /// An `.ea` file, or `-` for standard input.
    file: PathBuf,
    /// Integer half-width of the sampling window.
    #[arg(long, default_value_t = 5)]
    window: i128,
    /// Samples drawn per sampled property.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Target `(H,u)` as `domain:cone@unit`, e.g. `integer:product(1)@2`.
    #[arg(long)]
    head: Option<String>,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Worker threads for parallel searches.
    #[arg(long)]
    jobs: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

const USAGE_ERROR: u8 = 3;

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let registry = Registry::default();
    if registry.get(&cli.command).is_none() {
        let names: Vec<_> = registry.iter().map(|c| format!("  {:<10} {}", c.name(), c.about())).collect();
        return Err(format!("unknown command '{}'; available:\n{}", cli.command, names.join("\n")));
    }
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let text = read_input(&cli.file).map_err(|e| format!("{}: {}", cli.file.display(), e))?;
    let budget = Budget {
        window: cli.window,
        samples: cli.samples,
        seed: cli.seed,
    };
    let started = Instant::now();
    let ctx = Context::from_text(&text, budget)
        .and_then(|c| c.with_head(cli.head.as_deref()))
        .map_err(|e| format!("{}: {}", cli.file.display(), e))?;
    let mut report = registry.run(&cli.command, &ctx).map_err(|e| e.to_string())?;
    if cli.timing {
        report.elapsed_ms = Some(started.elapsed().as_millis());
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.outcome().exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_ERROR);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(USAGE_ERROR)
        }
    }
}
