use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use histopol_cli::commands::OUTPUT_HELP;
use histopol_cli::{run, Command, ExperimentConfig, RunContext};

/// Polynomial histopolation experiments on disc supports.
#[derive(Parser)]
#[command(name = "histopol", version, after_help = OUTPUT_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vandermonde condition numbers, monomial vs Chebyshev basis.
    #[command(after_help = "Writes cond.csv: degree,family,basis,radius,cond")]
    Cond(RunArgs),
    /// Lebesgue constants of a support family, optional nodal baseline and radius sweep.
    #[command(after_help = "Writes lebesgue.csv: degree,lambda,method,M\n\
                            With radius_sweep also radius_sweep.csv: degree,ratio,radius,lambda,nodal")]
    Lebesgue(RunArgs),
    /// Interpolation errors for f1 = e^x sin(x+y) and f2 = 1/(25(x²+y²)+1).
    #[command(after_help = "Writes interp_f1.csv and interp_f2.csv: degree,family,error\n\
                            With surface also surface_f2_<family>.csv: x,y,f2,interpolant")]
    Interp(RunArgs),
    /// Extract approximate Fekete or discrete Leja supports from a disc pool.
    #[command(after_help = "Writes supports.json (pool indices in \"order\" for dls)")]
    Extract(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON experiment configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Also write SVG charts.
    #[arg(long)]
    svg: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Cond(a) => (Command::Cond, a),
        Cmd::Lebesgue(a) => (Command::Lebesgue, a),
        Cmd::Interp(a) => (Command::Interp, a),
        Cmd::Extract(a) => (Command::Extract, a),
    };
    let result = ExperimentConfig::load(&args.config).and_then(|cfg| {
        let ctx = RunContext {
            config_dir: args.config.parent().map(PathBuf::from).unwrap_or_default(),
            out_dir: args.out.clone(),
            svg: args.svg,
        };
        run(command, &cfg, &ctx)
    });
    match result {
        Ok(report) => {
            for f in &report.failures {
                eprintln!("degree {} ({}): {}", f.degree, f.family, f.message);
            }
            for p in &report.written {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("histopol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
