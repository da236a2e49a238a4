use clap::{Args, Parser, Subcommand};
use spectral_ellipse::EnsembleKind;
use spectral_ellipse_cli::input::InputFormat;
use spectral_ellipse_cli::pipeline::{
    AnalysisOptions, DEFAULT_SLACK, DEFAULT_SWEEP_K, DEFAULT_TOL,
};
use spectral_ellipse_cli::verify::VerifyConfig;
use spectral_ellipse_cli::{
    cmd_analyze, cmd_bound, cmd_tightness, cmd_verify, AnalyzeOutputs, CliError, EXIT_CHECK_FAILED,
    EXIT_OK, EXIT_PARSE,
};
use std::path::PathBuf;
use std::process::ExitCode;

/// Inscribed spectral ellipses from tr A and tr A².
#[derive(Parser)]
#[command(name = "spectral-ellipse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a matrix file and print a JSON report.
    Analyze {
        path: PathBuf,
        /// Input format; inferred from the extension (.json, .mtx) by default.
        #[arg(long)]
        format: Option<InputFormat>,
        #[command(flatten)]
        opts: Tolerances,
        /// Also write the report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write an SVG plot of spectrum, hull, ellipse and foci.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run a seeded verification campaign over a random-matrix ensemble.
    Verify {
        /// ginibre, real-gaussian, nilpotent, prescribed, remark or qzero.
        #[arg(long)]
        ensemble: EnsembleKind,
        #[arg(short, long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write one CSV row per trial.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        opts: Tolerances,
    },
    /// Print the table for the extremal family -1, ..., -1, n-1.
    Tightness {
        #[arg(long, default_value_t = 32)]
        n_max: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Spectral-radius lower bound from tr A and tr A² only.
    Bound {
        path: PathBuf,
        #[arg(long)]
        format: Option<InputFormat>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Tolerances {
    /// Moment tolerance, scaled by (1 + ‖A‖_F)².
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Containment slack, scaled by 1 + max|λ|.
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    slack: f64,
    /// Directions in the margin sweep.
    #[arg(long, default_value_t = DEFAULT_SWEEP_K)]
    sweep_k: usize,
}

impl Tolerances {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            tol: self.tol,
            slack: self.slack,
            sweep_k: self.sweep_k,
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze {
            path,
            format,
            opts,
            json,
            svg,
        } => {
            let out = AnalyzeOutputs {
                json: json.as_deref(),
                svg: svg.as_deref(),
            };
            let (_, text) = cmd_analyze(&path, format, &opts.options(), &out)?;
            print!("{text}");
            Ok(EXIT_OK)
        }
        Command::Verify {
            ensemble,
            n,
            trials,
            seed,
            csv,
            opts,
        } => {
            let cfg = VerifyConfig {
                kind: ensemble,
                n,
                trials,
                seed,
                analysis: opts.options(),
            };
            let summary = cmd_verify(&cfg, csv.as_deref())?;
            println!("{summary}");
            Ok(if summary.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Tightness { n_max, csv } => {
            let (table, ok) = cmd_tightness(n_max, csv.as_deref())?;
            print!("{table}");
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Bound { path, format, json } => {
            let (_, text) = cmd_bound(&path, format, json.as_deref())?;
            print!("{text}");
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
