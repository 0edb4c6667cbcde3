use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use adtt::approx::{self, proposed_kernel, search_alpha};
use adtt::codec::{compress_image, KernelId, RetentionSpec};
use adtt::metrics::Metric;
use adtt::sweep::{self, SweepConfig};
use adtt::tcheb::{dtt_matrix, exact_factorization_8};
use adtt::{Error, GrayImage};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;

#[derive(Parser)]
#[command(
    name = "adtt",
    version,
    about = "Exact and approximate discrete Tchebichef transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    /// Exact orthonormal DTT of order --n
    Dtt,
    /// Integer part T0 of the 8-point DTT
    T0,
    /// Diagonal F with T = F·T0
    F,
    /// Companding scale D0
    D0,
    /// Proposed forward kernel T*
    Tstar,
    /// Integer inverse kernel T1
    T1,
    /// Inverse scale D1
    D1,
    /// Orthogonalization scale D*
    Dstar,
}

#[derive(Subcommand)]
enum Command {
    /// Print a transform matrix or diagonal scale
    GenMatrix {
        #[arg(long, value_enum, default_value = "dtt")]
        kind: MatrixKind,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        precision: usize,
    },
    /// Exhaustive search of the approximation parameter alpha
    SearchAlpha {
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        /// Print the kernel of every interval, not only the optimal one
        #[arg(long)]
        all_kernels: bool,
    },
    /// Total energy error of the forward and inverse approximations
    EnergyError,
    /// Arithmetic complexity table
    OpCount {
        #[arg(long)]
        csv: bool,
    },
    /// Compress an image by zonal coefficient retention
    Compress {
        #[arg(long, default_value = "proposed")]
        kernel: String,
        #[arg(long)]
        r: usize,
        input: PathBuf,
        output: PathBuf,
    },
    /// Full-reference quality score
    Quality {
        #[arg(long)]
        metric: String,
        reference: PathBuf,
        test: PathBuf,
    },
    /// Compression sweep over a directory of PGM images
    Sweep {
        /// TOML file with the same keys as the flags (snake_case)
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        r_min: Option<usize>,
        #[arg(long)]
        r_max: Option<usize>,
        /// Comma-separated kernel ids
        #[arg(long, value_delimiter = ',')]
        kernels: Option<Vec<String>>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let line = e.to_string().replace('\n', " ");
        match e {
            Error::InvalidParameter(_) | Error::Config(_) => Failure::Usage(line),
            _ => Failure::Data(line),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("error: usage: {}", first.trim_start_matches("error: "));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: usage: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: data: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}

fn diag_text(values: &[f64], precision: usize) -> String {
    let cells: Vec<String> = values.iter().map(|v| format!("{v:.precision$}")).collect();
    format!("{}\n", cells.join(" "))
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::GenMatrix { kind, n, precision } => {
            if n != 8 && !matches!(kind, MatrixKind::Dtt) {
                return Err(Failure::Usage(
                    "--n applies to --kind dtt only; the other matrices are 8-point".into(),
                ));
            }
            let kernel = proposed_kernel();
            Ok(match kind {
                MatrixKind::Dtt => dtt_matrix(n)?.to_text(precision),
                MatrixKind::T0 => exact_factorization_8().1.to_text(),
                MatrixKind::F => diag_text(exact_factorization_8().0.values(), precision),
                MatrixKind::D0 => diag_text(approx::d0_scaling().values(), precision),
                MatrixKind::Tstar => kernel.forward.to_text(),
                MatrixKind::T1 => kernel.inverse_int.to_text(),
                MatrixKind::D1 => diag_text(kernel.inverse_scale.values(), precision),
                MatrixKind::Dstar => diag_text(kernel.ortho_scale.values(), precision),
            })
        }
        Command::SearchAlpha { step, all_kernels } => {
            let result = search_alpha(step)?;
            let decimals = (-step.log10()).ceil().max(0.0) as usize;
            let mut out = String::new();
            let _ = writeln!(
                out,
                "grid step {step}: {} admissible values",
                result.admissible.len()
            );
            let optimal = result.optimal_run();
            for run in result.intervals() {
                let marker = if Some(&run) == optimal.as_ref() {
                    " *"
                } else {
                    ""
                };
                let _ = writeln!(
                    out,
                    "[{:.d$}, {:.d$}] {} points{marker}",
                    run.lo,
                    run.hi,
                    run.points,
                    d = decimals
                );
                if all_kernels {
                    out.push_str(&run.kernel.to_text());
                }
            }
            match optimal {
                Some(run) => {
                    let _ = writeln!(
                        out,
                        "optimal interval: {:.d$} <= alpha <= {:.d$}",
                        run.lo,
                        run.hi,
                        d = decimals
                    );
                    out.push_str(&run.kernel.to_text());
                }
                None => out.push_str("optimal interval: none\n"),
            }
            Ok(out)
        }
        Command::EnergyError => {
            let (fwd, inv) = approx::proposed_energy_errors();
            Ok(format!("forward {fwd:.4}\ninverse {inv:.4}\n"))
        }
        Command::OpCount { csv } => Ok(if csv {
            sweep::complexity_csv()
        } else {
            sweep::report_complexity()
        }),
        Command::Compress {
            kernel,
            r,
            input,
            output,
        } => {
            let kernel: KernelId = kernel.parse()?;
            let spec = RetentionSpec::new(r)?;
            let img = GrayImage::read_pgm(&input)?;
            compress_image(&img, kernel, spec).write_pgm(&output)?;
            Ok(String::new())
        }
        Command::Quality {
            metric,
            reference,
            test,
        } => {
            let metric: Metric = metric.parse()?;
            let a = GrayImage::read_pgm(&reference)?;
            let b = GrayImage::read_pgm(&test)?;
            Ok(format!("{:.6}\n", metric.evaluate(&a, &b)?))
        }
        Command::Sweep {
            config,
            corpus,
            r_min,
            r_max,
            kernels,
            output,
        } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    SweepConfig::from_toml(&text)?
                }
                None => {
                    let corpus = corpus
                        .clone()
                        .ok_or_else(|| Failure::Usage("--corpus is required".into()))?;
                    let output = output
                        .clone()
                        .ok_or_else(|| Failure::Usage("--output is required".into()))?;
                    SweepConfig::new(corpus, output)
                }
            };
            if let Some(c) = corpus {
                cfg.corpus_dir = c;
            }
            if let Some(o) = output {
                cfg.output = o;
            }
            if let Some(v) = r_min {
                cfg.r_min = v;
            }
            if let Some(v) = r_max {
                cfg.r_max = v;
            }
            if let Some(ks) = kernels {
                cfg.kernels = ks
                    .iter()
                    .map(|k| k.parse())
                    .collect::<Result<Vec<KernelId>, Error>>()?;
            }
            let result = sweep::run_sweep(&cfg)?;
            let mut out = format!(
                "{} records -> {}\nsummary -> {}\n",
                result.records.len(),
                result.records_path.display(),
                result.summary_path.display()
            );
            out.push_str("kernel,r,mean_ssim,mean_srsim\n");
            for row in &result.summary {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    row.kernel,
                    row.r,
                    sweep::format_sig6(row.mean_ssim),
                    sweep::format_sig6(row.mean_srsim)
                );
            }
            Ok(out)
        }
    }
}
