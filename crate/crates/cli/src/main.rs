//! `qenhance` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 I/O failure, 4 numeric
//! precondition violated. Messages go to standard error.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use qenhance::image::write_atomically;
use qenhance::report::{
    format_comparison_table, write_channel_sweeps_csv, write_comparison_csv, write_sweep_csv,
};
use qenhance::{
    enhance_dft_channelwise, hist_eq_v, load_image, run_comparison, save_image,
    sweep_dft_channelwise, sweep_qdft, Alpha, AlphaChoice, AlphaGrid, AlphaParams,
    ChannelAlphaParams, ImageFormat, MeasureConfig, PipelineConfig, QdftEnhancer, RgbImage,
    ScalarPolicy,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] qenhance::Error),
    #[error("cannot write to standard output: {0}")]
    Stdout(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) if e.is_io() => 3,
            CliError::Lib(_) => 4,
            CliError::Stdout(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "qenhance",
    version,
    about = "Color image enhancement by quaternion DFT alpha-rooting"
)]
struct Cli {
    /// Log progress to standard error.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alpha-root an image and write the result; prints original and enhanced CEME.
    Enhance(EnhanceArgs),
    /// Evaluate the contrast measure over a grid of alphas and write the curve as CSV.
    Sweep(SweepArgs),
    /// Print CEME and per-channel EME of an image.
    Measure(MeasureArgs),
    /// Run the five-way method comparison and print it as a table.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Two-sided quaternion DFT on the whole color image.
    QdftAlpha,
    /// Complex 2-D DFT on each channel separately.
    DftAlpha,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    /// Scalar part of every pixel is 0.
    Zero,
    /// Scalar part is (R + G + B) / 3.
    GrayMean,
}

impl From<PolicyArg> for ScalarPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Zero => ScalarPolicy::Zero,
            PolicyArg::GrayMean => ScalarPolicy::GrayMean,
        }
    }
}

#[derive(Args, Debug)]
struct MeasureOpts {
    /// Measure block size as HEIGHTxWIDTH.
    #[arg(long, value_name = "L1xL2", default_value = "8x8", value_parser = parse_block)]
    block: (usize, usize),
    /// Lower bound on a block's minimum before taking the log ratio.
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Count the residual scalar plane of the quaternion path in CEME.
    #[arg(long)]
    ceme_scalar: bool,
    /// With --ceme-scalar, keep the scalar plane even when it is all zero.
    #[arg(long)]
    include_zero_scalar: bool,
}

impl MeasureOpts {
    fn config(&self) -> MeasureConfig {
        MeasureConfig {
            block_h: self.block.0,
            block_w: self.block.1,
            eps: self.eps,
            scalar_in_ceme: self.ceme_scalar,
            include_zero_scalar: self.include_zero_scalar,
        }
    }
}

#[derive(Args, Debug)]
struct GridOpts {
    /// Smallest alpha of the sweep grid.
    #[arg(long, default_value_t = 0.80)]
    alpha_min: f64,
    /// Largest alpha of the sweep grid.
    #[arg(long, default_value_t = 1.00)]
    alpha_max: f64,
    /// Spacing of the sweep grid.
    #[arg(long, default_value_t = 0.01)]
    alpha_step: f64,
}

impl GridOpts {
    fn grid(&self) -> AlphaGrid {
        AlphaGrid::new(self.alpha_min, self.alpha_max, self.alpha_step)
    }
}

#[derive(Args, Debug)]
struct AlphaOpts {
    /// Fixed alpha in (0, 1]; for dft-alpha it applies to every channel not set below.
    /// When no alpha is given the best one is found by sweeping the grid.
    #[arg(long)]
    alpha: Option<f64>,
    /// Red-channel alpha for dft-alpha.
    #[arg(long)]
    alpha_r: Option<f64>,
    /// Green-channel alpha for dft-alpha.
    #[arg(long)]
    alpha_g: Option<f64>,
    /// Blue-channel alpha for dft-alpha.
    #[arg(long)]
    alpha_b: Option<f64>,
}

impl AlphaOpts {
    fn is_fixed(&self) -> bool {
        self.alpha.is_some()
            || self.alpha_r.is_some()
            || self.alpha_g.is_some()
            || self.alpha_b.is_some()
    }

    /// Per-channel alphas, falling back to `--alpha` and then to 1.
    fn channel(&self) -> [f64; 3] {
        let base = self.alpha.unwrap_or(1.0);
        [
            self.alpha_r.unwrap_or(base),
            self.alpha_g.unwrap_or(base),
            self.alpha_b.unwrap_or(base),
        ]
    }
}

#[derive(Args, Debug)]
struct EnhanceArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::QdftAlpha)]
    method: MethodArg,
    #[command(flatten)]
    alphas: AlphaOpts,
    #[command(flatten)]
    grid: GridOpts,
    /// Follow rooting with histogram equalization of the HSV value channel.
    #[arg(long)]
    hist_eq: bool,
    /// Histogram bins for --hist-eq.
    #[arg(long, default_value_t = 256)]
    bins: usize,
    /// Leave the DC coefficient unrooted.
    #[arg(long)]
    preserve_dc: bool,
    /// Scalar part given to each pixel before the quaternion transform.
    #[arg(long, value_enum, default_value_t = PolicyArg::Zero)]
    scalar_policy: PolicyArg,
    /// Output encoding; inferred from the output extension when omitted.
    #[arg(long, value_parser = parse_format)]
    format: Option<ImageFormat>,
    #[command(flatten)]
    measure: MeasureOpts,
    input: PathBuf,
    output: PathBuf,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::QdftAlpha)]
    method: MethodArg,
    #[command(flatten)]
    grid: GridOpts,
    /// Leave the DC coefficient unrooted.
    #[arg(long)]
    preserve_dc: bool,
    /// Scalar part given to each pixel before the quaternion transform.
    #[arg(long, value_enum, default_value_t = PolicyArg::Zero)]
    scalar_policy: PolicyArg,
    /// Write the curve here; without it the CSV goes to standard output.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    measure: MeasureOpts,
    input: PathBuf,
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[command(flatten)]
    measure: MeasureOpts,
    input: PathBuf,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Fix the quaternion-path alpha (and the channel alphas not set separately)
    /// instead of sweeping.
    #[command(flatten)]
    alphas: AlphaOpts,
    #[command(flatten)]
    grid: GridOpts,
    /// Skip histogram equalization; the "+ HE" rows then repeat the rooted rows.
    #[arg(long)]
    no_hist_eq: bool,
    /// Histogram bins for equalization.
    #[arg(long, default_value_t = 256)]
    bins: usize,
    /// Leave the DC coefficient unrooted.
    #[arg(long)]
    preserve_dc: bool,
    /// Scalar part given to each pixel before the quaternion transform.
    #[arg(long, value_enum, default_value_t = PolicyArg::Zero)]
    scalar_policy: PolicyArg,
    /// Also write the comparison as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    #[command(flatten)]
    measure: MeasureOpts,
    input: PathBuf,
}

fn parse_block(s: &str) -> std::result::Result<(usize, usize), String> {
    let (h, w) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected HEIGHTxWIDTH, got {s:?}"))?;
    let h = h.trim().parse().map_err(|e| format!("block height: {e}"))?;
    let w = w.trim().parse().map_err(|e| format!("block width: {e}"))?;
    Ok((h, w))
}

fn parse_format(s: &str) -> std::result::Result<ImageFormat, String> {
    ImageFormat::from_name(s).ok_or_else(|| format!("unknown format {s:?} (png, bmp, tiff, jpeg)"))
}

fn output_format(path: &Path, explicit: Option<ImageFormat>) -> CliResult<ImageFormat> {
    explicit
        .or_else(|| ImageFormat::from_path(path))
        .ok_or_else(|| {
            CliError::Usage(format!(
                "cannot infer an image format from {}; pass --format",
                path.display()
            ))
        })
}

fn write_csv_to(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> qenhance::Result<()>,
) -> CliResult<()> {
    match path {
        Some(p) => write_atomically(p, |w| write(w))?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn cmd_enhance(args: &EnhanceArgs) -> CliResult<()> {
    let format = output_format(&args.output, args.format)?;
    let measure = args.measure.config();
    measure.validate()?;
    if args.hist_eq && args.bins < 2 {
        return Err(qenhance::Error::InvalidBins(args.bins).into());
    }
    let fixed = args.alphas.is_fixed();
    if fixed {
        for a in args.alphas.channel() {
            Alpha::new(a)?;
        }
    } else {
        args.grid.grid().points()?;
    }

    let img = load_image(&args.input)?;
    measure.grid(img.dims())?;
    let cfg = PipelineConfig {
        grid: args.grid.grid(),
        measure,
        preserve_dc: args.preserve_dc,
        scalar_policy: args.scalar_policy.into(),
        ..PipelineConfig::default()
    };

    let (rooted, scalar) = match args.method {
        MethodArg::QdftAlpha => {
            let alpha = match args.alphas.alpha {
                Some(a) => a,
                None if fixed => 1.0,
                None => {
                    let sweep = sweep_qdft(&img, &cfg)?;
                    info!(
                        "swept alpha {} (CEME {})",
                        sweep.best_alpha, sweep.best_value
                    );
                    sweep.best_alpha
                }
            };
            println!("alpha: {alpha}");
            let out = QdftEnhancer::new(&img, cfg.scalar_policy)
                .apply(&AlphaParams::new(alpha)?.with_preserve_dc(args.preserve_dc));
            (out.rgb, Some(out.scalar))
        }
        MethodArg::DftAlpha => {
            let alphas = if fixed {
                args.alphas.channel()
            } else {
                let s = sweep_dft_channelwise(&img, &cfg)?;
                [s[0].best_alpha, s[1].best_alpha, s[2].best_alpha]
            };
            println!("alpha: R {} G {} B {}", alphas[0], alphas[1], alphas[2]);
            let params = ChannelAlphaParams::new(alphas[0], alphas[1], alphas[2])?
                .with_preserve_dc(args.preserve_dc);
            (enhance_dft_channelwise(&img, &params), None)
        }
    };
    let enhanced: RgbImage = if args.hist_eq {
        hist_eq_v(&rooted, args.bins)?
    } else {
        rooted
    };

    let before = measure.ceme(&img, None)?;
    let after = measure.ceme(&enhanced, scalar.as_ref())?;
    save_image(&enhanced, &args.output, format)?;
    println!("original CEME: {before}");
    println!("enhanced CEME: {after}");
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> CliResult<()> {
    let measure = args.measure.config();
    measure.validate()?;
    let grid = args.grid.grid();
    grid.points()?;
    let img = load_image(&args.input)?;
    let cfg = PipelineConfig {
        grid,
        measure,
        preserve_dc: args.preserve_dc,
        scalar_policy: args.scalar_policy.into(),
        ..PipelineConfig::default()
    };
    // the best-alpha summary goes to stderr when stdout carries the CSV
    let mut summary: Box<dyn Write> = if args.csv.is_some() {
        Box::new(io::stdout())
    } else {
        Box::new(io::stderr())
    };
    match args.method {
        MethodArg::QdftAlpha => {
            let sweep = sweep_qdft(&img, &cfg)?;
            write_csv_to(args.csv.as_deref(), |w| write_sweep_csv(&sweep, w))?;
            writeln!(
                summary,
                "best alpha: {} (CEME {})",
                sweep.best_alpha, sweep.best_value
            )?;
        }
        MethodArg::DftAlpha => {
            let sweeps = sweep_dft_channelwise(&img, &cfg)?;
            write_csv_to(args.csv.as_deref(), |w| {
                write_channel_sweeps_csv(&sweeps, w)
            })?;
            for (name, s) in ["R", "G", "B"].iter().zip(&sweeps) {
                writeln!(
                    summary,
                    "best alpha {name}: {} (EME {})",
                    s.best_alpha, s.best_value
                )?;
            }
        }
    }
    Ok(())
}

fn cmd_measure(args: &MeasureArgs) -> CliResult<()> {
    let measure = args.measure.config();
    measure.validate()?;
    let img = load_image(&args.input)?;
    let ceme = measure.ceme(&img, None)?;
    let [r, g, b] = measure.eme_rgb(&img)?;
    println!("CEME: {ceme}");
    println!("EME R: {r}");
    println!("EME G: {g}");
    println!("EME B: {b}");
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> CliResult<()> {
    let alphas = if args.alphas.is_fixed() {
        AlphaChoice::Fixed {
            qdft: args.alphas.alpha.unwrap_or(1.0),
            dft: args.alphas.channel(),
        }
    } else {
        AlphaChoice::Sweep
    };
    let cfg = PipelineConfig {
        grid: args.grid.grid(),
        measure: args.measure.config(),
        preserve_dc: args.preserve_dc,
        scalar_policy: args.scalar_policy.into(),
        alphas,
        hist_eq: !args.no_hist_eq,
        bins: args.bins,
    };
    cfg.validate()?;
    let img = load_image(&args.input)?;
    let report = run_comparison(&img, &cfg)?;
    if let Some(path) = &args.csv {
        write_atomically(path, |w| write_comparison_csv(&report.rows, w))?;
    }
    print!("{}", format_comparison_table(&report.rows));
    Ok(())
}

fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Enhance(a) => cmd_enhance(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose {
            log::LevelFilter::Info
        } else {
            log::LevelFilter::Warn
        })
        .format_timestamp(None)
        .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
