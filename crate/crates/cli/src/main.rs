//! `dfc`: degradation frequency curve toolkit.
//!
//! Exit status: 0 on success, 1 on usage or I/O errors, 2 when the inputs
//! carry no degradation signal (identical degraded and clean images).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dfc_core::DfcError;

#[derive(Debug, Parser)]
#[command(
    name = "dfc",
    version,
    about = "Degradation frequency curves: spectral signatures of image degradation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the curve of a degraded/clean image pair.
    Dfc(DfcArgs),
    /// Apply a synthetic degradation to a clean image.
    Synth(SynthArgs),
    /// Build a degradation profile from many curves.
    Profile(ProfileArgs),
    /// Classify a curve against a profile library.
    Classify(ClassifyArgs),
    /// Calibrate or apply severity estimation.
    Severity(SeverityArgs),
    /// Split a curve into equal-mass band tokens.
    Tokenize(TokenizeArgs),
    /// Attenuate bands of a degraded image by curve-derived gains.
    Filter(FilterArgs),
    /// Render a curve or profile JSON file as an SVG chart.
    Plot(PlotArgs),
    /// Run the acceptance benchmark and emit a JSON report.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Channels {
    /// BT.601 luminance of colour inputs.
    Luma,
    /// Average of per-channel curves.
    PerChannel,
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Number of radial bands.
    #[arg(long, default_value_t = 25)]
    bands: usize,
    /// How colour inputs are analysed.
    #[arg(long, value_enum, default_value_t = Channels::Luma)]
    channels: Channels,
    /// Emit the uniform curve instead of failing when there is no residual.
    #[arg(long)]
    fallback_uniform: bool,
}

#[derive(Debug, Args)]
struct DfcArgs {
    degraded: PathBuf,
    clean: PathBuf,
    #[command(flatten)]
    pair: PairArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    clean: PathBuf,
    /// Degradation as inline JSON (e.g. '{"kind":"gaussian_noise","sigma":25}') or a JSON file path.
    #[arg(long)]
    spec: String,
    /// Overrides the seed of stochastic degradations.
    #[arg(long, env = "DFC_SEED")]
    seed: Option<u64>,
    #[arg(long, short)]
    output: PathBuf,
}

/// A curve given either as a JSON file or as a degraded/clean pair.
#[derive(Debug, Args)]
struct CurveInput {
    /// Curve JSON file.
    #[arg(long, conflicts_with_all = ["degraded", "clean"])]
    curve: Option<PathBuf>,
    /// Degraded image (with --clean).
    #[arg(long, requires = "clean")]
    degraded: Option<PathBuf>,
    /// Clean reference image (with --degraded).
    #[arg(long, requires = "degraded")]
    clean: Option<PathBuf>,
    #[command(flatten)]
    pair: PairArgs,
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Family label stored in the profile.
    #[arg(long)]
    label: String,
    /// Curve JSON files.
    #[arg(long = "curve")]
    curves: Vec<PathBuf>,
    /// Degraded images, paired in order with --clean.
    #[arg(long = "degraded")]
    degraded: Vec<PathBuf>,
    /// Clean images, paired in order with --degraded.
    #[arg(long = "clean")]
    clean: Vec<PathBuf>,
    #[command(flatten)]
    pair: PairArgs,
    /// Worker threads for image pairs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    input: CurveInput,
    /// Directory of profile JSON files.
    #[arg(long)]
    library: Option<PathBuf>,
    /// Individual profile JSON files.
    #[arg(long = "profile")]
    profiles: Vec<PathBuf>,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SeverityArgs {
    #[command(subcommand)]
    action: SeverityAction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Feature {
    /// Largest raw band ratio.
    RawPeak,
    /// Largest entry of the unit-sum curve.
    NormalizedPeak,
}

#[derive(Debug, Subcommand)]
enum SeverityAction {
    /// Fit a calibration from curves at known levels.
    Calibrate {
        #[arg(long)]
        label: String,
        /// LEVEL=CURVE.json, repeated; curves sharing a level are averaged.
        #[arg(long = "point", required = true)]
        points: Vec<String>,
        #[arg(long, value_enum, default_value_t = Feature::RawPeak)]
        feature: Feature,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Estimate the level of one curve.
    Estimate {
        #[arg(long)]
        calibration: PathBuf,
        #[command(flatten)]
        input: CurveInput,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Weights {
    Uniform,
    MassCapture,
}

#[derive(Debug, Args)]
struct TokenizeArgs {
    #[command(flatten)]
    input: CurveInput,
    /// Number of equal-mass regions.
    #[arg(long, default_value_t = 4)]
    tokens: usize,
    /// Candidates sampled per region.
    #[arg(long, default_value_t = 5)]
    samples: usize,
    /// Jitter standard deviation as a fraction of region width.
    #[arg(long, default_value_t = 0.1)]
    jitter: f64,
    #[arg(long, value_enum, default_value_t = Weights::Uniform)]
    weights: Weights,
    #[arg(long, env = "DFC_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FilterArgs {
    /// Image to restore.
    input: PathBuf,
    /// Curve JSON supplying the band ratios.
    #[arg(long, conflicts_with = "reference")]
    curve: Option<PathBuf>,
    /// Clean image: the curve is measured from (input, reference) and
    /// quality metrics are reported.
    #[arg(long)]
    reference: Option<PathBuf>,
    #[arg(long, default_value_t = 25)]
    bands: usize,
    /// Attenuation strength.
    #[arg(long, default_value_t = 1.0)]
    strength: f64,
    /// Let the zero-frequency gain follow the curve instead of keeping the mean.
    #[arg(long)]
    no_pin_dc: bool,
    /// Also write the gain curve (JSON, or CSV for a .csv path).
    #[arg(long)]
    gains_out: Option<PathBuf>,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Curve or profile JSON.
    input: PathBuf,
    /// Image side used to place profile bands on the frequency axis.
    #[arg(long, default_value_t = 128)]
    size: usize,
    #[arg(long)]
    title: Option<String>,
    #[arg(long, short)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, env = "DFC_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    let degenerate = err.chain().any(|e| {
        matches!(
            e.downcast_ref::<DfcError>(),
            Some(DfcError::NoDegradationSignal { .. })
        )
    });
    if degenerate {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
