use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;
use serde_json::json;

use dfc_core::band_filter::{apply_gains_with, wiener_gains, FilterOptions};
use dfc_core::bench::{run_bench, BenchConfig};
use dfc_core::curve::{ChannelMode, DegeneratePolicy};
use dfc_core::fingerprint::{
    build_profile, classify, estimate_severity, load_profile_library, DegradationProfile,
    SeverityCalibration, SeverityFeature,
};
use dfc_core::io::{read_image, write_png, LoadedImage};
use dfc_core::masks::{linspace, max_radius};
use dfc_core::metrics::{psnr, ssim};
use dfc_core::plot::{curve_svg, profile_svg};
use dfc_core::synth::DegradationSpec;
use dfc_core::tokenizer::{tokenize, TokenizerConfig, WeightScheme};
use dfc_core::{DegradationFrequencyCurve, DfcAnalyzer};

use crate::{
    BenchArgs, Channels, ClassifyArgs, Command, CurveInput, DfcArgs, Feature, FilterArgs, Format,
    PairArgs, PlotArgs, ProfileArgs, SeverityAction, SynthArgs, TokenizeArgs, Weights,
};

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Dfc(args) => cmd_dfc(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Profile(args) => cmd_profile(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Severity(args) => cmd_severity(args.action),
        Command::Tokenize(args) => cmd_tokenize(args),
        Command::Filter(args) => cmd_filter(args),
        Command::Plot(args) => cmd_plot(args),
        Command::Bench(args) => cmd_bench(args),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => {
            let body = format!("{}\n", text.trim_end());
            std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn load_image(path: &Path) -> Result<LoadedImage> {
    read_image(path).with_context(|| format!("reading {}", path.display()))
}

fn pair_curve(degraded: &Path, clean: &Path, pair: &PairArgs) -> Result<DegradationFrequencyCurve> {
    let (y, x) = (load_image(degraded)?, load_image(clean)?);
    let (h, w) = y.dims();
    let policy = if pair.fallback_uniform {
        DegeneratePolicy::UniformFallback
    } else {
        DegeneratePolicy::Error
    };
    let analyzer = DfcAnalyzer::new(h, w, pair.bands)?.with_policy(policy);
    let both_gray = matches!((&y, &x), (LoadedImage::Gray(_), LoadedImage::Gray(_)));
    let curve = match pair.channels {
        Channels::PerChannel if !both_gray => {
            analyzer.compute_rgb(&y.rgb()?, &x.rgb()?, ChannelMode::PerChannel)?
        }
        _ => analyzer.compute(&y.luma()?, &x.luma()?)?,
    };
    Ok(curve)
}

fn read_curve(path: &Path) -> Result<DegradationFrequencyCurve> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    DegradationFrequencyCurve::from_json(&text)
        .with_context(|| format!("parsing curve {}", path.display()))
}

impl CurveInput {
    fn load(&self) -> Result<DegradationFrequencyCurve> {
        match (&self.curve, &self.degraded, &self.clean) {
            (Some(path), _, _) => read_curve(path),
            (None, Some(y), Some(x)) => pair_curve(y, x, &self.pair),
            _ => bail!("give either --curve or both --degraded and --clean"),
        }
    }
}

fn cmd_dfc(args: DfcArgs) -> Result<()> {
    let curve = pair_curve(&args.degraded, &args.clean, &args.pair)?;
    let text = match args.format {
        Format::Json => curve.to_json()?,
        Format::Csv => curve.to_csv(),
    };
    emit(&text, args.output.as_deref())
}

fn parse_spec(spec: &str) -> Result<DegradationSpec> {
    let text = if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        std::fs::read_to_string(spec).with_context(|| format!("reading spec {spec}"))?
    };
    DegradationSpec::from_json(&text).context("invalid degradation spec")
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let mut spec = parse_spec(&args.spec)?;
    if let Some(seed) = args.seed {
        spec = spec.with_seed(seed);
    }
    let clean = load_image(&args.clean)?.luma()?;
    let degraded = spec.apply(&clean)?;
    write_png(&args.output, &degraded).with_context(|| format!("writing {}", args.output.display()))
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?)
}

fn cmd_profile(args: ProfileArgs) -> Result<()> {
    if args.degraded.len() != args.clean.len() {
        bail!(
            "{} --degraded images but {} --clean images",
            args.degraded.len(),
            args.clean.len()
        );
    }
    let mut curves = args
        .curves
        .iter()
        .map(|p| read_curve(p))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(&PathBuf, &PathBuf)> = args.degraded.iter().zip(&args.clean).collect();
    let from_images = pool(args.jobs)?.install(|| {
        pairs
            .par_iter()
            .map(|(y, x)| pair_curve(y, x, &args.pair))
            .collect::<Result<Vec<_>>>()
    })?;
    curves.extend(from_images);
    let profile = build_profile(&curves, &args.label)?;
    emit(&profile.to_json()?, args.output.as_deref())
}

fn cmd_classify(args: ClassifyArgs) -> Result<()> {
    let mut profiles = match &args.library {
        Some(dir) => load_profile_library(dir)
            .with_context(|| format!("loading library {}", dir.display()))?,
        None => Vec::new(),
    };
    for path in &args.profiles {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        profiles.push(DegradationProfile::from_json(&text)?);
    }
    if profiles.is_empty() {
        bail!("no profiles: give --library or --profile");
    }
    let result = classify(&args.input.load()?, &profiles)?;
    if args.json {
        let distances: Vec<_> = result
            .distances
            .iter()
            .map(|(label, d)| json!({ "label": label, "distance": d }))
            .collect();
        println!(
            "{}",
            json!({ "label": result.label, "distances": distances })
        );
    } else {
        println!("{}", result.label);
        for (label, d) in &result.distances {
            println!("  {label:<20} {d:.6}");
        }
    }
    Ok(())
}

fn core_feature(feature: Feature) -> SeverityFeature {
    match feature {
        Feature::RawPeak => SeverityFeature::RawPeak,
        Feature::NormalizedPeak => SeverityFeature::NormalizedPeak,
    }
}

fn cmd_severity(action: SeverityAction) -> Result<()> {
    match action {
        SeverityAction::Calibrate {
            label,
            points,
            feature,
            output,
        } => {
            // Keyed by the level's bit pattern; order restored numerically below.
            let mut grouped: BTreeMap<u64, Vec<DegradationFrequencyCurve>> = BTreeMap::new();
            for point in &points {
                let (level, path) = point
                    .split_once('=')
                    .ok_or_else(|| anyhow!("--point expects LEVEL=CURVE.json, got '{point}'"))?;
                let level: f64 = level
                    .trim()
                    .parse()
                    .with_context(|| format!("bad level in '{point}'"))?;
                grouped
                    .entry(level.to_bits())
                    .or_default()
                    .push(read_curve(Path::new(path))?);
            }
            let mut samples: Vec<(f64, Vec<DegradationFrequencyCurve>)> = grouped
                .into_iter()
                .map(|(k, v)| (f64::from_bits(k), v))
                .collect();
            samples.sort_by(|a, b| a.0.total_cmp(&b.0));
            let calibration =
                SeverityCalibration::from_samples(&label, core_feature(feature), &samples)?;
            emit(&calibration.to_json()?, output.as_deref())
        }
        SeverityAction::Estimate { calibration, input } => {
            let text = std::fs::read_to_string(&calibration)
                .with_context(|| format!("reading {}", calibration.display()))?;
            let calibration = SeverityCalibration::from_json(&text)?;
            let estimate = estimate_severity(&input.load()?, &calibration)?;
            println!("{}", serde_json::to_string(&estimate)?);
            Ok(())
        }
    }
}

fn cmd_tokenize(args: TokenizeArgs) -> Result<()> {
    let config = TokenizerConfig {
        tokens: args.tokens,
        samples: args.samples,
        jitter_frac: args.jitter,
        weights: match args.weights {
            Weights::Uniform => WeightScheme::Uniform,
            Weights::MassCapture => WeightScheme::MassCapture,
        },
        seed: args.seed,
    };
    let tokens = tokenize(&args.input.load()?, &config)?;
    emit(&serde_json::to_string(&tokens)?, args.output.as_deref())
}

fn cmd_filter(args: FilterArgs) -> Result<()> {
    let degraded = load_image(&args.input)?.luma()?;
    let clean = match &args.reference {
        Some(path) => Some(load_image(path)?.luma()?),
        None => None,
    };
    let curve = match (&args.curve, &clean) {
        (Some(path), _) => read_curve(path)?,
        (None, Some(clean)) => {
            let (h, w) = degraded.dims();
            DfcAnalyzer::new(h, w, args.bands)?.compute(&degraded, clean)?
        }
        (None, None) => bail!("give --curve or --reference"),
    };
    let gains = wiener_gains(&curve, args.strength)?;
    let options = FilterOptions {
        pin_dc: !args.no_pin_dc,
        clamp: true,
    };
    let restored = apply_gains_with(&degraded, &gains, options)?;
    write_png(&args.output, &restored)
        .with_context(|| format!("writing {}", args.output.display()))?;
    if let Some(path) = &args.gains_out {
        let text = if path.extension().is_some_and(|e| e == "csv") {
            gains.to_csv()
        } else {
            gains.to_json()?
        };
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(clean) = &clean {
        let report = json!({
            "psnr_degraded": psnr(&degraded, clean)?,
            "psnr_restored": psnr(&restored, clean)?,
            "ssim_degraded": ssim(&degraded, clean)?,
            "ssim_restored": ssim(&restored, clean)?,
        });
        println!("{report}");
    }
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("reading {}", args.input.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).context("input is not JSON")?;
    let svg = if value.get("mean").is_some() {
        let profile = DegradationProfile::from_json(&text)?;
        let centers = linspace(0.0, max_radius(args.size, args.size), profile.band_count);
        profile_svg(&profile, &centers)?
    } else if value.get("normalized").is_some() {
        let curve = DegradationFrequencyCurve::from_json(&text)?;
        let title = args
            .title
            .clone()
            .unwrap_or_else(|| "degradation frequency curve".into());
        curve_svg(&curve, &title)?
    } else {
        bail!("{} is neither a curve nor a profile", args.input.display());
    };
    std::fs::write(&args.output, svg).with_context(|| format!("writing {}", args.output.display()))
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let report = run_bench(&BenchConfig {
        jobs: args.jobs,
        seed: args.seed,
    })?;
    emit(&report.to_json()?, args.output.as_deref())?;
    if !report.all_passed {
        let failed: Vec<_> = report
            .criteria
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.id.to_string())
            .collect();
        bail!("acceptance criteria failed: {}", failed.join(", "));
    }
    Ok(())
}
