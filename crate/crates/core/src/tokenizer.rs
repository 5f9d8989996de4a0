//! Band tokenization of a degradation frequency curve.
//!
//! The discrete curve is read as a piecewise-linear density over radial
//! frequency, through the points `(center_b, R_b)` and held flat outside the
//! first and last centers. The frequency axis `[0, R_max]` (with `R_max` the
//! last band center) is cut into `N` regions of equal integrated mass, each
//! region is turned into an initial Gaussian mask estimate, and that estimate
//! is refined by scoring `K` jittered candidates and averaging them under
//! softmax weights.

use serde::{Deserialize, Serialize};

use crate::curve::DegradationFrequencyCurve;
use crate::error::{invalid, DfcError, Result};
use crate::masks::BandMaskSpec;
use crate::rng::CounterRng;

pub const DEFAULT_TOKEN_COUNT: usize = 4;
pub const DEFAULT_SAMPLE_COUNT: usize = 5;
pub const DEFAULT_JITTER_FRAC: f64 = 0.1;

/// Floor on sampled bandwidths, as a fraction of the initial bandwidth.
const SIGMA_FLOOR_FRAC: f64 = 0.1;

/// Piecewise-linear reading of a curve over `[0, R_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveDensity {
    xs: Vec<f64>,
    ys: Vec<f64>,
    total: f64,
}

impl CurveDensity {
    pub fn from_curve(dfc: &DegradationFrequencyCurve) -> Result<Self> {
        dfc.validate()?;
        let mut xs = dfc.centers.clone();
        let mut ys = dfc.normalized.clone();
        if xs[0] > 0.0 {
            xs.insert(0, 0.0);
            ys.insert(0, ys[0]);
        }
        let total = xs
            .windows(2)
            .zip(ys.windows(2))
            .map(|(x, y)| 0.5 * (y[0] + y[1]) * (x[1] - x[0]))
            .sum::<f64>();
        if total.is_nan() || total <= 0.0 {
            return Err(invalid("curve has no mass to partition"));
        }
        Ok(Self { xs, ys, total })
    }

    pub fn max_radius(&self) -> f64 {
        *self.xs.last().expect("non-empty")
    }

    /// Integral of the un-renormalized curve over `[0, R_max]`.
    pub fn total(&self) -> f64 {
        self.total
    }

    /// Curve value at `x`, flat beyond the end knots.
    pub fn value(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.ys[0];
        }
        let last = self.xs.len() - 1;
        if x >= self.xs[last] {
            return self.ys[last];
        }
        let i = self.xs.partition_point(|&k| k <= x) - 1;
        let t = (x - self.xs[i]) / (self.xs[i + 1] - self.xs[i]);
        self.ys[i] + t * (self.ys[i + 1] - self.ys[i])
    }

    /// Linear pieces `(u, v, f(u), f(v))` clipped to `[lo, hi]`.
    fn pieces(&self, lo: f64, hi: f64) -> Vec<(f64, f64, f64, f64)> {
        let mut cuts = vec![lo];
        cuts.extend(self.xs.iter().copied().filter(|&x| x > lo && x < hi));
        cuts.push(hi);
        cuts.windows(2)
            .filter(|c| c[1] > c[0])
            .map(|c| (c[0], c[1], self.value(c[0]), self.value(c[1])))
            .collect()
    }

    /// Integral of the curve over `[lo, hi] ∩ [0, R_max]`.
    pub fn integral(&self, lo: f64, hi: f64) -> f64 {
        let lo = lo.max(0.0);
        let hi = hi.min(self.max_radius());
        if hi <= lo {
            return 0.0;
        }
        self.pieces(lo, hi)
            .into_iter()
            .map(|(u, v, fu, fv)| 0.5 * (fu + fv) * (v - u))
            .sum()
    }

    /// Fraction of the total mass inside `[lo, hi]`.
    pub fn mass(&self, lo: f64, hi: f64) -> f64 {
        self.integral(lo, hi) / self.total
    }

    /// Smallest `x` whose cumulative mass fraction reaches `q`, by exact
    /// inversion of the quadratic cumulative integral on each piece.
    pub fn quantile(&self, q: f64) -> f64 {
        let mut remaining = q.clamp(0.0, 1.0) * self.total;
        for i in 0..self.xs.len() - 1 {
            let (a, b) = (self.xs[i], self.xs[i + 1]);
            let (p, r) = (self.ys[i], self.ys[i + 1]);
            let len = b - a;
            let piece = 0.5 * (p + r) * len;
            if remaining <= piece {
                if remaining <= 0.0 {
                    return a;
                }
                // F(s) = p s + (r - p) s^2 / (2 len) = remaining, s in [0, len].
                let slope = (r - p) / len;
                let disc = (p * p + 2.0 * slope * remaining).max(0.0);
                let s = 2.0 * remaining / (p + disc.sqrt());
                return (a + s).min(b);
            }
            remaining -= piece;
        }
        self.max_radius()
    }

    /// Least-squares slope of the curve over `[lo, hi]` in the continuous sense:
    /// `∫(x - c) f(x) dx / ∫(x - c)^2 dx` with `c` the interval midpoint.
    pub fn slope(&self, lo: f64, hi: f64) -> f64 {
        let width = hi - lo;
        if width <= 0.0 {
            return 0.0;
        }
        let c = 0.5 * (lo + hi);
        let num: f64 = self
            .pieces(lo, hi)
            .into_iter()
            .map(|(u, v, fu, fv)| {
                let s = (fv - fu) / (v - u);
                let a = fu + s * (c - u);
                let (y1, y2) = (u - c, v - c);
                a * (y2 * y2 - y1 * y1) / 2.0 + s * (y2.powi(3) - y1.powi(3)) / 3.0
            })
            .sum();
        num / (width.powi(3) / 12.0)
    }

    /// Largest curve value on `[lo, hi]`.
    pub fn peak(&self, lo: f64, hi: f64) -> f64 {
        self.pieces(lo, hi)
            .into_iter()
            .map(|(_, _, fu, fv)| fu.max(fv))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `N` contiguous half-open radial intervals covering `[0, R_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    boundaries: Vec<f64>,
}

impl Partition {
    /// `N + 1` boundaries, first 0 and last `R_max`.
    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn region(&self, i: usize) -> (f64, f64) {
        (self.boundaries[i], self.boundaries[i + 1])
    }

    pub fn regions(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.boundaries.windows(2).map(|w| (w[0], w[1]))
    }
}

pub fn equal_area_partition(dfc: &DegradationFrequencyCurve, regions: usize) -> Result<Partition> {
    if regions < 1 {
        return Err(invalid("need at least one region"));
    }
    let density = CurveDensity::from_curve(dfc)?;
    Ok(partition_density(&density, regions))
}

fn partition_density(density: &CurveDensity, regions: usize) -> Partition {
    let mut boundaries = Vec::with_capacity(regions + 1);
    boundaries.push(0.0);
    for k in 1..regions {
        boundaries.push(density.quantile(k as f64 / regions as f64));
    }
    boundaries.push(density.max_radius());
    Partition { boundaries }
}

/// Region midpoints and half-widths.
pub fn initial_params(partition: &Partition) -> Result<Vec<BandMaskSpec>> {
    partition
        .regions()
        .map(|(lo, hi)| BandMaskSpec::new(0.5 * (lo + hi), 0.5 * (hi - lo)))
        .collect()
}

/// Scores candidate masks; scores become weights through a softmax.
pub trait WeightFn {
    fn scores(&self, candidates: &[BandMaskSpec]) -> Vec<f64>;
}

impl<F> WeightFn for F
where
    F: Fn(&[BandMaskSpec]) -> Vec<f64>,
{
    fn scores(&self, candidates: &[BandMaskSpec]) -> Vec<f64> {
        self(candidates)
    }
}

/// Equal scores for every candidate.
#[derive(Debug, Clone, Copy, Default)]
pub struct UniformWeights;

impl WeightFn for UniformWeights {
    fn scores(&self, candidates: &[BandMaskSpec]) -> Vec<f64> {
        vec![0.0; candidates.len()]
    }
}

/// Scores a candidate by the curve mass inside `[mu - sigma, mu + sigma]`.
#[derive(Debug, Clone)]
pub struct MassCapture {
    density: CurveDensity,
}

impl MassCapture {
    pub fn new(density: CurveDensity) -> Self {
        Self { density }
    }
}

impl WeightFn for MassCapture {
    fn scores(&self, candidates: &[BandMaskSpec]) -> Vec<f64> {
        candidates
            .iter()
            .map(|c| self.density.mass(c.mu - c.sigma, c.mu + c.sigma))
            .collect()
    }
}

/// Built-in weight functions, selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightScheme {
    #[default]
    Uniform,
    MassCapture,
}

/// `K` candidate masks and their softmax weights.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledParams {
    pub candidates: Vec<BandMaskSpec>,
    pub weights: Vec<f64>,
}

impl SampledParams {
    /// Weighted sum of candidate centers and widths.
    pub fn aggregate(&self) -> BandMaskSpec {
        let (mut mu, mut sigma) = (0.0, 0.0);
        for (c, w) in self.candidates.iter().zip(&self.weights) {
            mu += w * c.mu;
            sigma += w * c.sigma;
        }
        BandMaskSpec { mu, sigma }
    }
}

fn softmax(scores: &[f64]) -> Result<Vec<f64>> {
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(DfcError::NonFinite("weight scores"));
    }
    let max = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = scores.iter().map(|s| (s - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    Ok(exps.into_iter().map(|e| e / total).collect())
}

/// Draws `K` candidates around `initial` and weights them.
///
/// Both coordinates get Gaussian jitter with standard deviation
/// `jitter_frac * 2 * sigma_hat` (a fraction of the region width). Centers
/// are clamped at 0 and widths floored at `0.1 * sigma_hat`.
pub fn sample_params(
    initial: BandMaskSpec,
    samples: usize,
    jitter_frac: f64,
    weight_fn: &dyn WeightFn,
    seed: u64,
) -> Result<SampledParams> {
    if samples < 1 {
        return Err(invalid("need at least one sample"));
    }
    if !(jitter_frac.is_finite() && jitter_frac >= 0.0) {
        return Err(invalid(format!(
            "jitter fraction must be >= 0, got {jitter_frac}"
        )));
    }
    let spread = jitter_frac * 2.0 * initial.sigma;
    let floor = SIGMA_FLOOR_FRAC * initial.sigma;
    let mut rng = CounterRng::new(seed);
    let candidates: Vec<BandMaskSpec> = (0..samples)
        .map(|_| BandMaskSpec {
            mu: (initial.mu + spread * rng.next_gaussian()).max(0.0),
            sigma: (initial.sigma + spread * rng.next_gaussian()).max(floor),
        })
        .collect();
    let scores = weight_fn.scores(&candidates);
    if scores.len() != candidates.len() {
        return Err(invalid(format!(
            "weight function returned {} scores for {} candidates",
            scores.len(),
            candidates.len()
        )));
    }
    let weights = softmax(&scores)?;
    Ok(SampledParams {
        candidates,
        weights,
    })
}

pub fn sample_and_aggregate(
    initial: BandMaskSpec,
    samples: usize,
    jitter_frac: f64,
    weight_fn: &dyn WeightFn,
    seed: u64,
) -> Result<BandMaskSpec> {
    Ok(sample_params(initial, samples, jitter_frac, weight_fn, seed)?.aggregate())
}

/// One equal-mass segment of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandToken {
    #[serde(rename = "region")]
    pub region_index: usize,
    #[serde(rename = "mu")]
    pub mu_star: f64,
    #[serde(rename = "sigma")]
    pub sigma_star: f64,
    pub mass: f64,
    pub peak: f64,
    pub slope: f64,
}

/// Settings for [`tokenize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TokenizerConfig {
    pub tokens: usize,
    pub samples: usize,
    pub jitter_frac: f64,
    pub weights: WeightScheme,
    pub seed: u64,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        Self {
            tokens: DEFAULT_TOKEN_COUNT,
            samples: DEFAULT_SAMPLE_COUNT,
            jitter_frac: DEFAULT_JITTER_FRAC,
            weights: WeightScheme::Uniform,
            seed: 0,
        }
    }
}

pub fn tokenize(
    dfc: &DegradationFrequencyCurve,
    config: &TokenizerConfig,
) -> Result<Vec<BandToken>> {
    let density = CurveDensity::from_curve(dfc)?;
    match config.weights {
        WeightScheme::Uniform => tokenize_with(dfc, config, &UniformWeights),
        WeightScheme::MassCapture => tokenize_with(dfc, config, &MassCapture::new(density)),
    }
}

/// [`tokenize`] with a caller-supplied weight function; `config.weights` is ignored.
pub fn tokenize_with(
    dfc: &DegradationFrequencyCurve,
    config: &TokenizerConfig,
    weight_fn: &dyn WeightFn,
) -> Result<Vec<BandToken>> {
    if config.tokens < 1 {
        return Err(invalid("need at least one token"));
    }
    let density = CurveDensity::from_curve(dfc)?;
    let partition = partition_density(&density, config.tokens);
    let initial = initial_params(&partition)?;
    partition
        .regions()
        .zip(initial)
        .enumerate()
        .map(|(i, ((lo, hi), init))| {
            let region_seed = CounterRng::stream(config.seed, i as u64).next_u64();
            let refined = sample_and_aggregate(
                init,
                config.samples,
                config.jitter_frac,
                weight_fn,
                region_seed,
            )?;
            Ok(BandToken {
                region_index: i,
                mu_star: refined.mu,
                sigma_star: refined.sigma,
                mass: density.mass(lo, hi),
                peak: density.peak(lo, hi),
                slope: density.slope(lo, hi),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{normalize, DegeneratePolicy};
    use crate::masks::{linspace, max_radius};

    fn curve(values: Vec<f64>) -> DegradationFrequencyCurve {
        let centers = linspace(0.0, max_radius(128, 128), values.len());
        normalize(values, centers, DegeneratePolicy::Error).unwrap()
    }

    fn random_curve(seed: u64, bands: usize) -> DegradationFrequencyCurve {
        let mut rng = CounterRng::new(seed);
        curve((0..bands).map(|_| rng.next_f64().powi(3) + 1e-9).collect())
    }

    /// Brute-force CDF: tabulate the curve on a fine grid by its own linear
    /// interpolation, integrate with the trapezoid rule, scan for crossings.
    fn tabulated_boundaries(dfc: &DegradationFrequencyCurve, n: usize, grid: usize) -> Vec<f64> {
        let r = *dfc.centers.last().unwrap();
        let f = |x: f64| {
            let c = &dfc.centers;
            let j = c.iter().rposition(|&k| k <= x).unwrap().min(c.len() - 2);
            let t = (x - c[j]) / (c[j + 1] - c[j]);
            dfc.normalized[j] * (1.0 - t) + dfc.normalized[j + 1] * t
        };
        let dx = r / grid as f64;
        let mut cdf = vec![0.0; grid + 1];
        for i in 0..grid {
            cdf[i + 1] = cdf[i] + 0.5 * (f(i as f64 * dx) + f((i + 1) as f64 * dx)) * dx;
        }
        let total = cdf[grid];
        (1..n)
            .map(|k| {
                let target = total * k as f64 / n as f64;
                let i = cdf.iter().position(|&c| c >= target).unwrap();
                let frac = (target - cdf[i - 1]) / (cdf[i] - cdf[i - 1]);
                (i as f64 - 1.0 + frac) * dx
            })
            .collect()
    }

    #[test]
    fn uniform_curve_quartiles() {
        let dfc = curve(vec![1.0; 25]);
        let p = equal_area_partition(&dfc, 4).unwrap();
        let r = max_radius(128, 128);
        for (k, &b) in p.boundaries().iter().enumerate() {
            assert!((b - r * k as f64 / 4.0).abs() < 1e-9, "boundary {k}: {b}");
        }
    }

    #[test]
    fn single_region_spans_axis() {
        let dfc = random_curve(3, 25);
        let p = equal_area_partition(&dfc, 1).unwrap();
        assert_eq!(p.boundaries(), &[0.0, dfc.max_radius()]);
        assert!(equal_area_partition(&dfc, 0).is_err());
    }

    #[test]
    fn concentrated_curve_matches_tabulated_cdf() {
        let mut values = vec![0.03 / 24.0; 25];
        values[0] = 0.97;
        let dfc = curve(values);
        let p = equal_area_partition(&dfc, 4).unwrap();
        let r = dfc.max_radius();
        for &b in &p.boundaries()[1..4] {
            assert!(b < dfc.centers[1]);
        }
        let oracle = tabulated_boundaries(&dfc, 4, 100_000);
        for (b, o) in p.boundaries()[1..4].iter().zip(&oracle) {
            assert!((b - o).abs() < 1e-4 * r, "{b} vs {o}");
        }
    }

    #[test]
    fn random_curves_match_tabulated_cdf() {
        for seed in 0..5 {
            let dfc = random_curve(seed, 25);
            let p = equal_area_partition(&dfc, 4).unwrap();
            let oracle = tabulated_boundaries(&dfc, 4, 100_000);
            for (b, o) in p.boundaries()[1..4].iter().zip(&oracle) {
                assert!((b - o).abs() < 1e-4 * dfc.max_radius());
            }
        }
    }

    #[test]
    fn regions_hold_equal_mass() {
        for seed in 0..200 {
            let dfc = random_curve(seed, 25);
            let density = CurveDensity::from_curve(&dfc).unwrap();
            let p = equal_area_partition(&dfc, 4).unwrap();
            for (lo, hi) in p.regions() {
                assert!((density.mass(lo, hi) - 0.25).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn reversed_curve_mirrors_boundaries() {
        for seed in 0..50 {
            let dfc = random_curve(seed, 25);
            let mut rev_values = dfc.normalized.clone();
            rev_values.reverse();
            let rev = curve(rev_values);
            let r = dfc.max_radius();
            let a = equal_area_partition(&dfc, 4).unwrap();
            let b = equal_area_partition(&rev, 4).unwrap();
            for k in 0..=4 {
                assert!((a.boundaries()[k] - (r - b.boundaries()[4 - k])).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn flat_extension_before_first_center() {
        let dfc = normalize(vec![1.0, 1.0], vec![10.0, 20.0], DegeneratePolicy::Error).unwrap();
        let d = CurveDensity::from_curve(&dfc).unwrap();
        assert_eq!(d.value(3.0), 0.5);
        let p = equal_area_partition(&dfc, 2).unwrap();
        assert!((p.boundaries()[1] - 10.0).abs() < 1e-12);
    }

    #[test]
    fn initial_params_are_midpoint_and_half_width() {
        let p = Partition {
            boundaries: vec![0.0, 10.0],
        };
        assert_eq!(
            initial_params(&p).unwrap(),
            vec![BandMaskSpec {
                mu: 5.0,
                sigma: 5.0
            }]
        );

        let centers = linspace(0.0, max_radius(256, 256), 25);
        let dfc = normalize(vec![1.0; 25], centers, DegeneratePolicy::Error).unwrap();
        let init = initial_params(&equal_area_partition(&dfc, 4).unwrap()).unwrap();
        for (spec, expected) in init.iter().zip([22.63, 67.88, 113.14, 158.39]) {
            assert!((spec.mu - expected).abs() < 0.01);
        }
    }

    #[test]
    fn single_sample_is_returned_verbatim() {
        let init = BandMaskSpec {
            mu: 40.0,
            sigma: 8.0,
        };
        let params = sample_params(init, 1, 0.3, &UniformWeights, 5).unwrap();
        assert_eq!(params.weights, vec![1.0]);
        assert_eq!(params.aggregate(), params.candidates[0]);
    }

    #[test]
    fn zero_jitter_returns_initial() {
        let init = BandMaskSpec {
            mu: 40.0,
            sigma: 8.0,
        };
        let dfc = random_curve(1, 25);
        let capture = MassCapture::new(CurveDensity::from_curve(&dfc).unwrap());
        for weights in [&UniformWeights as &dyn WeightFn, &capture] {
            let out = sample_and_aggregate(init, 5, 0.0, weights, 9).unwrap();
            assert!((out.mu - 40.0).abs() < 1e-12);
            assert!((out.sigma - 8.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weights_sum_to_one_and_follow_scores() {
        let init = BandMaskSpec {
            mu: 40.0,
            sigma: 8.0,
        };
        let prefer_low = |c: &[BandMaskSpec]| c.iter().map(|s| -s.mu).collect::<Vec<_>>();
        let params = sample_params(init, 5, 0.2, &prefer_low, 2).unwrap();
        assert!((params.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let lowest = params
            .candidates
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.mu.total_cmp(&b.1.mu))
            .unwrap()
            .0;
        let heaviest = params
            .weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(lowest, heaviest);
    }

    #[test]
    fn sampling_errors() {
        let init = BandMaskSpec {
            mu: 4.0,
            sigma: 2.0,
        };
        assert!(sample_params(init, 0, 0.1, &UniformWeights, 0).is_err());
        assert!(sample_params(init, 3, -0.1, &UniformWeights, 0).is_err());
        let bad = |c: &[BandMaskSpec]| vec![f64::NAN; c.len()];
        assert!(matches!(
            sample_params(init, 3, 0.1, &bad, 0),
            Err(DfcError::NonFinite(_))
        ));
    }

    #[test]
    fn uniform_curve_tokens() {
        let dfc = curve(vec![1.0; 25]);
        let tokens = tokenize(&dfc, &TokenizerConfig::default()).unwrap();
        assert_eq!(tokens.len(), 4);
        for t in &tokens {
            assert!((t.mass - 0.25).abs() < 1e-12);
            assert!(t.slope.abs() < 1e-9);
            assert!((t.peak - 1.0 / 25.0).abs() < 1e-15);
            assert!(t.sigma_star > 0.0);
        }
    }

    #[test]
    fn slope_of_linear_curve_is_exact() {
        let values: Vec<f64> = (0..25).map(|b| 1.0 + b as f64).collect();
        let dfc = curve(values);
        let d = CurveDensity::from_curve(&dfc).unwrap();
        let step = dfc.centers[1];
        let expected = (dfc.normalized[1] - dfc.normalized[0]) / step;
        for (lo, hi) in [(0.0, 30.0), (17.3, 88.1), (5.0, dfc.max_radius())] {
            assert!((d.slope(lo, hi) - expected).abs() < 1e-12 * expected.abs().max(1.0));
        }
    }

    #[test]
    fn tokenize_is_deterministic() {
        let dfc = random_curve(8, 25);
        let config = TokenizerConfig {
            weights: WeightScheme::MassCapture,
            seed: 17,
            ..Default::default()
        };
        assert_eq!(
            tokenize(&dfc, &config).unwrap(),
            tokenize(&dfc, &config).unwrap()
        );
    }

    #[test]
    fn token_json_field_names() {
        let token = BandToken {
            region_index: 2,
            mu_star: 1.5,
            sigma_star: 0.5,
            mass: 0.25,
            peak: 0.1,
            slope: -0.01,
        };
        assert_eq!(
            serde_json::to_string(&token).unwrap(),
            r#"{"region":2,"mu":1.5,"sigma":0.5,"mass":0.25,"peak":0.1,"slope":-0.01}"#
        );
    }
}
