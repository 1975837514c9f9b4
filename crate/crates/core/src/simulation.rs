//! Monte Carlo checks of validity, coverage and stochastic bounds.
//!
//! Replicate `r` draws from a ChaCha8 generator seeded with the master seed
//! and switched to stream `r`, so results do not depend on execution order
//! or on how replicates are split across parallel chunks.

use crate::error::{Error, Result};
use crate::models::{
    gamma_kappa_star, gamma_pivot_z, many_normal_means_fiducial_region, summarize_pairs,
    GammaSummary, ModelId, ModelInstance, NormalSummary, RatioData, TwoSampleSummary,
    VectorSummary,
};
use crate::regions::{Region, SearchConfig};
use crate::special::{
    chisq_quantile, std_normal_quantile, student_t_cdf, AccuracyPolicy, HalfTMixture,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, Gamma, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

/// A sampling model with its true parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum TrueModel {
    /// n draws from N(θ, σ²), σ known.
    NormalMean { n: usize, theta: f64, sigma: f64 },
    /// n draws from N(μ, σ²), σ unknown.
    NormalMeanT { n: usize, mu: f64, sigma: f64 },
    /// n bivariate normal pairs with correlation ρ.
    Correlation { n: usize, rho: f64 },
    /// X1 ~ N(ψξ, 1), X2 ~ N(ξ, 1).
    MeanRatio { psi: f64, xi: f64 },
    /// X ~ N_n(θ, I) with ‖θ‖ = ψ.
    Mnm { n: usize, psi: f64 },
    /// Samples of sizes n1, n2 with mean difference ψ = μ2 − μ1, σ2 = 1 and
    /// σ1 set so that ξ = (1 + n1σ1²/(n2σ2²))⁻¹.
    BehrensFisher {
        n1: usize,
        n2: usize,
        psi: f64,
        xi: f64,
    },
    /// n draws from a gamma distribution with the given shape and mean ψ.
    GammaMean { n: usize, shape: f64, mean: f64 },
}

fn positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must be positive and finite, got {x}"
        )))
    }
}

fn finite(x: f64, what: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} must be finite, got {x}")))
    }
}

fn at_least(n: usize, min: usize, what: &str) -> Result<()> {
    if n >= min {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must be at least {min}, got {n}"
        )))
    }
}

fn normal<R: Rng>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

// sqrt(χ²_df / df)
fn chi_ratio<R: Rng>(rng: &mut R, df: usize) -> f64 {
    let c: f64 = ChiSquared::new(df as f64).expect("df >= 1").sample(rng);
    (c / df as f64).sqrt()
}

/// ln G with G ~ Gamma(shape, 1). Shapes below one use
/// G(a) = G(a + 1)·U^{1/a} on the log scale, which cannot underflow.
pub fn sample_ln_gamma<R: Rng>(rng: &mut R, shape: f64) -> f64 {
    if shape >= 1.0 {
        let g: f64 = Gamma::new(shape, 1.0).expect("valid shape").sample(rng);
        return g.ln();
    }
    let g: f64 = Gamma::new(shape + 1.0, 1.0)
        .expect("valid shape")
        .sample(rng);
    let u: f64 = rng.random();
    // random() lies in [0, 1); 1 − u lies in (0, 1]
    g.ln() + (1.0 - u).ln() / shape
}

/// Draws n Gamma(shape, 1) variables and returns (ln Ū, ln Ū − mean ln U).
pub fn sample_gamma_logs<R: Rng>(rng: &mut R, n: usize, shape: f64) -> (f64, f64) {
    let logs: Vec<f64> = (0..n).map(|_| sample_ln_gamma(rng, shape)).collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_mean = top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln() - (n as f64).ln();
    let mean_log = logs.iter().sum::<f64>() / n as f64;
    (ln_mean, (ln_mean - mean_log).max(0.0))
}

impl TrueModel {
    pub fn id(&self) -> ModelId {
        match self {
            TrueModel::NormalMean { .. } => ModelId::NormalMean,
            TrueModel::NormalMeanT { .. } => ModelId::NormalMeanT,
            TrueModel::Correlation { .. } => ModelId::Correlation,
            TrueModel::MeanRatio { .. } => ModelId::MeanRatio,
            TrueModel::Mnm { .. } => ModelId::Mnm,
            TrueModel::BehrensFisher { .. } => ModelId::BehrensFisher,
            TrueModel::GammaMean { .. } => ModelId::GammaMean,
        }
    }

    /// The true value of the interest parameter.
    pub fn psi_true(&self) -> f64 {
        match *self {
            TrueModel::NormalMean { theta, .. } => theta,
            TrueModel::NormalMeanT { mu, .. } => mu,
            TrueModel::Correlation { rho, .. } => rho,
            TrueModel::MeanRatio { psi, .. } => psi,
            TrueModel::Mnm { psi, .. } => psi,
            TrueModel::BehrensFisher { psi, .. } => psi,
            TrueModel::GammaMean { mean, .. } => mean,
        }
    }

    /// Whether the plausibility at the true value is exactly uniform rather
    /// than only stochastically larger than uniform.
    pub fn exact_pivot(&self) -> bool {
        matches!(
            self,
            TrueModel::NormalMean { .. }
                | TrueModel::NormalMeanT { .. }
                | TrueModel::Correlation { .. }
                | TrueModel::MeanRatio { .. }
        )
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TrueModel::NormalMean { n, theta, sigma } => {
                at_least(n, 1, "n")?;
                finite(theta, "theta")?;
                positive(sigma, "sigma")
            }
            TrueModel::NormalMeanT { n, mu, sigma } => {
                at_least(n, 2, "n")?;
                finite(mu, "mu")?;
                positive(sigma, "sigma")
            }
            TrueModel::Correlation { n, rho } => {
                at_least(n, 3, "n")?;
                if rho.abs() < 1.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!("rho must be in (-1, 1), got {rho}")))
                }
            }
            TrueModel::MeanRatio { psi, xi } => {
                finite(psi, "psi")?;
                finite(xi, "xi")
            }
            TrueModel::Mnm { n, psi } => {
                at_least(n, 1, "n")?;
                finite(psi, "psi")?;
                if psi >= 0.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!("psi must be >= 0, got {psi}")))
                }
            }
            TrueModel::BehrensFisher { n1, n2, psi, xi } => {
                at_least(n1, 2, "n1")?;
                at_least(n2, 2, "n2")?;
                finite(psi, "psi")?;
                if xi > 0.0 && xi < 1.0 {
                    Ok(())
                } else {
                    Err(Error::domain(format!("xi must be in (0, 1), got {xi}")))
                }
            }
            TrueModel::GammaMean { n, shape, mean } => {
                at_least(n, 2, "n")?;
                positive(shape, "shape")?;
                positive(mean, "mean")
            }
        }
    }

    /// Draws one data set through the model's auxiliary-variable
    /// representation and reduces it to the model's statistics.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Result<ModelInstance> {
        Ok(match *self {
            TrueModel::NormalMean { n, theta, sigma } => {
                let mean = theta + sigma / (n as f64).sqrt() * normal(rng);
                ModelInstance::NormalMean {
                    summary: NormalSummary::new(n, mean, None)?,
                    sigma,
                }
            }
            TrueModel::NormalMeanT { n, mu, sigma } => {
                let mean = mu + sigma / (n as f64).sqrt() * normal(rng);
                let sd = sigma * chi_ratio(rng, n - 1);
                ModelInstance::NormalMeanT {
                    summary: NormalSummary::new(n, mean, Some(sd))?,
                }
            }
            TrueModel::Correlation { n, rho } => {
                let c = (1.0 - rho * rho).sqrt();
                let (mut x, mut y) = (Vec::with_capacity(n), Vec::with_capacity(n));
                for _ in 0..n {
                    let (z1, z2) = (normal(rng), normal(rng));
                    x.push(z1);
                    y.push(rho * z1 + c * z2);
                }
                ModelInstance::Correlation {
                    summary: summarize_pairs(&x, &y)?,
                }
            }
            TrueModel::MeanRatio { psi, xi } => ModelInstance::MeanRatio {
                data: RatioData::new(psi * xi + normal(rng), xi + normal(rng))?,
            },
            TrueModel::Mnm { n, psi } => {
                // by rotation invariance θ may point along the first axis
                let mut norm_sq = 0.0;
                for i in 0..n {
                    let x = if i == 0 { psi } else { 0.0 } + normal(rng);
                    norm_sq += x * x;
                }
                ModelInstance::Mnm {
                    summary: VectorSummary::new(n, norm_sq)?,
                }
            }
            TrueModel::BehrensFisher { n1, n2, psi, xi } => {
                let (sigma1, sigma2) = behrens_fisher_sigmas(n1, n2, xi);
                let mean1 = sigma1 / (n1 as f64).sqrt() * normal(rng);
                let mean2 = psi + sigma2 / (n2 as f64).sqrt() * normal(rng);
                let sd1 = sigma1 * chi_ratio(rng, n1 - 1);
                let sd2 = sigma2 * chi_ratio(rng, n2 - 1);
                ModelInstance::BehrensFisher {
                    summary: TwoSampleSummary::new(n1, n2, mean1, mean2, sd1, sd2)?,
                }
            }
            TrueModel::GammaMean { n, shape, mean } => {
                // X_i = (ψ/α) U'_i with U'_i ~ Gamma(α, 1)
                let (ln_mean, v2) = sample_gamma_logs(rng, n, shape);
                let t1 = mean.ln() - shape.ln() + ln_mean;
                ModelInstance::GammaMean {
                    summary: GammaSummary::new(n, t1, t1 - v2)?,
                }
            }
        })
    }
}

/// (σ1, σ2) with σ2 = 1 and ξ = (1 + n1σ1²/(n2σ2²))⁻¹.
pub fn behrens_fisher_sigmas(n1: usize, n2: usize, xi: f64) -> (f64, f64) {
    let var1 = n2 as f64 / n1 as f64 * (1.0 - xi) / xi;
    (var1.sqrt(), 1.0)
}

/// Settings shared by the validity and coverage studies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationConfig {
    pub model: TrueModel,
    pub reps: usize,
    pub alpha_grid: Vec<f64>,
    pub seed: u64,
    pub parallel_chunks: usize,
    #[serde(skip)]
    pub search: SearchConfig,
}

impl SimulationConfig {
    pub fn new(model: TrueModel, reps: usize, alpha_grid: Vec<f64>, seed: u64) -> Self {
        Self {
            model,
            reps,
            alpha_grid,
            seed,
            parallel_chunks: rayon::current_num_threads().max(1),
            search: SearchConfig::fast(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.reps < 100 {
            return Err(Error::domain(format!(
                "reps must be at least 100, got {}",
                self.reps
            )));
        }
        if self.alpha_grid.is_empty() {
            return Err(Error::domain("alpha grid is empty"));
        }
        if self.alpha_grid.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
            return Err(Error::domain("alpha values must lie in (0, 1)"));
        }
        if self.alpha_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("alpha grid must be strictly increasing"));
        }
        if self.parallel_chunks == 0 {
            return Err(Error::domain("parallel_chunks must be positive"));
        }
        self.search.validate()?;
        self.model.validate()
    }
}

/// Region construction used in a coverage study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Im,
    Fiducial,
}

/// Results at one α.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaRow {
    pub alpha: f64,
    /// Fraction of replicates with pl(ψ_true) ≤ α.
    pub exceedance: f64,
    pub exceedance_se: f64,
    /// Fraction of replicates whose 1 − α region contains ψ_true.
    pub coverage: f64,
    pub coverage_se: f64,
    /// Mean length over replicates with a bounded region.
    pub mean_length: Option<f64>,
    pub bounded_regions: usize,
    pub unbounded_regions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub study: &'static str,
    pub method: Method,
    pub truth: TrueModel,
    pub psi_true: f64,
    pub reps: usize,
    pub seed: u64,
    pub rows: Vec<AlphaRow>,
    /// Filled in by callers that time the run; never set here, so reports
    /// stay reproducible.
    pub wall_time_s: Option<f64>,
}

fn se(p: f64, reps: usize) -> f64 {
    (p * (1.0 - p) / reps as f64).sqrt()
}

fn replicate_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs `f` for replicates 0..reps in `chunks` contiguous blocks, in
/// parallel, and returns the outcomes in replicate order.
fn run_replicates<T, F>(reps: usize, chunks: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let chunks = chunks.clamp(1, reps.max(1));
    let parts: Vec<Result<Vec<T>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let (lo, hi) = (c * reps / chunks, (c + 1) * reps / chunks);
            (lo..hi).map(&f).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(reps);
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Exceedance rates P{pl_X(ψ_true) ≤ α} over the α grid.
pub fn simulate_validity(cfg: &SimulationConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let psi = cfg.model.psi_true();
    let pls = run_replicates(cfg.reps, cfg.parallel_chunks, |r| {
        let mut rng = replicate_rng(cfg.seed, r as u64);
        cfg.model.sample(&mut rng)?.plausibility(psi)
    })?;
    let rows = cfg
        .alpha_grid
        .iter()
        .map(|&alpha| {
            let hits = pls.iter().filter(|&&pl| pl <= alpha).count();
            let p = hits as f64 / cfg.reps as f64;
            AlphaRow {
                alpha,
                exceedance: p,
                exceedance_se: se(p, cfg.reps),
                coverage: 1.0 - p,
                coverage_se: se(p, cfg.reps),
                mean_length: None,
                bounded_regions: 0,
                unbounded_regions: 0,
            }
        })
        .collect();
    Ok(SimulationReport {
        study: "validity",
        method: Method::Im,
        truth: cfg.model,
        psi_true: psi,
        reps: cfg.reps,
        seed: cfg.seed,
        rows,
        wall_time_s: None,
    })
}

fn replicate_regions(
    cfg: &SimulationConfig,
    method: Method,
    data: &ModelInstance,
) -> Result<Vec<Region>> {
    match method {
        Method::Im => {
            let curve = data.curve()?;
            cfg.alpha_grid
                .iter()
                .map(|&a| crate::regions::extract_region(&curve, a, &cfg.search))
                .collect()
        }
        Method::Fiducial => match data {
            ModelInstance::Mnm { summary } => cfg
                .alpha_grid
                .iter()
                .map(|&a| many_normal_means_fiducial_region(summary, a))
                .collect(),
            _ => Err(Error::Unsupported(
                "the fiducial comparator exists only for the mnm model".into(),
            )),
        },
    }
}

/// Coverage of the 1 − α regions and their mean length over the α grid.
pub fn simulate_coverage(cfg: &SimulationConfig, method: Method) -> Result<SimulationReport> {
    cfg.validate()?;
    if method == Method::Fiducial && cfg.model.id() != ModelId::Mnm {
        return Err(Error::Unsupported(
            "the fiducial comparator exists only for the mnm model".into(),
        ));
    }
    let psi = cfg.model.psi_true();
    let regions = run_replicates(cfg.reps, cfg.parallel_chunks, |r| {
        let mut rng = replicate_rng(cfg.seed, r as u64);
        let data = cfg.model.sample(&mut rng)?;
        replicate_regions(cfg, method, &data)
    })?;
    let rows = cfg
        .alpha_grid
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let mut covered = 0usize;
            let (mut bounded, mut unbounded, mut total_len) = (0usize, 0usize, 0.0);
            for reg in &regions {
                let reg = &reg[k];
                covered += reg.contains(psi) as usize;
                if reg.is_bounded() {
                    bounded += 1;
                    total_len += reg.length();
                } else {
                    unbounded += 1;
                }
            }
            let c = covered as f64 / cfg.reps as f64;
            AlphaRow {
                alpha,
                exceedance: 1.0 - c,
                exceedance_se: se(c, cfg.reps),
                coverage: c,
                coverage_se: se(c, cfg.reps),
                mean_length: (bounded > 0).then(|| total_len / bounded as f64),
                bounded_regions: bounded,
                unbounded_regions: unbounded,
            }
        })
        .collect();
    Ok(SimulationReport {
        study: "coverage",
        method,
        truth: cfg.model,
        psi_true: psi,
        reps: cfg.reps,
        seed: cfg.seed,
        rows,
        wall_time_s: None,
    })
}

/// Auxiliary variable whose distribution is compared with a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundModel {
    /// Z1(α) of the gamma mean model against the scaled half-t mixture.
    GammaMean,
    /// As `GammaMean` with the negative-side scale forced to one.
    GammaMeanUnitScale,
    /// Z1(ξ) of the Behrens–Fisher model against t with min(n1, n2) − 1 df.
    BehrensFisher,
}

/// Grids for a bound-curve study. For the gamma models each entry of
/// `sizes` is (n, n); for Behrens–Fisher it is (n1, n2). `params` holds the
/// gamma shapes α or the Behrens–Fisher ξ values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundConfig {
    pub model: BoundModel,
    pub sizes: Vec<(usize, usize)>,
    pub params: Vec<f64>,
    pub z_grid: Vec<f64>,
    pub reps: usize,
    pub seed: u64,
    pub parallel_chunks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub n1: usize,
    pub n2: usize,
    pub param: f64,
    pub z: f64,
    pub empirical_cdf: f64,
    pub se: f64,
    pub bound_cdf: f64,
    /// The bound is fatter at z within `tolerance_se` standard errors:
    /// F_bound ≥ F_Z for z < 0 and F_bound ≤ F_Z for z > 0.
    pub dominates: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundTable {
    pub model: BoundModel,
    pub reps: usize,
    pub seed: u64,
    pub tolerance_se: f64,
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn all_dominate(&self) -> bool {
        self.rows.iter().all(|r| r.dominates)
    }
}

/// One draw of the gamma auxiliary Z1(α) for sample size n.
pub fn sample_gamma_z<R: Rng>(
    rng: &mut R,
    n: usize,
    shape: f64,
    policy: &AccuracyPolicy,
) -> Result<f64> {
    let (ln_mean, v2) = sample_gamma_logs(rng, n, shape);
    if v2 <= 0.0 {
        return Err(Error::Accuracy {
            what: format!("gamma draws with shape {shape} are numerically identical"),
            partial: 0.0,
        });
    }
    let a = n as f64 * gamma_kappa_star(v2, n)?;
    gamma_pivot_z(a, ln_mean - shape.ln(), policy)
}

/// One draw of the Behrens–Fisher auxiliary Z1(ξ).
pub fn sample_behrens_fisher_z<R: Rng>(rng: &mut R, n1: usize, n2: usize, xi: f64) -> f64 {
    let u1 = normal(rng);
    let u21 = chi_ratio(rng, n1 - 1);
    let u22 = chi_ratio(rng, n2 - 1);
    u1 / (xi * u21 * u21 + (1.0 - xi) * u22 * u22).sqrt()
}

const BOUND_TOLERANCE_SE: f64 = 4.0;

/// Empirical distribution functions of the auxiliary variable on a z grid
/// next to the bounding distribution, per (size, parameter) cell.
pub fn bound_curves(cfg: &BoundConfig) -> Result<BoundTable> {
    if cfg.sizes.is_empty() || cfg.params.is_empty() || cfg.z_grid.is_empty() {
        return Err(Error::domain("bound-curve grids must be nonempty"));
    }
    if cfg.reps < 100 {
        return Err(Error::domain(format!(
            "reps must be at least 100, got {}",
            cfg.reps
        )));
    }
    if cfg.z_grid.iter().any(|z| !z.is_finite()) {
        return Err(Error::domain("z grid values must be finite"));
    }
    let policy = AccuracyPolicy::default();
    let mut rows = Vec::new();
    let mut cell = 0u64;
    for &(n1, n2) in &cfg.sizes {
        for &param in &cfg.params {
            let bound: Box<dyn Fn(f64) -> Result<f64>> = match cfg.model {
                BoundModel::GammaMean | BoundModel::GammaMeanUnitScale => {
                    at_least(n1, 2, "n")?;
                    positive(param, "gamma shape")?;
                    let g = match cfg.model {
                        BoundModel::GammaMean => HalfTMixture::for_sample_size(n1)?,
                        _ => HalfTMixture::with_scale(n1, 1.0)?,
                    };
                    Box::new(move |z| g.cdf(z))
                }
                BoundModel::BehrensFisher => {
                    at_least(n1, 2, "n1")?;
                    at_least(n2, 2, "n2")?;
                    if !(param > 0.0 && param < 1.0) {
                        return Err(Error::domain(format!("xi must be in (0, 1), got {param}")));
                    }
                    let df = (n1.min(n2) - 1) as f64;
                    Box::new(move |z| student_t_cdf(z, df))
                }
            };
            let base = cell << 40;
            let mut draws = run_replicates(cfg.reps, cfg.parallel_chunks, |r| {
                let mut rng = replicate_rng(cfg.seed, base | r as u64);
                match cfg.model {
                    BoundModel::BehrensFisher => {
                        Ok(sample_behrens_fisher_z(&mut rng, n1, n2, param))
                    }
                    _ => sample_gamma_z(&mut rng, n1, param, &policy),
                }
            })?;
            draws.sort_by(f64::total_cmp);
            for &z in &cfg.z_grid {
                let below = draws.partition_point(|&d| d <= z);
                let f = below as f64 / cfg.reps as f64;
                let s = se(f, cfg.reps);
                let fb = bound(z)?;
                let slack = BOUND_TOLERANCE_SE * s;
                let dominates = if z < 0.0 {
                    fb >= f - slack
                } else if z > 0.0 {
                    fb <= f + slack
                } else {
                    true
                };
                rows.push(BoundRow {
                    n1,
                    n2,
                    param,
                    z,
                    empirical_cdf: f,
                    se: s,
                    bound_cdf: fb,
                    dominates,
                });
            }
            cell += 1;
        }
    }
    Ok(BoundTable {
        model: cfg.model,
        reps: cfg.reps,
        seed: cfg.seed,
        tolerance_se: BOUND_TOLERANCE_SE,
        rows,
    })
}

/// Kolmogorov distance of a sample from Unif(0, 1) next to the
/// Dvoretzky–Kiefer–Wolfowitz band at the given level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DkwCheck {
    pub reps: usize,
    pub ks_distance: f64,
    pub band: f64,
    pub within_band: bool,
}

/// Checks that Q_S(U) = |2U − 1| is uniform, U ~ Unif(0, 1).
pub fn dkw_check_default_prs(reps: usize, seed: u64, level: f64) -> Result<DkwCheck> {
    if reps == 0 || !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(
            "dkw check needs reps > 0 and a level in (0, 1)",
        ));
    }
    let mut rng = replicate_rng(seed, 0);
    let mut q: Vec<f64> = (0..reps)
        .map(|_| crate::im::default_prs_miss(rng.random::<f64>()))
        .collect::<Result<_>>()?;
    q.sort_by(f64::total_cmp);
    let m = reps as f64;
    let ks = q
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / m).max((i + 1) as f64 / m - x))
        .fold(0.0, f64::max);
    let band = ((2.0 / level).ln() / (2.0 * m)).sqrt();
    Ok(DkwCheck {
        reps,
        ks_distance: ks,
        band,
        within_band: ks <= band,
    })
}

/// Geometry behind the efficiency comparison for (V1, V2) iid N(0, 1):
/// a disc with the requested coverage, its projection onto V1, and the
/// band |V1| ≤ h built directly for V1 with the same coverage.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EfficiencyDemo {
    pub coverage: f64,
    pub circle_radius: f64,
    pub projection: (f64, f64),
    pub band_half_width: f64,
    pub circle: Vec<(f64, f64)>,
}

pub fn efficiency_demo(coverage: f64, points: usize) -> Result<EfficiencyDemo> {
    if !(coverage > 0.0 && coverage < 1.0) {
        return Err(Error::domain(format!(
            "coverage must be in (0, 1), got {coverage}"
        )));
    }
    if points < 3 {
        return Err(Error::domain("circle needs at least 3 points"));
    }
    let radius = chisq_quantile(coverage, 2.0)?.sqrt();
    let half = std_normal_quantile(0.5 + 0.5 * coverage)?;
    let circle = (0..=points)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect();
    Ok(EfficiencyDemo {
        coverage,
        circle_radius: radius,
        projection: (-radius, radius),
        band_half_width: half,
        circle,
    })
}
