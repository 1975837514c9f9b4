//! Sufficient-statistic summaries and their construction from raw data.

use crate::error::{Error, Result};
use serde::Serialize;

fn check_finite(data: &[f64], what: &str) -> Result<()> {
    if data.is_empty() {
        return Err(Error::Input(format!("{what}: no observations")));
    }
    if let Some(x) = data.iter().find(|x| !x.is_finite()) {
        return Err(Error::Input(format!("{what}: non-finite observation {x}")));
    }
    Ok(())
}

fn mean(data: &[f64]) -> f64 {
    data.iter().sum::<f64>() / data.len() as f64
}

// sample standard deviation with divisor n − 1, two-pass
fn sd(data: &[f64], m: f64) -> f64 {
    let ss: f64 = data.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (data.len() - 1) as f64).sqrt()
}

/// One normal sample: size, mean and (for n ≥ 2) standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalSummary {
    pub n: usize,
    pub mean: f64,
    pub sd: Option<f64>,
}

impl NormalSummary {
    pub fn new(n: usize, mean: f64, sd: Option<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("sample size must be at least 1"));
        }
        if !mean.is_finite() {
            return Err(Error::domain("sample mean must be finite"));
        }
        if let Some(s) = sd {
            if !(s >= 0.0 && s.is_finite()) {
                return Err(Error::domain(format!(
                    "standard deviation must be >= 0, got {s}"
                )));
            }
            if n < 2 {
                return Err(Error::domain("a standard deviation needs n >= 2"));
            }
        }
        Ok(Self { n, mean, sd })
    }
}

pub fn summarize_normal(data: &[f64]) -> Result<NormalSummary> {
    check_finite(data, "normal sample")?;
    let m = mean(data);
    let s = (data.len() >= 2).then(|| sd(data, m));
    NormalSummary::new(data.len(), m, s)
}

/// Two independent normal samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoSampleSummary {
    pub n1: usize,
    pub n2: usize,
    pub mean1: f64,
    pub mean2: f64,
    pub sd1: f64,
    pub sd2: f64,
}

impl TwoSampleSummary {
    pub fn new(n1: usize, n2: usize, mean1: f64, mean2: f64, sd1: f64, sd2: f64) -> Result<Self> {
        if n1 < 2 || n2 < 2 {
            return Err(Error::domain("both samples need at least 2 observations"));
        }
        if !(mean1.is_finite() && mean2.is_finite()) {
            return Err(Error::domain("sample means must be finite"));
        }
        if !(sd1 >= 0.0 && sd2 >= 0.0 && sd1.is_finite() && sd2.is_finite()) {
            return Err(Error::domain("standard deviations must be finite and >= 0"));
        }
        Ok(Self {
            n1,
            n2,
            mean1,
            mean2,
            sd1,
            sd2,
        })
    }

    /// Ȳ = mean2 − mean1.
    pub fn mean_difference(&self) -> f64 {
        self.mean2 - self.mean1
    }

    /// f(S1, S2) = (S1²/n1 + S2²/n2)^{1/2}.
    pub fn std_error(&self) -> f64 {
        (self.sd1 * self.sd1 / self.n1 as f64 + self.sd2 * self.sd2 / self.n2 as f64).sqrt()
    }

    /// The samples with their labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
            mean1: self.mean2,
            mean2: self.mean1,
            sd1: self.sd2,
            sd2: self.sd1,
        }
    }
}

pub fn summarize_two_sample(first: &[f64], second: &[f64]) -> Result<TwoSampleSummary> {
    check_finite(first, "first sample")?;
    check_finite(second, "second sample")?;
    if first.len() < 2 || second.len() < 2 {
        return Err(Error::Input(
            "both samples need at least 2 observations".into(),
        ));
    }
    let (m1, m2) = (mean(first), mean(second));
    TwoSampleSummary::new(
        first.len(),
        second.len(),
        m1,
        m2,
        sd(first, m1),
        sd(second, m2),
    )
}

/// Gamma sample through T1 = log of the mean and T2 = mean of the logs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaSummary {
    pub n: usize,
    pub t1: f64,
    pub t2: f64,
}

impl GammaSummary {
    pub fn new(n: usize, t1: f64, t2: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("gamma mean inference needs n >= 2"));
        }
        if !(t1.is_finite() && t2.is_finite()) {
            return Err(Error::domain("gamma statistics must be finite"));
        }
        if t1 < t2 {
            return Err(Error::domain(format!(
                "log of mean {t1} is below mean of logs {t2}"
            )));
        }
        Ok(Self { n, t1, t2 })
    }

    /// V2 = T1 − T2 ≥ 0.
    pub fn v2(&self) -> f64 {
        self.t1 - self.t2
    }
}

pub fn summarize_gamma(data: &[f64]) -> Result<GammaSummary> {
    check_finite(data, "gamma sample")?;
    if let Some(x) = data.iter().find(|x| **x <= 0.0) {
        return Err(Error::Input(format!(
            "gamma sample: observation {x} is not positive"
        )));
    }
    if data.len() < 2 {
        return Err(Error::Input(
            "gamma sample needs at least 2 observations".into(),
        ));
    }
    let n = data.len() as f64;
    let t1 = mean(data).ln();
    let t2 = data.iter().map(|x| x.ln()).sum::<f64>() / n;
    // Jensen guarantees t1 >= t2; rounding can break it for constant samples
    GammaSummary::new(data.len(), t1, t2.min(t1))
}

/// A normal vector through its dimension and squared norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VectorSummary {
    pub n: usize,
    pub norm_sq: f64,
}

impl VectorSummary {
    pub fn new(n: usize, norm_sq: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("dimension must be at least 1"));
        }
        if !(norm_sq >= 0.0 && norm_sq.is_finite()) {
            return Err(Error::domain(format!(
                "squared norm must be finite and >= 0, got {norm_sq}"
            )));
        }
        Ok(Self { n, norm_sq })
    }
}

pub fn summarize_vector(data: &[f64]) -> Result<VectorSummary> {
    check_finite(data, "vector")?;
    VectorSummary::new(data.len(), data.iter().map(|x| x * x).sum())
}

/// Bivariate normal sample through its size and sample correlation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrSummary {
    pub n: usize,
    pub r: f64,
}

impl CorrSummary {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain("correlation inference needs n >= 3"));
        }
        if !(r.abs() <= 1.0) {
            return Err(Error::domain(format!(
                "sample correlation {r} is outside [-1, 1]"
            )));
        }
        Ok(Self { n, r })
    }
}

pub fn summarize_pairs(x: &[f64], y: &[f64]) -> Result<CorrSummary> {
    check_finite(x, "first column")?;
    check_finite(y, "second column")?;
    if x.len() != y.len() {
        return Err(Error::Input("paired columns differ in length".into()));
    }
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::degenerate("a paired column is constant"));
    }
    CorrSummary::new(x.len(), (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// One observation from each of N(ψξ, 1) and N(ξ, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioData {
    pub x1: f64,
    pub x2: f64,
}

impl RatioData {
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if !(x1.is_finite() && x2.is_finite()) {
            return Err(Error::domain("ratio data must be finite"));
        }
        Ok(Self { x1, x2 })
    }
}
