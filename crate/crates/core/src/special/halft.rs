//! Two-piece Student t: a positive half-t on the right and a rescaled
//! half-t on the left, each carrying probability one half.

use super::{check_probability, chisq_median, student_t_cdf, student_t_quantile};
use crate::error::{Error, Result};

/// Mixture ½·t⁺ + ½·(c·t)⁻ with `df` degrees of freedom and left-side scale `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfTMixture {
    pub df: f64,
    pub neg_scale: f64,
}

impl HalfTMixture {
    /// The mixture for a sample of size `n`: df = n − 1 and
    /// c_n = {2(n−1) / m(2n−2)}^{1/2}, with m the chi-square median.
    pub fn for_sample_size(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!(
                "half-t mixture needs n >= 2, got {n}"
            )));
        }
        let k = (n - 1) as f64;
        let c = (2.0 * k / chisq_median(2.0 * k)?).sqrt();
        Ok(Self {
            df: k,
            neg_scale: c,
        })
    }

    /// Same degrees of freedom with an arbitrary left-side scale.
    pub fn with_scale(n: usize, neg_scale: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!(
                "half-t mixture needs n >= 2, got {n}"
            )));
        }
        if !(neg_scale > 0.0 && neg_scale.is_finite()) {
            return Err(Error::domain("half-t scale must be positive"));
        }
        Ok(Self {
            df: (n - 1) as f64,
            neg_scale,
        })
    }

    pub fn cdf(&self, z: f64) -> Result<f64> {
        if z < 0.0 {
            student_t_cdf(z / self.neg_scale, self.df)
        } else {
            student_t_cdf(z, self.df)
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        check_probability(p, "halft_mixture_quantile")?;
        let t = student_t_quantile(p, self.df)?;
        Ok(if p < 0.5 { self.neg_scale * t } else { t })
    }
}

/// Distribution function of the half-t mixture for sample size `n`.
pub fn halft_mixture_cdf(z: f64, n: usize) -> Result<f64> {
    HalfTMixture::for_sample_size(n)?.cdf(z)
}

/// Quantile of the half-t mixture for sample size `n`.
pub fn halft_mixture_quantile(p: f64, n: usize) -> Result<f64> {
    HalfTMixture::for_sample_size(n)?.quantile(p)
}
