//! Distribution functions, quantiles and special functions used by the models.
//!
//! Everything here is a pure function of its arguments. Accuracy targets are
//! collected in [`AccuracyPolicy`]; the plain entry points use its defaults.

mod beta;
mod corr;
pub(crate) mod gamma;
mod halft;
mod noncentral;
mod normal;
pub mod quad;

pub use beta::{inc_beta, student_t_cdf, student_t_quantile};
pub use corr::{sample_corr_cdf, sample_corr_cdf_with, sample_corr_pdf};
pub use gamma::{
    chisq_cdf, chisq_median, chisq_quantile, digamma, gamma_cdf, gamma_p, gamma_p_q, ln_gamma,
};
pub use halft::{halft_mixture_cdf, halft_mixture_quantile, HalfTMixture};
pub use noncentral::{noncentral_chisq_cdf, noncentral_chisq_cdf_with};
pub use normal::{probit_from_tails, std_normal_cdf, std_normal_quantile, std_normal_sf};

use crate::error::{Error, Result};

/// Accuracy targets for series, quadrature and quantile inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyPolicy {
    /// Absolute error target for CDF evaluations.
    pub abs_tol: f64,
    /// Hard cap on series terms (and quadrature panels).
    pub max_terms: usize,
    /// Residual target `|cdf(quantile(p)) - p|` for quantile inversion.
    pub quantile_tol: f64,
}

impl Default for AccuracyPolicy {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_terms: 10_000,
            quantile_tol: 1e-10,
        }
    }
}

impl AccuracyPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.quantile_tol > 0.0) {
            return Err(Error::domain("accuracy tolerances must be positive"));
        }
        if self.max_terms < 100 {
            return Err(Error::domain("max_terms must be at least 100"));
        }
        Ok(())
    }
}

pub(crate) fn check_probability(p: f64, what: &str) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what}: probability {p} is not in (0, 1)"
        )))
    }
}

pub(crate) fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} must be positive and finite, got {x}"
        )))
    }
}
