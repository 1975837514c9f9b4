//! Normal mean with known or unknown variance, and the two-sample
//! Behrens–Fisher difference of means.

use super::summary::{NormalSummary, TwoSampleSummary};
use crate::error::{Error, Result};
use crate::im::{Monotonicity, ScalarPivotIm};
use crate::regions::Support;
use crate::special::{std_normal_cdf, student_t_cdf};

/// Normal mean θ with known σ: F_θ(x̄) = Φ((x̄ − θ)√n / σ).
pub fn normal_mean_known_var_im(s: &NormalSummary, sigma: f64) -> Result<ScalarPivotIm> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::domain(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let se = sigma / (s.n as f64).sqrt();
    let xbar = s.mean;
    Ok(ScalarPivotIm::new(
        move |theta| Ok(std_normal_cdf((xbar - theta) / se)),
        Monotonicity::DecreasingInPsi,
        Support::Real,
        xbar,
        se,
    ))
}

/// Normal mean μ with unknown σ: F_μ(x̄, S) = F_t(√n (x̄ − μ)/S; n − 1).
pub fn normal_mean_t_im(s: &NormalSummary) -> Result<ScalarPivotIm> {
    if s.n < 2 {
        return Err(Error::domain("the t pivot needs n >= 2"));
    }
    let sd =
        s.sd.ok_or_else(|| Error::Input("the t pivot needs a standard deviation".into()))?;
    if sd == 0.0 {
        return Err(Error::degenerate("sample standard deviation is zero"));
    }
    let se = sd / (s.n as f64).sqrt();
    let df = (s.n - 1) as f64;
    let xbar = s.mean;
    Ok(ScalarPivotIm::new(
        move |mu| student_t_cdf((xbar - mu) / se, df),
        Monotonicity::DecreasingInPsi,
        Support::Real,
        xbar,
        se,
    ))
}

/// Difference ψ = μ2 − μ1 of two normal means with unrelated unknown
/// variances: F_ψ = F_t((Ȳ − ψ)/f(S1, S2); min(n1, n2) − 1).
pub fn behrens_fisher_im(s: &TwoSampleSummary) -> Result<ScalarPivotIm> {
    let f = s.std_error();
    if f == 0.0 {
        return Err(Error::degenerate(
            "both sample standard deviations are zero",
        ));
    }
    let ybar = s.mean_difference();
    let df = (s.n1.min(s.n2) - 1) as f64;
    Ok(ScalarPivotIm::new(
        move |psi| student_t_cdf((ybar - psi) / f, df),
        Monotonicity::DecreasingInPsi,
        Support::Real,
        ybar,
        f,
    ))
}
