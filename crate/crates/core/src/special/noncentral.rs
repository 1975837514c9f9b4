//! Noncentral chi-square distribution function.

use super::gamma::{gamma_p_q, ln_gamma};
use super::{check_positive, AccuracyPolicy};
use crate::error::{Error, Result};

/// Distribution function of the noncentral chi-square with `df` degrees of
/// freedom and noncentrality `lambda`, using the default accuracy policy.
pub fn noncentral_chisq_cdf(x: f64, df: f64, lambda: f64) -> Result<f64> {
    noncentral_chisq_cdf_with(x, df, lambda, &AccuracyPolicy::default())
}

/// Poisson mixture of central chi-square distribution functions,
///
/// F(x) = Σ_j e^{−μ} μ^j / j! · P(df/2 + j, x/2),  μ = λ/2,
///
/// summed outward from the Poisson mode. Neighbouring incomplete gamma values
/// come from the recurrence P(a+1, y) = P(a, y) − y^a e^{−y} / Γ(a+1), and each
/// direction stops once a geometric bound on its remaining mass is below
/// half of `abs_tol`.
pub fn noncentral_chisq_cdf_with(
    x: f64,
    df: f64,
    lambda: f64,
    policy: &AccuracyPolicy,
) -> Result<f64> {
    check_positive(df, "noncentral chi-square degrees of freedom")?;
    if lambda.is_nan() || lambda < 0.0 || lambda.is_infinite() {
        return Err(Error::domain(format!(
            "noncentrality must be finite and >= 0, got {lambda}"
        )));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!(
            "noncentral chi-square argument must be >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let y = 0.5 * x;
    let a_base = 0.5 * df;
    if lambda == 0.0 {
        return gamma_p_q(a_base, y, policy).map(|(p, _)| p);
    }

    let mu = 0.5 * lambda;
    let j0 = mu.floor();
    let a0 = a_base + j0;
    let w0 = (-mu + j0 * mu.ln() - ln_gamma(j0 + 1.0)).exp();
    let p0 = gamma_p_q(a0, y, policy)?.0;
    let ln_y = y.ln();
    // ln of y^a e^{-y} / Γ(a+1) at a = a0
    let ln_t0 = a0 * ln_y - y - ln_gamma(a0 + 1.0);
    let half_tol = 0.5 * policy.abs_tol;

    let mut sum = w0 * p0;
    let mut terms = 1usize;

    // upward: j = j0+1, j0+2, ...
    let (mut w, mut p, mut ln_t, mut a) = (w0, p0, ln_t0, a0);
    let mut j = j0;
    let mut up_done = false;
    while terms < policy.max_terms {
        p = (p - ln_t.exp()).max(0.0);
        j += 1.0;
        w *= mu / j;
        ln_t += ln_y - (a + 1.0).ln();
        a += 1.0;
        sum += w * p;
        terms += 1;
        let r = mu / (j + 1.0);
        if w * p * r / (1.0 - r) < half_tol {
            up_done = true;
            break;
        }
    }

    // downward: j = j0-1, ..., 0
    let (mut w, mut p, mut ln_t, mut a) = (w0, p0, ln_t0, a0);
    let mut j = j0;
    let mut down_done = j0 == 0.0;
    while !down_done && terms < policy.max_terms {
        // t at a-1 from t at a: multiply by a / y
        ln_t += a.ln() - ln_y;
        a -= 1.0;
        p = (p + ln_t.exp()).min(1.0);
        w *= j / mu;
        j -= 1.0;
        sum += w * p;
        terms += 1;
        if j == 0.0 {
            down_done = true;
            break;
        }
        let r = j / mu;
        if r < 1.0 && w * r / (1.0 - r) < half_tol {
            down_done = true;
        }
    }

    let sum = sum.clamp(0.0, 1.0);
    if up_done && down_done {
        Ok(sum)
    } else {
        Err(Error::Accuracy {
            what: format!(
                "noncentral chi-square series exceeded {} terms",
                policy.max_terms
            ),
            partial: sum,
        })
    }
}
