//! Mean of a gamma distribution with unknown shape.

use super::summary::GammaSummary;
use crate::error::{Error, Result};
use crate::im::{Monotonicity, ScalarPivotIm};
use crate::regions::Support;
use crate::roots::brent_with_values;
use crate::special::gamma::digamma_ratio_gap;
use crate::special::{chisq_median, gamma_p_q, probit_from_tails, AccuracyPolicy, HalfTMixture};

fn check_v2(v2: f64, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!(
            "gamma shape estimation needs n >= 2, got {n}"
        )));
    }
    if !(v2 > 0.0 && v2.is_finite()) {
        return Err(Error::domain(format!(
            "v2 must be positive and finite, got {v2} (constant sample?)"
        )));
    }
    Ok(())
}

/// Moment estimator of the shape from V2 = T1 − T2: the root α of
/// ψ(nα) − ψ(α) − ln n = v2 (ψ the digamma function).
///
/// The left side decreases from +∞ to 0 as α grows, so the root is unique.
/// It is bracketed on the log scale around the large-shape approximation
/// (n − 1)/(2n v2) and refined to a relative tolerance of 1e-12.
pub fn gamma_kappa(v2: f64, n: usize) -> Result<f64> {
    check_v2(v2, n)?;
    let nf = n as f64;
    let h = |log_a: f64| digamma_ratio_gap(nf, log_a.exp()) - v2;
    let guess = ((nf - 1.0) / (2.0 * nf * v2)).ln();
    let mut lo = guess - 1e4f64.ln();
    let mut hi = guess + 1e4f64.ln();
    let (mut h_lo, mut h_hi) = (h(lo), h(hi));
    let mut expansions = 0;
    while h_lo <= 0.0 || h_hi >= 0.0 {
        if expansions == 60 {
            return Err(Error::Search {
                what: format!("shape equation for v2 = {v2} not bracketed"),
                lo: lo.exp(),
                hi: hi.exp(),
            });
        }
        if h_lo <= 0.0 {
            lo -= 4.0;
            h_lo = h(lo);
        }
        if h_hi >= 0.0 {
            hi += 4.0;
            h_hi = h(hi);
        }
        expansions += 1;
    }
    let log_a = brent_with_values(|t| Ok(h(t)), lo, hi, h_lo, h_hi, 1e-12)?;
    Ok(log_a.exp())
}

/// Adjusted shape κ* = m(ν̂)/(2n v2) with ν̂ the projection of 2nκv2 onto
/// [n − 1, 2(n − 1)] and m the chi-square median.
pub fn gamma_kappa_star(v2: f64, n: usize) -> Result<f64> {
    let (kstar, _) = gamma_kappa_star_parts(v2, n)?;
    Ok(kstar)
}

/// κ* together with ν̂.
pub fn gamma_kappa_star_parts(v2: f64, n: usize) -> Result<(f64, f64)> {
    let kappa = gamma_kappa(v2, n)?;
    let nf = n as f64;
    let nu = (2.0 * nf * kappa * v2).clamp(nf - 1.0, 2.0 * (nf - 1.0));
    Ok((chisq_median(nu)? / (2.0 * nf * v2), nu))
}

/// Z = Φ⁻¹(F_a(a·e^{v1})) for shape a = nκ*, computed from whichever tail
/// of the gamma distribution is smaller.
pub fn gamma_pivot_z(shape: f64, v1: f64, policy: &AccuracyPolicy) -> Result<f64> {
    let x = shape * v1.exp();
    let (p, q) = gamma_p_q(shape, x, policy)?;
    Ok(probit_from_tails(p, q))
}

/// Gamma mean ψ with unknown shape:
/// F_ψ = G(Φ⁻¹(F_{nκ*}(nκ* e^{t1 − ln ψ}))) with G the half-t mixture.
pub fn gamma_mean_im(s: &GammaSummary) -> Result<ScalarPivotIm> {
    gamma_mean_im_with(s, HalfTMixture::for_sample_size(s.n)?)
}

/// As [`gamma_mean_im`] with an explicit bounding distribution.
pub fn gamma_mean_im_with(s: &GammaSummary, bound: HalfTMixture) -> Result<ScalarPivotIm> {
    let v2 = s.v2();
    if !(v2 > 0.0) {
        return Err(Error::degenerate(
            "all observations are equal, so the shape is not estimable",
        ));
    }
    let kstar = gamma_kappa_star(v2, s.n)?;
    let shape = s.n as f64 * kstar;
    let t1 = s.t1;
    let policy = AccuracyPolicy::default();
    let scale = t1.exp() / shape.sqrt();
    Ok(ScalarPivotIm::new(
        move |psi| {
            let z = gamma_pivot_z(shape, t1 - psi.ln(), &policy)?;
            if z.is_infinite() {
                return Ok(if z > 0.0 { 1.0 } else { 0.0 });
            }
            bound.cdf(z)
        },
        Monotonicity::DecreasingInPsi,
        Support::Positive,
        t1.exp(),
        scale,
    ))
}
