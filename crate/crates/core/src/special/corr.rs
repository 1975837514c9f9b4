//! Exact distribution of the sample correlation coefficient of `n`
//! bivariate normal pairs.

use super::gamma::ln_gamma;
use super::quad::integrate;
use super::AccuracyPolicy;
use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

fn check_args(r: f64, n: usize, rho: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!(
            "sample correlation needs n >= 3, got {n}"
        )));
    }
    if !(r.abs() <= 1.0) {
        return Err(Error::domain(format!("correlation {r} is outside [-1, 1]")));
    }
    if !(rho.abs() < 1.0) {
        return Err(Error::domain(format!(
            "population correlation {rho} is outside (-1, 1)"
        )));
    }
    Ok(())
}

// ₂F₁(½, ½; c; z) for 0 <= z < 1 and c not a nonpositive integer, by its
// power series. Once c + k > 0 the term ratios move monotonically toward z,
// so max(ratio, z) bounds all later ratios and gives a geometric remainder.
fn hyp2f1_half_half(c: f64, z: f64, max_terms: usize) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..max_terms {
        let k = k as f64;
        let ratio = (0.5 + k) * (0.5 + k) / ((c + k) * (k + 1.0)) * z;
        term *= ratio;
        sum += term;
        if c + k > 0.0 {
            let q = ratio.abs().max(z);
            if q < 1.0 && (term * q / (1.0 - q)).abs() <= 1e-17 * sum.abs() {
                return Ok(sum);
            }
        }
    }
    Err(Error::Accuracy {
        what: "hypergeometric series for the correlation density".into(),
        partial: sum,
    })
}

// ₂F₁(½, ½; n − ½; z) given z and w = 1 − z. Close to z = 1 the series
// converges slowly for small n, so the connection formula to 1 − z is used
// there; with s = n − 3/2 (never an integer) it reads
// Γ(c)Γ(s)/Γ(n − 1)² ₂F₁(½, ½; 1 − s; w) + (−1)^{n−1} (w/z)^s ₂F₁(½, ½; c; w).
fn hyp2f1_density(n: f64, z: f64, w: f64, max_terms: usize) -> Result<f64> {
    let c = n - 0.5;
    if w >= 0.5 || n > 20.0 {
        return hyp2f1_half_half(c, z, max_terms);
    }
    let s = n - 1.5;
    let coef = (ln_gamma(c) + ln_gamma(s) - 2.0 * ln_gamma(n - 1.0)).exp();
    let first = coef * hyp2f1_half_half(1.0 - s, w, max_terms)?;
    let sign = if (n as i64 - 1) % 2 == 0 { 1.0 } else { -1.0 };
    let second = sign * (s * (w / z).ln()).exp() * hyp2f1_half_half(c, w, max_terms)?;
    Ok(first + second)
}

struct CorrDensity {
    n: f64,
    rho: f64,
    log_const: f64,
    max_terms: usize,
}

impl CorrDensity {
    fn new(n: usize, rho: f64, max_terms: usize) -> Self {
        let nf = n as f64;
        let log_const =
            (nf - 2.0).ln() + ln_gamma(nf - 1.0) - 0.5 * (2.0 * PI).ln() - ln_gamma(nf - 0.5)
                + 0.5 * (nf - 1.0) * (1.0 - rho * rho).ln();
        Self {
            n: nf,
            rho,
            log_const,
            max_terms,
        }
    }

    // density of r with (1 − r²)^{(n−4)/2} split as cos^{n−4}φ, `cos_pow`
    // carrying the exponent that the caller needs
    fn eval(&self, r: f64, log_cos: f64, cos_pow: f64) -> Result<f64> {
        self.eval_with(r, 1.0 - self.rho * r, log_cos, cos_pow)
    }

    fn eval_with(&self, r: f64, one_minus: f64, log_cos: f64, cos_pow: f64) -> Result<f64> {
        let hyp = hyp2f1_density(
            self.n,
            0.5 * (1.0 + self.rho * r),
            0.5 * one_minus,
            self.max_terms,
        )?;
        let cos_part = if cos_pow == 0.0 {
            0.0
        } else {
            cos_pow * log_cos
        };
        Ok((self.log_const + cos_part - (self.n - 1.5) * one_minus.ln()).exp() * hyp)
    }

    // integrand in φ with r = sin φ; 1 − ρr is formed from the distance to
    // the nearer pole so it keeps full precision when ρr is close to 1
    fn in_angle(&self, phi: f64) -> Result<f64> {
        let r = phi.sin();
        let one_minus = if phi >= 0.0 {
            let h = (0.5 * (FRAC_PI_2 - phi)).sin();
            (1.0 - self.rho) + self.rho * 2.0 * h * h
        } else {
            let h = (0.5 * (FRAC_PI_2 + phi)).sin();
            (1.0 + self.rho) - self.rho * 2.0 * h * h
        };
        let c = phi.cos();
        if c <= 0.0 {
            return Ok(if self.n > 3.0 {
                0.0
            } else {
                self.eval_with(r, one_minus, 0.0, 0.0)?
            });
        }
        self.eval_with(r, one_minus, c.ln(), self.n - 3.0)
    }
}

/// Density of the sample correlation at `r ∈ (−1, 1)`.
pub fn sample_corr_pdf(r: f64, n: usize, rho: f64) -> Result<f64> {
    check_args(r, n, rho)?;
    let d = CorrDensity::new(n, rho, AccuracyPolicy::default().max_terms);
    if r.abs() == 1.0 {
        return match n {
            3 => Ok(f64::INFINITY),
            4 => d.eval(r, 0.0, 0.0),
            _ => Ok(0.0),
        };
    }
    d.eval(r, (1.0 - r * r).ln(), 0.5 * (n as f64 - 4.0))
}

/// Distribution function of the sample correlation.
pub fn sample_corr_cdf(r: f64, n: usize, rho: f64) -> Result<f64> {
    sample_corr_cdf_with(r, n, rho, &AccuracyPolicy::default())
}

/// Distribution function of the sample correlation under an explicit policy.
///
/// The density is integrated in the angle φ = arcsin r, which removes the
/// endpoint singularity for small `n`. Both the lower and upper pieces are
/// integrated and the result is their normalized ratio, so the value is
/// accurate in either tail.
pub fn sample_corr_cdf_with(r: f64, n: usize, rho: f64, policy: &AccuracyPolicy) -> Result<f64> {
    check_args(r, n, rho)?;
    if r == 1.0 {
        return Ok(1.0);
    }
    if r == -1.0 {
        return Ok(0.0);
    }
    let d = CorrDensity::new(n, rho, policy.max_terms);
    let phi = r.asin();
    let panels = (policy.max_terms / 10).max(50);
    let tol = 0.5 * policy.abs_tol;
    // the density peaks near r = ρ, sharply so as |ρ| → 1; panels split there
    let peak = rho.asin();
    let piece = |a: f64, b: f64| -> Result<(f64, f64)> {
        if a < peak && peak < b {
            let (v1, e1) = integrate(|p| d.in_angle(p), a, peak, 0.5 * tol, panels)?;
            let (v2, e2) = integrate(|p| d.in_angle(p), peak, b, 0.5 * tol, panels)?;
            Ok((v1 + v2, e1 + e2))
        } else {
            integrate(|p| d.in_angle(p), a, b, tol, panels)
        }
    };
    let lower = piece(-FRAC_PI_2, phi);
    let upper = piece(phi, FRAC_PI_2);
    match (lower, upper) {
        (Ok((l, _)), Ok((u, _))) => Ok((l / (l + u)).clamp(0.0, 1.0)),
        (l, u) => {
            let part = |x: Result<(f64, f64)>| match x {
                Ok((v, _)) => v,
                Err(Error::Accuracy { partial, .. }) => partial,
                Err(_) => f64::NAN,
            };
            let (l, u) = (part(l), part(u));
            Err(Error::Accuracy {
                what: "sample correlation distribution quadrature".into(),
                partial: (l / (l + u)).clamp(0.0, 1.0),
            })
        }
    }
}
