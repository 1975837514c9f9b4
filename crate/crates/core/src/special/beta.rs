//! Regularized incomplete beta and the Student t distribution.

use super::gamma::ln_gamma;
use super::{check_positive, check_probability, AccuracyPolicy};
use crate::error::{Error, Result};
use crate::roots::invert_increasing;

const TINY: f64 = 1e-300;

/// Regularized incomplete beta I_x(a, b).
pub fn inc_beta(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!(
            "incomplete beta argument {x} not in [0, 1]"
        )));
    }
    inc_beta_xy(a, b, x, 1.0 - x, &AccuracyPolicy::default())
}

/// I_x(a, b) with `y = 1 − x` supplied separately so that neither loses
/// precision near the ends of the unit interval.
pub(crate) fn inc_beta_xy(a: f64, b: f64, x: f64, y: f64, policy: &AccuracyPolicy) -> Result<f64> {
    check_positive(a, "beta shape a")?;
    check_positive(b, "beta shape b")?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    if y <= 0.0 {
        return Ok(1.0);
    }
    let log_front = a * x.ln() + b * y.ln() - (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b));
    if x < (a + 1.0) / (a + b + 2.0) {
        let cf = beta_cf(a, b, x, policy)?;
        Ok((log_front.exp() * cf / a).clamp(0.0, 1.0))
    } else {
        let cf = beta_cf(b, a, y, policy)?;
        Ok((1.0 - log_front.exp() * cf / b).clamp(0.0, 1.0))
    }
}

// Continued fraction for I_x(a, b), modified Lentz.
fn beta_cf(a: f64, b: f64, x: f64, policy: &AccuracyPolicy) -> Result<f64> {
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=policy.max_terms {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < f64::EPSILON {
            return Ok(h);
        }
    }
    Err(Error::Accuracy {
        what: "incomplete beta continued fraction".into(),
        partial: h,
    })
}

/// Distribution function of Student's t with `nu` degrees of freedom.
pub fn student_t_cdf(t: f64, nu: f64) -> Result<f64> {
    check_positive(nu, "t degrees of freedom")?;
    if t.is_nan() {
        return Err(Error::domain("t statistic is NaN"));
    }
    if t == 0.0 {
        return Ok(0.5);
    }
    if t.is_infinite() {
        return Ok(if t > 0.0 { 1.0 } else { 0.0 });
    }
    let t2 = t * t;
    let x = nu / (nu + t2);
    let y = t2 / (nu + t2);
    let tail = 0.5 * inc_beta_xy(0.5 * nu, 0.5, x, y, &AccuracyPolicy::default())?;
    Ok(if t < 0.0 { tail } else { 1.0 - tail })
}

/// Quantile of Student's t with `nu` degrees of freedom.
pub fn student_t_quantile(p: f64, nu: f64) -> Result<f64> {
    check_probability(p, "student_t_quantile")?;
    check_positive(nu, "t degrees of freedom")?;
    if p == 0.5 {
        return Ok(0.0);
    }
    // solve on the upper half and reflect
    let upper = p.max(1.0 - p);
    let z = super::std_normal_quantile(upper)?;
    let t = invert_increasing(
        |t| student_t_cdf(t, nu),
        upper,
        z,
        0.5 * z.max(0.5),
        0.0,
        f64::INFINITY,
        1e-13 * z.max(1.0),
        200,
    )?;
    Ok(if p < 0.5 { -t } else { t })
}
