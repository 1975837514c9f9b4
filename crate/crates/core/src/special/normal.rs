use super::check_probability;
use crate::error::Result;
use std::f64::consts::FRAC_1_SQRT_2;

/// Standard normal distribution function Φ(z).
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z * FRAC_1_SQRT_2)
}

/// Upper tail 1 − Φ(z), without cancellation for large z.
pub fn std_normal_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z * FRAC_1_SQRT_2)
}

/// Standard normal quantile Φ⁻¹(p), p ∈ (0, 1).
///
/// Wichura's AS 241 (PPND16), relative accuracy about 1e-16.
pub fn std_normal_quantile(p: f64) -> Result<f64> {
    check_probability(p, "std_normal_quantile")?;
    Ok(ppnd16(p))
}

/// Φ⁻¹ of a probability given by both of its tails `(p, 1 - p)`.
///
/// Uses whichever tail is smaller, so probabilities extremely close to one
/// keep their precision. Saturates to ±∞ when a tail is exactly zero.
pub fn probit_from_tails(lower: f64, upper: f64) -> f64 {
    if lower <= 0.0 {
        f64::NEG_INFINITY
    } else if upper <= 0.0 {
        f64::INFINITY
    } else if lower <= upper {
        ppnd16(lower)
    } else {
        -ppnd16(upper)
    }
}

#[allow(clippy::excessive_precision)]
fn ppnd16(p: f64) -> f64 {
    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180625 - q * q;
        let num = ((((((r * 2509.0809287301226727 + 33430.575583588128105) * r
            + 67265.770927008700853)
            * r
            + 45921.953931549871457)
            * r
            + 13731.693765509461125)
            * r
            + 1971.5909503065514427)
            * r
            + 133.14166789178437745)
            * r
            + 3.387132872796366608;
        let den = ((((((r * 5226.495278852545925 + 28729.085735721942674) * r
            + 39307.89580009271061)
            * r
            + 21213.794301586595867)
            * r
            + 5394.1960214247511077)
            * r
            + 687.1870074920579083)
            * r
            + 42.313330701600911252)
            * r
            + 1.0;
        return q * num / den;
    }

    let tail = if q < 0.0 { p } else { 1.0 - p };
    let mut r = (-tail.ln()).sqrt();
    let val = if r <= 5.0 {
        r -= 1.6;
        let num = ((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r
            + 0.24178072517745061177)
            * r
            + 1.27045825245236838258)
            * r
            + 3.64784832476320460504)
            * r
            + 5.7694972214606914055)
            * r
            + 4.6303378461565452959)
            * r
            + 1.42343711074968357734;
        let den = ((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r
            + 0.0151986665636164571966)
            * r
            + 0.14810397642748007459)
            * r
            + 0.68976733498510000455)
            * r
            + 1.6763848301838038494)
            * r
            + 2.05319162663775882187)
            * r
            + 1.0;
        num / den
    } else {
        r -= 5.0;
        let num = ((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r
            + 0.0012426609473880784386)
            * r
            + 0.026532189526576123093)
            * r
            + 0.29656057182850489123)
            * r
            + 1.7848265399172913358)
            * r
            + 5.4637849111641143699)
            * r
            + 6.6579046435011037772;
        let den = ((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r
            + 1.8463183175100546818e-5)
            * r
            + 7.868691311456132591e-4)
            * r
            + 0.0148753612908506148525)
            * r
            + 0.13692988092273580531)
            * r
            + 0.59983220655588793769)
            * r
            + 1.0;
        num / den
    };
    if q < 0.0 {
        -val
    } else {
        val
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::brent;

    #[test]
    fn cdf_center_and_symmetry() {
        assert_eq!(std_normal_cdf(0.0), 0.5);
        for &z in &[0.1, 1.0, 2.5, 6.0] {
            assert!((std_normal_cdf(z) + std_normal_cdf(-z) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn cdf_matches_bisection_oracle() {
        // 0.975 quantile located by bisection on the cdf itself
        let z = brent(|z| Ok(std_normal_cdf(z) - 0.975), 0.0, 5.0, 1e-15).unwrap();
        assert!((z - 1.959964).abs() < 1e-6);
        assert!((std_normal_cdf(1.959964) - 0.975).abs() < 1e-6);
        assert!((std_normal_cdf(-1.959964) - 0.025).abs() < 1e-6);
    }

    #[test]
    fn quantile_examples() {
        assert_eq!(std_normal_quantile(0.5).unwrap(), 0.0);
        assert!((std_normal_quantile(0.975).unwrap() - 1.959964).abs() < 1e-6);
        assert!((std_normal_quantile(0.025).unwrap() + 1.959964).abs() < 1e-6);
    }

    #[test]
    fn quantile_round_trip() {
        for &p in &[
            1e-300,
            1e-20,
            1e-8,
            0.01,
            0.05,
            0.3,
            0.5,
            0.77,
            0.99,
            1.0 - 1e-12,
        ] {
            let z = std_normal_quantile(p).unwrap();
            let back = if p < 0.5 {
                std_normal_cdf(z)
            } else {
                1.0 - std_normal_sf(z)
            };
            assert!(((back - p) / p).abs() < 1e-12, "p={p} back={back}");
        }
    }

    #[test]
    fn quantile_domain() {
        assert!(std_normal_quantile(0.0).is_err());
        assert!(std_normal_quantile(1.0).is_err());
        assert!(std_normal_quantile(f64::NAN).is_err());
    }

    #[test]
    fn probit_uses_small_tail() {
        let z = probit_from_tails(1.0 - 1e-20, 1e-20);
        assert!((z + std_normal_quantile(1e-20).unwrap()).abs() < 1e-12);
        assert_eq!(probit_from_tails(0.0, 1.0), f64::NEG_INFINITY);
        assert_eq!(probit_from_tails(1.0, 0.0), f64::INFINITY);
    }
}
