//! Ratio of normal means (Fieller's problem) and the bivariate normal
//! correlation.

use super::summary::{CorrSummary, RatioData};
use crate::error::{Error, Result};
use crate::im::{Monotonicity, ScalarPivotIm};
use crate::regions::{Piece, Region, Support};
use crate::special::{sample_corr_cdf, std_normal_cdf, std_normal_quantile};

/// Correlation ψ of a bivariate normal: F_ψ(r) = G_ψ(r), the sample
/// correlation distribution function.
pub fn bvn_correlation_im(s: &CorrSummary) -> Result<ScalarPivotIm> {
    if s.r.abs() >= 1.0 {
        return Err(Error::degenerate(
            "sample correlation is on the boundary |r| = 1",
        ));
    }
    let (r, n) = (s.r, s.n);
    let scale = ((1.0 - r * r) / (n as f64 - 1.0).sqrt()).max(1e-6);
    Ok(ScalarPivotIm::new(
        move |psi| sample_corr_cdf(r, n, psi),
        Monotonicity::DecreasingInPsi,
        Support::OpenUnit,
        r,
        scale,
    ))
}

fn ratio_pivot(d: &RatioData, psi: f64) -> f64 {
    std_normal_cdf((d.x1 - psi * d.x2) / (1.0 + psi * psi).sqrt())
}

/// Plausibility of the ratio ψ: 1 − |2Φ((x1 − ψx2)/(1 + ψ²)^{1/2}) − 1|.
pub fn mean_ratio_plausibility(d: &RatioData, psi: f64) -> f64 {
    let f = ratio_pivot(d, psi);
    1.0 - (2.0 * f - 1.0).abs()
}

/// {ψ : pl(ψ) > α}, i.e. the solutions of the strict quadratic inequality
/// (x2² − z²)ψ² − 2x1x2ψ + (x1² − z²) < 0 with z = z_{1−α/2}.
pub fn mean_ratio_region(d: &RatioData, alpha: f64) -> Result<Region> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    let z = std_normal_quantile(1.0 - 0.5 * alpha)?;
    let z2 = z * z;
    let (x1, x2) = (d.x1, d.x2);
    let a = x2 * x2 - z2;
    let half_b = -x1 * x2;
    let c = x1 * x1 - z2;
    // quarter discriminant b²/4 − ac = z²(x1² + x2² − z²)
    let disc = z2 * (x1 * x1 + x2 * x2 - z2);

    if a == 0.0 {
        // linear: −2 x1 x2 ψ + c < 0
        if half_b == 0.0 {
            return Ok(if c < 0.0 {
                Region::whole_line()
            } else {
                Region::empty()
            });
        }
        let root = -c / (2.0 * half_b);
        return Ok(if half_b > 0.0 {
            Region::interval(Piece::open(f64::NEG_INFINITY, root))
        } else {
            Region::interval(Piece::open(root, f64::INFINITY))
        });
    }
    if disc <= 0.0 {
        // no sign change; the quadratic has the sign of a away from a double root
        return Ok(if a > 0.0 {
            Region::empty()
        } else if disc == 0.0 {
            let root = -half_b / a;
            Region::from_pieces(vec![
                Piece::open(f64::NEG_INFINITY, root),
                Piece::open(root, f64::INFINITY),
            ])
        } else {
            Region::whole_line()
        });
    }
    // roots without cancellation
    let sq = disc.sqrt();
    let q = -half_b + if -half_b >= 0.0 { sq } else { -sq };
    let (r1, r2) = if q == 0.0 {
        let w = (-c / a).sqrt();
        (-w, w)
    } else {
        let (u, v) = (q / a, c / q);
        (u.min(v), u.max(v))
    };
    Ok(if a > 0.0 {
        Region::interval(Piece::open(r1, r2))
    } else {
        Region::from_pieces(vec![
            Piece::open(f64::NEG_INFINITY, r1),
            Piece::open(r2, f64::INFINITY),
        ])
    })
}

/// The ratio IM as a pivot curve. The pivot is not monotone in ψ, so the
/// region comes from the closed form.
pub fn mean_ratio_im(d: &RatioData) -> Result<ScalarPivotIm> {
    let d = RatioData::new(d.x1, d.x2)?;
    let location = if d.x2 != 0.0 { d.x1 / d.x2 } else { 0.0 };
    let scale = (1.0 + location * location).sqrt() / d.x2.abs().max(1.0);
    Ok(ScalarPivotIm::new(
        move |psi| Ok(ratio_pivot(&d, psi)),
        Monotonicity::Nonmonotone,
        Support::Real,
        location,
        scale,
    )
    .with_closed_form(move |alpha| mean_ratio_region(&d, alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regions::Shape;

    #[test]
    fn ratio_plausibility_examples() {
        let d = RatioData::new(0.0, 5.0).unwrap();
        assert_eq!(mean_ratio_plausibility(&d, 0.0), 1.0);
        let d = RatioData::new(2.0, 2.0).unwrap();
        assert_eq!(mean_ratio_plausibility(&d, 1.0), 1.0);
        let d = RatioData::new(1.0, 0.0).unwrap();
        let mut prev = 0.0;
        for k in 0..20 {
            let psi = k as f64 * 3.0;
            let pl = mean_ratio_plausibility(&d, psi);
            let direct = 1.0 - (2.0 * std_normal_cdf(1.0 / (1.0 + psi * psi).sqrt()) - 1.0);
            assert!((pl - direct).abs() < 1e-15);
            assert!(pl >= prev);
            prev = pl;
        }
    }

    #[test]
    fn fieller_shapes() {
        let r = mean_ratio_region(&RatioData::new(0.0, 10.0).unwrap(), 0.05).unwrap();
        assert_eq!(r.shape(), Shape::Interval);
        let z = std_normal_quantile(0.975).unwrap();
        let w = z / (100.0 - z * z).sqrt();
        let p = r.pieces()[0];
        assert!((p.lo + w).abs() < 1e-12 && (p.hi - w).abs() < 1e-12);
        assert!((w - 0.199873).abs() < 1e-6);
        assert!(r.contains(0.0));

        let r = mean_ratio_region(&RatioData::new(10.0, 0.0).unwrap(), 0.05).unwrap();
        assert_eq!(r.shape(), Shape::TwoRays);

        let r = mean_ratio_region(&RatioData::new(0.0, 0.0).unwrap(), 0.05).unwrap();
        assert_eq!(r.shape(), Shape::WholeLine);
    }

    #[test]
    fn fieller_matches_threshold_rule() {
        for &(x1, x2) in &[
            (3.0, 2.5),
            (1.0, 0.5),
            (-4.0, 1.2),
            (0.3, -0.2),
            (2.0, 1.959963984540054),
        ] {
            let d = RatioData::new(x1, x2).unwrap();
            for &alpha in &[0.01, 0.05, 0.3] {
                let r = mean_ratio_region(&d, alpha).unwrap();
                for k in -200..=200 {
                    let psi = 0.137 * k as f64;
                    let pl = mean_ratio_plausibility(&d, psi);
                    if (pl - alpha).abs() > 1e-9 {
                        assert_eq!(
                            r.contains(psi),
                            pl > alpha,
                            "x=({x1},{x2}) a={alpha} psi={psi}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ratio_im_delegates_to_closed_form() {
        use crate::regions::{extract_region, SearchConfig};
        let d = RatioData::new(10.0, 0.0).unwrap();
        let im = mean_ratio_im(&d).unwrap();
        let r = extract_region(&im, 0.05, &SearchConfig::default()).unwrap();
        assert_eq!(r, mean_ratio_region(&d, 0.05).unwrap());
    }

    #[test]
    fn correlation_pivot() {
        let im = bvn_correlation_im(&CorrSummary::new(10, 0.0).unwrap()).unwrap();
        assert!((im.plausibility(0.0).unwrap() - 1.0).abs() < 1e-11);
        let im = bvn_correlation_im(&CorrSummary::new(10, 0.5).unwrap()).unwrap();
        let g = sample_corr_cdf(0.5, 10, 0.5).unwrap();
        assert!((im.plausibility(0.5).unwrap() - (1.0 - (2.0 * g - 1.0).abs())).abs() < 1e-15);
        assert!(im.plausibility(0.999999).unwrap() < 1e-6);
        assert!(im.plausibility(-0.999).unwrap() < 1e-6);
        assert!(bvn_correlation_im(&CorrSummary::new(10, 1.0).unwrap()).is_err());
    }
}
