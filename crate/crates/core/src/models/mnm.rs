//! Many normal means: inference on ψ = ‖θ‖ from x ~ N_n(θ, I).

use super::summary::VectorSummary;
use crate::error::{Error, Result};
use crate::im::{elastic_mnm_plausibility, mnm_level};
use crate::regions::{Piece, PlausibilityCurve, Region, Support};
use crate::special::noncentral_chisq_cdf;

const LEVEL_TOL: f64 = 1e-12;

/// The marginal IM for ‖θ‖ under the elastic default random set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ManyNormalMeansIm {
    pub summary: VectorSummary,
}

impl ManyNormalMeansIm {
    pub fn new(summary: VectorSummary) -> Self {
        Self { summary }
    }

    /// F_{n,ψ}(‖x‖²).
    pub fn pivot_cdf(&self, psi: f64) -> Result<f64> {
        if !(psi >= 0.0) {
            return Err(Error::domain(format!("psi must be >= 0, got {psi}")));
        }
        noncentral_chisq_cdf(self.summary.norm_sq, self.summary.n as f64, psi * psi)
    }
}

impl PlausibilityCurve for ManyNormalMeansIm {
    fn plausibility(&self, psi: f64) -> Result<f64> {
        elastic_mnm_plausibility(self.summary.norm_sq, self.summary.n, psi)
    }

    fn support(&self) -> Support {
        Support::NonNegative
    }

    fn mode(&self) -> Result<f64> {
        let s = self.summary;
        Ok(mnm_level(s.norm_sq, s.n, 0.5, LEVEL_TOL)?.unwrap_or(0.0))
    }

    fn scale_hint(&self) -> f64 {
        1.0
    }

    fn closed_form_region(&self, alpha: f64) -> Option<Result<Region>> {
        Some(many_normal_means_region(&self.summary, alpha))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "alpha must be in (0, 1), got {alpha}"
        )))
    }
}

/// Plausibility region {ψ ≥ 0 : pl(ψ) > α}.
///
/// When F_{n,0}(‖x‖²) < ½ this is [0, ψ̂) with F_{n,ψ̂}(‖x‖²) = α/2, or {0} if
/// no such ψ̂ exists. Otherwise it is {ψ ≥ 0 : α/2 < F_{n,ψ}(‖x‖²) < 1 − α/2},
/// closed at 0 when the lower level is not reached.
pub fn many_normal_means_region(s: &VectorSummary, alpha: f64) -> Result<Region> {
    check_alpha(alpha)?;
    let (x, n) = (s.norm_sq, s.n);
    let f0 = noncentral_chisq_cdf(x, n as f64, 0.0)?;
    let upper = mnm_level(x, n, 0.5 * alpha, LEVEL_TOL)?;
    if f0 < 0.5 {
        return Ok(match upper {
            Some(hi) => Region::interval(Piece::new(0.0, hi, false, true)),
            None => Region::interval(Piece::closed(0.0, 0.0)),
        });
    }
    let hi = upper.expect("F_{n,0} >= 1/2 exceeds alpha/2");
    match mnm_level(x, n, 1.0 - 0.5 * alpha, LEVEL_TOL)? {
        Some(lo) => Ok(Region::interval(Piece::open(lo, hi))),
        None => Ok(Region::interval(Piece::new(0.0, hi, false, true))),
    }
}

/// Central fiducial region {ψ ≥ 0 : α/2 ≤ F_{n,ψ}(‖x‖²)/F_{n,0}(‖x‖²) ≤ 1 − α/2},
/// the comparator for coverage studies.
pub fn many_normal_means_fiducial_region(s: &VectorSummary, alpha: f64) -> Result<Region> {
    check_alpha(alpha)?;
    let (x, n) = (s.norm_sq, s.n);
    if x == 0.0 {
        return Err(Error::degenerate("squared norm is zero"));
    }
    let f0 = noncentral_chisq_cdf(x, n as f64, 0.0)?;
    if f0 == 0.0 {
        return Err(Error::degenerate(
            "central distribution function underflows at this squared norm",
        ));
    }
    let lo = mnm_level(x, n, (1.0 - 0.5 * alpha) * f0, LEVEL_TOL)?.unwrap_or(0.0);
    let hi = mnm_level(x, n, 0.5 * alpha * f0, LEVEL_TOL)?.unwrap_or(0.0);
    Ok(Region::interval(Piece::closed(lo, hi)))
}
