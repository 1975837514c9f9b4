//! The catalog of marginal IMs. Each model reduces data to sufficient
//! statistics and exposes a plausibility curve for its interest parameter.

mod gamma;
mod mnm;
mod normal;
mod ratio;
mod summary;

pub use gamma::{
    gamma_kappa, gamma_kappa_star, gamma_kappa_star_parts, gamma_mean_im, gamma_mean_im_with,
    gamma_pivot_z,
};
pub use mnm::{many_normal_means_fiducial_region, many_normal_means_region, ManyNormalMeansIm};
pub use normal::{behrens_fisher_im, normal_mean_known_var_im, normal_mean_t_im};
pub use ratio::{bvn_correlation_im, mean_ratio_im, mean_ratio_plausibility, mean_ratio_region};
pub use summary::{
    summarize_gamma, summarize_normal, summarize_pairs, summarize_two_sample, summarize_vector,
    CorrSummary, GammaSummary, NormalSummary, RatioData, TwoSampleSummary, VectorSummary,
};

use crate::error::{Error, Result};
use crate::im::ScalarPivotIm;
use crate::regions::{extract_region, PlausibilityCurve, Region, SearchConfig, Support};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

/// Model identifiers as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelId {
    NormalMean,
    NormalMeanT,
    Correlation,
    MeanRatio,
    Mnm,
    BehrensFisher,
    GammaMean,
}

impl ModelId {
    pub const ALL: [ModelId; 7] = [
        ModelId::NormalMean,
        ModelId::NormalMeanT,
        ModelId::Correlation,
        ModelId::MeanRatio,
        ModelId::Mnm,
        ModelId::BehrensFisher,
        ModelId::GammaMean,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelId::NormalMean => "normal-mean",
            ModelId::NormalMeanT => "normal-mean-t",
            ModelId::Correlation => "correlation",
            ModelId::MeanRatio => "mean-ratio",
            ModelId::Mnm => "mnm",
            ModelId::BehrensFisher => "behrens-fisher",
            ModelId::GammaMean => "gamma-mean",
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<_> = ModelId::ALL.iter().map(|m| m.as_str()).collect();
                Error::Input(format!(
                    "unknown model '{s}' (expected one of {})",
                    known.join(", ")
                ))
            })
    }
}

/// A model together with its observed statistics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum ModelInstance {
    NormalMean { summary: NormalSummary, sigma: f64 },
    NormalMeanT { summary: NormalSummary },
    Correlation { summary: CorrSummary },
    MeanRatio { data: RatioData },
    Mnm { summary: VectorSummary },
    BehrensFisher { summary: TwoSampleSummary },
    GammaMean { summary: GammaSummary },
}

/// A plausibility curve from any catalog model.
#[derive(Clone)]
pub enum Curve {
    Pivot(ScalarPivotIm),
    Elastic(ManyNormalMeansIm),
}

impl PlausibilityCurve for Curve {
    fn plausibility(&self, psi: f64) -> Result<f64> {
        match self {
            Curve::Pivot(c) => c.plausibility(psi),
            Curve::Elastic(c) => c.plausibility(psi),
        }
    }

    fn support(&self) -> Support {
        match self {
            Curve::Pivot(c) => PlausibilityCurve::support(c),
            Curve::Elastic(c) => c.support(),
        }
    }

    fn mode(&self) -> Result<f64> {
        match self {
            Curve::Pivot(c) => PlausibilityCurve::mode(c),
            Curve::Elastic(c) => c.mode(),
        }
    }

    fn scale_hint(&self) -> f64 {
        match self {
            Curve::Pivot(c) => c.scale_hint(),
            Curve::Elastic(c) => c.scale_hint(),
        }
    }

    fn closed_form_region(&self, alpha: f64) -> Option<Result<Region>> {
        match self {
            Curve::Pivot(c) => c.closed_form_region(alpha),
            Curve::Elastic(c) => c.closed_form_region(alpha),
        }
    }
}

impl ModelInstance {
    pub fn id(&self) -> ModelId {
        match self {
            ModelInstance::NormalMean { .. } => ModelId::NormalMean,
            ModelInstance::NormalMeanT { .. } => ModelId::NormalMeanT,
            ModelInstance::Correlation { .. } => ModelId::Correlation,
            ModelInstance::MeanRatio { .. } => ModelId::MeanRatio,
            ModelInstance::Mnm { .. } => ModelId::Mnm,
            ModelInstance::BehrensFisher { .. } => ModelId::BehrensFisher,
            ModelInstance::GammaMean { .. } => ModelId::GammaMean,
        }
    }

    pub fn curve(&self) -> Result<Curve> {
        Ok(match self {
            ModelInstance::NormalMean { summary, sigma } => {
                Curve::Pivot(normal_mean_known_var_im(summary, *sigma)?)
            }
            ModelInstance::NormalMeanT { summary } => Curve::Pivot(normal_mean_t_im(summary)?),
            ModelInstance::Correlation { summary } => Curve::Pivot(bvn_correlation_im(summary)?),
            ModelInstance::MeanRatio { data } => Curve::Pivot(mean_ratio_im(data)?),
            ModelInstance::Mnm { summary } => Curve::Elastic(ManyNormalMeansIm::new(*summary)),
            ModelInstance::BehrensFisher { summary } => Curve::Pivot(behrens_fisher_im(summary)?),
            ModelInstance::GammaMean { summary } => Curve::Pivot(gamma_mean_im(summary)?),
        })
    }

    /// Marginal plausibility at ψ.
    pub fn plausibility(&self, psi: f64) -> Result<f64> {
        match self {
            ModelInstance::MeanRatio { data } => {
                if !psi.is_finite() {
                    return Err(Error::domain(format!("psi must be finite, got {psi}")));
                }
                Ok(mean_ratio_plausibility(data, psi))
            }
            _ => self.curve()?.plausibility(psi),
        }
    }

    /// The plausibility region {ψ : pl(ψ) > α}.
    pub fn region(&self, alpha: f64, search: &SearchConfig) -> Result<Region> {
        extract_region(&self.curve()?, alpha, search)
    }
}
