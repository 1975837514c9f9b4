//! Predictive random sets and the scalar-pivot marginal inferential model.
//!
//! A scalar-pivot IM is described by the map ψ ↦ F_ψ(s), the distribution
//! function of the marginal statistic at its observed value. With W uniform
//! and the default nested random set S = {w : |w − ½| ≤ |W − ½|}, the
//! plausibility of a single ψ is the contour 1 − |2F_ψ(s) − 1|.

use crate::error::{Error, Result};
use crate::regions::{PlausibilityCurve, Region, Support};
use crate::roots::{brent_with_values, invert_increasing};
use crate::special::noncentral_chisq_cdf;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Which predictive random set drives the prediction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomSetKind {
    /// Nested intervals centred at ½.
    DefaultNested,
    /// Default set stretched so the focal sets are never empty.
    ElasticDefault,
    /// S = {W}; only used as a reference in tests.
    Singleton,
}

impl RandomSetKind {
    /// Hit probability P{S ∋ u}.
    pub fn contour(self, u: f64) -> Result<f64> {
        match self {
            RandomSetKind::DefaultNested => default_prs_contour(u),
            RandomSetKind::Singleton => {
                check_unit(u)?;
                Ok(0.0)
            }
            RandomSetKind::ElasticDefault => Err(Error::Unsupported(
                "the elastic contour depends on the data; use elastic_mnm_plausibility".into(),
            )),
        }
    }
}

fn check_unit(u: f64) -> Result<()> {
    if (0.0..=1.0).contains(&u) {
        Ok(())
    } else {
        Err(Error::domain(format!("{u} is not in [0, 1]")))
    }
}

/// P{S ∋ u} = 1 − |2u − 1| for the default nested random set.
pub fn default_prs_contour(u: f64) -> Result<f64> {
    check_unit(u)?;
    Ok(1.0 - (2.0 * u - 1.0).abs())
}

/// Q_S(u) = P{S ∌ u} = |2u − 1|; uniform when u is uniform.
pub fn default_prs_miss(u: f64) -> Result<f64> {
    check_unit(u)?;
    Ok((2.0 * u - 1.0).abs())
}

/// Direction of F_ψ(s) in ψ for fixed data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    DecreasingInPsi,
    Nonmonotone,
}

pub type PivotFn = Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>;
pub type RegionFn = Arc<dyn Fn(f64) -> Result<Region> + Send + Sync>;

/// Marginal IM whose association is F_ψ(S) = W with W ~ Unif(0, 1).
///
/// The observed statistic is captured inside the pivot closure, so the IM
/// is the curve ψ ↦ F_ψ(s) for one data set.
#[derive(Clone)]
pub struct ScalarPivotIm {
    pivot: PivotFn,
    monotonicity: Monotonicity,
    support: Support,
    location: f64,
    scale: f64,
    closed_form: Option<RegionFn>,
    quantile_tol: f64,
}

impl fmt::Debug for ScalarPivotIm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarPivotIm")
            .field("monotonicity", &self.monotonicity)
            .field("support", &self.support)
            .field("location", &self.location)
            .field("scale", &self.scale)
            .finish_non_exhaustive()
    }
}

impl ScalarPivotIm {
    /// `location` and `scale` are hints for where the curve lives in ψ; they
    /// only steer the searches.
    pub fn new<F>(
        pivot: F,
        monotonicity: Monotonicity,
        support: Support,
        location: f64,
        scale: f64,
    ) -> Self
    where
        F: Fn(f64) -> Result<f64> + Send + Sync + 'static,
    {
        Self {
            pivot: Arc::new(pivot),
            monotonicity,
            support,
            location,
            scale,
            closed_form: None,
            quantile_tol: 1e-12,
        }
    }

    /// Attaches an exact region map α ↦ {ψ : pl(ψ) > α}.
    pub fn with_closed_form<R>(mut self, region: R) -> Self
    where
        R: Fn(f64) -> Result<Region> + Send + Sync + 'static,
    {
        self.closed_form = Some(Arc::new(region));
        self
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn location_hint(&self) -> f64 {
        self.location
    }

    /// F_ψ(s) at the observed statistic.
    pub fn pivot_cdf(&self, psi: f64) -> Result<f64> {
        if !self.support.contains(psi) {
            return Err(Error::domain(format!(
                "psi = {psi} is outside the {:?} support",
                self.support
            )));
        }
        let v = (self.pivot)(psi)?;
        if v.is_nan() {
            return Err(Error::domain(format!("pivot is undefined at psi = {psi}")));
        }
        Ok(v.clamp(0.0, 1.0))
    }

    /// Marginal plausibility 1 − |2F_ψ(s) − 1|.
    pub fn plausibility(&self, psi: f64) -> Result<f64> {
        let f = self.pivot_cdf(psi)?;
        Ok(1.0 - (2.0 * f - 1.0).abs())
    }

    fn require_monotone(&self, what: &str) -> Result<()> {
        match self.monotonicity {
            Monotonicity::DecreasingInPsi => Ok(()),
            Monotonicity::Nonmonotone => Err(Error::Unsupported(format!(
                "{what} needs a pivot that is monotone in psi; use the model-specific computation"
            ))),
        }
    }

    /// The ψ at which F_ψ(s) = q, for a pivot decreasing in ψ.
    ///
    /// When no such ψ exists inside the support, the support edge the
    /// solution escapes to is returned.
    pub fn level_point(&self, q: f64) -> Result<f64> {
        self.require_monotone("level_point")?;
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!("level {q} is not in (0, 1)")));
        }
        let s = self.support;
        let t0 = s.to_search(self.location);
        let jac = match s {
            Support::Positive => 1.0 / self.location,
            Support::OpenUnit => 1.0 / (1.0 - self.location * self.location),
            _ => 1.0,
        };
        let step = (self.scale * jac).abs().max(1e-8);

        if s == Support::NonNegative {
            let f0 = self.pivot_cdf(0.0)?;
            if f0 <= q {
                return Ok(0.0);
            }
            let x = invert_increasing(
                |psi| Ok(-self.pivot_cdf(psi.max(0.0))?),
                -q,
                self.location.max(0.0),
                step,
                -1e-300,
                f64::INFINITY,
                self.quantile_tol * (1.0 + self.location.abs()),
                200,
            )?;
            return Ok(x.max(0.0));
        }

        let g = |t: f64| -> Result<f64> {
            let psi = s.from_search(t);
            if psi <= s.lo() {
                return Ok(-1.0);
            }
            if psi >= s.hi() {
                return Ok(0.0);
            }
            Ok(-self.pivot_cdf(psi)?)
        };
        let xtol = match s {
            Support::Real => self.quantile_tol * (1.0 + self.location.abs()),
            _ => self.quantile_tol,
        };
        match invert_increasing(g, -q, t0, step, f64::NEG_INFINITY, f64::INFINITY, xtol, 200) {
            Ok(t) => Ok(s.from_search(t)),
            Err(Error::Search { lo, hi, .. }) if s != Support::Real => {
                // the level lies beyond the representable part of an open edge
                Ok(s.from_search(if lo < t0 { lo } else { hi }))
            }
            Err(e) => Err(e),
        }
    }

    /// Point of maximal plausibility, where F_ψ(s) = ½.
    pub fn mode(&self) -> Result<f64> {
        if self.monotonicity == Monotonicity::Nonmonotone {
            return Ok(self.location);
        }
        self.level_point(0.5)
    }

    /// Focal interval {ψ : |2F_ψ(s) − 1| ≤ 2d} for 0 ≤ d < ½.
    pub fn focal_interval(&self, d: f64) -> Result<(f64, f64)> {
        let lo = self.level_point(0.5 + d)?;
        let hi = self.level_point(0.5 - d)?;
        Ok((lo, hi))
    }

    /// Belief of the assertion ψ ∈ A, the probability that the focal interval
    /// of a uniform W lies inside A.
    ///
    /// W is integrated with the `grid`-node midpoint rule. The focal
    /// intervals are nested in |W − ½|, so the nodes whose interval fits in A
    /// form a prefix in that order and the cut-off is found by bisection.
    pub fn belief(&self, assertion: &Region, grid: usize) -> Result<f64> {
        self.require_monotone("belief")?;
        if grid == 0 {
            return Err(Error::domain("belief grid must have at least one node"));
        }
        let support_region = self.support.as_region();
        if support_region.is_subset_of(assertion) {
            return Ok(1.0);
        }
        // distinct half-widths |w_i − ½| in increasing order; node i and its
        // mirror grid−1−i share one
        let half = grid / 2;
        let width = |k: usize| -> f64 {
            // k-th smallest half-width
            if grid % 2 == 1 {
                k as f64 / grid as f64
            } else {
                (k as f64 + 0.5) / grid as f64
            }
        };
        let distinct = if grid % 2 == 1 { half + 1 } else { half };
        let nodes_up_to = |k: usize| -> usize {
            // number of nodes with half-width <= width(k)
            if grid % 2 == 1 {
                2 * k + 1
            } else {
                2 * (k + 1)
            }
        };
        let fits = |k: usize| -> Result<bool> {
            let (a, b) = self.focal_interval(width(k))?;
            Ok(assertion.covers(a, b))
        };
        if !fits(0)? {
            return Ok(0.0);
        }
        // invariant: fits(lo) holds, fits(hi) fails (or hi == distinct)
        let (mut lo, mut hi) = (0usize, distinct);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if fits(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(nodes_up_to(lo) as f64 / grid as f64)
    }

    /// Plausibility of an assertion, 1 − bel(Aᶜ).
    pub fn assertion_plausibility(&self, assertion: &Region, grid: usize) -> Result<f64> {
        Ok(1.0 - self.belief(&assertion.complement(), grid)?)
    }
}

impl PlausibilityCurve for ScalarPivotIm {
    fn plausibility(&self, psi: f64) -> Result<f64> {
        ScalarPivotIm::plausibility(self, psi)
    }

    fn support(&self) -> Support {
        self.support
    }

    fn mode(&self) -> Result<f64> {
        ScalarPivotIm::mode(self)
    }

    fn scale_hint(&self) -> f64 {
        self.scale
    }

    fn closed_form_region(&self, alpha: f64) -> Option<Result<Region>> {
        self.closed_form.as_ref().map(|f| f(alpha))
    }
}

/// Marginal plausibility of ψ = ‖θ‖ from ‖x‖² under the elastic default
/// random set, for x ~ N_n(θ, I).
///
/// When F_{n,0}(‖x‖²) ≥ ½ the ordinary contour applies. Below ½ no ψ ≥ 0 puts
/// the pivot at its median, the random set is stretched, and
/// pl(0) = 1 while pl(ψ) = 2F_{n,0} − max{|2F_{n,ψ} − 1| + 2F_{n,0} − 1, 0}.
pub fn elastic_mnm_plausibility(chisq_stat: f64, n: usize, psi: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("dimension must be positive"));
    }
    if !(chisq_stat >= 0.0 && chisq_stat.is_finite()) {
        return Err(Error::domain(format!(
            "squared norm must be finite and >= 0, got {chisq_stat}"
        )));
    }
    if !(psi >= 0.0 && psi.is_finite()) {
        return Err(Error::domain(format!(
            "psi must be finite and >= 0, got {psi}"
        )));
    }
    let df = n as f64;
    let f0 = noncentral_chisq_cdf(chisq_stat, df, 0.0)?;
    if f0 >= 0.5 {
        let f = noncentral_chisq_cdf(chisq_stat, df, psi * psi)?;
        return Ok(1.0 - (2.0 * f - 1.0).abs());
    }
    if psi == 0.0 {
        return Ok(1.0);
    }
    let f = noncentral_chisq_cdf(chisq_stat, df, psi * psi)?;
    let stretch = ((2.0 * f - 1.0).abs() + 2.0 * f0 - 1.0).max(0.0);
    Ok((2.0 * f0 - stretch).clamp(0.0, 1.0))
}

/// ψ ≥ 0 with F_{n,ψ}(‖x‖²) = q, or `None` when F_{n,0}(‖x‖²) ≤ q.
pub(crate) fn mnm_level(chisq_stat: f64, n: usize, q: f64, tol: f64) -> Result<Option<f64>> {
    let df = n as f64;
    let f = |psi: f64| noncentral_chisq_cdf(chisq_stat, df, psi * psi);
    let f0 = f(0.0)?;
    if f0 <= q {
        return Ok(None);
    }
    // grow the upper end geometrically until F drops to q
    let mut lo = 0.0;
    let mut f_lo = f0;
    let mut hi = chisq_stat.sqrt().max(1.0);
    let mut f_hi = f(hi)?;
    let mut expansions = 0;
    while f_hi > q {
        lo = hi;
        f_lo = f_hi;
        hi *= 2.0;
        f_hi = f(hi)?;
        expansions += 1;
        if expansions > 200 {
            return Err(Error::Search {
                what: format!("noncentral chi-square level {q} not bracketed"),
                lo,
                hi,
            });
        }
    }
    let root = brent_with_values(|p| f(p).map(|v| v - q), lo, hi, f_lo - q, f_hi - q, tol)?;
    Ok(Some(root))
}
