//! Plausibility regions: finite unions of intervals on the extended real
//! line, and their extraction as superlevel sets `{ψ : pl(ψ) > α}`.

use crate::error::{Error, Result};
use crate::roots::brent_with_values;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use std::fmt;

/// Parameter space of a scalar interest parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Support {
    /// (−∞, ∞)
    Real,
    /// [0, ∞)
    NonNegative,
    /// (0, ∞)
    Positive,
    /// (−1, 1)
    OpenUnit,
}

impl Support {
    pub fn lo(self) -> f64 {
        match self {
            Support::Real => f64::NEG_INFINITY,
            Support::NonNegative | Support::Positive => 0.0,
            Support::OpenUnit => -1.0,
        }
    }

    pub fn hi(self) -> f64 {
        match self {
            Support::OpenUnit => 1.0,
            _ => f64::INFINITY,
        }
    }

    pub fn lo_closed(self) -> bool {
        self == Support::NonNegative
    }

    pub fn contains(self, psi: f64) -> bool {
        match self {
            Support::Real => psi.is_finite(),
            Support::NonNegative => psi >= 0.0 && psi.is_finite(),
            Support::Positive => psi > 0.0 && psi.is_finite(),
            Support::OpenUnit => psi > -1.0 && psi < 1.0,
        }
    }

    /// The whole support as a region.
    pub fn as_region(self) -> Region {
        Region::from_pieces(vec![Piece {
            lo: self.lo(),
            hi: self.hi(),
            lo_open: !self.lo_closed(),
            hi_open: true,
        }])
    }

    /// Coordinate in which the support is unbounded (or half-bounded for
    /// [0, ∞)), used to step outward during searches.
    pub fn to_search(self, psi: f64) -> f64 {
        match self {
            Support::Real | Support::NonNegative => psi,
            Support::Positive => psi.ln(),
            Support::OpenUnit => psi.atanh(),
        }
    }

    pub fn from_search(self, t: f64) -> f64 {
        match self {
            Support::Real | Support::NonNegative => t,
            Support::Positive => t.exp(),
            Support::OpenUnit => t.tanh(),
        }
    }

    // dt/dψ, to turn a ψ-scale hint into a search-coordinate step
    fn search_jacobian(self, psi: f64) -> f64 {
        match self {
            Support::Real | Support::NonNegative => 1.0,
            Support::Positive => 1.0 / psi,
            Support::OpenUnit => 1.0 / (1.0 - psi * psi),
        }
    }
}

/// Shape classification of a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Empty,
    Interval,
    TwoRays,
    WholeLine,
    Union,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Shape::Empty => "empty",
            Shape::Interval => "interval",
            Shape::TwoRays => "two_rays",
            Shape::WholeLine => "whole_line",
            Shape::Union => "union",
        };
        f.write_str(s)
    }
}

/// One interval with possibly infinite ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Piece {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, false, false)
    }

    pub fn open(lo: f64, hi: f64) -> Self {
        Self::new(lo, hi, true, true)
    }

    /// Infinite ends are always open.
    pub fn new(lo: f64, hi: f64, lo_open: bool, hi_open: bool) -> Self {
        Self {
            lo,
            hi,
            lo_open: lo_open || lo.is_infinite(),
            hi_open: hi_open || hi.is_infinite(),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open {
            x > self.lo
        } else {
            x >= self.lo
        };
        let below = if self.hi_open {
            x < self.hi
        } else {
            x <= self.hi
        };
        above && below
    }

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open))
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// True if the closed interval `[a, b]` lies inside this piece.
    pub fn covers(&self, a: f64, b: f64) -> bool {
        let left = if self.lo_open {
            a > self.lo
        } else {
            a >= self.lo
        };
        let right = if self.hi_open {
            b < self.hi
        } else {
            b <= self.hi
        };
        left && right
    }
}

/// A finite union of disjoint intervals, sorted left to right.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    shape: Shape,
    pieces: Vec<Piece>,
}

impl Region {
    pub fn empty() -> Self {
        Self {
            shape: Shape::Empty,
            pieces: Vec::new(),
        }
    }

    pub fn whole_line() -> Self {
        Self::from_pieces(vec![Piece::open(f64::NEG_INFINITY, f64::INFINITY)])
    }

    pub fn interval(piece: Piece) -> Self {
        Self::from_pieces(vec![piece])
    }

    /// Normalizes arbitrary pieces: drops empty ones, sorts, merges
    /// overlapping or touching pieces, and classifies the shape.
    pub fn from_pieces(pieces: Vec<Piece>) -> Self {
        let mut ps: Vec<Piece> = pieces
            .into_iter()
            .map(|p| Piece::new(p.lo, p.hi, p.lo_open, p.hi_open))
            .filter(|p| !p.is_empty() && !p.lo.is_nan() && !p.hi.is_nan())
            .collect();
        ps.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.lo_open.cmp(&b.lo_open)));
        let mut merged: Vec<Piece> = Vec::with_capacity(ps.len());
        for p in ps {
            if let Some(last) = merged.last_mut() {
                let joins = p.lo < last.hi || (p.lo == last.hi && !(p.lo_open && last.hi_open));
                if joins {
                    if p.lo == last.lo {
                        last.lo_open &= p.lo_open;
                    }
                    if p.hi > last.hi {
                        last.hi = p.hi;
                        last.hi_open = p.hi_open;
                    } else if p.hi == last.hi {
                        last.hi_open &= p.hi_open;
                    }
                    continue;
                }
            }
            merged.push(p);
        }
        let shape = match merged.as_slice() {
            [] => Shape::Empty,
            [p] if p.lo == f64::NEG_INFINITY && p.hi == f64::INFINITY => Shape::WholeLine,
            [_] => Shape::Interval,
            [a, b] if a.lo == f64::NEG_INFINITY && b.hi == f64::INFINITY => Shape::TwoRays,
            _ => Shape::Union,
        };
        Self {
            shape,
            pieces: merged,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    /// True if the closed interval `[a, b]` lies inside one piece.
    pub fn covers(&self, a: f64, b: f64) -> bool {
        self.pieces.iter().any(|p| p.covers(a, b))
    }

    /// Total length; infinite when any piece is unbounded.
    pub fn length(&self) -> f64 {
        self.pieces.iter().map(Piece::length).sum()
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| p.lo.is_finite() && p.hi.is_finite())
    }

    /// Complement in the real line.
    pub fn complement(&self) -> Region {
        let mut out = Vec::with_capacity(self.pieces.len() + 1);
        let mut lo = f64::NEG_INFINITY;
        let mut lo_open = true;
        for p in &self.pieces {
            out.push(Piece::new(lo, p.lo, lo_open, !p.lo_open));
            lo = p.hi;
            lo_open = !p.hi_open;
        }
        out.push(Piece::new(lo, f64::INFINITY, lo_open, true));
        Region::from_pieces(out)
    }

    /// Intersection with another region.
    pub fn intersect(&self, other: &Region) -> Region {
        let mut out = Vec::new();
        for a in &self.pieces {
            for b in &other.pieces {
                let (lo, lo_open) = if a.lo > b.lo {
                    (a.lo, a.lo_open)
                } else if b.lo > a.lo {
                    (b.lo, b.lo_open)
                } else {
                    (a.lo, a.lo_open || b.lo_open)
                };
                let (hi, hi_open) = if a.hi < b.hi {
                    (a.hi, a.hi_open)
                } else if b.hi < a.hi {
                    (b.hi, b.hi_open)
                } else {
                    (a.hi, a.hi_open || b.hi_open)
                };
                out.push(Piece::new(lo, hi, lo_open, hi_open));
            }
        }
        Region::from_pieces(out)
    }

    /// Whether every piece of `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &Region) -> bool {
        self.pieces.iter().all(|p| {
            other.pieces.iter().any(|q| {
                let left = p.lo > q.lo || (p.lo == q.lo && (p.lo_open || !q.lo_open));
                let right = p.hi < q.hi || (p.hi == q.hi && (p.hi_open || !q.hi_open));
                left && right
            })
        })
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("{}");
        }
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(
                f,
                "{}{}, {}{}",
                if p.lo_open { '(' } else { '[' },
                p.lo,
                p.hi,
                if p.hi_open { ')' } else { ']' }
            )?;
        }
        Ok(())
    }
}

/// Number or the string sentinels used for infinite endpoints.
#[derive(Serialize)]
#[serde(untagged)]
enum Bound {
    Num(f64),
    Text(&'static str),
}

fn bound(x: f64) -> Bound {
    if x == f64::INFINITY {
        Bound::Text("+inf")
    } else if x == f64::NEG_INFINITY {
        Bound::Text("-inf")
    } else {
        Bound::Num(x)
    }
}

impl Serialize for Piece {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Piece", 4)?;
        st.serialize_field("lo", &bound(self.lo))?;
        st.serialize_field("hi", &bound(self.hi))?;
        st.serialize_field("lo_open", &self.lo_open)?;
        st.serialize_field("hi_open", &self.hi_open)?;
        st.end()
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Region", 2)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("pieces", &self.pieces)?;
        st.end()
    }
}

/// Tuning for region extraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    /// Endpoint tolerance in ψ units.
    pub tol: f64,
    /// Maximum number of step doublings when bracketing an endpoint.
    pub max_expand: usize,
    /// Points in the post-extraction consistency scan; 0 disables it.
    pub grid: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            max_expand: 60,
            grid: 512,
        }
    }
}

impl SearchConfig {
    /// Default settings without the consistency scan, for inner loops.
    pub fn fast() -> Self {
        Self {
            grid: 0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::domain("search tolerance must be positive"));
        }
        Ok(())
    }
}

/// A scalar plausibility function ψ ↦ pl(ψ) ∈ [0, 1].
pub trait PlausibilityCurve {
    fn plausibility(&self, psi: f64) -> Result<f64>;

    fn support(&self) -> Support;

    /// A point of maximal plausibility.
    fn mode(&self) -> Result<f64>;

    /// Rough spread of the curve in ψ units, used as the first search step.
    fn scale_hint(&self) -> f64;

    /// Exact superlevel set, for curves that have one.
    fn closed_form_region(&self, _alpha: f64) -> Option<Result<Region>> {
        None
    }
}

/// The superlevel set `{ψ : pl(ψ) > α}` of a unimodal curve.
///
/// From the mode, each side steps outward (doubling in the support's search
/// coordinate) until the curve drops to α, then Brent's method locates the
/// crossing. Crossing points are excluded. A side whose plausibility never
/// falls to α and has stopped decreasing is reported as unbounded; one that is
/// still decreasing after `max_expand` doublings is a search error.
pub fn extract_region<C: PlausibilityCurve + ?Sized>(
    curve: &C,
    alpha: f64,
    search: &SearchConfig,
) -> Result<Region> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    search.validate()?;
    if let Some(region) = curve.closed_form_region(alpha) {
        return region;
    }
    let support = curve.support();
    let mode = curve.mode()?;
    let top = curve.plausibility(mode)?;
    if top <= alpha {
        return Ok(Region::empty());
    }
    let jac = support.search_jacobian(mode);
    let mut step = curve.scale_hint().abs() * jac;
    if !(step.is_finite() && step > 0.0) {
        step = 1.0;
    }
    let step = step.max(1e-8);
    let (lo, lo_open) = side(curve, alpha, mode, top, -1.0, step, search)?;
    let (hi, hi_open) = side(curve, alpha, mode, top, 1.0, step, search)?;
    let region = Region::interval(Piece::new(lo, hi, lo_open, hi_open));
    if search.grid > 0 {
        scan(curve, alpha, &region, search)?;
    }
    Ok(region)
}

fn side<C: PlausibilityCurve + ?Sized>(
    curve: &C,
    alpha: f64,
    mode: f64,
    top: f64,
    dir: f64,
    step: f64,
    search: &SearchConfig,
) -> Result<(f64, bool)> {
    let support = curve.support();
    let (edge, edge_closed) = if dir < 0.0 {
        (support.lo(), support.lo_closed())
    } else {
        (support.hi(), false)
    };
    let t_mode = support.to_search(mode);
    let h = |psi: f64| curve.plausibility(psi).map(|p| p - alpha);
    let mut psi_in = mode;
    let mut h_in = top - alpha;
    let mut width = step;
    let mut rising = false;
    for _ in 0..=search.max_expand {
        let psi_out = support.from_search(t_mode + dir * width);
        let at_edge = !support.contains(psi_out) || psi_out == edge;
        if at_edge && edge.is_finite() {
            if !edge_closed {
                // numerically at an open edge with the curve still above α
                return Ok((edge, true));
            }
            let h_edge = h(edge)?;
            if h_edge > 0.0 {
                return Ok((edge, false));
            }
            let root = bracketed_root(&h, psi_in, h_in, edge, h_edge, search.tol)?;
            return Ok((root, true));
        }
        if at_edge {
            // the search coordinate ran past the largest representable ψ
            return Ok((edge, true));
        }
        let h_out = h(psi_out)?;
        if h_out <= 0.0 {
            let root = bracketed_root(&h, psi_in, h_in, psi_out, h_out, search.tol)?;
            return Ok((root, true));
        }
        rising = h_out >= h_in;
        psi_in = psi_out;
        h_in = h_out;
        width *= 2.0;
    }
    if rising && edge.is_infinite() {
        // plateau or rising tail above α far out: the side is unbounded
        return Ok((edge, true));
    }
    Err(Error::Search {
        what: format!(
            "plausibility still above {alpha} after {} expansions",
            search.max_expand
        ),
        lo: mode.min(psi_in),
        hi: mode.max(psi_in),
    })
}

fn bracketed_root<H>(h: &H, a: f64, ha: f64, b: f64, hb: f64, tol: f64) -> Result<f64>
where
    H: Fn(f64) -> Result<f64>,
{
    // the bracket keeps h > 0 on the inner side, h <= 0 on the outer one
    let (lo, hi, hlo, hhi) = if a < b {
        (a, b, ha, hb)
    } else {
        (b, a, hb, ha)
    };
    if hhi == 0.0 {
        return Ok(hi);
    }
    if hlo == 0.0 {
        return Ok(lo);
    }
    brent_with_values(h, lo, hi, hlo, hhi, tol)
}

// Grid check that the interval really is the superlevel set, to catch
// curves that are not unimodal.
fn scan<C: PlausibilityCurve + ?Sized>(
    curve: &C,
    alpha: f64,
    region: &Region,
    search: &SearchConfig,
) -> Result<()> {
    let support = curve.support();
    let p = region.pieces()[0];
    let mode_t = support.to_search(curve.mode()?);
    let half = (curve.scale_hint().abs() * support.search_jacobian(curve.mode()?)).max(1e-8);
    let t_lo = if p.lo.is_finite() && support.contains(p.lo) {
        support.to_search(p.lo)
    } else {
        mode_t - 10.0 * half
    };
    let t_hi = if p.hi.is_finite() && support.contains(p.hi) {
        support.to_search(p.hi)
    } else {
        mode_t + 10.0 * half
    };
    let margin = 0.5 * (t_hi - t_lo).max(half);
    let (a, b) = (t_lo - margin, t_hi + margin);
    let n = search.grid.max(2);
    let slack = 1e-7;
    for i in 0..n {
        let t = a + (b - a) * i as f64 / (n - 1) as f64;
        let psi = support.from_search(t);
        if !support.contains(psi) {
            continue;
        }
        if (psi - p.lo).abs() <= 10.0 * search.tol || (psi - p.hi).abs() <= 10.0 * search.tol {
            continue;
        }
        let pl = curve.plausibility(psi)?;
        let inside = region.contains(psi);
        if (inside && pl < alpha - slack) || (!inside && pl > alpha + slack) {
            return Err(Error::Search {
                what: format!("plausibility curve is not unimodal near psi = {psi}"),
                lo: p.lo,
                hi: p.hi,
            });
        }
    }
    Ok(())
}
