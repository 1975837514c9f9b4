//! Bracketed one-dimensional root finding.
//!
//! Every solver here starts from a sign-changing bracket and never leaves it:
//! Brent's method mixes bisection with secant and inverse quadratic steps, so
//! convergence is guaranteed for continuous functions and fast for smooth ones.

use crate::error::{Error, Result};

const MAX_ITER: usize = 500;

/// Brent's method on `[a, b]`, where `f(a)` and `f(b)` must not share a sign.
///
/// Stops once the bracket is narrower than `xtol` (plus a few ulps of the
/// iterate), or when an exact zero is hit.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let fa = f(a)?;
    let fb = f(b)?;
    brent_with_values(f, a, b, fa, fb, xtol)
}

/// Same as [`brent`] when the end-point values are already known.
pub fn brent_with_values<F>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.is_nan() || fb.is_nan() || fa.signum() == fb.signum() {
        return Err(Error::Search {
            what: "root is not bracketed".into(),
            lo: a,
            hi: b,
        });
    }

    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                // secant
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                // inverse quadratic interpolation
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }

    Err(Error::Search {
        what: "Brent iteration limit reached".into(),
        lo: b.min(c),
        hi: b.max(c),
    })
}

/// Solves `f(x) = target` for a nondecreasing `f` on the open interval
/// `(lo_limit, hi_limit)`, starting the bracket search at `x0` with initial
/// half-width `step` and doubling up to `max_expand` times.
pub fn invert_increasing<F>(
    mut f: F,
    target: f64,
    x0: f64,
    step: f64,
    lo_limit: f64,
    hi_limit: f64,
    xtol: f64,
    max_expand: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut g = |x: f64| f(x).map(|v| v - target);
    let g0 = g(x0)?;
    if g0 == 0.0 {
        return Ok(x0);
    }
    let dir = if g0 < 0.0 { 1.0 } else { -1.0 };
    let mut inner = x0;
    let mut g_inner = g0;
    let mut width = step.abs().max(f64::MIN_POSITIVE);
    for _ in 0..=max_expand {
        let mut outer = x0 + dir * width;
        if outer <= lo_limit {
            outer = 0.5 * (inner + lo_limit);
        }
        if outer >= hi_limit {
            outer = 0.5 * (inner + hi_limit);
        }
        let g_outer = g(outer)?;
        if g_outer.signum() != g_inner.signum() || g_outer == 0.0 {
            let (a, b, ga, gb) = if inner < outer {
                (inner, outer, g_inner, g_outer)
            } else {
                (outer, inner, g_outer, g_inner)
            };
            return brent_with_values(&mut g, a, b, ga, gb, xtol);
        }
        inner = outer;
        g_inner = g_outer;
        width *= 2.0;
    }
    Err(Error::Search {
        what: format!("could not bracket level {target}"),
        lo: inner.min(x0),
        hi: inner.max(x0),
    })
}
