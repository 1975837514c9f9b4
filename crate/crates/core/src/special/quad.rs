//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // integral of |f|, which sets the rounding floor for the error estimate
    abs_value: f64,
}

fn gk15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.abs() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (f(center - dx)?, f(center + dx)?);
        let sum = lo + hi;
        kronrod += WGK[j] * sum;
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_value: abs_sum * half.abs(),
    })
}

/// Integrates `f` over `[a, b]`, returning `(value, error_estimate)`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate falls below `abs_tol`, or below the rounding level of the
/// integral when that is larger; exceeding `max_panels` is an accuracy error.
pub fn integrate<F>(mut f: F, a: f64, b: f64, abs_tol: f64, max_panels: usize) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok((0.0, 0.0));
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("quadrature limits must be finite"));
    }
    let mut panels = vec![gk15(&mut f, a, b)?];
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        let rounding: f64 = 50.0 * f64::EPSILON * panels.iter().map(|p| p.abs_value).sum::<f64>();
        if total_err <= abs_tol.max(rounding) {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one panel");
        let p = &panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if panels.len() >= max_panels || mid <= p.a || mid >= p.b {
            let value: f64 = panels.iter().map(|p| p.value).sum();
            return Err(Error::Accuracy {
                what: format!("adaptive quadrature (error estimate {total_err:e})"),
                partial: value,
            });
        }
        let (pa, pb) = (p.a, p.b);
        let left = gk15(&mut f, pa, mid)?;
        let right = gk15(&mut f, mid, pb)?;
        panels[worst] = left;
        panels.push(right);
    }
    // sum in position order for reproducibility independent of refinement order
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value = panels.iter().map(|p| p.value).sum();
    let error = panels.iter().map(|p| p.error).sum();
    Ok((value, error))
}
