//! Invariant checks shared by the property tests and the acceptance harness.
//! Each check returns `Err` with a description of the first violation.
#![allow(dead_code)]

use mim_core::models::{
    behrens_fisher_im, bvn_correlation_im, gamma_mean_im, mean_ratio_plausibility,
    mean_ratio_region, normal_mean_known_var_im, normal_mean_t_im, CorrSummary, GammaSummary,
    NormalSummary, RatioData, TwoSampleSummary, VectorSummary,
};
use mim_core::simulation::{
    dkw_check_default_prs, sample_gamma_logs, simulate_validity, SimulationConfig, TrueModel,
};
use mim_core::special::{
    chisq_cdf, chisq_quantile, digamma, gamma_cdf, halft_mixture_cdf, inc_beta,
    noncentral_chisq_cdf, sample_corr_cdf, std_normal_cdf, std_normal_quantile, student_t_cdf,
    student_t_quantile, HalfTMixture,
};
use mim_core::{
    elastic_mnm_plausibility, AccuracyPolicy, ModelInstance, Monotonicity, Piece,
    PlausibilityCurve, Region, ScalarPivotIm, SearchConfig, Shape,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, ChiSquared, Distribution, Gamma, StandardNormal, StudentT};

pub type Check = Result<(), String>;

type Func = Box<dyn Fn(f64) -> mim_core::Result<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: mim_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

pub const PROBS: [f64; 7] = [0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99];

// ---------------------------------------------------------------- special

/// cdf(quantile(p)) = p within 10·quantile_tol.
pub fn roundtrips() -> Check {
    let tol = 10.0 * AccuracyPolicy::default().quantile_tol;
    let mut pairs: Vec<(String, Func, Func)> = vec![(
        "normal".into(),
        Box::new(|x| Ok(std_normal_cdf(x))),
        Box::new(std_normal_quantile),
    )];
    for nu in [0.5, 1.0, 2.5, 10.0, 80.0] {
        pairs.push((
            format!("t({nu})"),
            Box::new(move |x| student_t_cdf(x, nu)),
            Box::new(move |p| student_t_quantile(p, nu)),
        ));
        pairs.push((
            format!("chisq({nu})"),
            Box::new(move |x| chisq_cdf(x, nu)),
            Box::new(move |p| chisq_quantile(p, nu)),
        ));
    }
    for n in [2, 3, 5, 20] {
        let g = ok(HalfTMixture::for_sample_size(n), "half-t")?;
        pairs.push((
            format!("halft({n})"),
            Box::new(move |x| g.cdf(x)),
            Box::new(move |p| g.quantile(p)),
        ));
    }
    for (name, cdf, quantile) in &pairs {
        for p in PROBS {
            let q = ok(quantile(p), name)?;
            let back = ok(cdf(q), name)?;
            ensure((back - p).abs() <= tol, || {
                format!("{name}: cdf(quantile({p})) = {back}")
            })?;
        }
    }
    Ok(())
}

/// Every distribution function is nondecreasing with values in [0, 1].
pub fn cdfs_monotone() -> Check {
    let xs: Vec<f64> = (0..=200).map(|k| -10.0 + 0.1 * k as f64).collect();
    let pos: Vec<f64> = (0..=200).map(|k| 0.15 * k as f64).collect();
    let unit: Vec<f64> = (1..200).map(|k| -1.0 + 0.01 * k as f64).collect();
    let mut cases: Vec<(String, &Vec<f64>, Func)> = vec![
        ("normal".into(), &xs, Box::new(|x| Ok(std_normal_cdf(x)))),
        ("t(3)".into(), &xs, Box::new(|x| student_t_cdf(x, 3.0))),
        (
            "halft(4)".into(),
            &xs,
            Box::new(|x| halft_mixture_cdf(x, 4)),
        ),
        ("chisq(2.5)".into(), &pos, Box::new(|x| chisq_cdf(x, 2.5))),
        (
            "ncx2(4, 3)".into(),
            &pos,
            Box::new(|x| noncentral_chisq_cdf(x, 4.0, 3.0)),
        ),
        (
            "gamma(0.7, 2)".into(),
            &pos,
            Box::new(|x| gamma_cdf(x, 0.7, 2.0)),
        ),
        (
            "corr(8, 0.4)".into(),
            &unit,
            Box::new(|r| sample_corr_cdf(r, 8, 0.4)),
        ),
    ];
    cases.push((
        "beta(2, 3)".into(),
        &unit,
        Box::new(|x| inc_beta(2.0, 3.0, 0.5 * (x + 1.0))),
    ));
    for (name, grid, f) in &cases {
        let mut prev = 0.0;
        for &x in grid.iter() {
            let v = ok(f(x), name)?;
            ensure((0.0..=1.0).contains(&v), || {
                format!("{name}({x}) = {v} outside [0, 1]")
            })?;
            ensure(v >= prev - 1e-14, || {
                format!("{name} decreases at {x}: {prev} -> {v}")
            })?;
            prev = v;
        }
    }
    Ok(())
}

pub fn noncentral_at_zero() -> Check {
    let tol = AccuracyPolicy::default().abs_tol;
    for df in [0.5, 1.0, 2.0, 3.7, 10.0, 50.0] {
        for x in [0.01, 0.3, 1.0, 2.5, 7.0, 20.0, 80.0] {
            let a = ok(noncentral_chisq_cdf(x, df, 0.0), "noncentral")?;
            let b = ok(chisq_cdf(x, df), "chisq")?;
            ensure((a - b).abs() <= tol, || {
                format!("ncx2({x}; {df}, 0) = {a} vs {b}")
            })?;
        }
    }
    Ok(())
}

pub fn halft_unit_scale_is_t() -> Check {
    for n in [2, 3, 6, 30] {
        let g = ok(HalfTMixture::with_scale(n, 1.0), "half-t")?;
        for k in -40..=40 {
            let z = 0.2 * k as f64;
            let a = ok(g.cdf(z), "half-t")?;
            let b = ok(student_t_cdf(z, (n - 1) as f64), "t")?;
            ensure(a == b, || {
                format!("unit-scale half-t({n}) at {z}: {a} vs {b}")
            })?;
        }
    }
    Ok(())
}

pub fn digamma_recurrence() -> Check {
    let tol = AccuracyPolicy::default().abs_tol;
    for k in 1..=40 {
        let x = 0.5 * k as f64;
        let lhs = ok(digamma(x + 1.0), "digamma")?;
        let rhs = ok(digamma(x), "digamma")? + 1.0 / x;
        ensure((lhs - rhs).abs() <= tol, || {
            format!("digamma recurrence at {x}: {lhs} vs {rhs}")
        })?;
    }
    Ok(())
}

/// Compares a distribution function with the empirical CDF of `draws` at
/// the empirical deciles, within `k` binomial standard errors.
pub fn ecdf_agrees(
    name: &str,
    mut draws: Vec<f64>,
    cdf: impl Fn(f64) -> mim_core::Result<f64>,
    k: f64,
) -> Check {
    draws.sort_by(f64::total_cmp);
    let m = draws.len();
    for d in 1..=9 {
        let z = draws[d * m / 10];
        let emp = draws.partition_point(|&x| x <= z) as f64 / m as f64;
        let exact = ok(cdf(z), name)?;
        let se = (exact * (1.0 - exact) / m as f64).sqrt();
        ensure((emp - exact).abs() <= k * se, || {
            format!(
                "{name} at {z}: empirical {emp} vs {exact} ({:.1} SE)",
                (emp - exact).abs() / se
            )
        })?;
    }
    Ok(())
}

fn draw<D: Distribution<f64>>(dist: D, rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| dist.sample(rng)).collect()
}

fn sample_r(rng: &mut ChaCha8Rng, n: usize, rho: f64) -> f64 {
    let c = (1.0 - rho * rho).sqrt();
    let (mut sx, mut sy, mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for _ in 0..n {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        let (x, y) = (a, rho * a + c * b);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    let m = n as f64;
    (sxy - sx * sy / m) / ((sxx - sx * sx / m) * (syy - sy * sy / m)).sqrt()
}

/// Every distribution function against `m` independent draws.
pub fn monte_carlo_agreement(m: usize, seed: u64) -> Check {
    let mut g = rng(seed);
    let k = 4.0;
    ecdf_agrees(
        "normal",
        draw(StandardNormal, &mut g, m),
        |x| Ok(std_normal_cdf(x)),
        k,
    )?;
    ecdf_agrees(
        "t(2.5)",
        draw(StudentT::new(2.5).unwrap(), &mut g, m),
        |x| student_t_cdf(x, 2.5),
        k,
    )?;
    ecdf_agrees(
        "chisq(3.5)",
        draw(ChiSquared::new(3.5).unwrap(), &mut g, m),
        |x| chisq_cdf(x, 3.5),
        k,
    )?;
    ecdf_agrees(
        "gamma(0.6, mean 2)",
        draw(Gamma::new(0.6, 2.0 / 0.6).unwrap(), &mut g, m),
        |x| gamma_cdf(x, 0.6, 2.0),
        k,
    )?;
    ecdf_agrees(
        "beta(2.5, 0.8)",
        draw(Beta::new(2.5, 0.8).unwrap(), &mut g, m),
        |x| inc_beta(2.5, 0.8, x),
        k,
    )?;
    // df = 4 with λ = 6.25 as (Z + 2.5)² plus an independent χ²(3)
    let chi3 = ChiSquared::new(3.0).unwrap();
    let ncx: Vec<f64> = (0..m)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut g);
            (z + 2.5).powi(2) + chi3.sample(&mut g)
        })
        .collect();
    ecdf_agrees(
        "ncx2(4, 6.25)",
        ncx,
        |x| noncentral_chisq_cdf(x, 4.0, 6.25),
        k,
    )?;
    let h = ok(HalfTMixture::for_sample_size(4), "half-t")?;
    let t3 = StudentT::new(3.0).unwrap();
    let mix: Vec<f64> = (0..m)
        .map(|_| {
            let t: f64 = t3.sample(&mut g);
            if g.random::<bool>() {
                t.abs()
            } else {
                -h.neg_scale * t.abs()
            }
        })
        .collect();
    ecdf_agrees("halft(4)", mix, |z| h.cdf(z), k)?;
    for (n, rho) in [(5, 0.6), (12, -0.3)] {
        let rs: Vec<f64> = (0..m).map(|_| sample_r(&mut g, n, rho)).collect();
        ecdf_agrees(
            &format!("corr({n}, {rho})"),
            rs,
            |r| sample_corr_cdf(r, n, rho),
            k,
        )?;
    }
    Ok(())
}

// ---------------------------------------------------------------- regions

/// ψ ∈ region(α) ⇔ pl(ψ) > α at `probes` random points, ignoring points
/// within a relative 1e-6 of a finite endpoint.
pub fn region_matches_curve(m: &ModelInstance, alpha: f64, probes: usize, seed: u64) -> Check {
    let search = SearchConfig {
        tol: 1e-12,
        ..SearchConfig::default()
    };
    let region = ok(m.region(alpha, &search), "region")?;
    let curve = ok(m.curve(), "curve")?;
    let support = curve.support();
    let mode = ok(curve.mode(), "mode")?;
    let scale = curve.scale_hint().max(1e-3);
    let ends: Vec<f64> = region
        .pieces()
        .iter()
        .flat_map(|p| [p.lo, p.hi])
        .filter(|e| e.is_finite())
        .collect();
    let (mut lo, mut hi) = (mode - 10.0 * scale, mode + 10.0 * scale);
    for &e in &ends {
        lo = lo.min(e);
        hi = hi.max(e);
    }
    let pad = 0.5 * (hi - lo);
    let (lo, hi) = (lo - pad, hi + pad);
    let mut g = rng(seed);
    for _ in 0..probes {
        let mut psi = g.random_range(lo..hi);
        if !support.contains(psi) {
            psi = support
                .from_search(g.random_range(-5.0..5.0) + support.to_search(mode.max(support.lo())));
            if !support.contains(psi) {
                continue;
            }
        }
        if ends
            .iter()
            .any(|e| (psi - e).abs() <= 1e-6 * e.abs().max(1.0))
        {
            continue;
        }
        let pl = ok(m.plausibility(psi), "plausibility")?;
        ensure(region.contains(psi) == (pl > alpha), || {
            format!(
                "{:?} at alpha {alpha}: psi {psi} has pl {pl} but region is {region:?}",
                m.id()
            )
        })?;
    }
    Ok(())
}

pub const NEST_ALPHAS: [f64; 7] = [0.01, 0.05, 0.1, 0.2, 0.5, 0.8, 0.95];

/// region(α′) ⊆ region(α) whenever α < α′.
pub fn regions_nest(m: &ModelInstance) -> Check {
    let search = SearchConfig::default();
    let regions: Vec<Region> = NEST_ALPHAS
        .iter()
        .map(|&a| ok(m.region(a, &search), "region"))
        .collect::<Result<_, _>>()?;
    for i in 0..regions.len() {
        for j in i + 1..regions.len() {
            ensure(regions[j].is_subset_of(&regions[i]), || {
                format!(
                    "{:?}: region at {} = {:?} is not inside region at {} = {:?}",
                    m.id(),
                    NEST_ALPHAS[j],
                    regions[j],
                    NEST_ALPHAS[i],
                    regions[i]
                )
            })?;
        }
    }
    Ok(())
}

/// A spread of model instances covering every catalog model.
pub fn catalog_instances() -> Vec<ModelInstance> {
    vec![
        ModelInstance::NormalMean {
            summary: NormalSummary::new(4, 1.3, None).unwrap(),
            sigma: 2.0,
        },
        ModelInstance::NormalMeanT {
            summary: NormalSummary::new(3, -0.4, Some(0.9)).unwrap(),
        },
        ModelInstance::Correlation {
            summary: CorrSummary::new(9, 0.72).unwrap(),
        },
        ModelInstance::Correlation {
            summary: CorrSummary::new(4, -0.2).unwrap(),
        },
        ModelInstance::MeanRatio {
            data: RatioData::new(4.0, 3.0).unwrap(),
        },
        ModelInstance::MeanRatio {
            data: RatioData::new(2.5, 0.5).unwrap(),
        },
        ModelInstance::Mnm {
            summary: VectorSummary::new(3, 12.0).unwrap(),
        },
        ModelInstance::Mnm {
            summary: VectorSummary::new(5, 1.5).unwrap(),
        },
        ModelInstance::BehrensFisher {
            summary: TwoSampleSummary::new(3, 6, 1.0, 2.5, 0.8, 2.0).unwrap(),
        },
        ModelInstance::GammaMean {
            summary: GammaSummary::new(6, 1.2, 0.95).unwrap(),
        },
        ModelInstance::GammaMean {
            summary: GammaSummary::new(2, 0.0, -0.6).unwrap(),
        },
    ]
}

pub fn catalog_regions(probes: usize) -> Check {
    for (i, m) in catalog_instances().iter().enumerate() {
        for (j, alpha) in [0.01, 0.05, 0.3, 0.9].into_iter().enumerate() {
            region_matches_curve(m, alpha, probes, (i * 10 + j) as u64)?;
        }
        regions_nest(m)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- models

fn monotone_pivots() -> Vec<(String, Vec<f64>, Vec<ScalarPivotIm>)> {
    let psis = |lo: f64, hi: f64| -> Vec<f64> {
        (0..50).map(|k| lo + (hi - lo) * k as f64 / 49.0).collect()
    };
    let stats: Vec<f64> = (0..10).map(|k| -2.0 + 0.45 * k as f64).collect();
    let mut out = Vec::new();
    out.push((
        "normal-mean".into(),
        psis(-5.0, 5.0),
        stats
            .iter()
            .map(|&m| {
                normal_mean_known_var_im(&NormalSummary::new(5, m, None).unwrap(), 1.5).unwrap()
            })
            .collect(),
    ));
    out.push((
        "normal-mean-t".into(),
        psis(-5.0, 5.0),
        stats
            .iter()
            .map(|&m| normal_mean_t_im(&NormalSummary::new(4, m, Some(1.2)).unwrap()).unwrap())
            .collect(),
    ));
    out.push((
        "behrens-fisher".into(),
        psis(-6.0, 6.0),
        stats
            .iter()
            .map(|&m| {
                behrens_fisher_im(&TwoSampleSummary::new(3, 5, 0.0, m, 1.0, 2.0).unwrap()).unwrap()
            })
            .collect(),
    ));
    out.push((
        "correlation".into(),
        psis(-0.98, 0.98),
        (0..10)
            .map(|k| {
                bvn_correlation_im(&CorrSummary::new(7, -0.9 + 0.2 * k as f64).unwrap()).unwrap()
            })
            .collect(),
    ));
    out.push((
        "gamma-mean".into(),
        psis(0.05, 12.0),
        (0..10)
            .map(|k| {
                let t1 = -0.5 + 0.25 * k as f64;
                gamma_mean_im(&GammaSummary::new(4, t1, t1 - 0.3).unwrap()).unwrap()
            })
            .collect(),
    ));
    out
}

/// F_ψ(s) is nonincreasing in ψ and nondecreasing in the statistic.
pub fn pivots_monotone() -> Check {
    for (name, psis, ims) in monotone_pivots() {
        let table: Vec<Vec<f64>> = ims
            .iter()
            .map(|im| {
                ensure(im.monotonicity() == Monotonicity::DecreasingInPsi, || {
                    format!("{name} monotonicity")
                })?;
                psis.iter().map(|&p| ok(im.pivot_cdf(p), &name)).collect()
            })
            .collect::<Result<_, _>>()?;
        for (i, row) in table.iter().enumerate() {
            for j in 1..row.len() {
                ensure(row[j] <= row[j - 1] + 1e-13, || {
                    format!("{name}: pivot increases in psi at {} (stat #{i})", psis[j])
                })?;
                if i > 0 {
                    ensure(row[j] + 1e-13 >= table[i - 1][j], || {
                        format!(
                            "{name}: pivot decreases in the statistic at psi {} (stat #{i})",
                            psis[j]
                        )
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// pl = 1 where F_ψ(s) = ½ and pl → 0 in both tails.
pub fn plausibility_peak_and_tails() -> Check {
    let im = normal_mean_t_im(&NormalSummary::new(6, 2.0, Some(1.0)).unwrap()).unwrap();
    let pl = ok(im.plausibility(2.0), "pl")?;
    ensure(pl == 1.0, || format!("pl at the median is {pl}"))?;
    for psi in [-1e3, 1e3] {
        let pl = ok(im.plausibility(psi), "pl")?;
        ensure(pl < 1e-6, || format!("pl({psi}) = {pl}"))?;
    }
    Ok(())
}

/// bel(A) = 1 − pl(Aᶜ), bel ≤ pl, and the quadrature agrees with the
/// closed form 1 − max(pl(a), pl(b)) for intervals around the mode.
pub fn belief_duality() -> Check {
    let grid = 4001;
    let tol = 2.0 / grid as f64;
    let ims = [
        normal_mean_t_im(&NormalSummary::new(5, 0.3, Some(1.1)).unwrap()).unwrap(),
        bvn_correlation_im(&CorrSummary::new(10, 0.4).unwrap()).unwrap(),
        gamma_mean_im(&GammaSummary::new(5, 0.7, 0.5).unwrap()).unwrap(),
    ];
    for im in &ims {
        let mode = ok(im.mode(), "mode")?;
        let s = im.support();
        let t = s.to_search(mode);
        for (da, db) in [(0.1, 0.2), (0.05, 0.5), (0.4, 0.01), (1.0, 1.0)] {
            let (a, b) = (s.from_search(t - da), s.from_search(t + db));
            let a_set = Region::interval(Piece::closed(a, b));
            let bel = ok(im.belief(&a_set, grid), "belief")?;
            let pl_c = ok(
                im.assertion_plausibility(&a_set.complement(), grid),
                "plausibility",
            )?;
            ensure((bel - (1.0 - pl_c)).abs() < 1e-12, || {
                format!("duality: bel {bel}, pl(complement) {pl_c}")
            })?;
            let pl = ok(im.assertion_plausibility(&a_set, grid), "plausibility")?;
            ensure(bel <= pl, || {
                format!("belief {bel} above plausibility {pl}")
            })?;
            let exact = 1.0 - ok(im.plausibility(a), "pl")?.max(ok(im.plausibility(b), "pl")?);
            ensure((bel - exact).abs() <= tol, || {
                format!("belief of [{a}, {b}] is {bel}, expected {exact}")
            })?;
        }
        // a single point: the assertion plausibility is the contour
        for d in [0.05, 0.3, 1.5] {
            let psi = s.from_search(t + d);
            let point = Region::interval(Piece::closed(psi, psi));
            let pl = ok(im.assertion_plausibility(&point, grid), "plausibility")?;
            let contour = ok(im.plausibility(psi), "pl")?;
            ensure((pl - contour).abs() <= tol, || {
                format!("singleton {psi}: {pl} vs contour {contour}")
            })?;
        }
    }
    Ok(())
}

/// Values lie in [0, 1] and the curve is unimodal: nonincreasing once past
/// its peak, and nonincreasing from ψ = 0 when the set is stretched.
pub fn elastic_bounded_and_monotone() -> Check {
    for n in [1, 2, 5, 10, 40] {
        for x in [0.0, 0.05, 0.5, 1.0, 3.0, 8.0, 30.0, 100.0] {
            let stretched = ok(noncentral_chisq_cdf(x, n as f64, 0.0), "ncx2")? < 0.5;
            let mut prev = f64::INFINITY;
            let mut falling = stretched;
            for k in 0..=120 {
                let psi = 0.1 * k as f64;
                let pl = ok(elastic_mnm_plausibility(x, n, psi), "elastic")?;
                ensure((0.0..=1.0).contains(&pl), || {
                    format!("elastic pl({x}, {n}, {psi}) = {pl}")
                })?;
                if stretched && k == 0 {
                    ensure(pl == 1.0, || format!("stretched pl({x}, {n}, 0) = {pl}"))?;
                }
                if falling {
                    ensure(pl <= prev + 1e-12, || {
                        format!("elastic pl({x}, {n}) rises again at {psi}")
                    })?;
                } else if k > 0 && pl < prev - 1e-12 {
                    falling = true;
                }
                prev = pl;
            }
        }
    }
    Ok(())
}

/// Every (x1, x2, α) yields an interval, two rays or the whole line, and
/// random probes agree with the plausibility threshold.
pub fn fieller_exhaustive(triples: usize, probes: usize, seed: u64) -> Check {
    let mut g = rng(seed);
    let mut counts = [0usize; 3];
    for _ in 0..triples {
        let (x1, x2) = (g.random_range(-4.0..4.0), g.random_range(-4.0..4.0));
        let alpha = g.random_range(0.001..0.999);
        let d = RatioData::new(x1, x2).map_err(|e| e.to_string())?;
        let region = ok(mean_ratio_region(&d, alpha), "fieller")?;
        match region.shape() {
            Shape::Interval => counts[0] += 1,
            Shape::TwoRays => counts[1] += 1,
            Shape::WholeLine => counts[2] += 1,
            other => return fail(format!("({x1}, {x2}, {alpha}) gave shape {other}")),
        }
        let ends: Vec<f64> = region
            .pieces()
            .iter()
            .flat_map(|p| [p.lo, p.hi])
            .filter(|e| e.is_finite())
            .collect();
        let centre = if x2 != 0.0 { x1 / x2 } else { 0.0 };
        for _ in 0..probes {
            // Cauchy-spread probes reach both tails
            let u: f64 = g.random_range(0.0..1.0);
            let psi = centre + 2.0 * (std::f64::consts::PI * (u - 0.5)).tan();
            if !psi.is_finite()
                || ends
                    .iter()
                    .any(|e| (psi - e).abs() <= 1e-9 * e.abs().max(1.0))
            {
                continue;
            }
            let pl = mean_ratio_plausibility(&d, psi);
            ensure(region.contains(psi) == (pl > alpha), || {
                format!("({x1}, {x2}, {alpha}): psi {psi} has pl {pl}, region {region:?}")
            })?;
        }
    }
    ensure(counts.iter().all(|&c| c > 0), || {
        format!("shape counts {counts:?} miss a case")
    })
}

// ---------------------------------------------------------------- simulation

/// Bit-identical reports for several chunk counts.
pub fn chunking_is_deterministic() -> Check {
    for model in [
        TrueModel::Mnm { n: 3, psi: 1.0 },
        TrueModel::GammaMean {
            n: 4,
            shape: 0.8,
            mean: 2.0,
        },
        TrueModel::BehrensFisher {
            n1: 3,
            n2: 5,
            psi: 0.5,
            xi: 0.3,
        },
    ] {
        let mut reports = Vec::new();
        for chunks in [1, 3, 8, 64] {
            let mut cfg = SimulationConfig::new(model, 2000, vec![0.05, 0.5], 17);
            cfg.parallel_chunks = chunks;
            let r = ok(simulate_validity(&cfg), "validity")?;
            reports.push(format!("{r:?}"));
        }
        ensure(reports.windows(2).all(|w| w[0] == w[1]), || {
            format!("{model:?} depends on chunking")
        })?;
    }
    Ok(())
}

/// |2U − 1| is uniform within the DKW band.
pub fn default_set_is_valid() -> Check {
    let c = ok(dkw_check_default_prs(100_000, 5, 0.001), "dkw")?;
    ensure(c.within_band, || {
        format!("KS distance {} exceeds the band {}", c.ks_distance, c.band)
    })
}

/// The t-pivot plausibility of μ0 against a two-dimensional Monte Carlo of
/// the cylinder set S1 × (0, ∞) built from (U1, U2).
pub fn projection_equivalence(m: usize, seed: u64) -> Check {
    let (n, xbar, s) = (5usize, 0.4, 1.3);
    let im = normal_mean_t_im(&NormalSummary::new(n, xbar, Some(s)).unwrap()).unwrap();
    let df = (n - 1) as f64;
    let chi = ChiSquared::new(df).unwrap();
    let mut g = rng(seed);
    // |F(V1) − ½| for V1 = U1/U2, with U1 ~ N(0, 1) and U2 = (χ²/df)^{1/2}
    let spread: Vec<f64> = (0..m)
        .map(|_| {
            let u1: f64 = StandardNormal.sample(&mut g);
            let u2 = (chi.sample(&mut g) / df).sqrt();
            student_t_cdf(u1 / u2, df).map(|f| (f - 0.5).abs())
        })
        .collect::<mim_core::Result<_>>()
        .map_err(|e| e.to_string())?;
    for mu0 in [-1.5, -0.2, 0.4, 0.9, 2.5] {
        // the cylinder meets {μ0} × (0, ∞) iff the observed t for μ0 lies in S1
        let t0 = (n as f64).sqrt() * (xbar - mu0) / s;
        let d0 = (ok(student_t_cdf(t0, df), "t")? - 0.5).abs();
        let hits = spread.iter().filter(|&&d| d >= d0).count() as f64 / m as f64;
        let pl = ok(im.plausibility(mu0), "pl")?;
        let se = (pl * (1.0 - pl) / m as f64).sqrt().max(1.0 / m as f64);
        ensure((hits - pl).abs() <= 4.0 * se, || {
            format!("mu0 {mu0}: 2-D estimate {hits}, marginal {pl}")
        })?;
    }
    Ok(())
}

/// Largest gap between an empirical CDF and a distribution function.
pub fn ks_distance(
    mut draws: Vec<f64>,
    cdf: impl Fn(f64) -> mim_core::Result<f64>,
) -> Result<f64, String> {
    draws.sort_by(f64::total_cmp);
    let m = draws.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in draws.iter().enumerate() {
        let f = ok(cdf(x), "cdf")?;
        d = d
            .max((f - i as f64 / m).abs())
            .max(((i + 1) as f64 / m - f).abs());
    }
    Ok(d)
}

/// 2nαV2 approaches χ²(2n − 2) as α → 0 and χ²(n − 1) as α → ∞.
pub fn jensen_limits(reps: usize, seed: u64) -> Check {
    let n = 5usize;
    let mut g = rng(seed);
    for (shape, df) in [(1e-3, (2 * n - 2) as f64), (1e3, (n - 1) as f64)] {
        let draws: Vec<f64> = (0..reps)
            .map(|_| 2.0 * n as f64 * shape * sample_gamma_logs(&mut g, n, shape).1)
            .collect();
        let d = ks_distance(draws, |x| chisq_cdf(x, df))?;
        ensure(d < 0.02, || {
            format!("shape {shape}: KS distance {d} from chi-square({df})")
        })?;
    }
    Ok(())
}
