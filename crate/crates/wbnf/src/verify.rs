//! Self-check of the library against the independent oracles and a few
//! reference constants.

use std::fmt::Write as _;

use wbnf_core::array::{
    check_fresnel_region, gain_exact, gain_lemma1, ArrayGeometry, ObserverPoint, Variant,
};
use wbnf_core::fresnel::{fresnel_cs, gain_closed_form, gain_narrowband, GammaPair};
use wbnf_core::regime::{
    band_distance, d_erd, d_fa, gamma_from_regime, product_max, Regime, ThresholdSpec,
};

use crate::oracle;

/// One verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Short identifier.
    pub name: &'static str,
    /// Largest observed deviation.
    pub error: f64,
    /// Allowed deviation.
    pub tolerance: f64,
}

impl Check {
    /// Whether the check is within tolerance. NaN errors fail.
    pub fn passed(&self) -> bool {
        self.error <= self.tolerance
    }
}

/// All checks in run order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    /// The checks.
    pub checks: Vec<Check>,
}

impl Report {
    /// Number of failed checks.
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }

    /// One `PASS`/`FAIL` line per check plus a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{status}  {:<32} error {:.3e}  tolerance {:.1e}",
                c.name, c.error, c.tolerance
            );
        }
        let _ = writeln!(
            out,
            "{} of {} checks passed",
            self.checks.len() - self.failures(),
            self.checks.len()
        );
        out
    }
}

/// Deterministic low-discrepancy points in `[lo, hi]`.
fn golden_points(n: usize, lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    const PHI_FRAC: f64 = 0.618_033_988_749_894_9;
    (1..=n).map(move |k| lo + (hi - lo) * (k as f64 * PHI_FRAC).fract())
}

fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    // NaN propagates so a broken provider cannot pass.
    it.fold(0.0, |m, e| {
        if e.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(e)
        }
    })
}

/// Runs every check with the library's Fresnel implementation.
pub fn run_verify() -> Report {
    run_verify_with(&fresnel_cs)
}

/// Runs every check, taking `(C(x), S(x))` from `fresnel` for the Fresnel
/// checks.
pub fn run_verify_with(fresnel: &dyn Fn(f64) -> (f64, f64)) -> Report {
    let mut checks = Vec::new();
    let mut add = |name, error, tolerance| {
        checks.push(Check {
            name,
            error,
            tolerance,
        })
    };

    let xs: Vec<f64> = golden_points(200, -30.0, 30.0)
        .chain([0.0, 0.5, 1.99, 2.0, 2.01, 10.0])
        .collect();
    add(
        "fresnel_vs_quadrature",
        max_abs(xs.iter().map(|&x| {
            let (c, s) = fresnel(x);
            let (qc, qs) = oracle::fresnel_quadrature(x);
            (c - qc).abs().max((s - qs).abs())
        })),
        1e-9,
    );
    add(
        "fresnel_oddness",
        max_abs(xs.iter().map(|&x| {
            let ((c1, s1), (c2, s2)) = (fresnel(x), fresnel(-x));
            (c1 + c2).abs().max((s1 + s2).abs())
        })),
        0.0,
    );

    let pairs: Vec<(f64, f64)> = golden_points(60, -4.0, 4.0)
        .zip(golden_points(60, 0.05, 4.0).skip(7))
        .collect();
    add(
        "gain_vs_quadrature",
        max_abs(pairs.iter().map(|&(a, b)| {
            let g = gain_closed_form(GammaPair::new(a, b).expect("finite pair")).value();
            (g - oracle::gain_surface_quadrature(a, b)).abs()
        })),
        1e-9,
    );

    let geom = ArrayGeometry::with_normalized_spacing(64, 0.5, 39e9).expect("valid geometry");
    let theta = 60f64.to_radians();
    add(
        "exact_vs_extended",
        max_abs([2.0, 7.5, 20.0, 55.0, 140.0].iter().flat_map(|&r| {
            let geom = &geom;
            [-0.6e9, 0.0, 0.6e9].into_iter().map(move |f| {
                let p = ObserverPoint::new(r, theta).expect("valid point");
                let g = gain_exact(geom, &p, Variant::NearFieldWideband, f)
                    .expect("valid offset")
                    .value();
                let o = oracle::gain_exact_extended(64, geom.spacing_m(), 39e9, r, theta, f);
                (g - o).abs()
            })
        })),
        1e-10,
    );

    let (mut exact_err, mut closed_err, mut lemma_err) = (0.0f64, 0.0f64, 0.0f64);
    for (i, (&n, &deg)) in [128usize, 256, 512]
        .iter()
        .zip(&[-40.0f64, 15.0, 60.0])
        .enumerate()
    {
        let geom = ArrayGeometry::with_normalized_spacing(n, 0.5, 28e9).expect("valid geometry");
        let l = geom.aperture_m();
        let bound = 0.5 * (l * l * l / geom.wavelength_m()).sqrt();
        for (k, frac) in [-0.03, 0.0, 0.02].into_iter().enumerate() {
            let r = bound * (3.0 + 2.0 * (i + k) as f64);
            let p = ObserverPoint::new(r, deg.to_radians()).expect("valid point");
            debug_assert!(check_fresnel_region(&geom, &p));
            let f = frac * 28e9;
            let reg = Regime::from_physical(&geom, &p, f).expect("valid regime");
            let ex = gain_exact(&geom, &p, Variant::NearFieldWideband, f)
                .expect("valid offset")
                .value();
            let l1 = gain_lemma1(&reg, n).expect("n > 0").gain.value();
            let cf = gain_closed_form(gamma_from_regime(&reg).expect("valid regime")).value();
            let ext = oracle::gain_lemma1_extended(
                reg.fbar(),
                reg.rbar(),
                reg.dbar(),
                reg.theta_rad(),
                n,
            );
            exact_err = exact_err.max((ex - l1).abs());
            closed_err = closed_err.max((l1 - cf).abs() / (5.0 / n as f64).max(0.02));
            lemma_err = lemma_err.max((l1 - ext).abs());
        }
    }
    add("chain_exact_vs_quadratic", exact_err, 0.01);
    add("chain_quadratic_vs_closed", closed_err, 1.0);
    add("quadratic_vs_extended", lemma_err, 1e-10);

    let pm = |db: f64| {
        product_max(ThresholdSpec::from_db(db).expect("valid threshold")).map(|p| p.value)
    };
    add(
        "product_max_-2dB_vs_0.5044",
        pm(-2.0).map_or(f64::NAN, |v| (v - 0.5044).abs()),
        0.005,
    );
    add(
        "product_max_-1dB_vs_0.3654",
        pm(-1.0).map_or(f64::NAN, |v| (v - 0.3654).abs()),
        0.005,
    );

    let g128 = ArrayGeometry::with_normalized_spacing(128, 0.5, 28e9).expect("valid geometry");
    add(
        "d_fa_128_28GHz_vs_87.7m",
        (d_fa(g128.lbar(), g128.wavelength_m()) - 87.7).abs(),
        0.5,
    );

    let theta30 = 30f64.to_radians();
    let erd = d_erd(theta30, g128.lbar(), g128.wavelength_m());
    let band = ThresholdSpec::new(0.95)
        .and_then(|t| band_distance(0.0, 28e9, t, g128.aperture_m(), theta30))
        .map_or(f64::NAN, |b| b.meters());
    add("band_vs_erd_relative", ((band - erd) / erd).abs(), 0.02);

    add(
        "narrowband_gain_0.5_vs_0.99317",
        gain_narrowband(0.5).map_or(f64::NAN, |g| (g.value() - 0.99317).abs()),
        1e-5,
    );

    Report { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_fails() {
        let c = Check {
            name: "x",
            error: f64::NAN,
            tolerance: 1.0,
        };
        assert!(!c.passed());
        assert!(max_abs([0.1, f64::NAN, 0.2].into_iter()).is_nan());
    }

    #[test]
    fn golden_points_stay_in_range() {
        assert!(golden_points(500, -3.0, 3.0).all(|x| (-3.0..3.0).contains(&x)));
    }
}
