//! Normalized parameters, the maps to and from `(γ1, γ2)`, and inversion of a
//! gain threshold into design limits.
//!
//! ```text
//! γ1 = −tan θ · f̄ · √(2 r̄ / (1 + f̄))        f̄ = −γ1 γ2 / (L̄ sin θ)
//! γ2 = L̄ cos θ · √((1 + f̄) / (2 r̄))         r̄ = L̄² cos²θ (1 + f̄) / (2 γ2²)
//! ```
//!
//! Since `γ1 γ2 = −f̄ L̄ sin θ`, a limit on `|γ1 γ2|` at a gain threshold is a
//! limit on the product of fractional bandwidth and aperture.

use libm::{ceil, cos, fabs, log10, pow, sin, sqrt, tan};

use crate::array::open_half_plane;
use crate::error::{finite, Error};
use crate::fresnel::{gain_closed_form, gain_narrowband, GammaPair, LinearGain};
use crate::{Result, SPEED_OF_LIGHT};

/// Carrier-independent description of a link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    fbar: f64,
    rbar: f64,
    dbar: f64,
    lbar: f64,
    theta_rad: f64,
}

impl Regime {
    /// Validates `1 + f̄ > 0`, `r̄ > 0`, `L̄ ≥ d̄ > 0` and `|θ| < π/2`.
    pub fn new(fbar: f64, rbar: f64, dbar: f64, lbar: f64, theta_rad: f64) -> Result<Self> {
        finite("fbar", fbar)?;
        if 1.0 + fbar <= 0.0 {
            return Err(Error::Domain {
                what: "fbar",
                value: fbar,
            });
        }
        for (what, v) in [("rbar", rbar), ("dbar", dbar), ("lbar", lbar)] {
            finite(what, v)?;
            if v <= 0.0 {
                return Err(Error::Domain { what, value: v });
            }
        }
        if lbar < dbar {
            return Err(Error::Domain {
                what: "lbar",
                value: lbar,
            });
        }
        open_half_plane("theta_rad", theta_rad)?;
        Ok(Self {
            fbar,
            rbar,
            dbar,
            lbar,
            theta_rad,
        })
    }

    /// Normalizes a physical configuration.
    ///
    /// Lengths are normalized as `x·f_c/c` (one rounding for the product, one
    /// for the division), so scaling every length by `1/k` and every frequency
    /// by `k` gives bit-identical results whenever the scaled inputs are exact.
    pub fn from_physical(
        geom: &crate::array::ArrayGeometry,
        p: &crate::array::ObserverPoint,
        baseband_hz: f64,
    ) -> Result<Self> {
        finite("baseband_hz", baseband_hz)?;
        let fc = geom.carrier_hz();
        let dbar = geom.spacing_m() * fc / SPEED_OF_LIGHT;
        Self::new(
            baseband_hz / fc,
            p.range_m() * fc / SPEED_OF_LIGHT,
            dbar,
            geom.n_antennas() as f64 * dbar,
            p.angle_rad(),
        )
    }

    /// `f̄ = f/f_c`.
    pub fn fbar(&self) -> f64 {
        self.fbar
    }

    /// `r̄ = r/λ_c`.
    pub fn rbar(&self) -> f64 {
        self.rbar
    }

    /// `d̄ = d/λ_c`.
    pub fn dbar(&self) -> f64 {
        self.dbar
    }

    /// `L̄ = N d̄`.
    pub fn lbar(&self) -> f64 {
        self.lbar
    }

    /// `θ` (rad).
    pub fn theta_rad(&self) -> f64 {
        self.theta_rad
    }
}

/// Gain threshold `τ ∈ (0, 1]` (linear amplitude gain).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ThresholdSpec {
    tau_linear: f64,
}

impl ThresholdSpec {
    /// From a linear gain in `(0, 1]`.
    pub fn new(tau_linear: f64) -> Result<Self> {
        finite("tau", tau_linear)?;
        if !(tau_linear > 0.0 && tau_linear <= 1.0) {
            return Err(Error::Domain {
                what: "tau",
                value: tau_linear,
            });
        }
        Ok(Self { tau_linear })
    }

    /// From a threshold in dB (`10·log10` convention).
    pub fn from_db(tau_db: f64) -> Result<Self> {
        Self::new(LinearGain::from_db(tau_db)?.value())
    }

    /// Linear threshold.
    pub fn linear(&self) -> f64 {
        self.tau_linear
    }

    /// Threshold in dB.
    pub fn db(&self) -> f64 {
        10.0 * log10(self.tau_linear)
    }

    fn below_unity(self) -> Result<f64> {
        if self.tau_linear >= 1.0 {
            return Err(Error::EmptyRegion {
                tau: self.tau_linear,
            });
        }
        Ok(self.tau_linear)
    }
}

/// Maps a regime to its point on the gain surface.
pub fn gamma_from_regime(reg: &Regime) -> Result<GammaPair> {
    let onef = 1.0 + reg.fbar;
    if onef <= 0.0 {
        return Err(Error::Domain {
            what: "fbar",
            value: reg.fbar,
        });
    }
    let gamma1 = -tan(reg.theta_rad) * reg.fbar * sqrt(2.0 * reg.rbar / onef);
    let gamma2 = reg.lbar * cos(reg.theta_rad) * sqrt(onef / (2.0 * reg.rbar));
    // γ1 = 0 exactly at broadside; avoid returning -0.0.
    GammaPair::new(gamma1 + 0.0, gamma2)
}

/// `f̄ = −γ1 γ2 / (L̄ sin θ)`. Fails at broadside where `γ1 ≡ 0`.
pub fn fbar_from_gamma(g: GammaPair, lbar: f64, theta_rad: f64) -> Result<f64> {
    positive("lbar", lbar)?;
    finite("theta_rad", theta_rad)?;
    let s = sin(theta_rad);
    if s == 0.0 {
        return Err(Error::SingularInversion);
    }
    Ok(-g.product() / (lbar * s))
}

/// `r̄ = L̄² cos²θ (1 + f̄) / (2 γ2²)`; `γ2 = 0` maps to `+inf`.
pub fn rbar_from_gamma(fbar: f64, gamma2: f64, lbar: f64, theta_rad: f64) -> Result<f64> {
    finite("fbar", fbar)?;
    finite("gamma2", gamma2)?;
    positive("lbar", lbar)?;
    open_half_plane("theta_rad", theta_rad)?;
    if 1.0 + fbar <= 0.0 {
        return Err(Error::Domain {
            what: "fbar",
            value: fbar,
        });
    }
    if gamma2 < 0.0 {
        return Err(Error::Domain {
            what: "gamma2",
            value: gamma2,
        });
    }
    if gamma2 == 0.0 {
        return Ok(f64::INFINITY);
    }
    let c = cos(theta_rad);
    Ok(lbar * lbar * c * c * (1.0 + fbar) / (2.0 * gamma2 * gamma2))
}

/// Search grid for [`product_max_with`] and [`main_lobe_edge`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductMaxSettings {
    /// Smallest `γ2` on the grid.
    pub gamma2_min: f64,
    /// Largest `γ2` on the grid.
    pub gamma2_max: f64,
    /// Number of log-spaced `γ2` points.
    pub points: usize,
    /// Step in `γ1 γ2` of the outward scan that brackets the crossing.
    pub product_step: f64,
    /// Largest `γ1 γ2` scanned before the edge is declared at the limit.
    pub product_limit: f64,
    /// Absolute tolerance of the bisection, in `γ1 γ2`.
    pub bisection_tol: f64,
    /// Golden-section iterations for the final refinement over `γ2`.
    pub golden_iterations: usize,
}

impl Default for ProductMaxSettings {
    fn default() -> Self {
        Self {
            gamma2_min: 1e-3,
            gamma2_max: 6.0,
            points: 2048,
            product_step: 0.01,
            product_limit: 8.0,
            bisection_tol: 1e-9,
            golden_iterations: 60,
        }
    }
}

/// Result of [`product_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductMax {
    /// `[γ1 γ2]_max`.
    pub value: f64,
    /// Boundary point at which it is attained (`γ1 > 0`).
    pub at: GammaPair,
}

/// First `γ1 γ2 > 0` (at fixed `γ2`) where the gain drops below `tau`, scanning
/// outward from `γ1 = 0`. `None` if `G(0, γ2) < tau`, i.e. the line does not
/// meet the main-lobe region at all.
pub fn main_lobe_edge(gamma2: f64, tau: f64, settings: &ProductMaxSettings) -> Option<f64> {
    let gain_at = |p: f64| {
        gain_closed_form(GammaPair {
            gamma1: p / gamma2,
            gamma2,
        })
        .value()
    };
    if gamma2.is_nan() || gamma2 <= 0.0 || gain_at(0.0) < tau {
        return None;
    }
    let mut lo = 0.0;
    let mut hi = settings.product_step;
    while gain_at(hi) >= tau {
        lo = hi;
        hi += settings.product_step;
        if hi > settings.product_limit {
            return Some(settings.product_limit);
        }
    }
    while hi - lo > settings.bisection_tol {
        let mid = 0.5 * (lo + hi);
        if gain_at(mid) >= tau {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// `[γ1 γ2]_max` at threshold `tau` with the default search grid.
pub fn product_max(tau: ThresholdSpec) -> Result<ProductMax> {
    product_max_with(tau, &ProductMaxSettings::default())
}

/// Supremum of `|γ1 γ2|` over the main-lobe region `G ≥ tau` that contains the
/// origin.
///
/// For each `γ2` on a log grid the edge is bracketed and bisected; the best
/// grid point is then refined by golden-section search over `log γ2`. The
/// sweep stops at the first `γ2` whose narrowband gain is already below `tau`,
/// which keeps the region connected.
pub fn product_max_with(tau: ThresholdSpec, settings: &ProductMaxSettings) -> Result<ProductMax> {
    let tau = tau.below_unity()?;
    let (lmin, lmax) = (log10(settings.gamma2_min), log10(settings.gamma2_max));
    let steps = settings.points.max(2) - 1;
    let grid = |i: usize| pow(10.0, lmin + (lmax - lmin) * i as f64 / steps as f64);

    let mut best: Option<(usize, f64)> = None;
    let mut last = 0;
    for i in 0..=steps {
        let Some(p) = main_lobe_edge(grid(i), tau, settings) else {
            break;
        };
        last = i;
        if best.is_none_or(|(_, b)| p > b) {
            best = Some((i, p));
        }
    }
    let Some((ib, pb)) = best else {
        // τ so close to 1 that even the smallest γ2 is excluded.
        return Ok(ProductMax {
            value: 0.0,
            at: GammaPair {
                gamma1: 0.0,
                gamma2: settings.gamma2_min,
            },
        });
    };

    let objective = |lg: f64| main_lobe_edge(pow(10.0, lg), tau, settings).unwrap_or(0.0);
    let mut a = log10(grid(ib.saturating_sub(1)));
    let mut b = log10(grid((ib + 1).min(last)));
    let invphi = (sqrt(5.0) - 1.0) / 2.0;
    let mut x1 = b - invphi * (b - a);
    let mut x2 = a + invphi * (b - a);
    let (mut f1, mut f2) = (objective(x1), objective(x2));
    for _ in 0..settings.golden_iterations {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = objective(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = objective(x1);
        }
    }
    let (lg, p) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    let (lg, p) = if p >= pb {
        (lg, p)
    } else {
        (log10(grid(ib)), pb)
    };
    let gamma2 = pow(10.0, lg);
    Ok(ProductMax {
        value: p,
        at: GammaPair {
            gamma1: p / gamma2,
            gamma2,
        },
    })
}

/// `|2 c [γ1γ2]_max / sin θ_worst|` (Hz·m) for a known product.
/// Broadside (`sin θ = 0`) is unbounded and returns `+inf`.
pub fn aperture_bandwidth_bound_for(product: f64, theta_worst_rad: f64) -> f64 {
    let s = sin(theta_worst_rad);
    if s == 0.0 {
        return f64::INFINITY;
    }
    fabs(2.0 * SPEED_OF_LIGHT * product / s)
}

/// Upper bound on bandwidth × aperture (Hz·m) at threshold `tau`.
pub fn aperture_bandwidth_bound(tau: ThresholdSpec, theta_worst_rad: f64) -> Result<f64> {
    finite("theta_worst", theta_worst_rad)?;
    Ok(aperture_bandwidth_bound_for(
        product_max(tau)?.value,
        theta_worst_rad,
    ))
}

/// `B_max` (Hz) for aperture `aperture_m` and a known `[γ1γ2]_max`.
pub fn bmax_for(product: f64, aperture_m: f64, theta_worst_rad: f64) -> Result<f64> {
    positive("aperture_m", aperture_m)?;
    finite("theta_worst", theta_worst_rad)?;
    Ok(aperture_bandwidth_bound_for(product, theta_worst_rad) / aperture_m)
}

/// Maximum usable bandwidth (Hz) of an aperture at threshold `tau`.
pub fn bmax(aperture_m: f64, tau: ThresholdSpec, theta_worst_rad: f64) -> Result<f64> {
    positive("aperture_m", aperture_m)?;
    bmax_for(product_max(tau)?.value, aperture_m, theta_worst_rad)
}

/// Outcome of [`band_distance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandDistance {
    /// Range (m) beyond which the gain stays above the threshold.
    Finite(f64),
    /// No finite range works: the offset is outside the usable band.
    Diverges,
}

impl BandDistance {
    /// Range in metres, `+inf` when divergent.
    pub fn meters(self) -> f64 {
        match self {
            BandDistance::Finite(r) => r,
            BandDistance::Diverges => f64::INFINITY,
        }
    }

    /// True if finite.
    pub fn is_finite(self) -> bool {
        matches!(self, BandDistance::Finite(_))
    }
}

/// Scan settings for [`band_distance_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSettings {
    /// Log-grid density of the range scan.
    pub points_per_decade: usize,
    /// Lower scan bound as a multiple of `λ_c L̄²`; the Fresnel-region bound
    /// wins if larger.
    pub r_lo_factor: f64,
    /// Upper scan bound as a multiple of the Fraunhofer array distance.
    pub r_hi_over_dfa: f64,
    /// Relative tolerance of the final bisection.
    pub rel_tol: f64,
}

impl Default for BandSettings {
    fn default() -> Self {
        Self {
            points_per_decade: 64,
            r_lo_factor: 1e-3,
            r_hi_over_dfa: 1e6,
            rel_tol: 1e-6,
        }
    }
}

/// Frequency-selective near-field distance with the default scan.
pub fn band_distance(
    f_hz: f64,
    fc_hz: f64,
    tau: ThresholdSpec,
    aperture_m: f64,
    theta_rad: f64,
) -> Result<BandDistance> {
    band_distance_with(
        f_hz,
        fc_hz,
        tau,
        aperture_m,
        theta_rad,
        &BandSettings::default(),
    )
}

/// Smallest range `r'` such that the closed-form gain at baseband offset
/// `f_hz` stays at or above `tau` for every sampled `r ≥ r'`.
///
/// Along a range sweep `γ1 γ2 = −f̄ L̄ sin θ` is fixed while `γ2 → 0`, so the
/// gain tends to the far-field wideband value. If that is still below `tau`
/// at the top of the scan the distance diverges. Otherwise the largest grid
/// point below `tau` brackets the boundary, which is bisected in `log r`.
/// If the whole grid passes, the lower scan bound is returned.
pub fn band_distance_with(
    f_hz: f64,
    fc_hz: f64,
    tau: ThresholdSpec,
    aperture_m: f64,
    theta_rad: f64,
    settings: &BandSettings,
) -> Result<BandDistance> {
    finite("f_hz", f_hz)?;
    positive("fc_hz", fc_hz)?;
    positive("aperture_m", aperture_m)?;
    open_half_plane("theta_rad", theta_rad)?;
    let tau = tau.below_unity()?;
    let fbar = f_hz / fc_hz;
    if 1.0 + fbar <= 0.0 {
        return Err(Error::Domain {
            what: "f_hz",
            value: f_hz,
        });
    }

    let lambda = crate::wavelength(fc_hz);
    let lbar = aperture_m / lambda;
    let (s, c) = (sin(theta_rad), cos(theta_rad));
    let product = -fbar * lbar * s;
    let gain_at = |r: f64| {
        let gamma2 = lbar * c * sqrt((1.0 + fbar) * lambda / (2.0 * r));
        gain_closed_form(GammaPair {
            gamma1: product / gamma2,
            gamma2,
        })
        .value()
    };

    let fresnel_bound = 0.5 * sqrt(aperture_m * aperture_m * aperture_m / lambda);
    let r_lo = fresnel_bound.max(settings.r_lo_factor * lambda * lbar * lbar);
    let r_hi = settings.r_hi_over_dfa * d_fa(lbar, lambda);
    if gain_at(r_hi) < tau {
        return Ok(BandDistance::Diverges);
    }
    let ppd = settings.points_per_decade.max(1) as f64;
    let steps = ceil(ppd * log10(r_hi / r_lo)).max(1.0) as usize;
    let grid = |k: usize| {
        if k >= steps {
            r_hi
        } else {
            r_lo * pow(10.0, k as f64 / ppd)
        }
    };

    let Some(k) = (0..steps).rev().find(|&k| gain_at(grid(k)) < tau) else {
        return Ok(BandDistance::Finite(r_lo));
    };
    let (mut lo, mut hi) = (grid(k), grid(k + 1));
    while (hi - lo) > settings.rel_tol * hi {
        let mid = sqrt(lo * hi);
        if gain_at(mid) >= tau {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(BandDistance::Finite(hi))
}

/// Effective Rayleigh distance `0.367 cos²θ · 2 L̄² λ_c` (m).
pub fn d_erd(theta_rad: f64, lbar: f64, lambda_c: f64) -> f64 {
    let c = cos(theta_rad);
    0.367 * c * c * d_fa(lbar, lambda_c)
}

/// Fraunhofer array distance `2 L̄² λ_c` (m).
pub fn d_fa(lbar: f64, lambda_c: f64) -> f64 {
    2.0 * lbar * lbar * lambda_c
}

/// `γ2` at which the narrowband gain equals `tau`, on the main lobe.
///
/// Bisection on `(0, 3]`, where `G(0, γ2)` decreases monotonically.
pub fn narrowband_gamma2_at(tau: ThresholdSpec) -> Result<f64> {
    let tau = tau.below_unity()?;
    let (mut lo, mut hi) = (0.0f64, 3.0f64);
    if gain_narrowband(hi)?.value() >= tau {
        return Err(Error::Domain {
            what: "tau",
            value: tau,
        });
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if gain_narrowband(mid)?.value() >= tau {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn positive(what: &'static str, v: f64) -> Result<f64> {
    finite(what, v)?;
    if v <= 0.0 {
        return Err(Error::Domain { what, value: v });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const DEG: f64 = core::f64::consts::PI / 180.0;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn gamma_special_cases() {
        let r = Regime::new(0.0, 500.0, 0.5, 32.0, 0.4).unwrap();
        assert_eq!(gamma_from_regime(&r).unwrap().gamma1(), 0.0);
        let r = Regime::new(0.03, 500.0, 0.5, 32.0, 0.0).unwrap();
        let g = gamma_from_regime(&r).unwrap();
        assert_eq!(g.gamma1(), 0.0);
        assert!(close(g.gamma2(), 32.0 * (1.03f64 / 1000.0).sqrt(), 1e-15));
    }

    #[test]
    fn fbar_inverse() {
        let g = GammaPair::new(0.0, 0.7).unwrap();
        assert_eq!(fbar_from_gamma(g, 32.0, 0.3).unwrap(), 0.0);
        let g = GammaPair::new(0.3654, 1.0).unwrap();
        let f = fbar_from_gamma(g, 32.0, 60.0 * DEG).unwrap();
        assert!((f + 0.013_185).abs() < 1e-5, "{f}");
        assert_eq!(fbar_from_gamma(g, 32.0, 0.0), Err(Error::SingularInversion));
    }

    #[test]
    fn rbar_inverse() {
        assert!(close(
            rbar_from_gamma(0.0, 0.5, 32.0, 0.0).unwrap(),
            2.0 * 1024.0,
            1e-15
        ));
        let a = rbar_from_gamma(0.01, 0.4, 20.0, 0.2).unwrap();
        let b = rbar_from_gamma(0.01, 0.8, 20.0, 0.2).unwrap();
        assert!(close(a, 4.0 * b, 1e-15));
        let r = rbar_from_gamma(0.02, 0.8, 32.0, 60.0 * DEG).unwrap();
        assert!(close(r, 204.0, 1e-12), "{r}");
        assert_eq!(rbar_from_gamma(0.0, 0.0, 32.0, 0.0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn regime_validation() {
        assert!(Regime::new(-1.0, 1.0, 0.5, 1.0, 0.0).is_err());
        assert!(Regime::new(0.0, 0.0, 0.5, 1.0, 0.0).is_err());
        assert!(Regime::new(0.0, 1.0, 0.5, 0.25, 0.0).is_err());
        assert!(Regime::new(0.0, 1.0, 0.5, 1.0, core::f64::consts::FRAC_PI_2).is_err());
    }

    #[test]
    fn fractional_bandwidth_relation() {
        for &(f, r, th) in &[(0.05, 900.0, 0.3), (-0.1, 4000.0, -1.0), (0.2, 123.0, 1.2)] {
            let reg = Regime::new(f, r, 0.5, 64.0, th).unwrap();
            let g = gamma_from_regime(&reg).unwrap();
            let lhs = (2.0 * f * 64.0 * sin(th)).abs();
            assert!(close(lhs, (2.0 * g.product()).abs(), 1e-13));
        }
    }

    #[test]
    fn threshold_validation() {
        assert!(ThresholdSpec::new(0.0).is_err());
        assert!(ThresholdSpec::new(1.5).is_err());
        let one = ThresholdSpec::new(1.0).unwrap();
        assert_eq!(product_max(one), Err(Error::EmptyRegion { tau: 1.0 }));
        assert!(matches!(
            band_distance(0.0, 28e9, one, 0.3, 0.0),
            Err(Error::EmptyRegion { .. })
        ));
    }

    #[test]
    fn main_lobe_edge_is_on_contour() {
        let s = ProductMaxSettings::default();
        let tau = 0.7;
        for &g2 in &[0.01, 0.3, 0.9, 1.2] {
            let p = main_lobe_edge(g2, tau, &s).unwrap();
            let g = gain_closed_form(GammaPair::new(p / g2, g2).unwrap()).value();
            assert!((g - tau).abs() < 1e-6, "γ2 = {g2}: {g}");
        }
        assert_eq!(main_lobe_edge(3.0, 0.9, &s), None);
    }

    #[test]
    fn product_max_monotone_in_tau() {
        let s = ProductMaxSettings {
            points: 256,
            ..Default::default()
        };
        let mut prev = f64::INFINITY;
        for &t in &[0.3, 0.5, 0.7, 0.9, 0.99, 0.999] {
            let p = product_max_with(ThresholdSpec::new(t).unwrap(), &s)
                .unwrap()
                .value;
            assert!(p <= prev, "τ = {t}");
            prev = p;
        }
        assert!(prev < 0.03);
    }

    #[test]
    fn bound_scaling() {
        let a = aperture_bandwidth_bound_for(0.3654, 90.0 * DEG);
        assert!(close(a, 2.0 * SPEED_OF_LIGHT * 0.3654, 1e-15));
        let b = aperture_bandwidth_bound_for(0.3654, 30.0 * DEG);
        assert!(close(b, 2.0 * a, 1e-12));
        assert_eq!(aperture_bandwidth_bound_for(0.3654, 0.0), f64::INFINITY);
        let bm = bmax_for(0.3654, 0.34, 60.0 * DEG).unwrap();
        assert!(close(bm, 7.44e8, 2e-3), "{bm}");
        assert_eq!(
            bmax_for(0.3654, 0.17, 1.0).unwrap(),
            2.0 * bmax_for(0.3654, 0.34, 1.0).unwrap()
        );
    }

    #[test]
    fn reference_distances() {
        let lambda = crate::wavelength(28e9);
        let lbar = 128.0 * 0.5;
        assert!((d_fa(lbar, lambda) - 87.7).abs() < 0.5);
        assert!(close(
            d_fa(2.0 * lbar, lambda),
            4.0 * d_fa(lbar, lambda),
            1e-15
        ));
        let lambda39 = crate::wavelength(39e9);
        assert!((d_fa(32.0, lambda39) - 15.74).abs() < 0.01);
        assert!((d_erd(0.0, 32.0, 0.010707) - 8.05).abs() < 0.01);
        assert!(close(
            d_erd(60.0 * DEG, 32.0, 0.01),
            d_erd(0.0, 32.0, 0.01) / 4.0,
            1e-12
        ));
    }

    #[test]
    fn narrowband_gamma2_for_erd_threshold() {
        let g = narrowband_gamma2_at(ThresholdSpec::new(0.95).unwrap()).unwrap();
        // 1/(2γ2²) is the 0.367·2 factor of the effective Rayleigh distance.
        assert!((1.0 / (2.0 * g * g) - 0.734).abs() < 0.005, "{g}");
    }

    #[test]
    fn band_distance_narrowband_matches_erd() {
        let tau = ThresholdSpec::new(0.95).unwrap();
        let fc = 28e9;
        let lambda = crate::wavelength(fc);
        let aperture = 64.0 * 0.5 * lambda;
        for &th in &[0.0, 30.0 * DEG, 60.0 * DEG] {
            let b = band_distance(0.0, fc, tau, aperture, th).unwrap().meters();
            let e = d_erd(th, 32.0, lambda);
            assert!(close(b, e, 0.02), "θ = {th}: {b} vs {e}");
        }
    }

    #[test]
    fn band_distance_diverges_far_off_carrier() {
        let tau = ThresholdSpec::from_db(-1.0).unwrap();
        let fc = 39e9;
        let aperture = 64.0 * 0.5 * crate::wavelength(fc);
        let r = band_distance(3e9, fc, tau, aperture, 60.0 * DEG).unwrap();
        assert_eq!(r, BandDistance::Diverges);
        assert_eq!(r.meters(), f64::INFINITY);
    }

    proptest! {
        #[test]
        fn regime_round_trip(
            f in -0.4f64..0.4,
            r in 10.0f64..1e5,
            th in -1.4f64..1.4,
            lbar in 4.0f64..200.0,
        ) {
            prop_assume!(f.abs() > 1e-6 && th.abs() > 1e-3);
            let reg = Regime::new(f, r, 0.5, lbar, th).unwrap();
            let g = gamma_from_regime(&reg).unwrap();
            let f2 = fbar_from_gamma(g, lbar, th).unwrap();
            let r2 = rbar_from_gamma(f2, g.gamma2(), lbar, th).unwrap();
            prop_assert!((f2 - f).abs() <= 1e-12 * f.abs().max(1e-3));
            prop_assert!((r2 - r).abs() <= 1e-12 * r);
        }
    }
}
