//! Fresnel integrals and the closed-form gain surface.
//!
//! ```text
//! C(x) = ∫₀ˣ cos(π t²/2) dt        S(x) = ∫₀ˣ sin(π t²/2) dt
//!
//! G(γ1, γ2) = |[C(γ1+γ2) − C(γ1−γ2)] + j[S(γ1+γ2) − S(γ1−γ2)]| / (2 γ2)
//! ```
//!
//! `C` and `S` use a Maclaurin series up to [`SERIES_SWITCH`] and a continued
//! fraction for the complementary error function beyond it.

use libm::{cos, fabs, fma, fmod, hypot, log10, pow, sin};
use num_complex::Complex64;

use crate::error::{finite, Error};
use crate::Result;

const PI: f64 = core::f64::consts::PI;
const FRAC_PI_2: f64 = core::f64::consts::FRAC_PI_2;

/// Arguments with `|x|` at or below this use the power series.
pub const SERIES_SWITCH: f64 = 2.0;

/// Below this value of `2·γ2` the gain is replaced by its `γ2 → 0` limit.
pub const SMALL_GAMMA2_CUTOFF: f64 = 1e-6;

const CF_MAX_ITER: usize = 2000;
const CF_EPS: f64 = 1e-16;

/// A point `(γ1, γ2)` of the gain surface.
///
/// `γ1` measures the wideband (beam squint) mismatch and `γ2 ≥ 0` the
/// near-field (wavefront curvature) mismatch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub(crate) gamma1: f64,
    pub(crate) gamma2: f64,
}

impl GammaPair {
    /// Validates and builds a pair; `gamma2` must be nonnegative.
    pub fn new(gamma1: f64, gamma2: f64) -> Result<Self> {
        finite("gamma1", gamma1)?;
        finite("gamma2", gamma2)?;
        if gamma2 < 0.0 {
            return Err(Error::Domain {
                what: "gamma2",
                value: gamma2,
            });
        }
        Ok(Self { gamma1, gamma2 })
    }

    /// Wideband coordinate.
    pub fn gamma1(&self) -> f64 {
        self.gamma1
    }

    /// Near-field coordinate.
    pub fn gamma2(&self) -> f64 {
        self.gamma2
    }

    /// `γ1·γ2`, the quantity the aperture-bandwidth bound is stated in.
    pub fn product(&self) -> f64 {
        self.gamma1 * self.gamma2
    }
}

/// A normalized amplitude gain in `[0, 1]`; 1 is the matched beamformer.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LinearGain(f64);

impl LinearGain {
    /// The matched (0 dB) gain.
    pub const UNITY: LinearGain = LinearGain(1.0);

    /// Checks `0 ≤ value ≤ 1`.
    pub fn new(value: f64) -> Result<Self> {
        finite("gain", value)?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain {
                what: "gain",
                value,
            });
        }
        Ok(Self(value))
    }

    /// Builds a gain from a computed magnitude, absorbing rounding past 1.
    pub(crate) fn saturating(value: f64) -> Self {
        Self(value.clamp(0.0, 1.0))
    }

    /// Converts a dB threshold (`10·log10` convention) to a linear gain.
    pub fn from_db(db: f64) -> Result<Self> {
        finite("gain_db", db)?;
        Self::new(pow(10.0, db / 10.0))
    }

    /// The linear value.
    pub fn value(self) -> f64 {
        self.0
    }

    /// Gain in dB, see [`to_db`].
    pub fn to_db(self) -> f64 {
        to_db(self)
    }
}

/// `10·log10` of the normalized gain; a zero gain maps to `-inf`.
pub fn to_db(gain: LinearGain) -> f64 {
    if gain.0 == 0.0 {
        f64::NEG_INFINITY
    } else {
        10.0 * log10(gain.0)
    }
}

/// Cosine Fresnel integral `C(x)`.
pub fn fresnel_c(x: f64) -> Result<f64> {
    finite("gamma", x)?;
    Ok(fresnel_cs(x).0)
}

/// Sine Fresnel integral `S(x)`.
pub fn fresnel_s(x: f64) -> Result<f64> {
    finite("gamma", x)?;
    Ok(fresnel_cs(x).1)
}

/// `(C(x), S(x))` for a finite `x`. Both are odd in `x`.
pub fn fresnel_cs(x: f64) -> (f64, f64) {
    let ax = fabs(x);
    let (c, s) = if ax <= SERIES_SWITCH {
        series(ax)
    } else {
        continued_fraction(ax)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

// C(x) = x Σ (-1)^m z^{2m}/((2m)!(4m+1)),  S(x) = x Σ (-1)^m z^{2m+1}/((2m+1)!(4m+3))
// with z = πx²/2. `term` runs over z^k/k!.
fn series(x: f64) -> (f64, f64) {
    let z = FRAC_PI_2 * x * x;
    let mut term = 1.0;
    let mut c = 0.0;
    let mut s = 0.0;
    let mut k = 0usize;
    loop {
        let contrib = term / (2 * k + 1) as f64;
        let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        if k.is_multiple_of(2) {
            c += sign * contrib;
        } else {
            s += sign * contrib;
        }
        k += 1;
        term *= z / k as f64;
        if term < 1e-18 {
            break;
        }
    }
    (x * c, x * s)
}

/// `exp(jπx²/2)` with `x²` split exactly and reduced modulo 4 before scaling.
fn cis_half_pi_square(x: f64) -> Complex64 {
    let hi = x * x;
    let lo = fma(x, x, -hi);
    let t = fmod(hi, 4.0) + lo;
    let phase = FRAC_PI_2 * t;
    Complex64::new(cos(phase), sin(phase))
}

// C + jS = (1+j)/2 · erf(z), z = (√π/2)(1−j)x, so 2z² = −jπx². erfc(z) is
// evaluated as e^{-z²}·(2z/√π)·K with K the classical continued fraction
// 1/(2z²+1 − 1·2/(2z²+5 − 3·4/(2z²+9 − …))), via modified Lentz.
fn continued_fraction(x: f64) -> (f64, f64) {
    let tiny = 1e-300;
    let mut b = Complex64::new(1.0, -PI * x * x);
    let mut big = Complex64::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    let mut n = -1.0;
    for _ in 0..CF_MAX_ITER {
        n += 2.0;
        let a = -n * (n + 1.0);
        b += 4.0;
        d = (d * a + b).inv();
        big = b + big.inv() * a;
        let del = big * d;
        h *= del;
        if fabs(del.re - 1.0) + fabs(del.im) < CF_EPS {
            break;
        }
    }
    let erfc = cis_half_pi_square(x) * h * Complex64::new(x, -x);
    let cs = Complex64::new(0.5, 0.5) * (Complex64::new(1.0, 0.0) - erfc);
    (cs.re, cs.im)
}

/// Closed-form large-array gain `G(γ1, γ2)`.
///
/// For `2·γ2 <` [`SMALL_GAMMA2_CUTOFF`] the difference quotient is replaced by
/// its limit `|exp(jπγ1²/2)| = 1`.
pub fn gain_closed_form(g: GammaPair) -> LinearGain {
    let g2 = g.gamma2;
    if 2.0 * g2 < SMALL_GAMMA2_CUTOFF {
        return LinearGain::UNITY;
    }
    // G is even in γ1; folding keeps the two signs bit-identical.
    let g1 = fabs(g.gamma1);
    let (c_hi, s_hi) = fresnel_cs(g1 + g2);
    let (c_lo, s_lo) = fresnel_cs(g1 - g2);
    LinearGain::saturating(hypot(c_hi - c_lo, s_hi - s_lo) / (2.0 * g2))
}

/// Near-field narrowband gain `|C(γ2) + jS(γ2)| / γ2`, i.e. `G(0, γ2)`.
pub fn gain_narrowband(gamma2: f64) -> Result<LinearGain> {
    Ok(gain_closed_form(GammaPair::new(0.0, gamma2)?))
}
