//! Independent reference computations used by `verify` and the test suites.
//!
//! Nothing here is on the production path: the Fresnel integrals are
//! integrated directly from their definition, and exact array gains are
//! summed in double-double arithmetic from the unsimplified distance formula.

use std::f64::consts::{FRAC_PI_2, TAU};

use twofloat::TwoFloat;
use wbnf_core::SPEED_OF_LIGHT;

// 15-point Kronrod nodes on [0, 1] (symmetric), with the embedded 7-point
// Gauss rule on every other node.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss-Kronrod 7/15 panel: `(kronrod, error estimate)`.
fn gk15<F: Fn(f64) -> [f64; 2]>(f: &F, a: f64, b: f64) -> ([f64; 2], f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(mid);
    let mut k = [fc[0] * WGK[7], fc[1] * WGK[7]];
    let mut g = [fc[0] * WG[3], fc[1] * WG[3]];
    let mut l1 = WGK[7] * (fc[0].abs() + fc[1].abs());
    for j in 0..7 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(mid - dx), f(mid + dx));
        for c in 0..2 {
            k[c] += WGK[j] * (f1[c] + f2[c]);
            l1 += WGK[j] * (f1[c].abs() + f2[c].abs());
            if j % 2 == 1 {
                g[c] += WG[j / 2] * (f1[c] + f2[c]);
            }
        }
    }
    let k = [k[0] * half, k[1] * half];
    let err = ((k[0] - g[0] * half).abs()).max((k[1] - g[1] * half).abs());
    // Error estimates below a few ulps of the panel's L1 norm are noise.
    let roundoff = 50.0 * f64::EPSILON * l1 * half.abs();
    (k, err.max(roundoff))
}

/// Adaptive Gauss-Kronrod integration of a two-component integrand to an
/// absolute tolerance.
pub fn integrate2<F: Fn(f64) -> [f64; 2]>(f: F, a: f64, b: f64, tol: f64) -> [f64; 2] {
    let mut total = [0.0; 2];
    let mut stack = vec![(a, b, tol, 0u32)];
    while let Some((lo, hi, t, depth)) = stack.pop() {
        let (v, err) = gk15(&f, lo, hi);
        let roundoff_bound = err <= 64.0 * f64::EPSILON * (v[0].abs() + v[1].abs());
        if err <= t || roundoff_bound || depth >= 40 {
            total[0] += v[0];
            total[1] += v[1];
        } else {
            let m = 0.5 * (lo + hi);
            stack.push((m, hi, 0.5 * t, depth + 1));
            stack.push((lo, m, 0.5 * t, depth + 1));
        }
    }
    total
}

/// Scalar adaptive Gauss-Kronrod integration.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate2(|x| [f(x), 0.0], a, b, tol)[0]
}

/// `∫_a^b exp(jπt²/2) dt` as `(re, im)`, panelled at half-period nodes
/// `t² ∈ 2ℤ` so each panel holds at most one oscillation.
pub fn chirp_integral(a: f64, b: f64, tol: f64) -> (f64, f64) {
    if a == b {
        return (0.0, 0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut nodes = vec![lo];
    // Breakpoints at ±√(2k) inside (lo, hi).
    let kmax = (lo * lo).max(hi * hi) / 2.0;
    let mut cuts: Vec<f64> = (1..=kmax.ceil() as u64)
        .flat_map(|k| {
            let t = (2.0 * k as f64).sqrt();
            [t, -t]
        })
        .filter(|&t| t > lo && t < hi)
        .collect();
    if lo < 0.0 && hi > 0.0 {
        cuts.push(0.0);
    }
    cuts.sort_by(f64::total_cmp);
    nodes.extend(cuts);
    nodes.push(hi);
    let per_panel = tol / (nodes.len() - 1) as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for w in nodes.windows(2) {
        let v = integrate2(
            |t| {
                let ph = FRAC_PI_2 * square_mod4(t);
                [ph.cos(), ph.sin()]
            },
            w[0],
            w[1],
            per_panel,
        );
        re += v[0];
        im += v[1];
    }
    (sign * re, sign * im)
}

/// `t² mod 4`, with the rounding error of `t²` carried through the reduction
/// so the chirp phase stays accurate for large `t`.
fn square_mod4(t: f64) -> f64 {
    let hi = t * t;
    let lo = t.mul_add(t, -hi);
    (hi % 4.0) + lo
}

/// `(C(x), S(x))` by quadrature of the defining integrals at tolerance 1e-13.
pub fn fresnel_quadrature(x: f64) -> (f64, f64) {
    chirp_integral(0.0, x, 1e-13)
}

/// `G(γ1, γ2)` by quadrature of `∫ exp(jπt²/2)` over `[γ1 − γ2, γ1 + γ2]`.
pub fn gain_surface_quadrature(gamma1: f64, gamma2: f64) -> f64 {
    let (re, im) = chirp_integral(gamma1 - gamma2, gamma1 + gamma2, 1e-13);
    re.hypot(im) / (2.0 * gamma2)
}

/// Exact near-field wideband gain of the plane-wave carrier beamformer,
/// evaluated naively from `r_n = √(r² − 2 r d_n sin θ + d_n²)` in
/// double-double arithmetic.
pub fn gain_exact_extended(
    n_antennas: usize,
    spacing_m: f64,
    carrier_hz: f64,
    range_m: f64,
    theta_rad: f64,
    baseband_hz: f64,
) -> f64 {
    let s = TwoFloat::from(theta_rad.sin());
    let r = TwoFloat::from(range_m);
    let c = TwoFloat::from(SPEED_OF_LIGHT);
    let fc = TwoFloat::from(carrier_hz);
    let f = TwoFloat::from(carrier_hz) + baseband_hz;
    let half_n = TwoFloat::from(n_antennas as f64 - 1.0) / 2.0;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for n in 0..n_antennas {
        let dn = (TwoFloat::from(n as f64) - half_n) * spacing_m;
        let rn = (r * r - r * dn * s * 2.0 + dn * dn).sqrt();
        // conj(h_nf,wb) · f_ff,nb phase, in cycles.
        let cycles = (rn * f - (r - dn * s) * fc) / c;
        let frac = cycles - cycles.round();
        let ph = TAU * f64::from(frac);
        re += ph.cos();
        im += ph.sin();
    }
    re.hypot(im) / n_antennas as f64
}

/// Finite-`N` quadratic-phase gain summed in double-double arithmetic.
pub fn gain_lemma1_extended(
    fbar: f64,
    rbar: f64,
    dbar: f64,
    theta_rad: f64,
    n_antennas: usize,
) -> f64 {
    let (s, c) = (theta_rad.sin(), theta_rad.cos());
    let lin = TwoFloat::from(-dbar) * s * fbar;
    let quad = (TwoFloat::from(fbar) + 1.0) * dbar * dbar / (TwoFloat::from(rbar) * 2.0) * c * c;
    let centre = TwoFloat::from(n_antennas as f64 - 1.0) / 2.0;
    let (mut re, mut im) = (0.0f64, 0.0f64);
    for n in 0..n_antennas {
        let u = TwoFloat::from(n as f64) - centre;
        let cycles = lin * n as f64 + quad * u * u;
        let frac = cycles - cycles.round();
        let ph = TAU * f64::from(frac);
        re += ph.cos();
        im += ph.sin();
    }
    re.hypot(im) / n_antennas as f64
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_polynomials() {
        for k in 0..=20 {
            let v = gk15(&|x: f64| [x.powi(k), 0.0], 0.0, 1.0).0[0];
            assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "x^{k}");
        }
    }

    #[test]
    fn adaptive_handles_smooth_integrands() {
        let v = integrate(f64::exp, 0.0, 3.0, 1e-13);
        assert!((v - (3f64.exp() - 1.0)).abs() < 1e-12);
        let v = integrate(|x| 1.0 / (1.0 + x * x), -50.0, 50.0, 1e-12);
        assert!((v - 2.0 * 50f64.atan()).abs() < 1e-11);
    }

    #[test]
    fn matches_high_precision_fresnel_values() {
        // Same frozen 30-digit values the core unit tests use.
        for (x, c, s) in [
            (0.5, 0.492_344_225_871_446_39, 0.064_732_432_859_999_278),
            (1.0, 0.779_893_400_376_822_83, 0.438_259_147_390_354_77),
            (1.9, 0.394_470_534_891_522_88, 0.373_347_317_816_981_2),
            (2.1, 0.581_564_135_060_833_99, 0.374_273_359_378_103_75),
            (3.7, 0.541_945_662_154_487_41, 0.574_980_349_887_472_91),
            (10.0, 0.499_898_694_205_515_72, 0.468_169_978_584_882_24),
            (27.3, 0.510_472_919_706_433_19, 0.505_125_085_169_698_04),
        ] {
            let (qc, qs) = fresnel_quadrature(x);
            assert!((qc - c).abs() < 1e-13 && (qs - s).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn chirp_limits() {
        let (c, s) = fresnel_quadrature(60.0);
        assert!((c - 0.5).abs() < 0.006 && (s - 0.5).abs() < 0.006);
        let (c1, s1) = chirp_integral(-1.5, 2.5, 1e-13);
        let (ca, sa) = fresnel_quadrature(2.5);
        let (cb, sb) = fresnel_quadrature(1.5);
        assert!((c1 - ca - cb).abs() < 1e-12 && (s1 - sa - sb).abs() < 1e-12);
    }
}
