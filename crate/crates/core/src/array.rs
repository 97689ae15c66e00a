//! Uniform linear array geometry, line-of-sight channel models and the gain
//! of the far-field narrowband beamformer against each of them.
//!
//! The array lies on the x axis centred at the origin. The receiver sits at
//! range `r` and angle `θ` from the y axis, i.e. at `(r sin θ, r cos θ)`.
//! Path loss is taken as `G(r) = 1`; every normalized gain divides it out.
//!
//! Channel phases are referenced to the array centre: the common term
//! `exp(-j2π r (f_c + f)/c)` is dropped from every entry. All gains are
//! magnitudes of inner products, so this is exact, and it keeps the phase
//! arguments small (`r·f_c/c` can be well over 10⁵ cycles).

use alloc::vec::Vec;

use libm::{cos, round, sin, sqrt};
use num_complex::Complex64;

use crate::error::{finite, Error};
use crate::fresnel::LinearGain;
use crate::regime::Regime;
use crate::{Result, SPEED_OF_LIGHT};

const TAU: f64 = core::f64::consts::TAU;

/// Uniform linear array with `n_antennas` elements spaced `spacing_m` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayGeometry {
    n_antennas: usize,
    spacing_m: f64,
    carrier_hz: f64,
}

impl ArrayGeometry {
    /// Validates `N ≥ 1`, `d > 0` and `f_c > 0`.
    pub fn new(n_antennas: usize, spacing_m: f64, carrier_hz: f64) -> Result<Self> {
        if n_antennas == 0 {
            return Err(Error::Domain {
                what: "n_antennas",
                value: 0.0,
            });
        }
        positive("spacing_m", spacing_m)?;
        positive("carrier_hz", carrier_hz)?;
        Ok(Self {
            n_antennas,
            spacing_m,
            carrier_hz,
        })
    }

    /// Array with spacing given in carrier wavelengths (`d̄`).
    pub fn with_normalized_spacing(n_antennas: usize, dbar: f64, carrier_hz: f64) -> Result<Self> {
        positive("dbar", dbar)?;
        positive("carrier_hz", carrier_hz)?;
        Self::new(n_antennas, dbar * crate::wavelength(carrier_hz), carrier_hz)
    }

    /// Number of antennas `N`.
    pub fn n_antennas(&self) -> usize {
        self.n_antennas
    }

    /// Inter-antenna spacing `d` (m).
    pub fn spacing_m(&self) -> f64 {
        self.spacing_m
    }

    /// Carrier frequency `f_c` (Hz).
    pub fn carrier_hz(&self) -> f64 {
        self.carrier_hz
    }

    /// Carrier wavelength `λ_c` (m).
    pub fn wavelength_m(&self) -> f64 {
        crate::wavelength(self.carrier_hz)
    }

    /// Aperture `L = N·d` (m).
    pub fn aperture_m(&self) -> f64 {
        self.n_antennas as f64 * self.spacing_m
    }

    /// Normalized spacing `d̄ = d/λ_c`.
    pub fn dbar(&self) -> f64 {
        self.spacing_m * self.carrier_hz / SPEED_OF_LIGHT
    }

    /// Normalized aperture `L̄ = N·d̄`.
    pub fn lbar(&self) -> f64 {
        self.n_antennas as f64 * self.dbar()
    }
}

/// Receiver position in polar coordinates around the array centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObserverPoint {
    range_m: f64,
    angle_rad: f64,
}

impl ObserverPoint {
    /// Validates `r > 0` and `θ ∈ (−π/2, π/2)`.
    pub fn new(range_m: f64, angle_rad: f64) -> Result<Self> {
        positive("range_m", range_m)?;
        open_half_plane("angle_rad", angle_rad)?;
        Ok(Self { range_m, angle_rad })
    }

    /// Range `r` (m).
    pub fn range_m(&self) -> f64 {
        self.range_m
    }

    /// Angle `θ` (rad) from broadside.
    pub fn angle_rad(&self) -> f64 {
        self.angle_rad
    }

    /// Cartesian receiver location `(r sin θ, r cos θ)`.
    pub fn position(&self) -> (f64, f64) {
        (
            self.range_m * sin(self.angle_rad),
            self.range_m * cos(self.angle_rad),
        )
    }
}

/// Which propagation assumptions a channel or beamformer is built under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Spherical wavefront, frequency-dependent phase.
    NearFieldWideband,
    /// Spherical wavefront at the carrier only.
    NearFieldNarrowband,
    /// Planar wavefront, frequency-dependent phase.
    FarFieldWideband,
    /// Planar wavefront at the carrier only.
    FarFieldNarrowband,
}

impl Variant {
    /// All four variants.
    pub const ALL: [Variant; 4] = [
        Variant::NearFieldWideband,
        Variant::NearFieldNarrowband,
        Variant::FarFieldWideband,
        Variant::FarFieldNarrowband,
    ];

    /// Short tag (`nf_wb`, `nf_nb`, `ff_wb`, `ff_nb`).
    pub fn tag(self) -> &'static str {
        match self {
            Variant::NearFieldWideband => "nf_wb",
            Variant::NearFieldNarrowband => "nf_nb",
            Variant::FarFieldWideband => "ff_wb",
            Variant::FarFieldNarrowband => "ff_nb",
        }
    }

    /// True for the spherical-wavefront models.
    pub fn is_near_field(self) -> bool {
        matches!(
            self,
            Variant::NearFieldWideband | Variant::NearFieldNarrowband
        )
    }

    /// True for the carrier-only models.
    pub fn is_narrowband(self) -> bool {
        matches!(
            self,
            Variant::NearFieldNarrowband | Variant::FarFieldNarrowband
        )
    }
}

/// Per-antenna channel response at one baseband frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelVector {
    entries: Vec<Complex64>,
    variant: Variant,
    baseband_hz: f64,
}

impl ChannelVector {
    /// Builds a channel from raw entries.
    pub fn from_entries(entries: Vec<Complex64>, variant: Variant, baseband_hz: f64) -> Self {
        Self {
            entries,
            variant,
            baseband_hz,
        }
    }

    /// Channel entries, one per antenna.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Model this channel was built under.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Baseband frequency `f` (Hz).
    pub fn baseband_hz(&self) -> f64 {
        self.baseband_hz
    }

    /// Multiplies every entry by `exp(jφ)`.
    pub fn rotate(&mut self, phase_rad: f64) {
        let w = Complex64::new(cos(phase_rad), sin(phase_rad));
        for e in &mut self.entries {
            *e *= w;
        }
    }

    /// `|h* · w|`.
    pub fn inner_product_magnitude(&self, weights: &Beamformer) -> f64 {
        self.entries
            .iter()
            .zip(&weights.weights)
            .map(|(h, w)| h.conj() * w)
            .sum::<Complex64>()
            .norm()
    }
}

/// Unit-norm beamforming weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer {
    weights: Vec<Complex64>,
    variant: Variant,
}

impl Beamformer {
    /// The weights.
    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Model the weights were matched to.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Euclidean norm of the weights (1 up to rounding).
    pub fn norm(&self) -> f64 {
        sqrt(self.weights.iter().map(|w| w.norm_sqr()).sum())
    }
}

/// Element x coordinates `d_n = (2n − N + 1)/2 · d`, ascending.
pub fn antenna_positions(geom: &ArrayGeometry) -> Vec<f64> {
    let n = geom.n_antennas as f64;
    (0..geom.n_antennas)
        .map(|i| (2.0 * i as f64 - n + 1.0) / 2.0 * geom.spacing_m)
        .collect()
}

/// Exact element-to-receiver distances `r_n = √(r² − 2 r d_n sin θ + d_n²)`.
pub fn distance_to_rx(geom: &ArrayGeometry, p: &ObserverPoint) -> Vec<f64> {
    let (r, s) = (p.range_m, sin(p.angle_rad));
    antenna_positions(geom)
        .into_iter()
        .map(|dn| sqrt(r * r - 2.0 * r * dn * s + dn * dn))
        .collect()
}

// r_n − r without cancellation: (d_n² − 2 r d_n sin θ)/(r_n + r).
fn range_offsets(geom: &ArrayGeometry, p: &ObserverPoint) -> Vec<f64> {
    let (r, s) = (p.range_m, sin(p.angle_rad));
    antenna_positions(geom)
        .into_iter()
        .zip(distance_to_rx(geom, p))
        .map(|(dn, rn)| (dn * dn - 2.0 * r * dn * s) / (rn + r))
        .collect()
}

/// `exp(j2π·cycles)` after dropping whole cycles.
fn cis_cycles(cycles: f64) -> Complex64 {
    let frac = cycles - round(cycles);
    let phase = TAU * frac;
    Complex64::new(cos(phase), sin(phase))
}

fn check_baseband(variant: Variant, baseband_hz: f64) -> Result<f64> {
    finite("baseband_hz", baseband_hz)?;
    if variant.is_narrowband() && baseband_hz != 0.0 {
        return Err(Error::NarrowbandOffset { baseband_hz });
    }
    Ok(baseband_hz)
}

/// Channel under `variant` at baseband frequency `baseband_hz`, relative to
/// the array-centre phase reference.
///
/// Entry `n` is `exp(−j2π (ρ_n − r)(f_c + f)/c)` with `ρ_n = r_n` for the
/// near-field models and `ρ_n = r − d_n sin θ` for the far-field ones.
pub fn channel(
    geom: &ArrayGeometry,
    p: &ObserverPoint,
    variant: Variant,
    baseband_hz: f64,
) -> Result<ChannelVector> {
    let f = check_baseband(variant, baseband_hz)?;
    let scale = (geom.carrier_hz + f) / SPEED_OF_LIGHT;
    let offsets = if variant.is_near_field() {
        range_offsets(geom, p)
    } else {
        let s = sin(p.angle_rad);
        antenna_positions(geom)
            .into_iter()
            .map(|dn| -dn * s)
            .collect()
    };
    let entries = offsets
        .into_iter()
        .map(|off| cis_cycles(-off * scale))
        .collect();
    Ok(ChannelVector {
        entries,
        variant,
        baseband_hz: f,
    })
}

/// Conjugate-matched unit-norm beamformer for the channel of the same variant.
pub fn beamformer(
    geom: &ArrayGeometry,
    p: &ObserverPoint,
    variant: Variant,
    baseband_hz: f64,
) -> Result<Beamformer> {
    let h = channel(geom, p, variant, baseband_hz)?;
    let scale = 1.0 / sqrt(geom.n_antennas as f64);
    let weights = h.entries.into_iter().map(|e| e * scale).collect();
    Ok(Beamformer { weights, variant })
}

/// Exact normalized gain `|h* · f_ff,nb| / √N` of the plane-wave carrier
/// beamformer against the channel of `channel_variant`.
pub fn gain_exact(
    geom: &ArrayGeometry,
    p: &ObserverPoint,
    channel_variant: Variant,
    baseband_hz: f64,
) -> Result<LinearGain> {
    let h = channel(geom, p, channel_variant, baseband_hz)?;
    let w = beamformer(geom, p, Variant::FarFieldNarrowband, 0.0)?;
    let n = geom.n_antennas as f64;
    Ok(LinearGain::saturating(
        h.inner_product_magnitude(&w) / sqrt(n),
    ))
}

/// Whether every element is beyond the radiating near-field bound
/// `0.5·√(L³/λ_c)`.
pub fn check_fresnel_region(geom: &ArrayGeometry, p: &ObserverPoint) -> bool {
    let l = geom.aperture_m();
    let bound = 0.5 * sqrt(l * l * l / geom.wavelength_m());
    distance_to_rx(geom, p).into_iter().all(|rn| rn > bound)
}

/// Finite-`N` gain from the quadratic (Fresnel) phase expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxGain {
    /// The gain.
    pub gain: LinearGain,
    /// False when the receiver is inside the Fresnel-region bound, where the
    /// quadratic expansion is not trustworthy.
    pub in_fresnel_region: bool,
}

/// Gain of the plane-wave carrier beamformer from the quadratic phase model:
///
/// ```text
/// |(1/N) Σ_n exp(j2π(φ_wb + φ_nf))|,
/// φ_wb = −n d̄ sin θ f̄,  φ_nf = (1 + f̄) d̄²/(2 r̄) cos²θ (n − (N−1)/2)²
/// ```
///
/// Depends only on the normalized parameters and `N`, never on `f_c`.
pub fn gain_lemma1(regime: &Regime, n_antennas: usize) -> Result<ApproxGain> {
    if n_antennas == 0 {
        return Err(Error::Domain {
            what: "n_antennas",
            value: 0.0,
        });
    }
    let (s, c) = (sin(regime.theta_rad()), cos(regime.theta_rad()));
    let (fbar, dbar, rbar) = (regime.fbar(), regime.dbar(), regime.rbar());
    let linear = -dbar * s * fbar;
    let quad = (fbar + 1.0) * dbar * dbar / (2.0 * rbar) * c * c;
    let centre = (n_antennas as f64 - 1.0) / 2.0;
    let sum: Complex64 = (0..n_antennas)
        .map(|i| {
            let n = i as f64;
            let u = n - centre;
            cis_cycles(linear * n + quad * u * u)
        })
        .sum();
    let gain = LinearGain::saturating(sum.norm() / n_antennas as f64);

    let lbar = regime.lbar();
    let bound = 0.5 * sqrt(lbar * lbar * lbar);
    let in_fresnel_region = (0..n_antennas).all(|i| {
        let dn = dbar * (i as f64 - centre);
        sqrt(rbar * rbar - 2.0 * rbar * dn * s + dn * dn) > bound
    });
    Ok(ApproxGain {
        gain,
        in_fresnel_region,
    })
}

fn positive(what: &'static str, v: f64) -> Result<f64> {
    finite(what, v)?;
    if v <= 0.0 {
        return Err(Error::Domain { what, value: v });
    }
    Ok(v)
}

pub(crate) fn open_half_plane(what: &'static str, theta: f64) -> Result<f64> {
    finite(what, theta)?;
    if theta.abs() >= core::f64::consts::FRAC_PI_2 {
        return Err(Error::Domain { what, value: theta });
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const DEG: f64 = core::f64::consts::PI / 180.0;

    #[test]
    fn positions() {
        let g = ArrayGeometry::new(2, 0.01, 28e9).unwrap();
        assert_eq!(antenna_positions(&g), vec![-0.005, 0.005]);
        let g = ArrayGeometry::new(3, 0.004, 28e9).unwrap();
        assert_eq!(antenna_positions(&g), vec![-0.004, 0.0, 0.004]);
        let g = ArrayGeometry::new(1, 0.7, 28e9).unwrap();
        assert_eq!(antenna_positions(&g), vec![0.0]);
    }

    #[test]
    fn distances() {
        let g = ArrayGeometry::new(2, 2.0, 28e9).unwrap();
        let p = ObserverPoint::new(10.0, 30.0 * DEG).unwrap();
        let r = distance_to_rx(&g, &p);
        assert!((r[0] - 111f64.sqrt()).abs() < 1e-12);
        assert!((r[1] - 91f64.sqrt()).abs() < 1e-12);

        let g = ArrayGeometry::new(5, 0.3, 28e9).unwrap();
        let p = ObserverPoint::new(4.0, 0.0).unwrap();
        for (dn, rn) in antenna_positions(&g)
            .into_iter()
            .zip(distance_to_rx(&g, &p))
        {
            assert_eq!(rn, (16.0 + dn * dn).sqrt());
        }
        let g = ArrayGeometry::new(1, 0.3, 28e9).unwrap();
        assert_eq!(distance_to_rx(&g, &p), vec![4.0]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(ArrayGeometry::new(0, 0.1, 1e9).is_err());
        assert!(ArrayGeometry::new(4, -0.1, 1e9).is_err());
        assert!(ArrayGeometry::new(4, 0.1, 0.0).is_err());
        assert!(ObserverPoint::new(0.0, 0.0).is_err());
        assert!(ObserverPoint::new(1.0, core::f64::consts::FRAC_PI_2).is_err());
        let g = ArrayGeometry::new(4, 0.005, 28e9).unwrap();
        let p = ObserverPoint::new(3.0, 0.2).unwrap();
        assert_eq!(
            channel(&g, &p, Variant::NearFieldNarrowband, 1e6),
            Err(Error::NarrowbandOffset { baseband_hz: 1e6 })
        );
        assert!(beamformer(&g, &p, Variant::FarFieldNarrowband, -2.0).is_err());
    }

    #[test]
    fn narrowband_is_wideband_at_zero_offset() {
        let g = ArrayGeometry::with_normalized_spacing(16, 0.5, 39e9).unwrap();
        let p = ObserverPoint::new(1.3, -0.5).unwrap();
        let wb = channel(&g, &p, Variant::NearFieldWideband, 0.0).unwrap();
        let nb = channel(&g, &p, Variant::NearFieldNarrowband, 0.0).unwrap();
        assert_eq!(wb.entries(), nb.entries());
    }

    #[test]
    fn single_antenna() {
        let g = ArrayGeometry::new(1, 0.005, 28e9).unwrap();
        let p = ObserverPoint::new(2.0, 0.7).unwrap();
        for v in Variant::ALL {
            let f = if v.is_narrowband() { 0.0 } else { 4e8 };
            let h = channel(&g, &p, v, f).unwrap();
            assert!((h.entries()[0].norm() - 1.0).abs() < 1e-15);
            assert_eq!(gain_exact(&g, &p, v, f).unwrap(), LinearGain::UNITY);
        }
    }

    #[test]
    fn far_field_wideband_phase_is_linear() {
        let g = ArrayGeometry::with_normalized_spacing(32, 0.5, 28e9).unwrap();
        let p = ObserverPoint::new(50.0, 0.4).unwrap();
        let h = channel(&g, &p, Variant::FarFieldWideband, 7e8).unwrap();
        let steps: Vec<Complex64> = h.entries().windows(2).map(|w| w[1] * w[0].conj()).collect();
        for s in &steps {
            assert!((s - steps[0]).norm() < 1e-12);
        }
    }

    #[test]
    fn matched_beamformers() {
        let g = ArrayGeometry::with_normalized_spacing(4, 0.5, 28e9).unwrap();
        let p = ObserverPoint::new(0.9, 0.3).unwrap();
        for v in Variant::ALL {
            let f = if v.is_narrowband() { 0.0 } else { -3e8 };
            let h = channel(&g, &p, v, f).unwrap();
            let w = beamformer(&g, &p, v, f).unwrap();
            assert!((w.norm() - 1.0).abs() < 1e-12);
            let mu = h.inner_product_magnitude(&w) / 2.0;
            assert!((mu - 1.0).abs() < 1e-12);
        }
        let w = beamformer(&g, &p, Variant::FarFieldNarrowband, 0.0).unwrap();
        for x in w.weights() {
            assert!((x.norm() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn exact_gain_limits() {
        let g = ArrayGeometry::with_normalized_spacing(64, 0.5, 28e9).unwrap();
        let p = ObserverPoint::new(3.0, 0.9).unwrap();
        assert_eq!(
            gain_exact(&g, &p, Variant::FarFieldNarrowband, 0.0)
                .unwrap()
                .value(),
            1.0
        );
        assert!(
            (gain_exact(&g, &p, Variant::FarFieldWideband, 0.0)
                .unwrap()
                .value()
                - 1.0)
                .abs()
                < 1e-13
        );
        let far = ObserverPoint::new(1e6 * g.aperture_m(), 0.0).unwrap();
        assert!(
            gain_exact(&g, &far, Variant::NearFieldNarrowband, 0.0)
                .unwrap()
                .value()
                >= 0.9999
        );
    }

    #[test]
    fn global_phase_does_not_change_gain() {
        let g = ArrayGeometry::with_normalized_spacing(32, 0.5, 28e9).unwrap();
        let p = ObserverPoint::new(2.0, 0.5).unwrap();
        let w = beamformer(&g, &p, Variant::FarFieldNarrowband, 0.0).unwrap();
        let mut h = channel(&g, &p, Variant::NearFieldWideband, 1e9).unwrap();
        let before = h.inner_product_magnitude(&w);
        for phi in [0.3, 2.0, -5.5, 1234.5] {
            h.rotate(phi);
            assert!((h.inner_product_magnitude(&w) - before).abs() < 1e-12);
        }
    }

    #[test]
    fn fresnel_region_check() {
        let g = ArrayGeometry::with_normalized_spacing(128, 0.5, 28e9).unwrap();
        let bound = 0.5 * (g.aperture_m().powi(3) / g.wavelength_m()).sqrt();
        assert!((bound - 2.74).abs() < 0.01, "{bound}");
        assert!(check_fresnel_region(
            &g,
            &ObserverPoint::new(5.0, 0.0).unwrap()
        ));
        assert!(check_fresnel_region(
            &g,
            &ObserverPoint::new(1e9 * g.aperture_m(), 0.3).unwrap()
        ));
        assert!(!check_fresnel_region(
            &g,
            &ObserverPoint::new(1e-6, 0.0).unwrap()
        ));
    }

    #[test]
    fn lemma1_limits() {
        let reg = Regime::new(0.1, 100.0, 0.5, 0.5, 0.5).unwrap();
        assert_eq!(gain_lemma1(&reg, 1).unwrap().gain, LinearGain::UNITY);
        let reg = Regime::new(0.0, 1e15, 0.5, 32.0, 0.5).unwrap();
        assert!((gain_lemma1(&reg, 64).unwrap().gain.value() - 1.0).abs() < 1e-12);
        let reg = Regime::new(0.0, 10.0, 0.5, 32.0, 0.0).unwrap();
        assert!(!gain_lemma1(&reg, 64).unwrap().in_fresnel_region);
        assert!(gain_lemma1(&reg, 0).is_err());
    }

    proptest! {
        #[test]
        fn lemma1_symmetric_in_angle(
            f in -0.3f64..0.3,
            th in 0.0f64..1.4,
            r in 50.0f64..1e5,
            n in 2usize..300,
        ) {
            let a = Regime::new(f, r, 0.5, n as f64 * 0.5, th).unwrap();
            let b = Regime::new(f, r, 0.5, n as f64 * 0.5, -th).unwrap();
            let ga = gain_lemma1(&a, n).unwrap().gain.value();
            let gb = gain_lemma1(&b, n).unwrap().gain.value();
            prop_assert!((ga - gb).abs() < 1e-12);
        }
    }
}
