//! Figure commands: each turns a scenario into a [`SweepTable`].
//!
//! Grids are fixed before evaluation and rows are evaluated in parallel with
//! an order-preserving collect, so the output does not depend on the thread
//! count.

use rayon::prelude::*;
use wbnf_core::array::ArrayGeometry;
use wbnf_core::fresnel::{gain_closed_form, GammaPair};
use wbnf_core::regime::{
    band_distance, bmax_for, d_erd, d_fa, main_lobe_edge, product_max, ProductMaxSettings,
    ThresholdSpec,
};

use crate::error::CliError;
use crate::scenario::{Scale, Scenario, Sweep, SweepAxis, Units};
use crate::table::SweepTable;

/// Default threshold sweep of `bmax-curve`, in dB.
pub const BMAX_TAU_DB_RANGE: (f64, f64) = (-3.0, -0.1);
/// Points in the default `bmax-curve` threshold sweep.
pub const BMAX_TAU_POINTS: usize = 59;
/// Default `band-map` frequency range as a fraction of the carrier.
pub const BAND_MAP_SPAN: f64 = 0.05;
/// Points in the default `band-map` frequency grid (odd, so `f = 0` is on it).
pub const BAND_MAP_POINTS: usize = 201;

/// The figure subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// `G(γ1, γ2)` over a rectangular grid.
    GainSurface,
    /// 1-D cuts of `G` at fixed `γ1` and at fixed `γ2`.
    GainCuts,
    /// Main-lobe boundaries and `[γ1γ2]_max` per threshold.
    Contours,
    /// `B_max` against threshold for aperture/carrier presets.
    BmaxCurve,
    /// Bandwidth-aware near-field distance against frequency offset.
    BandMap,
}

impl Figure {
    /// Subcommand name.
    pub fn name(self) -> &'static str {
        match self {
            Figure::GainSurface => "gain-surface",
            Figure::GainCuts => "gain-cuts",
            Figure::Contours => "contours",
            Figure::BmaxCurve => "bmax-curve",
            Figure::BandMap => "band-map",
        }
    }
}

/// Runs a figure command.
pub fn run(figure: Figure, scenario: &Scenario, units: Units) -> Result<SweepTable, CliError> {
    let mut table = match figure {
        Figure::GainSurface => run_gain_surface(scenario, units),
        Figure::GainCuts => run_gain_cuts(scenario, units),
        Figure::Contours => run_contours(scenario, units)?,
        Figure::BmaxCurve => run_bmax_curve(scenario, units)?,
        Figure::BandMap => run_band_map(scenario, units)?,
    };
    let mut header = vec![
        (
            "tool".to_string(),
            concat!("wbnf ", env!("CARGO_PKG_VERSION")).to_string(),
        ),
        ("command".into(), figure.name().into()),
        ("units".into(), units.suffix().into()),
    ];
    for line in scenario.to_toml().lines().filter(|l| !l.trim().is_empty()) {
        header.push(("scenario".into(), line.into()));
    }
    table.prepend_meta(header);
    Ok(table)
}

fn gain_col(units: Units) -> String {
    format!("gain_{}", units.suffix())
}

fn tau_col(units: Units) -> String {
    format!("tau_{}", units.suffix())
}

/// `n` values `max·(2i − (n−1))/(n−1)`: exactly antisymmetric about zero.
fn symmetric_axis(max: f64, n: usize) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n).map(|i| max * (2.0 * i as f64 - m) / m).collect()
}

/// `n` values `max·i/n`, `i = 1..=n`.
fn positive_axis(max: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|i| max * i as f64 / n as f64).collect()
}

fn gamma1_axis(s: &Scenario) -> Vec<f64> {
    s.sweep_for(SweepAxis::Gamma1)
        .map(Sweep::values)
        .unwrap_or_else(|| symmetric_axis(s.grid.gamma1_max, s.grid.gamma_points))
}

fn gamma2_axis(s: &Scenario) -> Vec<f64> {
    s.sweep_for(SweepAxis::Gamma2)
        .map(Sweep::values)
        .unwrap_or_else(|| positive_axis(s.grid.gamma2_max, s.grid.gamma_points))
}

fn gain(units: Units, gamma1: f64, gamma2: f64) -> f64 {
    // γ2 is validated nonnegative and γ1 finite, so construction cannot fail.
    let g = gain_closed_form(GammaPair::new(gamma1, gamma2).expect("valid gamma pair"));
    match units {
        // An exact null would be -inf dB, which the table rejects.
        Units::Db => g.to_db().max(10.0 * f64::MIN_POSITIVE.log10()),
        Units::Linear => g.value(),
    }
}

/// `(γ1, γ2, gain)` over the grid, `γ2` outermost.
pub fn run_gain_surface(s: &Scenario, units: Units) -> SweepTable {
    let g1 = gamma1_axis(s);
    let g2 = gamma2_axis(s);
    let rows: Vec<Vec<Vec<f64>>> = g2
        .par_iter()
        .map(|&b| g1.iter().map(|&a| vec![a, b, gain(units, a, b)]).collect())
        .collect();
    let mut t = SweepTable::new(["gamma1".to_string(), "gamma2".into(), gain_col(units)]);
    t.push_meta(
        "grid",
        format!("{} x {} (gamma1 x gamma2)", g1.len(), g2.len()),
    );
    rows.into_iter().flatten().for_each(|r| t.push_row(r));
    t
}

/// Gain against `γ2` at each `cut_gamma1`, then against `γ1` at each
/// `cut_gamma2`. `fixed_axis` is 1 or 2 for the held coordinate.
pub fn run_gain_cuts(s: &Scenario, units: Units) -> SweepTable {
    let g1 = gamma1_axis(s);
    let g2 = gamma2_axis(s);
    let mut t = SweepTable::new([
        "fixed_axis".to_string(),
        "gamma1".into(),
        "gamma2".into(),
        gain_col(units),
    ]);
    t.push_meta("fixed_axis", "1 = gamma1 held fixed, 2 = gamma2 held fixed");
    for &a in &s.grid.cut_gamma1 {
        let rows: Vec<Vec<f64>> = g2
            .par_iter()
            .map(|&b| vec![1.0, a, b, gain(units, a, b)])
            .collect();
        rows.into_iter().for_each(|r| t.push_row(r));
    }
    for &b in &s.grid.cut_gamma2 {
        let rows: Vec<Vec<f64>> = g1
            .par_iter()
            .map(|&a| vec![2.0, a, b, gain(units, a, b)])
            .collect();
        rows.into_iter().for_each(|r| t.push_row(r));
    }
    t
}

fn threshold(units: Units, v: f64) -> Result<ThresholdSpec, CliError> {
    let lin = units.to_linear(v);
    if lin >= 1.0 {
        return Err(CliError::NoContour(v));
    }
    Ok(ThresholdSpec::new(lin)?)
}

fn tau_list(s: &Scenario) -> Vec<f64> {
    s.sweep_for(SweepAxis::TauDb)
        .map(Sweep::values)
        .unwrap_or_else(|| s.thresholds())
}

/// Main-lobe boundary points `G = τ` (both signs of `γ1`) for each `γ2` on
/// the grid, with the threshold's `[γ1γ2]_max` repeated on every row.
pub fn run_contours(s: &Scenario, units: Units) -> Result<SweepTable, CliError> {
    let settings = ProductMaxSettings::default();
    let g2 = gamma2_axis(s);
    let mut t = SweepTable::new([
        tau_col(units),
        "gamma1".into(),
        "gamma2".into(),
        gain_col(units),
        "product_max".into(),
    ]);
    t.push_meta(
        "contour",
        "main-lobe boundary G(gamma1, gamma2) = tau traced at fixed gamma2",
    );
    for tau in tau_list(s) {
        let spec = threshold(units, tau)?;
        let pmax = product_max(spec)?.value;
        let rows: Vec<Vec<Vec<f64>>> = g2
            .par_iter()
            .map(|&b| match main_lobe_edge(b, spec.linear(), &settings) {
                Some(p) if p < settings.product_limit => {
                    let a = p / b;
                    let g = gain(units, a, b);
                    vec![vec![tau, -a, b, g, pmax], vec![tau, a, b, g, pmax]]
                }
                _ => Vec::new(),
            })
            .collect();
        rows.into_iter().flatten().for_each(|r| t.push_row(r));
    }
    Ok(t)
}

/// `B_max` for each threshold and `(aperture, carrier)` preset.
pub fn run_bmax_curve(s: &Scenario, units: Units) -> Result<SweepTable, CliError> {
    let taus = match s.sweep_for(SweepAxis::TauDb) {
        Some(sw) => sw.values(),
        None => {
            let (lo, hi) = BMAX_TAU_DB_RANGE;
            let db = Sweep {
                axis: SweepAxis::TauDb,
                min: lo,
                max: hi,
                points: BMAX_TAU_POINTS,
                scale: Scale::Linear,
            };
            db.values()
                .into_iter()
                .map(|v| units.from_linear(Units::Db.to_linear(v)))
                .collect()
        }
    };
    let theta = s.theta_worst_deg.to_radians();
    let specs = taus
        .iter()
        .map(|&v| threshold(units, v))
        .collect::<Result<Vec<_>, _>>()?;
    let products = specs
        .par_iter()
        .map(|&spec| product_max(spec).map(|p| p.value))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = SweepTable::new([
        tau_col(units),
        "aperture_m".into(),
        "carrier_hz".into(),
        "bmax_hz".into(),
    ]);
    t.push_meta("theta_worst_deg", s.theta_worst_deg.to_string());
    for (&tau, &p) in taus.iter().zip(&products) {
        for &[aperture, carrier] in &s.grid.bmax_presets {
            t.push_row(vec![tau, aperture, carrier, bmax_for(p, aperture, theta)?]);
        }
    }
    Ok(t)
}

/// Distance beyond which the gain at offset `f` stays above each threshold,
/// with the effective Rayleigh and Fraunhofer distances for reference.
pub fn run_band_map(s: &Scenario, units: Units) -> Result<SweepTable, CliError> {
    let fc = s.carrier_hz;
    let geom = ArrayGeometry::with_normalized_spacing(s.n_antennas, s.dbar, fc)?;
    let theta = s.theta_deg.to_radians();
    let lambda = geom.wavelength_m();
    let (erd, fa) = (d_erd(theta, geom.lbar(), lambda), d_fa(geom.lbar(), lambda));
    let freqs = s
        .sweep_for(SweepAxis::FHz)
        .map(Sweep::values)
        .unwrap_or_else(|| symmetric_axis(BAND_MAP_SPAN * fc, BAND_MAP_POINTS));
    let mut t = SweepTable::new([
        "f_hz".to_string(),
        tau_col(units),
        "band_m".into(),
        "d_erd_m".into(),
        "d_fa_m".into(),
    ]);
    t.push_meta("band_m", "inf = gain never recovers to tau at this offset");
    t.push_meta("aperture_m", geom.aperture_m().to_string());
    for tau in tau_list(s) {
        let spec = threshold(units, tau)?;
        let bands = freqs
            .par_iter()
            .map(|&f| band_distance(f, fc, spec, geom.aperture_m(), theta).map(|b| b.meters()))
            .collect::<Result<Vec<_>, _>>()?;
        for (&f, band) in freqs.iter().zip(bands) {
            t.push_row(vec![f, tau, band, erd, fa]);
        }
    }
    Ok(t)
}
