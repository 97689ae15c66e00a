//! Beamforming gain of a frequency-flat, far-field-steered uniform linear array
//! observed by a receiver that may be both in the near field and off the
//! carrier frequency.
//!
//! The crate is `no_std` and only needs `alloc` for channel vectors and
//! beamformer weights. It is organised in three layers:
//!
//! - [`fresnel`]: Fresnel integrals `C` and `S`, and the two-parameter gain
//!   surface `G(γ1, γ2)` built from them.
//! - [`array`]: exact spherical-wave array geometry, the four channel models
//!   (near/far field, wide/narrow band), matched beamformers and the exact and
//!   finite-`N` approximate gains of the plane-wave beamformer.
//! - [`regime`]: normalized parameters, the forward and inverse maps between
//!   physical parameters and `(γ1, γ2)`, and threshold inversion into design
//!   limits (aperture-bandwidth product, maximum bandwidth and the
//!   frequency-selective near-field distance).
#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]
#![warn(missing_docs)]

extern crate alloc;

pub mod array;
mod error;
pub mod fresnel;
pub mod regime;

pub use error::Error;

/// Speed of light in vacuum (m/s), exact by definition of the metre.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Convenience alias used across the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Wavelength (m) of a carrier at `carrier_hz`.
#[inline]
pub fn wavelength(carrier_hz: f64) -> f64 {
    SPEED_OF_LIGHT / carrier_hz
}
