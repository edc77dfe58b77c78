//! Gaussian wave packets in the triangular billiards.
//!
//! A packet `ψ₀(x)ψ₀(y)` with
//! `ψ₀(x) = (b√π)^{-1/2} e^{ip₀ₓ(x−x₀)/ħ} e^{−(x−x₀)²/2b²}` is expanded in the
//! eigenstates by extending the overlap integrals to the whole plane, where
//! each one factors into one-dimensional Gaussian–trig integrals with closed
//! forms. Because every energy is an integer multiple of `E₀`, the evolved
//! state and its autocorrelation are exactly periodic with period
//! `T_rev = 2πħ/E₀`.

mod autocorr;
mod density;
mod expansion;
mod integrals;
mod revivals;
mod timescales;

pub use autocorr::{
    autocorrelation, autocorrelation_at, linspace, local_maxima, AutocorrSeries, OrbitMarker,
    SpectralWeights,
};
pub use density::{density_integral, density_snapshot, rms_difference, DensityField};
pub use expansion::{
    energy_expectation, expand, gaussian_energy, Coefficient, ExpansionTable, Truncation,
    NORM_DEFICIT_WARNING,
};
pub use integrals::{gaussian_trig_integral, TrigKind};
pub use revivals::{
    revival_scan, FractionResult, RevivalSample, RevivalScan, DEFAULT_FRACTIONS,
    DEFAULT_REVIVAL_THRESHOLD,
};
pub use timescales::{
    central_quantum_numbers, closed_orbit_period, level_periods, timescales, OrbitTimescales,
    TimescaleSet,
};

use serde::{Deserialize, Serialize};

use crate::config::{BilliardConfig, Variant};
use crate::eigenfunctions::Point2D;
use crate::error::{Error, Result};

/// Minimum wall clearance, in units of `Δx₀ = b/√2`, for the whole-plane
/// expansion to be accurate.
pub const MIN_CLEARANCE: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianPacket {
    pub x0: f64,
    pub y0: f64,
    pub p0x: f64,
    pub p0y: f64,
    pub b: f64,
}

impl GaussianPacket {
    pub fn new(x0: f64, y0: f64, p0x: f64, p0y: f64, b: f64) -> Result<Self> {
        if !(b.is_finite() && b > 0.0) {
            return Err(Error::param(
                "b",
                format!("width must be positive, got {b}"),
            ));
        }
        for (name, v) in [("x0", x0), ("y0", y0), ("p0x", p0x), ("p0y", p0y)] {
            if !v.is_finite() {
                return Err(Error::param(name, "must be finite"));
            }
        }
        Ok(Self {
            x0,
            y0,
            p0x,
            p0y,
            b,
        })
    }

    /// Momentum `(p₀ cos θ, p₀ sin θ)` with `θ` in degrees.
    pub fn from_polar(x0: f64, y0: f64, p0: f64, theta_deg: f64, b: f64) -> Result<Self> {
        let (s, c) = theta_deg.to_radians().sin_cos();
        Self::new(x0, y0, p0 * c, p0 * s, b)
    }

    pub fn p0(&self) -> f64 {
        self.p0x.hypot(self.p0y)
    }

    pub fn theta_deg(&self) -> f64 {
        self.p0y.atan2(self.p0x).to_degrees()
    }

    /// `Δx₀ = Δy₀ = b/√2`.
    pub fn delta_x(&self) -> f64 {
        self.b / 2f64.sqrt()
    }

    /// `Δp₀ = ħ/(√2 b)` per axis.
    pub fn delta_p(&self, hbar: f64) -> f64 {
        hbar / (2f64.sqrt() * self.b)
    }

    /// Classical speed `v₀ = p₀/μ`.
    pub fn speed(&self, cfg: &BilliardConfig) -> f64 {
        self.p0() / cfg.mu
    }

    /// Distance from the centre to the nearest wall, in units of `Δx₀`.
    pub fn clearance(&self, variant: Variant, a: f64) -> f64 {
        Point2D::new(self.x0, self.y0).wall_distance(variant, a) / self.delta_x()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_construction_and_widths() {
        let p = GaussianPacket::from_polar(0.0, 0.5, 1500.0, 30.0, 0.1).unwrap();
        assert!((p.p0() - 1500.0).abs() < 1e-9);
        assert!((p.theta_deg() - 30.0).abs() < 1e-12);
        assert!((p.delta_x() - 0.1 / 2f64.sqrt()).abs() < 1e-15);
        assert!((p.delta_p(1.0) - 1.0 / (0.1 * 2f64.sqrt())).abs() < 1e-12);
        assert!(GaussianPacket::new(0.0, 0.5, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn clearance_at_centroid() {
        let b = 1.0 / (10.0 * 2f64.sqrt());
        let p = GaussianPacket::new(0.0, 3f64.sqrt() / 3.0, 0.0, 0.0, b).unwrap();
        let inradius = 1.0 / (2.0 * 3f64.sqrt());
        assert!((p.clearance(Variant::Full, 1.0) - inradius / 0.05).abs() < 1e-9);
    }
}
