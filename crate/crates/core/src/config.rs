//! Physical parameters shared by every computation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Which billiard: the equilateral triangle or its 30-60-90 half (`x ≥ 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Full,
    Half,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Full => "full",
            Variant::Half => "half",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Variant::Full),
            "half" => Ok(Variant::Half),
            other => Err(Error::param(
                "variant",
                format!("expected full|half, got {other:?}"),
            )),
        }
    }
}

/// Side length, particle mass and action quantum of a billiard.
///
/// The default is the dimensionless system `ħ = 1`, `2μ = 1`, `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BilliardConfig {
    pub a: f64,
    pub mu: f64,
    pub hbar: f64,
    pub variant: Variant,
}

impl Default for BilliardConfig {
    fn default() -> Self {
        Self::dimensionless(Variant::Full)
    }
}

impl BilliardConfig {
    pub fn new(a: f64, mu: f64, hbar: f64, variant: Variant) -> Result<Self> {
        for (name, v) in [("a", a), ("mu", mu), ("hbar", hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(
                    name,
                    format!("must be positive and finite, got {v}"),
                ));
            }
        }
        Ok(Self {
            a,
            mu,
            hbar,
            variant,
        })
    }

    pub fn dimensionless(variant: Variant) -> Self {
        Self {
            a: 1.0,
            mu: 0.5,
            hbar: 1.0,
            variant,
        }
    }

    pub fn with_variant(self, variant: Variant) -> Self {
        Self { variant, ..self }
    }

    pub fn area(&self) -> f64 {
        match self.variant {
            Variant::Full => SQRT3 * self.a * self.a / 4.0,
            Variant::Half => SQRT3 * self.a * self.a / 8.0,
        }
    }

    pub fn perimeter(&self) -> f64 {
        match self.variant {
            Variant::Full => 3.0 * self.a,
            Variant::Half => (1.5 + SQRT3 / 2.0) * self.a,
        }
    }

    /// Energy unit `E₀ = (ħ²/2μa²)(4π/3)²`.
    pub fn e0(&self) -> f64 {
        let w = 4.0 * PI / 3.0;
        self.hbar * self.hbar / (2.0 * self.mu * self.a * self.a) * w * w
    }

    /// Revival time `T_rev = 9μa²/(4ħπ) = 2πħ/E₀`.
    pub fn revival_time(&self) -> f64 {
        9.0 * self.mu * self.a * self.a / (4.0 * self.hbar * PI)
    }

    /// Height of the triangle, `√3a/2`.
    pub fn height(&self) -> f64 {
        SQRT3 * self.a / 2.0
    }

    /// Geometric centre `(0, √3a/3)` of the full triangle.
    pub fn centroid(&self) -> (f64, f64) {
        (0.0, SQRT3 * self.a / 3.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(BilliardConfig::new(0.0, 1.0, 1.0, Variant::Full).is_err());
        assert!(BilliardConfig::new(1.0, -1.0, 1.0, Variant::Full).is_err());
        assert!(BilliardConfig::new(1.0, 1.0, f64::NAN, Variant::Full).is_err());
    }

    #[test]
    fn geometry_of_both_variants() {
        let full = BilliardConfig::default();
        let half = full.with_variant(Variant::Half);
        assert!((full.area() - 3f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((half.area() - full.area() / 2.0).abs() < 1e-15);
        assert_eq!(full.perimeter(), 3.0);
        assert!((half.perimeter() - (1.5 + 3f64.sqrt() / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn revival_time_is_two_pi_hbar_over_e0() {
        let cfg = BilliardConfig::new(1.3, 0.7, 0.9, Variant::Full).unwrap();
        let t = 2.0 * PI * cfg.hbar / cfg.e0();
        assert!((t - cfg.revival_time()).abs() < 1e-14 * t);
    }
}
