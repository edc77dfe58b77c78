//! Parameter sets behind the published figures. All use `ħ = 2μ = a = 1`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::config::{BilliardConfig, Variant, SQRT3};
use crate::error::{Error, Result};
use crate::spectrum::{QuantumNumbers, Symmetry};
use crate::wavepacket::GaussianPacket;

/// Packet width `b = 1/(10√2)`, so `Δx₀ = 0.05`.
pub const PAPER_WIDTH: f64 = 0.070_710_678_118_654_75;
pub const PAPER_MOMENTUM: f64 = 1500.0;
pub const PAPER_LEVELS: usize = 1000;
pub const PAPER_LMAX: f64 = 20.0;
pub const PAPER_DL: f64 = 0.002;
/// Autocorrelation window for moving packets, in units of `τ = a/v₀`.
pub const FIG8_WINDOW_TAU: f64 = 12.0;
pub const FIG8_POINTS: usize = 2000;
/// Launch angles of the autocorrelation sweep, in degrees.
pub const FIG8_ANGLES: [f64; 13] = [
    0.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0, 22.5, 25.0, 27.5, 30.0,
];
/// Samples per revival time for packets at rest.
pub const REVIVAL_POINTS: usize = 4096;
/// Rest-packet heights along `x = 0`.
pub const FIG9_HEIGHTS: [f64; 5] = [0.35, SQRT3 / 4.0, 0.5, SQRT3 / 3.0, 0.65];

pub fn paper_config(variant: Variant) -> BilliardConfig {
    BilliardConfig::dimensionless(variant)
}

pub fn centroid_packet(p0: f64, theta_deg: f64) -> GaussianPacket {
    GaussianPacket::from_polar(0.0, SQRT3 / 3.0, p0, theta_deg, PAPER_WIDTH)
        .expect("valid preset packet")
}

/// Packet half way down the bisector, `(0, √3a/4)`.
pub fn quarter_packet(p0: f64, theta_deg: f64) -> GaussianPacket {
    GaussianPacket::from_polar(0.0, SQRT3 / 4.0, p0, theta_deg, PAPER_WIDTH)
        .expect("valid preset packet")
}

/// Half-well states of the nodal-pattern figure: the three lowest, their
/// `(2m, 2n)` images and their `(2m−n, m−2n)` images.
pub fn fig2_states() -> Vec<QuantumNumbers> {
    [
        (3, 1),
        (4, 1),
        (5, 2),
        (5, 1),
        (7, 2),
        (8, 1),
        (6, 2),
        (8, 2),
        (10, 4),
    ]
    .into_iter()
    .map(|(m, n)| QuantumNumbers::new(m, n, Symmetry::Minus).expect("wedge state"))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Nodal patterns of low half-well states.
    PaperFig2,
    /// Full-well length spectrum from 1000 levels.
    PaperFig5,
    /// Full- and half-well length spectra.
    PaperFig7,
    /// Centroid packet with `p₀ = 1500`, angle sweep over `12τ`.
    PaperFig8,
    /// `(0, √3a/4)` packet with `p₀ = 1500`, `θ = 0`.
    PaperFig8Isolated,
    /// Rest packet at the centroid over one revival time.
    PaperFig9Centroid,
    /// Rest packet at `(0, √3a/4)` over one revival time.
    PaperFig9Quarter,
}

impl Preset {
    pub const ALL: [Preset; 7] = [
        Preset::PaperFig2,
        Preset::PaperFig5,
        Preset::PaperFig7,
        Preset::PaperFig8,
        Preset::PaperFig8Isolated,
        Preset::PaperFig9Centroid,
        Preset::PaperFig9Quarter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::PaperFig2 => "paper-fig2",
            Preset::PaperFig5 => "paper-fig5",
            Preset::PaperFig7 => "paper-fig7",
            Preset::PaperFig8 => "paper-fig8",
            Preset::PaperFig8Isolated => "paper-fig8-isolated",
            Preset::PaperFig9Centroid => "paper-fig9-centroid",
            Preset::PaperFig9Quarter => "paper-fig9-quarter",
        }
    }

    pub fn variant(self) -> Variant {
        match self {
            Preset::PaperFig2 => Variant::Half,
            _ => Variant::Full,
        }
    }

    pub fn config(self) -> BilliardConfig {
        paper_config(self.variant())
    }

    /// The packet of the wave-packet presets.
    pub fn packet(self) -> Option<GaussianPacket> {
        match self {
            Preset::PaperFig8 => Some(centroid_packet(PAPER_MOMENTUM, 0.0)),
            Preset::PaperFig8Isolated => Some(quarter_packet(PAPER_MOMENTUM, 0.0)),
            Preset::PaperFig9Centroid => Some(centroid_packet(0.0, 0.0)),
            Preset::PaperFig9Quarter => Some(quarter_packet(0.0, 0.0)),
            _ => None,
        }
    }

    /// Default sampling window `(t_max, points)` for a wave-packet preset.
    pub fn time_window(self) -> Option<(f64, usize)> {
        let cfg = self.config();
        match self {
            Preset::PaperFig8 | Preset::PaperFig8Isolated => {
                let v0 = self.packet()?.speed(&cfg);
                Some((FIG8_WINDOW_TAU * cfg.a / v0, FIG8_POINTS))
            }
            Preset::PaperFig9Centroid | Preset::PaperFig9Quarter => {
                Some((cfg.revival_time(), REVIVAL_POINTS))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let alias = match s.as_str() {
            "paper-fig9" => "paper-fig9-centroid",
            other => other,
        };
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == alias)
            .ok_or_else(|| Error::param("preset", format!("unknown preset '{s}'")))
    }
}
