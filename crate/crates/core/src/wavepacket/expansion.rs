use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::integrals::{gaussian_trig_integral, TrigKind};
use super::{GaussianPacket, MIN_CLEARANCE};
use crate::config::{BilliardConfig, Variant, SQRT3};
use crate::eigenfunctions::{norm_pm, norm_special};
use crate::error::{Error, Result};
use crate::numeric::pairwise_sum;
use crate::spectrum::{states_up_to, QuantumNumbers, Symmetry};

/// Captured-norm deficit above which the expansion carries a warning.
pub const NORM_DEFICIT_WARNING: f64 = 1e-3;

/// Which levels enter the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    /// All levels with `k ≤ |p₀|/ħ + 10/b`; the Gaussian momentum amplitude
    /// beyond is below `e^{−50}`.
    Auto,
    /// All levels with `ε ≤` the given bound.
    MaxEpsilon(u64),
}

impl Truncation {
    pub fn max_epsilon(&self, packet: &GaussianPacket, cfg: &BilliardConfig) -> u64 {
        match *self {
            Truncation::MaxEpsilon(e) => e,
            Truncation::Auto => {
                let k_max = packet.p0() / cfg.hbar + 10.0 / packet.b;
                let root = k_max * cfg.a * 3.0 / (4.0 * PI);
                (root * root).floor() as u64
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficient {
    pub qn: QuantumNumbers,
    pub epsilon: u64,
    pub amplitude: Complex64,
}

/// Expansion coefficients of one packet in one billiard.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionTable {
    pub packet: GaussianPacket,
    pub variant: Variant,
    pub eps_max: u64,
    /// Sorted like [`states_up_to`].
    pub coefficients: Vec<Coefficient>,
    /// `Σ|a|²`.
    pub captured_norm: f64,
    pub warnings: Vec<String>,
}

impl ExpansionTable {
    pub fn get(&self, qn: &QuantumNumbers) -> Option<&Coefficient> {
        self.coefficients
            .binary_search_by_key(&(qn.epsilon(), qn.m, qn.n, qn.sym), |c| {
                (c.epsilon, c.qn.m, c.qn.n, c.qn.sym)
            })
            .ok()
            .map(|i| &self.coefficients[i])
    }

    /// `Σ|a|²` over the coefficients of one symmetry.
    pub fn norm_of(&self, sym: Symmetry) -> f64 {
        let w: Vec<f64> = self
            .coefficients
            .iter()
            .filter(|c| c.qn.sym == sym)
            .map(|c| c.amplitude.norm_sqr())
            .collect();
        pairwise_sum(&w)
    }
}

/// One-dimensional integral tables `∫ψ₀(u) trig(2πj u/L) du` for
/// `j ∈ [−extent, extent]`.
struct AxisIntegrals {
    offset: usize,
    sin: Vec<Complex64>,
    cos: Vec<Complex64>,
}

impl AxisIntegrals {
    fn new(period: f64, extent: usize, center: f64, kp: f64, b: f64) -> Self {
        let idx = -(extent as i64)..=(extent as i64);
        let k = |j: i64| 2.0 * PI * j as f64 / period;
        Self {
            offset: extent,
            sin: idx
                .clone()
                .map(|j| gaussian_trig_integral(TrigKind::Sin, k(j), center, kp, b))
                .collect(),
            cos: idx
                .map(|j| gaussian_trig_integral(TrigKind::Cos, k(j), center, kp, b))
                .collect(),
        }
    }

    #[inline]
    fn s(&self, j: i64) -> Complex64 {
        self.sin[(j + self.offset as i64) as usize]
    }

    #[inline]
    fn c(&self, j: i64) -> Complex64 {
        self.cos[(j + self.offset as i64) as usize]
    }
}

/// Expansion of `packet` in the eigenstates of `cfg`, with the overlap
/// integrals extended to the whole plane.
///
/// Half-billiard coefficients use the `√2ψ⁻` basis and therefore equal
/// `√2·a⁻` of the full-billiard expansion of the same packet.
pub fn expand(
    packet: &GaussianPacket,
    cfg: &BilliardConfig,
    trunc: Truncation,
) -> Result<ExpansionTable> {
    let packet = GaussianPacket::new(packet.x0, packet.y0, packet.p0x, packet.p0y, packet.b)?;
    let eps_max = trunc.max_epsilon(&packet, cfg);
    if eps_max < 3 {
        return Err(Error::param(
            "truncation",
            format!("eps_max {eps_max} admits no level"),
        ));
    }
    let states = states_up_to(cfg.variant, eps_max);
    let m_max = states.iter().map(|q| q.m).max().unwrap_or(2) as usize;
    let extent = 3 * m_max + 1;
    let a = cfg.a;
    let b = packet.b;
    let xs = AxisIntegrals::new(3.0 * a, extent, packet.x0, packet.p0x / cfg.hbar, b);
    let ys = AxisIntegrals::new(SQRT3 * a, extent, packet.y0, packet.p0y / cfg.hbar, b);
    // (b√π)^{-1/2} per axis
    let g = 1.0 / (b * PI.sqrt());
    let (n_pm, n_o) = match cfg.variant {
        Variant::Full => (norm_pm(a) * g, norm_special(a) * g),
        Variant::Half => (2f64.sqrt() * norm_pm(a) * g, 0.0),
    };

    let coefficients: Vec<Coefficient> = states
        .par_iter()
        .map(|&qn| {
            let (m, n) = (qn.m as i64, qn.n as i64);
            let amplitude = match qn.sym {
                Symmetry::Minus => {
                    n_pm * (xs.s(2 * m - n) * ys.s(n)
                        - xs.s(2 * n - m) * ys.s(m)
                        - xs.s(m + n) * ys.s(m - n))
                }
                Symmetry::Plus => {
                    n_pm * (xs.c(2 * m - n) * ys.s(n) - xs.c(2 * n - m) * ys.s(m)
                        + xs.c(m + n) * ys.s(m - n))
                }
                Symmetry::Special => n_o * (2.0 * xs.c(3 * n) * ys.s(n) - xs.c(0) * ys.s(2 * n)),
            };
            Coefficient {
                qn,
                epsilon: qn.epsilon(),
                amplitude,
            }
        })
        .collect();

    let weights: Vec<f64> = coefficients
        .iter()
        .map(|c| c.amplitude.norm_sqr())
        .collect();
    let captured_norm = pairwise_sum(&weights);
    let mut warnings = Vec::new();
    let clearance = packet.clearance(cfg.variant, a);
    if clearance < MIN_CLEARANCE {
        warnings.push(format!(
            "packet centre is {clearance:.2} widths from the nearest wall (want >= {MIN_CLEARANCE})"
        ));
    }
    if 1.0 - captured_norm > NORM_DEFICIT_WARNING {
        warnings.push(format!(
            "captured norm {captured_norm:.6} has deficit {:.3e}",
            1.0 - captured_norm
        ));
    }
    Ok(ExpansionTable {
        packet,
        variant: cfg.variant,
        eps_max,
        coefficients,
        captured_norm,
        warnings,
    })
}

/// `Σ|a|² E`.
pub fn energy_expectation(table: &ExpansionTable, cfg: &BilliardConfig) -> f64 {
    let e0 = cfg.e0();
    let terms: Vec<f64> = table
        .coefficients
        .iter()
        .map(|c| c.amplitude.norm_sqr() * e0 * c.epsilon as f64)
        .collect();
    pairwise_sum(&terms)
}

/// `⟨E⟩ = (p₀ₓ² + p₀ᵧ² + ħ²/b²)/2μ` of the free Gaussian.
pub fn gaussian_energy(packet: &GaussianPacket, cfg: &BilliardConfig) -> f64 {
    (packet.p0x.powi(2) + packet.p0y.powi(2) + (cfg.hbar / packet.b).powi(2)) / (2.0 * cfg.mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::PAPER_WIDTH;

    fn centroid(p0: f64, theta: f64) -> GaussianPacket {
        GaussianPacket::from_polar(0.0, SQRT3 / 3.0, p0, theta, PAPER_WIDTH).unwrap()
    }

    #[test]
    fn centroid_packet_is_captured() {
        let cfg = BilliardConfig::default();
        let t = expand(&centroid(0.0, 0.0), &cfg, Truncation::Auto).unwrap();
        assert!(
            t.captured_norm >= 0.999 && t.captured_norm <= 1.0 + 1e-9,
            "{}",
            t.captured_norm
        );
        assert!(t.warnings.is_empty(), "{:?}", t.warnings);
    }

    #[test]
    fn centroid_selection_rule() {
        let cfg = BilliardConfig::default();
        let t = expand(&centroid(0.0, 0.0), &cfg, Truncation::Auto).unwrap();
        for c in &t.coefficients {
            if (c.qn.m + c.qn.n) % 3 != 0 {
                assert!(c.amplitude.norm() < 1e-6, "{} {}", c.qn, c.amplitude);
            }
        }
    }

    #[test]
    fn x_even_packets_have_no_minus_component() {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::new(0.0, 0.5, 0.0, 0.0, PAPER_WIDTH).unwrap();
        let t = expand(&p, &cfg, Truncation::Auto).unwrap();
        for c in t
            .coefficients
            .iter()
            .filter(|c| c.qn.sym == Symmetry::Minus)
        {
            assert!(c.amplitude.norm() < 1e-10);
        }
    }

    #[test]
    fn half_domain_packet_splits_probability() {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::from_polar(0.2, 0.6, 40.0, 20.0, PAPER_WIDTH).unwrap();
        let full = expand(&p, &cfg, Truncation::Auto).unwrap();
        assert!((full.norm_of(Symmetry::Minus) - 0.5 * full.captured_norm).abs() < 1e-3);
        let half = expand(&p, &cfg.with_variant(Variant::Half), Truncation::Auto).unwrap();
        for c in &half.coefficients {
            let f = full.get(&c.qn).unwrap();
            assert!((c.amplitude - 2f64.sqrt() * f.amplitude).norm() < 1e-14);
        }
        assert!((half.captured_norm - 2.0 * full.norm_of(Symmetry::Minus)).abs() < 1e-12);
    }

    #[test]
    fn zero_point_energy() {
        let cfg = BilliardConfig::default();
        let p = centroid(0.0, 0.0);
        let t = expand(&p, &cfg, Truncation::Auto).unwrap();
        let exact = gaussian_energy(&p, &cfg);
        assert!((exact - 200.0).abs() < 1e-9);
        assert!((energy_expectation(&t, &cfg) - exact).abs() < 1e-3 * exact);
        let wide = GaussianPacket { b: 2.0 * p.b, ..p };
        assert!((gaussian_energy(&wide, &cfg) - exact / 4.0).abs() < 1e-9);
    }

    #[test]
    fn near_wall_packet_warns() {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::new(0.0, 0.12, 0.0, 0.0, PAPER_WIDTH).unwrap();
        let t = expand(&p, &cfg, Truncation::Auto).unwrap();
        assert!(!t.warnings.is_empty());
        assert!(t.captured_norm < 0.999);
    }

    #[test]
    fn explicit_truncation_limits_levels() {
        let cfg = BilliardConfig::default();
        let t = expand(&centroid(0.0, 0.0), &cfg, Truncation::MaxEpsilon(50)).unwrap();
        assert!(t.coefficients.iter().all(|c| c.epsilon <= 50));
        assert!(expand(&centroid(0.0, 0.0), &cfg, Truncation::MaxEpsilon(2)).is_err());
    }
}
