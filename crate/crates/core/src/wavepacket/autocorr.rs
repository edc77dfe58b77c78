use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::ExpansionTable;
use crate::config::BilliardConfig;
use crate::numeric::{integer_phase, pairwise_sum, sin_cos_2pi};
use crate::orbits::enumerate_orbits;

/// Weights below this fraction of the total are dropped from time evolution.
const WEIGHT_CUTOFF: f64 = 1e-18;

/// Longest orbit considered for autocorrelation markers, in units of `a`.
const MARKER_MAX_LENGTH: f64 = 100.0;

/// `|a|²` summed over each distinct `ε`, sorted by `ε`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralWeights {
    pub epsilon: Vec<u64>,
    pub weight: Vec<f64>,
    /// `Σ|a|²` before pruning.
    pub total: f64,
}

impl SpectralWeights {
    pub fn from_table(table: &ExpansionTable) -> Self {
        let mut epsilon = Vec::new();
        let mut weight: Vec<f64> = Vec::new();
        for c in &table.coefficients {
            let w = c.amplitude.norm_sqr();
            if epsilon.last() == Some(&c.epsilon) {
                *weight.last_mut().unwrap() += w;
            } else {
                epsilon.push(c.epsilon);
                weight.push(w);
            }
        }
        let total = pairwise_sum(&weight);
        let keep: Vec<bool> = weight.iter().map(|&w| w > WEIGHT_CUTOFF * total).collect();
        let mut k = keep.iter();
        epsilon.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        weight.retain(|_| *k.next().unwrap());
        Self {
            epsilon,
            weight,
            total,
        }
    }

    pub fn len(&self) -> usize {
        self.epsilon.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epsilon.is_empty()
    }

    /// `A` at `t = s·T_rev`: `Σ w e^{+2πiεs}`.
    pub fn at(&self, s: f64) -> Complex64 {
        let terms: Vec<Complex64> = self
            .epsilon
            .iter()
            .zip(&self.weight)
            .map(|(&e, &w)| {
                let (sn, cs) = sin_cos_2pi(integer_phase(e, s));
                Complex64::new(w * cs, w * sn)
            })
            .collect();
        pairwise_sum(&terms)
    }
}

/// A closed orbit whose period falls inside the sampled window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitMarker {
    pub label: String,
    pub theta_deg: f64,
    pub length: f64,
    pub period: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutocorrSeries {
    pub t: Vec<f64>,
    pub a: Vec<Complex64>,
    pub t_rev: f64,
    /// `a/v₀`; absent for a packet at rest.
    pub tau: Option<f64>,
    pub markers: Vec<OrbitMarker>,
}

impl AutocorrSeries {
    pub fn abs(&self) -> Vec<f64> {
        self.a.iter().map(|z| z.norm()).collect()
    }
}

/// `A(t) = Σ|a|² e^{+iEt/ħ}` on `times`.
pub fn autocorrelation(
    table: &ExpansionTable,
    cfg: &BilliardConfig,
    times: &[f64],
) -> AutocorrSeries {
    let weights = SpectralWeights::from_table(table);
    let t_rev = cfg.revival_time();
    let a = times.par_iter().map(|&t| weights.at(t / t_rev)).collect();
    let v0 = table.packet.speed(cfg);
    let t_max = times.iter().copied().fold(0.0, f64::max);
    let markers = if v0 > 0.0 {
        markers(table, cfg, v0, t_max)
    } else {
        Vec::new()
    };
    AutocorrSeries {
        t: times.to_vec(),
        a,
        t_rev,
        tau: (v0 > 0.0).then(|| cfg.a / v0),
        markers,
    }
}

fn markers(table: &ExpansionTable, cfg: &BilliardConfig, v0: f64, t_max: f64) -> Vec<OrbitMarker> {
    let l_max = (v0 * t_max).min(MARKER_MAX_LENGTH * cfg.a);
    let Ok(catalog) = enumerate_orbits(l_max * (1.0 + 1e-12), table.variant, cfg.a) else {
        return Vec::new();
    };
    let mut out: Vec<OrbitMarker> = catalog
        .features()
        .map(|(class, length)| OrbitMarker {
            label: class.label(),
            theta_deg: class.angle_deg,
            length,
            period: length / v0,
        })
        .collect();
    out.sort_by(|x, y| {
        x.period
            .total_cmp(&y.period)
            .then(x.theta_deg.total_cmp(&y.theta_deg))
    });
    out
}

/// `A(t)` at a single time.
pub fn autocorrelation_at(table: &ExpansionTable, cfg: &BilliardConfig, t: f64) -> Complex64 {
    SpectralWeights::from_table(table).at(t / cfg.revival_time())
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Indices of interior local maxima (`v[i−1] < v[i] ≥ v[i+1]`).
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    (1..values.len().saturating_sub(1))
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SQRT3;
    use crate::presets::PAPER_WIDTH;
    use crate::wavepacket::{expand, GaussianPacket, Truncation};

    fn table(x0: f64, y0: f64, p0: f64, theta: f64) -> ExpansionTable {
        let p = GaussianPacket::from_polar(x0, y0, p0, theta, PAPER_WIDTH).unwrap();
        expand(&p, &BilliardConfig::default(), Truncation::Auto).unwrap()
    }

    #[test]
    fn starts_at_captured_norm_and_is_periodic() {
        let cfg = BilliardConfig::default();
        let t = table(0.05, 0.5, 200.0, 20.0);
        let tr = cfg.revival_time();
        let s = autocorrelation(&t, &cfg, &[0.0, 0.137 * tr, tr, 1.137 * tr, 0.863 * tr]);
        let abs = s.abs();
        assert!((abs[0] - t.captured_norm).abs() < 1e-12);
        assert!((abs[2] - abs[0]).abs() < 1e-9);
        assert!((abs[3] - abs[1]).abs() < 1e-9);
        assert!((abs[4] - abs[1]).abs() < 1e-9);
        assert!(abs.iter().all(|&v| v <= abs[0] + 1e-12));
        assert!(!s.markers.is_empty());
    }

    #[test]
    fn rest_packet_has_no_markers() {
        let cfg = BilliardConfig::default();
        let t = table(0.0, SQRT3 / 3.0, 0.0, 0.0);
        let s = autocorrelation(&t, &cfg, &linspace(0.0, cfg.revival_time(), 5));
        assert!(s.markers.is_empty() && s.tau.is_none());
    }

    #[test]
    fn helpers() {
        assert_eq!(linspace(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(local_maxima(&[0.0, 1.0, 0.5, 0.7, 0.7, 0.1]), vec![1, 3]);
    }
}
