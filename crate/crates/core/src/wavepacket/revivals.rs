use rayon::prelude::*;
use serde::Serialize;

use super::autocorr::SpectralWeights;
use super::ExpansionTable;
use crate::config::BilliardConfig;
use crate::error::{Error, Result};

pub const DEFAULT_FRACTIONS: [u32; 3] = [1, 4, 9];

/// Fraction of `|A(0)|` a sample must reach to count as revived.
pub const DEFAULT_REVIVAL_THRESHOLD: f64 = 0.95;

/// Offset, in units of `T_rev`, used to test whether a sample is a local
/// maximum of `|A|`.
const PROBE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RevivalSample {
    pub k: u32,
    pub t: f64,
    pub abs_a: f64,
    /// `|A(t)|/|A(0)|`.
    pub ratio: f64,
    pub local_max: bool,
    pub revived: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FractionResult {
    pub fraction: u32,
    /// Samples at `t = k·T_rev/fraction`, `k = 1..=fraction`.
    pub samples: Vec<RevivalSample>,
    pub all_revived: bool,
    pub min_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalScan {
    pub t_rev: f64,
    pub abs_a0: f64,
    pub threshold: f64,
    pub results: Vec<FractionResult>,
}

impl RevivalScan {
    /// Fractions whose every sample revived.
    pub fn flagged(&self) -> Vec<u32> {
        self.results
            .iter()
            .filter(|r| r.all_revived)
            .map(|r| r.fraction)
            .collect()
    }
}

/// Evaluates `|A|` at `k·T_rev/f` for each requested `f`.
pub fn revival_scan(
    table: &ExpansionTable,
    cfg: &BilliardConfig,
    fractions: &[u32],
    threshold: f64,
) -> Result<RevivalScan> {
    if fractions.contains(&0) {
        return Err(Error::param("fractions", "must be positive"));
    }
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::param(
            "threshold",
            format!("must lie in (0, 1], got {threshold}"),
        ));
    }
    let weights = SpectralWeights::from_table(table);
    let t_rev = cfg.revival_time();
    let abs_a0 = weights.at(0.0).norm();
    let results = fractions
        .iter()
        .map(|&f| {
            let samples: Vec<RevivalSample> = (1..=f)
                .into_par_iter()
                .map(|k| {
                    let s = k as f64 / f as f64;
                    let abs_a = weights.at(s).norm();
                    let side = weights
                        .at(s - PROBE)
                        .norm()
                        .max(weights.at(s + PROBE).norm());
                    let ratio = abs_a / abs_a0;
                    RevivalSample {
                        k,
                        t: s * t_rev,
                        abs_a,
                        ratio,
                        local_max: abs_a >= side,
                        revived: ratio >= threshold,
                    }
                })
                .collect();
            FractionResult {
                fraction: f,
                all_revived: samples.iter().all(|s| s.revived),
                min_ratio: samples
                    .iter()
                    .map(|s| s.ratio)
                    .fold(f64::INFINITY, f64::min),
                samples,
            }
        })
        .collect();
    Ok(RevivalScan {
        t_rev,
        abs_a0,
        threshold,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SQRT3;
    use crate::presets::PAPER_WIDTH;
    use crate::wavepacket::{expand, GaussianPacket, Truncation};

    #[test]
    fn centroid_rest_packet_revives_at_ninths() {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::new(0.0, SQRT3 / 3.0, 0.0, 0.0, PAPER_WIDTH).unwrap();
        let t = expand(&p, &cfg, Truncation::Auto).unwrap();
        let scan = revival_scan(&t, &cfg, &DEFAULT_FRACTIONS, DEFAULT_REVIVAL_THRESHOLD).unwrap();
        assert_eq!(scan.flagged(), vec![1, 9]);
        assert!(scan.results[2].samples.iter().all(|s| s.local_max));
    }

    #[test]
    fn rejects_bad_input() {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::new(0.0, 0.5, 0.0, 0.0, PAPER_WIDTH).unwrap();
        let t = expand(&p, &cfg, Truncation::Auto).unwrap();
        assert!(revival_scan(&t, &cfg, &[0], 0.9).is_err());
        assert!(revival_scan(&t, &cfg, &[1], 1.5).is_err());
    }
}
