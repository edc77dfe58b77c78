//! Truncated length spectrum `ρ_N(L) = Σ_{n≤N} e^{i k_n L}` and its peaks.
//!
//! Levels enter with their multiplicity, so each degenerate `m > 2n` pair
//! contributes twice in the full billiard. Peaks of `|ρ_N|²` sit at the
//! lengths of closed orbits.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{BilliardConfig, Variant};
use crate::error::{Error, Result};
use crate::numeric::{median, pairwise_sum};
use crate::orbits::{enumerate_orbits, IsolatedOrbit, OrbitCatalog};
use crate::spectrum::enumerate_levels;

/// Default grid step in units of `a`.
pub const DEFAULT_STEP: f64 = 0.002;
/// Coarsest grid step, in units of `a`, accepted by [`detect_peaks`].
pub const MAX_PEAK_STEP: f64 = 0.005;
/// Peaks must exceed this multiple of the median power.
pub const DEFAULT_PROMINENCE: f64 = 5.0;
/// Lengths below this (units of `a`) belong to the `L = 0` smooth feature.
pub const EXCLUSION_WINDOW: f64 = 0.5;
/// Peak-to-orbit matching tolerance in units of `a`.
pub const DEFAULT_MATCH_TOLERANCE: f64 = 0.05;

/// `start, start+step, …` up to and including `end` (within rounding).
pub fn uniform_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && end > start) {
        return Err(Error::param(
            "grid",
            format!("need end > start and step > 0, got [{start}, {end}] step {step}"),
        ));
    }
    let count = ((end - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthSpectrum {
    pub lengths: Vec<f64>,
    pub rho: Vec<Complex64>,
    pub n_levels: usize,
    pub variant: Variant,
    pub a: f64,
}

impl LengthSpectrum {
    pub fn power(&self) -> Vec<f64> {
        self.rho.iter().map(|z| z.norm_sqr()).collect()
    }

    /// `|ρ|²/N²`.
    pub fn power_normalized(&self) -> Vec<f64> {
        let n2 = (self.n_levels as f64).powi(2);
        self.rho.iter().map(|z| z.norm_sqr() / n2).collect()
    }
}

/// Options for [`compute_rho`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RhoOptions {
    /// Multiply each term by `exp(−k²σ²)` when set.
    pub gaussian_damping: Option<f64>,
}

/// Evaluates `ρ_N(L)` at every grid length (physical units).
pub fn compute_rho(
    cfg: &BilliardConfig,
    n_levels: usize,
    lengths: &[f64],
    opts: RhoOptions,
) -> Result<LengthSpectrum> {
    if lengths.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("grid", "lengths must be strictly increasing"));
    }
    let levels = enumerate_levels(cfg, n_levels)?;
    let ks: Vec<f64> = levels.iter().map(|l| l.k).collect();
    let weights: Vec<f64> = match opts.gaussian_damping {
        Some(sigma) => ks.iter().map(|k| (-(k * sigma).powi(2)).exp()).collect(),
        None => vec![1.0; ks.len()],
    };
    let rho = lengths
        .par_iter()
        .map_init(
            || Vec::with_capacity(ks.len()),
            |terms, &l| {
                terms.clear();
                terms.extend(ks.iter().zip(&weights).map(|(&k, &w)| {
                    let (s, c) = (k * l).sin_cos();
                    Complex64::new(w * c, w * s)
                }));
                pairwise_sum(terms)
            },
        )
        .collect();
    Ok(LengthSpectrum {
        lengths: lengths.to_vec(),
        rho,
        n_levels,
        variant: cfg.variant,
        a: cfg.a,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    /// Peak position (parabolic refinement of the grid maximum).
    pub length: f64,
    pub power: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakSet {
    pub peaks: Vec<Peak>,
    pub median_power: f64,
    pub threshold: f64,
}

/// Local maxima of `|ρ|²` above `min_prominence × median(|ρ|²)`, ignoring
/// `L < 0.5a`. An empty result is not an error.
pub fn detect_peaks(spec: &LengthSpectrum, min_prominence: f64) -> Result<PeakSet> {
    let step_max = spec
        .lengths
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max);
    if step_max > MAX_PEAK_STEP * spec.a * (1.0 + 1e-9) {
        return Err(Error::GridTooCoarse {
            spacing: step_max,
            max: MAX_PEAK_STEP * spec.a,
        });
    }
    let power = spec.power();
    let median_power = median(&power);
    let threshold = min_prominence * median_power;
    let l = &spec.lengths;
    let peaks = (1..power.len().saturating_sub(1))
        .filter(|&i| l[i] >= EXCLUSION_WINDOW * spec.a)
        .filter(|&i| power[i] >= power[i - 1] && power[i] > power[i + 1] && power[i] > threshold)
        .map(|i| {
            let (y0, y1, y2) = (power[i - 1], power[i], power[i + 1]);
            let denom = y0 - 2.0 * y1 + y2;
            let shift = if denom != 0.0 {
                0.5 * (y0 - y2) / denom
            } else {
                0.0
            };
            Peak {
                length: l[i] + shift.clamp(-0.5, 0.5) * (l[i + 1] - l[i - 1]) / 2.0,
                power: y1,
            }
        })
        .collect();
    Ok(PeakSet {
        peaks,
        median_power,
        threshold,
    })
}

/// One predicted orbit length and the nearest detected peak.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakMatch {
    pub orbit: String,
    pub isolated: Option<IsolatedOrbit>,
    pub predicted: f64,
    pub detected: Option<f64>,
    pub residual: Option<f64>,
    pub power: Option<f64>,
}

impl PeakMatch {
    pub fn matched(&self) -> bool {
        self.detected.is_some()
    }
}

/// Nearest detected peak within `tol` for every length of `catalog`.
pub fn match_peaks(peaks: &PeakSet, catalog: &OrbitCatalog, tol: f64) -> Vec<PeakMatch> {
    catalog
        .features()
        .map(|(class, predicted)| {
            let best = peaks
                .peaks
                .iter()
                .min_by(|a, b| {
                    (a.length - predicted)
                        .abs()
                        .total_cmp(&(b.length - predicted).abs())
                })
                .filter(|p| (p.length - predicted).abs() <= tol);
            PeakMatch {
                orbit: class.label(),
                isolated: class.isolated,
                predicted,
                detected: best.map(|p| p.length),
                residual: best.map(|p| p.length - predicted),
                power: best.map(|p| p.power),
            }
        })
        .collect()
}

/// Full width at half maximum of the peak nearest `near`, by linear
/// interpolation of `|ρ|²` on the grid. `None` if no local maximum lies
/// within `window`.
pub fn fwhm_near(spec: &LengthSpectrum, near: f64, window: f64) -> Option<f64> {
    let power = spec.power();
    let l = &spec.lengths;
    let i = (1..power.len() - 1)
        .filter(|&i| {
            (l[i] - near).abs() <= window && power[i] >= power[i - 1] && power[i] > power[i + 1]
        })
        .max_by(|&a, &b| power[a].total_cmp(&power[b]))?;
    let half = power[i] / 2.0;
    let mut lo = i;
    while lo > 0 && power[lo] > half {
        lo -= 1;
    }
    let mut hi = i;
    while hi + 1 < power.len() && power[hi] > half {
        hi += 1;
    }
    let cross =
        |a: usize, b: usize| l[a] + (half - power[a]) / (power[b] - power[a]) * (l[b] - l[a]);
    Some(cross(hi - 1, hi) - cross(lo, lo + 1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantComparison {
    pub lengths: Vec<f64>,
    pub power_full: Vec<f64>,
    pub power_half: Vec<f64>,
    pub full: Vec<PeakMatch>,
    pub half: Vec<PeakMatch>,
    /// Regular tiling-orbit lengths matched in both billiards.
    pub shared: Vec<f64>,
    /// Lengths matched in the half billiard but not in the full one.
    pub half_only: Vec<f64>,
    pub regular_agree: bool,
    pub two_zero_prime_in_both: bool,
    pub one_one_prime_only_in_half: bool,
}

/// Compares the full and half billiards at the same `n_levels`. Normalized
/// powers `|ρ|²/N²` are returned on the shared grid.
pub fn compare_variants(
    cfg: &BilliardConfig,
    n_levels: usize,
    lengths: &[f64],
    min_prominence: f64,
    tol: f64,
) -> Result<VariantComparison> {
    let l_max = lengths.last().copied().unwrap_or(0.0);
    let full_cfg = cfg.with_variant(Variant::Full);
    let half_cfg = cfg.with_variant(Variant::Half);
    let full_spec = compute_rho(&full_cfg, n_levels, lengths, RhoOptions::default())?;
    let half_spec = compute_rho(&half_cfg, n_levels, lengths, RhoOptions::default())?;
    let half_cat = enumerate_orbits(l_max, Variant::Half, cfg.a)?;
    let full_peaks = detect_peaks(&full_spec, min_prominence)?;
    let half_peaks = detect_peaks(&half_spec, min_prominence)?;
    // Match both against the half catalog, the superset of features.
    let full = match_peaks(&full_peaks, &half_cat, tol);
    let half = match_peaks(&half_peaks, &half_cat, tol);

    let mut shared = Vec::new();
    let mut half_only = Vec::new();
    let mut regular_agree = true;
    let mut two_zero_prime_in_both = false;
    let mut one_one_prime_only_in_half = true;
    for (f, h) in full.iter().zip(&half) {
        match f.isolated {
            None => {
                if f.matched() && h.matched() {
                    shared.push(f.predicted);
                } else {
                    regular_agree = false;
                }
            }
            Some(IsolatedOrbit::TwoZeroPrime) => {
                // the first (unshadowed) multiple decides
                if (f.predicted - IsolatedOrbit::TwoZeroPrime.length_over_a() * cfg.a).abs() < 1e-12
                {
                    two_zero_prime_in_both = f.matched() && h.matched();
                }
            }
            Some(IsolatedOrbit::OneOnePrime) => {
                if !h.matched() || f.matched() {
                    one_one_prime_only_in_half = false;
                }
            }
        }
        if h.matched() && !f.matched() {
            half_only.push(h.predicted);
        }
    }
    Ok(VariantComparison {
        lengths: lengths.to_vec(),
        power_full: full_spec.power_normalized(),
        power_half: half_spec.power_normalized(),
        full,
        half,
        shared,
        half_only,
        regular_agree,
        two_zero_prime_in_both,
        one_one_prime_only_in_half,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_at_zero_is_level_count() {
        let cfg = BilliardConfig::default();
        let spec = compute_rho(&cfg, 137, &[0.0, 1.0], RhoOptions::default()).unwrap();
        assert_eq!(spec.rho[0], Complex64::new(137.0, 0.0));
        assert!(spec.rho[1].norm() <= 137.0);
    }

    #[test]
    fn rho_is_hermitian_in_length() {
        let cfg = BilliardConfig::default();
        let grid = [-3.3, -1.1, 1.1, 3.3];
        let spec = compute_rho(&cfg, 300, &grid, RhoOptions::default()).unwrap();
        assert!((spec.rho[0] - spec.rho[3].conj()).norm() < 1e-9);
        assert!((spec.rho[1] - spec.rho[2].conj()).norm() < 1e-9);
    }

    #[test]
    fn rejects_unsorted_grid() {
        let cfg = BilliardConfig::default();
        assert!(compute_rho(&cfg, 10, &[1.0, 0.5], RhoOptions::default()).is_err());
    }

    #[test]
    fn damping_reduces_magnitude() {
        let cfg = BilliardConfig::default();
        let raw = compute_rho(&cfg, 200, &[3.0], RhoOptions::default()).unwrap();
        let damped = compute_rho(
            &cfg,
            200,
            &[3.0],
            RhoOptions {
                gaussian_damping: Some(0.01),
            },
        )
        .unwrap();
        assert!(damped.rho[0].norm() < raw.rho[0].norm());
    }

    fn synthetic(grid: &[f64]) -> LengthSpectrum {
        // two cosines beating: |e^{ik₁(L−3)} + e^{ik₂(L−3)}|² peaks at L = 3
        let ks = [40.0, 55.0, 70.0, 85.0];
        let rho = grid
            .iter()
            .map(|&l| {
                ks.iter()
                    .map(|k| Complex64::from_polar(1.0, k * (l - 3.0)))
                    .sum()
            })
            .collect();
        LengthSpectrum {
            lengths: grid.to_vec(),
            rho,
            n_levels: ks.len(),
            variant: Variant::Full,
            a: 1.0,
        }
    }

    #[test]
    fn synthetic_peak_is_found_within_one_step() {
        let grid = uniform_grid(0.0, 5.0, 0.002).unwrap();
        let spec = synthetic(&grid);
        let peaks = detect_peaks(&spec, 5.0).unwrap();
        let best = peaks
            .peaks
            .iter()
            .max_by(|a, b| a.power.total_cmp(&b.power))
            .unwrap();
        assert!((best.length - 3.0).abs() <= 0.002);
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let grid = uniform_grid(0.0, 5.0, 0.01).unwrap();
        let err = detect_peaks(&synthetic(&grid), 5.0).unwrap_err();
        assert!(matches!(err, Error::GridTooCoarse { .. }));
    }

    #[test]
    fn huge_threshold_gives_empty_set() {
        let grid = uniform_grid(0.0, 5.0, 0.002).unwrap();
        let peaks = detect_peaks(&synthetic(&grid), 1e12).unwrap();
        assert!(peaks.peaks.is_empty());
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_grid(0.0, 20.0, 0.002).unwrap();
        assert_eq!(g.len(), 10_001);
        assert!((g[10_000] - 20.0).abs() < 1e-9);
    }
}
