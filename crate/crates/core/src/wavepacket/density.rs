use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::ExpansionTable;
use crate::config::{BilliardConfig, Variant, SQRT3};
use crate::eigenfunctions::{
    bracket_from_tables, norm_pm, norm_special, table_extent, AxisTable, Point2D,
    TriangleQuadrature,
};
use crate::error::{Error, Result};
use crate::numeric::{integer_phase, pairwise_sum, sin_cos_2pi};
use crate::spectrum::{QuantumNumbers, Symmetry};

/// Coefficients with `|a|²` below this are left out of the evolved state.
const AMPLITUDE_CUTOFF: f64 = 1e-20;

/// Probability density on a rectangular grid covering the billiard's bounding
/// box, zero outside the billiard. `values[iy * xs.len() + ix]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityField {
    pub t: f64,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
}

impl DensityField {
    pub fn get(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.xs.len() + ix]
    }

    /// Grid point of largest density.
    pub fn argmax(&self) -> (f64, f64) {
        let i = (0..self.values.len())
            .max_by(|&i, &j| self.values[i].total_cmp(&self.values[j]))
            .unwrap_or(0);
        (self.xs[i % self.xs.len()], self.ys[i / self.xs.len()])
    }
}

/// The state `Σ a e^{−iEt/ħ} ψ` at one time.
struct EvolvedState {
    terms: Vec<(QuantumNumbers, Complex64)>,
    extent: usize,
    n_pm: f64,
    n_o: f64,
    a: f64,
}

impl EvolvedState {
    fn new(table: &ExpansionTable, cfg: &BilliardConfig, t: f64) -> Self {
        let s = t / cfg.revival_time();
        let terms: Vec<(QuantumNumbers, Complex64)> = table
            .coefficients
            .iter()
            .filter(|c| c.amplitude.norm_sqr() > AMPLITUDE_CUTOFF)
            .map(|c| {
                let (sn, cs) = sin_cos_2pi(integer_phase(c.epsilon, s));
                (c.qn, c.amplitude * Complex64::new(cs, -sn))
            })
            .collect();
        let m_max = terms.iter().map(|(q, _)| q.m).max().unwrap_or(2);
        let root2 = match table.variant {
            Variant::Full => 1.0,
            Variant::Half => 2f64.sqrt(),
        };
        Self {
            terms,
            extent: table_extent(m_max),
            n_pm: root2 * norm_pm(cfg.a),
            n_o: norm_special(cfg.a),
            a: cfg.a,
        }
    }

    fn x_table(&self, x: f64) -> AxisTable {
        AxisTable::new(x / (3.0 * self.a), self.extent)
    }

    fn y_table(&self, y: f64) -> AxisTable {
        AxisTable::new(y / (SQRT3 * self.a), self.extent)
    }

    fn value(&self, xt: &AxisTable, yt: &AxisTable) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::default(), |acc, &(qn, c)| {
                let n = if qn.sym == Symmetry::Special {
                    self.n_o
                } else {
                    self.n_pm
                };
                acc + c * (n * bracket_from_tables(qn, xt, yt))
            })
    }
}

fn bounding_box(variant: Variant, a: f64) -> (f64, f64, f64, f64) {
    let x_lo = match variant {
        Variant::Full => -a / 2.0,
        Variant::Half => 0.0,
    };
    (x_lo, a / 2.0, 0.0, SQRT3 * a / 2.0)
}

/// `|ψ(x, y; t)|²` on a `grid × grid` lattice spanning the bounding box,
/// edges included.
pub fn density_snapshot(
    table: &ExpansionTable,
    cfg: &BilliardConfig,
    t: f64,
    grid: usize,
) -> Result<DensityField> {
    if grid < 2 {
        return Err(Error::param(
            "grid",
            format!("need at least 2 points per axis, got {grid}"),
        ));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::param("t", format!("must be non-negative, got {t}")));
    }
    let state = EvolvedState::new(table, cfg, t);
    let (x_lo, x_hi, y_lo, y_hi) = bounding_box(table.variant, cfg.a);
    let xs = super::linspace(x_lo, x_hi, grid);
    let ys = super::linspace(y_lo, y_hi, grid);
    let x_tables: Vec<AxisTable> = xs.par_iter().map(|&x| state.x_table(x)).collect();
    let values = ys
        .par_iter()
        .flat_map_iter(|&y| {
            let yt = state.y_table(y);
            let state = &state;
            xs.iter().zip(&x_tables).map(move |(&x, xt)| {
                if Point2D::new(x, y).inside(table.variant, state.a) {
                    state.value(xt, &yt).norm_sqr()
                } else {
                    0.0
                }
            })
        })
        .collect();
    Ok(DensityField { t, xs, ys, values })
}

/// `∫|ψ(t)|²` over the billiard by Gauss–Legendre quadrature of `order`.
pub fn density_integral(table: &ExpansionTable, cfg: &BilliardConfig, t: f64, order: usize) -> f64 {
    let state = EvolvedState::new(table, cfg, t);
    let nodes = TriangleQuadrature::new(order).nodes(table.variant, cfg.a);
    let terms: Vec<f64> = nodes
        .par_iter()
        .map(|&(x, y, w)| w * state.value(&state.x_table(x), &state.y_table(y)).norm_sqr())
        .collect();
    pairwise_sum(&terms)
}

/// Root-mean-square difference of two fields on the same grid.
pub fn rms_difference(f: &DensityField, g: &DensityField) -> Result<f64> {
    if f.xs != g.xs || f.ys != g.ys {
        return Err(Error::param("grid", "fields are on different grids"));
    }
    let sq: Vec<f64> = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| (a - b).powi(2))
        .collect();
    Ok((pairwise_sum(&sq) / sq.len() as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::PAPER_WIDTH;
    use crate::wavepacket::{expand, GaussianPacket, Truncation};

    fn setup(p0: f64) -> (ExpansionTable, BilliardConfig) {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::from_polar(0.05, 0.45, p0, 25.0, PAPER_WIDTH).unwrap();
        (expand(&p, &cfg, Truncation::Auto).unwrap(), cfg)
    }

    #[test]
    fn initial_density_peaks_at_centre() {
        let (t, cfg) = setup(0.0);
        let f = density_snapshot(&t, &cfg, 0.0, 101).unwrap();
        let (x, y) = f.argmax();
        let cell = 1.0 / 100.0;
        assert!(
            (x - 0.05).abs() <= cell && (y - 0.45).abs() <= cell,
            "{x} {y}"
        );
        let peak = 1.0 / (std::f64::consts::PI * PAPER_WIDTH * PAPER_WIDTH);
        assert!((f.values.iter().copied().fold(0.0, f64::max) - peak).abs() < 0.05 * peak);
    }

    #[test]
    fn revival_restores_density_and_norm_is_conserved() {
        let (t, cfg) = setup(60.0);
        let tr = cfg.revival_time();
        let f0 = density_snapshot(&t, &cfg, 0.0, 60).unwrap();
        let f1 = density_snapshot(&t, &cfg, tr, 60).unwrap();
        assert!(rms_difference(&f0, &f1).unwrap() < 1e-6);
        let half = density_integral(&t, &cfg, 0.5 * tr, 120);
        assert!(
            (half - t.captured_norm).abs() < 1e-6,
            "{half} {}",
            t.captured_norm
        );
    }
}
