//! Small numerical kernels: pairwise reduction, phase-reduced trig and
//! Gauss–Legendre rules.

use std::f64::consts::PI;
use std::ops::Add;

const PAIRWISE_BLOCK: usize = 32;

/// Pairwise (tree) summation.
///
/// The reduction order depends only on the slice length, so results are
/// bitwise reproducible regardless of how the terms were produced.
pub fn pairwise_sum<T>(values: &[T]) -> T
where
    T: Copy + Default + Add<Output = T>,
{
    if values.len() <= PAIRWISE_BLOCK {
        return values.iter().fold(T::default(), |acc, &v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// `sin(2πt)` with the argument reduced to `[-1/2, 1/2]` first.
#[inline]
pub fn sin_2pi(t: f64) -> f64 {
    (2.0 * PI * (t - t.round())).sin()
}

/// `cos(2πt)` with the argument reduced to `[-1/2, 1/2]` first.
#[inline]
pub fn cos_2pi(t: f64) -> f64 {
    (2.0 * PI * (t - t.round())).cos()
}

/// `(sin 2πt, cos 2πt)` with argument reduction.
#[inline]
pub fn sin_cos_2pi(t: f64) -> (f64, f64) {
    (2.0 * PI * (t - t.round())).sin_cos()
}

/// `frac(k·s)` for an exact integer `k`, computed so that integer `s` gives
/// exactly zero. Splits `s` into integer and fractional parts first.
#[inline]
pub fn integer_phase(k: u64, s: f64) -> f64 {
    let whole = s.floor();
    let frac = s - whole;
    let p = k as f64 * frac;
    p - p.floor()
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Newton iteration on `P_n` from the Chebyshev-like initial guesses.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be at least 1");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Integrate `f` over `[lo, hi]`.
    pub fn integrate(&self, lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        let terms: Vec<f64> = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .collect();
        half * pairwise_sum(&terms)
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Median of a slice (average of the two middle values for even lengths).
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
