use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrigKind {
    Cos,
    Sin,
}

/// Closed form of `∫ e^{i kp (x−x₀)} e^{−(x−x₀)²/2b²} trig(k x) dx` over the
/// real line, `kp = p₀/ħ`:
///
/// ```text
/// cos: (b√2π/2)  [ e^{ikx₀} e^{−b²(k+kp)²/2} + e^{−ikx₀} e^{−b²(−k+kp)²/2} ]
/// sin: (b√2π/2i) [ e^{ikx₀} e^{−b²(k+kp)²/2} − e^{−ikx₀} e^{−b²(−k+kp)²/2} ]
/// ```
pub fn gaussian_trig_integral(kind: TrigKind, k: f64, x0: f64, kp: f64, b: f64) -> Complex64 {
    let pre = b * (2.0 * PI).sqrt() / 2.0;
    let plus = Complex64::from_polar((-0.5 * b * b * (k + kp).powi(2)).exp(), k * x0);
    let minus = Complex64::from_polar((-0.5 * b * b * (kp - k).powi(2)).exp(), -k * x0);
    match kind {
        TrigKind::Cos => pre * (plus + minus),
        TrigKind::Sin => pre * (plus - minus) / Complex64::i(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_limits() {
        let b = 0.3;
        let c = gaussian_trig_integral(TrigKind::Cos, 0.0, 0.4, 0.0, b);
        assert!((c - Complex64::new(b * (2.0 * PI).sqrt(), 0.0)).norm() < 1e-15);
        let s = gaussian_trig_integral(TrigKind::Sin, 0.0, 0.4, 12.0, b);
        assert_eq!(s.norm(), 0.0);
    }
}
