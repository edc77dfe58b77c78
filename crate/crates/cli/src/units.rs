//! Output unit conversion. Computations always run in natural units
//! (`ħ = 2μ = a = 1`); `--si` rescales dimensional outputs for an electron in
//! a triangle of the given side.

use serde::Serialize;

const HBAR_SI: f64 = 1.054_571_817e-34;
const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Units {
    pub system: &'static str,
    pub length: f64,
    pub energy: f64,
    pub time: f64,
    pub momentum: f64,
}

impl Units {
    pub fn natural() -> Self {
        Self {
            system: "natural",
            length: 1.0,
            energy: 1.0,
            time: 1.0,
            momentum: 1.0,
        }
    }

    /// Electron in a triangle of side `side` metres. The unit of mass is
    /// `2μ`, so energies scale by `ħ²/(2μa²)` and times by `2μa²/ħ`.
    pub fn si(side: f64) -> Self {
        let mass = 2.0 * ELECTRON_MASS_SI;
        Self {
            system: "si",
            length: side,
            energy: HBAR_SI * HBAR_SI / (mass * side * side),
            time: mass * side * side / HBAR_SI,
            momentum: HBAR_SI / side,
        }
    }

    /// Wavefunction amplitude scale `1/length`.
    pub fn psi(&self) -> f64 {
        1.0 / self.length
    }

    pub fn density(&self) -> f64 {
        self.psi() * self.psi()
    }
}
