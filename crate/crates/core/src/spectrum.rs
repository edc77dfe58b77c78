//! Energy levels of the full and half triangular billiards.
//!
//! Levels are labelled by integers `m ≥ 2n ≥ 2`. For `m > 2n` there are two
//! degenerate states (`minus`, odd in `x`; `plus`, even in `x`); `m = 2n`
//! carries a single `special` state. The half billiard keeps only `minus`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{BilliardConfig, Variant};
use crate::error::{Error, Result};

/// Symmetry tag of a state. The declaration order is the tie-break order
/// used when sorting levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Minus,
    Plus,
    Special,
}

impl Symmetry {
    pub fn as_str(self) -> &'static str {
        match self {
            Symmetry::Minus => "minus",
            Symmetry::Plus => "plus",
            Symmetry::Special => "special",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" => Ok(Symmetry::Minus),
            "plus" | "+" => Ok(Symmetry::Plus),
            "special" | "o" => Ok(Symmetry::Special),
            other => Err(Error::param(
                "sym",
                format!("expected plus|minus|special, got {other:?}"),
            )),
        }
    }
}

/// Dimensionless energy `ε(m,n) = m² + n² − mn` for any integer pair.
#[inline]
pub fn epsilon(m: i64, n: i64) -> i64 {
    m * m + n * n - m * n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub m: u32,
    pub n: u32,
    pub sym: Symmetry,
}

impl QuantumNumbers {
    /// Validates the wedge `m ≥ 2n ≥ 2` and the `special ⇔ m = 2n` rule.
    pub fn new(m: u32, n: u32, sym: Symmetry) -> Result<Self> {
        let bad = |reason| Error::QuantumNumbers {
            m: m as i64,
            n: n as i64,
            sym: sym.as_str(),
            reason,
        };
        if n < 1 {
            return Err(bad("n must be at least 1"));
        }
        if m < 2 * n {
            return Err(bad("m must satisfy m >= 2n"));
        }
        match (m == 2 * n, sym) {
            (true, Symmetry::Special) | (false, Symmetry::Minus | Symmetry::Plus) => {
                Ok(Self { m, n, sym })
            }
            (true, _) => Err(bad("m = 2n admits only the special state")),
            (false, _) => Err(bad("special symmetry requires m = 2n")),
        }
    }

    /// Like [`QuantumNumbers::new`], additionally requiring the state to exist
    /// in `variant` (the half billiard has only `minus` states).
    pub fn for_variant(m: u32, n: u32, sym: Symmetry, variant: Variant) -> Result<Self> {
        let qn = Self::new(m, n, sym)?;
        qn.check_variant(variant)?;
        Ok(qn)
    }

    pub fn check_variant(&self, variant: Variant) -> Result<()> {
        if variant == Variant::Half && self.sym != Symmetry::Minus {
            return Err(Error::QuantumNumbers {
                m: self.m as i64,
                n: self.n as i64,
                sym: self.sym.as_str(),
                reason: "the half billiard admits only minus states",
            });
        }
        Ok(())
    }

    pub fn epsilon(&self) -> u64 {
        epsilon(self.m as i64, self.n as i64) as u64
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.n, self.sym)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    /// Exact dimensionless energy `E / E₀`.
    pub epsilon: u64,
    /// Physical energy `E₀·ε`.
    pub energy: f64,
    /// Wavenumber with `E = ħ²k²/2μ`.
    pub k: f64,
    pub degeneracy: u8,
}

impl EnergyLevel {
    /// `k·a = (4π/3)√ε`.
    pub fn ka(&self) -> f64 {
        ka_of_epsilon(self.epsilon)
    }
}

#[inline]
pub fn ka_of_epsilon(eps: u64) -> f64 {
    4.0 * PI / 3.0 * (eps as f64).sqrt()
}

/// The level of `qn` in the billiard described by `cfg`.
pub fn energy(qn: QuantumNumbers, cfg: &BilliardConfig) -> Result<EnergyLevel> {
    let qn = QuantumNumbers::new(qn.m, qn.n, qn.sym)?;
    qn.check_variant(cfg.variant)?;
    Ok(level_unchecked(qn, cfg))
}

fn level_unchecked(qn: QuantumNumbers, cfg: &BilliardConfig) -> EnergyLevel {
    let eps = qn.epsilon();
    let degeneracy = if cfg.variant == Variant::Full && qn.m > 2 * qn.n {
        2
    } else {
        1
    };
    EnergyLevel {
        qn,
        epsilon: eps,
        energy: cfg.e0() * eps as f64,
        k: ka_of_epsilon(eps) / cfg.a,
        degeneracy,
    }
}

/// Every state of `variant` with `ε ≤ eps_max`, one entry per state,
/// sorted by `(ε, m, n, sym)`.
pub fn states_up_to(variant: Variant, eps_max: u64) -> Vec<QuantumNumbers> {
    // ε ≥ m²/4 inside the wedge, so m ≤ 2√ε_max.
    let m_max = (2.0 * (eps_max as f64).sqrt()).ceil() as u32 + 1;
    let n_max = m_max / 2;
    let mut states: Vec<QuantumNumbers> = (1..=n_max)
        .into_par_iter()
        .flat_map_iter(|n| {
            (2 * n..=m_max)
                .take_while(move |&m| epsilon(m as i64, n as i64) as u64 <= eps_max)
                .flat_map(move |m| states_at(m, n, variant))
        })
        .collect();
    states.sort_by_key(|q| (q.epsilon(), q.m, q.n, q.sym));
    states
}

fn states_at(m: u32, n: u32, variant: Variant) -> impl Iterator<Item = QuantumNumbers> {
    let syms: &'static [Symmetry] = match (m == 2 * n, variant) {
        (true, Variant::Full) => &[Symmetry::Special],
        (true, Variant::Half) => &[],
        (false, Variant::Full) => &[Symmetry::Minus, Symmetry::Plus],
        (false, Variant::Half) => &[Symmetry::Minus],
    };
    syms.iter().map(move |&sym| QuantumNumbers { m, n, sym })
}

/// The `count` lowest levels counted with multiplicity: a degenerate
/// `m > 2n` pair contributes two consecutive entries (`minus` then `plus`).
pub fn enumerate_levels(cfg: &BilliardConfig, count: usize) -> Result<Vec<EnergyLevel>> {
    if count == 0 {
        return Err(Error::param("count", "must be at least 1"));
    }
    // Leading Weyl term in ε units: N ≈ (√3π/9)ε for the full triangle.
    let density = match cfg.variant {
        Variant::Full => 3f64.sqrt() * PI / 9.0,
        Variant::Half => 3f64.sqrt() * PI / 18.0,
    };
    let mut eps_max = ((count as f64 / density) * 1.2 + 30.0) as u64;
    loop {
        let states = states_up_to(cfg.variant, eps_max);
        if states.len() >= count {
            return Ok(states
                .into_iter()
                .take(count)
                .map(|qn| level_unchecked(qn, cfg))
                .collect());
        }
        eps_max *= 2;
    }
}

/// Smooth Weyl count `N₀(E) = (A/4π)(2μ/ħ²)E − (L/4π)√(2μE/ħ²)`.
pub fn weyl_count(cfg: &BilliardConfig, e: f64) -> Result<f64> {
    if !(e.is_finite() && e >= 0.0) {
        return Err(Error::param("E", format!("must be non-negative, got {e}")));
    }
    let k2 = 2.0 * cfg.mu * e / (cfg.hbar * cfg.hbar);
    Ok(cfg.area() / (4.0 * PI) * k2 - cfg.perimeter() / (4.0 * PI) * k2.sqrt())
}

/// Exact staircase `N(E)`: number of entries of `levels` with energy `≤ e`.
/// `levels` must be sorted ascending.
pub fn staircase(levels: &[EnergyLevel], e: f64) -> usize {
    levels.partition_point(|l| l.energy <= e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(m: u32, n: u32, sym: Symmetry) -> QuantumNumbers {
        QuantumNumbers::new(m, n, sym).unwrap()
    }

    #[test]
    fn energy_examples() {
        let cfg = BilliardConfig::default();
        let l = energy(qn(2, 1, Symmetry::Special), &cfg).unwrap();
        assert_eq!((l.epsilon, l.degeneracy), (3, 1));
        let half = cfg.with_variant(Variant::Half);
        assert_eq!(energy(qn(3, 1, Symmetry::Minus), &half).unwrap().epsilon, 7);
        assert_eq!(
            energy(qn(5, 2, Symmetry::Minus), &half).unwrap().epsilon,
            19
        );
        assert_eq!(
            energy(qn(3, 1, Symmetry::Plus), &cfg).unwrap().degeneracy,
            2
        );
    }

    #[test]
    fn energy_units_are_consistent() {
        let cfg = BilliardConfig::new(2.0, 3.0, 0.5, Variant::Full).unwrap();
        let l = energy(qn(7, 3, Symmetry::Minus), &cfg).unwrap();
        let e_from_k = cfg.hbar * cfg.hbar * l.k * l.k / (2.0 * cfg.mu);
        assert!((e_from_k - l.energy).abs() < 1e-12 * l.energy);
        assert!((l.k * cfg.a - l.ka()).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_quantum_numbers() {
        assert!(QuantumNumbers::new(3, 2, Symmetry::Minus).is_err());
        assert!(QuantumNumbers::new(2, 0, Symmetry::Minus).is_err());
        assert!(QuantumNumbers::new(4, 2, Symmetry::Plus).is_err());
        assert!(QuantumNumbers::new(5, 2, Symmetry::Special).is_err());
        let half = BilliardConfig::dimensionless(Variant::Half);
        assert!(energy(qn(3, 1, Symmetry::Plus), &half).is_err());
        assert!(energy(qn(2, 1, Symmetry::Special), &half).is_err());
    }

    #[test]
    fn count_one_is_the_ground_state() {
        let levels = enumerate_levels(&BilliardConfig::default(), 1).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].qn, qn(2, 1, Symmetry::Special));
        assert_eq!(levels[0].epsilon, 3);
        assert!(enumerate_levels(&BilliardConfig::default(), 0).is_err());
    }

    #[test]
    fn lowest_full_wavenumbers() {
        let levels = enumerate_levels(&BilliardConfig::default(), 6).unwrap();
        let expected = [7.255, 11.082, 11.082, 14.510, 15.102, 15.102];
        for (l, e) in levels.iter().zip(expected) {
            assert!((l.ka() - e).abs() < 1e-3, "{} vs {e}", l.ka());
        }
        assert_eq!(levels[1].qn.sym, Symmetry::Minus);
        assert_eq!(levels[2].qn.sym, Symmetry::Plus);
    }

    #[test]
    fn lowest_half_energies() {
        let half = BilliardConfig::dimensionless(Variant::Half);
        let eps: Vec<u64> = enumerate_levels(&half, 3)
            .unwrap()
            .iter()
            .map(|l| l.epsilon)
            .collect();
        assert_eq!(eps, vec![7, 13, 19]);
    }

    #[test]
    fn accidental_degeneracies_order_by_m() {
        // ε(10,1) = ε(11,5) = 91
        let states = states_up_to(Variant::Full, 91);
        let tail: Vec<_> = states.iter().filter(|q| q.epsilon() == 91).collect();
        assert_eq!(tail.len(), 4);
        assert_eq!((tail[0].m, tail[0].sym), (10, Symmetry::Minus));
        assert_eq!((tail[1].m, tail[1].sym), (10, Symmetry::Plus));
        assert_eq!((tail[2].m, tail[2].sym), (11, Symmetry::Minus));
        assert_eq!((tail[3].m, tail[3].sym), (11, Symmetry::Plus));
    }

    #[test]
    fn weyl_count_regression_constant() {
        let cfg = BilliardConfig::default();
        let e = 1000.0 * cfg.e0();
        let w = 4.0 * PI / 3.0;
        let expected =
            3f64.sqrt() / (16.0 * PI) * w * w * 1000.0 - 3.0 / (4.0 * PI) * w * 1000f64.sqrt();
        assert!((weyl_count(&cfg, e).unwrap() - expected).abs() < 1e-10);
        assert_eq!(weyl_count(&cfg, 0.0).unwrap(), 0.0);
        assert!(weyl_count(&cfg, -1.0).is_err());
    }
}
