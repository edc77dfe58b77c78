use std::f64::consts::PI;

use serde::Serialize;

use super::GaussianPacket;
use crate::config::{BilliardConfig, SQRT3};
use crate::error::{Error, Result};

/// Classical periods `T_rev/|2m−n|` and `T_rev/|2n−m|` of a level
/// neighbourhood; `None` where the derivative vanishes.
pub fn level_periods(m: f64, n: f64, cfg: &BilliardConfig) -> (Option<f64>, Option<f64>) {
    let t_rev = cfg.revival_time();
    let period = |d: f64| (d.abs() > 1e-12).then(|| t_rev / d.abs());
    (period(2.0 * m - n), period(2.0 * n - m))
}

/// Central `(m, n)` of a packet of speed `v₀` launched along the `(p, q)`
/// orbit, chosen so that `p·T^(m) = q·T^(n) = L(p,q)/v₀`:
///
/// ```text
/// m = (3μv₀a/4πħ)(2p+q)/(√3 s),  n = (3μv₀a/4πħ)(2q+p)/(√3 s),  s = √(p²+pq+q²)
/// ```
///
/// The result satisfies `E₀ε(m, n) = μv₀²/2`.
pub fn central_quantum_numbers(
    v0: f64,
    p: i64,
    q: i64,
    cfg: &BilliardConfig,
) -> Result<(f64, f64)> {
    if p < 0 || q < 0 || p + q == 0 {
        return Err(Error::param(
            "orbit",
            format!("(p,q) = ({p},{q}) must be non-negative and not both zero"),
        ));
    }
    let (p, q) = (p as f64, q as f64);
    let s = (p * p + p * q + q * q).sqrt();
    let c = 3.0 * cfg.mu * v0 * cfg.a / (4.0 * PI * cfg.hbar) / (SQRT3 * s);
    Ok((c * (2.0 * p + q), c * (2.0 * q + p)))
}

/// `T_cl^(po) = L(p,q)/v₀ = a√3·√(p²+pq+q²)/v₀`.
pub fn closed_orbit_period(p: i64, q: i64, v0: f64, a: f64) -> f64 {
    let (p, q) = (p as f64, q as f64);
    a * SQRT3 * (p * p + p * q + q * q).sqrt() / v0
}

/// Periods tied to one `(p, q)` orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitTimescales {
    pub p: i64,
    pub q: i64,
    pub m: f64,
    pub n: f64,
    pub t_cl_m: Option<f64>,
    pub t_cl_n: Option<f64>,
    pub t_cl_po: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimescaleSet {
    pub t_rev: f64,
    /// Spreading time `μb²/ħ`.
    pub t0: f64,
    pub v0: f64,
    /// `a/v₀`; absent for a packet at rest.
    pub tau: Option<f64>,
    /// Periods of the two shortest orbits, `√3a/v₀` and `3a/v₀`.
    pub t_cl_po_min: Option<(f64, f64)>,
    pub orbit: Option<OrbitTimescales>,
}

pub fn timescales(
    packet: &GaussianPacket,
    cfg: &BilliardConfig,
    orbit: Option<(i64, i64)>,
) -> Result<TimescaleSet> {
    let v0 = packet.speed(cfg);
    let moving = v0 > 0.0;
    let orbit = match orbit {
        Some((p, q)) if moving => {
            let (m, n) = central_quantum_numbers(v0, p, q, cfg)?;
            let (t_cl_m, t_cl_n) = level_periods(m, n, cfg);
            Some(OrbitTimescales {
                p,
                q,
                m,
                n,
                t_cl_m,
                t_cl_n,
                t_cl_po: closed_orbit_period(p, q, v0, cfg.a),
            })
        }
        Some(_) => {
            return Err(Error::param(
                "orbit",
                "a packet at rest has no orbit periods",
            ))
        }
        None => None,
    };
    Ok(TimescaleSet {
        t_rev: cfg.revival_time(),
        t0: cfg.mu * packet.b * packet.b / cfg.hbar,
        v0,
        tau: moving.then(|| cfg.a / v0),
        t_cl_po_min: moving.then(|| (SQRT3 * cfg.a / v0, 3.0 * cfg.a / v0)),
        orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::epsilon;

    #[test]
    fn orbit_condition_holds() {
        let cfg = BilliardConfig::default();
        let v0 = 3000.0;
        for (p, q) in [(1, 0), (1, 1), (2, 1), (3, 1), (5, 2)] {
            let (m, n) = central_quantum_numbers(v0, p, q, &cfg).unwrap();
            let (tm, tn) = level_periods(m, n, &cfg);
            let po = closed_orbit_period(p, q, v0, cfg.a);
            assert!((p as f64 * tm.unwrap() - po).abs() < 1e-12 * po);
            if q > 0 {
                assert!((q as f64 * tn.unwrap() - po).abs() < 1e-12 * po);
            }
            let eps = m * m + n * n - m * n;
            let e = cfg.e0() * eps;
            assert!((e - 0.5 * cfg.mu * v0 * v0).abs() < 1e-9 * e);
        }
    }

    #[test]
    fn special_line_has_no_n_period() {
        let cfg = BilliardConfig::default();
        let (tm, tn) = level_periods(4.0, 2.0, &cfg);
        assert_eq!(tn, None);
        assert!((tm.unwrap() - cfg.revival_time() / 6.0).abs() < 1e-15);
        assert_eq!(epsilon(4, 2), 12);
    }

    #[test]
    fn rest_packet() {
        let cfg = BilliardConfig::default();
        let p = GaussianPacket::new(0.0, 0.5, 0.0, 0.0, 0.1).unwrap();
        let t = timescales(&p, &cfg, None).unwrap();
        assert_eq!(t.tau, None);
        assert!((t.t0 - 0.005).abs() < 1e-15);
        assert!(timescales(&p, &cfg, Some((1, 1))).is_err());
    }
}
