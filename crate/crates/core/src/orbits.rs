//! Classical closed orbits from the triangular tiling of the plane.
//!
//! Unfolding the billiard by reflections tiles the plane with triangles; a
//! closed orbit is a straight segment joining two identified points. With
//! `ī, j̄` both even or both odd the segment has length
//! `d(ī,j̄) = (a/2)√(9ī² + 3j̄²) = a√3·√(p² + pq + q²)` with
//! `p = (ī+j̄)/2`, `q = (ī−j̄)/2`, and launch angle `tan θ = j̄/(ī√3)`.
//!
//! Two isolated orbits are not produced by the construction and are added
//! explicitly: `(2,0)′` of length `3a/2` in both billiards, and `(1,1)′` of
//! length `√3a/2` in the half billiard. Only their odd multiples are new
//! lengths; even multiples coincide with `(2,0)` and `(1,1)`.

use std::fmt;

use serde::Serialize;

use crate::config::{Variant, SQRT3};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IsolatedOrbit {
    /// `(2,0)′`, primitive length `3a/2`.
    TwoZeroPrime,
    /// `(1,1)′` of the half billiard, primitive length `√3a/2`.
    OneOnePrime,
}

impl IsolatedOrbit {
    pub fn label(self) -> &'static str {
        match self {
            IsolatedOrbit::TwoZeroPrime => "(2,0)'",
            IsolatedOrbit::OneOnePrime => "(1,1)'",
        }
    }

    /// Primitive length in units of `a`.
    pub fn length_over_a(self) -> f64 {
        match self {
            IsolatedOrbit::TwoZeroPrime => 1.5,
            IsolatedOrbit::OneOnePrime => SQRT3 / 2.0,
        }
    }

    fn indices(self) -> (i64, i64) {
        match self {
            IsolatedOrbit::TwoZeroPrime => (2, 0),
            IsolatedOrbit::OneOnePrime => (1, 1),
        }
    }
}

/// Length of a tiling orbit in both of its forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitLength {
    pub length: f64,
    /// The same length from the `(p, q)` form.
    pub length_pq: f64,
    pub p: i64,
    pub q: i64,
}

fn check_parity(i_bar: i64, j_bar: i64) -> Result<()> {
    if (i_bar - j_bar).rem_euclid(2) != 0 || (i_bar == 0 && j_bar == 0) {
        return Err(Error::OrbitParity { i_bar, j_bar });
    }
    Ok(())
}

/// `(ī, j̄) → (p, q)`.
pub fn to_pq(i_bar: i64, j_bar: i64) -> Result<(i64, i64)> {
    check_parity(i_bar, j_bar)?;
    Ok(((i_bar + j_bar) / 2, (i_bar - j_bar) / 2))
}

/// `(p, q) → (ī, j̄)`.
pub fn from_pq(p: i64, q: i64) -> (i64, i64) {
    (p + q, p - q)
}

/// `d(ī,j̄) = (a/2)√(9ī² + 3j̄²)`.
pub fn orbit_length(i_bar: i64, j_bar: i64, a: f64) -> Result<OrbitLength> {
    let (p, q) = to_pq(i_bar, j_bar)?;
    let (i, j) = (i_bar as f64, j_bar as f64);
    let (pf, qf) = (p as f64, q as f64);
    Ok(OrbitLength {
        length: 0.5 * a * (9.0 * i * i + 3.0 * j * j).sqrt(),
        length_pq: a * SQRT3 * (pf * pf + pf * qf + qf * qf).sqrt(),
        p,
        q,
    })
}

/// Launch angle in degrees, `tan θ = j̄/(ī√3)`.
pub fn orbit_angle(i_bar: i64, j_bar: i64) -> f64 {
    (j_bar as f64).atan2(i_bar as f64 * SQRT3).to_degrees()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitClass {
    pub i_bar: i64,
    pub j_bar: i64,
    pub p: i64,
    pub q: i64,
    /// Primitive length.
    pub length: f64,
    pub angle_deg: f64,
    pub isolated: Option<IsolatedOrbit>,
    pub variant: Variant,
}

impl OrbitClass {
    pub fn label(&self) -> String {
        match self.isolated {
            Some(iso) => iso.label().to_string(),
            None => format!("({},{})", self.i_bar, self.j_bar),
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} L={:.4} θ={:.2}°",
            self.label(),
            self.length,
            self.angle_deg
        )
    }
}

/// A primitive family and its recurrences below the catalog cutoff.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitFamily {
    pub class: OrbitClass,
    /// Lengths `k·L` with `k = 1, 2, …` (odd `k` only for isolated orbits).
    pub recurrences: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitCatalog {
    pub variant: Variant,
    pub l_max: f64,
    pub a: f64,
    pub families: Vec<OrbitFamily>,
}

impl OrbitCatalog {
    /// Every `(label, length)` pair, recurrences included.
    pub fn features(&self) -> impl Iterator<Item = (&OrbitClass, f64)> {
        self.families
            .iter()
            .flat_map(|f| f.recurrences.iter().map(move |&l| (&f.class, l)))
    }

    pub fn regular(&self) -> impl Iterator<Item = &OrbitFamily> {
        self.families.iter().filter(|f| f.class.isolated.is_none())
    }

    pub fn isolated(&self) -> impl Iterator<Item = &OrbitFamily> {
        self.families.iter().filter(|f| f.class.isolated.is_some())
    }
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest parity-valid representative along the ray through `(ī, j̄)`:
/// divide by the gcd, doubling back if that breaks the parity rule.
pub fn primitive(i_bar: i64, j_bar: i64) -> (i64, i64) {
    let g = gcd(i_bar, j_bar);
    let (i, j) = (i_bar / g, j_bar / g);
    if (i - j) % 2 == 0 {
        (i, j)
    } else {
        (2 * i, 2 * j)
    }
}

/// Every primitive family with launch angle in `[0°, 30°]` and primitive
/// length below `l_max`, with recurrences `< l_max`, plus the isolated orbits
/// of `variant`. Sorted by `(length, angle)`.
pub fn enumerate_orbits(l_max: f64, variant: Variant, a: f64) -> Result<OrbitCatalog> {
    if !(l_max.is_finite() && l_max > 0.0) {
        return Err(Error::param(
            "l_max",
            format!("must be positive, got {l_max}"),
        ));
    }
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::param("a", format!("must be positive, got {a}")));
    }
    // d ≥ (3a/2)ī, so ī < 2·l_max/(3a).
    let i_max = (2.0 * l_max / (3.0 * a)).ceil() as i64 + 1;
    let mut families = Vec::new();
    for i_bar in 1..=i_max {
        for j_bar in (0..=i_bar).filter(|j| (i_bar - j) % 2 == 0) {
            if primitive(i_bar, j_bar) != (i_bar, j_bar) {
                continue;
            }
            let len = orbit_length(i_bar, j_bar, a)?;
            if len.length >= l_max {
                continue;
            }
            let recurrences = multiples(len.length, l_max, 1);
            families.push(OrbitFamily {
                class: OrbitClass {
                    i_bar,
                    j_bar,
                    p: len.p,
                    q: len.q,
                    length: len.length,
                    angle_deg: orbit_angle(i_bar, j_bar),
                    isolated: None,
                    variant,
                },
                recurrences,
            });
        }
    }
    let isolated: &[IsolatedOrbit] = match variant {
        Variant::Full => &[IsolatedOrbit::TwoZeroPrime],
        Variant::Half => &[IsolatedOrbit::TwoZeroPrime, IsolatedOrbit::OneOnePrime],
    };
    for &iso in isolated {
        let length = iso.length_over_a() * a;
        if length >= l_max {
            continue;
        }
        let (i_bar, j_bar) = iso.indices();
        let (p, q) = to_pq(i_bar, j_bar)?;
        families.push(OrbitFamily {
            class: OrbitClass {
                i_bar,
                j_bar,
                p,
                q,
                length,
                angle_deg: orbit_angle(i_bar, j_bar),
                isolated: Some(iso),
                variant,
            },
            recurrences: multiples(length, l_max, 2),
        });
    }
    families.sort_by(|x, y| {
        x.class
            .length
            .total_cmp(&y.class.length)
            .then(x.class.angle_deg.total_cmp(&y.class.angle_deg))
            .then(x.class.isolated.is_some().cmp(&y.class.isolated.is_some()))
    });
    Ok(OrbitCatalog {
        variant,
        l_max,
        a,
        families,
    })
}

/// `k·length < l_max` for `k = 1, 1+step, 1+2·step, …`.
fn multiples(length: f64, l_max: f64, step: usize) -> Vec<f64> {
    (1..)
        .step_by(step)
        .map(|k| k as f64 * length)
        .take_while(|&l| l < l_max)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_examples() {
        assert!((orbit_length(2, 0, 1.0).unwrap().length - 3.0).abs() < 1e-15);
        assert!((orbit_length(1, 1, 1.0).unwrap().length - SQRT3).abs() < 1e-15);
        let l = orbit_length(3, 1, 1.0).unwrap();
        assert!((l.length - 84f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((l.length - 4.583).abs() < 1e-3);
        assert_eq!((l.p, l.q), (2, 1));
        assert!(orbit_length(2, 1, 1.0).is_err());
        assert!(orbit_length(0, 0, 1.0).is_err());
    }

    #[test]
    fn angle_examples() {
        assert_eq!(orbit_angle(2, 0), 0.0);
        assert!((orbit_angle(3, 1) - 10.9).abs() < 0.05);
        assert!((orbit_angle(13, 1) - 2.5).abs() < 0.05);
        assert!((orbit_angle(1, 1) - 30.0).abs() < 1e-12);
    }

    #[test]
    fn primitive_keeps_parity_class() {
        assert_eq!(primitive(4, 2), (4, 2));
        assert_eq!(primitive(6, 0), (2, 0));
        assert_eq!(primitive(9, 3), (3, 1));
        assert_eq!(primitive(10, 10), (1, 1));
        assert_eq!(primitive(12, 8), (6, 4));
    }

    #[test]
    fn pq_round_trip_and_length_forms_agree() {
        for i in 0..=100i64 {
            for j in (0..=100i64).filter(|j| (i - j) % 2 == 0) {
                if i == 0 && j == 0 {
                    continue;
                }
                let (p, q) = to_pq(i, j).unwrap();
                assert_eq!(from_pq(p, q), (i, j));
                let l = orbit_length(i, j, 1.0).unwrap();
                assert!((l.length - l.length_pq).abs() <= 1e-12 * l.length);
            }
        }
    }

    #[test]
    fn full_isolated_features_below_twenty() {
        let cat = enumerate_orbits(20.0, Variant::Full, 1.0).unwrap();
        let iso: Vec<&OrbitFamily> = cat.isolated().collect();
        assert_eq!(iso.len(), 1);
        let expected = [1.5, 4.5, 7.5, 10.5, 13.5, 16.5, 19.5];
        assert_eq!(iso[0].recurrences.len(), expected.len());
        for (l, e) in iso[0].recurrences.iter().zip(expected) {
            assert!((l - e).abs() < 1e-12);
        }
    }

    #[test]
    fn half_new_features_below_ten() {
        let cat = enumerate_orbits(10.0, Variant::Half, 1.0).unwrap();
        let fam = cat
            .isolated()
            .find(|f| f.class.isolated == Some(IsolatedOrbit::OneOnePrime))
            .unwrap();
        let expected = [0.866, 2.598, 4.330, 6.062, 7.794, 9.526];
        assert_eq!(fam.recurrences.len(), expected.len());
        for (l, e) in fam.recurrences.iter().zip(expected) {
            assert!((l - e).abs() < 5e-4);
        }
        // half inherits every full-well family
        let full = enumerate_orbits(10.0, Variant::Full, 1.0).unwrap();
        assert_eq!(cat.regular().count(), full.regular().count());
    }

    #[test]
    fn shadowing_pairs() {
        let l51 = orbit_length(5, 1, 1.0).unwrap().length;
        let l71 = orbit_length(7, 1, 1.0).unwrap().length;
        assert!((l51 - 7.55).abs() < 0.005 && (l51 - 7.5).abs() < 0.06);
        assert!((l71 - 10.53).abs() < 0.01 && (l71 - 10.5).abs() < 0.04);
    }

    #[test]
    fn catalog_is_sorted_and_scales_with_a() {
        let cat = enumerate_orbits(40.0, Variant::Full, 2.0).unwrap();
        let unit = enumerate_orbits(20.0, Variant::Full, 1.0).unwrap();
        assert_eq!(cat.families.len(), unit.families.len());
        for w in cat.families.windows(2) {
            assert!(w[0].class.length <= w[1].class.length);
        }
        assert!(enumerate_orbits(0.0, Variant::Full, 1.0).is_err());
    }
}
