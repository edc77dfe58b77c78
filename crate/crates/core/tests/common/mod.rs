//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use equitri::config::SQRT3;
use equitri::eigenfunctions::Point2D;
use rand::Rng;

/// Published closed-orbit table: `(ī, j̄)`, launch angle and every length
/// below `20a`, as printed.
pub const ORBIT_TABLE: [((i64, i64), &str, &[&str]); 27] = [
    (
        (2, 0),
        "0.0",
        &["3.00", "6.00", "9.00", "12.00", "15.00", "18.00"],
    ),
    ((13, 1), "2.5", &["19.52"]),
    ((11, 1), "3.0", &["16.52"]),
    ((9, 1), "3.7", &["13.53"]),
    ((7, 1), "4.7", &["10.53"]),
    ((12, 2), "5.5", &["18.08"]),
    ((5, 1), "6.6", &["7.55", "15.10"]),
    ((13, 3), "7.6", &["19.67"]),
    ((8, 2), "8.2", &["12.12"]),
    ((11, 3), "8.9", &["16.70"]),
    ((3, 1), "10.9", &["4.58", "9.16", "13.75", "18.33"]),
    ((13, 5), "12.5", &["19.97"]),
    ((10, 4), "13.0", &["15.39"]),
    ((7, 3), "14.0", &["10.82"]),
    ((11, 5), "14.7", &["17.06"]),
    ((4, 2), "16.1", &["6.24", "12.49", "18.73"]),
    ((9, 5), "17.8", &["14.18"]),
    ((5, 3), "19.1", &["7.94", "15.87"]),
    ((11, 7), "20.2", &["17.58"]),
    ((6, 4), "21.1", &["9.64", "19.28"]),
    ((7, 5), "22.4", &["11.36"]),
    ((8, 6), "23.4", &["13.08"]),
    ((9, 7), "24.2", &["14.80"]),
    ((10, 8), "24.8", &["16.5"]),
    ((11, 9), "25.3", &["18.24"]),
    ((12, 10), "25.7", &["19.97"]),
    (
        (1, 1),
        "30.0",
        &[
            "1.73", "3.46", "5.20", "6.93", "8.66", "10.40", "12.12", "13.86", "15.59", "17.32",
            "19.05",
        ],
    ),
];

/// A printed decimal and the size of one unit in its last digit.
pub fn printed(s: &str) -> (f64, f64) {
    let value: f64 = s.parse().expect("numeric fixture");
    let decimals = s.split('.').nth(1).map_or(0, str::len);
    (value, 10f64.powi(-(decimals as i32)))
}

/// Every printed length of the table.
pub fn table_lengths() -> Vec<f64> {
    ORBIT_TABLE
        .iter()
        .flat_map(|(_, _, ls)| ls.iter().map(|s| printed(s).0))
        .collect()
}

/// Uniform random point on the boundary of the full triangle of side `a`.
pub fn random_wall_point<R: Rng>(rng: &mut R, a: f64) -> Point2D {
    let t: f64 = rng.gen();
    let h = SQRT3 * a / 2.0;
    match rng.gen_range(0..3) {
        0 => Point2D::new(-a / 2.0 + a * t, h),
        1 => Point2D::new(t * a / 2.0, t * h),
        _ => Point2D::new(-t * a / 2.0, t * h),
    }
}

/// Uniform random point inside the full triangle of side `a`.
pub fn random_interior_point<R: Rng>(rng: &mut R, a: f64) -> Point2D {
    loop {
        let x = rng.gen_range(-a / 2.0..a / 2.0);
        let y = rng.gen_range(0.0..SQRT3 * a / 2.0);
        let p = Point2D::new(x, y);
        if p.inside_full(a) {
            return p;
        }
    }
}

/// Composite 5-point Gauss–Legendre rule on `[lo, hi]` with `panels`
/// sub-intervals; nodes hard-coded so the oracle shares no code with the
/// library.
pub fn composite_gauss5(lo: f64, hi: f64, panels: usize, f: impl Fn(f64) -> f64) -> f64 {
    const X: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683,
        0.0,
        0.538_469_310_105_683,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.236_926_885_056_189_1,
        0.478_628_670_499_366_5,
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
    ];
    let h = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let mid = lo + (k as f64 + 0.5) * h;
        let mut s = 0.0;
        for (x, w) in X.iter().zip(&W) {
            s += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    total
}
