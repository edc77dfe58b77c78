//! Closed-form eigenfunctions of the triangular billiards.
//!
//! With `X = 2πx/3a` and `Y = 2πy/√3a`,
//!
//! ```text
//! ψ⁻(m,n) = N [ sin((2m−n)X) sin(nY) − sin((2n−m)X) sin(mY) − sin((m+n)X) sin((m−n)Y) ]
//! ψ⁺(m,n) = N [ cos((2m−n)X) sin(nY) − cos((2n−m)X) sin(mY) + cos((m+n)X) sin((m−n)Y) ]
//! ψᵒ(2n,n) = N' [ 2 cos(2πnx/a) sin(nY) − sin(2nY) ]
//! ```
//!
//! with `N = √(16/(3√3a²))`, `N' = √(8/(3√3a²))`. Every trig argument is an
//! integer multiple of `x/3a` or `y/√3a`, reduced modulo one period before
//! the call, so large quantum numbers keep full phase accuracy. The formulas
//! are evaluated for any integer pair and any point; outside the billiard
//! they give the odd reflection-extension of the state.

use serde::{Deserialize, Serialize};

use crate::config::{BilliardConfig, Variant, SQRT3};
use crate::error::{Error, Result};
use crate::numeric::{cos_2pi, sin_2pi, GaussLegendre};
use crate::spectrum::{QuantumNumbers, Symmetry};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn inside_full(&self, a: f64) -> bool {
        self.y >= 0.0 && self.y <= SQRT3 * a / 2.0 && self.x.abs() <= self.y / SQRT3
    }

    pub fn inside_half(&self, a: f64) -> bool {
        self.inside_full(a) && self.x >= 0.0
    }

    pub fn inside(&self, variant: Variant, a: f64) -> bool {
        match variant {
            Variant::Full => self.inside_full(a),
            Variant::Half => self.inside_half(a),
        }
    }

    /// Shortest distance to the walls of `variant` (negative outside).
    pub fn wall_distance(&self, variant: Variant, a: f64) -> f64 {
        let top = SQRT3 * a / 2.0 - self.y;
        let right = (self.y - SQRT3 * self.x) / 2.0;
        let left = (self.y + SQRT3 * self.x) / 2.0;
        let d = top.min(right).min(left);
        match variant {
            Variant::Full => d,
            Variant::Half => d.min(self.x),
        }
    }
}

/// Normalization of the `plus`/`minus` states.
pub fn norm_pm(a: f64) -> f64 {
    (16.0 / (3.0 * SQRT3 * a * a)).sqrt()
}

/// Normalization of the `special` states.
pub fn norm_special(a: f64) -> f64 {
    (8.0 / (3.0 * SQRT3 * a * a)).sqrt()
}

/// The analytic formula for symmetry `sym` at integer labels `(m, n)`.
///
/// No wedge check: `(n, m)`, `(m, m−n)`, negative labels and so on are all
/// accepted. For `Special` only `n` is used.
pub fn psi_formula(sym: Symmetry, m: i64, n: i64, x: f64, y: f64, a: f64) -> f64 {
    let ux = x / (3.0 * a);
    let uy = y / (SQRT3 * a);
    let sy = |j: i64| sin_2pi(j as f64 * uy);
    match sym {
        Symmetry::Minus => {
            let sx = |j: i64| sin_2pi(j as f64 * ux);
            norm_pm(a) * (sx(2 * m - n) * sy(n) - sx(2 * n - m) * sy(m) - sx(m + n) * sy(m - n))
        }
        Symmetry::Plus => {
            let cx = |j: i64| cos_2pi(j as f64 * ux);
            norm_pm(a) * (cx(2 * m - n) * sy(n) - cx(2 * n - m) * sy(m) + cx(m + n) * sy(m - n))
        }
        Symmetry::Special => {
            norm_special(a) * (2.0 * cos_2pi((3 * n) as f64 * ux) * sy(n) - sy(2 * n))
        }
    }
}

/// The triple-sine product form of `ψᵒ(2n,n)`:
/// `(8√2/3^{3/4}a) sin(2πny/√3a) sin(πn(y−√3x)/√3a) sin(πn(y+√3x)/√3a)`.
pub fn psi_special_product(n: u32, p: Point2D, cfg: &BilliardConfig) -> f64 {
    let a = cfg.a;
    let n = n as f64;
    let uy = p.y / (SQRT3 * a);
    let um = (p.y - SQRT3 * p.x) / (SQRT3 * a);
    let up = (p.y + SQRT3 * p.x) / (SQRT3 * a);
    8.0 * 2f64.sqrt() / (3f64.powf(0.75) * a)
        * sin_2pi(n * uy)
        * sin_2pi(0.5 * n * um)
        * sin_2pi(0.5 * n * up)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenfunctionId {
    pub qn: QuantumNumbers,
    pub variant: Variant,
}

impl EigenfunctionId {
    pub fn new(qn: QuantumNumbers, variant: Variant) -> Result<Self> {
        let qn = QuantumNumbers::new(qn.m, qn.n, qn.sym)?;
        qn.check_variant(variant)?;
        Ok(Self { qn, variant })
    }
}

/// Value of a state at a point, with a flag telling whether the point lies in
/// the billiard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub inside: bool,
}

/// A normalized eigenstate of a particular billiard.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    pub id: EigenfunctionId,
    pub a: f64,
    scale: f64,
}

impl Eigenfunction {
    pub fn new(id: EigenfunctionId, cfg: &BilliardConfig) -> Result<Self> {
        let id = EigenfunctionId::new(id.qn, id.variant)?;
        let scale = match id.variant {
            Variant::Full => 1.0,
            Variant::Half => 2f64.sqrt(),
        };
        Ok(Self {
            id,
            a: cfg.a,
            scale,
        })
    }

    pub fn from_qn(qn: QuantumNumbers, cfg: &BilliardConfig) -> Result<Self> {
        Self::new(EigenfunctionId::new(qn, cfg.variant)?, cfg)
    }

    #[inline]
    pub fn value(&self, x: f64, y: f64) -> f64 {
        let q = self.id.qn;
        self.scale * psi_formula(q.sym, q.m as i64, q.n as i64, x, y, self.a)
    }

    pub fn evaluate(&self, p: Point2D) -> Evaluation {
        Evaluation {
            value: self.value(p.x, p.y),
            inside: p.inside(self.id.variant, self.a),
        }
    }
}

/// Evaluate `id` at `p` in the billiard `cfg`.
pub fn psi(id: EigenfunctionId, p: Point2D, cfg: &BilliardConfig) -> Result<Evaluation> {
    Ok(Eigenfunction::new(id, cfg)?.evaluate(p))
}

/// Tensor Gauss–Legendre rule on the triangle as an iterated integral:
/// `y ∈ [0, √3a/2]`, `x ∈ [−y/√3, y/√3]` (half: `x ∈ [0, y/√3]`).
#[derive(Debug, Clone)]
pub struct TriangleQuadrature {
    rule: GaussLegendre,
}

pub const DEFAULT_QUADRATURE_ORDER: usize = 64;

impl TriangleQuadrature {
    pub fn new(order: usize) -> Self {
        Self {
            rule: GaussLegendre::new(order),
        }
    }

    pub fn order(&self) -> usize {
        self.rule.order()
    }

    /// Nodes `(x, y, weight)` of the rule on `variant`.
    pub fn nodes(&self, variant: Variant, a: f64) -> Vec<(f64, f64, f64)> {
        let h = SQRT3 * a / 2.0;
        let n = self.rule.order();
        let mut out = Vec::with_capacity(n * n);
        for (&ty, &wy) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let y = 0.5 * h * (ty + 1.0);
            let half_width = y / SQRT3;
            let (lo, hi) = match variant {
                Variant::Full => (-half_width, half_width),
                Variant::Half => (0.0, half_width),
            };
            let jac = 0.5 * h * 0.5 * (hi - lo);
            for (&tx, &wx) in self.rule.nodes.iter().zip(&self.rule.weights) {
                let x = 0.5 * (hi + lo) + 0.5 * (hi - lo) * tx;
                out.push((x, y, wy * wx * jac));
            }
        }
        out
    }

    pub fn integrate(&self, variant: Variant, a: f64, f: impl Fn(f64, f64) -> f64) -> f64 {
        let terms: Vec<f64> = self
            .nodes(variant, a)
            .into_iter()
            .map(|(x, y, w)| w * f(x, y))
            .collect();
        crate::numeric::pairwise_sum(&terms)
    }
}

/// `∬ ψ₁ψ₂ dA` over the billiard of `cfg`.
pub fn inner_product(
    id1: EigenfunctionId,
    id2: EigenfunctionId,
    cfg: &BilliardConfig,
    quad: &TriangleQuadrature,
) -> Result<f64> {
    if id1.variant != id2.variant || id1.variant != cfg.variant {
        return Err(Error::param(
            "variant",
            "inner products need both states in the configured billiard",
        ));
    }
    let f1 = Eigenfunction::new(id1, cfg)?;
    let f2 = Eigenfunction::new(id2, cfg)?;
    Ok(quad.integrate(cfg.variant, cfg.a, |x, y| f1.value(x, y) * f2.value(x, y)))
}

/// Self-norm of `id`, flagged when it deviates from one by more than `tol` or
/// disagrees with the doubled-order rule by more than `tol`.
pub fn checked_norm(
    id: EigenfunctionId,
    cfg: &BilliardConfig,
    order: usize,
    tol: f64,
) -> Result<f64> {
    let norm = inner_product(id, id, cfg, &TriangleQuadrature::new(order))?;
    let fine = inner_product(id, id, cfg, &TriangleQuadrature::new(2 * order))?;
    let deviation = (norm - 1.0).abs().max((norm - fine).abs());
    if deviation > tol {
        return Err(Error::QuadratureNotConverged { order, deviation });
    }
    Ok(norm)
}

/// Maximum deviation found for one identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub qn: QuantumNumbers,
    pub tolerance: f64,
    pub checks: Vec<RelationCheck>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.max_deviation <= self.tolerance)
    }

    pub fn worst(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }
}

pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Deterministic interior sample points of the full triangle.
pub fn interior_grid(a: f64, rows: usize) -> Vec<Point2D> {
    let h = SQRT3 * a / 2.0;
    let mut pts = Vec::new();
    for i in 1..rows {
        let y = h * i as f64 / rows as f64;
        let w = y / SQRT3;
        let cols = i + 1;
        for j in 0..=cols {
            let x = -w + 2.0 * w * (j as f64 + 0.5) / (cols as f64 + 1.0);
            pts.push(Point2D::new(x, y));
        }
    }
    pts
}

/// Verifies the identities satisfied by the state family of `qn` on a point
/// grid:
///
/// - parity `ψ(−x,y) = ±ψ(x,y)`;
/// - `ψ±(m,m−n) = ±ψ±(m,n)` and `ψ±(n,m) = −ψ±(m,n)`;
/// - scaling `ψ±(fm,fn)(x,y;a) = ψ±(m,n)(x,y;a/f)/f` for `f = 2, 3`;
/// - for `minus`, the three-fold fold
///   `ψ⁻(2m−n,m−2n)(x,y;a) = ψ⁻(m,n)(y,x;a/√3)/√3`;
/// - for `special`, `ψ⁺(2n,n) = √2ψᵒ(2n,n)`, `ψ⁻(2n,n) = 0` and the
///   triple-sine product form.
///
/// The `1/f` and `1/√3` factors come from the `1/a` in the normalization.
pub fn check_symmetry_relations(
    qn: QuantumNumbers,
    cfg: &BilliardConfig,
) -> Result<SymmetryReport> {
    let qn = QuantumNumbers::new(qn.m, qn.n, qn.sym)?;
    let a = cfg.a;
    let (m, n) = (qn.m as i64, qn.n as i64);
    let pts = interior_grid(a, 24);
    let max_dev =
        |f: &dyn Fn(f64, f64) -> f64| pts.iter().map(|p| f(p.x, p.y).abs()).fold(0.0, f64::max);
    let mut checks = Vec::new();
    let mut push = |relation: &str, dev: f64| {
        checks.push(RelationCheck {
            relation: relation.to_string(),
            max_deviation: dev,
        })
    };

    match qn.sym {
        Symmetry::Special => {
            let o = |x: f64, y: f64| psi_formula(Symmetry::Special, m, n, x, y, a);
            push("parity", max_dev(&|x, y| o(-x, y) - o(x, y)));
            push(
                "plus(2n,n) = sqrt2 special",
                max_dev(&|x, y| psi_formula(Symmetry::Plus, m, n, x, y, a) - 2f64.sqrt() * o(x, y)),
            );
            push(
                "minus(2n,n) = 0",
                max_dev(&|x, y| psi_formula(Symmetry::Minus, m, n, x, y, a)),
            );
            push(
                "triple-sine product",
                max_dev(&|x, y| psi_special_product(qn.n, Point2D::new(x, y), cfg) - o(x, y)),
            );
            for f in [2i64, 3] {
                let ff = f as f64;
                push(
                    &format!("scale f={f}"),
                    max_dev(&|x, y| {
                        psi_formula(Symmetry::Special, f * m, f * n, x, y, a)
                            - psi_formula(Symmetry::Special, m, n, x, y, a / ff) / ff
                    }),
                );
            }
        }
        sym => {
            let sign = if sym == Symmetry::Plus { 1.0 } else { -1.0 };
            let s = |mm: i64, nn: i64, x: f64, y: f64, aa: f64| psi_formula(sym, mm, nn, x, y, aa);
            push(
                "parity",
                max_dev(&|x, y| s(m, n, -x, y, a) - sign * s(m, n, x, y, a)),
            );
            push(
                "(m,m-n) reflection",
                max_dev(&|x, y| s(m, m - n, x, y, a) - sign * s(m, n, x, y, a)),
            );
            push(
                "(n,m) swap",
                max_dev(&|x, y| s(n, m, x, y, a) + s(m, n, x, y, a)),
            );
            for f in [2i64, 3] {
                let ff = f as f64;
                push(
                    &format!("scale f={f}"),
                    max_dev(&|x, y| s(f * m, f * n, x, y, a) - s(m, n, x, y, a / ff) / ff),
                );
            }
            if sym == Symmetry::Minus {
                let r3 = 3f64.sqrt();
                push(
                    "fold (2m-n,m-2n)",
                    max_dev(&|x, y| s(2 * m - n, m - 2 * n, x, y, a) - s(m, n, y, x, a / r3) / r3),
                );
            }
        }
    }
    Ok(SymmetryReport {
        qn,
        tolerance: SYMMETRY_TOLERANCE,
        checks,
    })
}

/// Values of `sin(2πj·u)` / `cos(2πj·u)` for `j = 0..=jmax`, used to evaluate
/// many states at a single coordinate without repeated trig calls.
#[derive(Debug, Clone)]
pub struct AxisTable {
    pub sin: Vec<f64>,
    pub cos: Vec<f64>,
}

impl AxisTable {
    pub fn new(u: f64, jmax: usize) -> Self {
        let (sin, cos) = (0..=jmax)
            .map(|j| crate::numeric::sin_cos_2pi(j as f64 * u))
            .unzip();
        Self { sin, cos }
    }

    #[inline]
    fn s(&self, j: i64) -> f64 {
        if j >= 0 {
            self.sin[j as usize]
        } else {
            -self.sin[(-j) as usize]
        }
    }

    #[inline]
    fn c(&self, j: i64) -> f64 {
        self.cos[j.unsigned_abs() as usize]
    }
}

/// Largest table index needed for states with `m ≤ m_max`.
pub fn table_extent(m_max: u32) -> usize {
    3 * m_max as usize + 1
}

/// Unnormalized bracket of the state formula evaluated from precomputed
/// tables: `xt` at `u = x/3a`, `yt` at `u = y/√3a`. Multiply by
/// [`norm_pm`] or [`norm_special`].
#[inline]
pub fn bracket_from_tables(qn: QuantumNumbers, xt: &AxisTable, yt: &AxisTable) -> f64 {
    let (m, n) = (qn.m as i64, qn.n as i64);
    match qn.sym {
        Symmetry::Minus => {
            xt.s(2 * m - n) * yt.s(n) - xt.s(2 * n - m) * yt.s(m) - xt.s(m + n) * yt.s(m - n)
        }
        Symmetry::Plus => {
            xt.c(2 * m - n) * yt.s(n) - xt.c(2 * n - m) * yt.s(m) + xt.c(m + n) * yt.s(m - n)
        }
        Symmetry::Special => 2.0 * xt.c(3 * n) * yt.s(n) - yt.s(2 * n),
    }
}
