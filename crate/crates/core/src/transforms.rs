//! Integer maps on quantum numbers, `T_(p,q)[m,n] = (pm − qn, (p−q)m − pn)`,
//! which multiply the dimensionless energy: `ε(T[m,n]) = ε(p,q)·ε(m,n)`.
//!
//! `T_(2,1)` is the three-fold folding map `(2m−n, m−2n)` and `T_(f,0)`
//! reproduces the `(fm, fn)` copies after canonicalization. All arithmetic is
//! exact.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::{epsilon, Symmetry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QNTransform {
    pub p: i64,
    pub q: i64,
}

impl QNTransform {
    /// Labels must lie in the closed wedge `p ≥ 2q ≥ 0`, `p ≥ 1`.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 0 || p < 2 * q {
            return Err(Error::param(
                "p,q",
                format!("transform labels need p >= 2q >= 0 and p >= 1, got ({p},{q})"),
            ));
        }
        Ok(Self { p, q })
    }

    /// `(m,n) → (2m−n, m−2n)`.
    pub fn fold() -> Self {
        Self { p: 2, q: 1 }
    }

    /// `(m,n) → (fm, f(m−n)) ≅ (fm, fn)`.
    pub fn scale(f: i64) -> Result<Self> {
        Self::new(f, 0)
    }

    /// `ε(p,q)`, the energy multiplier.
    pub fn factor(&self) -> i64 {
        epsilon(self.p, self.q)
    }

    pub fn raw(&self, m: i64, n: i64) -> (i64, i64) {
        (self.p * m - self.q * n, (self.p - self.q) * m - self.p * n)
    }

    pub fn apply(&self, m: i64, n: i64) -> TransformImage {
        let raw = self.raw(m, n);
        let (canonical, chain) = canonicalize(raw.0, raw.1);
        TransformImage {
            raw,
            canonical,
            kind: Canonical::classify(canonical),
            chain,
        }
    }
}

impl fmt::Display for QNTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// Index relations that leave `ε` unchanged and map a state onto `±` itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `(m,n) → (m, m−n)`: `ψ± → ±ψ±`.
    Reflect,
    /// `(m,n) → (n,m)`: `ψ± → −ψ±`.
    Swap,
    /// `(m,n) → (−m,−n)`: `ψ⁻ → ψ⁻`, `ψ⁺ → −ψ⁺`.
    Negate,
}

impl Relation {
    pub fn map(self, (m, n): (i64, i64)) -> (i64, i64) {
        match self {
            Relation::Reflect => (m, m - n),
            Relation::Swap => (n, m),
            Relation::Negate => (-m, -n),
        }
    }

    /// Sign picked up by a state of symmetry `sym` under this relation.
    pub fn sign(self, sym: Symmetry) -> i8 {
        match (self, sym) {
            (Relation::Reflect, Symmetry::Minus) => -1,
            (Relation::Reflect, _) => 1,
            (Relation::Swap, _) => -1,
            (Relation::Negate, Symmetry::Plus) => -1,
            (Relation::Negate, _) => 1,
        }
    }
}

/// What the canonical image represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Canonical {
    /// `m > 2n ≥ 2`: a degenerate `plus`/`minus` pair.
    Regular,
    /// `m = 2n`: the single `special` state.
    Special,
    /// `n = 0` (or the zero vector): the formulas vanish identically and no
    /// state carries this `ε`.
    Null,
}

impl Canonical {
    fn classify((m, n): (i64, i64)) -> Self {
        if n == 0 {
            Canonical::Null
        } else if m == 2 * n {
            Canonical::Special
        } else {
            Canonical::Regular
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformImage {
    pub raw: (i64, i64),
    pub canonical: (i64, i64),
    pub kind: Canonical,
    /// Relations applied, in order, to reach `canonical` from `raw`.
    pub chain: Vec<Relation>,
}

impl TransformImage {
    pub fn epsilon(&self) -> i64 {
        epsilon(self.canonical.0, self.canonical.1)
    }

    /// Overall sign relating the raw-label state to the canonical one.
    pub fn sign(&self, sym: Symmetry) -> i8 {
        self.chain.iter().map(|r| r.sign(sym)).product()
    }
}

fn in_wedge((m, n): (i64, i64)) -> bool {
    m >= 2 * n && n >= 0
}

/// Shortest chain of [`Relation`]s taking `(m, n)` into the wedge
/// `m ≥ 2n ≥ 0`. The twelve-element group they generate always contains one.
pub fn canonicalize(m: i64, n: i64) -> ((i64, i64), Vec<Relation>) {
    let start = (m, n);
    if in_wedge(start) {
        return (start, Vec::new());
    }
    let mut queue = VecDeque::from([(start, Vec::new())]);
    let mut seen = vec![start];
    while let Some((v, chain)) = queue.pop_front() {
        for r in [Relation::Negate, Relation::Reflect, Relation::Swap] {
            let w = r.map(v);
            if seen.contains(&w) {
                continue;
            }
            let mut next: Vec<Relation> = chain.clone();
            next.push(r);
            if in_wedge(w) {
                return (w, next);
            }
            seen.push(w);
            queue.push_back((w, next));
        }
    }
    unreachable!("the wedge is a fundamental domain of the index group")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    pub transform: QNTransform,
    pub input: (i64, i64),
    pub image: TransformImage,
    pub epsilon_in: i64,
    pub epsilon_out: i64,
    pub factor: i64,
    pub holds: bool,
}

/// Checks `ε(T[m,n]) = ε(p,q)·ε(m,n)` on the raw image.
pub fn epsilon_multiplicativity_check(t: QNTransform, m: i64, n: i64) -> MultiplicativityReport {
    let image = t.apply(m, n);
    let epsilon_in = epsilon(m, n);
    let epsilon_out = epsilon(image.raw.0, image.raw.1);
    let factor = t.factor();
    MultiplicativityReport {
        transform: t,
        input: (m, n),
        holds: epsilon_out == factor * epsilon_in && image.epsilon() == epsilon_out,
        image,
        epsilon_in,
        epsilon_out,
        factor,
    }
}

/// `T[T[m,n]]`, which equals `(ε(p,q)m, ε(p,q)n)`.
pub fn apply_twice(t: QNTransform, m: i64, n: i64) -> (i64, i64) {
    let (m1, n1) = t.raw(m, n);
    t.raw(m1, n1)
}

/// Canonical images of `T₁∘T₂` and `T₂∘T₁`.
///
/// Both carry `ε = ε(p₁,q₁)ε(p₂,q₂)ε(m,n)`, but the states themselves usually
/// differ: the maps reverse orientation, so the two orders act as `w₁w̄₂` and
/// `w̄₁w₂` on the Eisenstein lattice, and those are not related by any of the
/// twelve lattice symmetries in general.
pub fn composed_images(
    t1: QNTransform,
    t2: QNTransform,
    m: i64,
    n: i64,
) -> ((i64, i64), (i64, i64)) {
    let (a, b) = t2.raw(m, n);
    let first = canonicalize(t1.raw(a, b).0, t1.raw(a, b).1).0;
    let (c, d) = t1.raw(m, n);
    let second = canonicalize(t2.raw(c, d).0, t2.raw(c, d).1).0;
    (first, second)
}
