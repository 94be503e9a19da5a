//! Piecewise power functions `v · (A / t)^e` on a partition of `(0, ∞)`.
//!
//! These are the bracketing functions behind every certified enclosure: the
//! Lorentz functional of a piecewise power function has a closed form, and the
//! class is closed under the operations the envelope machinery needs
//! (restriction, multiplication by `t^δ`, and single-power bounds of sums).

use crate::kernel::{ext_mul, power_integral, power_sup};

/// `value · (anchor / t)^exponent` on `(lo, hi]`.
///
/// Storing the anchor instead of a raw coefficient keeps `anchor^exponent`
/// from overflowing for large exponents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerPiece {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
    pub anchor: f64,
    pub exponent: f64,
}

impl PowerPiece {
    pub fn constant(lo: f64, hi: f64, value: f64) -> Self {
        let anchor = if hi.is_finite() { hi } else { lo };
        Self {
            lo,
            hi,
            value,
            anchor: if anchor > 0.0 { anchor } else { 1.0 },
            exponent: 0.0,
        }
    }

    pub fn power(lo: f64, hi: f64, value: f64, anchor: f64, exponent: f64) -> Self {
        debug_assert!(anchor > 0.0 && anchor.is_finite());
        Self {
            lo,
            hi,
            value,
            anchor,
            exponent,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if self.value == 0.0 || self.exponent == 0.0 {
            self.value
        } else {
            self.value * (self.anchor / t).powf(self.exponent)
        }
    }

    fn restricted(&self, lo: f64, hi: f64) -> Self {
        Self { lo, hi, ..*self }
    }

    /// `∫_lo^hi t^{β-1} g(t)^q dt`, substituting `t = A·u`.
    fn weighted_integral(&self, beta: f64, q: f64) -> f64 {
        if self.value == 0.0 {
            return 0.0;
        }
        let a = self.anchor;
        let kernel = power_integral(beta - q * self.exponent, self.lo / a, self.hi / a);
        ext_mul(self.value.powf(q) * a.powf(beta), kernel)
    }

    /// `sup_{t ∈ (lo, hi]} t^σ g(t)`.
    fn weighted_sup(&self, sigma: f64) -> f64 {
        if self.value == 0.0 {
            return 0.0;
        }
        let a = self.anchor;
        let s = power_sup(sigma - self.exponent, self.lo / a, self.hi / a);
        ext_mul(self.value * a.powf(sigma), s)
    }

    /// Multiplies by `t^δ`.
    fn times_power(&self, delta: f64) -> Self {
        if delta == 0.0 {
            return *self;
        }
        Self {
            value: self.value * self.anchor.powf(delta),
            exponent: self.exponent - delta,
            ..*self
        }
    }
}

/// Which side of a bracket a bound function sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// A contiguous partition of `(0, ∞)` into [`PowerPiece`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PowerPieces {
    pieces: Vec<PowerPiece>,
}

impl PowerPieces {
    pub fn new(pieces: Vec<PowerPiece>) -> Self {
        debug_assert!(pieces.first().is_none_or(|p| p.lo == 0.0));
        debug_assert!(pieces.last().is_none_or(|p| p.hi.is_infinite()));
        debug_assert!(pieces.windows(2).all(|w| w[0].hi == w[1].lo && w[0].lo < w[0].hi));
        Self { pieces }
    }

    pub fn zero() -> Self {
        Self::new(vec![PowerPiece::constant(0.0, f64::INFINITY, 0.0)])
    }

    pub fn pieces(&self) -> &[PowerPiece] {
        &self.pieces
    }

    pub fn eval(&self, t: f64) -> f64 {
        let i = self.pieces.partition_point(|p| p.hi < t);
        self.pieces[i.min(self.pieces.len() - 1)].eval(t)
    }

    /// `(∫_0^∞ t^{q/p - 1} g(t)^q dt)^{1/q}`, or `sup t^{1/p} g(t)` when `q = ∞`.
    ///
    /// This is the Lorentz quasi-norm of `g` whenever `g` is non-increasing, and
    /// it is monotone in `g`, so it orders pointwise brackets of a
    /// non-increasing function correctly even when the brackets themselves are
    /// not monotone.
    pub fn lorentz_functional(&self, p: f64, q: f64) -> f64 {
        if q.is_infinite() {
            let sigma = 1.0 / p;
            return self
                .pieces
                .iter()
                .map(|pc| pc.weighted_sup(sigma))
                .fold(0.0, f64::max);
        }
        let beta = q / p;
        let mut total = 0.0;
        for pc in &self.pieces {
            total += pc.weighted_integral(beta, q);
            if total.is_infinite() {
                return f64::INFINITY;
            }
        }
        total.powf(1.0 / q)
    }

    pub fn times_power(&self, delta: f64) -> Self {
        Self::new(self.pieces.iter().map(|p| p.times_power(delta)).collect())
    }

    /// Multiplies every value by `c`.
    pub fn scaled(&self, c: f64) -> Self {
        Self::new(
            self.pieces
                .iter()
                .map(|p| PowerPiece {
                    value: ext_mul(p.value, c),
                    ..*p
                })
                .collect(),
        )
    }

    /// A piecewise single-power bound on `self + other`, on (a refinement of)
    /// the common refinement of both partitions.
    pub fn add_bound(&self, other: &PowerPieces, side: Side) -> PowerPieces {
        let mut out = Vec::with_capacity(self.pieces.len() + other.pieces.len());
        let (mut i, mut j) = (0, 0);
        let mut lo = 0.0;
        while i < self.pieces.len() && j < other.pieces.len() {
            let a = self.pieces[i];
            let b = other.pieces[j];
            let hi = a.hi.min(b.hi);
            if hi > lo {
                collapse(&a.restricted(lo, hi), &b.restricted(lo, hi), side, &mut out);
            }
            lo = hi;
            if a.hi == hi {
                i += 1;
            }
            if b.hi == hi {
                j += 1;
            }
        }
        PowerPieces::new(out)
    }
}

/// Bounds `a + b` on a shared interval by power functions.
///
/// A single power anchored at the finite endpoint nearest the singular end of
/// the kernel bounds the sum: for `t <= r`, `(r/t)^e` grows with `e`; for
/// `t >= l`, `(l/t)^e` shrinks with `e`. That bound has the wrong asymptotics
/// for a lower bound at `0` or `∞`, so there the sum is also bounded below by
/// its asymptotically dominant term and the piece is split where the two
/// bounds cross.
fn collapse(a: &PowerPiece, b: &PowerPiece, side: Side, out: &mut Vec<PowerPiece>) {
    let (lo, hi) = (a.lo, a.hi);
    if a.value == 0.0 {
        out.push(*b);
        return;
    }
    if b.value == 0.0 {
        out.push(*a);
        return;
    }
    if a.value.is_infinite() || b.value.is_infinite() {
        out.push(PowerPiece::constant(lo, hi, f64::INFINITY));
        return;
    }
    if a.exponent == b.exponent {
        let anchor = a.anchor;
        out.push(PowerPiece::power(lo, hi, a.eval(anchor) + b.eval(anchor), anchor, a.exponent));
        return;
    }
    let (steep, flat) = if a.exponent > b.exponent { (a, b) } else { (b, a) };
    let (e_max, e_min) = (steep.exponent, flat.exponent);
    match side {
        Side::Upper if hi.is_finite() => {
            out.push(PowerPiece::power(lo, hi, a.eval(hi) + b.eval(hi), hi, e_max));
        }
        Side::Upper => {
            out.push(PowerPiece::power(lo, hi, a.eval(lo) + b.eval(lo), lo, e_min));
        }
        Side::Lower if lo > 0.0 && hi.is_finite() => {
            out.push(PowerPiece::power(lo, hi, a.eval(lo) + b.eval(lo), lo, e_max));
        }
        Side::Lower if lo > 0.0 => {
            // (l, ∞): the flat term dominates as t → ∞.
            let sum = a.eval(lo) + b.eval(lo);
            let cross = lo * (sum / flat.eval(lo)).powf(1.0 / (e_max - e_min));
            push_split(out, PowerPiece::power(lo, hi, sum, lo, e_max), *flat, cross);
        }
        Side::Lower => {
            // (0, r]: the steep term dominates as t → 0.
            let sum = a.eval(hi) + b.eval(hi);
            let cross = hi * (steep.eval(hi) / sum).powf(1.0 / (e_max - e_min));
            push_split(out, *steep, PowerPiece::power(lo, hi, sum, hi, e_min), cross);
        }
    }
}

/// Uses `left` on `(lo, cross]` and `right` on `(cross, hi]`.
fn push_split(out: &mut Vec<PowerPiece>, left: PowerPiece, right: PowerPiece, cross: f64) {
    let (lo, hi) = (left.lo, left.hi);
    let cross = if cross.is_nan() { lo } else { cross.clamp(lo, hi) };
    if cross > lo {
        out.push(left.restricted(lo, cross));
    }
    if cross < hi {
        out.push(right.restricted(cross, hi));
    }
}
