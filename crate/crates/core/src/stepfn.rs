//! Nonnegative step functions on `(0, ∞)`.
//!
//! A [`StepFunction`] is `c_i` on `(t_{i-1}, t_i]` (with `t_0 = 0`) and a constant
//! `tail` on `(t_n, ∞)`. Pieces are right-closed, so at its breakpoints the
//! rearrangement takes the left limit; it agrees with
//! `inf{λ : d_f(λ) <= t}` everywhere else. Every constructor canonicalizes (adjacent
//! equal values merged), so two functions are equal iff their representations
//! are equal.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::kernel::{ext_mul, power_integral};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepFunction", into = "RawStepFunction")]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail: f64,
}

/// Wire format: `{"breakpoints": [...], "values": [...], "tail": x}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    #[serde(default)]
    tail: f64,
}

impl TryFrom<RawStepFunction> for StepFunction {
    type Error = Error;

    fn try_from(raw: RawStepFunction) -> Result<Self> {
        StepFunction::new(raw.breakpoints, raw.values, raw.tail)
    }
}

impl From<StepFunction> for RawStepFunction {
    fn from(f: StepFunction) -> Self {
        RawStepFunction {
            breakpoints: f.breakpoints,
            values: f.values,
            tail: f.tail,
        }
    }
}

/// One piece `(lo, hi]` carrying a constant value; `hi` is `∞` for the tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, tail: f64) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidFunction(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        let mut prev = 0.0;
        for &b in &breakpoints {
            if !b.is_finite() || b <= prev {
                return Err(Error::InvalidFunction(format!(
                    "breakpoints must be finite, positive and strictly increasing (got {b} after {prev})"
                )));
            }
            prev = b;
        }
        for &v in values.iter().chain(std::iter::once(&tail)) {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidFunction(format!(
                    "values must be finite and nonnegative (got {v})"
                )));
            }
        }
        Ok(Self::canonical(breakpoints, values, tail))
    }

    /// Builds from already-validated parts and merges equal neighbours.
    fn canonical(breakpoints: Vec<f64>, values: Vec<f64>, tail: f64) -> Self {
        let mut bps: Vec<f64> = Vec::with_capacity(breakpoints.len());
        let mut vals: Vec<f64> = Vec::with_capacity(values.len());
        for (b, v) in breakpoints.into_iter().zip(values) {
            if let Some(last) = vals.last() {
                if *last == v {
                    *bps.last_mut().unwrap() = b;
                    continue;
                }
            }
            bps.push(b);
            vals.push(v);
        }
        while vals.last() == Some(&tail) {
            vals.pop();
            bps.pop();
        }
        // -0.0 and 0.0 compare equal but serialize differently
        for v in &mut vals {
            if *v == 0.0 {
                *v = 0.0;
            }
        }
        Self {
            breakpoints: bps,
            values: vals,
            tail: if tail == 0.0 { 0.0 } else { tail },
        }
    }

    pub fn zero() -> Self {
        Self::canonical(Vec::new(), Vec::new(), 0.0)
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(Vec::new(), Vec::new(), c)
    }

    /// The characteristic function of `(a, b]`.
    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && b > a && b.is_finite()) {
            return Err(Error::Domain(format!("indicator needs 0 <= a < b < inf, got ({a}, {b}]")));
        }
        if a == 0.0 {
            Self::new(vec![b], vec![1.0], 0.0)
        } else {
            Self::new(vec![a, b], vec![0.0, 1.0], 0.0)
        }
    }

    /// From `(right_endpoint, value)` pairs.
    pub fn from_pieces(pieces: &[(f64, f64)], tail: f64) -> Result<Self> {
        let (b, v) = pieces.iter().copied().unzip();
        Self::new(b, v, tail)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("step function serializes")
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn num_pieces(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.tail == 0.0 && self.values.is_empty()
    }

    /// Essential supremum.
    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(self.tail, f64::max)
    }

    /// Right end of the last finite piece (`0` when there are none).
    pub fn last_breakpoint(&self) -> f64 {
        self.breakpoints.last().copied().unwrap_or(0.0)
    }

    /// All pieces including the tail `(t_n, ∞)`.
    pub fn pieces(&self) -> impl Iterator<Item = Piece> + '_ {
        let n = self.values.len();
        (0..=n).map(move |i| {
            let lo = if i == 0 { 0.0 } else { self.breakpoints[i - 1] };
            if i < n {
                Piece {
                    lo,
                    hi: self.breakpoints[i],
                    value: self.values[i],
                }
            } else {
                Piece {
                    lo,
                    hi: f64::INFINITY,
                    value: self.tail,
                }
            }
        })
    }

    /// Index of the piece containing `t` (`n` means the tail).
    fn piece_index(&self, t: f64) -> usize {
        self.breakpoints.partition_point(|&b| b < t)
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("evaluation point must be positive, got {t}")));
        }
        Ok(self.value_at(t))
    }

    /// [`evaluate`](Self::evaluate) without the domain check; `t` must be positive.
    pub(crate) fn value_at(&self, t: f64) -> f64 {
        let i = self.piece_index(t);
        if i < self.values.len() {
            self.values[i]
        } else {
            self.tail
        }
    }

    /// Lebesgue measure of `{t > 0 : f(t) > λ}`.
    pub fn distribution(&self, lambda: f64) -> f64 {
        if self.tail > lambda {
            return f64::INFINITY;
        }
        self.pieces()
            .filter(|p| p.hi.is_finite() && p.value > lambda)
            .map(|p| p.hi - p.lo)
            .sum()
    }

    /// The non-increasing rearrangement `f*`.
    ///
    /// Finite pieces above the tail value are sorted by value; everything at or
    /// below the tail is absorbed into it, so `f* = max(tail, sorted part)`.
    pub fn rearrange(&self) -> StepFunction {
        let mut parts: Vec<(f64, f64)> = self
            .pieces()
            .filter(|p| p.hi.is_finite() && p.value > self.tail)
            .map(|p| (p.value, p.hi - p.lo))
            .collect();
        parts.sort_by(|x, y| y.0.total_cmp(&x.0));
        let mut breakpoints = Vec::with_capacity(parts.len());
        let mut values = Vec::with_capacity(parts.len());
        let mut acc = 0.0;
        for (v, w) in parts {
            acc += w;
            breakpoints.push(acc);
            values.push(v);
        }
        Self::canonical(breakpoints, values, self.tail)
    }

    /// Whether the function is non-increasing piece by piece.
    pub fn is_non_increasing(&self) -> bool {
        let seq: Vec<f64> = self.values.iter().copied().chain(std::iter::once(self.tail)).collect();
        seq.windows(2).all(|w| w[1] <= w[0])
    }

    /// The dilation `(D_a f)(t) = f(at)`.
    pub fn dilate(&self, a: f64) -> Result<StepFunction> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("dilation factor must be positive, got {a}")));
        }
        let breakpoints: Vec<f64> = self.breakpoints.iter().map(|b| b / a).collect();
        if breakpoints.windows(2).any(|w| w[1] <= w[0]) || breakpoints.iter().any(|b| !(*b > 0.0) || !b.is_finite()) {
            return Err(Error::Domain(format!("dilation by {a} collapses breakpoints")));
        }
        Ok(Self::canonical(breakpoints, self.values.clone(), self.tail))
    }

    pub fn scale(&self, lambda: f64) -> Result<StepFunction> {
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::Domain(format!("scale factor must be finite and >= 0, got {lambda}")));
        }
        Ok(Self::canonical(
            self.breakpoints.clone(),
            self.values.iter().map(|v| v * lambda).collect(),
            self.tail * lambda,
        ))
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |x, y| x + y)
    }

    pub fn pointwise_max(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, f64::max)
    }

    pub fn pointwise_min(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, f64::min)
    }

    /// `min(f, height) · χ_(0, support]`.
    pub fn truncate(&self, height: f64, support: f64) -> Result<StepFunction> {
        let cap = StepFunction::indicator(0.0, support)?.scale(height)?;
        Ok(self.pointwise_min(&cap))
    }

    /// `(f - λ)_+`.
    pub fn excess_over(&self, lambda: f64) -> StepFunction {
        let sub = |v: f64| if v > lambda { v - lambda } else { 0.0 };
        Self::canonical(
            self.breakpoints.clone(),
            self.values.iter().map(|&v| sub(v)).collect(),
            sub(self.tail),
        )
    }

    /// `min(f, λ)`.
    pub fn capped_at(&self, lambda: f64) -> StepFunction {
        Self::canonical(
            self.breakpoints.clone(),
            self.values.iter().map(|&v| v.min(lambda)).collect(),
            self.tail.min(lambda),
        )
    }

    /// Pointwise binary operation on the merged breakpoint set.
    fn combine(&self, other: &StepFunction, op: impl Fn(f64, f64) -> f64) -> StepFunction {
        let mut breakpoints: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .collect();
        breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        breakpoints.dedup();
        let values = breakpoints
            .iter()
            .map(|&b| op(self.value_at(b), other.value_at(b)))
            .collect();
        Self::canonical(breakpoints, values, op(self.tail, other.tail))
    }

    /// `∫_a^b t^{γ-1} f(t)^w dt` in closed form, `+∞` when divergent.
    ///
    /// Requires `0 <= a < b <= ∞` and `w > 0`. Pieces where `f = 0` contribute
    /// nothing even if the power kernel diverges there.
    pub fn weighted_power_integral(&self, gamma: f64, w: f64, a: f64, b: f64) -> f64 {
        debug_assert!(a >= 0.0 && a < b && w > 0.0);
        self.weighted_power_integral_scaled(gamma, w, a, b, 1.0)
    }

    /// Same as [`weighted_power_integral`](Self::weighted_power_integral) for
    /// `f / scale`, without materializing the scaled function.
    pub(crate) fn weighted_power_integral_scaled(
        &self,
        gamma: f64,
        w: f64,
        a: f64,
        b: f64,
        scale: f64,
    ) -> f64 {
        let mut total = 0.0;
        for p in self.pieces() {
            if p.value == 0.0 {
                continue;
            }
            let lo = p.lo.max(a);
            let hi = p.hi.min(b);
            if lo >= hi {
                continue;
            }
            total += ext_mul((p.value / scale).powf(w), power_integral(gamma, lo, hi));
            if total.is_infinite() {
                return f64::INFINITY;
            }
        }
        total
    }
}
