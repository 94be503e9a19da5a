//! Lorentz spaces `L_{p,q}` on `(0, ∞)`.
//!
//! For `q < ∞` the quasi-norm is `(∫_0^∞ t^{q/p - 1} f*(t)^q dt)^{1/q}`, for
//! `q = ∞` it is `sup_t t^{1/p} f*(t)`. On step functions both are finite sums
//! of power differences. `L_{∞,q}` with `q < ∞` only contains `0`; every
//! nonzero function gets norm `+∞` there.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::stepfn::StepFunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzParams {
    p: f64,
    q: f64,
}

impl LorentzParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q)] {
            if !(v > 0.0) {
                return Err(Error::InvalidExponent(format!(
                    "{name} must lie in (0, inf], got {v}"
                )));
            }
        }
        Ok(Self { p, q })
    }

    /// `L_p = L_{p,p}`.
    pub fn lebesgue(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_nontrivial(&self) -> bool {
        is_nontrivial(*self)
    }
}

impl fmt::Display for LorentzParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{{{},{}}}", fmt_exp(self.p), fmt_exp(self.q))
    }
}

/// Formats an exponent, spelling `∞` as `inf`.
pub fn fmt_exp(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

/// Parses an exponent: a decimal, a fraction `a/b`, or `inf`.
pub fn parse_exponent(s: &str) -> Result<f64> {
    let t = s.trim();
    let bad = || Error::Parse(format!("cannot read {s:?} as an exponent"));
    let v = match t {
        "inf" | "Inf" | "infinity" | "∞" => f64::INFINITY,
        _ => match t.split_once('/') {
            Some((a, b)) => {
                let a: f64 = a.trim().parse().map_err(|_| bad())?;
                let b: f64 = b.trim().parse().map_err(|_| bad())?;
                a / b
            }
            None => t.parse().map_err(|_| bad())?,
        },
    };
    if v.is_nan() {
        return Err(bad());
    }
    Ok(v)
}

/// Formats `v` as a small fraction `a/b` when it is one, else as a decimal.
pub fn fmt_fraction(v: f64) -> String {
    if !v.is_finite() {
        return fmt_exp(v);
    }
    for d in 1..=12u32 {
        let n = (v * d as f64).round();
        if (v * d as f64 - n).abs() <= 1e-12 * d as f64 * v.abs().max(1.0) {
            return if d == 1 { format!("{n}") } else { format!("{n}/{d}") };
        }
    }
    format!("{v}")
}

/// `L_{p,q}` is a nonzero r.i. space iff `p < ∞` or `p = q = ∞`.
pub fn is_nontrivial(params: LorentzParams) -> bool {
    params.p.is_finite() || params.q.is_infinite()
}

/// Exact `‖f‖_{p,q}` on `[0, ∞]`.
///
/// The computation is carried out on `f*/‖f‖_∞` and rescaled at the end, so
/// scaling `f` by a power of two scales the result bit-for-bit.
pub fn lorentz_norm(f: &StepFunction, params: LorentzParams) -> f64 {
    if f.is_zero() {
        return 0.0;
    }
    let fs = f.rearrange();
    let m = fs.sup();
    let (p, q) = (params.p, params.q);
    if q.is_infinite() {
        if p.is_infinite() {
            return m;
        }
        if fs.tail() > 0.0 {
            return f64::INFINITY;
        }
        let inv_p = 1.0 / p;
        let s = fs
            .breakpoints()
            .iter()
            .zip(fs.values())
            .map(|(&t, &c)| (c / m) * t.powf(inv_p))
            .fold(0.0, f64::max);
        return m * s;
    }
    let s = fs.weighted_power_integral_scaled(q / p, q, 0.0, f64::INFINITY, m);
    if s.is_infinite() {
        return f64::INFINITY;
    }
    m * s.powf(1.0 / q)
}

/// `‖D_a‖_{L_{p,q} → L_{p,q}} = a^{-1/p}`, by the change of variables `s = at`.
pub fn dilation_operator_norm(params: LorentzParams, a: f64) -> Result<f64> {
    if !params.is_nontrivial() {
        return Err(Error::Degenerate {
            p: params.p,
            q: params.q,
        });
    }
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Domain(format!("dilation factor must be positive, got {a}")));
    }
    Ok(a.powf(-1.0 / params.p))
}

/// A concrete r.i. space with its Boyd indices and quasi-triangle constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub params: LorentzParams,
    /// Lower Boyd index `p_E`.
    pub boyd_lower: f64,
    /// Upper Boyd index `q_E`.
    pub boyd_upper: f64,
    /// An upper bound `C_E >= 1` for the quasi-triangle constant.
    pub quasi_triangle_bound: f64,
}

impl SpaceDescriptor {
    /// Descriptor of `L_{p,q}`; both Boyd indices equal `p`.
    pub fn lorentz(params: LorentzParams) -> Result<Self> {
        if !params.is_nontrivial() {
            return Err(Error::Degenerate {
                p: params.p,
                q: params.q,
            });
        }
        Ok(Self {
            params,
            boyd_lower: params.p,
            boyd_upper: params.p,
            quasi_triangle_bound: lorentz_quasi_triangle_bound(params),
        })
    }

    pub fn norm(&self, f: &StepFunction) -> f64 {
        lorentz_norm(f, self.params)
    }

    /// `α̲_E = 1/q_E`.
    pub fn alpha_lower(&self) -> f64 {
        1.0 / self.boyd_upper
    }

    /// `ᾱ_E = 1/p_E`.
    pub fn alpha_upper(&self) -> f64 {
        1.0 / self.boyd_lower
    }
}

impl fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.params)
    }
}

/// A valid `C` in `‖f+g‖ <= C(‖f‖ + ‖g‖)` for `L_{p,q}`.
///
/// `‖·‖_{p,q}` is a norm for `1 <= q <= p`; `L_p` with `p < 1` has `2^{1/p-1}`;
/// otherwise `(f+g)*(t) <= f*(t/2) + g*(t/2)` gives `2^{1/p} max(1, 2^{1/q-1})`.
fn lorentz_quasi_triangle_bound(params: LorentzParams) -> f64 {
    let (p, q) = (params.p, params.q);
    if p.is_infinite() || (1.0..=p).contains(&q) {
        1.0
    } else if p == q {
        2f64.powf(1.0 / q - 1.0)
    } else {
        2f64.powf(1.0 / p) * 2f64.powf(1.0 / q - 1.0).max(1.0)
    }
}

/// Largest `‖D_a f‖/‖f‖` over the corpus: a lower bound on `‖D_a‖`.
///
/// Members with zero or infinite norm are skipped.
pub fn estimate_dilation_norm(space: &SpaceDescriptor, a: f64, corpus: &[StepFunction]) -> Result<f64> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus("dilation norm estimate needs functions".into()));
    }
    let ratios: Vec<Option<f64>> = corpus
        .par_iter()
        .map(|f| -> Result<Option<f64>> {
            let base = space.norm(f);
            if !(base > 0.0 && base.is_finite()) {
                return Ok(None);
            }
            Ok(Some(space.norm(&f.dilate(a)?) / base))
        })
        .collect::<Result<_>>()?;
    ratios
        .into_iter()
        .flatten()
        .reduce(f64::max)
        .ok_or_else(|| Error::EmptyCorpus("no corpus member has a finite nonzero norm".into()))
}

/// Estimates `(p_E, q_E)` from `ln s / ln ‖D_{1/s}‖` at the largest `s` and at
/// the reciprocal of the smallest `s`. A vanishing denominator maps to `∞`.
pub fn estimate_boyd_indices(
    space: &SpaceDescriptor,
    s_values: &[f64],
    corpus: &[StepFunction],
) -> Result<(f64, f64)> {
    if s_values.is_empty() {
        return Err(Error::Domain("need at least one s value".into()));
    }
    if let Some(bad) = s_values.iter().find(|s| !(**s > 1.0 && s.is_finite())) {
        return Err(Error::Domain(format!("s values must lie in (1, inf), got {bad}")));
    }
    let s_max = s_values.iter().copied().fold(f64::MIN, f64::max);
    let s_min = s_values.iter().copied().fold(f64::MAX, f64::min);

    // s → ∞: ‖D_{1/s}‖ >= 1, ln s > 0.
    let stretch = estimate_dilation_norm(space, 1.0 / s_max, corpus)?.ln();
    let lower = if stretch > 0.0 { s_max.ln() / stretch } else { f64::INFINITY };

    // s → 0+: with s' = 1/s_min < 1, ‖D_{1/s'}‖ = ‖D_{s_min}‖ <= 1.
    let compress = estimate_dilation_norm(space, s_min, corpus)?.ln();
    let upper = if compress < 0.0 { -s_min.ln() / compress } else { f64::INFINITY };
    Ok((lower, upper))
}

/// The Aoki–Rolewicz exponent `κ = 1 / log_2(2C)`.
pub fn aoki_rolewicz_kappa(c: f64) -> Result<f64> {
    if !(c >= 1.0 && c.is_finite()) {
        return Err(Error::Domain(format!("quasi-triangle constant must be >= 1, got {c}")));
    }
    Ok(1.0 / (2.0 * c).log2())
}

/// Largest `‖f+g‖/(‖f‖+‖g‖)` over the pairs, clipped below at 1: a lower
/// bound on the quasi-triangle constant.
pub fn estimate_quasi_triangle_constant(
    params: LorentzParams,
    pairs: &[(StepFunction, StepFunction)],
) -> Result<f64> {
    if pairs.is_empty() {
        return Err(Error::EmptyCorpus("quasi-triangle estimate needs pairs".into()));
    }
    let best = pairs
        .par_iter()
        .filter_map(|(f, g)| {
            let denom = lorentz_norm(f, params) + lorentz_norm(g, params);
            if !(denom > 0.0 && denom.is_finite()) {
                return None;
            }
            Some(lorentz_norm(&f.add(g), params) / denom)
        })
        .reduce_with(f64::max)
        .ok_or_else(|| Error::EmptyCorpus("no pair has finite nonzero norms".into()))?;
    Ok(best.max(1.0))
}
