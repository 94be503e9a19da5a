//! Independent oracles for the integration tests: tanh-sinh quadrature and a
//! sort-based decreasing rearrangement written without the library.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use ri_interp::harness::{generate_corpus, Corpus, CorpusFlags};
use ri_interp::StepFunction;

/// `∫_a^b g`, for `g` smooth on `(a, b)` with at most integrable power
/// singularities at the endpoints. Nodes near an endpoint are placed by their
/// distance to it, so `a = 0` keeps full relative precision.
pub fn tanh_sinh(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    assert!(a < b && b.is_finite());
    let half = 0.5 * (b - a);
    let mid = a + half;
    let level = |h: f64| -> f64 {
        let mut sum = g(mid) * half * FRAC_PI_2;
        let mut k = 1u32;
        loop {
            let u = k as f64 * h;
            let s = FRAC_PI_2 * u.sinh();
            let e = (-2.0 * s).exp();
            let d = half * 2.0 * e / (1.0 + e);
            if d == 0.0 || u > 8.0 {
                break;
            }
            let ch = s.cosh();
            let w = half * FRAC_PI_2 * u.cosh() / (ch * ch);
            if w == 0.0 {
                break;
            }
            sum += w * (g(a + d) + g(b - d));
            k += 1;
        }
        sum * h
    };
    let mut h = 0.5;
    let mut prev = level(h);
    for _ in 0..10 {
        h *= 0.5;
        let cur = level(h);
        if (cur - prev).abs() <= 1e-15 * cur.abs() {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// `∫_a^∞ g` through `t = a / u` (or `t = 1/u - 1` when `a = 0`).
pub fn tanh_sinh_to_infinity(g: impl Fn(f64) -> f64, a: f64) -> f64 {
    if a > 0.0 {
        tanh_sinh(|u| g(a / u) * a / u / u, 0.0, 1.0)
    } else {
        tanh_sinh(|u| g(1.0 / u - 1.0) / u / u, 0.0, 1.0)
    }
}

/// Decreasing rearrangement as `(right endpoint, value)` pairs plus the tail
/// value, by sorting the pieces by value.
pub fn sorted_rearrangement(f: &StepFunction) -> (Vec<(f64, f64)>, f64) {
    let mut pieces: Vec<(f64, f64)> = f
        .pieces()
        .filter(|p| p.hi.is_finite() && p.value > f.tail())
        .map(|p| (p.value, p.hi - p.lo))
        .collect();
    pieces.sort_by(|x, y| y.0.total_cmp(&x.0));
    let mut out = Vec::with_capacity(pieces.len());
    let mut t = 0.0;
    for (v, width) in pieces {
        t += width;
        out.push((t, v));
    }
    (out, f.tail())
}

/// `∫_0^∞ t^{γ-1} f*(t)^w dt` by quadrature on each piece of the oracle
/// rearrangement; `+∞` when the tail is positive.
pub fn weighted_integral(f: &StepFunction, gamma: f64, w: f64) -> f64 {
    let (pieces, tail) = sorted_rearrangement(f);
    if tail > 0.0 {
        return f64::INFINITY;
    }
    let mut lo = 0.0;
    let mut total = 0.0;
    for (hi, v) in pieces {
        total += tanh_sinh(|t| t.powf(gamma - 1.0) * v.powf(w), lo, hi);
        lo = hi;
    }
    total
}

/// `‖f‖_{p,q}` for finite `p, q` from quadrature.
pub fn lorentz_norm_oracle(f: &StepFunction, p: f64, q: f64) -> f64 {
    weighted_integral(f, q / p, q).powf(1.0 / q)
}

/// `f*` at `t` from the oracle rearrangement.
pub fn rearranged_at(f: &StepFunction, t: f64) -> f64 {
    let (pieces, tail) = sorted_rearrangement(f);
    pieces.iter().find(|(hi, _)| t <= *hi).map_or(tail, |&(_, v)| v)
}

/// `H^{(U,W)} f(t)` for finite `W` by quadrature over `(0, t]`.
pub fn hardy_upper_oracle(f: &StepFunction, u: f64, w: f64, t: f64) -> f64 {
    let (pieces, tail) = sorted_rearrangement(f);
    let gamma = w / u;
    let mut lo = 0.0;
    let mut total = 0.0;
    for (hi, v) in pieces.iter().copied().chain(std::iter::once((f64::INFINITY, tail))) {
        let end = hi.min(t);
        if end > lo && v > 0.0 {
            total += tanh_sinh(|s| s.powf(gamma - 1.0) * v.powf(w), lo, end);
        }
        if hi >= t {
            break;
        }
        lo = hi;
    }
    t.powf(-1.0 / u) * total.powf(1.0 / w)
}

/// `H_{(V,W)} f(t)` for finite `W` by quadrature over `[t, ∞)`; compactly
/// supported `f` only.
pub fn hardy_lower_oracle(f: &StepFunction, v: f64, w: f64, t: f64) -> f64 {
    let (pieces, tail) = sorted_rearrangement(f);
    assert_eq!(tail, 0.0);
    let gamma = w / v;
    let mut lo = 0.0f64;
    let mut total = 0.0;
    for (hi, c) in pieces {
        let start = lo.max(t);
        if hi > start {
            total += tanh_sinh(|s| s.powf(gamma - 1.0) * c.powf(w), start, hi);
        }
        lo = hi;
    }
    t.powf(-1.0 / v) * total.powf(1.0 / w)
}

pub fn corpus(seed: u64, size: usize) -> Corpus {
    generate_corpus(seed, size, CorpusFlags::default()).unwrap()
}

pub fn corpus_with(seed: u64, size: usize, positive_tail: bool, allow_gaps: bool) -> Corpus {
    generate_corpus(
        seed,
        size,
        CorpusFlags {
            positive_tail,
            allow_gaps,
        },
    )
    .unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
