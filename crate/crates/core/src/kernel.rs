//! Closed-form power integrals shared by every norm computation.
//!
//! All routines work on the extended half-line: `+∞` is a legal bound and a
//! legal result, `NaN` is never produced for valid inputs.

/// `expm1(x) / x`, continuous at zero.
fn expm1_ratio(x: f64) -> f64 {
    if x.abs() < 1e-300 {
        1.0
    } else {
        x.exp_m1() / x
    }
}

/// `∫_a^b t^{γ-1} dt` for `0 <= a <= b <= ∞`.
///
/// Divergence at either end yields `+∞`: at `0` when `γ <= 0`, at `∞` when
/// `γ >= 0`.
pub fn power_integral(gamma: f64, a: f64, b: f64) -> f64 {
    debug_assert!(a >= 0.0 && b >= a, "bad interval ({a}, {b})");
    if a == b {
        return 0.0;
    }
    if a == 0.0 {
        if gamma <= 0.0 {
            return f64::INFINITY;
        }
        if b.is_infinite() {
            return f64::INFINITY;
        }
        return b.powf(gamma) / gamma;
    }
    if b.is_infinite() {
        if gamma >= 0.0 {
            return f64::INFINITY;
        }
        return a.powf(gamma) / -gamma;
    }
    if gamma == 1.0 {
        return b - a;
    }
    // Write b = a·e^L so the difference b^γ - a^γ never cancels.
    let log_ratio = ((b - a) / a).ln_1p();
    let x = gamma * log_ratio;
    if x > 1.0 {
        // b^γ dominates; this form overflows only when the true value does.
        (gamma * b.ln()).exp() * (-(-x).exp_m1()) / gamma
    } else {
        a.powf(gamma) * log_ratio * expm1_ratio(x)
    }
}

/// `sup_{t ∈ (a, b]} t^σ` on the extended half-line, with `t = ∞` excluded
/// when `b = ∞` (the supremum is then a limit).
pub fn power_sup(sigma: f64, a: f64, b: f64) -> f64 {
    if sigma > 0.0 {
        if b.is_infinite() {
            f64::INFINITY
        } else {
            b.powf(sigma)
        }
    } else if sigma < 0.0 {
        if a == 0.0 {
            f64::INFINITY
        } else {
            a.powf(sigma)
        }
    } else {
        1.0
    }
}

/// Product on `[0, ∞]` with the measure-theoretic convention `0·∞ = 0`.
pub fn ext_mul(x: f64, y: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        0.0
    } else {
        x * y
    }
}
