//! Real interpolation of Lorentz couples.
//!
//! The K-functional `K(t, f; X_0, X_1) = inf_{f = f_0 + f_1} ‖f_0‖_{X_0} + t‖f_1‖_{X_1}`
//! is available three ways: exactly for `(L_1, L_∞)`, as an upper bound from
//! truncation splits `f* = (f* - λ)_+ + min(f*, λ)`, and through Holmstedt's
//! two-term expression, which is equivalent to `K(t^{1/Θ}, f)` up to constants
//! depending on the couple.
//!
//! The functor `(X_0, X_1)_{Θ,r;E}` has quasi-norm `ρ_E(t^{-1/r} K(t^{1/Θ}, f))`.
//! With Holmstedt's expression substituted, the integrand becomes
//! `t^{1/p_0 - 1/r} (H^{(p_0,q_0)} f + H_{(p_1,q_1)} f)`, whose E-norm is
//! enclosed with the Hardy envelopes.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::enclosure::Enclosure;
use crate::error::{Error, Result};
use crate::hardy::{hardy_lower_with, hardy_upper_with, GridConfig};
use crate::lorentz::{fmt_exp, lorentz_norm, LorentzParams, SpaceDescriptor};
use crate::power::{PowerPiece, PowerPieces, Side};
use crate::stepfn::StepFunction;

/// `K(t, f; L_1, L_∞) <= holmstedt_k <= 2 K` since `t f*(t) <= ∫_0^t f*`.
pub const L1_LINF_HOLMSTEDT_CONSTANT: f64 = 2.0;

const CONSISTENCY_TOL: f64 = 1e-12;

/// A couple `(L_{p_0,q_0}, L_{p_1,q_1})` of nontrivial Lorentz spaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzCouple {
    pub x0: LorentzParams,
    pub x1: LorentzParams,
}

impl LorentzCouple {
    pub fn new(x0: LorentzParams, x1: LorentzParams) -> Result<Self> {
        for x in [x0, x1] {
            if !x.is_nontrivial() {
                return Err(Error::Degenerate { p: x.p(), q: x.q() });
            }
        }
        Ok(Self { x0, x1 })
    }

    /// `(L_1, L_∞)`.
    pub fn l1_linf() -> Self {
        Self {
            x0: LorentzParams::new(1.0, 1.0).unwrap(),
            x1: LorentzParams::new(f64::INFINITY, f64::INFINITY).unwrap(),
        }
    }

    pub fn is_l1_linf(&self) -> bool {
        *self == Self::l1_linf()
    }

    /// The `Θ` for which Holmstedt's expression applies: `1/Θ = 1/p_0 - 1/p_1`,
    /// which is `Θ = p_0` when `p_1 = ∞`.
    pub fn natural_theta(&self) -> Result<f64> {
        let inv = 1.0 / self.x0.p() - 1.0 / self.x1.p();
        if inv > 0.0 {
            Ok(1.0 / inv)
        } else {
            Err(Error::Parameter(format!(
                "Holmstedt's expression needs p0 < p1, got p0 = {}, p1 = {}",
                fmt_exp(self.x0.p()),
                fmt_exp(self.x1.p())
            )))
        }
    }

    /// A proven constant `c` with `holmstedt_k / c <= K`, where known.
    pub fn holmstedt_constant(&self) -> Option<f64> {
        self.is_l1_linf().then_some(L1_LINF_HOLMSTEDT_CONSTANT)
    }

    /// Checks that `Θ` matches the couple: `1/Θ = 1/p_0 - 1/p_1` for finite
    /// `p_1`, or `Θ = p_0` when `p_1 = q_1 = ∞`.
    pub fn check_theta(&self, theta: f64) -> Result<()> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::Parameter(format!("theta must be a positive real, got {theta}")));
        }
        let (p0, p1) = (self.x0.p(), self.x1.p());
        if p1.is_infinite() {
            if (theta - p0).abs() > CONSISTENCY_TOL * p0 {
                return Err(Error::Parameter(format!(
                    "with p1 = inf theta must equal p0 = {p0}, got {theta}"
                )));
            }
            return Ok(());
        }
        let expected = 1.0 / p0 - 1.0 / p1;
        if (1.0 / theta - expected).abs() > CONSISTENCY_TOL * expected.abs().max(1.0 / theta) {
            return Err(Error::Parameter(format!(
                "1/theta must equal 1/p0 - 1/p1 = {expected}, got 1/theta = {}",
                1.0 / theta
            )));
        }
        Ok(())
    }
}

impl fmt::Display for LorentzCouple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x0, self.x1)
    }
}

/// Parameters `(Θ, r, E)` of the interpolation functor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctorParams {
    pub theta: f64,
    pub r: f64,
    pub space: SpaceDescriptor,
}

impl FunctorParams {
    pub fn new(theta: f64, r: f64, space: SpaceDescriptor) -> Result<Self> {
        for (name, v) in [("theta", theta), ("r", r)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("{name} must be a positive real, got {v}")));
            }
        }
        Ok(Self { theta, r, space })
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("t must be positive and finite, got {t}")))
    }
}

/// 200 log-spaced levels spanning the values of `f*`, merged with those values
/// and `0`.
pub fn default_levels(f: &StepFunction) -> Vec<f64> {
    let fs = f.rearrange();
    let mut levels = vec![0.0];
    levels.extend_from_slice(fs.values());
    if fs.tail() > 0.0 {
        levels.push(fs.tail());
    }
    let positive: Vec<f64> = levels.iter().copied().filter(|&v| v > 0.0).collect();
    if let (Some(lo), Some(hi)) = (
        positive.iter().copied().reduce(f64::min),
        positive.iter().copied().reduce(f64::max),
    ) {
        let (lo, hi) = (lo / 2.0, hi);
        let span = (hi / lo).ln();
        levels.extend((0..200).map(|j| lo * (span * j as f64 / 199.0).exp()));
    }
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
}

/// `min_λ ‖(f* - λ)_+‖_{X_0} + t ‖min(f*, λ)‖_{X_1}` over the given levels
/// together with the trivial splits `λ = 0` and `λ = ∞`. An upper bound on
/// `K(t, f)`, exact for `(L_1, L_∞)` when the levels contain the values of `f*`.
pub fn k_upper_oracle(f: &StepFunction, t: f64, couple: &LorentzCouple, levels: &[f64]) -> Result<f64> {
    check_t(t)?;
    if levels.is_empty() {
        return Err(Error::Domain("level grid must be nonempty".into()));
    }
    if let Some(bad) = levels.iter().find(|l| !(**l >= 0.0)) {
        return Err(Error::Domain(format!("levels must be nonnegative, got {bad}")));
    }
    if f.is_zero() {
        return Ok(0.0);
    }
    let fs = f.rearrange();
    let split = |lambda: f64| {
        let big = lorentz_norm(&fs.excess_over(lambda), couple.x0);
        let small = lorentz_norm(&fs.capped_at(lambda), couple.x1);
        big + crate::kernel::ext_mul(t, small)
    };
    let mut best = lorentz_norm(&fs, couple.x0).min(t * lorentz_norm(&fs, couple.x1));
    for &lambda in levels {
        best = best.min(split(lambda));
    }
    Ok(best)
}

/// `K(t, f; L_1, L_∞) = ∫_0^t f*(s) ds`.
pub fn k_exact_l1_linf(f: &StepFunction, t: f64) -> Result<f64> {
    check_t(t)?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let fs = f.rearrange();
    let m = fs.sup();
    Ok(m * fs.weighted_power_integral_scaled(1.0, 1.0, 0.0, t, m))
}

/// `sup_{s ∈ (a, b]} s^σ f(s)` for a non-increasing step function scaled by
/// `1/scale`, `σ >= 0`.
fn weighted_sup(fs: &StepFunction, sigma: f64, a: f64, b: f64, scale: f64) -> f64 {
    let mut best: f64 = 0.0;
    for p in fs.pieces() {
        if p.value == 0.0 {
            continue;
        }
        let lo = p.lo.max(a);
        let hi = p.hi.min(b);
        if lo >= hi {
            continue;
        }
        let c = p.value / scale;
        let v = if sigma == 0.0 {
            c
        } else if hi.is_infinite() {
            f64::INFINITY
        } else {
            c * hi.powf(sigma)
        };
        best = best.max(v);
    }
    best
}

/// `(∫_a^b [s^{1/p} f*(s)]^q ds/s)^{1/q}` (sup form for `q = ∞`) on `f*/scale`.
fn lorentz_piece(fs: &StepFunction, params: LorentzParams, a: f64, b: f64, scale: f64) -> f64 {
    let (p, q) = (params.p(), params.q());
    if q.is_infinite() {
        return weighted_sup(fs, 1.0 / p, a, b, scale);
    }
    fs.weighted_power_integral_scaled(q / p, q, a, b, scale).powf(1.0 / q)
}

/// Holmstedt's expression for `K(t^{1/Θ}, f; L_{p_0,q_0}, L_{p_1,q_1})`:
/// `(∫_0^t [s^{1/p_0} f*]^{q_0} ds/s)^{1/q_0} + t^{1/Θ} (∫_t^∞ [s^{1/p_1} f*]^{q_1} ds/s)^{1/q_1}`,
/// with sup forms for infinite exponents; for `p_1 = q_1 = ∞` the second term
/// is `t^{1/Θ} f*(t)`.
pub fn holmstedt_k(f: &StepFunction, t: f64, couple: &LorentzCouple, theta: f64) -> Result<f64> {
    check_t(t)?;
    couple.check_theta(theta)?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let fs = f.rearrange();
    let m = fs.sup();
    let first = lorentz_piece(&fs, couple.x0, 0.0, t, m);
    let second = if couple.x1.p().is_infinite() {
        fs.value_at(t) / m
    } else {
        lorentz_piece(&fs, couple.x1, t, f64::INFINITY, m)
    };
    Ok(m * (first + crate::kernel::ext_mul(t.powf(1.0 / theta), second)))
}

/// `‖f‖_{X_0 ∩ X_1} = max(‖f‖_{X_0}, ‖f‖_{X_1})`.
pub fn intersection_norm(f: &StepFunction, couple: &LorentzCouple) -> f64 {
    lorentz_norm(f, couple.x0).max(lorentz_norm(f, couple.x1))
}

/// `‖f‖_{X_0 + X_1} = K(1, f)` enclosed as `[holmstedt_k(f, 1) / c, k_upper_oracle(f, 1)]`
/// with the couple's known constant `c`; the lower endpoint is `0` when no
/// constant is known.
pub fn sum_norm(f: &StepFunction, couple: &LorentzCouple) -> Result<Enclosure> {
    match couple.holmstedt_constant() {
        Some(c) => sum_norm_with_constant(f, couple, c),
        None => {
            let hi = k_upper_oracle(f, 1.0, couple, &default_levels(f))?;
            Ok(Enclosure::new(0.0, hi))
        }
    }
}

/// [`sum_norm`] with an explicit Holmstedt constant `c >= 1`.
pub fn sum_norm_with_constant(f: &StepFunction, couple: &LorentzCouple, c: f64) -> Result<Enclosure> {
    if !(c >= 1.0 && c.is_finite()) {
        return Err(Error::Parameter(format!("Holmstedt constant must be >= 1, got {c}")));
    }
    if f.is_zero() {
        return Ok(Enclosure::zero());
    }
    let theta = couple.natural_theta()?;
    let lo = holmstedt_k(f, 1.0, couple, theta)? / c;
    let hi = k_upper_oracle(f, 1.0, couple, &default_levels(f))?;
    Ok(Enclosure::new(lo.min(hi), hi))
}

/// Why `(Θ, r, E)` fails the admissibility conditions, if it does:
/// `r < p_E`, `1/Θ + 1/q_E > 1/r` (or `1/Θ >= 1/r` when `q_E = ∞`), and a
/// finite E-norm of `min(t^{-1/r}, t^{1/Θ - 1/r})`.
pub fn admissibility_violation(fp: &FunctorParams) -> Option<String> {
    let e = &fp.space;
    let (p_e, q_e) = (e.boyd_lower, e.boyd_upper);
    let (inv_theta, inv_r) = (1.0 / fp.theta, 1.0 / fp.r);
    if !(fp.r < p_e) {
        return Some(format!(
            "r must be below the lower Boyd index of E (r = {}, p_E = {})",
            fp.r,
            fmt_exp(p_e)
        ));
    }
    if q_e.is_finite() {
        if !(inv_theta + 1.0 / q_e > inv_r) {
            return Some(format!(
                "1/theta + 1/q_E must exceed 1/r (1/theta + 1/q_E = {}, 1/r = {inv_r})",
                inv_theta + 1.0 / q_e
            ));
        }
    } else if !(inv_theta >= inv_r) {
        return Some(format!(
            "with q_E = inf, 1/theta must be at least 1/r (1/theta = {inv_theta}, 1/r = {inv_r})"
        ));
    }
    let profile = if inv_theta >= inv_r {
        // rearranges to min(1, t^{-1/r}) up to a dilation by at most 2
        PowerPieces::new(vec![
            PowerPiece::constant(0.0, 1.0, 1.0),
            PowerPiece::power(1.0, f64::INFINITY, 1.0, 1.0, inv_r),
        ])
    } else {
        PowerPieces::new(vec![
            PowerPiece::power(0.0, 1.0, 1.0, 1.0, inv_r - inv_theta),
            PowerPiece::power(1.0, f64::INFINITY, 1.0, 1.0, inv_r),
        ])
    };
    let norm = profile.lorentz_functional(e.params.p(), e.params.q());
    if !norm.is_finite() {
        return Some(format!(
            "the profile min(t^(-1/r), t^(1/theta - 1/r)) must have finite norm in {}",
            e.params
        ));
    }
    None
}

pub fn functor_admissible(fp: &FunctorParams) -> bool {
    admissibility_violation(fp).is_none()
}

/// Enclosure of `ρ_E(t^{-1/r} K(t^{1/Θ}, f))` with Holmstedt's expression in
/// place of `K`, on the default grid.
pub fn functor_norm(f: &StepFunction, fp: &FunctorParams, couple: &LorentzCouple) -> Result<Enclosure> {
    functor_norm_with(f, fp, couple, &GridConfig::default())
}

/// [`functor_norm`] on a custom grid.
///
/// For `p_1 < ∞` the integrand is `t^{1/p_0 - 1/r}(H^{(p_0,q_0)} f + H_{(p_1,q_1)} f)`.
/// For `p_1 = q_1 = ∞` (then `Θ = p_0`) only the first Hardy term is kept: the
/// second, `t^{1/p_0 - 1/r} f*(t)`, is dominated by it.
///
/// For `r <= p_0` the integrand is non-increasing and its E-norm is the Lorentz
/// functional. For `r > p_0` it is not, and only `E = L_p` or `E = L_∞` (where
/// the functional needs no monotonicity) are supported.
pub fn functor_norm_with(
    f: &StepFunction,
    fp: &FunctorParams,
    couple: &LorentzCouple,
    grid: &GridConfig,
) -> Result<Enclosure> {
    if let Some(why) = admissibility_violation(fp) {
        return Err(Error::Inadmissible(why));
    }
    couple.check_theta(fp.theta)?;
    let (p0, q0) = (couple.x0.p(), couple.x0.q());
    let (p1, q1) = (couple.x1.p(), couple.x1.q());
    let e = fp.space.params;
    let delta = 1.0 / p0 - 1.0 / fp.r;
    if delta > 0.0 && !(e.p() == e.q() || e.p().is_infinite()) {
        return Err(Error::Unsupported(format!(
            "r > p0 makes the integrand non-monotone; only E = L_p is supported there, got {e}"
        )));
    }
    if f.is_zero() {
        return Ok(Enclosure::zero());
    }
    let up = hardy_upper_with(f, p0, q0, grid)?;
    let (mut lo_pp, mut hi_pp) = {
        let (l, u) = up.normalized_brackets();
        (l.clone(), u.clone())
    };
    if p1.is_finite() {
        let low = hardy_lower_with(f, p1, q1, grid)?;
        debug_assert_eq!(low.scale(), up.scale());
        let (l, u) = low.normalized_brackets();
        lo_pp = lo_pp.add_bound(l, Side::Lower);
        hi_pp = hi_pp.add_bound(u, Side::Upper);
    }
    if delta != 0.0 {
        lo_pp = lo_pp.times_power(delta);
        hi_pp = hi_pp.times_power(delta);
    }
    let lo = lo_pp.lorentz_functional(e.p(), e.q());
    let hi = hi_pp.lorentz_functional(e.p(), e.q());
    Ok(Enclosure::new(lo.min(hi), hi).scale(up.scale()))
}

/// A couple flanking the Boyd indices of `E`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectedParameters {
    pub p0: f64,
    pub p1: f64,
    pub theta: f64,
}

impl SelectedParameters {
    /// `(L_{p_0}, L_{p_1})`.
    pub fn couple(&self) -> Result<LorentzCouple> {
        LorentzCouple::new(LorentzParams::lebesgue(self.p0)?, LorentzParams::lebesgue(self.p1)?)
    }
}

/// `p_0 = p_E/2` (`1` if `p_E = ∞`); `p_1 = 2 q_E` with `1/Θ = 1/p_0 - 1/p_1`
/// when `q_E < ∞`, else `p_1 = ∞` and `Θ = p_0`.
pub fn select_parameters(space: &SpaceDescriptor) -> SelectedParameters {
    let (p_e, q_e) = (space.boyd_lower, space.boyd_upper);
    let p0 = if p_e.is_finite() { p_e / 2.0 } else { 1.0 };
    if q_e.is_finite() {
        let p1 = 2.0 * q_e;
        SelectedParameters {
            p0,
            p1,
            theta: 1.0 / (1.0 / p0 - 1.0 / p1),
        }
    } else {
        SelectedParameters {
            p0,
            p1: f64::INFINITY,
            theta: p0,
        }
    }
}
